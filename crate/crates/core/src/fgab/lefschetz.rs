//! Lefschetz data of the dual torus map: the alternating product over
//! exterior powers, the alternating trace, and the expanding-eigenvalue
//! counts (sigma, r, p) that relate it to twisted-conjugacy counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::FgabError;
use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::poly::{IntPoly, RationalFunctionQ};
use crate::exactmath::sturm::{count_real_roots, Endpoint};

/// `det(I - B z)` as an integer polynomial (the reversed characteristic
/// polynomial).
fn det_i_minus_bz(b: &IntMatrix) -> IntPoly {
    let p = b.charpoly().expect("square matrix");
    let n = b.rows();
    IntPoly::new((0..=n).map(|j| p.coeff(n - j)).collect())
}

/// The alternating product `prod_k det(I - Lambda^k(A) z)^((-1)^(k+1))`
/// over all exterior powers of the action on first homology.
pub fn lefschetz_zeta(a: &IntMatrix) -> RationalFunctionQ {
    assert!(a.is_square());
    let n = a.rows();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for k in 0..=n {
        let lam = a.exterior_power(k).expect("k in range");
        let factor = det_i_minus_bz(&lam);
        if k % 2 == 0 {
            den = den.mul(&factor);
        } else {
            num = num.mul(&factor);
        }
    }
    RationalFunctionQ::new(num, den).expect("nonzero denominator")
}

/// Alternating trace `sum_k (-1)^k tr(Lambda^k(A)^n)`, which equals
/// `det(I - A^n)`.
pub fn lefschetz_number(a: &IntMatrix, n: u64) -> BigInt {
    assert!(a.is_square());
    let dim = a.rows();
    let mut acc = BigInt::zero();
    for k in 0..=dim {
        let lam = a.exterior_power(k).expect("k in range");
        let t = lam.pow(n).expect("square").trace().expect("square");
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Expanding-eigenvalue data of the free part: `p` counts real eigenvalues
/// below -1, `r` counts real eigenvalues of modulus above 1, and
/// `sigma = (-1)^p`. Eigenvalues exactly at +-1 are rejected: they make
/// some `det(A^n - I)` vanish and the zeta data degenerate.
pub fn sigma_r_p(a: &IntMatrix) -> Result<(i8, usize, usize), FgabError> {
    let p = a.charpoly().expect("square matrix").to_qpoly();
    let one = BigRational::from(BigInt::from(1));
    let neg_one = BigRational::from(BigInt::from(-1));
    if p.eval(&one).is_zero() {
        return Err(FgabError::EigenvalueAtUnit { at: 1 });
    }
    if p.eval(&neg_one).is_zero() {
        return Err(FgabError::EigenvalueAtUnit { at: -1 });
    }
    let below = count_real_roots(&p, &Endpoint::NegInfinity, &Endpoint::Finite(neg_one))
        .expect("nonzero charpoly");
    let above = count_real_roots(&p, &Endpoint::Finite(one), &Endpoint::PosInfinity)
        .expect("nonzero charpoly");
    let sigma = if below.is_multiple_of(2) { 1 } else { -1 };
    Ok((sigma, below + above, below))
}
