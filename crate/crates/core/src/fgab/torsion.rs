//! Reidemeister torsion of a mapping torus against a one-dimensional flat
//! bundle: `tau = |L(lambda)|^(-1)` at a unit-circle holonomy
//! `lambda = e^(2 pi i a/b)`, evaluated to a requested number of certified
//! decimal digits by interval refinement. Exact root-of-unity coincidences
//! (lambda a zero or pole of L) are detected symbolically first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::exactmath::interval::{bits_for_digits, decimal_string, poly_abs2_at_unit};
use crate::exactmath::numtheory::pow_bigint;
use crate::exactmath::poly::{cyclotomic, RationalFunctionQ};

/// A real number pinned inside `[low, high]` with `high - low < 10^-digits`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedReal {
    pub low: BigRational,
    pub high: BigRational,
    pub digits: u32,
}

impl CertifiedReal {
    pub fn midpoint(&self) -> BigRational {
        (&self.low + &self.high) / BigRational::from(BigInt::from(2))
    }

    pub fn to_decimal_string(&self) -> String {
        decimal_string(&self.midpoint(), self.digits)
    }

    /// Distance to a rational target is certified below `tol`.
    pub fn within(&self, target: &BigRational, tol: &BigRational) -> bool {
        &(&self.high - target) < tol && &(target - &self.low) < tol
    }
}

/// Torsion value, or the two degenerate coincidences.
#[derive(Debug, Clone, PartialEq)]
pub enum TorsionTau {
    Value(CertifiedReal),
    /// `lambda` is a zero of `L`: the torsion is infinite.
    Pole,
    /// `lambda` is a pole of `L`: the torsion degenerates to zero.
    ZeroDivisor,
}

/// `|L(e^(2 pi i angle))|^(-1)` with `digits` certified decimal digits.
///
/// `angle` is the rotation as a fraction of a full turn.
pub fn torsion_tau(l: &RationalFunctionQ, angle: &BigRational, digits: u32) -> TorsionTau {
    // normalize the angle and find the exact order of lambda
    let reduced = angle - angle.floor();
    let order = reduced.denom().clone();
    let order_u64 = u64::try_from(&order).expect("angle denominator fits in a word");
    let phi = cyclotomic(order_u64.max(1));
    if l.numerator().to_qpoly().divrem(&phi.to_qpoly()).1.is_zero() {
        return TorsionTau::Pole;
    }
    if l.denominator()
        .to_qpoly()
        .divrem(&phi.to_qpoly())
        .1
        .is_zero()
    {
        return TorsionTau::ZeroDivisor;
    }
    let tol = BigRational::new(BigInt::one(), pow_bigint(&BigInt::from(10), digits as u64));
    let mut bits = bits_for_digits(digits) + 32;
    loop {
        let num_abs2 = poly_abs2_at_unit(l.numerator(), &reduced, bits);
        let den_abs2 = poly_abs2_at_unit(l.denominator(), &reduced, bits);
        if !num_abs2.contains_zero() && !den_abs2.contains_zero() {
            // tau^2 = |den|^2 / |num|^2
            let tau2 = den_abs2.div(&num_abs2);
            let tau = tau2.sqrt(bits);
            if tau.width() < tol {
                return TorsionTau::Value(CertifiedReal {
                    low: tau.lo,
                    high: tau.hi,
                    digits,
                });
            }
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::IntPoly;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(IntPoly::from_i64(num), IntPoly::from_i64(den)).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tau_at_minus_one_is_two_thirds() {
        // |L(-1)| = 3/2 for L = (1-2z)/(1-z)
        let l = rf(&[1, -2], &[1, -1]);
        let TorsionTau::Value(tau) = torsion_tau(&l, &rat(1, 2), 30) else {
            panic!("expected a value");
        };
        let target = rat(2, 3);
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(28));
        assert!(
            tau.within(&target, &tol),
            "tau = {}",
            tau.to_decimal_string()
        );
        assert!(tau.to_decimal_string().starts_with("0.6666666666"));
    }

    #[test]
    fn tau_at_one_hits_the_pole_of_l() {
        let l = rf(&[1, -2], &[1, -1]);
        assert_eq!(torsion_tau(&l, &rat(0, 1), 10), TorsionTau::ZeroDivisor);
        // and lambda = 1/2 of a turn on (1-z)/(1-2z): numerator (1-z)
        // vanishes at z=1, angle 0
        let m = rf(&[1, -1], &[1, -2]);
        assert_eq!(torsion_tau(&m, &rat(0, 1), 10), TorsionTau::Pole);
    }

    #[test]
    fn tau_at_quarter_turn_is_sqrt_two_fifths() {
        // |1 - 2i| = sqrt 5, |1 - i| = sqrt 2
        let l = rf(&[1, -2], &[1, -1]);
        let TorsionTau::Value(tau) = torsion_tau(&l, &rat(1, 4), 30) else {
            panic!("expected a value");
        };
        // tau^2 = 2/5 within 1e-28 both sides
        let sq_lo = &tau.low * &tau.low;
        let sq_hi = &tau.high * &tau.high;
        let target = rat(2, 5);
        assert!(sq_lo <= target && target <= sq_hi);
        assert!(tau.to_decimal_string().starts_with("0.63245553203367586"));
    }

    #[test]
    fn angle_normalization() {
        let l = rf(&[1, -2], &[1, -1]);
        let a = torsion_tau(&l, &rat(1, 2), 20);
        let b = torsion_tau(&l, &rat(3, 2), 20);
        let c = torsion_tau(&l, &rat(-1, 2), 20);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
