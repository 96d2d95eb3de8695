//! Reidemeister numbers and zeta functions for endomorphisms of finitely
//! generated abelian groups `Z^r + Z/n_1 + ... + Z/n_s`.
//!
//! The count of twisted conjugacy classes of an endomorphism of an abelian
//! group is the size of `coker(phi^n - id)`; here that cokernel is computed
//! exactly by lifting the endomorphism to `Z^(r+s)`, adjoining the torsion
//! relations, and reading off Smith invariant factors.

mod funceq;
mod lefschetz;
mod reduction;
mod torsion;

pub use funceq::verify_functional_equation;
pub use lefschetz::{lefschetz_number, lefschetz_zeta, sigma_r_p};
pub use reduction::{eventual_image, nilpotent_radical_quotient, SubquotientMap};
pub use torsion::{torsion_tau, CertifiedReal, TorsionTau};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::matrix::IntMatrix;
use crate::exactmath::numtheory::euler_phi;
use crate::exactmath::poly::RationalFunctionQ;
use crate::exactmath::recurrence::{
    berlekamp_massey_int, geometric_decomposition_from, product_from_decomposition,
    LinearRecurrence,
};
use crate::exactmath::series::{exp_zeta_series_int, series_of_rational, TruncatedSeriesQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FgabError {
    /// Torsion invariants must each be >= 2 and form a divisibility chain.
    InvalidTorsionInvariants,
    DimensionMismatch,
    /// Column `col` would send a generator of order `n_col` to an element
    /// whose order does not divide it.
    NotHomomorphism {
        row: usize,
        col: usize,
    },
    /// Some iterate has infinitely many twisted conjugacy classes, so the
    /// zeta function is undefined.
    ZetaUndefined {
        n: u64,
    },
    /// The free part has an eigenvalue at +1 or -1, so the expanding
    /// eigenvalue data (sigma, r, p) is degenerate.
    EigenvalueAtUnit {
        at: i8,
    },
    /// Functional equation verification needs a nonzero degree.
    DegreeZero,
    /// The functional-equation quotient is not constant.
    NonconstantQuotient,
}

impl std::fmt::Display for FgabError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FgabError::InvalidTorsionInvariants => {
                write!(f, "torsion invariants must be >= 2 and form a divisibility chain")
            }
            FgabError::DimensionMismatch => write!(f, "matrix blocks have inconsistent dimensions"),
            FgabError::NotHomomorphism { row, col } => write!(
                f,
                "entry ({row},{col}) violates the homomorphism condition on torsion generators"
            ),
            FgabError::ZetaUndefined { n } => write!(
                f,
                "Reidemeister number R(phi^{n}) is infinite, the Reidemeister zeta function is undefined"
            ),
            FgabError::EigenvalueAtUnit { at } => write!(
                f,
                "free part has an eigenvalue at {at}: expanding eigenvalue counts (sigma, r, p) are undefined"
            ),
            FgabError::DegreeZero => write!(f, "functional equation requires degree d != 0"),
            FgabError::NonconstantQuotient => write!(
                f,
                "functional equation FAIL: the quotient Z(1/(dz)) / Z(z)^(+-1) is not constant"
            ),
        }
    }
}

impl std::error::Error for FgabError {}

/// `Z^rank + Z/n_1 + ... + Z/n_s` with `n_1 | n_2 | ... | n_s`, each >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, FgabError> {
        for w in torsion.windows(2) {
            if !w[1].mod_floor(&w[0]).is_zero() {
                return Err(FgabError::InvalidTorsionInvariants);
            }
        }
        if torsion.iter().any(|n| n < &BigInt::from(2)) {
            return Err(FgabError::InvalidTorsionInvariants);
        }
        Ok(Self { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Total dimension of the presentation `Z^(r+s) / (n_i e_(r+i))`.
    pub fn ambient_dim(&self) -> usize {
        self.rank + self.torsion.len()
    }
}

/// Endomorphism of an [`FgAbGroup`] in block form: `A` on the free part,
/// `B` mixing free generators into the torsion part, `C` on torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbEndo {
    group: FgAbGroup,
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
}

impl FgAbEndo {
    pub fn new(
        group: FgAbGroup,
        a: IntMatrix,
        b: IntMatrix,
        c: IntMatrix,
    ) -> Result<Self, FgabError> {
        let r = group.rank();
        let s = group.torsion_rank();
        if a.rows() != r
            || a.cols() != r
            || b.rows() != s
            || b.cols() != r
            || c.rows() != s
            || c.cols() != s
        {
            return Err(FgabError::DimensionMismatch);
        }
        // order of the image of the j-th torsion generator must divide n_j:
        // n_i | n_j * C[i][j]
        for i in 0..s {
            for j in 0..s {
                let prod = &group.torsion[j] * &c[(i, j)];
                if !prod.mod_floor(&group.torsion[i]).is_zero() {
                    return Err(FgabError::NotHomomorphism { row: i, col: j });
                }
            }
        }
        let mut b = b;
        let mut c = c;
        for i in 0..s {
            for j in 0..r {
                let v = b[(i, j)].mod_floor(&group.torsion[i]);
                b[(i, j)] = v;
            }
            for j in 0..s {
                let v = c[(i, j)].mod_floor(&group.torsion[i]);
                c[(i, j)] = v;
            }
        }
        Ok(Self { group, a, b, c })
    }

    /// Endomorphism of a free group `Z^r`.
    pub fn free(a: IntMatrix) -> Result<Self, FgabError> {
        if !a.is_square() {
            return Err(FgabError::DimensionMismatch);
        }
        let r = a.rows();
        Self::new(
            FgAbGroup::free(r),
            a,
            IntMatrix::zero(0, r),
            IntMatrix::zero(0, 0),
        )
    }

    /// Endomorphism of a finite group given by the torsion block alone.
    pub fn finite(torsion: Vec<BigInt>, c: IntMatrix) -> Result<Self, FgabError> {
        let group = FgAbGroup::new(0, torsion)?;
        let s = group.torsion_rank();
        Self::new(group, IntMatrix::zero(0, 0), IntMatrix::zero(s, 0), c)
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn free_block(&self) -> &IntMatrix {
        &self.a
    }

    pub fn mixing_block(&self) -> &IntMatrix {
        &self.b
    }

    pub fn torsion_block(&self) -> &IntMatrix {
        &self.c
    }

    /// Integer lift `[[A, 0], [B, C]]` acting on `Z^(r+s)`.
    pub fn lift(&self) -> IntMatrix {
        let r = self.group.rank();
        let s = self.group.torsion_rank();
        let mut m = IntMatrix::zero(r + s, r + s);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = self.a[(i, j)].clone();
            }
        }
        for i in 0..s {
            for j in 0..r {
                m[(r + i, j)] = self.b[(i, j)].clone();
            }
            for j in 0..s {
                m[(r + i, r + j)] = self.c[(i, j)].clone();
            }
        }
        m
    }

    /// Columns `n_i e_(r+i)` presenting the torsion relations.
    pub fn relation_columns(&self) -> IntMatrix {
        let r = self.group.rank();
        let s = self.group.torsion_rank();
        let mut m = IntMatrix::zero(r + s, s);
        for i in 0..s {
            m[(r + i, i)] = self.group.torsion[i].clone();
        }
        m
    }
}

/// A twisted-conjugacy count: finite, or the infinite marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReidemeisterValue {
    Finite(BigInt),
    Infinite,
}

impl ReidemeisterValue {
    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            ReidemeisterValue::Finite(v) => Some(v),
            ReidemeisterValue::Infinite => None,
        }
    }
}

impl std::fmt::Display for ReidemeisterValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReidemeisterValue::Finite(v) => write!(f, "{v}"),
            ReidemeisterValue::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// The values `R(phi^1) .. R(phi^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterSequence {
    values: Vec<ReidemeisterValue>,
}

impl ReidemeisterSequence {
    pub fn values(&self) -> &[ReidemeisterValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based index of the first infinite value, if any. A zeta function
    /// only exists when this is `None`.
    pub fn first_infinite(&self) -> Option<u64> {
        self.values
            .iter()
            .position(|v| matches!(v, ReidemeisterValue::Infinite))
            .map(|i| (i + 1) as u64)
    }

    pub fn finite_values(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(|v| v.as_finite().cloned()).collect()
    }
}

/// `R(phi^n) = |coker(phi^n - id)|`, or infinite when the cokernel has a
/// free summand (equivalently `[lift(phi^n) - I | relations]` drops row
/// rank).
///
/// ```
/// use twisted_zeta::exactmath::matrix::IntMatrix;
/// use twisted_zeta::fgab::{reidemeister_number, FgAbEndo, ReidemeisterValue};
///
/// let cat = FgAbEndo::free(IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap()).unwrap();
/// assert_eq!(reidemeister_number(&cat, 2), ReidemeisterValue::Finite(5.into()));
///
/// let identity = FgAbEndo::free(IntMatrix::identity(1)).unwrap();
/// assert_eq!(reidemeister_number(&identity, 1), ReidemeisterValue::Infinite);
/// ```
pub fn reidemeister_number(endo: &FgAbEndo, n: u64) -> ReidemeisterValue {
    assert!(n >= 1, "iterate index starts at 1");
    let dim = endo.group().ambient_dim();
    let m = endo.lift().pow(n).expect("square lift");
    let mut shifted = m;
    for i in 0..dim {
        shifted[(i, i)] -= BigInt::one();
    }
    let stacked = shifted
        .hstack(&endo.relation_columns())
        .expect("row counts agree");
    let snf = stacked.smith_normal_form();
    if snf.is_full_row_rank(dim) {
        ReidemeisterValue::Finite(snf.nonzero_product())
    } else {
        ReidemeisterValue::Infinite
    }
}

pub fn reidemeister_sequence(endo: &FgAbEndo, n_max: u64) -> ReidemeisterSequence {
    ReidemeisterSequence {
        values: (1..=n_max).map(|n| reidemeister_number(endo, n)).collect(),
    }
}

/// How the closed form of a Reidemeister zeta function was obtained.
#[derive(Debug, Clone)]
pub enum ZetaKind {
    /// Torsion-free case: `L(sigma z)^((-1)^r)` built from the homology
    /// actions of the dual torus map.
    LefschetzClosed {
        sigma: i8,
        expanding: usize,
        expanding_negative: usize,
    },
    /// General case: product `prod (1 - w z)^(-c)` reconstructed from the
    /// counting sequence; the `(w, c)` pairs are recorded.
    ProductClosed { factors: Vec<(BigInt, BigInt)> },
}

/// Reidemeister zeta data: the exact series always, a closed rational form
/// when one is reconstructible, otherwise a verified linear-recurrence
/// certificate when the sequence admits one.
#[derive(Debug, Clone)]
pub struct ZetaForm {
    pub series: TruncatedSeriesQ,
    pub closed: Option<(RationalFunctionQ, ZetaKind)>,
    pub certificate: Option<LinearRecurrence>,
}

const BM_WINDOW_START: usize = 16;
const BM_WINDOW_CAP: usize = 160;
const BM_VERIFY_EXTRA: usize = 10;

/// Reidemeister zeta function of `endo` to order `n_max`.
///
/// Errors with [`FgabError::ZetaUndefined`] when any iterate (including
/// iterates beyond `n_max` forced by a root-of-unity eigenvalue) has
/// infinitely many twisted conjugacy classes.
pub fn reidemeister_zeta(endo: &FgAbEndo, n_max: u64) -> Result<ZetaForm, FgabError> {
    assert!(n_max >= 1);
    // a root-of-unity eigenvalue of the free block forces det(A^k - I) = 0
    // at its order k, where Euler phi(k) <= rank bounds the candidates
    let r = endo.group().rank();
    if r > 0 {
        let bound = (4 * r * r + 4) as u64;
        for k in 1..=bound {
            if euler_phi(k) as usize <= r {
                let ak = endo.free_block().pow(k).expect("square");
                let mut shifted = ak;
                for i in 0..r {
                    shifted[(i, i)] -= BigInt::one();
                }
                if shifted.determinant().expect("square").is_zero() {
                    return Err(FgabError::ZetaUndefined { n: k });
                }
            }
        }
    }
    let seq = reidemeister_sequence(endo, n_max);
    if let Some(n) = seq.first_infinite() {
        return Err(FgabError::ZetaUndefined { n });
    }
    let values = seq.finite_values().expect("all finite");
    let series = exp_zeta_series_int(&values);

    // torsion-free positive rank: closed form from the Lefschetz data
    if endo.group().torsion_rank() == 0 && r > 0 {
        let (sigma, r_cnt, p_cnt) = sigma_r_p(endo.free_block())?;
        let l = lefschetz_zeta(endo.free_block());
        let l_sigma = if sigma == 1 { l } else { l.compose_neg_z() };
        let closed = l_sigma
            .pow(if r_cnt % 2 == 0 { 1 } else { -1 })
            .expect("nonzero zeta");
        let check = series_of_rational(&closed, n_max as usize).expect("no pole at origin");
        assert_eq!(
            check, series,
            "closed form disagrees with the exponential series"
        );
        return Ok(ZetaForm {
            series,
            closed: Some((
                closed,
                ZetaKind::LefschetzClosed {
                    sigma,
                    expanding: r_cnt,
                    expanding_negative: p_cnt,
                },
            )),
            certificate: None,
        });
    }

    // general case: adaptive reconstruction from the counting sequence
    let mut window = BM_WINDOW_START.max(n_max as usize);
    let window_cap = BM_WINDOW_CAP.max(2 * n_max as usize);
    let mut certified: Option<(LinearRecurrence, Vec<BigInt>)> = None;
    while window <= window_cap {
        let total = window + BM_VERIFY_EXTRA;
        let seq_long = reidemeister_sequence(endo, total as u64);
        let Some(vals) = seq_long.finite_values() else {
            return Err(FgabError::ZetaUndefined {
                n: seq_long.first_infinite().unwrap(),
            });
        };
        if let Ok(rec) = berlekamp_massey_int(&vals[..window]) {
            let all: Vec<BigRational> = vals.iter().map(|v| BigRational::from(v.clone())).collect();
            if rec.reproduces(&all) {
                certified = Some((rec, vals));
                break;
            }
        }
        window *= 2;
    }
    let Some((rec, long_values)) = certified else {
        return Ok(ZetaForm {
            series,
            closed: None,
            certificate: None,
        });
    };
    if let Some(pairs) = geometric_decomposition_from(&rec, &long_values, &[]) {
        let closed = product_from_decomposition(&pairs);
        let check = series_of_rational(&closed, n_max as usize).expect("no pole at origin");
        assert_eq!(
            check, series,
            "reconstructed product disagrees with the exponential series"
        );
        return Ok(ZetaForm {
            series,
            closed: Some((closed, ZetaKind::ProductClosed { factors: pairs })),
            certificate: Some(rec),
        });
    }
    Ok(ZetaForm {
        series,
        closed: None,
        certificate: Some(rec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly::IntPoly;
    use num_traits::Signed;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn fin(v: i64) -> ReidemeisterValue {
        ReidemeisterValue::Finite(BigInt::from(v))
    }

    #[test]
    fn reidemeister_numbers_on_free_groups() {
        let e = FgAbEndo::free(mat(&[vec![2, 1], vec![1, 1]])).unwrap();
        assert_eq!(reidemeister_number(&e, 1), fin(1));
        assert_eq!(reidemeister_number(&e, 2), fin(5));
        let id = FgAbEndo::free(mat(&[vec![1]])).unwrap();
        assert_eq!(reidemeister_number(&id, 1), ReidemeisterValue::Infinite);
    }

    #[test]
    fn reidemeister_numbers_on_finite_groups() {
        let e = FgAbEndo::finite(vec![BigInt::from(4)], mat(&[vec![3]])).unwrap();
        assert_eq!(reidemeister_number(&e, 1), fin(2));
        // trivial group
        let t = FgAbEndo::finite(vec![], IntMatrix::zero(0, 0)).unwrap();
        assert_eq!(reidemeister_number(&t, 1), fin(1));
        assert_eq!(reidemeister_number(&t, 5), fin(1));
    }

    #[test]
    fn free_part_oracle_det_a_pow_minus_identity() {
        // R(phi^n) = |det(A^n - I)| for torsion-free groups, checked against
        // an independent cofactor determinant
        fn cofactor_det(a: &IntMatrix) -> BigInt {
            let n = a.rows();
            if n == 0 {
                return BigInt::one();
            }
            if n == 1 {
                return a[(0, 0)].clone();
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                let mut sub = IntMatrix::zero(n - 1, n - 1);
                for i in 1..n {
                    let mut cc = 0;
                    for c in 0..n {
                        if c != j {
                            sub[(i - 1, cc)] = a[(i, c)].clone();
                            cc += 1;
                        }
                    }
                }
                let term = &a[(0, j)] * cofactor_det(&sub);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut state = 0x1f2e3d4c5b6a7988u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        'outer: for _ in 0..40 {
            let n = 2 + (next() % 4) as usize; // up to 5x5
            let a = IntMatrix::new(
                n,
                n,
                (0..n * n)
                    .map(|_| BigInt::from((next() % 7) as i64 - 3))
                    .collect(),
            )
            .unwrap();
            // skip matrices with an iterate fixing a vector
            for k in 1..=10u64 {
                let mut s = a.pow(k).unwrap();
                for i in 0..n {
                    s[(i, i)] -= BigInt::one();
                }
                if s.determinant().unwrap().is_zero() {
                    continue 'outer;
                }
            }
            tested += 1;
            let e = FgAbEndo::free(a.clone()).unwrap();
            for k in 1..=10u64 {
                let mut s = a.pow(k).unwrap();
                for i in 0..n {
                    s[(i, i)] -= BigInt::one();
                }
                let expect = cofactor_det(&s).abs();
                assert_eq!(
                    reidemeister_number(&e, k),
                    ReidemeisterValue::Finite(expect)
                );
            }
        }
        assert!(tested >= 10, "only {tested} hyperbolic samples");
    }

    #[test]
    fn homomorphism_condition_enforced() {
        // Z/2 + Z/4: the (2,1) entry must be even
        let bad = FgAbEndo::finite(
            vec![BigInt::from(2), BigInt::from(4)],
            mat(&[vec![1, 0], vec![1, 1]]),
        );
        assert_eq!(
            bad.unwrap_err(),
            FgabError::NotHomomorphism { row: 1, col: 0 }
        );
        let good = FgAbEndo::finite(
            vec![BigInt::from(2), BigInt::from(4)],
            mat(&[vec![1, 1], vec![2, 1]]),
        );
        assert!(good.is_ok());
    }

    #[test]
    fn zeta_closed_form_doubling() {
        let e = FgAbEndo::free(mat(&[vec![2]])).unwrap();
        let z = reidemeister_zeta(&e, 8).unwrap();
        let (closed, kind) = z.closed.unwrap();
        let expect =
            RationalFunctionQ::new(IntPoly::from_i64(&[1, -1]), IntPoly::from_i64(&[1, -2]))
                .unwrap();
        assert_eq!(closed, expect);
        assert!(matches!(
            kind,
            ZetaKind::LefschetzClosed {
                sigma: 1,
                expanding: 1,
                ..
            }
        ));
    }

    #[test]
    fn zeta_product_form_finite_inversion() {
        // inversion on Z/5: counts alternate 1, 5, 1, 5, ...
        let e = FgAbEndo::finite(vec![BigInt::from(5)], mat(&[vec![-1]])).unwrap();
        let seq = reidemeister_sequence(&e, 4);
        assert_eq!(seq.values(), &[fin(1), fin(5), fin(1), fin(5)]);
        let z = reidemeister_zeta(&e, 8).unwrap();
        let (closed, _) = z.closed.unwrap();
        // (1-z)^(-1) (1-z^2)^(-2) = (1-z)^(-3) (1+z)^(-2)
        let den = IntPoly::from_i64(&[1, -1])
            .mul(&IntPoly::from_i64(&[1, 0, -1]))
            .mul(&IntPoly::from_i64(&[1, 0, -1]));
        let expect = RationalFunctionQ::new(IntPoly::one(), den).unwrap();
        assert_eq!(closed, expect);
    }

    #[test]
    fn zeta_undefined_cases() {
        let e = FgAbEndo::free(mat(&[vec![1, 0], vec![0, 2]])).unwrap();
        assert_eq!(
            reidemeister_zeta(&e, 6).unwrap_err(),
            FgabError::ZetaUndefined { n: 1 }
        );
        // rotation by 90 degrees: R(phi^4) infinite, beyond small windows
        let rot = FgAbEndo::free(mat(&[vec![0, -1], vec![1, 0]])).unwrap();
        assert_eq!(
            reidemeister_zeta(&rot, 2).unwrap_err(),
            FgabError::ZetaUndefined { n: 4 }
        );
    }

    #[test]
    fn zeta_certificate_for_longer_periods() {
        // multiplication by 2 on Z/7 has period 3: roots of unity of order 3
        // are not rational, so the output is a certificate, not a product
        let e = FgAbEndo::finite(vec![BigInt::from(7)], mat(&[vec![2]])).unwrap();
        let seq = reidemeister_sequence(&e, 6);
        assert_eq!(
            seq.values(),
            &[fin(1), fin(1), fin(7), fin(1), fin(1), fin(7)]
        );
        let z = reidemeister_zeta(&e, 6).unwrap();
        assert!(z.closed.is_none());
        let rec = z.certificate.unwrap();
        assert_eq!(rec.order(), 3);
    }

    #[test]
    fn mixed_group_hand_derived_counts() {
        // Z + Z/2 with phi(x, t) = (2x, x + t): counting by hand,
        // R(phi) = 2 (classes by the torsion coordinate after shifting x)
        // and R(phi^2) = 6 (residue of x mod 3 times the parity).
        let group = FgAbGroup::new(1, vec![BigInt::from(2)]).unwrap();
        let e = FgAbEndo::new(group, mat(&[vec![2]]), mat(&[vec![1]]), mat(&[vec![1]])).unwrap();
        assert_eq!(reidemeister_number(&e, 1), fin(2));
        assert_eq!(reidemeister_number(&e, 2), fin(6));
        // free part alone would give 1, 3: the mixing block doubles both
        let free = FgAbEndo::free(mat(&[vec![2]])).unwrap();
        assert_eq!(reidemeister_number(&free, 1), fin(1));
        assert_eq!(reidemeister_number(&free, 2), fin(3));
    }

    #[test]
    fn mixed_group_zeta_series_consistency() {
        // Z + Z/4 with doubling free part mixing into torsion
        let group = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let e = FgAbEndo::new(group, mat(&[vec![2]]), mat(&[vec![1]]), mat(&[vec![3]])).unwrap();
        let z = reidemeister_zeta(&e, 10).unwrap();
        let vals = reidemeister_sequence(&e, 10).finite_values().unwrap();
        assert_eq!(z.series, exp_zeta_series_int(&vals));
        if let Some((closed, _)) = &z.closed {
            assert_eq!(series_of_rational(closed, 10).unwrap(), z.series);
        }
    }
}
