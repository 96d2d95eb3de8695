//! Periodic-point counting for multiplication-by-xi endomorphisms of
//! S-integer modules `Z[1/S0]`, the rational-vs-natural-boundary dichotomy
//! for their zeta functions, and the nested logarithmic expansion in the
//! boundary case.
//!
//! The count of points fixed by the j-th iterate of the dual map is the
//! place product `F(j) = |xi^j - 1|_oo * prod_(p in S0) |xi^j - 1|_p`,
//! a positive integer equal to `|Z[1/S0] / (xi^j - 1) Z[1/S0]|`. An
//! independent route to the same number (strip every S0-prime from
//! `|a^j - b^j|`) lives in [`periodic_count_oracle`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::numtheory::{
    is_prime, multiplicative_order, p_adic_abs, pow_bigint, pow_rational, valuation_int,
    valuation_rat,
};
use crate::exactmath::poly::{IntPoly, RationalFunctionQ};
use crate::exactmath::recurrence::geometric_decomposition;
use crate::exactmath::recurrence::product_from_decomposition;
use crate::exactmath::series::{
    exp_zeta_series_int, log_series_of_poly, log_zeta_series, series_of_rational, TruncatedSeriesQ,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolenoidError {
    /// xi in {0, 1, -1} is a root of unity (or zero) and excluded.
    XiDegenerate,
    NotPrime(u64),
    /// A prime of the denominator of xi is missing from S0, so
    /// multiplication by xi does not map Z[1/S0] into itself.
    DenominatorPrimeNotInverted(u64),
    /// The expansion supports exactly one boundary witness prime.
    ExpansionNeedsSingleWitness {
        witnesses: Vec<u64>,
    },
    /// The nested expansion relies on the odd-prime valuation formula.
    ExpansionWitnessTwoUnsupported,
    /// The classification is rational: there is no boundary to expand.
    NotNaturalBoundary,
    /// Valuation formula preconditions: odd prime, |xi|_p = 1.
    LteOddPrimeRequired,
    LteUnitRequired {
        p: u64,
    },
}

impl std::fmt::Display for SolenoidError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolenoidError::XiDegenerate => {
                write!(f, "multiplier xi must not be 0 or a root of unity (+-1)")
            }
            SolenoidError::NotPrime(p) => write!(f, "{p} in S0 is not prime"),
            SolenoidError::DenominatorPrimeNotInverted(p) => write!(
                f,
                "denominator prime {p} of xi is not in S0: multiplication by xi does not preserve Z[1/S0]"
            ),
            SolenoidError::ExpansionNeedsSingleWitness { witnesses } => write!(
                f,
                "boundary expansion supports exactly one witness prime, found {witnesses:?}"
            ),
            SolenoidError::ExpansionWitnessTwoUnsupported => write!(
                f,
                "boundary expansion at witness prime 2 is unsupported (the odd-prime valuation formula fails there)"
            ),
            SolenoidError::NotNaturalBoundary => {
                write!(f, "zeta function is rational: no natural boundary to expand")
            }
            SolenoidError::LteOddPrimeRequired => {
                write!(f, "the lifting-the-exponent valuation needs an odd prime")
            }
            SolenoidError::LteUnitRequired { p } => {
                write!(f, "the lifting-the-exponent valuation needs |xi|_{p} = 1")
            }
        }
    }
}

impl std::error::Error for SolenoidError {}

/// The module `Z[1/S0]` with the endomorphism `g -> xi g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolenoidSpec {
    inverted_primes: Vec<u64>,
    xi: BigRational,
}

impl SolenoidSpec {
    pub fn new(inverted_primes: Vec<u64>, xi: BigRational) -> Result<Self, SolenoidError> {
        if xi.is_zero() || xi.abs().is_one() {
            return Err(SolenoidError::XiDegenerate);
        }
        let mut primes = inverted_primes;
        primes.sort_unstable();
        primes.dedup();
        for &p in &primes {
            if !is_prime(p) {
                return Err(SolenoidError::NotPrime(p));
            }
        }
        let mut rem = xi.denom().magnitude().clone();
        for &p in &primes {
            while (&rem % p).is_zero() {
                rem /= p;
            }
        }
        if !rem.is_one() {
            let offending =
                crate::exactmath::numtheory::factor(u64::try_from(&rem).unwrap_or(u64::MAX))
                    .first()
                    .map(|&(p, _)| p)
                    .unwrap_or(0);
            return Err(SolenoidError::DenominatorPrimeNotInverted(offending));
        }
        Ok(Self {
            inverted_primes: primes,
            xi,
        })
    }

    pub fn inverted_primes(&self) -> &[u64] {
        &self.inverted_primes
    }

    pub fn xi(&self) -> &BigRational {
        &self.xi
    }

    /// Signed geometric weights of `|a^j - b^j|`: pairs `(sign, w)` with
    /// `|a^j - b^j| = sum sign * w^j`.
    fn weights(&self) -> [(i8, BigInt); 2] {
        let a = self.xi.numer().clone();
        let b = self.xi.denom().clone();
        if a.abs() > b {
            if a.is_negative() {
                [(1, -a), (-1, -b)]
            } else {
                [(1, a), (-1, b)]
            }
        } else {
            [(1, b), (-1, a)]
        }
    }

    /// Primes of S0 at which xi is a unit; nonempty exactly in the
    /// natural-boundary case.
    pub fn witnesses(&self) -> Vec<u64> {
        self.inverted_primes
            .iter()
            .copied()
            .filter(|&p| {
                !(self.xi.numer().mod_floor(&BigInt::from(p))).is_zero()
                    && !(self.xi.denom().mod_floor(&BigInt::from(p))).is_zero()
            })
            .collect()
    }
}

/// `F(j)`: the number of points fixed by the j-th iterate of the dual map,
/// computed as the place product over the archimedean place and S0.
pub fn periodic_count(spec: &SolenoidSpec, j: u64) -> BigInt {
    assert!(j >= 1);
    let x = pow_rational(spec.xi(), j) - BigRational::one();
    debug_assert!(!x.is_zero(), "xi is not a root of unity");
    let mut acc = x.abs();
    for &p in spec.inverted_primes() {
        acc *= p_adic_abs(&x, p).expect("x nonzero, p prime");
    }
    assert!(
        acc.is_integer() && acc.is_positive(),
        "fixed-point count must be a positive integer"
    );
    acc.to_integer()
}

/// Independent route to `F(j)`: `|a^j - b^j|` with every factor of an
/// S0-prime stripped (the size of the cokernel of `xi^j - 1` on `Z[1/S0]`).
pub fn periodic_count_oracle(spec: &SolenoidSpec, j: u64) -> BigInt {
    assert!(j >= 1);
    let a = spec.xi().numer();
    let b = spec.xi().denom();
    let mut m = (pow_bigint(a, j) - pow_bigint(b, j)).abs();
    for &p in spec.inverted_primes() {
        let p = BigInt::from(p);
        loop {
            let (q, r) = m.div_rem(&p);
            if r.is_zero() {
                m = q;
            } else {
                break;
            }
        }
    }
    m
}

/// `F(1..n)`.
pub fn periodic_sequence(spec: &SolenoidSpec, n: u64) -> Vec<BigInt> {
    (1..=n).map(|j| periodic_count(spec, j)).collect()
}

/// `exp(sum F(j) z^j / j)` truncated at order `n`.
pub fn zeta_series(spec: &SolenoidSpec, n: u64) -> TruncatedSeriesQ {
    exp_zeta_series_int(&periodic_sequence(spec, n))
}

/// Outcome of the rational/natural-boundary dichotomy.
#[derive(Debug, Clone, PartialEq)]
pub enum DichotomyVerdict {
    Rational {
        closed: RationalFunctionQ,
    },
    /// Classification by the unit-place criterion; the boundary circle of
    /// the coefficient generating series has the given radius.
    NaturalBoundary {
        witnesses: Vec<u64>,
        radius: BigRational,
    },
}

/// Classify the zeta function: rational exactly when xi is a non-unit at
/// every prime of S0, otherwise a natural boundary witnessed by the unit
/// primes.
///
/// ```
/// use num_rational::BigRational;
/// use twisted_zeta::solenoid::{classify, DichotomyVerdict, SolenoidSpec};
///
/// let spec = SolenoidSpec::new(vec![3], BigRational::from_integer(2.into())).unwrap();
/// let DichotomyVerdict::NaturalBoundary { witnesses, .. } = classify(&spec) else {
///     panic!("doubling on Z[1/3] has a natural boundary");
/// };
/// assert_eq!(witnesses, vec![3]);
/// ```
pub fn classify(spec: &SolenoidSpec) -> DichotomyVerdict {
    let witnesses = spec.witnesses();
    if witnesses.is_empty() {
        DichotomyVerdict::Rational {
            closed: rational_closed_form(spec),
        }
    } else {
        let a = spec.xi().numer().abs();
        let b = spec.xi().denom().clone();
        let radius = BigRational::new(BigInt::one(), a.max(b));
        DichotomyVerdict::NaturalBoundary { witnesses, radius }
    }
}

const RATIONAL_WINDOW_START: u64 = 16;
const RATIONAL_WINDOW_CAP: u64 = 64;
const RATIONAL_VERIFY_EXTRA: u64 = 10;

/// Closed form of `exp(sum F(j) z^j / j)` in the rational branch, rebuilt
/// from the counting sequence by recurrence reconstruction and root search.
///
/// Panics when the reconstruction fails: with xi rational and no witness
/// primes the characteristic roots are integers, so a failure here is a
/// bug, not a data condition.
pub fn rational_closed_form(spec: &SolenoidSpec) -> RationalFunctionQ {
    assert!(
        spec.witnesses().is_empty(),
        "closed form requested on a natural-boundary spec"
    );
    let hints: Vec<BigRational> = spec
        .weights()
        .iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(_, w)| BigRational::new(BigInt::one(), w.clone()))
        .collect();
    let mut window = RATIONAL_WINDOW_START;
    while window <= RATIONAL_WINDOW_CAP {
        let seq = periodic_sequence(spec, window + RATIONAL_VERIFY_EXTRA);
        if let Some(pairs) = geometric_decomposition(&seq, &hints) {
            let closed = product_from_decomposition(&pairs);
            // series cross-check at twice the reconstruction window
            let check_order = 2 * window;
            let series = exp_zeta_series_int(&periodic_sequence(spec, check_order));
            let expanded =
                series_of_rational(&closed, check_order as usize).expect("no pole at the origin");
            assert_eq!(expanded, series, "closed form fails the series cross-check");
            return closed;
        }
        window *= 2;
    }
    unreachable!("rational multiplier admits an integer-root reconstruction");
}

/// Exponent of the witness prime in `xi^n - 1`, through the multiplicative
/// order `d` of xi mod p: zero unless `d | n`, else `v_p(xi^d - 1) + v_p(n/d)`.
pub fn lte_valuation(xi: &BigRational, p: u64, n: u64) -> Result<u64, SolenoidError> {
    if p == 2 || !is_prime(p) {
        return Err(SolenoidError::LteOddPrimeRequired);
    }
    let pb = BigInt::from(p);
    if xi.numer().mod_floor(&pb).is_zero() || xi.denom().mod_floor(&pb).is_zero() {
        return Err(SolenoidError::LteUnitRequired { p });
    }
    let d = multiplicative_order(xi, p).expect("p prime");
    if !n.is_multiple_of(d) {
        return Ok(0);
    }
    let base = pow_rational(xi, d) - BigRational::one();
    let e0 = valuation_rat(&base, p);
    debug_assert!(e0 > 0);
    Ok(e0 as u64 + valuation_int(&BigInt::from(n / d), p))
}

/// One factor of the boundary expansion: a rational function together with
/// its exact (possibly fractional) exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionFactor {
    pub base: RationalFunctionQ,
    pub exponent: BigRational,
}

/// Truncation of the nested logarithmic expansion of `log R(z)` at the
/// natural boundary, to nesting depth `J`.
#[derive(Debug, Clone)]
pub struct BoundaryExpansion {
    pub witness: u64,
    /// Multiplicative order of xi modulo the witness prime.
    pub multiplicative_order: u64,
    /// `v_p(xi^d - 1)`.
    pub base_valuation: u64,
    pub depth: u64,
    pub factors: Vec<ExpansionFactor>,
    /// `log`-scale remainder: exact log-zeta series minus the factor logs.
    pub residual: TruncatedSeriesQ,
    /// The factor product provably matches the zeta series through this
    /// order.
    pub matched_order: usize,
}

/// Expand `log R(z)` at a single witness prime into exact logarithms of
/// rational functions with nested rational exponents, truncated at depth
/// `J`, plus the residual series to order `n`.
pub fn boundary_expansion(
    spec: &SolenoidSpec,
    depth: u64,
    order: u64,
) -> Result<BoundaryExpansion, SolenoidError> {
    let witnesses = spec.witnesses();
    if witnesses.is_empty() {
        return Err(SolenoidError::NotNaturalBoundary);
    }
    if witnesses.len() > 1 {
        return Err(SolenoidError::ExpansionNeedsSingleWitness { witnesses });
    }
    let p = witnesses[0];
    if p == 2 {
        return Err(SolenoidError::ExpansionWitnessTwoUnsupported);
    }
    let d = multiplicative_order(spec.xi(), p).expect("witness prime");
    let e0 = {
        let base = pow_rational(spec.xi(), d) - BigRational::one();
        valuation_rat(&base, p) as u64
    };
    let weights = spec.weights();

    // product over the signed weights with the given power substituted;
    // `invert` swaps numerator and denominator
    let product_power = |power: u64, invert: bool| -> RationalFunctionQ {
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (sign, w) in &weights {
            let factor = IntPoly::one_minus_wz_pow(&pow_bigint(w, power), power as usize);
            let to_den = (*sign > 0) != invert;
            if to_den {
                den = den.mul(&factor);
            } else {
                num = num.mul(&factor);
            }
        }
        RationalFunctionQ::new(num, den).expect("nonzero denominator")
    };

    let rat = |num: i64, den: u64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let mut factors = Vec::new();
    // leading factor: the full sum before the witness corrections
    factors.push(ExpansionFactor {
        base: product_power(1, false),
        exponent: rat(1, 1),
    });
    // remove the multiples of d, then add back the corrected layer
    factors.push(ExpansionFactor {
        base: product_power(d, false),
        exponent: rat(-1, d),
    });
    factors.push(ExpansionFactor {
        base: product_power(d, false),
        exponent: BigRational::new(
            BigInt::one(),
            BigInt::from(d) * pow_bigint(&BigInt::from(p), e0),
        ),
    });
    // nested layers j = 1..J, telescoped to the displayed form
    for j in 1..=depth {
        let power = d * p.pow(u32::try_from(j).expect("small depth"));
        let exponent = BigRational::new(
            BigInt::from(p - 1),
            BigInt::from(d) * pow_bigint(&BigInt::from(p), e0 + 2 * j),
        );
        factors.push(ExpansionFactor {
            base: product_power(power, true),
            exponent,
        });
    }

    // residual: exact log-zeta series minus the factor logarithms
    let n = order as usize;
    let counts: Vec<BigRational> = periodic_sequence(spec, order)
        .into_iter()
        .map(BigRational::from)
        .collect();
    let mut residual = log_zeta_series(&counts);
    for f in &factors {
        // base(0) = 1, so the constant scalings of the two logs cancel
        assert_eq!(f.base.numerator().coeff(0), f.base.denominator().coeff(0));
        let log_num = log_series_of_poly(f.base.numerator(), n);
        let log_den = log_series_of_poly(f.base.denominator(), n);
        residual = residual.sub(&log_num.sub(&log_den).scale(&f.exponent));
    }
    let matched_order =
        order.min(d * p.pow(u32::try_from(depth + 1).expect("small depth")) - 1) as usize;
    for k in 0..=matched_order {
        assert!(
            residual.coeff(k).is_zero(),
            "expansion must match the zeta series exactly through order {matched_order}, first mismatch at {k}"
        );
    }
    Ok(BoundaryExpansion {
        witness: p,
        multiplicative_order: d,
        base_valuation: e0,
        depth,
        factors,
        residual,
        matched_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::recurrence::berlekamp_massey_int;

    fn spec(primes: &[u64], num: i64, den: i64) -> SolenoidSpec {
        SolenoidSpec::new(
            primes.to_vec(),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
        .unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunctionQ {
        RationalFunctionQ::new(IntPoly::from_i64(num), IntPoly::from_i64(den)).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            SolenoidSpec::new(vec![3], BigRational::one()).unwrap_err(),
            SolenoidError::XiDegenerate
        );
        assert_eq!(
            SolenoidSpec::new(vec![4], BigRational::from(BigInt::from(2))).unwrap_err(),
            SolenoidError::NotPrime(4)
        );
        // xi = 1/2 needs 2 inverted
        assert_eq!(
            SolenoidSpec::new(vec![3], BigRational::new(1.into(), 2.into())).unwrap_err(),
            SolenoidError::DenominatorPrimeNotInverted(2)
        );
        assert!(SolenoidSpec::new(vec![2, 3], BigRational::new(1.into(), 2.into())).is_ok());
    }

    #[test]
    fn periodic_counts_match_both_routes() {
        let s = spec(&[3], 2, 1);
        assert_eq!(periodic_count(&s, 6), BigInt::from(7));
        assert_eq!(periodic_count(&s, 2), BigInt::from(1));
        let t = spec(&[2], 2, 1);
        assert_eq!(periodic_count(&t, 5), BigInt::from(31));
        let u = spec(&[], 3, 1);
        assert_eq!(periodic_count(&u, 1), BigInt::from(2));
        for s in [&s, &t, &u, &spec(&[2, 3], 6, 1), &spec(&[2, 5], -2, 5)] {
            for j in 1..=24 {
                assert_eq!(periodic_count(s, j), periodic_count_oracle(s, j));
            }
        }
    }

    #[test]
    fn classification_examples() {
        match classify(&spec(&[3], 2, 1)) {
            DichotomyVerdict::NaturalBoundary { witnesses, radius } => {
                assert_eq!(witnesses, vec![3]);
                assert_eq!(radius, BigRational::new(1.into(), 2.into()));
            }
            v => panic!("expected a natural boundary, got {v:?}"),
        }
        match classify(&spec(&[2], 2, 1)) {
            DichotomyVerdict::Rational { closed } => {
                assert_eq!(closed, rf(&[1, -1], &[1, -2]));
            }
            v => panic!("expected rational, got {v:?}"),
        }
        match classify(&spec(&[], 3, 1)) {
            DichotomyVerdict::Rational { closed } => {
                assert_eq!(closed, rf(&[1, -1], &[1, -3]));
            }
            v => panic!("expected rational, got {v:?}"),
        }
    }

    #[test]
    fn rational_closed_forms() {
        assert_eq!(
            rational_closed_form(&spec(&[2], 4, 1)),
            rf(&[1, -1], &[1, -4])
        );
        // S0 = {2,3}, xi = 6: F(j) = 6^j - 1 untouched by 2 and 3
        let s = spec(&[2, 3], 6, 1);
        let closed = rational_closed_form(&s);
        assert_eq!(closed, rf(&[1, -1], &[1, -6]));
        let series = zeta_series(&s, 24);
        assert_eq!(series_of_rational(&closed, 24).unwrap(), series);
        // negative multiplier: F(j) = |(-2)^j - 1|, closed form (1+z)/(1-2z)
        let n = spec(&[], -2, 1);
        assert_eq!(rational_closed_form(&n), rf(&[1, 1], &[1, -2]));
    }

    #[test]
    fn zeta_series_frozen_values() {
        // confirmed by the brute-force exponential oracle in the series tests
        let s = spec(&[3], 2, 1);
        let z = zeta_series(&s, 6);
        let expect: Vec<BigRational> = [1, 1, 1, 3, 4, 10, 13]
            .iter()
            .map(|&v| BigRational::from(BigInt::from(v)))
            .collect();
        assert_eq!(z.coeffs(), &expect[..]);
        // rational branch: series of (1-z)/(1-2z)
        let t = spec(&[2], 2, 1);
        let zt = zeta_series(&t, 3);
        let expect: Vec<BigRational> = [1, 1, 2, 4]
            .iter()
            .map(|&v| BigRational::from(BigInt::from(v)))
            .collect();
        assert_eq!(zt.coeffs(), &expect[..]);
        // F(1) = F(2) = 3 for xi = -2 with nothing inverted
        let u = spec(&[], -2, 1);
        let zu = zeta_series(&u, 2);
        let expect: Vec<BigRational> = [1, 3, 6]
            .iter()
            .map(|&v| BigRational::from(BigInt::from(v)))
            .collect();
        assert_eq!(zu.coeffs(), &expect[..]);
    }

    #[test]
    fn lte_valuation_examples() {
        let two = BigRational::from(BigInt::from(2));
        assert_eq!(lte_valuation(&two, 3, 6).unwrap(), 2);
        assert_eq!(lte_valuation(&two, 3, 5).unwrap(), 0);
        assert_eq!(lte_valuation(&two, 5, 20).unwrap(), 2);
        assert_eq!(
            lte_valuation(&two, 2, 4),
            Err(SolenoidError::LteOddPrimeRequired)
        );
        // direct-valuation agreement on a spread of cases
        for p in [3u64, 5, 7, 11] {
            for n in 1..=30u64 {
                let direct = valuation_rat(&(pow_rational(&two, n) - BigRational::one()), p);
                assert_eq!(
                    lte_valuation(&two, p, n).unwrap() as i64,
                    direct,
                    "p={p} n={n}"
                );
            }
        }
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(
            lte_valuation(&third, 3, 2),
            Err(SolenoidError::LteUnitRequired { p: 3 })
        );
    }

    #[test]
    fn boundary_expansion_reproduces_displayed_factors() {
        let s = spec(&[3], 2, 1);
        let e = boundary_expansion(&s, 2, 17).unwrap();
        assert_eq!(e.witness, 3);
        assert_eq!(e.multiplicative_order, 2);
        assert_eq!(e.base_valuation, 1);
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(e.factors.len(), 5);
        assert_eq!(e.factors[0].base, rf(&[1, -1], &[1, -2]));
        assert_eq!(e.factors[0].exponent, rat(1, 1));
        assert_eq!(e.factors[1].base, rf(&[1, 0, -1], &[1, 0, -4]));
        assert_eq!(e.factors[1].exponent, rat(-1, 2));
        assert_eq!(e.factors[2].base, rf(&[1, 0, -1], &[1, 0, -4]));
        assert_eq!(e.factors[2].exponent, rat(1, 6));
        // nested layers (1 - (2z)^(2*3^j)) / (1 - z^(2*3^j)), exponent 1/(3*9^j)
        let mut num6 = vec![0i64; 7];
        num6[0] = 1;
        num6[6] = -64;
        let mut den6 = vec![0i64; 7];
        den6[0] = 1;
        den6[6] = -1;
        assert_eq!(e.factors[3].base, rf(&num6, &den6));
        assert_eq!(e.factors[3].exponent, rat(1, 27));
        let mut num18 = vec![0i64; 19];
        num18[0] = 1;
        num18[18] = -(1i64 << 18);
        let mut den18 = vec![0i64; 19];
        den18[0] = 1;
        den18[18] = -1;
        assert_eq!(e.factors[4].base, rf(&num18, &den18));
        assert_eq!(e.factors[4].exponent, rat(1, 243));
        assert_eq!(e.matched_order, 17);
    }

    #[test]
    fn boundary_expansion_shallow_and_generalized() {
        // depth 0 matches through order d * p - 1 = 5
        let s = spec(&[3], 2, 1);
        let e = boundary_expansion(&s, 0, 5).unwrap();
        assert_eq!(e.matched_order, 5);
        // witness 5, xi = 2: order d = 4, nested weights 1/(5 * 25^j)-scaled
        let t = spec(&[5], 2, 1);
        let e = boundary_expansion(&t, 1, 19).unwrap();
        assert_eq!(e.multiplicative_order, 4);
        assert_eq!(e.base_valuation, 1);
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // nested layer j=1: (p-1)/(d p^(1+2)) = 4/(4 * 125) = 1/125
        assert_eq!(e.factors.last().unwrap().exponent, rat(1, 125));
        assert_eq!(e.matched_order, 19);
    }

    #[test]
    fn boundary_expansion_negative_multiplier() {
        // xi = -2 with witness 5: order of -2 mod 5 is 4; the internal
        // series assertion certifies the expansion exactly through order 19
        let s = spec(&[5], -2, 1);
        let e = boundary_expansion(&s, 1, 19).unwrap();
        assert_eq!(e.multiplicative_order, 4);
        assert_eq!(e.matched_order, 19);
        // leading factor carries the signed weights: (1 + z)/(1 - 2z)
        assert_eq!(e.factors[0].base, rf(&[1, 1], &[1, -2]));
    }

    #[test]
    fn boundary_expansion_preconditions() {
        assert_eq!(
            boundary_expansion(&spec(&[2], 2, 1), 1, 10).unwrap_err(),
            SolenoidError::NotNaturalBoundary
        );
        assert_eq!(
            boundary_expansion(&spec(&[3, 5], 2, 1), 1, 10).unwrap_err(),
            SolenoidError::ExpansionNeedsSingleWitness {
                witnesses: vec![3, 5]
            }
        );
        assert_eq!(
            boundary_expansion(&spec(&[2], 3, 1), 1, 10).unwrap_err(),
            SolenoidError::ExpansionWitnessTwoUnsupported
        );
    }

    #[test]
    fn natural_boundary_has_no_short_recurrence() {
        // heuristic corroboration, not proof: 40 terms admit no certified
        // recurrence of order at most 12
        let s = spec(&[3], 2, 1);
        let seq = periodic_sequence(&s, 40);
        if let Ok(rec) = berlekamp_massey_int(&seq) {
            assert!(rec.order() > 12);
        }
    }
}
