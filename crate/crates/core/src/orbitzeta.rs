//! Zeta functions of explicit finite dynamical systems, and the product
//! formula for counting sequences of a periodic automorphism.
//!
//! A finite self-map decomposes into transient points and periodic cycles;
//! the counting sequence `Z(n) = #fixed points of the n-th iterate` only
//! sees the cycles, its zeta function is the rational product
//! `prod 1/(1 - z^len)` over cycles, and the reciprocal substitution
//! `z -> 1/z` rescales it by `(-1)^a z^b` (a = cycles, b = periodic
//! points). For a map of least period m the same data compresses to the
//! formal product `prod_(d|m) (1 - z^d)^(-P(d)/d)` with integer layer
//! counts P(d) obtained by Moebius convolution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::numtheory::{divisors, mobius};
use crate::exactmath::poly::{IntPoly, RationalFunctionQ};
use crate::exactmath::series::{log_series_of_poly, TruncatedSeriesQ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitError {
    /// Successor table entries must index back into the point set.
    SuccessorOutOfRange { index: usize, value: usize },
    /// The product formula needs a value for every divisor of the period.
    MissingDivisorValue { divisor: u64 },
}

impl std::fmt::Display for OrbitError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitError::SuccessorOutOfRange { index, value } => {
                write!(
                    f,
                    "successor table sends {index} to {value}, outside the point set"
                )
            }
            OrbitError::MissingDivisorValue { divisor } => {
                write!(
                    f,
                    "no iterate count supplied for divisor {divisor} of the period"
                )
            }
        }
    }
}

impl std::error::Error for OrbitError {}

/// Total self-map of `{0, .., N-1}` given by its successor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    successor: Vec<usize>,
}

impl FiniteMap {
    pub fn new(successor: Vec<usize>) -> Result<Self, OrbitError> {
        let n = successor.len();
        for (index, &value) in successor.iter().enumerate() {
            if value >= n {
                return Err(OrbitError::SuccessorOutOfRange { index, value });
            }
        }
        Ok(Self { successor })
    }

    pub fn size(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.successor.len()];
        for &v in &self.successor {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }
}

/// Cycle structure of the eventual image plus the count of transients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Cycle lengths with multiplicity, ascending.
    pub cycle_lengths: Vec<usize>,
    pub transient_points: usize,
}

impl OrbitDecomposition {
    /// Number of periodic orbits (`a` in the reciprocal identity).
    pub fn orbit_count(&self) -> usize {
        self.cycle_lengths.len()
    }

    /// Number of periodic points (`b` in the reciprocal identity).
    pub fn periodic_points(&self) -> usize {
        self.cycle_lengths.iter().sum()
    }
}

/// Walk the functional graph and extract the cycles.
pub fn orbit_decomposition(map: &FiniteMap) -> OrbitDecomposition {
    let n = map.size();
    // 0 = unvisited, 1 = on the current path, 2 = resolved
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    let mut cycle_lengths = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = map.successor[x];
        }
        if state[x] == 1 {
            // closed a new cycle: measure it from x around
            let pos = path.iter().position(|&y| y == x).expect("x is on the path");
            let len = path.len() - pos;
            for &y in &path[pos..] {
                on_cycle[y] = true;
            }
            cycle_lengths.push(len);
        }
        for &y in &path {
            state[y] = 2;
        }
    }
    cycle_lengths.sort_unstable();
    let transient_points = n - on_cycle.iter().filter(|&&b| b).count();
    OrbitDecomposition {
        cycle_lengths,
        transient_points,
    }
}

/// Number of points fixed by the n-th iterate: cycles of length dividing n
/// contribute all their points.
pub fn fixed_count(map: &FiniteMap, n: u64) -> u64 {
    assert!(n >= 1);
    let dec = orbit_decomposition(map);
    dec.cycle_lengths
        .iter()
        .filter(|&&len| n.is_multiple_of(len as u64))
        .map(|&len| len as u64)
        .sum()
}

/// Iterate-the-table oracle for [`fixed_count`], used by tests.
pub fn fixed_count_brute(map: &FiniteMap, n: u64) -> u64 {
    let mut count = 0;
    for x in 0..map.size() {
        let mut y = x;
        for _ in 0..n {
            y = map.successor[y];
        }
        if y == x {
            count += 1;
        }
    }
    count
}

/// The zeta function of the map with its reciprocal-identity constants.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitZeta {
    pub zeta: RationalFunctionQ,
    /// Number of periodic orbits.
    pub orbit_count: usize,
    /// Number of periodic points.
    pub periodic_points: usize,
}

/// `prod_cycles 1/(1 - z^len)`, plus (a, b); the reciprocal identity
/// `Z(1/z) = (-1)^a z^b Z(z)` is asserted symbolically before returning.
pub fn zeta_from_orbits(map: &FiniteMap) -> OrbitZeta {
    let dec = orbit_decomposition(map);
    let mut den = IntPoly::one();
    for &len in &dec.cycle_lengths {
        den = den.mul(&IntPoly::one_minus_wz_pow(&BigInt::one(), len));
    }
    let zeta = RationalFunctionQ::new(IntPoly::one(), den).expect("nonzero denominator");
    let a = dec.orbit_count();
    let b = dec.periodic_points();
    let lhs = zeta.compose_reciprocal(&BigInt::one());
    let sign = if a.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut monomial = vec![BigInt::zero(); b + 1];
    monomial[b] = sign;
    let rhs = zeta.mul(&RationalFunctionQ::from_int_poly(IntPoly::new(monomial)));
    assert_eq!(
        lhs, rhs,
        "reciprocal identity must hold as a polynomial identity"
    );
    OrbitZeta {
        zeta,
        orbit_count: a,
        periodic_points: b,
    }
}

/// Formal product `prod (1 - z^d)^(e_d)` with exact rational exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalProduct {
    /// `(d, exponent)` pairs, `d` ascending, exponents nonzero.
    pub factors: Vec<(u64, BigRational)>,
}

impl FormalProduct {
    /// Expand `sum e_d log(1 - z^d)` and exponentiate, exactly; fractional
    /// exponents stay exact through the series exponential (generalized
    /// binomial coefficients over Q).
    pub fn series(&self, order: usize) -> TruncatedSeriesQ {
        let mut log = TruncatedSeriesQ::zero(order);
        for (d, exponent) in &self.factors {
            let base = IntPoly::one_minus_wz_pow(&BigInt::one(), *d as usize);
            log = log.add(&log_series_of_poly(&base, order).scale(exponent));
        }
        log.exp()
    }
}

/// Product-formula data for an m-periodic counting sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicProduct {
    pub period: u64,
    /// `P(d)` for each divisor `d` of the period, ascending in `d`: the
    /// number of points of least period `d`.
    pub layer_counts: Vec<(u64, BigInt)>,
    /// `prod_(d|m) (1 - z^d)^(-P(d)/d)`.
    pub product: FormalProduct,
    /// Divisors whose layer count is negative or not divisible by `d`: the
    /// input cannot then come from an actual m-periodic system.
    pub warnings: Vec<u64>,
}

/// Moebius convolution of the supplied iterate counts
/// `values[i] = Z(phi^(d_i))` over the divisors of `m`, producing the layer
/// counts `P(d) = sum_(d1|d) mu(d1) Z(phi^(d/d1))` and the formal product.
///
/// The formula is formal: inputs that cannot arise from a periodic system
/// are flagged in `warnings`, never rejected.
pub fn periodic_product_formula(
    values: &[(u64, BigInt)],
    period: u64,
) -> Result<PeriodicProduct, OrbitError> {
    assert!(period >= 1);
    let value_of =
        |d: u64| -> Option<&BigInt> { values.iter().find(|(k, _)| *k == d).map(|(_, v)| v) };
    let divs = divisors(period);
    for &d in &divs {
        if value_of(d).is_none() {
            return Err(OrbitError::MissingDivisorValue { divisor: d });
        }
    }
    let mut layer_counts = Vec::with_capacity(divs.len());
    let mut warnings = Vec::new();
    let mut factors = Vec::new();
    for &d in &divs {
        let mut p_d = BigInt::zero();
        for &d1 in &divisors(d) {
            let mu = mobius(d1);
            if mu == 0 {
                continue;
            }
            let term = value_of(d / d1).expect("checked above");
            if mu == 1 {
                p_d += term;
            } else {
                p_d -= term;
            }
        }
        if p_d.is_negative() || !p_d.mod_floor(&BigInt::from(d)).is_zero() {
            warnings.push(d);
        }
        if !p_d.is_zero() {
            factors.push((d, BigRational::new(-p_d.clone(), BigInt::from(d))));
        }
        layer_counts.push((d, p_d));
    }
    Ok(PeriodicProduct {
        period,
        layer_counts,
        product: FormalProduct { factors },
        warnings,
    })
}

/// Extend the divisor table to the full m-periodic counting sequence:
/// `Z(n) = Z(phi^gcd(n, m))`.
pub fn periodic_extension(values: &[(u64, BigInt)], period: u64, len: u64) -> Vec<BigInt> {
    (1..=len)
        .map(|n| {
            let d = n.gcd(&period);
            values
                .iter()
                .find(|(k, _)| *k == d)
                .map(|(_, v)| v.clone())
                .expect("divisor value present")
        })
        .collect()
}
