//! Exact real-root counting on open intervals via Sturm chains, with
//! multiplicities recovered from the squarefree decomposition.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::QPoly;

/// Endpoint of a real interval; infinities are allowed.
#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Endpoint {
    fn leq(&self, other: &Endpoint) -> bool {
        use Endpoint::*;
        match (self, other) {
            (NegInfinity, _) | (_, PosInfinity) => true,
            (PosInfinity, _) | (_, NegInfinity) => false,
            (Finite(a), Finite(b)) => a <= b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SturmError {
    ZeroPolynomial,
    DegenerateInterval,
}

impl std::fmt::Display for SturmError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SturmError::ZeroPolynomial => write!(f, "root counting requires a nonzero polynomial"),
            SturmError::DegenerateInterval => write!(f, "interval is degenerate (lo >= hi)"),
        }
    }
}

impl std::error::Error for SturmError {}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let rem = chain[n - 2].divrem(&chain[n - 1]).1;
        chain.push(rem.scale(&BigRational::from_integer((-1).into())));
    }
    chain.pop();
    chain
}

fn sign_at(p: &QPoly, x: &Endpoint) -> i8 {
    let v = match x {
        Endpoint::Finite(q) => p.eval(q),
        Endpoint::PosInfinity => p.leading().cloned().unwrap_or_else(BigRational::zero),
        Endpoint::NegInfinity => {
            let lead = p.leading().cloned().unwrap_or_else(BigRational::zero);
            if p.degree().unwrap_or(0).is_multiple_of(2) {
                lead
            } else {
                -lead
            }
        }
    };
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(chain: &[QPoly], x: &Endpoint) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of the squarefree polynomial `p` in the
/// half-open interval `(lo, hi]`.
fn count_squarefree_halfopen(p: &QPoly, lo: &Endpoint, hi: &Endpoint) -> usize {
    let chain = sturm_chain(p);
    variations(&chain, lo) - variations(&chain, hi)
}

/// Exact number of real roots of `p` in the open interval `(lo, hi)`,
/// counted with multiplicity. Roots at finite endpoints are excluded.
pub fn count_real_roots(p: &QPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if hi.leq(lo) {
        return Err(SturmError::DegenerateInterval);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let mut total = 0usize;
    for (factor, mult) in p.squarefree_decomposition() {
        let mut count = count_squarefree_halfopen(&factor, lo, hi);
        if let Endpoint::Finite(b) = hi {
            if factor.eval(b).is_zero() {
                count -= 1;
            }
        }
        total += mult * count;
    }
    Ok(total)
}
