//! Divisibility checks every genuine periodic-point counting sequence must
//! satisfy: the Moebius-convolved sums `sum_(d|n) mu(d) a_(n/d)` are
//! divisible by n (each equals n times the number of orbits of length n).
//! Failing entries are reported as data, not raised as errors, so that
//! non-realizable inputs can be examined.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmath::numtheory::{divisors, mobius};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    /// Orbit counts are only defined once every congruence passes.
    SequenceFailsCongruence { first_failure: u64 },
}

impl std::fmt::Display for CongruenceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CongruenceError::SequenceFailsCongruence { first_failure } => write!(
                f,
                "orbit counts undefined: the divisibility congruence fails at n = {first_failure}"
            ),
        }
    }
}

impl std::error::Error for CongruenceError {}

/// One row of the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceEntry {
    pub n: u64,
    /// `sum_(d|n) mu(d) a_(n/d)`.
    pub mobius_sum: BigInt,
    /// `mobius_sum mod n`, in `[0, n)`.
    pub residue: BigInt,
    /// `mobius_sum / n` when the residue vanishes.
    pub orbit_count: Option<BigInt>,
    pub pass: bool,
}

/// Report for `n = 1..N`, contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub entries: Vec<CongruenceEntry>,
}

impl CongruenceReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn first_failure(&self) -> Option<u64> {
        self.entries.iter().find(|e| !e.pass).map(|e| e.n)
    }

    /// All orbit counts are defined and nonnegative: the necessary shape of
    /// a sequence that really counts fixed points.
    pub fn orbit_counts_nonnegative(&self) -> bool {
        self.all_pass()
            && self
                .entries
                .iter()
                .all(|e| e.orbit_count.as_ref().is_some_and(|c| !c.is_negative()))
    }
}

/// Moebius sums, residues and orbit counts for the whole sequence
/// `a_1..a_N` (indexed from 1).
pub fn gauss_check(seq: &[BigInt]) -> CongruenceReport {
    let entries = (1..=seq.len() as u64)
        .map(|n| {
            let mut sum = BigInt::zero();
            for d in divisors(n) {
                match mobius(d) {
                    1 => sum += &seq[(n / d - 1) as usize],
                    -1 => sum -= &seq[(n / d - 1) as usize],
                    _ => {}
                }
            }
            let nn = BigInt::from(n);
            let residue = sum.mod_floor(&nn);
            let pass = residue.is_zero();
            let orbit_count = pass.then(|| sum.div_floor(&nn));
            CongruenceEntry {
                n,
                mobius_sum: sum,
                residue,
                orbit_count,
                pass,
            }
        })
        .collect();
    CongruenceReport { entries }
}

/// The orbit counts `P_n / n`, each flagged when negative (impossible for
/// a genuine fixed-point sequence). Errors when any congruence fails.
pub fn orbit_counts(seq: &[BigInt]) -> Result<Vec<(BigInt, bool)>, CongruenceError> {
    let report = gauss_check(seq);
    if let Some(first_failure) = report.first_failure() {
        return Err(CongruenceError::SequenceFailsCongruence { first_failure });
    }
    Ok(report
        .entries
        .into_iter()
        .map(|e| {
            let c = e.orbit_count.expect("all passed");
            let neg = c.is_negative();
            (c, neg)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn doubling_counts_pass() {
        let report = gauss_check(&ints(&[1, 3, 7, 15]));
        assert!(report.all_pass());
        let last = report.entries.last().unwrap();
        assert_eq!(last.mobius_sum, BigInt::from(12));
        assert_eq!(last.orbit_count, Some(BigInt::from(3)));
    }

    #[test]
    fn constructed_counterexample_fails_at_two() {
        let report = gauss_check(&ints(&[1, 2]));
        assert!(!report.all_pass());
        assert_eq!(report.first_failure(), Some(2));
        assert!(report.entries[0].pass);
        assert_eq!(
            orbit_counts(&ints(&[1, 2])).unwrap_err(),
            CongruenceError::SequenceFailsCongruence { first_failure: 2 }
        );
    }

    #[test]
    fn s_integer_doubling_values_pass() {
        let report = gauss_check(&ints(&[1, 1, 7, 5, 31, 7]));
        assert!(report.all_pass());
        assert!(report.orbit_counts_nonnegative());
    }

    #[test]
    fn orbit_count_examples() {
        let counts = orbit_counts(&ints(&[1, 3, 7, 15, 31, 63])).unwrap();
        let expect = [1i64, 1, 2, 3, 6, 9];
        for (i, (c, neg)) in counts.iter().enumerate() {
            assert_eq!(c, &BigInt::from(expect[i]));
            assert!(!neg);
        }
        let ones = orbit_counts(&ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(ones[0].0, BigInt::from(1));
        assert!(ones[1..].iter().all(|(c, _)| c.is_zero()));
        let threes = orbit_counts(&ints(&[3, 3, 3, 3])).unwrap();
        assert_eq!(threes[0].0, BigInt::from(3));
        assert!(threes[1..].iter().all(|(c, _)| c.is_zero()));
    }

    #[test]
    fn mobius_inversion_round_trip() {
        // sum over d|n of d * (orbit count at d) reproduces a_n
        let seq = ints(&[1, 3, 7, 15, 31, 63, 127, 255]);
        let counts = orbit_counts(&seq).unwrap();
        for n in 1..=seq.len() as u64 {
            let mut acc = BigInt::zero();
            for d in divisors(n) {
                acc += BigInt::from(d) * &counts[(d - 1) as usize].0;
            }
            assert_eq!(acc, seq[(n - 1) as usize]);
        }
    }

    #[test]
    fn negative_orbit_counts_are_flagged() {
        // passes the congruences but cannot count fixed points
        let seq = ints(&[1, -3]);
        let report = gauss_check(&seq);
        assert!(report.all_pass());
        assert!(!report.orbit_counts_nonnegative());
        let counts = orbit_counts(&seq).unwrap();
        assert!(counts[1].1, "negative layer must be flagged");
    }
}
