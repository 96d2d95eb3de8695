//! Optional cap on intermediate big-integer size.
//!
//! The cap is process-wide configuration read from `TWISTED_ZETA_MAX_BITS`
//! by the CLI (unlimited when unset). Long-running kernels call
//! [`check`] at their growth points; exceeding the cap raises a
//! [`BitsExceeded`] panic payload which the CLI catches and maps to its
//! dedicated exit code. Library callers that want the same behaviour can
//! wrap calls in `std::panic::catch_unwind`.

use num_bigint::BigInt;
use std::sync::atomic::{AtomicU64, Ordering};

static MAX_BITS: AtomicU64 = AtomicU64::new(0);

/// Payload carried by the panic raised when the bit cap is exceeded.
#[derive(Debug, Clone)]
pub struct BitsExceeded {
    pub bits: u64,
    pub cap: u64,
}

/// Set the global cap. `None` (or `Some(0)`) means unlimited.
pub fn set_max_bits(cap: Option<u64>) {
    MAX_BITS.store(cap.unwrap_or(0), Ordering::Relaxed);
}

pub fn max_bits() -> Option<u64> {
    match MAX_BITS.load(Ordering::Relaxed) {
        0 => None,
        n => Some(n),
    }
}

/// Check a single integer against the cap.
#[inline]
pub fn check(x: &BigInt) {
    let cap = MAX_BITS.load(Ordering::Relaxed);
    if cap != 0 {
        let bits = x.bits();
        if bits > cap {
            std::panic::panic_any(BitsExceeded { bits, cap });
        }
    }
}

/// Run `f`, converting a [`BitsExceeded`] panic into an `Err`.
pub fn trap<T>(f: impl FnOnce() -> T + std::panic::UnwindSafe) -> Result<T, BitsExceeded> {
    match std::panic::catch_unwind(f) {
        Ok(v) => Ok(v),
        Err(payload) => match payload.downcast::<BitsExceeded>() {
            Ok(b) => Err(*b),
            Err(other) => std::panic::resume_unwind(other),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    // Single test: the cap is process-global and the unit-test binary runs
    // tests in parallel, so the cap used here is far above anything other
    // tests allocate.
    #[test]
    fn cap_trips_and_is_trappable() {
        check(&(BigInt::one() << 4096));

        set_max_bits(Some(1_000_000));
        let r = trap(|| {
            let big = BigInt::one() << 2_000_000;
            check(&big);
            big
        });
        set_max_bits(None);
        let err = r.expect_err("cap should have tripped");
        assert_eq!(err.cap, 1_000_000);
        assert!(err.bits > 1_000_000);
    }
}
