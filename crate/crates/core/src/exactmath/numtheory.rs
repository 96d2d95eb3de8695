//! Integer and p-adic number theory primitives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors raised by the p-adic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    /// `p_adic_abs` on 0: the valuation is infinite.
    ZeroHasInfiniteValuation,
    /// The supplied modulus is not prime.
    NotPrime(u64),
}

impl std::fmt::Display for NumTheoryError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumTheoryError::ZeroHasInfiniteValuation => {
                write!(
                    f,
                    "p-adic absolute value of 0 is undefined (valuation is infinite)"
                )
            }
            NumTheoryError::NotPrime(p) => write!(f, "{p} is not prime"),
        }
    }
}

impl std::error::Error for NumTheoryError {}

/// Deterministic primality by trial division; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation `n = prod p^e` as `(p, e)` pairs, ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Moebius function: 1 at 1, (-1)^k on a product of k distinct primes,
/// 0 when not square-free.
///
/// ```
/// use twisted_zeta::exactmath::numtheory::mobius;
/// assert_eq!(mobius(1), 1);
/// assert_eq!(mobius(6), 1);
/// assert_eq!(mobius(12), 0);
/// ```
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius requires n >= 1");
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exponent of `p` in the nonzero integer `n`.
pub fn valuation_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of 0 is infinite");
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0u64;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Exponent of `p` in the nonzero rational `x` (may be negative).
pub fn valuation_rat(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of 0 is infinite");
    valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64
}

/// Normalised p-adic absolute value `|x|_p = p^(-v_p(x))` as an exact rational.
pub fn p_adic_abs(x: &BigRational, p: u64) -> Result<BigRational, NumTheoryError> {
    if x.is_zero() {
        return Err(NumTheoryError::ZeroHasInfiniteValuation);
    }
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    let v = valuation_rat(x, p);
    let pk = pow_bigint(&BigInt::from(p), v.unsigned_abs());
    Ok(if v >= 0 {
        BigRational::new(BigInt::one(), pk)
    } else {
        BigRational::from(pk)
    })
}

pub fn pow_bigint(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    crate::guard::check(&acc);
    acc
}

pub fn pow_rational(base: &BigRational, exp: u64) -> BigRational {
    BigRational::new(pow_bigint(base.numer(), exp), pow_bigint(base.denom(), exp))
}

/// `base^exp mod m` for u64 inputs, `m >= 1`.
pub fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 1);
    let m = m as u128;
    let mut acc = 1u128;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    // extended Euclid
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of the rational `x` modulo the prime `p`,
/// requiring `|x|_p = 1`. The order divides p - 1.
pub fn multiplicative_order(x: &BigRational, p: u64) -> Result<u64, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    assert!(
        !num.is_zero() && !den.is_zero(),
        "multiplicative order requires |x|_p = 1"
    );
    let num: u64 = num.to_string().parse().unwrap();
    let den: u64 = den.to_string().parse().unwrap();
    let a = num as u128 * mod_inverse_u64(den, p).expect("denominator invertible mod p") as u128;
    let a = (a % p as u128) as u64;
    // descend from p-1 through its divisor lattice
    let mut order = p - 1;
    for (q, e) in factor(p - 1) {
        for _ in 0..e {
            if pow_mod_u64(a, order / q, p) == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    debug_assert_eq!(pow_mod_u64(a, order, p), 1);
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mobius_cases() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn p_adic_examples() {
        // 12 = 2^2 * 3
        assert_eq!(p_adic_abs(&rat(12, 1), 2).unwrap(), rat(1, 4));
        assert_eq!(p_adic_abs(&rat(5, 1), 7).unwrap(), rat(1, 1));
        assert_eq!(p_adic_abs(&rat(2, 3), 3).unwrap(), rat(3, 1));
        assert!(p_adic_abs(&rat(0, 1), 3).is_err());
        assert!(p_adic_abs(&rat(1, 2), 4).is_err());
    }

    #[test]
    fn p_adic_multiplicative_and_ultrametric() {
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let primes = [2u64, 3, 5, 7];
        for _ in 0..200 {
            let a = (next() % 2000) as i64 - 1000;
            let b = (next() % 2000) as i64 - 1000;
            let c = (next() % 999) as i64 + 1;
            let d = (next() % 999) as i64 + 1;
            if a == 0 || b == 0 {
                continue;
            }
            let x = rat(a, c);
            let y = rat(b, d);
            for &p in &primes {
                let ax = p_adic_abs(&x, p).unwrap();
                let ay = p_adic_abs(&y, p).unwrap();
                assert_eq!(p_adic_abs(&(&x * &y), p).unwrap(), &ax * &ay);
                let s = &x + &y;
                if !s.is_zero() {
                    assert!(p_adic_abs(&s, p).unwrap() <= ax.max(ay));
                }
            }
        }
    }

    #[test]
    fn artin_product_formula_on_integers() {
        for n in [-360i64, -7, 2, 6, 30, 97, 1024, 3 * 5 * 49] {
            let x = BigRational::from_i64(n).unwrap();
            let mut prod = x.abs();
            for (p, _) in factor(n.unsigned_abs()) {
                prod *= p_adic_abs(&x, p).unwrap();
            }
            assert!(prod.is_one(), "Artin product failed for {n}");
        }
    }

    #[test]
    fn orders_and_divisors() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(multiplicative_order(&rat(2, 1), 3).unwrap(), 2);
        assert_eq!(multiplicative_order(&rat(2, 1), 5).unwrap(), 4);
        assert_eq!(multiplicative_order(&rat(2, 1), 7).unwrap(), 3);
        // 1/2 has order 4 mod 5 as well
        assert_eq!(multiplicative_order(&rat(1, 2), 5).unwrap(), 4);
    }
}
