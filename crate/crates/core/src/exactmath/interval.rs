//! Rational interval arithmetic with directed rounding, enough to evaluate
//! absolute values of polynomials at roots of unity to any requested number
//! of certified decimal digits. No hardware floating point is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numtheory::pow_bigint;
use crate::guard;

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let candidates = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            Self {
                lo: BigRational::zero(),
                hi: m.hi,
            }
        } else {
            m
        }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        assert!(
            !self.contains_zero(),
            "reciprocal of an interval containing 0"
        );
        Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    /// Square root of a nonnegative interval, valid to `bits` of directed
    /// rounding slack.
    pub fn sqrt(&self, bits: u64) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        Self {
            lo: sqrt_lower(&self.lo, bits),
            hi: sqrt_upper(&self.hi, bits),
        }
    }

    /// Round endpoints outward onto the 2^-bits dyadic grid; keeps numbers
    /// from snowballing across long computations.
    pub fn compress(&self, bits: u64) -> Self {
        Self {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }
}

fn dyadic_floor(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from(scale.clone());
    let fl = scaled.numer().div_floor(scaled.denom());
    guard::check(&fl);
    BigRational::new(fl, scale)
}

fn dyadic_ceil(x: &BigRational, bits: u64) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from(scale.clone());
    let ce = scaled.numer().div_ceil(scaled.denom());
    BigRational::new(ce, scale)
}

/// Rational upper bound on sqrt(x), within 2^-bits of the true value.
fn sqrt_upper(x: &BigRational, bits: u64) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    assert!(x.is_positive());
    // Newton from above converges monotonically down to sqrt(x)
    let two = BigRational::from(BigInt::from(2));
    let mut y = if x >= &BigRational::one() {
        x.clone()
    } else {
        BigRational::one()
    };
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
    loop {
        let next = (&y + x / &y) / &two;
        // y stays an upper bound: y^2 >= x throughout
        if &y - &next < tol {
            // keep dyadic size bounded and direction outward
            return dyadic_ceil(&next, bits + 2);
        }
        y = dyadic_ceil(&next, bits + 2);
    }
}

/// Rational lower bound on sqrt(x).
fn sqrt_lower(x: &BigRational, bits: u64) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let up = sqrt_upper(x, bits);
    let lo = x / &up;
    dyadic_floor(&lo, bits + 2)
}

/// Interval enclosure of pi, via arctangent series with alternating tails:
/// pi = 16 arctan(1/5) - 4 arctan(1/239).
pub fn pi_interval(bits: u64) -> RatInterval {
    let a5 = arctan_inv_interval(5, bits + 8);
    let a239 = arctan_inv_interval(239, bits + 8);
    let sixteen = RatInterval::point(BigRational::from(BigInt::from(16)));
    let four = RatInterval::point(BigRational::from(BigInt::from(4)));
    sixteen.mul(&a5).sub(&four.mul(&a239)).compress(bits)
}

/// arctan(1/m) enclosed by consecutive partial sums of the alternating
/// Leibniz series.
fn arctan_inv_interval(m: u64, bits: u64) -> RatInterval {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut sum = BigRational::zero();
    let mut term_num = BigRational::new(BigInt::one(), BigInt::from(m));
    let mut k = 0u64;
    loop {
        let term = &term_num / BigRational::from(BigInt::from(2 * k + 1));
        let new_sum = if k.is_multiple_of(2) {
            &sum + &term
        } else {
            &sum - &term
        };
        if term < tol {
            // alternating series: truth lies between consecutive partial sums
            let (lo, hi) = if k.is_multiple_of(2) {
                (sum, new_sum)
            } else {
                (new_sum, sum)
            };
            return RatInterval::new(lo, hi);
        }
        sum = new_sum;
        term_num /= BigRational::from(m2.clone());
        k += 1;
    }
}

/// Enclosures of `cos(2 pi t)` and `sin(2 pi t)` for rational `t`.
pub fn cos_sin_2pi(t: &BigRational, bits: u64) -> (RatInterval, RatInterval) {
    // reduce t to [-1/2, 1/2] so |x| <= pi
    let t = {
        let fl = t.floor();
        let mut r = t - fl;
        if r > BigRational::new(BigInt::one(), BigInt::from(2)) {
            r -= BigRational::one();
        }
        r
    };
    let pi = pi_interval(bits + 16);
    let x = pi.mul(&RatInterval::point(&t * BigRational::from(BigInt::from(2))));
    let rad = {
        let w = x.width();
        w / BigRational::from(BigInt::from(2))
    };
    let mid = x.midpoint();
    let (c, s, taylor_err) = cos_sin_taylor(&mid, bits + 8);
    // |cos'| <= 1 and |sin'| <= 1 bound the argument slack
    let slack = &rad + &taylor_err;
    let widen = |v: BigRational| RatInterval::new(&v - &slack, v + &slack).compress(bits);
    (widen(c), widen(s))
}

/// Taylor values of cos and sin at a rational point with |x| <= 4, plus a
/// rigorous remainder bound.
fn cos_sin_taylor(x: &BigRational, bits: u64) -> (BigRational, BigRational, BigRational) {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut cos = BigRational::one();
    let mut sin = x.clone();
    // term_k for cos: (-1)^k x^(2k) / (2k)!; build incrementally
    let x2 = x * x;
    let mut cos_term = BigRational::one();
    let mut sin_term = x.clone();
    let mut k = 1u64;
    loop {
        cos_term = &cos_term * &x2 / BigRational::from(BigInt::from((2 * k - 1) * (2 * k)));
        sin_term = &sin_term * &x2 / BigRational::from(BigInt::from((2 * k) * (2 * k + 1)));
        if k % 2 == 1 {
            cos -= &cos_term;
            sin -= &sin_term;
        } else {
            cos += &cos_term;
            sin += &sin_term;
        }
        // once terms decrease (2k+1 > |x|), the next term bounds the tail
        if 2 * k > 8 && cos_term.abs() < tol && sin_term.abs() < tol {
            let err = (cos_term.abs() + sin_term.abs()) * BigRational::from(BigInt::from(2));
            return (cos, sin, err);
        }
        k += 1;
        guard::check(cos.numer());
    }
}

/// Enclosure of `|p(e^(2 pi i t))|^2` for an integer polynomial `p`.
pub fn poly_abs2_at_unit(p: &super::poly::IntPoly, t: &BigRational, bits: u64) -> RatInterval {
    let (c, s) = cos_sin_2pi(t, bits + 16);
    // Horner in interval complex arithmetic
    let mut re = RatInterval::point(BigRational::zero());
    let mut im = RatInterval::point(BigRational::zero());
    for k in (0..p.coeffs().len()).rev() {
        let nre = re
            .mul(&c)
            .sub(&im.mul(&s))
            .add(&RatInterval::point(BigRational::from(p.coeff(k))));
        let nim = re.mul(&s).add(&im.mul(&c));
        re = nre.compress(bits + 16);
        im = nim.compress(bits + 16);
    }
    re.square().add(&im.square()).compress(bits)
}

/// Decimal digits needed to separate 10^-digits, expressed in bits.
pub fn bits_for_digits(digits: u32) -> u64 {
    // log2(10) < 3.33
    (digits as u64) * 10 / 3 + 8
}

/// Decimal rendering of the midpoint with `digits` fractional digits.
pub fn decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = pow_bigint(&BigInt::from(10), digits as u64);
    let scaled = x * BigRational::from(scale);
    // round to nearest (halves up)
    let shifted = scaled + BigRational::new(BigInt::one(), BigInt::from(2));
    let n = shifted.numer().div_floor(shifted.denom());
    let neg = n.is_negative();
    let digits_str = n.abs().to_string();
    let digits_str = if digits_str.len() <= digits as usize {
        format!(
            "{}{}",
            "0".repeat(digits as usize + 1 - digits_str.len()),
            digits_str
        )
    } else {
        digits_str
    };
    let split = digits_str.len() - digits as usize;
    let (int_part, frac_part) = digits_str.split_at(split);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}
