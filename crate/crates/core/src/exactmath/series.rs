//! Truncated formal power series with exact rational coefficients.
//!
//! The central construction is `exp(sum_(n>=1) a_n z^n / n)`: the
//! exponential generating object every zeta function in this crate is built
//! from. Exp and log are computed through the `f' = g' f` recurrence, so
//! every coefficient is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{IntPoly, RationalFunctionError, RationalFunctionQ};
use crate::guard;

/// Coefficients `c_0..c_N` of a power series truncated at order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeriesQ {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeriesQ {
    /// Wrap explicit coefficients; `coeffs.len()` must be `order + 1 >= 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series carries c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new((0..=order).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new((0..=order).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = BigRational::zero();
            for k in 0..=n {
                acc += self.coeff(k) * rhs.coeff(n - k);
            }
            *slot = acc;
        }
        Self::new(out)
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.coeff(0).is_zero(), "exp needs vanishing constant term");
        let order = self.order();
        let mut f = vec![BigRational::zero(); order + 1];
        f[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                // k * g_k * f_(n-k)
                acc += self.coeff(k) * BigRational::from(BigInt::from(k)) * &f[n - k];
            }
            let c = acc / BigRational::from(BigInt::from(n));
            guard::check(c.numer());
            f[n] = c;
        }
        Self::new(f)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Self {
        assert!(self.coeff(0).is_one(), "log needs constant term 1");
        let order = self.order();
        let mut a = vec![BigRational::zero(); order + 1]; // a_n = n * g_n
        for n in 1..=order {
            let mut acc = self.coeff(n) * BigRational::from(BigInt::from(n));
            for (k, a_k) in a.iter().enumerate().take(n).skip(1) {
                acc -= a_k * self.coeff(n - k);
            }
            a[n] = acc;
        }
        let mut g = vec![BigRational::zero(); order + 1];
        for n in 1..=order {
            g[n] = &a[n] / BigRational::from(BigInt::from(n));
        }
        Self::new(g)
    }
}

/// The zeta-style series `exp(sum a_n z^n / n)` truncated at order `N`,
/// where `terms` supplies `a_1..a_N`.
pub fn exp_zeta_series(terms: &[BigRational]) -> TruncatedSeriesQ {
    let order = terms.len();
    let mut g = vec![BigRational::zero(); order + 1];
    for (n, a) in terms.iter().enumerate() {
        g[n + 1] = a / BigRational::from(BigInt::from(n + 1));
    }
    TruncatedSeriesQ::new(g).exp()
}

/// Integer-sequence convenience wrapper for [`exp_zeta_series`].
pub fn exp_zeta_series_int(terms: &[BigInt]) -> TruncatedSeriesQ {
    let rats: Vec<BigRational> = terms.iter().map(|t| BigRational::from(t.clone())).collect();
    exp_zeta_series(&rats)
}

/// The log-zeta series `sum a_n z^n / n` itself.
pub fn log_zeta_series(terms: &[BigRational]) -> TruncatedSeriesQ {
    let order = terms.len();
    let mut g = vec![BigRational::zero(); order + 1];
    for (n, a) in terms.iter().enumerate() {
        g[n + 1] = a / BigRational::from(BigInt::from(n + 1));
    }
    TruncatedSeriesQ::new(g)
}

/// Taylor coefficients of `num/den` at the origin up to `order`.
pub fn series_of_rational(
    f: &RationalFunctionQ,
    order: usize,
) -> Result<TruncatedSeriesQ, RationalFunctionError> {
    series_of_quotient(f.numerator(), f.denominator(), order)
}

pub fn series_of_quotient(
    num: &IntPoly,
    den: &IntPoly,
    order: usize,
) -> Result<TruncatedSeriesQ, RationalFunctionError> {
    if den.is_zero() {
        return Err(RationalFunctionError::ZeroDenominator);
    }
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(RationalFunctionError::PoleAtOrigin);
    }
    let d0 = BigRational::from(d0);
    let mut c = vec![BigRational::zero(); order + 1];
    for n in 0..=order {
        let mut acc = BigRational::from(num.coeff(n));
        for k in 1..=n {
            acc -= BigRational::from(den.coeff(k)) * &c[n - k];
        }
        c[n] = acc / &d0;
        guard::check(c[n].numer());
    }
    Ok(TruncatedSeriesQ::new(c))
}

/// Series of `log(P / P(0))` for a polynomial with `P(0) != 0`.
pub fn log_series_of_poly(p: &IntPoly, order: usize) -> TruncatedSeriesQ {
    let c0 = p.coeff(0);
    assert!(!c0.is_zero(), "log needs a nonzero constant term");
    series_of_quotient(p, &IntPoly::constant(c0), order)
        .expect("constant denominator")
        .log()
}
