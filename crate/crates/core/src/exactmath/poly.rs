//! Polynomials over Z and Q, and reduced rational functions over Q.
//!
//! `RationalFunctionQ` is the canonical carrier for closed-form zeta
//! functions: integer-coefficient numerator and denominator with common
//! polynomial factors removed, joint content 1 and positive denominator
//! leading coefficient, so equal functions have equal representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numtheory::{divisors, mobius, pow_bigint};
use crate::guard;

/// Integer-coefficient polynomial, ascending coefficients, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - w z^d`
    pub fn one_minus_wz_pow(w: &BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::one();
        coeffs[d] = -w.clone();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        for c in &out {
            guard::check(c);
        }
        Self::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self { coeffs: out }
    }

    /// Exact quotient, `None` when the division is not exact over Z.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dn = self.degree()?;
        let dd = rhs.degree()?;
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); dn - dd + 1];
        let lead = rhs.leading().unwrap();
        for k in (0..=dn - dd).rev() {
            let (c, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            q[k] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = b * &c;
                rem[k + j] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients (1 for the zero polynomial, always >= 0).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x.div_floor(&c)).collect())
    }

    /// Substitute z -> 1/(d z) and clear denominators by (d z)^deg:
    /// returns `(dz)^deg * p(1/(dz))`, a polynomial of the same degree
    /// whose coefficient of z^j is `a_(deg-j) * d^j`.
    pub fn reciprocal_scaled(&self, d: &BigInt) -> Self {
        let Some(n) = self.degree() else {
            return Self::zero();
        };
        let mut out = vec![BigInt::zero(); n + 1];
        let mut dj = BigInt::one();
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = &self.coeffs[n - j] * &dj;
            if j < n {
                dj *= d;
            }
        }
        Self::new(out)
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    /// All rational roots with multiplicity, plus the root-free cofactor.
    /// Candidates come from divisors of the outer coefficients; when those
    /// do not fit in a machine word the search gives up and reports the
    /// polynomial as its own cofactor.
    pub fn rational_roots(&self, hints: &[BigRational]) -> (Vec<(BigRational, usize)>, IntPoly) {
        let mut p = self.primitive_part();
        if p.degree().unwrap_or(0) == 0 {
            return (Vec::new(), p);
        }
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        let mut candidates: Vec<BigRational> = hints.to_vec();
        let small = |x: &BigInt| -> Option<u64> { u64::try_from(x.abs()).ok() };
        // strip a power of z first
        let mut zmult = 0usize;
        while p.coeff(0).is_zero() && p.degree().unwrap_or(0) > 0 {
            p = p.exact_div(&IntPoly::from_i64(&[0, 1])).unwrap();
            zmult += 1;
        }
        if zmult > 0 {
            roots.push((BigRational::zero(), zmult));
        }
        if let (Some(c0), Some(cl)) = (small(&p.coeff(0)), p.leading().and_then(small)) {
            if c0 >= 1 && cl >= 1 {
                for num in divisors(c0) {
                    for den in divisors(cl) {
                        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
                        candidates.push(r.clone());
                        candidates.push(-r);
                    }
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let mut mult = 0usize;
            loop {
                if p.degree().unwrap_or(0) == 0 {
                    break;
                }
                if !p.eval_rat(&cand).is_zero() {
                    break;
                }
                // divide by (q z - p) where cand = p/q in lowest terms
                let lin = IntPoly::new(vec![-cand.numer().clone(), cand.denom().clone()]);
                p = p
                    .to_qpoly()
                    .divrem(&lin.to_qpoly())
                    .0
                    .to_intpoly_primitive();
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
        (roots, p)
    }
}

/// The n-th cyclotomic polynomial, by the Moebius product
/// `prod_(d|n) (z^d - 1)^mu(n/d)` evaluated as an exact quotient.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(n) {
        let mut zd = vec![BigInt::zero(); d as usize + 1];
        zd[0] = -BigInt::one();
        zd[d as usize] = BigInt::one();
        let f = IntPoly::new(zd);
        match mobius(n / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic quotient is exact")
}

/// Rational-coefficient polynomial, ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        Self::new(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let dd = rhs.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        let lead = rhs.leading().unwrap();
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / lead;
            q[k] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = b * &c;
                rem[k + j] -= t;
            }
        }
        (Self::new(q), Self::new(rem))
    }

    /// Monic gcd (1 for coprime inputs; 0 only if both inputs are 0).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.divrem(&g).0
    }

    /// Yun decomposition: returns `(g_i, i)` with `self ~ prod g_i^i`
    /// (up to a constant), each `g_i` squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        assert!(!self.is_zero());
        if self.degree() == Some(0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let deriv = self.derivative();
        let g = self.gcd(&deriv);
        let mut c = self.divrem(&g).0;
        let mut d = deriv.divrem(&g).0.sub(&c.derivative());
        let mut i = 1usize;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            c = c.divrem(&a).0;
            d = d.divrem(&a).0.sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Clear denominators and take the primitive integer part (sign of the
    /// leading coefficient preserved).
    pub fn to_intpoly_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly::new(ints).primitive_part()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalFunctionError {
    ZeroDenominator,
    PoleAtOrigin,
}

impl std::fmt::Display for RationalFunctionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalFunctionError::ZeroDenominator => write!(f, "denominator is identically zero"),
            RationalFunctionError::PoleAtOrigin => {
                write!(
                    f,
                    "denominator vanishes at the origin; no power series there"
                )
            }
        }
    }
}

impl std::error::Error for RationalFunctionError {}

/// Reduced quotient of two integer-coefficient polynomials in z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunctionQ {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, RationalFunctionError> {
        if den.is_zero() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            });
        }
        // cancel the polynomial gcd over Q
        let g = num.to_qpoly().gcd(&den.to_qpoly()).to_intpoly_primitive();
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            let qn = num
                .to_qpoly()
                .divrem(&g.to_qpoly())
                .0
                .to_intpoly_primitive();
            let qd = den
                .to_qpoly()
                .divrem(&g.to_qpoly())
                .0
                .to_intpoly_primitive();
            // primitive quotients lose the contents; restore the ratio
            let cn = num.content();
            let cd = den.content();
            (qn.mul_scalar(&cn), qd.mul_scalar(&cd))
        } else {
            (num, den)
        };
        let joint = num.content().gcd(&den.content());
        if !joint.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|c| c.div_floor(&joint)).collect());
            den = IntPoly::new(den.coeffs().iter().map(|c| c.div_floor(&joint)).collect());
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        Ok(Self { num, den })
    }

    pub fn one() -> Self {
        Self {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int_poly(p: IntPoly) -> Self {
        Self::new(p, IntPoly::one()).unwrap()
    }

    pub fn constant(c: &BigRational) -> Self {
        Self::new(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
        .unwrap()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominators")
    }

    pub fn recip(&self) -> Result<Self, RationalFunctionError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RationalFunctionError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Integer power; negative exponents invert (zero function rejected).
    pub fn pow(&self, e: i64) -> Result<Self, RationalFunctionError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Value at a rational point, `None` on a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(x) / d)
    }

    /// The formal substitution z -> 1/(d z), as a rational function again.
    pub fn compose_reciprocal(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero());
        let n_num = self.num.degree().unwrap_or(0);
        let n_den = self.den.degree().unwrap_or(0);
        let rn = self.num.reciprocal_scaled(d);
        let rd = self.den.reciprocal_scaled(d);
        // (dz)^(n_num) in the denominator vs (dz)^(n_den) in the numerator
        let (mut num, mut den) = (rn, rd);
        if n_den >= n_num {
            let k = n_den - n_num;
            num = num.shift(k).mul_scalar(&pow_bigint(d, k as u64));
        } else {
            let k = n_num - n_den;
            den = den.shift(k).mul_scalar(&pow_bigint(d, k as u64));
        }
        Self::new(num, den).expect("denominator stays nonzero")
    }

    /// The substitution z -> -z.
    pub fn compose_neg_z(&self) -> Self {
        let flip = |p: &IntPoly| {
            IntPoly::new(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                    .collect(),
            )
        };
        Self::new(flip(&self.num), flip(&self.den)).expect("denominator stays nonzero")
    }

    /// `Some(value)` when the reduced function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0 {
            Some(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }
}
