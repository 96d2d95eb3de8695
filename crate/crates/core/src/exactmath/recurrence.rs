//! Minimal linear recurrences over Q (Berlekamp-Massey) and rational
//! reconstruction of zeta-type closed forms from counting sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, RationalFunctionQ};
use crate::guard;

/// A verified linear recurrence `a_(n) = q_1 a_(n-1) + ... + q_L a_(n-L)`
/// together with the seed values `a_1..a_L` it starts from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    coefficients: Vec<BigRational>,
    seeds: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    TooFewTerms {
        got: usize,
    },
    /// No recurrence of order <= floor(len/2) is consistent with the data.
    NoRecurrenceFound {
        tested_len: usize,
    },
}

impl std::fmt::Display for RecurrenceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RecurrenceError::TooFewTerms { got } => {
                write!(f, "need at least 2 sequence terms, got {got}")
            }
            RecurrenceError::NoRecurrenceFound { tested_len } => {
                write!(f, "no recurrence found at this length ({tested_len} terms)")
            }
        }
    }
}

impl std::error::Error for RecurrenceError {}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn seeds(&self) -> &[BigRational] {
        &self.seeds
    }

    /// Check that the recurrence reproduces every term of `seq`.
    pub fn reproduces(&self, seq: &[BigRational]) -> bool {
        let l = self.order();
        if seq.len() < l || seq[..l] != self.seeds[..] {
            return false;
        }
        for n in l..seq.len() {
            let mut acc = BigRational::zero();
            for (i, q) in self.coefficients.iter().enumerate() {
                acc += q * &seq[n - 1 - i];
            }
            if acc != seq[n] {
                return false;
            }
        }
        true
    }

    /// Extend the sequence to `len` terms.
    pub fn extend_to(&self, len: usize) -> Vec<BigRational> {
        let mut seq = self.seeds.clone();
        while seq.len() < len {
            let n = seq.len();
            let mut acc = BigRational::zero();
            for (i, q) in self.coefficients.iter().enumerate() {
                acc += q * &seq[n - 1 - i];
            }
            guard::check(acc.numer());
            seq.push(acc);
        }
        seq.truncate(len);
        seq
    }

    /// Denominator `Q(z) = 1 - q_1 z - ... - q_L z^L` of the ordinary
    /// generating function `sum_(n>=1) a_n z^n`, cleared to integers.
    pub fn denominator_poly(&self) -> IntPoly {
        let mut lcm = BigInt::one();
        for q in &self.coefficients {
            lcm = num_integer::Integer::lcm(&lcm, q.denom());
        }
        let mut coeffs = vec![BigInt::zero(); self.order() + 1];
        coeffs[0] = lcm.clone();
        for (i, q) in self.coefficients.iter().enumerate() {
            coeffs[i + 1] = -(q.numer() * (&lcm / q.denom()));
        }
        IntPoly::new(coeffs)
    }

    /// Ordinary generating function `sum_(n>=1) a_n z^n` as a reduced
    /// rational function.
    pub fn generating_function(&self) -> RationalFunctionQ {
        let den = self.denominator_poly();
        // numerator = den * (seed series), truncated below z^(L+1)
        let order = self.order();
        let mut num = vec![BigRational::zero(); order + 1];
        for (n, slot) in num.iter_mut().enumerate().skip(1) {
            let mut sum = BigRational::zero();
            for k in 1..=n {
                sum += BigRational::from(den.coeff(n - k)) * &self.seeds[k - 1];
            }
            *slot = sum;
        }
        let mut lcm = BigInt::one();
        for c in &num {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let num_int = IntPoly::new(num.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
        RationalFunctionQ::new(num_int, den.mul_scalar(&lcm)).expect("nonzero denominator")
    }
}

/// Berlekamp-Massey over Q: the minimal-order recurrence consistent with
/// every supplied term, or an error when the data does not pin one down
/// (minimal order would exceed `floor(len/2)`).
pub fn berlekamp_massey(seq: &[BigRational]) -> Result<LinearRecurrence, RecurrenceError> {
    if seq.len() < 2 {
        return Err(RecurrenceError::TooFewTerms { got: seq.len() });
    }
    // connection polynomial c(x) = 1 + c_1 x + ... + c_L x^L
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_delta = BigRational::one();
    for n in 0..seq.len() {
        let mut delta = seq[n].clone();
        for i in 1..=l {
            if i < c.len() {
                delta += &c[i] * &seq[n - i];
            }
        }
        guard::check(delta.numer());
        if delta.is_zero() {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            let coef = &delta / &last_delta;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &coef * bj;
            }
            l = n + 1 - l;
            b = t;
            last_delta = delta;
            m = 1;
        } else {
            let coef = &delta / &last_delta;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &coef * bj;
            }
            m += 1;
        }
    }
    if 2 * l > seq.len() {
        return Err(RecurrenceError::NoRecurrenceFound {
            tested_len: seq.len(),
        });
    }
    c.truncate(l + 1);
    c.resize(l + 1, BigRational::zero());
    // l = 0 only happens for the all-zero sequence; a connection polynomial
    // of degree < l means no recurrence with nonzero trailing coefficient
    // reproduces the leading terms at this order
    if l == 0 || c[l].is_zero() {
        return Err(RecurrenceError::NoRecurrenceFound {
            tested_len: seq.len(),
        });
    }
    let rec = LinearRecurrence {
        coefficients: c[1..].iter().map(|x| -x.clone()).collect(),
        seeds: seq[..l].to_vec(),
    };
    debug_assert!(rec.reproduces(seq));
    Ok(rec)
}

/// Integer-sequence convenience wrapper.
pub fn berlekamp_massey_int(seq: &[BigInt]) -> Result<LinearRecurrence, RecurrenceError> {
    let rats: Vec<BigRational> = seq.iter().map(|t| BigRational::from(t.clone())).collect();
    berlekamp_massey(&rats)
}

/// Decomposition `a_n = sum_i c_i w_i^n` with distinct nonzero integer
/// ratios `w_i` and integer weights `c_i`, when one exists and is certified
/// by the whole sequence. The closed form of `exp(sum a_n z^n / n)` is then
/// `prod_i (1 - w_i z)^(-c_i)`.
pub fn geometric_decomposition(
    seq: &[BigInt],
    hints: &[BigRational],
) -> Option<Vec<(BigInt, BigInt)>> {
    let rec = berlekamp_massey_int(seq).ok()?;
    geometric_decomposition_from(&rec, seq, hints)
}

/// Same as [`geometric_decomposition`], starting from an already-found
/// recurrence for `seq`.
pub fn geometric_decomposition_from(
    rec: &LinearRecurrence,
    seq: &[BigInt],
    hints: &[BigRational],
) -> Option<Vec<(BigInt, BigInt)>> {
    let q = rec.denominator_poly();
    let (roots, rest) = q.rational_roots(hints);
    if rest.degree() != Some(0) {
        return None;
    }
    let mut pairs: Vec<(BigInt, BigRational)> = Vec::new();
    for (root, mult) in roots {
        if mult != 1 || root.is_zero() {
            return None;
        }
        // characteristic ratio w = 1/root must be a nonzero integer
        let w = root.recip();
        if !w.is_integer() {
            return None;
        }
        pairs.push((w.to_integer(), BigRational::zero()));
    }
    if pairs.len() != rec.order() {
        return None;
    }
    // solve the Vandermonde system sum_i c_i w_i^n = a_n, n = 1..L
    let l = pairs.len();
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(l);
    for n in 1..=l {
        let mut row: Vec<BigRational> = Vec::with_capacity(l + 1);
        for (w, _) in &pairs {
            row.push(BigRational::from(super::numtheory::pow_bigint(w, n as u64)));
        }
        row.push(BigRational::from(seq[n - 1].clone()));
        mat.push(row);
    }
    gaussian_solve(&mut mat)?;
    for (i, pair) in pairs.iter_mut().enumerate() {
        pair.1 = mat[i][l].clone();
    }
    // certify on every supplied term and demand integer weights
    let mut out = Vec::with_capacity(l);
    for (w, c) in &pairs {
        if !c.is_integer() || c.is_zero() {
            return None;
        }
        out.push((w.clone(), c.to_integer()));
    }
    for (n, a) in seq.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (w, c) in &out {
            acc += c * super::numtheory::pow_bigint(w, (n + 1) as u64);
        }
        if &acc != a {
            return None;
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

/// Assemble `prod_i (1 - w_i z)^(-c_i)` as a reduced rational function.
pub fn product_from_decomposition(pairs: &[(BigInt, BigInt)]) -> RationalFunctionQ {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for (w, c) in pairs {
        let factor = IntPoly::one_minus_wz_pow(w, 1);
        let e = i64::try_from(c.abs()).expect("small exponent");
        for _ in 0..e {
            if c.is_negative() {
                num = num.mul(&factor);
            } else {
                den = den.mul(&factor);
            }
        }
    }
    RationalFunctionQ::new(num, den).expect("nonzero denominator")
}

/// In-place Gaussian elimination on an augmented matrix; `None` if singular.
fn gaussian_solve(mat: &mut [Vec<BigRational>]) -> Option<()> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let p = mat[col][col].clone();
        for v in &mut mat[col][col..=n] {
            *v = &*v / &p;
        }
        let pivot_row = mat[col].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row[col..=n].iter_mut().zip(&pivot_row[col..=n]) {
                    let t = pv * &f;
                    *v -= t;
                }
            }
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from(BigInt::from(x)))
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn constant_sequence_is_order_one() {
        let rec = berlekamp_massey(&rats(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.coefficients(), &rats(&[1])[..]);
    }

    #[test]
    fn mersenne_like_is_order_two() {
        let rec = berlekamp_massey(&rats(&[1, 3, 7, 15, 31, 63])).unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.coefficients(), &rats(&[3, -2])[..]);
        assert_eq!(rec.extend_to(8), rats(&[1, 3, 7, 15, 31, 63, 127, 255]));
    }

    #[test]
    fn period_two_sequence() {
        let rec = berlekamp_massey(&rats(&[1, 5, 1, 5, 1, 5])).unwrap();
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.coefficients(), &rats(&[0, 1])[..]);
    }

    #[test]
    fn insufficient_data_reported() {
        // 8 terms of a recurrence that needs order 5: BM cannot certify
        let seq = rats(&[1, 2, 4, 8, 16, 32, 64, 129]);
        assert!(matches!(
            berlekamp_massey(&seq),
            Err(RecurrenceError::NoRecurrenceFound { .. })
        ));
        assert!(matches!(
            berlekamp_massey(&rats(&[7])),
            Err(RecurrenceError::TooFewTerms { .. })
        ));
    }

    #[test]
    fn recurrence_reproduces_random_data() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let order = 1 + (next() % 3) as usize;
            let qs: Vec<i64> = (0..order).map(|_| (next() % 5) as i64 - 2).collect();
            let mut seq: Vec<BigRational> = (0..order)
                .map(|_| BigRational::from(BigInt::from((next() % 7) as i64 + 1)))
                .collect();
            for n in order..(2 * order + 6) {
                let mut acc = BigRational::zero();
                for (i, &q) in qs.iter().enumerate() {
                    acc += BigRational::from(BigInt::from(q)) * &seq[n - 1 - i];
                }
                seq.push(acc);
            }
            if let Ok(rec) = berlekamp_massey(&seq) {
                assert!(rec.reproduces(&seq));
                assert!(rec.order() <= order);
            }
        }
    }

    #[test]
    fn generating_function_matches_series() {
        let rec = berlekamp_massey(&rats(&[1, 3, 7, 15, 31, 63])).unwrap();
        let f = rec.generating_function();
        let s = super::super::series::series_of_rational(&f, 6).unwrap();
        assert_eq!(s.coeffs(), &rats(&[0, 1, 3, 7, 15, 31, 63])[..]);
    }

    #[test]
    fn geometric_decomposition_examples() {
        // a_n = 2^n - 1
        let dec = geometric_decomposition(&ints(&[1, 3, 7, 15, 31, 63]), &[]).unwrap();
        assert_eq!(
            dec,
            vec![
                (BigInt::from(1), BigInt::from(-1)),
                (BigInt::from(2), BigInt::one())
            ]
        );
        let f = product_from_decomposition(&dec);
        assert_eq!(
            f,
            RationalFunctionQ::new(IntPoly::from_i64(&[1, -1]), IntPoly::from_i64(&[1, -2]))
                .unwrap()
        );
        // 1,5,1,5: 3 + 2*(-1)^n
        let dec2 = geometric_decomposition(&ints(&[1, 5, 1, 5, 1, 5]), &[]).unwrap();
        assert_eq!(
            dec2,
            vec![
                (BigInt::from(-1), BigInt::from(2)),
                (BigInt::from(1), BigInt::from(3))
            ]
        );
        // 3-periodic sequences need non-rational roots: no decomposition
        assert!(geometric_decomposition(&ints(&[1, 1, 7, 1, 1, 7, 1, 1, 7]), &[]).is_none());
    }
}
