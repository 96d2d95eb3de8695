//! Dense integer matrices with exact linear algebra: Smith normal form
//! (with unimodular transforms), fraction-free determinants, characteristic
//! polynomials and exterior powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::guard;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    NotRectangular,
    NotSquare,
    DimensionMismatch,
    ExteriorIndexOutOfRange { k: usize, n: usize },
}

impl std::fmt::Display for MatrixError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixError::NotRectangular => write!(f, "rows have differing lengths"),
            MatrixError::NotSquare => write!(f, "operation requires a square matrix"),
            MatrixError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            MatrixError::ExteriorIndexOutOfRange { k, n } => {
                write!(f, "exterior power index {k} out of range 0..={n}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Row-major integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::NotRectangular);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::NotRectangular);
        }
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &rhs[(k, j)];
                }
                guard::check(&acc);
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// `self^n` for a square matrix, `n >= 0` (`n = 0` gives the identity).
    pub fn pow(&self, n: u64) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let mut t = BigInt::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        Ok(t)
    }

    /// Glue columns: `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let mut out = Self::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut out = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                out[(i, j)] = col[i].clone();
            }
        }
        out
    }

    /// Signed determinant via fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&at(&m, k, k) * &at(&m, i, j) - &at(&m, i, k) * &at(&m, k, j))
                        .div_floor(&prev);
                    guard::check(&v);
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }

    /// Characteristic polynomial `det(z*I - self)`, ascending coefficients,
    /// computed by the Faddeev-LeVerrier recursion (all divisions exact).
    pub fn charpoly(&self) -> Result<IntPoly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m)?;
            let c = -(m.trace()?.div_floor(&BigInt::from(k as i64)));
            guard::check(&c);
            coeffs[n - k] = c.clone();
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        Ok(IntPoly::new(coeffs))
    }

    /// k-th exterior power: entries are the k x k minors indexed by the
    /// lexicographically ordered k-subsets of rows and columns.
    pub fn exterior_power(&self, k: usize) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        if k > n {
            return Err(MatrixError::ExteriorIndexOutOfRange { k, n });
        }
        let subsets = k_subsets(n, k);
        let dim = subsets.len();
        let mut out = Self::zero(dim, dim);
        for (a, rows) in subsets.iter().enumerate() {
            for (b, cols) in subsets.iter().enumerate() {
                let mut minor = Self::zero(k, k);
                for (i, &ri) in rows.iter().enumerate() {
                    for (j, &cj) in cols.iter().enumerate() {
                        minor[(i, j)] = self[(ri, cj)].clone();
                    }
                }
                out[(a, b)] = minor.determinant()?;
            }
        }
        Ok(out)
    }

    /// Invariant factors and rank only.
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        let dec = smith_decompose(self, false);
        SmithNormalForm {
            invariants: dec.invariants,
            rank: dec.rank,
        }
    }

    /// Full decomposition `U * self * V = D` with the transforms and their
    /// inverses tracked.
    pub fn smith_with_transform(&self) -> SmithDecomposition {
        smith_decompose(self, true)
    }

    /// Basis of the integer kernel, returned as matrix columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let dec = self.smith_with_transform();
        let v = dec.v.expect("transforms requested");
        let mut cols = Vec::new();
        for j in 0..self.cols {
            let zero_diag = j >= dec.invariants.len() || dec.invariants[j].is_zero();
            if zero_diag {
                cols.push(v.column(j));
            }
        }
        IntMatrix::from_columns(self.cols, &cols)
    }

    /// Basis of the column-space lattice, returned as matrix columns.
    pub fn image_basis(&self) -> IntMatrix {
        let dec = self.smith_with_transform();
        let u_inv = dec.u_inv.expect("transforms requested");
        let mut cols = Vec::new();
        for (j, d) in dec.invariants.iter().enumerate() {
            if !d.is_zero() {
                let col = u_inv.column(j).into_iter().map(|x| x * d).collect();
                cols.push(col);
            }
        }
        IntMatrix::from_columns(self.rows, &cols)
    }

    /// One integral solution of `self * x = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let dec = self.smith_with_transform();
        let u = dec.u.as_ref().expect("transforms requested");
        let v = dec.v.as_ref().expect("transforms requested");
        let mut ub = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = BigInt::zero();
            for k in 0..self.rows {
                acc += &u[(i, k)] * &b[k];
            }
            ub[i] = acc;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < dec.invariants.len() && !dec.invariants[i].is_zero() {
                let (q, r) = ub[i].div_rem(&dec.invariants[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for i in 0..self.cols {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += &v[(i, k)] * &y[k];
            }
            x[i] = acc;
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Lexicographically ordered k-subsets of 0..n.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors `d_1 | d_2 | ...` (zeros trailing) plus the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

impl SmithNormalForm {
    /// Product of the nonzero invariants (1 for the empty product).
    pub fn nonzero_product(&self) -> BigInt {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_full_row_rank(&self, rows: usize) -> bool {
        self.rank == rows
    }
}

#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

struct SnfWork {
    m: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols {
            self.m
                .entries
                .swap(a * self.m.cols + j, b * self.m.cols + j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                u.entries.swap(a * u.cols + j, b * u.cols + j);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for i in 0..ui.rows {
                ui.entries.swap(i * ui.cols + a, i * ui.cols + b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows {
            self.m
                .entries
                .swap(i * self.m.cols + a, i * self.m.cols + b);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows {
                v.entries.swap(i * v.cols + a, i * v.cols + b);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            for j in 0..vi.cols {
                vi.entries.swap(a * vi.cols + j, b * vi.cols + j);
            }
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.m.cols {
            let t = &self.m[(b, j)] * q;
            self.m[(a, j)] += t;
            guard::check(&self.m[(a, j)]);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                let t = &u[(b, j)] * q;
                u[(a, j)] += t;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse op on the right: col[b] -= q * col[a]
            for i in 0..ui.rows {
                let t = &ui[(i, a)] * q;
                ui[(i, b)] -= t;
            }
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.m.rows {
            let t = &self.m[(i, b)] * q;
            self.m[(i, a)] += t;
            guard::check(&self.m[(i, a)]);
        }
        if let Some(v) = &mut self.v {
            for i in 0..v.rows {
                let t = &v[(i, b)] * q;
                v[(i, a)] += t;
            }
        }
        if let Some(vi) = &mut self.v_inv {
            for j in 0..vi.cols {
                let t = &vi[(a, j)] * q;
                vi[(b, j)] -= t;
            }
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.m.cols {
            let t = -self.m[(a, j)].clone();
            self.m[(a, j)] = t;
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols {
                let t = -u[(a, j)].clone();
                u[(a, j)] = t;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for i in 0..ui.rows {
                let t = -ui[(i, a)].clone();
                ui[(i, a)] = t;
            }
        }
    }
}

fn smith_decompose(mat: &IntMatrix, transforms: bool) -> SmithDecomposition {
    let rows = mat.rows;
    let cols = mat.cols;
    let mut w = SnfWork {
        m: mat.clone(),
        u: transforms.then(|| IntMatrix::identity(rows)),
        u_inv: transforms.then(|| IntMatrix::identity(rows)),
        v: transforms.then(|| IntMatrix::identity(cols)),
        v_inv: transforms.then(|| IntMatrix::identity(cols)),
    };
    let bound = rows.min(cols);
    let mut t = 0;
    while t < bound {
        // pivot: nonzero entry of smallest magnitude in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.m[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if w.m[(pi, pj)].abs() <= w.m[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        'reduce: loop {
            // clear column t
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = -(w.m[(i, t)].div_floor(&w.m[(t, t)]));
                w.add_row(i, t, &q);
                if !w.m[(i, t)].is_zero() {
                    // remainder strictly smaller in magnitude: promote it
                    w.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = -(w.m[(t, j)].div_floor(&w.m[(t, t)]));
                w.add_col(j, t, &q);
                if !w.m[(t, j)].is_zero() {
                    w.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // divisibility: the pivot must divide the trailing block
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.m[(i, j)].mod_floor(&w.m[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    w.add_row(t, i, &BigInt::one());
                    continue 'reduce;
                }
                None => break 'reduce,
            }
        }
        if w.m[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..bound).map(|i| w.m[(i, i)].clone()).collect();
    let rank = invariants.iter().filter(|d| !d.is_zero()).count();
    SmithDecomposition {
        invariants,
        rank,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}
