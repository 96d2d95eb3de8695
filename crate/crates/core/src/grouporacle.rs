//! Brute-force oracles on explicit finite groups: twisted conjugacy class
//! counting from the Cayley table, fixed-character counting on finite
//! abelian groups, and the coincidence check between the two.
//!
//! These are deliberately independent of the lattice machinery elsewhere:
//! `twisted_classes` unions orbits of `x -> g x phi^n(g)^(-1)` pair by
//! pair, and serves as the ground-truth desk check for every faster count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactmath::matrix::IntMatrix;
use crate::fgab::{FgAbEndo, FgabError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOracleError {
    /// Table entries must index group elements.
    TableEntryOutOfRange {
        row: usize,
        col: usize,
    },
    TableNotSquare,
    NoIdentity,
    MissingInverse {
        element: usize,
    },
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
    /// The endomorphism table breaks `e(xy) = e(x) e(y)`.
    EndoNotHomomorphism {
        x: usize,
        y: usize,
    },
    EndoOutOfRange {
        element: usize,
    },
    /// Group too large for the brute-force enumeration.
    TooLarge {
        order: usize,
        cap: usize,
    },
}

impl std::fmt::Display for GroupOracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOracleError::TableEntryOutOfRange { row, col } => {
                write!(f, "Cayley table entry at ({row},{col}) is out of range")
            }
            GroupOracleError::TableNotSquare => write!(f, "Cayley table is not square"),
            GroupOracleError::NoIdentity => write!(f, "no identity element in the Cayley table"),
            GroupOracleError::MissingInverse { element } => {
                write!(f, "element {element} has no inverse")
            }
            GroupOracleError::NotAssociative { a, b, c } => {
                write!(f, "associativity fails at ({a},{b},{c})")
            }
            GroupOracleError::EndoNotHomomorphism { x, y } => {
                write!(
                    f,
                    "endomorphism table violates e(xy) = e(x)e(y) at ({x},{y})"
                )
            }
            GroupOracleError::EndoOutOfRange { element } => {
                write!(f, "endomorphism table value at {element} is out of range")
            }
            GroupOracleError::TooLarge { order, cap } => {
                write!(
                    f,
                    "group of order {order} exceeds the brute-force cap {cap}"
                )
            }
        }
    }
}

impl std::error::Error for GroupOracleError {}

const BRUTE_FORCE_CAP: usize = 512;

/// A finite group as a Cayley table, with an endomorphism table; all the
/// axioms are checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupEndo {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    endo: Vec<usize>,
}

impl FiniteGroupEndo {
    pub fn new(table: Vec<Vec<usize>>, endo: Vec<usize>) -> Result<Self, GroupOracleError> {
        let n = table.len();
        if n > BRUTE_FORCE_CAP {
            return Err(GroupOracleError::TooLarge {
                order: n,
                cap: BRUTE_FORCE_CAP,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupOracleError::TableNotSquare);
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupOracleError::TableEntryOutOfRange { row: i, col: j });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupOracleError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverse[x] = y,
                None => return Err(GroupOracleError::MissingInverse { element: x }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupOracleError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        if endo.len() != n {
            return Err(GroupOracleError::EndoOutOfRange {
                element: endo.len(),
            });
        }
        for (x, &v) in endo.iter().enumerate() {
            if v >= n {
                return Err(GroupOracleError::EndoOutOfRange { element: x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if endo[table[x][y]] != table[endo[x]][endo[y]] {
                    return Err(GroupOracleError::EndoNotHomomorphism { x, y });
                }
            }
        }
        Ok(Self {
            order: n,
            table,
            identity,
            inverse,
            endo,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Endomorphism table of the n-th iterate.
    pub fn endo_power(&self, n: u64) -> Vec<usize> {
        let mut acc: Vec<usize> = (0..self.order).collect();
        for _ in 0..n {
            acc = acc.iter().map(|&x| self.endo[x]).collect();
        }
        acc
    }
}

/// Number of twisted conjugacy classes of the n-th iterate: orbits of
/// `x -> g x phi^n(g)^(-1)` over all pairs, by union-find.
#[allow(clippy::needless_range_loop)] // the indices are the group elements
pub fn twisted_classes(group: &FiniteGroupEndo, n: u64) -> BigInt {
    assert!(n >= 1);
    let en = group.endo_power(n);
    let size = group.order;
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..size {
        for g in 0..size {
            let gx = group.table[g][x];
            let y = group.table[gx][group.inverse[en[g]]];
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
            }
        }
    }
    let classes = (0..size).filter(|&x| find(&mut parent, x) == x).count();
    BigInt::from(classes)
}

/// Finite abelian group `Z/n_1 + ... + Z/n_s` with an endomorphism matrix;
/// the dual-side twin of the torsion block of an [`FgAbEndo`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCharEndo {
    invariants: Vec<BigInt>,
    matrix: IntMatrix,
}

impl AbelianCharEndo {
    pub fn new(invariants: Vec<BigInt>, matrix: IntMatrix) -> Result<Self, FgabError> {
        // reuse the torsion-block validation
        let endo = FgAbEndo::finite(invariants.clone(), matrix)?;
        Ok(Self {
            invariants,
            matrix: endo.torsion_block().clone(),
        })
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn to_fgab(&self) -> FgAbEndo {
        FgAbEndo::finite(self.invariants.clone(), self.matrix.clone()).expect("validated")
    }

    /// Group order.
    pub fn order(&self) -> BigInt {
        self.invariants.iter().fold(BigInt::one(), |acc, n| acc * n)
    }

    /// n-th power of the endomorphism matrix with rows reduced mod the
    /// invariants (entry (i,j) only matters mod n_i).
    fn matrix_power(&self, n: u64) -> IntMatrix {
        let s = self.invariants.len();
        let mut acc = IntMatrix::identity(s);
        for _ in 0..n {
            acc = self.matrix.mul(&acc).expect("square");
            for i in 0..s {
                for j in 0..s {
                    let v = acc[(i, j)].mod_floor(&self.invariants[i]);
                    acc[(i, j)] = v;
                }
            }
        }
        acc
    }

    /// Matrix of the dual endomorphism acting on characters: the weighted
    /// transpose `D[j][i] = C[i][j] n_j / n_i` (integral by the
    /// homomorphism condition).
    fn dual_matrix(&self, n: u64) -> IntMatrix {
        let c = self.matrix_power(n);
        let s = self.invariants.len();
        let mut d = IntMatrix::zero(s, s);
        for j in 0..s {
            for i in 0..s {
                let scaled = &c[(i, j)] * &self.invariants[j];
                let (q, r) = scaled.div_rem(&self.invariants[i]);
                assert!(r.is_zero(), "homomorphism condition grants integrality");
                d[(j, i)] = q;
            }
        }
        d
    }

    /// Cayley table plus endomorphism table of the underlying finite group,
    /// for cross-checks against the brute-force counter.
    pub fn to_finite_group(&self) -> Result<FiniteGroupEndo, GroupOracleError> {
        let radices: Vec<usize> = self
            .invariants
            .iter()
            .map(|n| usize::try_from(n).expect("small fixture"))
            .collect();
        let order: usize = radices.iter().product::<usize>().max(1);
        if order > BRUTE_FORCE_CAP {
            return Err(GroupOracleError::TooLarge {
                order,
                cap: BRUTE_FORCE_CAP,
            });
        }
        let s = radices.len();
        let decode = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; s];
            for i in 0..s {
                v[i] = x % radices[i];
                x /= radices[i];
            }
            v
        };
        let encode = |v: &[usize]| -> usize {
            let mut x = 0;
            for i in (0..s).rev() {
                x = x * radices[i] + v[i];
            }
            x
        };
        let mut table = vec![vec![0usize; order]; order];
        for (x, row) in table.iter_mut().enumerate() {
            let xv = decode(x);
            for (y, slot) in row.iter_mut().enumerate() {
                let yv = decode(y);
                let sum: Vec<usize> = (0..s).map(|i| (xv[i] + yv[i]) % radices[i]).collect();
                *slot = encode(&sum);
            }
        }
        let mut endo = vec![0usize; order];
        for (x, slot) in endo.iter_mut().enumerate() {
            let xv = decode(x);
            let mut img = vec![0usize; s];
            for (i, slot) in img.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for (j, &xj) in xv.iter().enumerate() {
                    acc += &self.matrix[(i, j)] * BigInt::from(xj);
                }
                let m = acc.mod_floor(&self.invariants[i]);
                *slot = usize::try_from(&m).expect("reduced");
            }
            *slot = encode(&img);
        }
        FiniteGroupEndo::new(table, endo)
    }
}

/// Number of characters fixed by the n-th dual iterate: the kernel size of
/// `D - I` on the dual group, computed as a cokernel through Smith
/// invariants (kernel and cokernel of a self-map of a finite group have
/// equal size).
pub fn fixed_characters(a: &AbelianCharEndo, n: u64) -> BigInt {
    assert!(n >= 1);
    let s = a.invariants.len();
    let mut shifted = a.dual_matrix(n);
    for i in 0..s {
        shifted[(i, i)] -= BigInt::one();
    }
    let mut relations = IntMatrix::zero(s, s);
    for i in 0..s {
        relations[(i, i)] = a.invariants[i].clone();
    }
    let stacked = shifted.hstack(&relations).expect("rows agree");
    stacked.smith_normal_form().nonzero_product()
}

/// One row of the coincidence report: both counts for the n-th iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceRow {
    pub n: u64,
    pub twisted: BigInt,
    pub fixed_chars: BigInt,
}

impl CoincidenceRow {
    pub fn agree(&self) -> bool {
        self.twisted == self.fixed_chars
    }
}

/// Run both counters side by side for `n = 1..n_max` on the explicit
/// finite group built from the abelian data.
pub fn tbft_check(
    a: &AbelianCharEndo,
    n_max: u64,
) -> Result<Vec<CoincidenceRow>, GroupOracleError> {
    let group = a.to_finite_group()?;
    Ok((1..=n_max)
        .map(|n| CoincidenceRow {
            n,
            twisted: twisted_classes(&group, n),
            fixed_chars: fixed_characters(a, n),
        })
        .collect())
}
