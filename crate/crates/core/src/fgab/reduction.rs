//! Reductions that preserve every twisted-conjugacy count: restriction to
//! the eventual image subgroup, and the quotient by the radical of
//! eventually-trivial elements (the union of the iterated kernels), which
//! makes the induced endomorphism injective.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FgAbEndo, FgAbGroup};
use crate::exactmath::matrix::IntMatrix;

/// An endomorphism presented on a subgroup or quotient of the original
/// group, together with the change-of-presentation data.
#[derive(Debug, Clone)]
pub struct SubquotientMap {
    pub endo: FgAbEndo,
    /// For a subgroup: columns are the ambient `Z^(r+s)` coordinates of the
    /// new generators (free generators first, then torsion generators).
    /// For a quotient: rows express the new coordinates of the images of
    /// the ambient basis vectors (torsion rows meaningful mod the new
    /// invariants).
    pub transform: IntMatrix,
}

/// Presentation of `Z^dim / (column lattice of relations)` with the induced
/// action, assuming `action` maps the relation lattice into itself.
struct QuotientData {
    group: FgAbGroup,
    endo: FgAbEndo,
    /// y-indices retained, free first then torsion.
    kept: Vec<usize>,
    u: IntMatrix,
    u_inv: IntMatrix,
}

fn quotient_structure(dim: usize, relations: &IntMatrix, action: &IntMatrix) -> QuotientData {
    assert_eq!(relations.rows(), dim);
    assert_eq!(action.rows(), dim);
    assert_eq!(action.cols(), dim);
    let dec = relations.smith_with_transform();
    let u = dec.u.expect("transforms tracked");
    let u_inv = dec.u_inv.expect("transforms tracked");
    let diag = |j: usize| -> BigInt { dec.invariants.get(j).cloned().unwrap_or_else(BigInt::zero) };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for j in 0..dim {
        let d = diag(j);
        if d.is_zero() {
            free.push(j);
        } else if !d.is_one() {
            torsion.push(j);
        }
    }
    let act_y = u.mul(action).expect("dims").mul(&u_inv).expect("dims");
    // images of trivial or torsion generators cannot reach free coordinates
    for &i in &free {
        for j in 0..dim {
            if !diag(j).is_zero() {
                assert!(
                    act_y[(i, j)].is_zero(),
                    "induced action leaks a relation coordinate into a free one"
                );
            }
        }
    }
    let invariants: Vec<BigInt> = torsion.iter().map(|&j| diag(j)).collect();
    let group = FgAbGroup::new(free.len(), invariants).expect("chain from Smith form");
    let r = free.len();
    let s = torsion.len();
    let mut a = IntMatrix::zero(r, r);
    for (i1, &y1) in free.iter().enumerate() {
        for (i2, &y2) in free.iter().enumerate() {
            a[(i1, i2)] = act_y[(y1, y2)].clone();
        }
    }
    let mut b = IntMatrix::zero(s, r);
    let mut c = IntMatrix::zero(s, s);
    for (t1, &y1) in torsion.iter().enumerate() {
        for (i2, &y2) in free.iter().enumerate() {
            b[(t1, i2)] = act_y[(y1, y2)].clone();
        }
        for (t2, &y2) in torsion.iter().enumerate() {
            c[(t1, t2)] = act_y[(y1, y2)].clone();
        }
    }
    let endo = FgAbEndo::new(group.clone(), a, b, c)
        .expect("induced action is a homomorphism of the quotient");
    let mut kept = free;
    kept.extend(torsion);
    QuotientData {
        group,
        endo,
        kept,
        u,
        u_inv,
    }
}

/// Express each column of `targets` in the column basis `basis`.
fn solve_columns(basis: &IntMatrix, targets: &IntMatrix) -> IntMatrix {
    let mut cols = Vec::with_capacity(targets.cols());
    for j in 0..targets.cols() {
        let col = targets.column(j);
        let sol = basis
            .solve(&col)
            .expect("target lies in the spanned lattice");
        cols.push(sol);
    }
    IntMatrix::from_columns(basis.cols(), &cols)
}

/// Structure type used to detect stabilization.
fn structure_of(basis: &IntMatrix, relations_ambient: &IntMatrix) -> (usize, Vec<BigInt>) {
    let rel_in_basis = solve_columns(basis, relations_ambient);
    let dec = rel_in_basis.smith_normal_form();
    let t = basis.cols();
    let torsion: Vec<BigInt> = dec
        .invariants
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    (t - dec.rank, torsion)
}

fn subgroup_endo(endo: &FgAbEndo, basis: &IntMatrix) -> SubquotientMap {
    let lift = endo.lift();
    let rel = endo.relation_columns();
    let rel_in_basis = solve_columns(basis, &rel);
    let action_targets = lift.mul(basis).expect("dims");
    let action_in_basis = solve_columns(basis, &action_targets);
    let q = quotient_structure(basis.cols(), &rel_in_basis, &action_in_basis);
    // ambient coordinates of the retained generators
    let gen_cols: Vec<Vec<BigInt>> = q
        .kept
        .iter()
        .map(|&j| {
            let col = q.u_inv.column(j);
            let mut amb = vec![BigInt::zero(); basis.rows()];
            for (bc, coef) in col.iter().enumerate() {
                for (row, slot) in amb.iter_mut().enumerate() {
                    *slot += &basis[(row, bc)] * coef;
                }
            }
            amb
        })
        .collect();
    SubquotientMap {
        endo: q.endo,
        transform: IntMatrix::from_columns(basis.rows(), &gen_cols),
    }
}

/// Iterations needed before image or kernel chains must stabilize.
fn chain_bound(endo: &FgAbEndo) -> usize {
    let torsion_bits: u64 = endo
        .group()
        .torsion()
        .iter()
        .map(num_bigint::BigInt::bits)
        .sum();
    endo.group().rank() + torsion_bits as usize + 2
}

/// Restrict to `H = phi^k(G)` for the first `k >= 1` at which the abstract
/// type of the image stabilizes. `H` satisfies `phi(H) <= H` and every
/// element lands in `H` under iteration, so all twisted-conjugacy counts of
/// the restriction agree with the original (checked in tests).
pub fn eventual_image(endo: &FgAbEndo) -> SubquotientMap {
    let lift = endo.lift();
    let rel = endo.relation_columns();
    let mut basis = lift.hstack(&rel).expect("rows agree").image_basis();
    let mut shape = structure_of(&basis, &rel);
    for _ in 0..chain_bound(endo) {
        let next_basis = lift
            .mul(&basis)
            .expect("dims")
            .hstack(&rel)
            .expect("rows agree")
            .image_basis();
        let next_shape = structure_of(&next_basis, &rel);
        if next_shape == shape {
            break;
        }
        basis = next_basis;
        shape = next_shape;
    }
    subgroup_endo(endo, &basis)
}

/// Lattice of elements killed by `lift^t` modulo the torsion relations.
fn kernel_lattice(lift_pow: &IntMatrix, rel: &IntMatrix) -> IntMatrix {
    let stacked = lift_pow.hstack(rel).expect("rows agree");
    let kernel = stacked.kernel_basis();
    // project onto the x-part and rebuild an independent basis
    let dim = lift_pow.cols();
    let mut proj = IntMatrix::zero(dim, kernel.cols());
    for j in 0..kernel.cols() {
        for i in 0..dim {
            proj[(i, j)] = kernel[(i, j)].clone();
        }
    }
    proj.image_basis()
}

/// Does every column of `b` lie in the column lattice of `a`?
fn lattice_contains(a: &IntMatrix, b: &IntMatrix) -> bool {
    (0..b.cols()).all(|j| a.solve(&b.column(j)).is_some())
}

/// Quotient by the radical `N` of eventually-trivial elements (stabilized
/// union of the kernels of the iterates). The induced endomorphism on `G/N`
/// is injective and preserves every twisted-conjugacy count.
pub fn nilpotent_radical_quotient(endo: &FgAbEndo) -> SubquotientMap {
    let lift = endo.lift();
    let rel = endo.relation_columns();
    let dim = endo.group().ambient_dim();
    let mut power = lift.clone();
    let mut kernel = kernel_lattice(&power, &rel);
    for _ in 0..chain_bound(endo) {
        power = power.mul(&lift).expect("dims");
        let next = kernel_lattice(&power, &rel);
        if lattice_contains(&kernel, &next) {
            break;
        }
        kernel = next;
    }
    let q = quotient_structure(dim, &kernel, &lift);
    // projection rows: new coordinates of the ambient basis vectors
    let mut proj = IntMatrix::zero(q.kept.len(), dim);
    for (new_i, &y) in q.kept.iter().enumerate() {
        for col in 0..dim {
            proj[(new_i, col)] = q.u[(y, col)].clone();
        }
    }
    let _ = q.group;
    SubquotientMap {
        endo: q.endo,
        transform: proj,
    }
}
