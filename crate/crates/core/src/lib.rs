//! Exact-arithmetic toolkit for Reidemeister-type dynamical zeta functions.
//!
//! The crate computes twisted-conjugacy counting sequences for endomorphisms
//! of finitely generated abelian groups, S-integer modules and explicit
//! finite dynamical systems, reconstructs the associated zeta functions
//! `exp(sum_n a_n z^n / n)` in closed form where possible, and verifies the
//! structural identities these counts satisfy (functional equations, Gauss
//! congruences, Lefschetz coincidence, torsion evaluation, and the
//! rational-vs-natural-boundary dichotomy for S-integer systems).
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! no floating point enters any core computation. All values are immutable
//! after construction and every operation is a pure function, so the API is
//! safe to drive from parallel workers.

pub mod congruence;
pub mod exactmath;
pub mod fgab;
pub mod grouporacle;
pub mod guard;
pub mod orbitzeta;
pub mod solenoid;

pub use exactmath::matrix::IntMatrix;
pub use exactmath::poly::RationalFunctionQ;
pub use exactmath::recurrence::LinearRecurrence;
pub use exactmath::series::TruncatedSeriesQ;
pub use fgab::{FgAbEndo, FgAbGroup, ReidemeisterSequence, ReidemeisterValue};
pub use solenoid::{DichotomyVerdict, SolenoidSpec};
