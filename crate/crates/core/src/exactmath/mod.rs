//! Exact integer/rational linear algebra, number theory, polynomial and
//! formal-series arithmetic shared by every higher module.

pub mod interval;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod recurrence;
pub mod series;
pub mod sturm;

pub use matrix::{IntMatrix, SmithNormalForm};
pub use numtheory::{mobius, p_adic_abs};
pub use poly::{IntPoly, QPoly, RationalFunctionQ};
pub use recurrence::{berlekamp_massey, LinearRecurrence};
pub use series::{exp_zeta_series, series_of_rational, TruncatedSeriesQ};
pub use sturm::count_real_roots;
