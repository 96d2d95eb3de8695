//! Functional-equation verification for closed zeta forms: substitute
//! z -> 1/(dz), divide by `f(z)^((-1)^m)`, demand a constant, and solve the
//! constant as `epsilon^((-1)^r)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::FgabError;
use crate::exactmath::poly::RationalFunctionQ;

/// Result of a successful functional-equation check.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalEquation {
    /// The constant value of `f(1/(dz)) / f(z)^((-1)^m)`.
    pub quotient_constant: BigRational,
    /// `epsilon` solved from `quotient = epsilon^((-1)^r)`.
    pub epsilon: BigRational,
}

/// Verify `f(1/(dz)) = f(z)^((-1)^m) * epsilon^((-1)^r)` symbolically and
/// return `epsilon`; fails when the quotient is not constant.
pub fn verify_functional_equation(
    f: &RationalFunctionQ,
    d: &BigInt,
    m: usize,
    r: usize,
) -> Result<FunctionalEquation, FgabError> {
    if d.is_zero() {
        return Err(FgabError::DegreeZero);
    }
    let lhs = f.compose_reciprocal(d);
    let rhs = f
        .pow(if m.is_multiple_of(2) { 1 } else { -1 })
        .map_err(|_| FgabError::NonconstantQuotient)?;
    let quotient = lhs.div(&rhs).map_err(|_| FgabError::NonconstantQuotient)?;
    let Some(c) = quotient.as_constant() else {
        return Err(FgabError::NonconstantQuotient);
    };
    if c.is_zero() {
        return Err(FgabError::NonconstantQuotient);
    }
    let epsilon = if r.is_multiple_of(2) {
        c.clone()
    } else {
        c.recip()
    };
    Ok(FunctionalEquation {
        quotient_constant: c,
        epsilon,
    })
}
