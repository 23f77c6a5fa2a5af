//! Knot invariants: Kauffman bracket, Jones polynomial, chirality checks and
//! the signature lower bound for the unknotting number.

mod bracket;
mod signature;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::poly::{LaurentPoly, PolyError};

pub use bracket::{bracket_fast, bracket_fast_with_stats, bracket_oracle, bracket_oracle_partial, BracketStats, ORACLE_MAX_CROSSINGS};
pub use signature::{goeritz_anchored, knot_signature, signature, GoeritzData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("state-sum oracle limited to {max} crossings, diagram has {n}")]
    Size { n: usize, max: usize },
    #[error("intermediate state space exceeded {0} entries")]
    Limit(usize),
    #[error("jones exponent {exponent} is not a multiple of 4 in A")]
    NonKnotExponent { exponent: i64 },
    #[error("signature needs at least one crossing")]
    Degenerate,
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Poly(PolyError),
}

impl From<PolyError> for InvariantError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NotDivisible { exponent, .. } => InvariantError::NonKnotExponent { exponent },
            other => InvariantError::Poly(other),
        }
    }
}

/// Jones polynomial in `t` from a bracket in `A`:
/// `V = (-A)^(-3w) <D>` with `A = t^(-1/4)`.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i32) -> Result<LaurentPoly, InvariantError> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.checked_mul_monomial(sign, -3 * writhe)?;
    // quarter-exponent units: A^e = t^(-e/4)
    Ok(normalized.scale_exponents(-1)?.divide_exponents(4)?)
}

pub fn jones(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    jones_from_bracket(&bracket_fast(d)?, d.writhe())
}

/// Jones polynomial computed through the full state sum.
pub fn jones_oracle(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    jones_from_bracket(&bracket_oracle(d)?, d.writhe())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorVerdict {
    /// Equal Jones polynomials; says nothing about knot identity.
    SameJones,
    /// `V1 != V2` and `V1(t) = V2(1/t)`: the diagrams are distinct knots
    /// whose invariants are mirror images of each other.
    MirrorJones,
    Unrelated,
}

impl core::fmt::Display for MirrorVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            MirrorVerdict::SameJones => "SameJones",
            MirrorVerdict::MirrorJones => "MirrorJones",
            MirrorVerdict::Unrelated => "Unrelated",
        })
    }
}

pub fn mirror_verdict(v1: &LaurentPoly, v2: &LaurentPoly) -> MirrorVerdict {
    if v1 == v2 {
        MirrorVerdict::SameJones
    } else if *v1 == v2.invert_var() {
        MirrorVerdict::MirrorJones
    } else {
        MirrorVerdict::Unrelated
    }
}

pub fn detect_mirror_pair(d1: &Diagram, d2: &Diagram) -> Result<MirrorVerdict, InvariantError> {
    Ok(mirror_verdict(&jones(d1)?, &jones(d2)?))
}

/// True certifies the knot is chiral; false is inconclusive.
pub fn chiral_by_jones(d: &Diagram) -> Result<bool, InvariantError> {
    let v = jones(d)?;
    Ok(v != v.invert_var())
}

/// `|σ| / 2`, a lower bound for the unknotting number.
pub fn unknotting_lower_bound(d: &Diagram) -> Result<u32, InvariantError> {
    Ok(knot_signature(d)?.unsigned_abs() / 2)
}

#[cfg(test)]
mod tests;
