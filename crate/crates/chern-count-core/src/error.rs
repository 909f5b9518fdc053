//! Error type shared by the recursion engines and the surface evaluator.

use core::fmt;

use crate::singularity::Singularity;

/// Maximum admissible value for any stratum index (`n1`, `m1`, `m2`, `theta`).
///
/// Meaningful queries have tiny indices (the answers vanish above index
/// degree 2 and the `theta` eliminations terminate quickly), but the
/// recursion descends one `theta` at a time; this bound keeps the recursion
/// depth comfortably inside the default stack while allowing any realistic
/// query.
pub const MAX_INDEX: u32 = 4096;

/// Everything that can go wrong inside the exact calculator.
///
/// IO and parsing problems are deliberately absent: this crate is pure
/// arithmetic, and the companion command-line crate layers its own error
/// handling on top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineError {
    /// A stratum family is only defined for `theta = 0` but was queried at a
    /// positive `theta` (the node stratum, the `A7` step, and — through its
    /// dependency on the `A7` step — the node+`A6` step).
    UnsupportedTheta {
        /// Name of the offending stratum family.
        tag: &'static str,
        /// The rejected exponent.
        theta: u32,
    },
    /// A stratum index exceeded [`MAX_INDEX`].
    IndexTooLarge {
        /// The rejected index value.
        index: u32,
    },
    /// An exact division that the structure theory promises to be integral
    /// produced a non-integer; this indicates an internal inconsistency and
    /// is never expected on reachable inputs.
    NonIntegralDivision {
        /// Which guaranteed-integral quantity failed the check.
        context: &'static str,
    },
    /// The requested singularity type cannot be paired with a node (the
    /// two-point recursion stops at total codimension 7).
    InvalidPairPartner {
        /// The rejected second member of the pair.
        sing: Singularity,
    },
    /// The holomorphic Euler characteristic `(x1^2 + x2) / 12` of the given
    /// surface geometry is not an integer, so the geometry does not come
    /// from a compact complex surface.
    NonIntegralEulerCharacteristic,
    /// The Riemann-Roch section count `h0` is not an integer for the given
    /// geometry, so the geometry is not that of a line bundle with
    /// vanishing higher cohomology.
    NonIntegralSectionCount,
    /// Riemann-Roch yields `h0 < 1`: the linear system is empty and there is
    /// nothing to count.
    EmptyLinearSystem,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::UnsupportedTheta { tag, theta } => {
                write!(f, "stratum family {tag} is only defined for theta = 0 (got theta = {theta})")
            }
            EngineError::IndexTooLarge { index } => {
                write!(f, "stratum index {index} exceeds the supported maximum {}", MAX_INDEX)
            }
            EngineError::NonIntegralDivision { context } => {
                write!(f, "exact division failed: {context} is not integral")
            }
            EngineError::InvalidPairPartner { sing } => {
                write!(f, "singularity {sing} cannot be paired with a node (total codimension exceeds 7)")
            }
            EngineError::NonIntegralEulerCharacteristic => {
                write!(f, "(x1^2 + x2) / 12 is not an integer: not a compact complex surface")
            }
            EngineError::NonIntegralSectionCount => {
                write!(f, "Riemann-Roch section count is not an integer for this geometry")
            }
            EngineError::EmptyLinearSystem => {
                write!(f, "Riemann-Roch yields h0 < 1: the linear system is empty")
            }
        }
    }
}

impl core::error::Error for EngineError {}
