//! The singularity-type alphabet and its numerical invariants.
//!
//! # Conventions
//!
//! The simple (ADE) plane-curve singularities handled by the calculator:
//!
//! ```text
//! A_k (k >= 1) : y^2 + x^(k+1),   codimension k
//! D_k (k >= 4) : y(x^2 + y^(k-2)), codimension k
//! E_6          : y^3 + x^4,        codimension 6
//! E_7          : y(y^2 + x^3),     codimension 7
//! ```
//!
//! The codimension is the number of point conditions one singularity of the
//! given type absorbs inside a linear system.  One-point counts exist for all
//! thirteen types up to codimension 7; node + singularity pair counts exist
//! for the ten types of codimension at most 6.

use core::fmt;
use core::str::FromStr;

/// One of the thirteen ADE singularity types up to codimension 7.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(missing_docs)]
pub enum Singularity {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    D4,
    D5,
    D6,
    D7,
    E6,
    E7,
}

impl Singularity {
    /// All thirteen types in table order: `A1..A7`, then `D4..D7`, then
    /// `E6, E7`.
    pub const ALL: [Singularity; 13] = [
        Singularity::A1,
        Singularity::A2,
        Singularity::A3,
        Singularity::A4,
        Singularity::A5,
        Singularity::A6,
        Singularity::A7,
        Singularity::D4,
        Singularity::D5,
        Singularity::D6,
        Singularity::D7,
        Singularity::E6,
        Singularity::E7,
    ];

    /// The ten types that can accompany a node in a two-point count, in
    /// table order: `A1..A6`, then `D4..D6`, then `E6`.
    pub const PAIR_PARTNERS: [Singularity; 10] = [
        Singularity::A1,
        Singularity::A2,
        Singularity::A3,
        Singularity::A4,
        Singularity::A5,
        Singularity::A6,
        Singularity::D4,
        Singularity::D5,
        Singularity::D6,
        Singularity::E6,
    ];

    /// Codimension of the equisingular locus (point conditions absorbed).
    pub const fn codimension(self) -> u32 {
        match self {
            Singularity::A1 => 1,
            Singularity::A2 => 2,
            Singularity::A3 => 3,
            Singularity::A4 => 4,
            Singularity::A5 => 5,
            Singularity::A6 => 6,
            Singularity::A7 => 7,
            Singularity::D4 => 4,
            Singularity::D5 => 5,
            Singularity::D6 => 6,
            Singularity::D7 => 7,
            Singularity::E6 => 6,
            Singularity::E7 => 7,
        }
    }

    /// Order of ampleness of `L` that guarantees the count is enumerative:
    /// the universal formula counts honest curves once `L` is
    /// `t`-very-ample for `t = ampleness_order()`.
    pub const fn ampleness_order(self) -> u32 {
        match self {
            Singularity::A1 => 2,
            Singularity::A2 => 3,
            Singularity::A3 => 4,
            Singularity::A4 => 5,
            Singularity::A5 => 6,
            Singularity::A6 => 7,
            Singularity::A7 => 8,
            Singularity::D4 => 3,
            Singularity::D5 => 4,
            Singularity::D6 => 5,
            Singularity::D7 => 6,
            Singularity::E6 => 4,
            Singularity::E7 => 4,
        }
    }

    /// Whether a node + `self` pair count exists (total codimension <= 7).
    pub const fn admits_node_pair(self) -> bool {
        self.codimension() <= 6
    }

    /// The type's conventional name: `"A1"`, ..., `"E7"`.
    pub const fn name(self) -> &'static str {
        match self {
            Singularity::A1 => "A1",
            Singularity::A2 => "A2",
            Singularity::A3 => "A3",
            Singularity::A4 => "A4",
            Singularity::A5 => "A5",
            Singularity::A6 => "A6",
            Singularity::A7 => "A7",
            Singularity::D4 => "D4",
            Singularity::D5 => "D5",
            Singularity::D6 => "D6",
            Singularity::D7 => "D7",
            Singularity::E6 => "E6",
            Singularity::E7 => "E7",
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error returned when a singularity (or pair) name fails to parse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseSingularityError;

impl fmt::Display for ParseSingularityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unrecognized singularity name")
    }
}

impl core::error::Error for ParseSingularityError {}

impl FromStr for Singularity {
    type Err = ParseSingularityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Singularity::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or(ParseSingularityError)
    }
}
