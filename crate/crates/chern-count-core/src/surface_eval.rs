//! Concrete surfaces: presets, Riemann-Roch bookkeeping, ampleness
//! reporting, and evaluation of the universal formulas.
//!
//! # Conventions
//!
//! A surface is described by its four Chern numbers in the fixed basis
//! `(c1^2, c1 x1, x1^2, x2)` with `x1 = c1(T*X)` (see [`SurfaceGeometry`]).
//! The two presets:
//!
//! ```text
//! p2, L = O(d)          : (d^2,  -3d,        9, 3)
//! p1xp1, L = O(a, b)    : (2ab,  -2(a + b),  8, 4)
//! ```
//!
//! # Point counts
//!
//! Writing `chi = (x1^2 + x2) / 12` for the holomorphic Euler characteristic
//! and assuming vanishing higher cohomology, Riemann-Roch gives
//!
//! ```text
//! h0 = (c1^2 - c1 x1) / 2 + chi,        dim |L| = h0 - 1,
//! ```
//!
//! and a count of curves with singularities absorbing `c` point conditions
//! passes through `dim |L| - c` generic points.  Both divisions are checked
//! exactly; geometries violating them are rejected rather than rounded.
//!
//! # Ampleness
//!
//! The universal formulas are enumerative only for sufficiently ample `L`.
//! Each target carries a required very-ampleness order; on the presets the
//! report uses `O(d)` being `d`-very-ample on the plane and `O(a, b)` being
//! `min(a, b)`-very-ample on the product of lines.  For custom geometries
//! the line bundle itself is unknown, so the report is `Unknown` — the count
//! is still returned.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_traits::One;

use crate::chern_ring::SurfaceGeometry;
use crate::error::EngineError;
use crate::singularity::{ParseSingularityError, Singularity};
use crate::two_point_engine::TwoPointEngine;
use crate::{Integer, Rational};

/// What is being counted: one singularity, or a node plus one singularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CountTarget {
    /// One singularity of the given type.
    Single(Singularity),
    /// One node plus one singularity of the given type (the partner must
    /// have codimension at most 6).
    NodePair(Singularity),
}

impl CountTarget {
    /// All 23 targets in table order: the thirteen one-point types, then
    /// the ten node pairs.
    pub const TABLE: [CountTarget; 23] = [
        CountTarget::Single(Singularity::A1),
        CountTarget::Single(Singularity::A2),
        CountTarget::Single(Singularity::A3),
        CountTarget::Single(Singularity::A4),
        CountTarget::Single(Singularity::A5),
        CountTarget::Single(Singularity::A6),
        CountTarget::Single(Singularity::A7),
        CountTarget::Single(Singularity::D4),
        CountTarget::Single(Singularity::D5),
        CountTarget::Single(Singularity::D6),
        CountTarget::Single(Singularity::D7),
        CountTarget::Single(Singularity::E6),
        CountTarget::Single(Singularity::E7),
        CountTarget::NodePair(Singularity::A1),
        CountTarget::NodePair(Singularity::A2),
        CountTarget::NodePair(Singularity::A3),
        CountTarget::NodePair(Singularity::A4),
        CountTarget::NodePair(Singularity::A5),
        CountTarget::NodePair(Singularity::A6),
        CountTarget::NodePair(Singularity::D4),
        CountTarget::NodePair(Singularity::D5),
        CountTarget::NodePair(Singularity::D6),
        CountTarget::NodePair(Singularity::E6),
    ];

    /// Total number of point conditions the target absorbs.
    pub const fn codimension(self) -> u32 {
        match self {
            CountTarget::Single(s) => s.codimension(),
            CountTarget::NodePair(s) => 1 + s.codimension(),
        }
    }

    /// Very-ampleness order of `L` required for the count to be honest.
    pub const fn ampleness_order(self) -> u32 {
        match self {
            CountTarget::Single(s) => s.ampleness_order(),
            CountTarget::NodePair(s) => 2 + s.ampleness_order(),
        }
    }
}

impl fmt::Display for CountTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountTarget::Single(s) => write!(f, "{s}"),
            CountTarget::NodePair(s) => write!(f, "A1{s}"),
        }
    }
}

impl FromStr for CountTarget {
    type Err = ParseSingularityError;

    /// Parse `"D5"` as a single singularity and `"A1D5"` (concatenation)
    /// as a node pair.  `"A1A1"` is the pure node pair; pair names whose
    /// partner exceeds codimension 6 (such as `"A1A7"`) are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(single) = s.parse::<Singularity>() {
            return Ok(CountTarget::Single(single));
        }
        if let Some(partner) = s.strip_prefix("A1") {
            let partner = partner.parse::<Singularity>()?;
            if partner.admits_node_pair() {
                return Ok(CountTarget::NodePair(partner));
            }
        }
        Err(ParseSingularityError)
    }
}

/// Which preset (if any) a surface came from; presets carry the parameters
/// needed for the ampleness report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// The projective plane with `L = O(degree)`.
    ProjectivePlane {
        /// Degree of the plane curves being counted.
        degree: u32,
    },
    /// The product of two lines with `L = O(a, b)`.
    P1CrossP1 {
        /// Degree on the first factor.
        a: u32,
        /// Degree on the second factor.
        b: u32,
    },
    /// Chern numbers supplied directly; the line bundle is not known.
    Custom,
}

/// A named surface with its Chern numbers and preset provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    name: String,
    kind: SurfaceKind,
    geometry: SurfaceGeometry,
}

impl SurfaceSpec {
    /// The projective plane with `L = O(degree)`: geometry
    /// `(d^2, -3d, 9, 3)`.
    pub fn projective_plane(degree: u32) -> Self {
        let d = Integer::from(degree);
        SurfaceSpec {
            name: String::from("p2"),
            kind: SurfaceKind::ProjectivePlane { degree },
            geometry: SurfaceGeometry {
                c1_sq: Rational::from_integer(&d * &d),
                c1_x1: Rational::from_integer(Integer::from(-3) * &d),
                x1_sq: Rational::from_integer(9.into()),
                x2: Rational::from_integer(3.into()),
            },
        }
    }

    /// The product of two lines with `L = O(a, b)`: geometry
    /// `(2ab, -2(a + b), 8, 4)`.
    pub fn p1_cross_p1(a: u32, b: u32) -> Self {
        let (ia, ib) = (Integer::from(a), Integer::from(b));
        SurfaceSpec {
            name: String::from("p1xp1"),
            kind: SurfaceKind::P1CrossP1 { a, b },
            geometry: SurfaceGeometry {
                c1_sq: Rational::from_integer(Integer::from(2) * &ia * &ib),
                c1_x1: Rational::from_integer(Integer::from(-2) * (&ia + &ib)),
                x1_sq: Rational::from_integer(8.into()),
                x2: Rational::from_integer(4.into()),
            },
        }
    }

    /// A surface given directly by its Chern numbers.
    pub fn custom(name: String, geometry: SurfaceGeometry) -> Self {
        SurfaceSpec { name, kind: SurfaceKind::Custom, geometry }
    }

    /// Display name (`"p2"`, `"p1xp1"`, or the custom name).
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Preset provenance.
    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    /// The four Chern numbers.
    pub fn geometry(&self) -> &SurfaceGeometry {
        &self.geometry
    }
}

/// Outcome of an ampleness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ampleness {
    /// The preset line bundle meets the required very-ampleness order.
    Satisfied,
    /// The preset line bundle falls short; the formula value is returned
    /// but need not count honest curves.
    NotSatisfied,
    /// Custom geometry: no line bundle to check.
    Unknown,
}

impl Ampleness {
    /// `Some(true)` / `Some(false)` for presets, `None` for custom
    /// geometries.
    pub fn is_satisfied(self) -> Option<bool> {
        match self {
            Ampleness::Satisfied => Some(true),
            Ampleness::NotSatisfied => Some(false),
            Ampleness::Unknown => None,
        }
    }
}

/// Required very-ampleness order and whether the surface meets it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmplenessReport {
    /// Very-ampleness order required by the target.
    pub required: u32,
    /// Whether the surface's line bundle meets it.
    pub status: Ampleness,
}

/// Ampleness report for a target on a surface.
pub fn ampleness(target: CountTarget, surface: &SurfaceSpec) -> AmplenessReport {
    let required = target.ampleness_order();
    let status = match *surface.kind() {
        SurfaceKind::ProjectivePlane { degree } => {
            // O(d) on the plane is d-very-ample.
            if degree >= required {
                Ampleness::Satisfied
            } else {
                Ampleness::NotSatisfied
            }
        }
        SurfaceKind::P1CrossP1 { a, b } => {
            // O(a, b) on the product of lines is min(a, b)-very-ample.
            if a.min(b) >= required {
                Ampleness::Satisfied
            } else {
                Ampleness::NotSatisfied
            }
        }
        SurfaceKind::Custom => Ampleness::Unknown,
    };
    AmplenessReport { required, status }
}

/// A formula value on a concrete surface, with its ampleness report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// The universal formula evaluated on the surface's Chern numbers.
    pub value: Rational,
    /// Whether that value is guaranteed enumerative.
    pub ampleness: AmplenessReport,
}

/// Evaluate the universal formula for `target` on a concrete surface.
pub fn count(
    engine: &mut TwoPointEngine,
    target: CountTarget,
    surface: &SurfaceSpec,
) -> Result<CountReport, EngineError> {
    let value = match target {
        CountTarget::Single(s) => engine.one_point_mut().n_singularity(s)?.evaluate(surface.geometry()),
        CountTarget::NodePair(s) => engine.n_pair(s)?.evaluate(surface.geometry()),
    };
    Ok(CountReport { value, ampleness: ampleness(target, surface) })
}

/// The holomorphic Euler characteristic `chi(O) = (x1^2 + x2) / 12`,
/// rejected if non-integral.
pub fn holomorphic_euler_characteristic(geometry: &SurfaceGeometry) -> Result<Integer, EngineError> {
    let chi = (&geometry.x1_sq + &geometry.x2) / Rational::from_integer(12.into());
    if chi.is_integer() {
        Ok(chi.to_integer())
    } else {
        Err(EngineError::NonIntegralEulerCharacteristic)
    }
}

/// The Riemann-Roch section count `h0 = (c1^2 - c1 x1) / 2 + chi(O)`,
/// assuming vanishing higher cohomology; rejected if non-integral or below 1.
pub fn section_count(geometry: &SurfaceGeometry) -> Result<Integer, EngineError> {
    let chi = holomorphic_euler_characteristic(geometry)?;
    let half = (&geometry.c1_sq - &geometry.c1_x1) / Rational::from_integer(2.into());
    if !half.is_integer() {
        return Err(EngineError::NonIntegralSectionCount);
    }
    let h0 = half.to_integer() + chi;
    if h0 < Integer::one() {
        return Err(EngineError::EmptyLinearSystem);
    }
    Ok(h0)
}

/// The projective dimension of the linear system, `h0 - 1`.
pub fn linear_system_dimension(geometry: &SurfaceGeometry) -> Result<Integer, EngineError> {
    Ok(section_count(geometry)? - Integer::one())
}

/// Number of generic points a curve counted by `target` passes through:
/// `dim |L| - codimension`.  May be negative — the caller decides whether a
/// negative-point count is meaningful for its purpose.
pub fn expected_point_count(target: CountTarget, geometry: &SurfaceGeometry) -> Result<Integer, EngineError> {
    Ok(linear_system_dimension(geometry)? - Integer::from(target.codimension()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rational(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn preset_geometries() {
        let p2 = SurfaceSpec::projective_plane(4);
        assert_eq!(p2.geometry(), &SurfaceGeometry::from_integers(16, -12, 9, 3));
        assert_eq!(p2.name(), "p2");
        let quadric = SurfaceSpec::p1_cross_p1(2, 3);
        assert_eq!(quadric.geometry(), &SurfaceGeometry::from_integers(12, -10, 8, 4));
        assert_eq!(quadric.name(), "p1xp1");
    }

    #[test]
    fn target_names_round_trip() {
        for t in CountTarget::TABLE {
            assert_eq!(t.to_string().parse::<CountTarget>(), Ok(t));
        }
        assert_eq!("A1A1".parse::<CountTarget>(), Ok(CountTarget::NodePair(Singularity::A1)));
        assert_eq!("A1D4".parse::<CountTarget>(), Ok(CountTarget::NodePair(Singularity::D4)));
        assert_eq!("E7".parse::<CountTarget>(), Ok(CountTarget::Single(Singularity::E7)));
        assert!("A1A7".parse::<CountTarget>().is_err());
        assert!("A1D7".parse::<CountTarget>().is_err());
        assert!("A1E7".parse::<CountTarget>().is_err());
        assert!("A0".parse::<CountTarget>().is_err());
        assert!("A1 D4".parse::<CountTarget>().is_err());
    }

    #[test]
    fn table_order_lists_singles_then_pairs() {
        assert_eq!(CountTarget::TABLE.len(), 23);
        assert_eq!(CountTarget::TABLE[0], CountTarget::Single(Singularity::A1));
        assert_eq!(CountTarget::TABLE[12], CountTarget::Single(Singularity::E7));
        assert_eq!(CountTarget::TABLE[13], CountTarget::NodePair(Singularity::A1));
        assert_eq!(CountTarget::TABLE[22], CountTarget::NodePair(Singularity::E6));
    }

    #[test]
    fn codimension_and_ampleness_orders() {
        assert_eq!(CountTarget::Single(Singularity::A1).codimension(), 1);
        assert_eq!(CountTarget::NodePair(Singularity::E6).codimension(), 7);
        assert_eq!(CountTarget::Single(Singularity::D4).ampleness_order(), 3);
        assert_eq!(CountTarget::NodePair(Singularity::D4).ampleness_order(), 5);
    }

    #[test]
    fn ampleness_reports() {
        let a1 = CountTarget::Single(Singularity::A1);
        let a2 = CountTarget::Single(Singularity::A2);
        assert_eq!(ampleness(a1, &SurfaceSpec::projective_plane(3)).status, Ampleness::Satisfied);
        assert_eq!(ampleness(a2, &SurfaceSpec::projective_plane(2)).status, Ampleness::NotSatisfied);
        let d4 = CountTarget::Single(Singularity::D4);
        assert_eq!(ampleness(d4, &SurfaceSpec::p1_cross_p1(2, 5)).status, Ampleness::NotSatisfied);
        assert_eq!(ampleness(d4, &SurfaceSpec::p1_cross_p1(3, 3)).status, Ampleness::Satisfied);
        let custom = SurfaceSpec::custom("k3".into(), SurfaceGeometry::from_integers(4, 0, 0, 24));
        let report = ampleness(a1, &custom);
        assert_eq!(report.status, Ampleness::Unknown);
        assert_eq!(report.status.is_satisfied(), None);
        assert_eq!(report.required, 2);
    }

    #[test]
    fn riemann_roch_on_the_plane() {
        // O(3) on the plane: 10 sections, so nodal cubics through 8 points.
        let g = SurfaceSpec::projective_plane(3);
        assert_eq!(holomorphic_euler_characteristic(g.geometry()).unwrap(), Integer::one());
        assert_eq!(section_count(g.geometry()).unwrap(), Integer::from(10));
        assert_eq!(linear_system_dimension(g.geometry()).unwrap(), Integer::from(9));
        assert_eq!(
            expected_point_count(CountTarget::Single(Singularity::A1), g.geometry()).unwrap(),
            Integer::from(8),
        );
        // O(4): cuspidal quartics through 12 points.
        let g4 = SurfaceSpec::projective_plane(4);
        assert_eq!(
            expected_point_count(CountTarget::Single(Singularity::A2), g4.geometry()).unwrap(),
            Integer::from(12),
        );
        // Sections of O(a, b) on the product of lines: (a+1)(b+1).
        let q = SurfaceSpec::p1_cross_p1(2, 3);
        assert_eq!(section_count(q.geometry()).unwrap(), Integer::from(12));
    }

    #[test]
    fn degenerate_geometries_are_rejected() {
        let zero = SurfaceGeometry::from_integers(0, 0, 0, 0);
        assert_eq!(section_count(&zero), Err(EngineError::EmptyLinearSystem));
        let fractional_chi = SurfaceGeometry::from_integers(0, 0, 1, 0);
        assert_eq!(
            holomorphic_euler_characteristic(&fractional_chi),
            Err(EngineError::NonIntegralEulerCharacteristic),
        );
        let odd_half = SurfaceGeometry::from_integers(1, 0, 9, 3);
        assert_eq!(section_count(&odd_half), Err(EngineError::NonIntegralSectionCount));
        // Negative expected point counts are returned, not rejected.
        let trivial = SurfaceSpec::projective_plane(0);
        assert_eq!(
            expected_point_count(CountTarget::Single(Singularity::A1), trivial.geometry()).unwrap(),
            Integer::from(-1),
        );
    }

    #[test]
    fn counts_on_presets() {
        let mut engine = TwoPointEngine::new();
        let p2_4 = SurfaceSpec::projective_plane(4);
        let a1 = count(&mut engine, CountTarget::Single(Singularity::A1), &p2_4).unwrap();
        assert_eq!(a1.value, rational(27));
        assert_eq!(a1.ampleness.status, Ampleness::Satisfied);
        let a2 = count(&mut engine, CountTarget::Single(Singularity::A2), &p2_4).unwrap();
        assert_eq!(a2.value, rational(72));
        let pair = count(&mut engine, CountTarget::NodePair(Singularity::A1), &p2_4).unwrap();
        assert_eq!(pair.value, rational(450));
        let d4 = count(&mut engine, CountTarget::Single(Singularity::D4), &SurfaceSpec::projective_plane(5)).unwrap();
        assert_eq!(d4.value, rational(135));
        let quadric = count(&mut engine, CountTarget::Single(Singularity::A1), &SurfaceSpec::p1_cross_p1(2, 2)).unwrap();
        assert_eq!(quadric.value, rational(12));
        // Codimension-7 partners are rejected at the pair wrapper.
        assert_eq!(
            count(&mut engine, CountTarget::NodePair(Singularity::E7), &p2_4),
            Err(EngineError::InvalidPairPartner { sing: Singularity::E7 }),
        );
    }
}
