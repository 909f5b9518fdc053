//! Memoized two-point recursion: one node plus one stratum, on two marked
//! points.
//!
//! # Shape of the values
//!
//! A two-point query counts curves carrying a node at one marked point and a
//! member of a one-point stratum family at a second marked point.  The
//! answer ([`TwoPointClass`]) has a quadratic part pairing a degree-2 class
//! from each marked point and a diagonal degree-2 correction:
//!
//! ```text
//! quad: node-slot (x) stratum-slot        lin: collision corrections.
//! ```
//!
//! The recursions mirror the one-point arms term by term on the quadratic
//! part, while the diagonal part accumulates the corrections that remove
//! configurations where the two marked points collide into one deeper
//! singularity.  Structurally the quadratic part always factors as
//! `N(A1, 0,0,0) (x) w` for some degree-2 class `w` — a fact the property
//! suite verifies rather than assumes.
//!
//! # Keys and domain
//!
//! A [`TwoPointKey`] carries the same index tuple `(n1, m1, m2, theta)` as a
//! one-point key; the indices decorate the *stratum* slot.  The pure
//! node-pair family `A1A1` is only defined at `theta = 0`.  The node+`A6`
//! family accepts `theta > 0` keys, but its recursion consumes the `A7` step
//! at the same `theta`, so such queries fail with the `A7` step's
//! [`EngineError::UnsupportedTheta`] — the error is propagated, not masked.
//!
//! # Variant switches
//!
//! Two further steps admit two documented readings each
//! ([`A1Pa3Correction`], [`A1Pd4Correction`]); together with the one-point
//! `A7` reading ([`Pa7Variant`]) they form [`RecursionVariants`].  Defaults
//! reproduce the published tables.
//!
//! # Extrapolation bookkeeping
//!
//! The published two-point table needs only finitely many keys.  The engine
//! answers *any* legal key, and [`TwoPointEngine::is_theorem_key`] reports
//! whether a key lies inside the closure actually consumed by the table —
//! callers persisting or displaying values use it to tag extrapolated
//! entries.

use alloc::collections::{BTreeMap, BTreeSet};

use crate::chern_ring::{OnePointClass, TwoPointClass};
use crate::error::{EngineError, MAX_INDEX};
use crate::singularity::Singularity;
use crate::strata_engine::{OnePointEngine, Pa7Variant, StratumKey, StratumTag};
use crate::Rational;

/// Names of the node + stratum two-point families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(missing_docs)]
pub enum TwoPointTag {
    A1A1,
    A1Pa2,
    A1Pa3,
    A1Pa4,
    A1Pa5,
    A1Pa6,
    A1Pd4,
    A1Pd5,
    A1Pd6,
    A1Pe6,
}

impl TwoPointTag {
    /// All ten families in table order.
    pub const ALL: [TwoPointTag; 10] = [
        TwoPointTag::A1A1,
        TwoPointTag::A1Pa2,
        TwoPointTag::A1Pa3,
        TwoPointTag::A1Pa4,
        TwoPointTag::A1Pa5,
        TwoPointTag::A1Pa6,
        TwoPointTag::A1Pd4,
        TwoPointTag::A1Pd5,
        TwoPointTag::A1Pd6,
        TwoPointTag::A1Pe6,
    ];

    /// Conventional name, `"A1A1"`, `"A1PA2"`, ..., `"A1PE6"`.
    pub const fn name(self) -> &'static str {
        match self {
            TwoPointTag::A1A1 => "A1A1",
            TwoPointTag::A1Pa2 => "A1PA2",
            TwoPointTag::A1Pa3 => "A1PA3",
            TwoPointTag::A1Pa4 => "A1PA4",
            TwoPointTag::A1Pa5 => "A1PA5",
            TwoPointTag::A1Pa6 => "A1PA6",
            TwoPointTag::A1Pd4 => "A1PD4",
            TwoPointTag::A1Pd5 => "A1PD5",
            TwoPointTag::A1Pd6 => "A1PD6",
            TwoPointTag::A1Pe6 => "A1PE6",
        }
    }

    /// Whether this family is only defined at `theta = 0`.
    pub const fn theta_must_vanish(self) -> bool {
        matches!(self, TwoPointTag::A1A1)
    }

    /// The two-point family counting a node together with the given
    /// singularity type; `None` when the pair exceeds total codimension 7.
    pub const fn for_partner(s: Singularity) -> Option<TwoPointTag> {
        match s {
            Singularity::A1 => Some(TwoPointTag::A1A1),
            Singularity::A2 => Some(TwoPointTag::A1Pa2),
            Singularity::A3 => Some(TwoPointTag::A1Pa3),
            Singularity::A4 => Some(TwoPointTag::A1Pa4),
            Singularity::A5 => Some(TwoPointTag::A1Pa5),
            Singularity::A6 => Some(TwoPointTag::A1Pa6),
            Singularity::D4 => Some(TwoPointTag::A1Pd4),
            Singularity::D5 => Some(TwoPointTag::A1Pd5),
            Singularity::D6 => Some(TwoPointTag::A1Pd6),
            Singularity::E6 => Some(TwoPointTag::A1Pe6),
            Singularity::A7 | Singularity::D7 | Singularity::E7 => None,
        }
    }
}

/// A validated two-point query: family plus index tuple on the stratum slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPointKey {
    tag: TwoPointTag,
    n1: u32,
    m1: u32,
    m2: u32,
    theta: u32,
}

impl TwoPointKey {
    /// Validate and build a query key; the same index bound and `theta`
    /// contract as [`StratumKey::new`].
    pub fn new(tag: TwoPointTag, n1: u32, m1: u32, m2: u32, theta: u32) -> Result<TwoPointKey, EngineError> {
        if let Some(&index) = [n1, m1, m2, theta].iter().find(|&&i| i > MAX_INDEX) {
            return Err(EngineError::IndexTooLarge { index });
        }
        if tag.theta_must_vanish() && theta > 0 {
            return Err(EngineError::UnsupportedTheta { tag: tag.name(), theta });
        }
        Ok(TwoPointKey { tag, n1, m1, m2, theta })
    }

    /// Internal constructor for recursion arms; growth above a validated
    /// input key is bounded, and no arm raises `theta` on `A1A1`.
    fn step(tag: TwoPointTag, n1: u32, m1: u32, m2: u32, theta: u32) -> TwoPointKey {
        debug_assert!(!tag.theta_must_vanish() || theta == 0);
        TwoPointKey { tag, n1, m1, m2, theta }
    }

    /// The two-point family.
    pub fn tag(&self) -> TwoPointTag {
        self.tag
    }

    /// Exponent of the extra `c1(L)` factors on the stratum slot.
    pub fn n1(&self) -> u32 {
        self.n1
    }

    /// Exponent of the extra `x1` factors on the stratum slot.
    pub fn m1(&self) -> u32 {
        self.m1
    }

    /// Exponent of the extra `x2` factors on the stratum slot.
    pub fn m2(&self) -> u32 {
        self.m2
    }

    /// Exponent of the tautological direction class on the stratum slot.
    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// The weighted index degree `n1 + m1 + 2 m2` of the stratum slot.
    pub fn index_degree(&self) -> u32 {
        self.n1 + self.m1 + 2 * self.m2
    }
}

/// The two documented readings of the collision correction in the
/// node+`A3` step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum A1Pa3Correction {
    /// Subtract `2 N(PA4, theta)` — reproduces the published two-point
    /// table; the default.
    #[default]
    Pa4,
    /// Subtract `2 N(PA5, theta)`.  Kept solely so the regression suite can
    /// demonstrate that the choice is observable.
    Pa5,
}

/// The two documented readings of the collision correction in the
/// node+`D4` step at `theta = 0`.
///
/// Both subtract twice a count of marked `D5` configurations; they differ in
/// whether the subtrahend is phrased as the projectivized `D5` stratum
/// number or as the indexed `D5` singularity number.  The two phrasings
/// denote the same quantity — the direction marked on a `D5` germ is unique,
/// so the stratum covers the locus once — and the regression suite verifies
/// (rather than assumes) that the toggle is therefore unobservable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum A1Pd4Correction {
    /// Subtract `2 N(PD5-stratum, n1, m1, m2, theta = 0)`; the default.
    #[default]
    Pd5Stratum,
    /// Subtract `2 N(D5-singularity, n1, m1, m2)` (the indexed one-point
    /// number).
    D5Indexed,
}

/// The three documented variant switches, bundled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionVariants {
    /// Reading of the one-point `A7` step.
    pub pa7: Pa7Variant,
    /// Reading of the node+`A3` collision correction.
    pub a1pa3: A1Pa3Correction,
    /// Reading of the node+`D4` collision correction.
    pub a1pd4: A1Pd4Correction,
}

/// One two-point recursion arm with its one-point-side content already
/// evaluated: either a directly known value, or a rational-linear
/// combination of other two-point queries plus a fully evaluated diagonal
/// base class.
enum PairArm {
    Value(TwoPointClass),
    Terms {
        terms: alloc::vec::Vec<(Rational, TwoPointKey)>,
        base: TwoPointClass,
    },
}

impl PairArm {
    /// Integer-coefficient combination plus a diagonal correction.
    fn combination(int_terms: &[(i64, TwoPointKey)], base: TwoPointClass) -> PairArm {
        PairArm::Terms {
            terms: int_terms
                .iter()
                .map(|&(c, k)| (Rational::from_integer(c.into()), k))
                .collect(),
            base,
        }
    }
}

/// Memoized evaluator for the two-point recursion.  Owns a one-point engine
/// for the stratum-side subqueries; single-threaded like it.
#[derive(Clone, Debug)]
pub struct TwoPointEngine {
    one_point: OnePointEngine,
    memo: BTreeMap<TwoPointKey, TwoPointClass>,
    variants: RecursionVariants,
    computed: u64,
    theorem_keys: Option<BTreeSet<TwoPointKey>>,
}

impl Default for TwoPointEngine {
    fn default() -> Self {
        TwoPointEngine::new()
    }
}

impl TwoPointEngine {
    /// Engine with the default variant readings.
    pub fn new() -> Self {
        TwoPointEngine::with_variants(RecursionVariants::default())
    }

    /// Engine with explicit variant readings.
    pub fn with_variants(variants: RecursionVariants) -> Self {
        TwoPointEngine {
            one_point: OnePointEngine::with_variant(variants.pa7),
            memo: BTreeMap::new(),
            variants,
            computed: 0,
            theorem_keys: None,
        }
    }

    /// The variant readings this engine runs with.
    pub fn variants(&self) -> RecursionVariants {
        self.variants
    }

    /// Shared access to the embedded one-point engine.
    pub fn one_point(&self) -> &OnePointEngine {
        &self.one_point
    }

    /// Mutable access to the embedded one-point engine (for one-point
    /// queries through the same memo, and for cache warming).
    pub fn one_point_mut(&mut self) -> &mut OnePointEngine {
        &mut self.one_point
    }

    /// Number of two-point recursion-arm evaluations performed so far.
    pub fn computed_steps(&self) -> u64 {
        self.computed
    }

    /// Number of memoized two-point entries.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// All memoized `(key, class)` pairs in key order.
    pub fn memo_entries(&self) -> impl Iterator<Item = (TwoPointKey, &TwoPointClass)> + '_ {
        self.memo.iter().map(|(&k, v)| (k, v))
    }

    /// Pre-load a memo entry (cache warming); the caller vouches for the
    /// value.
    pub fn seed_memo(&mut self, key: TwoPointKey, value: TwoPointClass) {
        self.memo.insert(key, value);
    }

    /// The set of keys consumed by deriving the full published two-point
    /// table under this engine's variants (computed once, on a scratch
    /// engine, then cached).
    pub fn theorem_key_set(&mut self) -> &BTreeSet<TwoPointKey> {
        if self.theorem_keys.is_none() {
            let mut scratch = TwoPointEngine::with_variants(self.variants);
            for s in Singularity::PAIR_PARTNERS {
                // Every pair family is defined on these inputs; errors are
                // impossible here by construction.
                let _ = scratch.n_pair(s);
            }
            self.theorem_keys = Some(scratch.memo.keys().copied().collect());
        }
        self.theorem_keys.as_ref().expect("just initialized")
    }

    /// Whether the key lies inside the closure consumed by the published
    /// table; `false` marks an extrapolated query.
    pub fn is_theorem_key(&mut self, key: &TwoPointKey) -> bool {
        self.theorem_key_set().contains(key)
    }

    /// The pure node-pair count.
    pub fn n_a1a1(&mut self, n1: u32, m1: u32, m2: u32) -> Result<TwoPointClass, EngineError> {
        let key = TwoPointKey::new(TwoPointTag::A1A1, n1, m1, m2, 0)?;
        self.n_two_point(key)
    }

    /// Evaluate a two-point query, memoizing every intermediate result.
    pub fn n_two_point(&mut self, key: TwoPointKey) -> Result<TwoPointClass, EngineError> {
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        // Explicit work list, exactly as in the one-point engine: a key is
        // resolved once all two-point terms of its arm are memoized; the
        // one-point content of an arm is evaluated eagerly (the one-point
        // engine runs its own work list, so its call depth is constant).
        let mut pending: alloc::vec::Vec<TwoPointKey> = alloc::vec![key];
        while let Some(&top) = pending.last() {
            if self.memo.contains_key(&top) {
                pending.pop();
                continue;
            }
            match self.arm(top)? {
                PairArm::Value(v) => {
                    self.computed += 1;
                    self.memo.insert(top, v);
                    pending.pop();
                }
                PairArm::Terms { terms, base } => {
                    let mut missing = terms
                        .iter()
                        .map(|&(_, k)| k)
                        .filter(|k| !self.memo.contains_key(k))
                        .peekable();
                    if missing.peek().is_none() {
                        let mut acc = base;
                        for (c, k) in &terms {
                            acc = acc + self.memo[k].scaled(c);
                        }
                        self.computed += 1;
                        self.memo.insert(top, acc);
                        pending.pop();
                    } else {
                        pending.extend(missing);
                    }
                }
            }
        }
        Ok(self.memo.get(&key).expect("resolved by the work list").clone())
    }

    /// The universal formula for one node plus one singularity of the given
    /// type: the two-point count at index `(0, 0, 0, 0)`, divided by 3 for
    /// the `D4` partner (triple cover, checked exactly on both parts).
    pub fn n_pair(&mut self, partner: Singularity) -> Result<TwoPointClass, EngineError> {
        let tag = TwoPointTag::for_partner(partner).ok_or(EngineError::InvalidPairPartner { sing: partner })?;
        let value = self.n_two_point(TwoPointKey::new(tag, 0, 0, 0, 0)?)?;
        if partner == Singularity::D4 {
            value.exact_third().ok_or(EngineError::NonIntegralDivision {
                context: "the node+D4 two-point count (three times the node+D4 pair count)",
            })
        } else {
            Ok(value)
        }
    }

    /// Sum `coefficient * N(key)` over one-point subqueries (the diagonal
    /// collision corrections).
    fn one_point_combination(&mut self, terms: &[(i64, StratumKey)]) -> Result<OnePointClass, EngineError> {
        let mut acc = OnePointClass::zero();
        for &(coefficient, key) in terms {
            let value = self.one_point.n_stratum(key)?;
            acc = acc + value.scaled(&Rational::from_integer(coefficient.into()));
        }
        Ok(acc)
    }

    /// The recursion arm for one key, with its one-point side evaluated.
    /// Main terms mirror the one-point arms on two-point subqueries; the
    /// diagonal corrections subtract collisions of the two marked points.
    fn arm(&mut self, key: TwoPointKey) -> Result<PairArm, EngineError> {
        use StratumTag as S;
        use TwoPointTag::*;
        let (n, m, p, t) = (key.n1, key.m1, key.m2, key.theta);
        Ok(match key.tag {
            // N(A1A1, n,m,p) = N(A1,0,0,0) (x) N(A1,n,m,p)
            //                  - [ N(A1,n,m,p) + N(A1,n+1,m,p) + 3 N(PA2,n,m,p,0) ]
            // (theta = 0 by the key contract).
            A1A1 => {
                let node = OnePointEngine::n_a1(0, 0, 0);
                let slot = OnePointEngine::n_a1(n, m, p);
                let quad = TwoPointClass::tensor(&node, &slot);
                let lin = self.one_point_combination(&[
                    (-1, StratumKey::step(S::A1, n, m, p, 0)),
                    (-1, StratumKey::step(S::A1, n + 1, m, p, 0)),
                    (-3, StratumKey::step(S::Pa2, n, m, p, 0)),
                ])?;
                PairArm::Value(quad + TwoPointClass::from_linear(lin))
            }

            // Node+A2: the PA2 arms on pair subqueries, with collision
            // corrections -2 N(PA3, theta) at theta = 0 and
            // -2 N(PA3, theta) - 3 N(D4-singularity) at theta = 1; theta > 1
            // reduces inside the family exactly as in the one-point theory.
            A1Pa2 => match t {
                0 => {
                    let lin = self.one_point_combination(&[(-2, StratumKey::step(S::Pa3, n, m, p, 0))])?;
                    PairArm::combination(
                        &[
                            (2, TwoPointKey::step(A1A1, n, m, p, 0)),
                            (2, TwoPointKey::step(A1A1, n, m + 1, p, 0)),
                            (2, TwoPointKey::step(A1A1, n + 1, m, p, 0)),
                        ],
                        TwoPointClass::from_linear(lin),
                    )
                }
                1 => {
                    let mut lin = self.one_point_combination(&[(-2, StratumKey::step(S::Pa3, n, m, p, 1))])?;
                    let d4 = self.one_point.one_point_indexed(Singularity::D4, n, m, p)?;
                    lin = lin + d4.scaled(&Rational::from_integer((-3).into()));
                    PairArm::combination(
                        &[
                            (1, TwoPointKey::step(A1A1, n, m, p, 0)),
                            (2, TwoPointKey::step(A1A1, n + 1, m, p, 0)),
                            (1, TwoPointKey::step(A1A1, n + 2, m, p, 0)),
                            (3, TwoPointKey::step(A1A1, n, m + 1, p, 0)),
                            (3, TwoPointKey::step(A1A1, n + 1, m + 1, p, 0)),
                            (2, TwoPointKey::step(A1A1, n, m + 2, p, 0)),
                        ],
                        TwoPointClass::from_linear(lin),
                    )
                }
                _ => PairArm::combination(
                    &[
                        (1, TwoPointKey::step(A1Pa2, n, m + 1, p, t - 1)),
                        (-1, TwoPointKey::step(A1Pa2, n, m, p + 1, t - 2)),
                    ],
                    TwoPointClass::zero(),
                ),
            },

            // Node+A3: main terms as in the one-point A3 step; the collision
            // correction has two documented readings (see
            // [`A1Pa3Correction`]).
            A1Pa3 => {
                let correction_tag = match self.variants.a1pa3 {
                    A1Pa3Correction::Pa4 => S::Pa4,
                    A1Pa3Correction::Pa5 => S::Pa5,
                };
                let lin = self.one_point_combination(&[(-2, StratumKey::step(correction_tag, n, m, p, t))])?;
                PairArm::combination(
                    &[
                        (3, TwoPointKey::step(A1Pa2, n, m, p, t + 1)),
                        (1, TwoPointKey::step(A1Pa2, n, m, p, t)),
                        (1, TwoPointKey::step(A1Pa2, n + 1, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+A4: corrections -2 N(PA5, theta).
            A1Pa4 => {
                let lin = self.one_point_combination(&[(-2, StratumKey::step(S::Pa5, n, m, p, t))])?;
                PairArm::combination(
                    &[
                        (2, TwoPointKey::step(A1Pa3, n, m, p, t + 1)),
                        (2, TwoPointKey::step(A1Pa3, n, m + 1, p, t)),
                        (2, TwoPointKey::step(A1Pa3, n, m, p, t)),
                        (2, TwoPointKey::step(A1Pa3, n + 1, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+A5: corrections -2 N(PA6, theta) - 5 N(PE6, theta).
            A1Pa5 => {
                let lin = self.one_point_combination(&[
                    (-2, StratumKey::step(S::Pa6, n, m, p, t)),
                    (-5, StratumKey::step(S::Pe6, n, m, p, t)),
                ])?;
                PairArm::combination(
                    &[
                        (1, TwoPointKey::step(A1Pa4, n, m, p, t + 1)),
                        (4, TwoPointKey::step(A1Pa4, n, m + 1, p, t)),
                        (3, TwoPointKey::step(A1Pa4, n, m, p, t)),
                        (3, TwoPointKey::step(A1Pa4, n + 1, m, p, t)),
                        (-2, TwoPointKey::step(A1Pd5, n, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+A6: corrections -2 N(PA7, theta) - 6 N(PE7, theta).  The
            // A7 step only exists at theta = 0, so theta > 0 propagates its
            // domain error.
            A1Pa6 => {
                let pa7 = StratumKey::new(S::Pa7, n, m, p, t)?;
                let lin = self.one_point_combination(&[
                    (-2, pa7),
                    (-6, StratumKey::step(S::Pe7, n, m, p, t)),
                ])?;
                PairArm::combination(
                    &[
                        (6, TwoPointKey::step(A1Pa5, n, m + 1, p, t)),
                        (4, TwoPointKey::step(A1Pa5, n, m, p, t)),
                        (4, TwoPointKey::step(A1Pa5, n + 1, m, p, t)),
                        (-4, TwoPointKey::step(A1Pd6, n, m, p, t)),
                        (-3, TwoPointKey::step(A1Pe6, n, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+D4: main terms as in the one-point D4 step at theta = 0,
            // with a collision correction whose two documented readings
            // coincide (see [`A1Pd4Correction`]); theta = 1 is the exact
            // one-third relation of the triple cover, and theta > 1 reduces
            // inside the family.
            A1Pd4 => match t {
                0 => {
                    let correction = match self.variants.a1pd4 {
                        A1Pd4Correction::Pd5Stratum => {
                            self.one_point.n_stratum(StratumKey::step(S::Pd5, n, m, p, 0))?
                        }
                        A1Pd4Correction::D5Indexed => {
                            self.one_point.one_point_indexed(Singularity::D5, n, m, p)?
                        }
                    };
                    let lin = correction.scaled(&Rational::from_integer((-2).into()));
                    PairArm::combination(
                        &[
                            (2, TwoPointKey::step(A1Pa3, n, m + 1, p, 0)),
                            (-2, TwoPointKey::step(A1Pa3, n, m, p, 1)),
                            (1, TwoPointKey::step(A1Pa3, n, m, p, 0)),
                            (1, TwoPointKey::step(A1Pa3, n + 1, m, p, 0)),
                        ],
                        TwoPointClass::from_linear(lin),
                    )
                }
                1 => {
                    let third = Rational::new(1.into(), 3.into());
                    PairArm::Terms {
                        terms: alloc::vec![
                            (third.clone(), TwoPointKey::step(A1Pd4, n, m, p, 0)),
                            (Rational::from_integer(1.into()), TwoPointKey::step(A1Pd4, n, m + 1, p, 0)),
                            (third, TwoPointKey::step(A1Pd4, n + 1, m, p, 0)),
                        ],
                        base: TwoPointClass::zero(),
                    }
                }
                _ => PairArm::combination(
                    &[
                        (1, TwoPointKey::step(A1Pd4, n, m + 1, p, t - 1)),
                        (-1, TwoPointKey::step(A1Pd4, n, m, p + 1, t - 2)),
                    ],
                    TwoPointClass::zero(),
                ),
            },

            // Node+D5: corrections -2 N(PD6, theta).
            A1Pd5 => {
                let lin = self.one_point_combination(&[(-2, StratumKey::step(S::Pd6, n, m, p, t))])?;
                PairArm::combination(
                    &[
                        (1, TwoPointKey::step(A1Pd4, n, m, p, t + 1)),
                        (1, TwoPointKey::step(A1Pd4, n, m + 1, p, t)),
                        (1, TwoPointKey::step(A1Pd4, n, m, p, t)),
                        (1, TwoPointKey::step(A1Pd4, n + 1, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+D6: corrections -2 N(PD7, theta) - N(PE7, theta); the
            // middle main term is unshifted for the same determining-bundle
            // reason as in the one-point D6 step.
            A1Pd6 => {
                let lin = self.one_point_combination(&[
                    (-2, StratumKey::step(S::Pd7, n, m, p, t)),
                    (-1, StratumKey::step(S::Pe7, n, m, p, t)),
                ])?;
                PairArm::combination(
                    &[
                        (4, TwoPointKey::step(A1Pd5, n, m, p, t + 1)),
                        (1, TwoPointKey::step(A1Pd5, n, m, p, t)),
                        (1, TwoPointKey::step(A1Pd5, n + 1, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }

            // Node+E6: corrections -N(PE7, theta).
            A1Pe6 => {
                let lin = self.one_point_combination(&[(-1, StratumKey::step(S::Pe7, n, m, p, t))])?;
                PairArm::combination(
                    &[
                        (2, TwoPointKey::step(A1Pd5, n, m + 1, p, t)),
                        (-1, TwoPointKey::step(A1Pd5, n, m, p, t + 1)),
                        (1, TwoPointKey::step(A1Pd5, n, m, p, t)),
                        (1, TwoPointKey::step(A1Pd5, n + 1, m, p, t)),
                    ],
                    TwoPointClass::from_linear(lin),
                )
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(coeffs: [i64; 4]) -> OnePointClass {
        OnePointClass::from_integers(coeffs)
    }

    fn key(tag: TwoPointTag, n1: u32, m1: u32, m2: u32, theta: u32) -> TwoPointKey {
        TwoPointKey::new(tag, n1, m1, m2, theta).unwrap()
    }

    fn node() -> OnePointClass {
        one([3, 2, 0, 1])
    }

    #[test]
    fn node_pair_at_origin() {
        let mut engine = TwoPointEngine::new();
        let v = engine.n_a1a1(0, 0, 0).unwrap();
        assert_eq!(v.quad(), TwoPointClass::tensor(&node(), &node()).quad());
        assert_eq!(v.lin(), &one([-42, -39, -6, -7]));
    }

    #[test]
    fn node_pair_vanishes_above_degree_two() {
        let mut engine = TwoPointEngine::new();
        assert!(engine.n_a1a1(0, 0, 2).unwrap().is_zero());
        assert!(engine.n_a1a1(3, 0, 0).unwrap().is_zero());
        assert!(engine.n_a1a1(1, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn node_pair_rejects_positive_theta() {
        assert_eq!(
            TwoPointKey::new(TwoPointTag::A1A1, 0, 0, 0, 1),
            Err(EngineError::UnsupportedTheta { tag: "A1A1", theta: 1 }),
        );
    }

    #[test]
    fn frozen_two_point_values() {
        // Right quad factors and diagonal parts fixed by expanding the
        // recursion over the one-point values by hand.
        let mut engine = TwoPointEngine::new();
        let cases: [(TwoPointKey, [i64; 4], [i64; 4]); 6] = [
            (key(TwoPointTag::A1A1, 1, 0, 0, 0), [3, 1, 0, 0], [-28, -13, 0, 0]),
            (key(TwoPointTag::A1Pa2, 0, 0, 0, 0), [12, 12, 2, 2], [-240, -288, -72, -24]),
            (key(TwoPointTag::A1Pa2, 0, 0, 0, 1), [10, 16, 5, 1], [-180, -300, -108, -12]),
            (key(TwoPointTag::A1Pa3, 0, 0, 0, 0), [50, 64, 17, 5], [-1260, -1820, -596, -60]),
            (key(TwoPointTag::A1Pd4, 0, 0, 0, 1), [21, 42, 17, 5], [-560, -1148, -508, -100]),
            (key(TwoPointTag::A1Pd4, 0, 1, 0, 0), [0, 18, 12, 0], [0, -420, -312, 0]),
        ];
        for (k, right, lin) in cases {
            let v = engine.n_two_point(k).unwrap();
            assert_eq!(v.factor_quad_through(&node()), Some(one(right)), "quad factor at {k:?}");
            assert_eq!(v.lin(), &one(lin), "diagonal part at {k:?}");
        }
    }

    #[test]
    fn pair_wrapper_divides_the_d4_cover() {
        let mut engine = TwoPointEngine::new();
        let raw = engine.n_two_point(key(TwoPointTag::A1Pd4, 0, 0, 0, 0)).unwrap();
        let divided = engine.n_pair(Singularity::D4).unwrap();
        assert_eq!(raw.scaled(&Rational::new(1.into(), 3.into())), divided);
        assert!(divided.is_integral());
    }

    #[test]
    fn pair_wrapper_rejects_codimension_seven_partners() {
        let mut engine = TwoPointEngine::new();
        for s in [Singularity::A7, Singularity::D7, Singularity::E7] {
            assert_eq!(engine.n_pair(s), Err(EngineError::InvalidPairPartner { sing: s }));
        }
    }

    #[test]
    fn node_a6_with_positive_theta_propagates_the_a7_domain_error() {
        let mut engine = TwoPointEngine::new();
        let k = key(TwoPointTag::A1Pa6, 0, 0, 0, 1);
        assert_eq!(
            engine.n_two_point(k),
            Err(EngineError::UnsupportedTheta { tag: "PA7", theta: 1 }),
        );
    }

    #[test]
    fn deep_theta_chains_do_not_exhaust_the_stack() {
        let mut engine = TwoPointEngine::new();
        let v = engine.n_two_point(key(TwoPointTag::A1Pa2, 0, 0, 0, 200)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn memoization_is_idempotent() {
        let mut engine = TwoPointEngine::new();
        let first = engine.n_pair(Singularity::E6).unwrap();
        let steps = engine.computed_steps();
        let one_point_steps = engine.one_point().computed_steps();
        let second = engine.n_pair(Singularity::E6).unwrap();
        assert_eq!(first, second);
        assert_eq!(engine.computed_steps(), steps);
        assert_eq!(engine.one_point().computed_steps(), one_point_steps);
    }

    #[test]
    fn alternate_a3_correction_is_observable() {
        let mut a = TwoPointEngine::new();
        let mut b = TwoPointEngine::with_variants(RecursionVariants {
            a1pa3: A1Pa3Correction::Pa5,
            ..RecursionVariants::default()
        });
        let ka = key(TwoPointTag::A1Pa3, 0, 0, 0, 0);
        assert_ne!(a.n_two_point(ka).unwrap(), b.n_two_point(ka).unwrap());
        // The A2 family sits below the switch and is unaffected.
        let k2 = key(TwoPointTag::A1Pa2, 0, 0, 0, 0);
        assert_eq!(a.n_two_point(k2).unwrap(), b.n_two_point(k2).unwrap());
    }

    #[test]
    fn theorem_keys_separate_table_closure_from_extrapolation() {
        let mut engine = TwoPointEngine::new();
        let table_key = key(TwoPointTag::A1A1, 0, 0, 0, 0);
        assert!(engine.is_theorem_key(&table_key));
        let far = key(TwoPointTag::A1Pe6, 2, 2, 2, 2);
        assert!(!engine.is_theorem_key(&far));
        // Extrapolated keys still evaluate (to zero here, by degree).
        assert!(engine.n_two_point(far).unwrap().is_zero());
    }
}
