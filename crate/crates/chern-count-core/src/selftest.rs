//! Deterministic verification suite.
//!
//! Seven independent checks, shared between the library's acceptance tests
//! and the command-line `selftest` command.  Each check either passes or
//! reports a precise failure message; nothing here is randomized except the
//! property check, which draws from a fixed-seed generator and is therefore
//! reproducible bit for bit.
//!
//! The published one- and two-point tables appear here (and only here and in
//! the test suite): the engines themselves derive every value from the
//! recursions alone.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::chern_ring::{FormalPolynomial, FormatStyle, OnePointClass, SurfaceGeometry, TwoPointClass};
use crate::error::EngineError;
use crate::singularity::Singularity;
use crate::strata_engine::{OnePointEngine, Pa7Variant, StratumKey, StratumTag};
use crate::surface_eval::{count, CountTarget, SurfaceSpec};
use crate::two_point_engine::{A1Pa3Correction, A1Pd4Correction, RecursionVariants, TwoPointEngine, TwoPointKey, TwoPointTag};
use crate::Rational;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// Stable machine-readable check name.
    pub name: &'static str,
    /// Whether the check passed.
    pub passed: bool,
    /// `"ok"`, or a precise failure message.
    pub detail: String,
}

/// Number of pseudo-random cases drawn by the property check.
pub const PROPERTY_CASES: u32 = 100;

/// The published coefficient vectors of the thirteen one-point formulas,
/// in basis order `(c1^2, c1 x1, x1^2, x2)`.
pub fn expected_one_point(s: Singularity) -> OnePointClass {
    let coeffs = match s {
        Singularity::A1 => [3, 2, 0, 1],
        Singularity::A2 => [12, 12, 2, 2],
        Singularity::A3 => [50, 64, 17, 5],
        Singularity::A4 => [180, 280, 100, 0],
        Singularity::A5 => [630, 1140, 498, -60],
        Singularity::A6 => [2212, 4515, 2289, -406],
        Singularity::A7 => [7812, 17600, 10022, -2058],
        Singularity::D4 => [15, 20, 5, 5],
        Singularity::D5 => [84, 132, 44, 20],
        Singularity::D6 => [224, 406, 168, 28],
        Singularity::D7 => [720, 1472, 720, 0],
        Singularity::E6 => [84, 147, 57, 18],
        Singularity::E7 => [252, 488, 217, 42],
    };
    OnePointClass::from_integers(coeffs)
}

/// The published flattened polynomials of the ten node + singularity
/// formulas, as `((a, b, c), coefficient)` terms for `c1^a x1^b x2^c`.
pub fn expected_two_point_flattened(partner: Singularity) -> Option<FormalPolynomial> {
    #[rustfmt::skip]
    let terms: &[((u32, u32, u32), i64)] = match partner {
        Singularity::A1 => &[
            ((4, 0, 0), 9), ((3, 1, 0), 12), ((2, 2, 0), 4), ((2, 0, 1), 6),
            ((1, 1, 1), 4), ((0, 0, 2), 1), ((2, 0, 0), -42), ((1, 1, 0), -39),
            ((0, 2, 0), -6), ((0, 0, 1), -7),
        ],
        Singularity::A2 => &[
            ((4, 0, 0), 36), ((3, 1, 0), 60), ((2, 2, 0), 30), ((1, 3, 0), 4),
            ((2, 0, 1), 18), ((1, 1, 1), 16), ((0, 2, 1), 2), ((0, 0, 2), 2),
            ((2, 0, 0), -240), ((1, 1, 0), -288), ((0, 2, 0), -72), ((0, 0, 1), -24),
        ],
        Singularity::A3 => &[
            ((4, 0, 0), 150), ((3, 1, 0), 292), ((2, 2, 0), 179), ((1, 3, 0), 34),
            ((2, 0, 1), 65), ((1, 1, 1), 74), ((0, 2, 1), 17), ((0, 0, 2), 5),
            ((2, 0, 0), -1260), ((1, 1, 0), -1820), ((0, 2, 0), -596), ((0, 0, 1), -60),
        ],
        Singularity::A4 => &[
            ((4, 0, 0), 540), ((3, 1, 0), 1200), ((2, 2, 0), 860), ((1, 3, 0), 200),
            ((2, 0, 1), 180), ((1, 1, 1), 280), ((0, 2, 1), 100),
            ((2, 0, 0), -5460), ((1, 1, 0), -9240), ((0, 2, 0), -3740), ((0, 0, 1), 200),
        ],
        Singularity::A5 => &[
            ((4, 0, 0), 1890), ((3, 1, 0), 4680), ((2, 2, 0), 3774), ((1, 3, 0), 996),
            ((2, 0, 1), 450), ((1, 1, 1), 1020), ((0, 2, 1), 498), ((0, 0, 2), -60),
            ((2, 0, 0), -22428), ((1, 1, 0), -43197), ((0, 2, 0), -20535), ((0, 0, 1), 2754),
        ],
        Singularity::A6 => &[
            ((4, 0, 0), 6636), ((3, 1, 0), 17969), ((2, 2, 0), 15897), ((1, 3, 0), 4578),
            ((2, 0, 1), 994), ((1, 1, 1), 3703), ((0, 2, 1), 2289), ((0, 0, 2), -406),
            ((2, 0, 0), -90468), ((1, 1, 0), -193816), ((0, 2, 0), -104503), ((0, 0, 1), 18522),
        ],
        Singularity::D4 => &[
            ((4, 0, 0), 45), ((3, 1, 0), 90), ((2, 2, 0), 55), ((1, 3, 0), 10),
            ((2, 0, 1), 30), ((1, 1, 1), 30), ((0, 2, 1), 5), ((0, 0, 2), 5),
            ((2, 0, 0), -420), ((1, 1, 0), -624), ((0, 2, 0), -196), ((0, 0, 1), -100),
        ],
        Singularity::D5 => &[
            ((4, 0, 0), 252), ((3, 1, 0), 564), ((2, 2, 0), 396), ((1, 3, 0), 88),
            ((2, 0, 1), 144), ((1, 1, 1), 172), ((0, 2, 1), 44), ((0, 0, 2), 20),
            ((2, 0, 0), -2688), ((1, 1, 0), -4564), ((0, 2, 0), -1744), ((0, 0, 1), -456),
        ],
        Singularity::D6 => &[
            ((4, 0, 0), 672), ((3, 1, 0), 1666), ((2, 2, 0), 1316), ((1, 3, 0), 336),
            ((2, 0, 1), 308), ((1, 1, 1), 462), ((0, 2, 1), 168), ((0, 0, 2), 28),
            ((2, 0, 0), -8316), ((1, 1, 0), -16008), ((0, 2, 0), -7281), ((0, 0, 1), -546),
        ],
        Singularity::E6 => &[
            ((4, 0, 0), 252), ((3, 1, 0), 609), ((2, 2, 0), 465), ((1, 3, 0), 114),
            ((2, 0, 1), 138), ((1, 1, 1), 183), ((0, 2, 1), 57), ((0, 0, 2), 18),
            ((2, 0, 0), -2916), ((1, 1, 0), -5400), ((0, 2, 0), -2295), ((0, 0, 1), -486),
        ],
        Singularity::A7 | Singularity::D7 | Singularity::E7 => return None,
    };
    let mut p = FormalPolynomial::zero();
    for &(exps, c) in terms {
        p.add_term(exps, Rational::from_integer(c.into()));
    }
    Some(p)
}

fn render(class: &OnePointClass) -> String {
    class.to_polynomial().format(FormatStyle::Text)
}

fn engine_err(e: EngineError) -> String {
    format!("engine error: {e}")
}

/// Check: the derived one-point formulas equal the published table.
pub fn check_one_point_table() -> Result<(), String> {
    let mut engine = OnePointEngine::new();
    for s in Singularity::ALL {
        let got = engine.n_singularity(s).map_err(engine_err)?;
        let want = expected_one_point(s);
        if got != want {
            return Err(format!(
                "N({s}) derived as [{}] but published as [{}]",
                render(&got),
                render(&want),
            ));
        }
    }
    Ok(())
}

/// Check: the derived two-point formulas flatten to the published table.
pub fn check_two_point_table() -> Result<(), String> {
    let mut engine = TwoPointEngine::new();
    for s in Singularity::PAIR_PARTNERS {
        let got = engine.n_pair(s).map_err(engine_err)?.flatten();
        let want = expected_two_point_flattened(s).expect("pair partner");
        if got != want {
            return Err(format!(
                "N(A1 {s}) flattens to [{}] but published as [{}]",
                got.format(FormatStyle::Text),
                want.format(FormatStyle::Text),
            ));
        }
    }
    Ok(())
}

/// Check: on the plane, the node and cusp formulas reproduce the classical
/// closed forms `3(d-1)^2` and `12(d-1)(d-2)` for all degrees 1..=20.
pub fn check_projective_plane_counts() -> Result<(), String> {
    let mut engine = TwoPointEngine::new();
    for d in 1..=20u32 {
        let surface = SurfaceSpec::projective_plane(d);
        let di = i64::from(d);
        let cases = [
            (Singularity::A1, 3 * (di - 1) * (di - 1)),
            (Singularity::A2, 12 * (di - 1) * (di - 2)),
        ];
        for (s, closed_form) in cases {
            let got = count(&mut engine, CountTarget::Single(s), &surface).map_err(engine_err)?.value;
            if got != Rational::from_integer(closed_form.into()) {
                return Err(format!(
                    "count({s}, plane degree {d}) = {got}, classical closed form gives {closed_form}"
                ));
            }
        }
    }
    Ok(())
}

/// Check: the `D4`-cover counts are divisible by 3, coefficient by
/// coefficient, in both theories.
pub fn check_third_root_divisibility() -> Result<(), String> {
    let mut engine = TwoPointEngine::new();
    let one_key = StratumKey::new(StratumTag::Pd4, 0, 0, 0, 0).map_err(engine_err)?;
    let one_value = engine.one_point_mut().n_stratum(one_key).map_err(engine_err)?;
    if !one_value.is_integral() || one_value.exact_third().is_none() {
        return Err(format!("N(PD4) = [{}] is not divisible by 3", render(&one_value)));
    }
    let two_key = TwoPointKey::new(TwoPointTag::A1Pd4, 0, 0, 0, 0).map_err(engine_err)?;
    let two_value = engine.n_two_point(two_key).map_err(engine_err)?;
    if !two_value.is_integral() || two_value.exact_third().is_none() {
        return Err("N(A1 PD4) is not divisible by 3 on both parts".to_string());
    }
    // The wrappers must therefore succeed and return integral classes.
    let d4 = engine.one_point_mut().n_singularity(Singularity::D4).map_err(engine_err)?;
    let pair = engine.n_pair(Singularity::D4).map_err(engine_err)?;
    if !d4.is_integral() || !pair.is_integral() {
        return Err("divided D4 counts are not integral".to_string());
    }
    Ok(())
}

/// Check: every stratum query of index degree 3..=6 vanishes, for both
/// engines, across `theta <= 4` (families restricted to `theta = 0` are
/// swept there, and their positive-`theta` rejection is asserted).
pub fn check_degree_vanishing() -> Result<(), String> {
    let mut tuples: Vec<(u32, u32, u32)> = Vec::new();
    for n in 0..=6u32 {
        for m in 0..=6u32 {
            for p in 0..=3u32 {
                if (3..=6).contains(&(n + m + 2 * p)) {
                    tuples.push((n, m, p));
                }
            }
        }
    }
    let mut engine = TwoPointEngine::new();
    for tag in StratumTag::ALL {
        let thetas: &[u32] = if tag.theta_must_vanish() { &[0] } else { &[0, 1, 2, 3, 4] };
        for &(n, m, p) in &tuples {
            for &t in thetas {
                let key = StratumKey::new(tag, n, m, p, t).map_err(engine_err)?;
                let v = engine.one_point_mut().n_stratum(key).map_err(engine_err)?;
                if !v.is_zero() {
                    return Err(format!("N({}, {n},{m},{p}; theta={t}) = [{}], expected 0", tag.name(), render(&v)));
                }
            }
        }
    }
    for tag in TwoPointTag::ALL {
        // The node+A6 family consumes the theta-0-only A7 step, so its sweep
        // is also restricted to theta = 0.
        let thetas: &[u32] = if tag.theta_must_vanish() || tag == TwoPointTag::A1Pa6 { &[0] } else { &[0, 1, 2, 3, 4] };
        for &(n, m, p) in &tuples {
            for &t in thetas {
                let key = TwoPointKey::new(tag, n, m, p, t).map_err(engine_err)?;
                let v = engine.n_two_point(key).map_err(engine_err)?;
                if !v.is_zero() {
                    return Err(format!("N({}, {n},{m},{p}; theta={t}) is nonzero, expected 0", tag.name()));
                }
            }
        }
    }
    // The restricted families reject positive theta instead of extending the
    // sweep silently.
    if StratumKey::new(StratumTag::Pa7, 0, 0, 0, 1).is_ok() {
        return Err("the A7 step accepted theta = 1".to_string());
    }
    if TwoPointKey::new(TwoPointTag::A1A1, 0, 0, 0, 1).is_ok() {
        return Err("the node pair family accepted theta = 1".to_string());
    }
    match engine.n_two_point(TwoPointKey::new(TwoPointTag::A1Pa6, 0, 0, 0, 1).map_err(engine_err)?) {
        Err(EngineError::UnsupportedTheta { tag: "PA7", theta: 1 }) => {}
        other => return Err(format!("node+A6 at theta = 1 returned {other:?}, expected the A7 domain error")),
    }
    Ok(())
}

/// The three published values the variant lock-in watches: whether each is
/// reproduced under the given readings.  An engine error counts as a
/// deviation — a reading that cannot even produce an integral count
/// certainly fails to reproduce the published one.  (Concretely, the
/// alternate node+A3 correction destroys the divisibility by 3 of the
/// node+D4 count, so its `D4` observable errors rather than deviating in
/// value.)
fn lock_in_observables(variants: RecursionVariants) -> [bool; 3] {
    let mut engine = TwoPointEngine::with_variants(variants);
    let a7 = engine.one_point_mut().n_singularity(Singularity::A7);
    let a1a3 = engine.n_pair(Singularity::A3);
    let a1d4 = engine.n_pair(Singularity::D4);
    [
        a7.is_ok_and(|v| v == expected_one_point(Singularity::A7)),
        a1a3.is_ok_and(|v| v.flatten() == expected_two_point_flattened(Singularity::A3).expect("pair partner")),
        a1d4.is_ok_and(|v| v.flatten() == expected_two_point_flattened(Singularity::D4).expect("pair partner")),
    ]
}

/// Check: the default variant readings reproduce the published values, and
/// toggling each alternate reading alone makes at least one of `N(A7)`,
/// `N(A1 A3)`, `N(A1 D4)` deviate.
///
/// The third leg demands the impossible: the two readings of the node+`D4`
/// correction denote the same quantity (the marked direction on a `D5` germ
/// is unique, so its stratum covers the locus once and the one-third factor
/// of the calculus attaches only to `D4`), hence that toggle cannot change
/// any published value.  The check states the requirement faithfully and
/// accordingly reports this leg as failed, with the explanation above.
pub fn check_variant_lock_in() -> Result<(), String> {
    let defaults = lock_in_observables(RecursionVariants::default());
    if defaults != [true, true, true] {
        return Err(format!(
            "default variants fail to reproduce the published values (A7, A1 A3, A1 D4 matches: {defaults:?})"
        ));
    }
    let toggles: [(&str, RecursionVariants); 3] = [
        (
            "A7 reading",
            RecursionVariants { pa7: Pa7Variant::D6E6Corrections, ..RecursionVariants::default() },
        ),
        (
            "node+A3 correction reading",
            RecursionVariants { a1pa3: A1Pa3Correction::Pa5, ..RecursionVariants::default() },
        ),
        (
            "node+D4 correction reading",
            RecursionVariants { a1pd4: A1Pd4Correction::D5Indexed, ..RecursionVariants::default() },
        ),
    ];
    for (label, variants) in toggles {
        let observables = lock_in_observables(variants);
        let deviates = observables.contains(&false);
        if !deviates {
            return Err(format!(
                "toggling the {label} alone left N(A7), N(A1 A3) and N(A1 D4) all at their published \
                 values; for the node+D4 correction this is a proved coincidence (both readings denote \
                 the same quantity: the marked direction on a D5 germ is unique, so stratum-level and \
                 singularity-level counts agree), so no test can observe that switch"
            ));
        }
    }
    Ok(())
}

fn random_class(rng: &mut SmallRng) -> OnePointClass {
    OnePointClass::from_integers([
        rng.gen_range(-9i64..=9),
        rng.gen_range(-9i64..=9),
        rng.gen_range(-9i64..=9),
        rng.gen_range(-9i64..=9),
    ])
}

fn random_geometry(rng: &mut SmallRng) -> SurfaceGeometry {
    SurfaceGeometry::from_integers(
        rng.gen_range(-20i64..=20),
        rng.gen_range(-20i64..=20),
        rng.gen_range(-20i64..=20),
        rng.gen_range(-20i64..=20),
    )
}

/// Check: structural properties on `PROPERTY_CASES` fixed-seed random cases.
///
/// Per case: bilinearity of evaluation; tensor evaluation factoring into dot
/// products; the flattening collision family (distinct classes, equal
/// flattenings, separated by evaluation); rank-at-most-1 factorization of
/// engine values through the node class; `theta` elimination confluence for
/// the first projectivized family; and memo idempotence of the step counter.
pub fn check_randomized_properties() -> Result<(), String> {
    let mut rng = SmallRng::seed_from_u64(0x00c1_c0de_5eed_0001);
    let mut engine = TwoPointEngine::new();
    let node = OnePointEngine::n_a1(0, 0, 0);
    for case in 0..PROPERTY_CASES {
        // Bilinearity and tensor factorization.
        let u = random_class(&mut rng);
        let v = random_class(&mut rng);
        let g = random_geometry(&mut rng);
        let sum_eval = (u.clone() + v.clone()).evaluate(&g);
        if sum_eval != u.evaluate(&g) + v.evaluate(&g) {
            return Err(format!("case {case}: evaluation is not additive"));
        }
        if TwoPointClass::tensor(&u, &v).evaluate(&g) != u.evaluate(&g) * v.evaluate(&g) {
            return Err(format!("case {case}: tensor evaluation does not factor"));
        }

        // Flattening collisions: k (c1 x1)(x)(c1 x1) versus k (c1^2)(x)(x1^2).
        let k = Rational::from_integer(rng.gen_range(1i64..=50).into());
        let t1 = TwoPointClass::tensor(&OnePointClass::from_integers([0, 1, 0, 0]), &OnePointClass::from_integers([0, 1, 0, 0])).scaled(&k);
        let t2 = TwoPointClass::tensor(&OnePointClass::from_integers([1, 0, 0, 0]), &OnePointClass::from_integers([0, 0, 1, 0])).scaled(&k);
        let witness = SurfaceGeometry::from_integers(1, 0, 2, 0);
        if t1 == t2 || t1.flatten() != t2.flatten() || t1.evaluate(&witness) == t2.evaluate(&witness) {
            return Err(format!("case {case}: flattening collision family misbehaved"));
        }

        // Rank-at-most-1 factorization of a random two-point value.
        let tag = TwoPointTag::ALL[rng.gen_range(0..TwoPointTag::ALL.len())];
        let theta = if tag.theta_must_vanish() || tag == TwoPointTag::A1Pa6 { 0 } else { rng.gen_range(0u32..=2) };
        let key = TwoPointKey::new(tag, rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=1), theta)
            .map_err(engine_err)?;
        let value = engine.n_two_point(key).map_err(engine_err)?;
        if value.factor_quad_through(&node).is_none() {
            return Err(format!("case {case}: quad part of {key:?} does not factor through the node class"));
        }

        // Theta elimination confluence: one two-step elimination order
        // versus the other, on the first projectivized family.
        let (n, m, p) = (rng.gen_range(0u32..=2), rng.gen_range(0u32..=2), rng.gen_range(0u32..=1));
        let t = rng.gen_range(4u32..=6);
        let one_point = engine.one_point_mut();
        let direct = one_point
            .n_stratum(StratumKey::new(StratumTag::Pa2, n, m, p, t).map_err(engine_err)?)
            .map_err(engine_err)?;
        let expanded = one_point
            .n_stratum(StratumKey::new(StratumTag::Pa2, n, m + 2, p, t - 2).map_err(engine_err)?)
            .map_err(engine_err)?
            - one_point
                .n_stratum(StratumKey::new(StratumTag::Pa2, n, m + 1, p + 1, t - 3).map_err(engine_err)?)
                .map_err(engine_err)?
                .scaled(&Rational::from_integer(2.into()))
            + one_point
                .n_stratum(StratumKey::new(StratumTag::Pa2, n, m, p + 2, t - 4).map_err(engine_err)?)
                .map_err(engine_err)?;
        if direct != expanded {
            return Err(format!("case {case}: theta elimination is not confluent at ({n},{m},{p};{t})"));
        }

        // Memo idempotence of the step counters.
        let steps = (engine.computed_steps(), engine.one_point().computed_steps());
        let again = engine.n_two_point(key).map_err(engine_err)?;
        if again != value || (engine.computed_steps(), engine.one_point().computed_steps()) != steps {
            return Err(format!("case {case}: re-query of {key:?} recomputed or changed"));
        }
    }
    Ok(())
}

fn report(name: &'static str, outcome: Result<(), String>) -> CheckReport {
    match outcome {
        Ok(()) => CheckReport { name, passed: true, detail: String::from("ok") },
        Err(detail) => CheckReport { name, passed: false, detail },
    }
}

/// Run all seven checks and collect their reports, in fixed order.
pub fn run_all() -> Vec<CheckReport> {
    alloc::vec![
        report("one-point-formula-table", check_one_point_table()),
        report("two-point-formula-table", check_two_point_table()),
        report("projective-plane-counts", check_projective_plane_counts()),
        report("third-root-divisibility", check_third_root_divisibility()),
        report("degree-vanishing-sweep", check_degree_vanishing()),
        report("variant-lock-in", check_variant_lock_in()),
        report("randomized-properties", check_randomized_properties()),
    ]
}

/// `true` iff every report in the slice passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
