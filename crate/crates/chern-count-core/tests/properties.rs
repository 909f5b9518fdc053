//! Randomized structural properties of the class containers and the
//! engines, on top of the fixed-seed property check built into the library.

use std::sync::{Mutex, OnceLock};

use proptest::prelude::*;

use chern_count_core::{
    OnePointClass, OnePointEngine, Rational, SurfaceGeometry, TwoPointClass, TwoPointEngine,
    TwoPointKey, TwoPointTag,
};

/// One engine shared across cases: the memo makes re-queries cheap, and the
/// properties under test are exactly the ones that guarantee sharing is
/// sound.
fn shared_engine() -> &'static Mutex<TwoPointEngine> {
    static ENGINE: OnceLock<Mutex<TwoPointEngine>> = OnceLock::new();
    ENGINE.get_or_init(|| Mutex::new(TwoPointEngine::new()))
}

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

prop_compose! {
    fn arb_class()(coeffs in prop::array::uniform4(-50i64..=50)) -> OnePointClass {
        OnePointClass::from_integers(coeffs)
    }
}

prop_compose! {
    fn arb_geometry()(c in prop::array::uniform4(-30i64..=30)) -> SurfaceGeometry {
        SurfaceGeometry::from_integers(c[0], c[1], c[2], c[3])
    }
}

prop_compose! {
    fn arb_key()(
        tag_index in 0..TwoPointTag::ALL.len(),
        n in 0u32..=2,
        m in 0u32..=2,
        p in 0u32..=1,
        t in 0u32..=2,
    ) -> TwoPointKey {
        let tag = TwoPointTag::ALL[tag_index];
        // Families restricted to theta = 0, and the node+A6 family whose
        // recursion consumes the theta-0-only A7 step, stay at theta = 0.
        let theta = if tag.theta_must_vanish() || tag == TwoPointTag::A1Pa6 { 0 } else { t };
        TwoPointKey::new(tag, n, m, p, theta).expect("indices within bounds")
    }
}

proptest! {
    #[test]
    fn evaluation_is_linear(u in arb_class(), v in arb_class(), g in arb_geometry(), k in -20i64..=20) {
        let lhs = (u.clone() + v.scaled(&rational(k))).evaluate(&g);
        let rhs = u.evaluate(&g) + v.evaluate(&g) * rational(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_evaluation_factors_and_is_linear(
        u in arb_class(),
        v in arb_class(),
        w in arb_class(),
        g in arb_geometry(),
        k in -20i64..=20,
    ) {
        let t1 = TwoPointClass::tensor(&u, &v);
        prop_assert_eq!(t1.evaluate(&g), u.evaluate(&g) * v.evaluate(&g));
        let t2 = TwoPointClass::tensor(&u, &w);
        let combo = t1.clone() + t2.scaled(&rational(k));
        prop_assert_eq!(combo.evaluate(&g), t1.evaluate(&g) + t2.evaluate(&g) * rational(k));
    }

    #[test]
    fn flattening_collides_where_evaluation_separates(k in 1i64..=100) {
        // The scaled witness family: k (c1 x1)(x)(c1 x1) and
        // k (c1^2)(x)(x1^2) flatten identically but differ as quadratic
        // classes, and the geometry (1, 0, 2, 0) tells them apart.
        let a = TwoPointClass::tensor(
            &OnePointClass::from_integers([0, 1, 0, 0]),
            &OnePointClass::from_integers([0, 1, 0, 0]),
        )
        .scaled(&rational(k));
        let b = TwoPointClass::tensor(
            &OnePointClass::from_integers([1, 0, 0, 0]),
            &OnePointClass::from_integers([0, 0, 1, 0]),
        )
        .scaled(&rational(k));
        prop_assert_ne!(&a, &b);
        prop_assert_eq!(a.flatten(), b.flatten());
        let witness = SurfaceGeometry::from_integers(1, 0, 2, 0);
        prop_assert_ne!(a.evaluate(&witness), b.evaluate(&witness));
    }

    #[test]
    fn engine_quad_parts_factor_through_the_node(key in arb_key()) {
        let node = OnePointEngine::n_a1(0, 0, 0);
        let mut engine = shared_engine().lock().expect("no poisoned lock");
        let value = engine.n_two_point(key).expect("legal key");
        prop_assert!(value.factor_quad_through(&node).is_some());
    }

    #[test]
    fn memoized_requeries_are_free_and_stable(key in arb_key()) {
        let mut engine = shared_engine().lock().expect("no poisoned lock");
        let first = engine.n_two_point(key).expect("legal key");
        let steps = (engine.computed_steps(), engine.one_point().computed_steps());
        let second = engine.n_two_point(key).expect("legal key");
        prop_assert_eq!(first, second);
        prop_assert_eq!((engine.computed_steps(), engine.one_point().computed_steps()), steps);
    }
}
