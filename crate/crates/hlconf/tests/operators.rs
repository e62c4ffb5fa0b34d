use hlconf::operators::{check_morphism, deformed_bracket, verify_operator, OperatorKind};
use hlconf::poly::{rat, ratio};
use hlconf::samples::{cur_leibniz2, cur_nijenhuis, virasoro};
use hlconf::structure::verify_hom_leibniz;
use hlconf::PdMap;
use proptest::prelude::*;

/// `N e1 = a e1`, `N e2 = b(∂) e1 + a e2` on the current algebra, with
/// random `a` and random `b` of degree ≤ 2.
fn cur_operator() -> impl Strategy<Value = PdMap> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(a, b0, b1, b2)| cur_nijenhuis(a, &format!("({b0}) + ({b1})*D + ({b2})*D^2")))
}

fn scalar() -> impl Strategy<Value = PdMap> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| PdMap::scalar(1, ratio(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deformed_bracket_is_hom_leibniz(n in cur_operator(), c in scalar()) {
        prop_assert!(verify_hom_leibniz(&deformed_bracket(&cur_leibniz2(), &n, true).unwrap()).passed());
        prop_assert!(verify_hom_leibniz(&deformed_bracket(&virasoro(), &c, true).unwrap()).passed());
    }

    #[test]
    fn operator_stays_nijenhuis_after_deformation(n in cur_operator(), c in scalar()) {
        let cur = deformed_bracket(&cur_leibniz2(), &n, true).unwrap();
        prop_assert!(verify_operator(&cur, &n, &OperatorKind::Nijenhuis).unwrap().passed());
        let vir = deformed_bracket(&virasoro(), &c, true).unwrap();
        prop_assert!(verify_operator(&vir, &c, &OperatorKind::Nijenhuis).unwrap().passed());
    }

    #[test]
    fn operator_is_morphism_to_original(n in cur_operator(), c in scalar()) {
        let base = cur_leibniz2();
        let def = deformed_bracket(&base, &n, true).unwrap();
        prop_assert!(check_morphism(&n, &def, Some(&n), &base, Some(&n)).unwrap().passed());
        let v = virasoro();
        let def = deformed_bracket(&v, &c, true).unwrap();
        prop_assert!(check_morphism(&c, &def, Some(&c), &v, Some(&c)).unwrap().passed());
    }

    #[test]
    fn double_deformation_multiplies_scalars(c in -4i64..=4, d in -4i64..=4) {
        let v = virasoro();
        let twice = deformed_bracket(
            &deformed_bracket(&v, &PdMap::scalar(1, rat(c)), true).unwrap(),
            &PdMap::scalar(1, rat(d)),
            true,
        )
        .unwrap();
        let once = deformed_bracket(&v, &PdMap::scalar(1, rat(c * d)), true).unwrap();
        prop_assert_eq!(twice.structure, once.structure);
    }

    #[test]
    fn rb_and_mrb_agree_at_weight_zero(n in cur_operator()) {
        let cur = cur_leibniz2();
        let rb = verify_operator(&cur, &n, &OperatorKind::RotaBaxter(rat(0))).unwrap();
        let mrb = verify_operator(&cur, &n, &OperatorKind::ModifiedRotaBaxter(rat(0))).unwrap();
        prop_assert_eq!(rb.violations, mrb.violations);
    }
}
