use hlconf::cohomology::{
    coboundary_hn, coboundary_hn_via_deformation, coboundary_hnla, coboundary_homl, coboundary_homl_leading2, phi_map,
    random_cochain, HnlaPair, PhiFormula,
};
use hlconf::operators::{verify_operator, OperatorKind};
use hlconf::poly::{parse_poly, rat};
use hlconf::representation::{adjoint_rep, verify_nijenhuis_representation};
use hlconf::samples::{cur_leibniz2, cur_nijenhuis, virasoro};
use hlconf::structure::{verify_hom_leibniz, ConformalAlgebra, PdMap};
use hlconf::Element;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cur of the 2-dim Leibniz algebra, twisted by α = diag(1, −1).
fn cur_twisted() -> ConformalAlgebra {
    let base = cur_leibniz2();
    let alpha = PdMap::from_rows(vec![
        vec![parse_poly("1").unwrap(), parse_poly("0").unwrap()],
        vec![parse_poly("0").unwrap(), parse_poly("-1").unwrap()],
    ])
    .unwrap();
    ConformalAlgebra::new("cur_twisted", base.basis_names.clone(), base.structure.clone(), alpha).unwrap()
}

fn algebras() -> Vec<ConformalAlgebra> {
    vec![virasoro(), cur_leibniz2(), cur_twisted()]
}

#[test]
fn twisted_sample_is_hom_leibniz() {
    assert!(verify_hom_leibniz(&cur_twisted()).passed());
}

#[test]
fn delta_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alg in algebras() {
        let rep = adjoint_rep(&alg);
        for arity in 1..=2 {
            for _ in 0..6 {
                let f = random_cochain(&mut rng, arity, alg.rank(), rep.rank(), 2).unwrap();
                let d1 = coboundary_homl(&f, &alg, &rep).unwrap();
                let d2 = coboundary_homl(&d1, &alg, &rep).unwrap();
                assert!(d2.is_zero(), "{} arity {}", alg.name, arity);
            }
        }
    }
}

#[test]
fn delta_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = cur_twisted();
    let rep = adjoint_rep(&alg);
    let f = random_cochain(&mut rng, 2, 2, 2, 2).unwrap();
    let g = random_cochain(&mut rng, 2, 2, 2, 2).unwrap();
    let c = rat(-3);
    let lhs = coboundary_homl(&f.scale(&c).add(&g), &alg, &rep).unwrap();
    let rhs = coboundary_homl(&f, &alg, &rep)
        .unwrap()
        .scale(&c)
        .add(&coboundary_homl(&g, &alg, &rep).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn leading_slot_formula_breaks_delta_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = virasoro();
    let rep = adjoint_rep(&alg);
    let mut nonzero = 0;
    for _ in 0..5 {
        let f = random_cochain(&mut rng, 1, 1, 1, 2).unwrap();
        let d1 = coboundary_homl(&f, &alg, &rep).unwrap();
        if !coboundary_homl_leading2(&d1, &alg, &rep).unwrap().is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn hn_matches_delta_over_deformation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alg = cur_leibniz2();
    for n in [
        cur_nijenhuis(1, "D"),
        cur_nijenhuis(2, "D^2 + 1"),
        cur_nijenhuis(0, "1"),
    ] {
        let rep = adjoint_rep(&alg).with_n_m(n.clone()).unwrap();
        for arity in 1..=2 {
            let g = random_cochain(&mut rng, arity, 2, 2, 2).unwrap();
            assert_eq!(
                coboundary_hn(&g, &alg, &n, &rep).unwrap(),
                coboundary_hn_via_deformation(&g, &alg, &n, &rep).unwrap()
            );
        }
    }
}

#[test]
fn hn_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let alg = cur_leibniz2();
    let n = cur_nijenhuis(1, "D + 2");
    let rep = adjoint_rep(&alg).with_n_m(n.clone()).unwrap();
    for _ in 0..4 {
        let g = random_cochain(&mut rng, 1, 2, 2, 2).unwrap();
        let d1 = coboundary_hn(&g, &alg, &n, &rep).unwrap();
        assert!(coboundary_hn(&d1, &alg, &n, &rep).unwrap().is_zero());
    }
}

fn square_failures(alg: &ConformalAlgebra, n: &PdMap, formula: PhiFormula, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep = adjoint_rep(alg).with_n_m(n.clone()).unwrap();
    let mut failures = 0;
    for arity in 1..=2 {
        for _ in 0..4 {
            let f = random_cochain(&mut rng, arity, alg.rank(), rep.rank(), 2).unwrap();
            let lhs = phi_map(&coboundary_homl(&f, alg, &rep).unwrap(), n, &rep, formula).unwrap();
            let rhs = coboundary_hn(&phi_map(&f, n, &rep, formula).unwrap(), alg, n, &rep).unwrap();
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    failures
}

#[test]
fn square_commutes_for_scalar_n() {
    for alg in algebras() {
        for c in [1, 2, -3] {
            let n = PdMap::scalar(alg.rank(), rat(c));
            assert_eq!(
                square_failures(&alg, &n, PhiFormula::Alternating, 1),
                0,
                "{} c={}",
                alg.name,
                c
            );
        }
    }
}

#[test]
fn square_commutes_for_nilpotent_n() {
    assert_eq!(
        square_failures(&cur_leibniz2(), &cur_nijenhuis(0, "1"), PhiFormula::Alternating, 2),
        0
    );
}

#[test]
fn square_lemma_fails_for_nonscalar_n() {
    let alg = cur_leibniz2();
    let n = cur_nijenhuis(1, "D");
    assert!(verify_operator(&alg, &n, &OperatorKind::Nijenhuis).unwrap().passed());
    let rep = adjoint_rep(&alg).with_n_m(n.clone()).unwrap();
    assert!(verify_nijenhuis_representation(&alg, &n, &rep).unwrap().passed());
    assert!(square_failures(&alg, &n, PhiFormula::Alternating, 4) > 0);
}

#[test]
fn truncated_phi_breaks_square_for_scalar_n() {
    let alg = virasoro();
    let n = PdMap::scalar(1, rat(2));
    assert!(square_failures(&alg, &n, PhiFormula::Truncated, 6) > 0);
}

#[test]
fn d_hnla_squares_to_zero_for_scalar_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for alg in algebras() {
        let n = PdMap::scalar(alg.rank(), rat(2));
        let rep = adjoint_rep(&alg).with_n_m(n.clone()).unwrap();
        for arity in 1..=2 {
            for _ in 0..3 {
                let f = random_cochain(&mut rng, arity, alg.rank(), rep.rank(), 2).unwrap();
                let g = if arity > 1 {
                    Some(random_cochain(&mut rng, arity - 1, alg.rank(), rep.rank(), 2).unwrap())
                } else {
                    None
                };
                let pair = HnlaPair::new(f, g).unwrap();
                let d1 = coboundary_hnla(&pair, &alg, &n, &rep, PhiFormula::Alternating).unwrap();
                let d2 = coboundary_hnla(&d1, &alg, &n, &rep, PhiFormula::Alternating).unwrap();
                assert!(d2.is_zero(), "{} arity {}", alg.name, arity);
            }
        }
    }
}

#[test]
fn cochain_eval_is_sesquilinear_in_slots() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let f = random_cochain(&mut rng, 2, 1, 1, 2).unwrap();
    let l = Element::basis(1, 0);
    let d = Element::new(vec![parse_poly("D").unwrap()]);
    let lam = [hlconf::MultiPoly::lam(1)];
    let base = f.eval(&[l.clone(), l.clone()], &lam);
    let lam1 = parse_poly("l1").unwrap();
    let shifted = parse_poly("D + l1").unwrap();
    assert_eq!(f.eval(&[d.clone(), l.clone()], &lam), base.mul_poly(&(-&lam1)));
    assert_eq!(f.eval(&[l, d], &lam), base.mul_poly(&shifted));
}
