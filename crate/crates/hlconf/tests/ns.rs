use hlconf::cohomology::{coboundary_homl, random_map, Cochain};
use hlconf::ns::{
    adjacent_algebra, ns_from_nijenhuis, ns_from_rb, ns_from_twisted_rb, twist_ns_by_morphism,
    twisted_rb_from_nijenhuis, verify_ns_axioms, verify_o_operator, verify_twisted_rb, TwistedRbData,
};
use hlconf::operators::{deformed_bracket, verify_operator, OperatorKind};
use hlconf::poly::{parse_poly, rat};
use hlconf::representation::adjoint_rep;
use hlconf::samples::{cur_leibniz2, cur_nijenhuis, virasoro};
use hlconf::structure::verify_hom_leibniz;
use hlconf::{MultiPoly, PdMap, ProductTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn m(rows: &[&[&str]]) -> PdMap {
    PdMap::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_poly(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn nijenhuis_construction_on_current_algebra() {
    let cur = cur_leibniz2();
    for n in [
        cur_nijenhuis(1, "D"),
        cur_nijenhuis(2, "D^2 - 1"),
        cur_nijenhuis(0, "1"),
    ] {
        let ns = ns_from_nijenhuis(&cur, &n, true).unwrap();
        assert!(verify_ns_axioms(&ns).passed());
        let adj = adjacent_algebra(&ns).unwrap();
        assert!(verify_hom_leibniz(&adj).passed());
        assert_eq!(adj.structure, deformed_bracket(&cur, &n, true).unwrap().structure);
    }
}

#[test]
fn rota_baxter_adjacent_bracket() {
    let v = virasoro();
    for (r, theta) in [(PdMap::identity(1), rat(-1)), (PdMap::scalar(1, rat(-1)), rat(1))] {
        let ns = ns_from_rb(&v, &r, &theta, true).unwrap();
        let x = MultiPoly::x();
        let expect = ProductTable::from_fn(1, 1, 1, |i, j| {
            let (p, q) = (v.basis(i), v.basis(j));
            let mut e = v.bracket(&r.apply(&p), &q, &x);
            e.add_assign(&v.bracket(&p, &r.apply(&q), &x));
            e.add_assign(&v.bracket(&p, &q, &x).scale(&theta));
            e
        });
        assert_eq!(adjacent_algebra(&ns).unwrap().structure, expect);
    }
}

#[test]
fn twist_by_automorphism() {
    let cur = cur_leibniz2();
    let ns = ns_from_nijenhuis(&cur, &PdMap::identity(2), true).unwrap();
    let auto = m(&[&["4", "0"], &["0", "2"]]);
    let tw = twist_ns_by_morphism(&ns, &auto).unwrap();
    assert_eq!(tw.alpha, auto);
    assert!(verify_ns_axioms(&tw).passed());
    assert!(twist_ns_by_morphism(&ns, &m(&[&["1", "0"], &["0", "2"]])).is_err());
}

#[test]
fn phi_cocycle_matches_delta() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for alg in [virasoro(), cur_leibniz2()] {
        let ad = adjoint_rep(&alg);
        for _ in 0..4 {
            let phi = hlconf::cohomology::random_cochain(&mut rng, 2, alg.rank(), alg.rank(), 2).unwrap();
            let data = TwistedRbData::new(
                alg.clone(),
                ad.clone(),
                PdMap::zero(alg.rank(), alg.rank()),
                phi.clone(),
            )
            .unwrap();
            let rep = verify_twisted_rb(&data).unwrap();
            let literal = rep
                .violations
                .iter()
                .filter(|v| v.context.starts_with("phi-cocycle"))
                .count();
            let d = coboundary_homl(&phi, &alg, &ad).unwrap();
            let nonzero = hlconf::cohomology::tuples(alg.rank(), 3)
                .iter()
                .filter(|t| !d.get(t).is_zero())
                .count();
            assert_eq!(literal, nonzero);
        }
    }
}

#[test]
fn o_operator_agrees_with_weight_zero_rota_baxter() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let cur = cur_leibniz2();
    let ad = adjoint_rep(&cur);
    let mut candidates = vec![m(&[&["0", "1"], &["0", "0"]]), PdMap::zero(2, 2), PdMap::identity(2)];
    candidates.extend((0..6).map(|_| random_map(&mut rng, 2, 2, 1)));
    for t in candidates {
        let o = verify_o_operator(&cur, &ad, &t).unwrap();
        let rb = verify_operator(&cur, &t, &OperatorKind::RotaBaxter(rat(0))).unwrap();
        assert_eq!(o.passed(), rb.passed(), "{t}");
    }
    assert!(verify_o_operator(&cur, &ad, &m(&[&["0", "1"], &["0", "0"]]))
        .unwrap()
        .passed());
}

#[test]
fn o_operator_with_zero_phi_is_twisted_rb() {
    let cur = cur_leibniz2();
    let ad = adjoint_rep(&cur);
    let t = m(&[&["0", "D"], &["0", "0"]]);
    assert!(verify_o_operator(&cur, &ad, &t).unwrap().passed());
    let data = TwistedRbData::new(cur.clone(), ad, t, Cochain::zero(2, 2, 2).unwrap()).unwrap();
    assert!(verify_twisted_rb(&data).unwrap().passed());
    let ns = ns_from_twisted_rb(&data, true).unwrap();
    assert!(ns.vee.is_zero());
    assert!(verify_ns_axioms(&ns).passed());
}

#[test]
fn twisted_rb_pipeline_scalar() {
    for c in [1, 2, -3] {
        for alg in [virasoro(), cur_leibniz2()] {
            let n = PdMap::scalar(alg.rank(), rat(c));
            let data = twisted_rb_from_nijenhuis(&alg, &n, true).unwrap();
            assert!(verify_twisted_rb(&data).unwrap().passed());
            assert!(verify_ns_axioms(&ns_from_twisted_rb(&data, true).unwrap()).passed());
        }
    }
}

#[test]
fn twisted_rb_pipeline_nonscalar() {
    let cur = cur_leibniz2();
    let data = twisted_rb_from_nijenhuis(&cur, &cur_nijenhuis(1, "D"), true).unwrap();
    assert!(verify_twisted_rb(&data).unwrap().passed());
    assert!(verify_ns_axioms(&ns_from_twisted_rb(&data, true).unwrap()).passed());
}
