//! Truncated one-parameter formal deformations of a Hom-Leibniz conformal
//! algebra with a Nijenhuis operator, checked order by order.

use crate::cohomology::{coboundary_hnla, compare_cochains, is_hnla_cocycle, Cochain, HnlaPair, PhiFormula};
use crate::error::{dim_check, Error, Result};
use crate::operators::{push_map_residual, verify_operator, OperatorKind};
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::representation::adjoint_rep;
use crate::structure::{verify_hom_leibniz, verify_multiplicativity, ConformalAlgebra, PdMap, ProductTable};

/// Coefficients `{·_λ·}_i` and `N_i` for `i = 0 … order`; index 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationData {
    pub base: ConformalAlgebra,
    pub base_n: PdMap,
    brackets: Vec<ProductTable>,
    operators: Vec<PdMap>,
}

impl DeformationData {
    /// `brackets` and `operators` list the coefficients of t¹, t², … .
    pub fn new(
        base: ConformalAlgebra,
        base_n: PdMap,
        brackets: Vec<ProductTable>,
        operators: Vec<PdMap>,
    ) -> Result<Self> {
        let r = base.rank();
        dim_check(base_n.rows() == r && base_n.cols() == r, || {
            "base operator must be square of algebra rank".into()
        })?;
        if brackets.len() != operators.len() {
            return Err(Error::Invalid(format!(
                "{} bracket coefficients but {} operator coefficients",
                brackets.len(),
                operators.len()
            )));
        }
        for t in &brackets {
            dim_check(t.left_rank() == r && t.right_rank() == r && t.out_rank() == r, || {
                "deformation bracket has the wrong rank".into()
            })?;
        }
        for m in &operators {
            dim_check(m.rows() == r && m.cols() == r, || {
                "deformation operator has the wrong rank".into()
            })?;
        }
        let mut all_b = vec![base.structure.clone()];
        all_b.extend(brackets);
        let mut all_n = vec![base_n.clone()];
        all_n.extend(operators);
        Ok(DeformationData {
            base,
            base_n,
            brackets: all_b,
            operators: all_n,
        })
    }

    /// Order-1 data with infinitesimal `(bracket1, n1)`.
    pub fn infinitesimal(base: ConformalAlgebra, base_n: PdMap, bracket1: ProductTable, n1: PdMap) -> Result<Self> {
        Self::new(base, base_n, vec![bracket1], vec![n1])
    }

    pub fn order(&self) -> usize {
        self.brackets.len() - 1
    }

    pub fn bracket(&self, i: usize) -> &ProductTable {
        &self.brackets[i]
    }

    pub fn operator(&self, i: usize) -> &PdMap {
        &self.operators[i]
    }

    /// The same deformation cut off after order `m`.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        self.check_order(m)?;
        Ok(DeformationData {
            base: self.base.clone(),
            base_n: self.base_n.clone(),
            brackets: self.brackets[..=m].to_vec(),
            operators: self.operators[..=m].to_vec(),
        })
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(Error::OrderOutOfRange {
                requested: n,
                available: self.order(),
            });
        }
        Ok(())
    }
}

/// The coefficient of tⁿ in the Hom-Leibniz identity, multiplicativity,
/// `α N_t = N_t α` and the Nijenhuis identity. At n = 0 the report equals
/// the one assembled by [`base_report`].
pub fn verify_deformation_order(data: &DeformationData, n: usize) -> Result<Report> {
    data.check_order(n)?;
    let alg = &data.base;
    let b = &data.brackets;
    let ops = &data.operators;
    let r = alg.rank();
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;

    let mut hom = Report::new("hom_leibniz");
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let (p, q, s) = (alg.basis(i), alg.basis(j), alg.basis(k));
                let (ap, aq, as_) = (alg.alpha(&p), alg.alpha(&q), alg.alpha(&s));
                let mut res = crate::Element::zero(r);
                for a in 0..=n {
                    let (outer, inner) = (&b[a], &b[n - a]);
                    res.add_assign(&outer.eval(&ap, &inner.eval(&q, &s, &l2), &l1));
                    res.sub_assign(&outer.eval(&inner.eval(&p, &q, &l1), &as_, &l12));
                    res.sub_assign(&outer.eval(&aq, &inner.eval(&p, &s, &l1), &l2));
                }
                if !res.is_zero() {
                    hom.push(alg.tuple_name(&[i, j, k]), alg.show(&res));
                }
            }
        }
    }

    let mut mult = Report::new("multiplicativity");
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let lhs = alg.alpha(&b[n].eval(&p, &q, &l1));
            let rhs = b[n].eval(&alg.alpha(&p), &alg.alpha(&q), &l1);
            let res = &lhs - &rhs;
            if !res.is_zero() {
                mult.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }

    let mut nij = Report::new(OperatorKind::Nijenhuis.to_string());
    push_map_residual(
        &mut nij,
        "alpha-commute",
        &alg.alpha.compose(&ops[n]),
        &ops[n].compose(&alg.alpha),
    );
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let mut res = crate::Element::zero(r);
            for (a, c, d) in triples(n) {
                // {N_c p, N_d q}_a
                res.add_assign(&b[a].eval(&ops[c].apply(&p), &ops[d].apply(&q), &l1));
                // N_a({p, N_c q}_d + {N_c p, q}_d − N_c {p, q}_d)
                let mut inner = b[d].eval(&p, &ops[c].apply(&q), &l1);
                inner.add_assign(&b[d].eval(&ops[c].apply(&p), &q, &l1));
                inner.sub_assign(&ops[c].apply(&b[d].eval(&p, &q, &l1)));
                res.sub_assign(&ops[a].apply(&inner));
            }
            if !res.is_zero() {
                nij.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }

    let mut out = Report::new(format!("deformation_order({n})"));
    out.absorb("hom_leibniz", hom);
    out.absorb("multiplicativity", mult);
    out.absorb("nijenhuis", nij);
    Ok(out)
}

/// The undeformed checks, assembled in the layout of
/// [`verify_deformation_order`] at order 0.
pub fn base_report(alg: &ConformalAlgebra, n: &PdMap) -> Result<Report> {
    let mut out = Report::new("deformation_order(0)");
    out.absorb("hom_leibniz", verify_hom_leibniz(alg));
    out.absorb("multiplicativity", verify_multiplicativity(alg));
    out.absorb("nijenhuis", verify_operator(alg, n, &OperatorKind::Nijenhuis)?);
    Ok(out)
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=n {
        for c in 0..=n - a {
            out.push((a, c, n - a - c));
        }
    }
    out
}

/// The infinitesimal as an HNLA pair over the adjoint representation with
/// `N_M = N`.
pub fn infinitesimal_pair(data: &DeformationData) -> Result<HnlaPair> {
    if data.order() < 1 {
        return Err(Error::OrderOutOfRange {
            requested: 1,
            available: data.order(),
        });
    }
    HnlaPair::new(
        Cochain::from_table(&data.brackets[1])?,
        Some(Cochain::from_map(&data.operators[1])),
    )
}

/// Whether `d_HNLA({·_λ·}_1, N_1) = 0`.
pub fn infinitesimal_cocycle_check(data: &DeformationData, formula: PhiFormula) -> Result<(bool, Report)> {
    let pair = infinitesimal_pair(data)?;
    let rep = adjoint_rep(&data.base).with_n_m(data.base_n.clone())?;
    let mut report = is_hnla_cocycle(&pair, &data.base, &data.base_n, &rep, formula)?;
    report.check_name = "infinitesimal_cocycle".into();
    Ok((report.passed(), report))
}

/// `d¹_HNLA(ψ₁, 0)` as a bracket table and an operator.
pub fn infinitesimal_coboundary(
    base: &ConformalAlgebra,
    base_n: &PdMap,
    psi1: &PdMap,
    formula: PhiFormula,
) -> Result<(ProductTable, PdMap)> {
    let rep = adjoint_rep(base).with_n_m(base_n.clone())?;
    let d = coboundary_hnla(
        &HnlaPair::new(Cochain::from_map(psi1), None)?,
        base,
        base_n,
        &rep,
        formula,
    )?;
    let g = d.g.expect("coboundary has both components");
    Ok((d.f.to_table()?, g.to_map()?))
}

/// Checks a candidate first-order isomorphism `ψ_t = id + tψ₁` from
/// deformation `a` to deformation `b`:
/// `ψ₁{p_λ q}' + {p_λ q}'_1 = {ψ₁p_λ q} + {p_λ ψ₁q} + {p_λ q}_1`,
/// `ψ₁N' + N'_1 = Nψ₁ + N_1`, and separately
/// `({·}'_1, N'_1) − ({·}_1, N_1) = d¹_HNLA(ψ₁, 0)`.
pub fn equivalence_order1_check(
    psi1: &PdMap,
    a: &DeformationData,
    b: &DeformationData,
    formula: PhiFormula,
) -> Result<Report> {
    let r = a.base.rank();
    dim_check(b.base.rank() == r && psi1.rows() == r && psi1.cols() == r, || {
        "ψ₁ and both deformations must share the base rank".into()
    })?;
    if a.base != b.base || a.base_n != b.base_n {
        return Err(Error::Invalid("deformations do not share a base".into()));
    }
    if a.order() < 1 || b.order() < 1 {
        return Err(Error::OrderOutOfRange {
            requested: 1,
            available: a.order().min(b.order()),
        });
    }
    let alg = &a.base;
    let l1 = MultiPoly::lam(1);
    let mut out = Report::new("equivalence_order1");

    let mut br = Report::new("bracket");
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let mut lhs = psi1.apply(&b.brackets[0].eval(&p, &q, &l1));
            lhs.add_assign(&b.brackets[1].eval(&p, &q, &l1));
            let mut rhs = a.brackets[0].eval(&psi1.apply(&p), &q, &l1);
            rhs.add_assign(&a.brackets[0].eval(&p, &psi1.apply(&q), &l1));
            rhs.add_assign(&a.brackets[1].eval(&p, &q, &l1));
            let res = &lhs - &rhs;
            if !res.is_zero() {
                br.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }
    out.absorb("bracket", br);

    let mut op = Report::new("operator");
    push_map_residual(
        &mut op,
        "map",
        &psi1.compose(&b.operators[0]).add(&b.operators[1]),
        &a.operators[0].compose(psi1).add(&a.operators[1]),
    );
    out.absorb("operator", op);

    let (dt, dn) = infinitesimal_coboundary(alg, &a.base_n, psi1, formula)?;
    let diff_t = Cochain::from_table(&b.brackets[1].sub(&a.brackets[1]))?;
    let names = &alg.basis_names;
    out.absorb(
        "cohomologous bracket",
        compare_cochains("", &diff_t, &Cochain::from_table(&dt)?, names, names),
    );
    let mut cn = Report::new("");
    push_map_residual(&mut cn, "map", &b.operators[1].sub(&a.operators[1]), &dn);
    out.absorb("cohomologous operator", cn);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};
    use crate::samples::virasoro;

    fn vir_data(b1: ProductTable, n1: PdMap) -> DeformationData {
        DeformationData::infinitesimal(virasoro(), PdMap::identity(1), b1, n1).unwrap()
    }

    #[test]
    fn zero_deformation_passes() {
        let d = vir_data(ProductTable::zero(1, 1, 1), PdMap::zero(1, 1));
        assert!(verify_deformation_order(&d, 1).unwrap().passed());
        assert!(infinitesimal_cocycle_check(&d, PhiFormula::Alternating).unwrap().0);
    }

    #[test]
    fn order_zero_matches_base_checks() {
        let alg = virasoro();
        for n in [PdMap::identity(1), PdMap::diagonal(1, &parse_poly("D").unwrap())] {
            let d = DeformationData::new(alg.clone(), n.clone(), vec![], vec![]).unwrap();
            assert_eq!(verify_deformation_order(&d, 0).unwrap(), base_report(&alg, &n).unwrap());
        }
        let bad = DeformationData::new(
            alg.clone(),
            PdMap::diagonal(1, &parse_poly("D").unwrap()),
            vec![],
            vec![],
        )
        .unwrap();
        assert!(!verify_deformation_order(&bad, 0).unwrap().passed());
    }

    #[test]
    fn order_out_of_range() {
        let d = vir_data(ProductTable::zero(1, 1, 1), PdMap::zero(1, 1));
        assert_eq!(
            verify_deformation_order(&d, 2),
            Err(Error::OrderOutOfRange {
                requested: 2,
                available: 1
            })
        );
    }

    #[test]
    fn scaled_bracket_and_operator() {
        // N_t = (1+t)·id, {·}_t = (1+t)[·]. Order-1 Nijenhuis coefficient,
        // expanded by hand: LHS 3[p q], RHS 3[p q].
        let alg = virasoro();
        let d = vir_data(alg.structure.clone(), PdMap::identity(1));
        assert!(verify_deformation_order(&d, 1).unwrap().passed());
        // δ of the bracket and φ² vanish, but ∂_HN(id) = δ(id) = (∂+2λ)L.
        let (ok, rep) = infinitesimal_cocycle_check(&d, PhiFormula::Alternating).unwrap();
        assert!(!ok);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].residual, "L: -D - 2*l1");
    }

    #[test]
    fn bracket_infinitesimal_agrees() {
        let alg = virasoro();
        let d = vir_data(alg.structure.clone(), PdMap::zero(1, 1));
        assert!(verify_deformation_order(&d, 1).unwrap().passed());
        assert!(infinitesimal_cocycle_check(&d, PhiFormula::Alternating).unwrap().0);
    }

    #[test]
    fn constant_coefficient_fails() {
        // Order-1 Hom-Leibniz coefficient with {L_λ L}_1 = L, summed by hand.
        let mut t = ProductTable::zero(1, 1, 1);
        t.set(0, 0, vec![parse_poly("1").unwrap()]).unwrap();
        let d = vir_data(t, PdMap::zero(1, 1));
        let rep = verify_deformation_order(&d, 1).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].context, "hom_leibniz: (L, L, L)");
        assert_eq!(rep.violations[0].residual, "L: -D - 2*l1 - 2*l2");
    }

    #[test]
    fn equivalence_examples() {
        let alg = virasoro();
        let id = PdMap::identity(1);
        let a = vir_data(ProductTable::zero(1, 1, 1), PdMap::zero(1, 1));
        assert!(
            equivalence_order1_check(&PdMap::zero(1, 1), &a, &a, PhiFormula::Alternating)
                .unwrap()
                .passed()
        );

        let psi = PdMap::diagonal(1, &parse_poly("D + 1").unwrap());
        let (dt, dn) = infinitesimal_coboundary(&alg, &id, &psi, PhiFormula::Alternating).unwrap();
        let b = vir_data(dt, dn);
        assert!(equivalence_order1_check(&psi, &a, &b, PhiFormula::Alternating)
            .unwrap()
            .passed());

        let other = vir_data(alg.structure.scale(&rat(3)), PdMap::scalar(1, rat(2)));
        let rep = equivalence_order1_check(&id, &a, &other, PhiFormula::Alternating).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn truncation() {
        let alg = virasoro();
        let d = DeformationData::new(
            alg.clone(),
            PdMap::identity(1),
            vec![ProductTable::zero(1, 1, 1), ProductTable::zero(1, 1, 1)],
            vec![PdMap::zero(1, 1), PdMap::zero(1, 1)],
        )
        .unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.truncate(1).unwrap().order(), 1);
        assert!(d.truncate(3).is_err());
    }
}
