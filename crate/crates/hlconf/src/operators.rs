//! Nijenhuis, Rota-Baxter and modified Rota-Baxter operators.

use std::fmt;

use crate::error::{dim_check, Error, Result};
use crate::poly::{rat, MultiPoly, Rational};
use crate::report::Report;
use crate::structure::{verify_hom_leibniz, ConformalAlgebra, PdMap, ProductTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Nijenhuis,
    RotaBaxter(Rational),
    ModifiedRotaBaxter(Rational),
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Nijenhuis => write!(f, "nijenhuis"),
            OperatorKind::RotaBaxter(w) => write!(f, "rota_baxter({w})"),
            OperatorKind::ModifiedRotaBaxter(w) => write!(f, "modified_rota_baxter({w})"),
        }
    }
}

fn check_square(alg: &ConformalAlgebra, op: &PdMap, what: &str) -> Result<()> {
    let r = alg.rank();
    dim_check(op.rows() == r && op.cols() == r, || {
        format!("{what} is {}x{}, algebra rank {r}", op.rows(), op.cols())
    })
}

/// Reports nonzero entries of `a − b`.
pub(crate) fn push_map_residual(rep: &mut Report, label: &str, a: &PdMap, b: &PdMap) {
    let d = a.sub(b);
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            let e = d.entry(r, c);
            if !e.is_zero() {
                rep.push(format!("{label} [{}, {}]", r + 1, c + 1), e.to_string());
            }
        }
    }
}

/// Checks `α∘op = op∘α` and the defining identity of `kind` on basis pairs.
pub fn verify_operator(alg: &ConformalAlgebra, op: &PdMap, kind: &OperatorKind) -> Result<Report> {
    check_square(alg, op, "operator")?;
    let mut rep = Report::new(kind.to_string());
    push_map_residual(
        &mut rep,
        "alpha-commute",
        &alg.alpha.compose(op),
        &op.compose(&alg.alpha),
    );
    let l1 = MultiPoly::lam(1);
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let (np, nq) = (op.apply(&p), op.apply(&q));
            let lhs = alg.bracket(&np, &nq, &l1);
            let pq = alg.bracket(&p, &q, &l1);
            let mixed = &alg.bracket(&np, &q, &l1) + &alg.bracket(&p, &nq, &l1);
            let rhs = match kind {
                OperatorKind::Nijenhuis => op.apply(&(&mixed - &op.apply(&pq))),
                OperatorKind::RotaBaxter(w) => op.apply(&(&mixed + &pq.scale(w))),
                OperatorKind::ModifiedRotaBaxter(w) => &op.apply(&mixed) + &pq.scale(w),
            };
            let res = &lhs - &rhs;
            if !res.is_zero() {
                rep.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }
    Ok(rep)
}

/// `[p_λ q]_N = [Np_λ q] + [p_λ Nq] − N[p_λ q]`.
///
/// The formula is total; with `strict` a failing Nijenhuis check is an error.
pub fn deformed_bracket(alg: &ConformalAlgebra, n: &PdMap, strict: bool) -> Result<ConformalAlgebra> {
    check_square(alg, n, "N")?;
    if strict {
        let rep = verify_operator(alg, n, &OperatorKind::Nijenhuis)?;
        if !rep.passed() {
            return Err(Error::Precondition(format!("N is not Nijenhuis:\n{rep}")));
        }
    }
    let x = MultiPoly::x();
    let r = alg.rank();
    let table = ProductTable::from_fn(r, r, r, |i, j| {
        let (p, q) = (alg.basis(i), alg.basis(j));
        let a = alg.bracket(&n.apply(&p), &q, &x);
        let b = alg.bracket(&p, &n.apply(&q), &x);
        let c = n.apply(&alg.bracket(&p, &q, &x));
        &(&a + &b) - &c
    });
    Ok(ConformalAlgebra {
        name: format!("{}_deformed", alg.name),
        ..alg.with_structure(table)
    })
}

/// Checks `f[p_λ q]_src = [fp_λ fq]_dst` and, when both operators are
/// given, `f∘N_src = N_dst∘f`.
pub fn check_morphism(
    f: &PdMap,
    src: &ConformalAlgebra,
    n_src: Option<&PdMap>,
    dst: &ConformalAlgebra,
    n_dst: Option<&PdMap>,
) -> Result<Report> {
    dim_check(f.cols() == src.rank() && f.rows() == dst.rank(), || {
        format!(
            "map is {}x{}, algebras have ranks {} -> {}",
            f.rows(),
            f.cols(),
            src.rank(),
            dst.rank()
        )
    })?;
    let mut rep = Report::new("morphism");
    if let (Some(a), Some(b)) = (n_src, n_dst) {
        check_square(src, a, "source operator")?;
        check_square(dst, b, "target operator")?;
        push_map_residual(&mut rep, "operator-compat", &f.compose(a), &b.compose(f));
    }
    let l1 = MultiPoly::lam(1);
    for i in 0..src.rank() {
        for j in 0..src.rank() {
            let (p, q) = (src.basis(i), src.basis(j));
            let lhs = f.apply(&src.bracket(&p, &q, &l1));
            let rhs = dst.bracket(&f.apply(&p), &f.apply(&q), &l1);
            let res = &lhs - &rhs;
            if !res.is_zero() {
                rep.push(format!("bracket {}", src.tuple_name(&[i, j])), dst.show(&res));
            }
        }
    }
    Ok(rep)
}

/// Outcome of one correspondence check: whether the case hypothesis on
/// `op²` holds, and the two sides of the equivalence.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub precondition: bool,
    pub nijenhuis: bool,
    pub other: Vec<(String, bool)>,
    pub report: Report,
}

impl Correspondence {
    /// Both sides hold or both fail.
    pub fn agrees(&self) -> bool {
        self.other.iter().all(|(_, b)| *b == self.nijenhuis)
    }
}

/// Checks one of the four Nijenhuis ↔ Rota-Baxter correspondences:
///
/// 1. `op² = 0`: Nijenhuis ⟺ RB of weight 0.
/// 2. `op² = op`: Nijenhuis ⟺ RB of weight −1.
/// 3. `op² = ±id`: Nijenhuis ⟺ modified RB of weight ∓1.
/// 4. `op² = id`: Nijenhuis ⟺ `op ± id` RB of weight ∓2.
///
/// The report fails if the hypothesis on `op²` fails or the sides disagree.
pub fn nijenhuis_rb_correspondence(alg: &ConformalAlgebra, op: &PdMap, case: u8) -> Result<Correspondence> {
    check_square(alg, op, "operator")?;
    let r = alg.rank();
    let sq = op.compose(op);
    let id = PdMap::identity(r);
    let mut report = Report::new(format!("nijenhuis_rb_case{case}"));
    let mut checks: Vec<(String, PdMap, OperatorKind)> = Vec::new();
    let precondition = match case {
        1 => {
            checks.push(("rb(0)".into(), op.clone(), OperatorKind::RotaBaxter(rat(0))));
            sq.is_zero()
        }
        2 => {
            checks.push(("rb(-1)".into(), op.clone(), OperatorKind::RotaBaxter(rat(-1))));
            sq == *op
        }
        3 => {
            if sq == id {
                checks.push(("mrb(-1)".into(), op.clone(), OperatorKind::ModifiedRotaBaxter(rat(-1))));
                true
            } else {
                checks.push(("mrb(1)".into(), op.clone(), OperatorKind::ModifiedRotaBaxter(rat(1))));
                sq == id.scale(&rat(-1))
            }
        }
        4 => {
            checks.push(("op+id rb(-2)".into(), op.add(&id), OperatorKind::RotaBaxter(rat(-2))));
            checks.push(("op-id rb(2)".into(), op.sub(&id), OperatorKind::RotaBaxter(rat(2))));
            sq == id
        }
        _ => return Err(Error::Invalid(format!("unknown correspondence case {case}"))),
    };
    if !precondition {
        report.push("precondition", format!("op^2 = {sq}"));
    }
    let nijenhuis = verify_operator(alg, op, &OperatorKind::Nijenhuis)?.passed();
    let mut other = Vec::new();
    for (label, m, kind) in checks {
        let ok = verify_operator(alg, &m, &kind)?.passed();
        if ok != nijenhuis {
            report.push(
                format!("disagreement {label}"),
                format!("nijenhuis={nijenhuis}, {label}={ok}"),
            );
        }
        other.push((label, ok));
    }
    Ok(Correspondence {
        precondition,
        nijenhuis,
        other,
        report,
    })
}

/// All three conclusions for a deformation by `n`: the deformed algebra is
/// Hom-Leibniz, `n` is Nijenhuis on it, and `n` is a morphism to the original.
pub fn deformation_reports(alg: &ConformalAlgebra, n: &PdMap) -> Result<Vec<Report>> {
    let def = deformed_bracket(alg, n, false)?;
    let mut a = verify_hom_leibniz(&def);
    a.check_name = "deformed_hom_leibniz".into();
    let mut b = verify_operator(&def, n, &OperatorKind::Nijenhuis)?;
    b.check_name = "deformed_nijenhuis".into();
    let mut c = check_morphism(n, &def, Some(n), alg, Some(n))?;
    c.check_name = "deformed_morphism".into();
    Ok(vec![a, b, c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, ratio};
    use crate::samples::{cur_leibniz2, cur_nijenhuis, virasoro};

    #[test]
    fn virasoro_scalars_are_nijenhuis() {
        let v = virasoro();
        for c in [rat(0), rat(1), rat(-1), ratio(3, 2)] {
            let op = PdMap::scalar(1, c);
            assert!(verify_operator(&v, &op, &OperatorKind::Nijenhuis).unwrap().passed());
        }
        let id = PdMap::identity(1);
        assert!(verify_operator(&v, &id, &OperatorKind::RotaBaxter(rat(-1)))
            .unwrap()
            .passed());
    }

    #[test]
    fn derivation_is_not_nijenhuis() {
        // Oracle: with f(∂) = ∂, expand
        // f(−λ)f(∂+λ)(∂+2λ) − f(∂)(f(−λ) + f(∂+λ) − f(∂))(∂+2λ) directly.
        let d = parse_poly("D").unwrap();
        let l = parse_poly("l1").unwrap();
        let f = |t: &MultiPoly| t.clone();
        let br = &d + &l.scale(&rat(2));
        let lhs = f(&-&l) * f(&(&d + &l)) * &br;
        let rhs = f(&d) * (f(&-&l) + f(&(&d + &l)) - f(&d)) * &br;
        let oracle = lhs - rhs;
        assert_eq!(oracle, parse_poly("-l1*(D + l1)*(D + 2*l1)").unwrap());

        let v = virasoro();
        let rep = verify_operator(&v, &PdMap::diagonal(1, &d), &OperatorKind::Nijenhuis).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].residual, format!("L: {oracle}"));
    }

    #[test]
    fn dimension_mismatch() {
        let v = virasoro();
        assert!(verify_operator(&v, &PdMap::identity(2), &OperatorKind::Nijenhuis).is_err());
    }

    #[test]
    fn deformed_examples() {
        let v = virasoro();
        let same = deformed_bracket(&v, &PdMap::identity(1), true).unwrap();
        assert_eq!(same.structure, v.structure);
        let c = ratio(3, 2);
        let scaled = deformed_bracket(&v, &PdMap::scalar(1, c.clone()), true).unwrap();
        assert_eq!(scaled.structure, v.structure.scale(&c));
        assert!(deformed_bracket(&v, &PdMap::zero(1, 1), true)
            .unwrap()
            .structure
            .is_zero());
        let d = PdMap::diagonal(1, &MultiPoly::d());
        assert!(deformed_bracket(&v, &d, true).is_err());
        assert!(deformed_bracket(&v, &d, false).is_ok());
    }

    #[test]
    fn prop_2_9_on_samples() {
        let v = virasoro();
        for c in [0, 1, -1, 2] {
            for r in deformation_reports(&v, &PdMap::scalar(1, rat(c))).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
        let cur = cur_leibniz2();
        for (a, b) in [(0, "1"), (1, "D"), (2, "D^2 - 1"), (-1, "0")] {
            let n = cur_nijenhuis(a, b);
            assert!(verify_operator(&cur, &n, &OperatorKind::Nijenhuis).unwrap().passed());
            for r in deformation_reports(&cur, &n).unwrap() {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn double_deformation() {
        let v = virasoro();
        let once = deformed_bracket(&v, &PdMap::scalar(1, rat(6)), true).unwrap();
        let a = deformed_bracket(&v, &PdMap::scalar(1, rat(2)), true).unwrap();
        let twice = deformed_bracket(&a, &PdMap::scalar(1, rat(3)), true).unwrap();
        assert_eq!(once.structure, twice.structure);
        assert!(verify_hom_leibniz(&twice).passed());
    }

    #[test]
    fn morphism_examples() {
        let v = virasoro();
        let id = PdMap::identity(1);
        assert!(check_morphism(&id, &v, None, &v, None).unwrap().passed());
        let zero = PdMap::zero(1, 1);
        let two = PdMap::scalar(1, rat(2));
        assert!(check_morphism(&zero, &v, Some(&two), &v, Some(&two)).unwrap().passed());
    }

    #[test]
    fn rb_and_mrb_coincide_at_weight_zero() {
        let v = virasoro();
        let cur = cur_leibniz2();
        for (alg, op) in [
            (&v, PdMap::identity(1)),
            (&v, PdMap::diagonal(1, &MultiPoly::d())),
            (&cur, cur_nijenhuis(1, "D")),
            (&cur, cur_nijenhuis(0, "1")),
        ] {
            let a = verify_operator(alg, &op, &OperatorKind::RotaBaxter(rat(0))).unwrap();
            let b = verify_operator(alg, &op, &OperatorKind::ModifiedRotaBaxter(rat(0))).unwrap();
            assert_eq!(a.violations, b.violations);
        }
    }

    #[test]
    fn correspondence_examples() {
        let v = virasoro();
        let id = PdMap::identity(1);
        let c2 = nijenhuis_rb_correspondence(&v, &id, 2).unwrap();
        assert!(c2.precondition && c2.agrees() && c2.report.passed());
        let c4 = nijenhuis_rb_correspondence(&v, &id, 4).unwrap();
        assert!(c4.report.passed());
        let c1 = nijenhuis_rb_correspondence(&v, &PdMap::zero(1, 1), 1).unwrap();
        assert!(c1.report.passed());
        let not_nil = nijenhuis_rb_correspondence(&v, &id, 1).unwrap();
        assert!(!not_nil.precondition);
        assert_eq!(not_nil.report.violations[0].context, "precondition");
        let cur = cur_leibniz2();
        let nil = cur_nijenhuis(0, "1");
        assert!(nijenhuis_rb_correspondence(&cur, &nil, 1).unwrap().report.passed());
    }
}
