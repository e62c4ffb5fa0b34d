//! Hom-NS-Leibniz conformal algebras `(L, ◁, ▷, ∨, α)`, their adjacent
//! Hom-Leibniz algebra, and the constructions from Nijenhuis, Rota-Baxter and
//! twisted Rota-Baxter operators.

use crate::cohomology::Cochain;
use crate::error::{dim_check, Error, Result};
use crate::operators::{deformed_bracket, push_map_residual, verify_operator, OperatorKind};
use crate::poly::{MultiPoly, Rational};
use crate::report::Report;
use crate::representation::Representation;
use crate::structure::{tuple_name, ConformalAlgebra, Element, PdMap, ProductTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsAlgebra {
    pub name: String,
    pub basis_names: Vec<String>,
    /// `◁`
    pub left: ProductTable,
    /// `▷`
    pub right: ProductTable,
    /// `∨`
    pub vee: ProductTable,
    pub alpha: PdMap,
}

impl NsAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        left: ProductTable,
        right: ProductTable,
        vee: ProductTable,
        alpha: PdMap,
    ) -> Result<Self> {
        let r = basis_names.len();
        dim_check(r > 0, || "NS algebra needs a nonempty basis".into())?;
        for t in [&left, &right, &vee] {
            dim_check(t.left_rank() == r && t.right_rank() == r && t.out_rank() == r, || {
                "NS product table does not match the basis".into()
            })?;
        }
        dim_check(alpha.rows() == r && alpha.cols() == r, || "alpha must be square".into())?;
        Ok(NsAlgebra {
            name: name.into(),
            basis_names,
            left,
            right,
            vee,
            alpha,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.rank(), i)
    }

    pub fn lt(&self, p: &Element, q: &Element, lam: &MultiPoly) -> Element {
        self.left.eval(p, q, lam)
    }

    pub fn rt(&self, p: &Element, q: &Element, lam: &MultiPoly) -> Element {
        self.right.eval(p, q, lam)
    }

    pub fn vee(&self, p: &Element, q: &Element, lam: &MultiPoly) -> Element {
        self.vee.eval(p, q, lam)
    }

    /// `p * q = p◁q + p▷q + p∨q`.
    pub fn star(&self, p: &Element, q: &Element, lam: &MultiPoly) -> Element {
        let mut out = self.lt(p, q, lam);
        out.add_assign(&self.rt(p, q, lam));
        out.add_assign(&self.vee(p, q, lam));
        out
    }

    fn show(&self, e: &Element) -> String {
        e.display_with(&self.basis_names).to_string()
    }
}

/// Checks, on basis triples with λ = l1, μ = l2:
///
/// * `ns1`: `αp ▷_λ (q *_μ r) = (p ▷_λ q) ▷_{λ+μ} αr + αq ◁_μ (p ▷_λ r)`
/// * `ns2`: `αp ◁_λ (q ▷_μ r) = (p ◁_λ q) ▷_{λ+μ} αr + αq ▷_μ (p *_λ r)`
/// * `ns3`: `αp ◁_λ (q ◁_μ r) = (p *_λ q) ◁_{λ+μ} αr + αq ◁_μ (p ◁_λ r)`
/// * `ns4`: `αp ∨_λ (q *_μ r) − αq ∨_μ (p *_λ r) − (p *_λ q) ∨_{λ+μ} αr
///   + αp ◁_λ (q ∨_μ r) − αq ◁_μ (p ∨_λ r) − (p ∨_λ q) ▷_{λ+μ} αr = 0`
///
/// and multiplicativity of α for each product on basis pairs.
pub fn verify_ns_axioms(ns: &NsAlgebra) -> Report {
    let mut out = Report::new("ns_axioms");
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;
    let n = ns.rank();
    let a = |e: &Element| ns.alpha.apply(e);

    for (label, t) in [
        ("mult-left", &ns.left),
        ("mult-right", &ns.right),
        ("mult-vee", &ns.vee),
    ] {
        for i in 0..n {
            for j in 0..n {
                let (p, q) = (ns.basis(i), ns.basis(j));
                let res = &a(&t.eval(&p, &q, &l1)) - &t.eval(&a(&p), &a(&q), &l1);
                if !res.is_zero() {
                    out.push(
                        format!("{label} {}", tuple_name(&ns.basis_names, &[i, j])),
                        ns.show(&res),
                    );
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (p, q, r) = (ns.basis(i), ns.basis(j), ns.basis(k));
                let (ap, aq, ar) = (a(&p), a(&q), a(&r));
                let name = tuple_name(&ns.basis_names, &[i, j, k]);

                let ns1 = &(&ns.rt(&ap, &ns.star(&q, &r, &l2), &l1) - &ns.rt(&ns.rt(&p, &q, &l1), &ar, &l12))
                    - &ns.lt(&aq, &ns.rt(&p, &r, &l1), &l2);
                let ns2 = &(&ns.lt(&ap, &ns.rt(&q, &r, &l2), &l1) - &ns.rt(&ns.lt(&p, &q, &l1), &ar, &l12))
                    - &ns.rt(&aq, &ns.star(&p, &r, &l1), &l2);
                let ns3 = &(&ns.lt(&ap, &ns.lt(&q, &r, &l2), &l1) - &ns.lt(&ns.star(&p, &q, &l1), &ar, &l12))
                    - &ns.lt(&aq, &ns.lt(&p, &r, &l1), &l2);
                let mut ns4 = ns.vee(&ap, &ns.star(&q, &r, &l2), &l1);
                ns4.sub_assign(&ns.vee(&aq, &ns.star(&p, &r, &l1), &l2));
                ns4.sub_assign(&ns.vee(&ns.star(&p, &q, &l1), &ar, &l12));
                ns4.add_assign(&ns.lt(&ap, &ns.vee(&q, &r, &l2), &l1));
                ns4.sub_assign(&ns.lt(&aq, &ns.vee(&p, &r, &l1), &l2));
                ns4.sub_assign(&ns.rt(&ns.vee(&p, &q, &l1), &ar, &l12));

                for (label, res) in [("ns1", ns1), ("ns2", ns2), ("ns3", ns3), ("ns4", ns4)] {
                    if !res.is_zero() {
                        out.push(format!("{label} {name}"), ns.show(&res));
                    }
                }
            }
        }
    }
    out
}

/// `p ∨_λ q = −q ∨_{−∂−λ} p` on basis pairs. Not part of the axioms.
pub fn verify_vee_skew(ns: &NsAlgebra) -> Report {
    let mut out = Report::new("vee_skew");
    let l1 = MultiPoly::lam(1);
    let flipped = -(&MultiPoly::d() + &l1);
    for i in 0..ns.rank() {
        for j in 0..ns.rank() {
            let (p, q) = (ns.basis(i), ns.basis(j));
            let res = &ns.vee(&p, &q, &l1) + &ns.vee(&q, &p, &flipped);
            if !res.is_zero() {
                out.push(tuple_name(&ns.basis_names, &[i, j]), ns.show(&res));
            }
        }
    }
    out
}

/// The Hom-Leibniz algebra with bracket `◁ + ▷ + ∨`.
pub fn adjacent_algebra(ns: &NsAlgebra) -> Result<ConformalAlgebra> {
    ConformalAlgebra::new(
        format!("{}_adjacent", ns.name),
        ns.basis_names.clone(),
        ns.left.add(&ns.right).add(&ns.vee),
        ns.alpha.clone(),
    )
}

/// `m(p ∘ q) = m(p) ∘ m(q)` for each of the three products, on basis pairs.
pub fn check_ns_morphism(ns: &NsAlgebra, m: &PdMap) -> Result<Report> {
    let r = ns.rank();
    dim_check(m.rows() == r && m.cols() == r, || {
        "morphism must be square of NS rank".into()
    })?;
    let mut out = Report::new("ns_morphism");
    let l1 = MultiPoly::lam(1);
    for (label, t) in [("left", &ns.left), ("right", &ns.right), ("vee", &ns.vee)] {
        for i in 0..r {
            for j in 0..r {
                let (p, q) = (ns.basis(i), ns.basis(j));
                let res = &m.apply(&t.eval(&p, &q, &l1)) - &t.eval(&m.apply(&p), &m.apply(&q), &l1);
                if !res.is_zero() {
                    out.push(
                        format!("{label} {}", tuple_name(&ns.basis_names, &[i, j])),
                        ns.show(&res),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// From an NS structure with α = id and an NS morphism `m`, the Hom-NS
/// structure with products `m(p ∘ q)` and twist `m`.
pub fn twist_ns_by_morphism(ns: &NsAlgebra, m: &PdMap) -> Result<NsAlgebra> {
    let chk = check_ns_morphism(ns, m)?;
    if ns.alpha != PdMap::identity(ns.rank()) {
        return Err(Error::Precondition("the input must have alpha = id".into()));
    }
    if !chk.passed() {
        return Err(Error::Precondition(format!("not an NS morphism:\n{chk}")));
    }
    NsAlgebra::new(
        format!("{}_twisted", ns.name),
        ns.basis_names.clone(),
        ns.left.then(m),
        ns.right.then(m),
        ns.vee.then(m),
        m.clone(),
    )
}

fn require(kind: &str, rep: Report) -> Result<()> {
    if rep.passed() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{kind} check failed:\n{rep}")))
    }
}

fn square_table(alg: &ConformalAlgebra, f: impl Fn(&Element, &Element, &MultiPoly) -> Element) -> ProductTable {
    let r = alg.rank();
    let x = MultiPoly::x();
    ProductTable::from_fn(r, r, r, |i, j| f(&alg.basis(i), &alg.basis(j), &x))
}

/// `p ◁ q = [Np q]`, `p ▷ q = [p Nq]`, `p ∨ q = −N[p q]`.
pub fn ns_from_nijenhuis(alg: &ConformalAlgebra, n: &PdMap, strict: bool) -> Result<NsAlgebra> {
    let chk = verify_operator(alg, n, &OperatorKind::Nijenhuis)?;
    if strict {
        require("Nijenhuis", chk)?;
    }
    NsAlgebra::new(
        format!("{}_ns_nijenhuis", alg.name),
        alg.basis_names.clone(),
        square_table(alg, |p, q, x| alg.bracket(&n.apply(p), q, x)),
        square_table(alg, |p, q, x| alg.bracket(p, &n.apply(q), x)),
        square_table(alg, |p, q, x| -&n.apply(&alg.bracket(p, q, x))),
        alg.alpha.clone(),
    )
}

/// `p ◁ q = [Rp q]`, `p ▷ q = [p Rq]`, `p ∨ q = θ[p q]`.
pub fn ns_from_rb(alg: &ConformalAlgebra, r: &PdMap, theta: &Rational, strict: bool) -> Result<NsAlgebra> {
    let chk = verify_operator(alg, r, &OperatorKind::RotaBaxter(theta.clone()))?;
    if strict {
        require("Rota-Baxter", chk)?;
    }
    NsAlgebra::new(
        format!("{}_ns_rota_baxter", alg.name),
        alg.basis_names.clone(),
        square_table(alg, |p, q, x| alg.bracket(&r.apply(p), q, x)),
        square_table(alg, |p, q, x| alg.bracket(p, &r.apply(q), x)),
        square_table(alg, |p, q, x| alg.bracket(p, q, x).scale(theta)),
        alg.alpha.clone(),
    )
}

/// A map `T: M → L` together with an arity-2 cochain φ on L with values in M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedRbData {
    pub alg: ConformalAlgebra,
    pub rep: Representation,
    pub t: PdMap,
    pub phi: Cochain,
}

impl TwistedRbData {
    pub fn new(alg: ConformalAlgebra, rep: Representation, t: PdMap, phi: Cochain) -> Result<Self> {
        check_t(&alg, &rep, &t)?;
        dim_check(
            phi.arity() == 2 && phi.alg_rank() == alg.rank() && phi.rep_rank() == rep.rank(),
            || "φ must be an arity-2 cochain on the algebra with values in the module".into(),
        )?;
        Ok(TwistedRbData { alg, rep, t, phi })
    }
}

fn check_t(alg: &ConformalAlgebra, rep: &Representation, t: &PdMap) -> Result<()> {
    dim_check(rep.alg_rank() == alg.rank(), || {
        "representation of a different algebra".into()
    })?;
    dim_check(t.rows() == alg.rank() && t.cols() == rep.rank(), || {
        format!("T must be {}x{}, got {}x{}", alg.rank(), rep.rank(), t.rows(), t.cols())
    })
}

fn phi_at(phi: &Cochain, p: &Element, q: &Element, lam: &MultiPoly) -> Element {
    phi.eval(&[p.clone(), q.clone()], std::slice::from_ref(lam))
}

/// Three groups of checks:
///
/// * `phi-cocycle`: with λ = l1, μ = l2,
///   `l(αp)_λ φ_μ(q,r) − l(αq)_μ φ_λ(p,r) − r(φ_λ(p,q))_{λ+μ} αr
///   + φ_λ(αp, [q_μ r]) − φ_μ(αq, [p_λ r]) − φ_{λ+μ}([p_λ q], αr) = 0`,
///   and `phi-compat`: `β φ_λ(p, q) = φ_λ(αp, αq)`;
/// * `twist`: `αT = Tβ`;
/// * `trb`: `[Tm_λ Tn] = T(l(Tm)_λ n + r(m)_λ Tn + φ_λ(Tm, Tn))`.
pub fn verify_twisted_rb(data: &TwistedRbData) -> Result<Report> {
    let (alg, rep, t, phi) = (&data.alg, &data.rep, &data.t, &data.phi);
    let mut out = Report::new("twisted_rota_baxter");
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;
    let n = alg.rank();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (p, q, r) = (alg.basis(i), alg.basis(j), alg.basis(k));
                let (ap, aq, ar) = (alg.alpha(&p), alg.alpha(&q), alg.alpha(&r));
                let mut res = rep.l(&ap, &phi_at(phi, &q, &r, &l2), &l1);
                res.sub_assign(&rep.l(&aq, &phi_at(phi, &p, &r, &l1), &l2));
                res.sub_assign(&rep.r(&phi_at(phi, &p, &q, &l1), &ar, &l12));
                res.add_assign(&phi_at(phi, &ap, &alg.bracket(&q, &r, &l2), &l1));
                res.sub_assign(&phi_at(phi, &aq, &alg.bracket(&p, &r, &l1), &l2));
                res.sub_assign(&phi_at(phi, &alg.bracket(&p, &q, &l1), &ar, &l12));
                if !res.is_zero() {
                    out.push(format!("phi-cocycle {}", alg.tuple_name(&[i, j, k])), rep.show(&res));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let res = &rep.beta(&phi_at(phi, &p, &q, &l1)) - &phi_at(phi, &alg.alpha(&p), &alg.alpha(&q), &l1);
            if !res.is_zero() {
                out.push(format!("phi-compat {}", alg.tuple_name(&[i, j])), rep.show(&res));
            }
        }
    }
    push_map_residual(&mut out, "twist", &alg.alpha.compose(t), &t.compose(&rep.beta));
    for a in 0..rep.rank() {
        for b in 0..rep.rank() {
            let (m, w) = (rep.basis(a), rep.basis(b));
            let (tm, tw) = (t.apply(&m), t.apply(&w));
            let lhs = alg.bracket(&tm, &tw, &l1);
            let mut inner = rep.l(&tm, &w, &l1);
            inner.add_assign(&rep.r(&m, &tw, &l1));
            inner.add_assign(&phi_at(phi, &tm, &tw, &l1));
            let res = &lhs - &t.apply(&inner);
            if !res.is_zero() {
                out.push(format!("trb {}", tuple_name(&rep.basis_names, &[a, b])), alg.show(&res));
            }
        }
    }
    Ok(out)
}

/// `Tβ = αT` and `[Tm_λ Tn] = T(l(Tm)_λ n + r(m)_λ Tn)` on basis pairs of M.
pub fn verify_o_operator(alg: &ConformalAlgebra, rep: &Representation, t: &PdMap) -> Result<Report> {
    check_t(alg, rep, t)?;
    let mut out = Report::new("o_operator");
    push_map_residual(&mut out, "twist", &t.compose(&rep.beta), &alg.alpha.compose(t));
    let l1 = MultiPoly::lam(1);
    for a in 0..rep.rank() {
        for b in 0..rep.rank() {
            let (m, w) = (rep.basis(a), rep.basis(b));
            let (tm, tw) = (t.apply(&m), t.apply(&w));
            let inner = &rep.l(&tm, &w, &l1) + &rep.r(&m, &tw, &l1);
            let res = &alg.bracket(&tm, &tw, &l1) - &t.apply(&inner);
            if !res.is_zero() {
                out.push(tuple_name(&rep.basis_names, &[a, b]), alg.show(&res));
            }
        }
    }
    Ok(out)
}

/// NS structure on M with twist β:
/// `m ◁ n = l(Tm) n`, `m ▷ n = r(m) Tn`, `m ∨ n = φ(Tm, Tn)`.
pub fn ns_from_twisted_rb(data: &TwistedRbData, strict: bool) -> Result<NsAlgebra> {
    if strict {
        require("twisted Rota-Baxter", verify_twisted_rb(data)?)?;
    }
    let (rep, t, phi) = (&data.rep, &data.t, &data.phi);
    let s = rep.rank();
    let x = MultiPoly::x();
    let table = |f: &dyn Fn(&Element, &Element) -> Element| {
        ProductTable::from_fn(s, s, s, |a, b| f(&rep.basis(a), &rep.basis(b)))
    };
    NsAlgebra::new(
        format!("{}_ns_twisted_rb", data.alg.name),
        rep.basis_names.clone(),
        table(&|m, w| rep.l(&t.apply(m), w, &x)),
        table(&|m, w| rep.r(m, &t.apply(w), &x)),
        table(&|m, w| phi_at(phi, &t.apply(m), &t.apply(w), &x)),
        rep.beta.clone(),
    )
}

/// Twisted Rota-Baxter data from a Nijenhuis operator N: the deformed
/// algebra `L_N`, the module `M = L` with `l(p)m = [Np m]`, `r(m)p = [m Np]`,
/// `β = α`, `T = id` and `φ_λ(p, q) = −N[p_λ q]`.
pub fn twisted_rb_from_nijenhuis(alg: &ConformalAlgebra, n: &PdMap, strict: bool) -> Result<TwistedRbData> {
    let def = deformed_bracket(alg, n, strict)?;
    let r = alg.rank();
    let x = MultiPoly::x();
    let left = ProductTable::from_fn(r, r, r, |i, j| alg.bracket(&n.apply(&alg.basis(i)), &alg.basis(j), &x));
    let right = ProductTable::from_fn(r, r, r, |j, i| alg.bracket(&alg.basis(j), &n.apply(&alg.basis(i)), &x));
    let rep = Representation::new(alg.basis_names.clone(), left, right, alg.alpha.clone(), None)?;
    let phi = Cochain::from_table(&square_table(alg, |p, q, x| -&n.apply(&alg.bracket(p, q, x))))?;
    TwistedRbData::new(def, rep, PdMap::identity(r), phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};
    use crate::samples::virasoro;

    fn bracket_times(c: i64) -> ProductTable {
        virasoro().structure.scale(&rat(c))
    }

    #[test]
    fn nijenhuis_identity_tables() {
        let ns = ns_from_nijenhuis(&virasoro(), &PdMap::identity(1), true).unwrap();
        assert_eq!(ns.left.get(0, 0)[0], parse_poly("D + 2*x").unwrap());
        assert_eq!(ns.right, bracket_times(1));
        assert_eq!(ns.vee, bracket_times(-1));
        assert!(verify_ns_axioms(&ns).passed());
    }

    #[test]
    fn nijenhuis_scalar_and_zero() {
        let ns = ns_from_nijenhuis(&virasoro(), &PdMap::scalar(1, rat(3)), true).unwrap();
        assert_eq!(
            (ns.left.clone(), ns.right.clone(), ns.vee.clone()),
            (bracket_times(3), bracket_times(3), bracket_times(-3))
        );
        let z = ns_from_nijenhuis(&virasoro(), &PdMap::zero(1, 1), true).unwrap();
        assert!(z.left.is_zero() && z.right.is_zero() && z.vee.is_zero());
    }

    #[test]
    fn strict_rejects_non_nijenhuis() {
        let d = PdMap::diagonal(1, &parse_poly("D").unwrap());
        assert!(matches!(
            ns_from_nijenhuis(&virasoro(), &d, true),
            Err(Error::Precondition(_))
        ));
        assert!(ns_from_nijenhuis(&virasoro(), &d, false).is_ok());
    }

    #[test]
    fn rota_baxter_examples() {
        let v = virasoro();
        let ns = ns_from_rb(&v, &PdMap::identity(1), &rat(-1), true).unwrap();
        assert_eq!((ns.left.clone(), ns.vee.clone()), (bracket_times(1), bracket_times(-1)));
        assert!(verify_ns_axioms(&ns).passed());
        let ns = ns_from_rb(&v, &PdMap::scalar(1, rat(-1)), &rat(1), true).unwrap();
        assert_eq!(
            (ns.right.clone(), ns.vee.clone()),
            (bracket_times(-1), bracket_times(1))
        );
        assert!(verify_ns_axioms(&ns).passed());
        let z = ns_from_rb(&v, &PdMap::zero(1, 1), &rat(0), true).unwrap();
        assert!(z.left.is_zero() && z.right.is_zero() && z.vee.is_zero());
        assert!(ns_from_rb(&v, &PdMap::identity(1), &rat(1), true).is_err());
    }

    #[test]
    fn vee_only_reduces_to_hom_leibniz() {
        let v = virasoro();
        let zero = ProductTable::zero(1, 1, 1);
        let ns = NsAlgebra::new(
            "v",
            v.basis_names.clone(),
            zero.clone(),
            zero.clone(),
            v.structure.clone(),
            v.alpha.clone(),
        )
        .unwrap();
        assert!(verify_ns_axioms(&ns).passed());
        assert_eq!(adjacent_algebra(&ns).unwrap().structure, v.structure);
        let mut bad = ProductTable::zero(1, 1, 1);
        bad.set(0, 0, vec![parse_poly("D").unwrap()]).unwrap();
        let ns = NsAlgebra::new("b", v.basis_names.clone(), zero.clone(), zero, bad, v.alpha.clone()).unwrap();
        assert!(!verify_ns_axioms(&ns).passed());
    }

    #[test]
    fn adjacent_of_nijenhuis_is_deformed() {
        let v = virasoro();
        let n = PdMap::scalar(1, rat(2));
        let ns = ns_from_nijenhuis(&v, &n, true).unwrap();
        assert_eq!(
            adjacent_algebra(&ns).unwrap().structure,
            deformed_bracket(&v, &n, true).unwrap().structure
        );
    }

    #[test]
    fn vee_skew_is_separate() {
        let ns = ns_from_nijenhuis(&virasoro(), &PdMap::identity(1), true).unwrap();
        assert!(verify_vee_skew(&ns).passed());
    }

    #[test]
    fn twist_by_identity_and_zero() {
        let ns = ns_from_nijenhuis(&virasoro(), &PdMap::identity(1), true).unwrap();
        let same = twist_ns_by_morphism(&ns, &PdMap::identity(1)).unwrap();
        assert_eq!(
            (same.left, same.right, same.vee),
            (ns.left.clone(), ns.right.clone(), ns.vee.clone())
        );
        let z = twist_ns_by_morphism(&ns, &PdMap::zero(1, 1)).unwrap();
        assert!(z.left.is_zero() && z.vee.is_zero());
        assert!(verify_ns_axioms(&z).passed());
        // 2·id is not multiplicative for a nonzero quadratic product.
        assert!(matches!(
            twist_ns_by_morphism(&ns, &PdMap::scalar(1, rat(2))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn o_operator_examples() {
        let v = virasoro();
        let ad = crate::representation::adjoint_rep(&v);
        assert!(verify_o_operator(&v, &ad, &PdMap::zero(1, 1)).unwrap().passed());
        let rep = verify_o_operator(&v, &ad, &PdMap::identity(1)).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].residual, "L: -D - 2*l1");
    }

    #[test]
    fn twisted_rb_from_scalar_nijenhuis() {
        let v = virasoro();
        let n = PdMap::scalar(1, rat(2));
        let data = twisted_rb_from_nijenhuis(&v, &n, true).unwrap();
        assert!(verify_twisted_rb(&data).unwrap().passed());
        let ns = ns_from_twisted_rb(&data, true).unwrap();
        assert!(verify_ns_axioms(&ns).passed());
        let direct = ns_from_nijenhuis(&v, &n, true).unwrap();
        assert_eq!((ns.left, ns.right, ns.vee), (direct.left, direct.right, direct.vee));
    }

    #[test]
    fn zero_t_is_twisted_rb() {
        let v = virasoro();
        let ad = crate::representation::adjoint_rep(&v);
        let phi = Cochain::from_table(&v.structure).unwrap();
        let data = TwistedRbData::new(v, ad, PdMap::zero(1, 1), phi).unwrap();
        assert!(verify_twisted_rb(&data).unwrap().passed());
        let ns = ns_from_twisted_rb(&data, true).unwrap();
        assert!(ns.left.is_zero() && ns.right.is_zero() && ns.vee.is_zero());
    }
}
