//! Cochains with values in a representation and the coboundary operators
//! δ (Hom-Leibniz), ∂_HN (Nijenhuis operator complex), d_HNLA, and the
//! comparison map φ.
//!
//! A cochain of arity n stores, for each n-tuple of basis indices, a module
//! element whose coordinates are polynomials in `D` and `l1 … l(n−1)`.
//! Evaluation on arbitrary arguments uses the ∂-rules: a `∂` on argument i < n
//! becomes `−λ_i`, and on the last argument becomes `∂ + λ_1 + … + λ_{n−1}`.
//!
//! Insertion terms follow the positional convention: the bracket `[p_i λ_i p_j]`
//! replaces `p_j` in place, carries the label `λ_i + λ_j` when `j ≤ n`, and
//! `p_i`, `λ_i` are dropped. [`coboundary_homl_leading2`] implements the
//! alternative arity-2 formula with the bracket moved to the first slot.

use num_traits::One;
use rand::Rng;

use crate::error::{dim_check, Error, Result};
use crate::operators::deformed_bracket;
use crate::poly::{rat, Monomial, MultiPoly, Rational, Var};
use crate::report::Report;
use crate::representation::{induced_representation, Representation};
use crate::structure::{tuple_name, ConformalAlgebra, Element, PdMap, ProductTable};

/// All n-tuples over `0..rank` in lexicographic order.
pub fn tuples(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..rank).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    alg_rank: usize,
    rep_rank: usize,
    values: Vec<Element>,
}

impl Cochain {
    pub fn zero(arity: usize, alg_rank: usize, rep_rank: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Arity("cochains have arity at least 1".into()));
        }
        Ok(Cochain {
            arity,
            alg_rank,
            rep_rank,
            values: vec![Element::zero(rep_rank); alg_rank.pow(arity as u32)],
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alg_rank(&self) -> usize {
        self.alg_rank
    }

    pub fn rep_rank(&self) -> usize {
        self.rep_rank
    }

    fn index(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.arity);
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.alg_rank);
            acc * self.alg_rank + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Element {
        &self.values[self.index(idx)]
    }

    /// Sets the value on a basis tuple; coordinates may use `D` and `l1 … l(n−1)`.
    pub fn set(&mut self, idx: &[usize], value: Element) -> Result<()> {
        if idx.len() != self.arity {
            return Err(Error::Arity(format!(
                "tuple of length {} for a cochain of arity {}",
                idx.len(),
                self.arity
            )));
        }
        dim_check(idx.iter().all(|&i| i < self.alg_rank), || {
            format!("basis index out of range in {idx:?}")
        })?;
        dim_check(value.rank() == self.rep_rank, || {
            format!("value of rank {}, module rank {}", value.rank(), self.rep_rank)
        })?;
        let n = self.arity as u32;
        let allowed = |v: Var| match v {
            Var::D => true,
            Var::X => false,
            Var::L(k) => k < n,
        };
        if let Some(bad) = value.coords().iter().find(|p| !p.uses_only(allowed)) {
            return Err(Error::Invalid(format!(
                "cochain value `{bad}` may only use D and l1..l{}",
                n - 1
            )));
        }
        let k = self.index(idx);
        self.values[k] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Element::is_zero)
    }

    fn zip(&self, other: &Cochain, f: impl Fn(&Element, &Element) -> Element) -> Cochain {
        assert_eq!(
            (self.arity, self.alg_rank, self.rep_rank),
            (other.arity, other.alg_rank, other.rep_rank)
        );
        Cochain {
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| v.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// Applies a module map to every value.
    pub fn then(&self, m: &PdMap) -> Cochain {
        assert_eq!(m.cols(), self.rep_rank);
        Cochain {
            rep_rank: m.rows(),
            values: self.values.iter().map(|v| m.apply(v)).collect(),
            ..self.clone()
        }
    }

    /// Evaluates on arbitrary arguments with λ-parameters `lams`.
    pub fn eval(&self, args: &[Element], lams: &[MultiPoly]) -> Element {
        let n = self.arity;
        assert_eq!(args.len(), n, "argument count");
        assert_eq!(lams.len(), n - 1, "λ count");
        let total = lams.iter().fold(MultiPoly::zero(), |acc, l| acc + l);
        let shift = &MultiPoly::d() + &total;
        let slots: Vec<Vec<(usize, MultiPoly)>> = args
            .iter()
            .enumerate()
            .map(|(s, a)| {
                assert_eq!(a.rank(), self.alg_rank, "argument rank");
                let target = if s + 1 < n { -&lams[s] } else { shift.clone() };
                a.coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.substitute(Var::D, &target)))
                    .collect()
            })
            .collect();
        let subs: Vec<(Var, MultiPoly)> = (1..n).map(|k| (Var::L(k as u32), lams[k - 1].clone())).collect();
        let mut out = Element::zero(self.rep_rank);
        let mut idx = vec![0usize; n];
        fn walk(
            f: &Cochain,
            slots: &[Vec<(usize, MultiPoly)>],
            subs: &[(Var, MultiPoly)],
            depth: usize,
            idx: &mut Vec<usize>,
            coef: MultiPoly,
            out: &mut Element,
        ) {
            if depth == slots.len() {
                let v = f.get(idx);
                if !v.is_zero() {
                    out.add_assign(&v.substitute_many(subs).mul_poly(&coef));
                }
                return;
            }
            for (i, c) in &slots[depth] {
                idx[depth] = *i;
                walk(f, slots, subs, depth + 1, idx, &coef * c, out);
            }
        }
        walk(self, &slots, &subs, 0, &mut idx, MultiPoly::one(), &mut out);
        out
    }

    /// Arity-2 cochain from a bracket-shaped table, with `x ↦ l1`.
    pub fn from_table(table: &ProductTable) -> Result<Cochain> {
        dim_check(table.left_rank() == table.right_rank(), || {
            "table must be square".into()
        })?;
        let mut c = Cochain::zero(2, table.left_rank(), table.out_rank())?;
        let l1 = MultiPoly::lam(1);
        for t in tuples(table.left_rank(), 2) {
            let v = table.entry_element(t[0], t[1]).substitute_many(&[(Var::X, l1.clone())]);
            c.set(&t, v)?;
        }
        Ok(c)
    }

    /// Inverse of [`Cochain::from_table`].
    pub fn to_table(&self) -> Result<ProductTable> {
        if self.arity != 2 {
            return Err(Error::Arity("only arity-2 cochains are bracket tables".into()));
        }
        let x = MultiPoly::x();
        Ok(ProductTable::from_fn(
            self.alg_rank,
            self.alg_rank,
            self.rep_rank,
            |i, j| self.get(&[i, j]).substitute_many(&[(Var::L(1), x.clone())]),
        ))
    }

    /// Arity-1 cochain with value `m(e_i)` on `e_i`.
    pub fn from_map(m: &PdMap) -> Cochain {
        let mut c = Cochain::zero(1, m.cols(), m.rows()).expect("arity 1");
        for i in 0..m.cols() {
            c.set(&[i], m.column(i)).expect("map entries only use D");
        }
        c
    }

    /// Inverse of [`Cochain::from_map`].
    pub fn to_map(&self) -> Result<PdMap> {
        if self.arity != 1 {
            return Err(Error::Arity("only arity-1 cochains are module maps".into()));
        }
        let rows = (0..self.rep_rank)
            .map(|j| (0..self.alg_rank).map(|i| self.get(&[i]).coord(j).clone()).collect())
            .collect();
        PdMap::from_rows(rows)
    }

    /// Nonzero values as `(tuple, element)` lines, for reports.
    pub fn describe(&self, alg_names: &[String], rep_names: &[String]) -> Vec<(String, String)> {
        tuples(self.alg_rank, self.arity)
            .into_iter()
            .filter_map(|t| {
                let v = self.get(&t);
                (!v.is_zero()).then(|| (tuple_name(alg_names, &t), v.display_with(rep_names).to_string()))
            })
            .collect()
    }
}

/// Checked evaluation.
pub fn eval_cochain(f: &Cochain, args: &[Element], lams: &[MultiPoly]) -> Result<Element> {
    if args.len() != f.arity || lams.len() + 1 != f.arity {
        return Err(Error::Arity(format!(
            "cochain of arity {} given {} arguments and {} λ values",
            f.arity,
            args.len(),
            lams.len()
        )));
    }
    dim_check(args.iter().all(|a| a.rank() == f.alg_rank), || {
        "argument rank does not match the cochain".into()
    })?;
    Ok(f.eval(args, lams))
}

fn check_ranks(f: &Cochain, alg: &ConformalAlgebra, rep: &Representation) -> Result<()> {
    dim_check(
        f.alg_rank == alg.rank() && rep.alg_rank() == alg.rank() && f.rep_rank == rep.rank(),
        || {
            format!(
                "cochain ranks ({}, {}) against algebra rank {} and module rank {}",
                f.alg_rank,
                f.rep_rank,
                alg.rank(),
                rep.rank()
            )
        },
    )
}

fn formal_lams(k: usize) -> Vec<MultiPoly> {
    (1..=k as u32).map(MultiPoly::lam).collect()
}

/// Pushes the nonzero values of `c` into a report.
fn report_nonzero(rep: &mut Report, label: &str, c: &Cochain, alg: &[String], m: &[String]) {
    for (t, v) in c.describe(alg, m) {
        rep.push(format!("{label} {t}"), v);
    }
}

/// `f(αp_1, …, αp_n) = β f(p_1, …, p_n)` on basis tuples.
pub fn check_cochain_compat(f: &Cochain, alg: &ConformalAlgebra, rep: &Representation) -> Result<Report> {
    check_ranks(f, alg, rep)?;
    let mut out = Report::new("cochain_compat");
    let lams = formal_lams(f.arity - 1);
    for t in tuples(alg.rank(), f.arity) {
        let args: Vec<Element> = t.iter().map(|&i| alg.alpha(&alg.basis(i))).collect();
        let res = &f.eval(&args, &lams) - &rep.beta(f.get(&t));
        if !res.is_zero() {
            out.push(alg.tuple_name(&t), rep.show(&res));
        }
    }
    Ok(out)
}

/// The ingredients of a coboundary: the algebra data and the three kinds
/// of terms.
type Product<'a> = Box<dyn Fn(&Element, &Element, &MultiPoly) -> Element + 'a>;

struct Complex<'a> {
    rank: usize,
    rep_rank: usize,
    alpha: &'a PdMap,
    left: Product<'a>,
    right: Product<'a>,
    bracket: Product<'a>,
}

fn coboundary_generic(f: &Cochain, cx: &Complex<'_>) -> Cochain {
    let n = f.arity;
    let mut out = Cochain::zero(n + 1, cx.rank, cx.rep_rank).expect("arity >= 2");
    let lam = formal_lams(n);
    let alpha_n1 = cx.alpha.pow(n - 1);
    let sign = |k: usize| if k.is_multiple_of(2) { Rational::one() } else { rat(-1) };
    for t in tuples(cx.rank, n + 1) {
        let ps: Vec<Element> = t.iter().map(|&i| Element::basis(cx.rank, i)).collect();
        let aps: Vec<Element> = ps.iter().map(|p| cx.alpha.apply(p)).collect();
        let mut acc = Element::zero(cx.rep_rank);
        // l-terms, i = 1..n (1-based)
        for i in 1..=n {
            let args: Vec<Element> = (1..=n + 1).filter(|&k| k != i).map(|k| ps[k - 1].clone()).collect();
            let ls: Vec<MultiPoly> = (1..=n).filter(|&k| k != i).map(|k| lam[k - 1].clone()).collect();
            let v = f.eval(&args, &ls);
            let term = (cx.left)(&alpha_n1.apply(&ps[i - 1]), &v, &lam[i - 1]);
            acc.add_assign(&term.scale(&sign(i + 1)));
        }
        // r-term
        let v = f.eval(&ps[..n], &lam[..n - 1]);
        let total = lam.iter().fold(MultiPoly::zero(), |a, l| a + l);
        let term = (cx.right)(&v, &alpha_n1.apply(&ps[n]), &total);
        acc.add_assign(&term.scale(&sign(n + 1)));
        // insertion terms, i < j ≤ n+1
        for i in 1..=n {
            for j in i + 1..=n + 1 {
                let br = (cx.bracket)(&ps[i - 1], &ps[j - 1], &lam[i - 1]);
                let args: Vec<Element> = (1..=n + 1)
                    .filter(|&k| k != i)
                    .map(|k| if k == j { br.clone() } else { aps[k - 1].clone() })
                    .collect();
                let ls: Vec<MultiPoly> = (1..=n)
                    .filter(|&k| k != i)
                    .map(|k| {
                        if k == j {
                            &lam[i - 1] + &lam[j - 1]
                        } else {
                            lam[k - 1].clone()
                        }
                    })
                    .collect();
                let term = f.eval(&args, &ls);
                acc.add_assign(&term.scale(&sign(i)));
            }
        }
        out.set(&t, acc).expect("coboundary values use D and l1..ln");
    }
    out
}

/// δ: arity n → n+1,
///
/// `Σ_i (−1)^{i+1} l(α^{n−1}p_i)_{λ_i} f(…p̂_i…)
///  + (−1)^{n+1} r(f(p_1…p_n))_{λ_1+…+λ_n} α^{n−1}p_{n+1}
///  + Σ_{i<j} (−1)^i f(αp_1, …, p̂_i, …, [p_i λ_i p_j], …, αp_{n+1})`.
pub fn coboundary_homl(f: &Cochain, alg: &ConformalAlgebra, rep: &Representation) -> Result<Cochain> {
    check_ranks(f, alg, rep)?;
    let cx = Complex {
        rank: alg.rank(),
        rep_rank: rep.rank(),
        alpha: &alg.alpha,
        left: Box::new(|p, m, l| rep.l(p, m, l)),
        right: Box::new(|m, p, l| rep.r(m, p, l)),
        bracket: Box::new(|p, q, l| alg.bracket(p, q, l)),
    };
    Ok(coboundary_generic(f, &cx))
}

/// The arity-2 coboundary with every insertion term placed in the first
/// slot under the label `λ_1 + λ_2`:
///
/// `l(αp_1)_{λ_1} f_{λ_2}(p_2,p_3) − l(αp_2)_{λ_2} f_{λ_1}(p_1,p_3)
///  − r(f_{λ_1}(p_1,p_2))_{λ_1+λ_2} αp_3 − f_{λ_1+λ_2}([p_1 λ_1 p_2], αp_3)
///  + f_{λ_1+λ_2}([p_1 λ_1 p_3], αp_2) − f_{λ_1+λ_2}([p_2 λ_2 p_3], αp_1)`.
///
/// Differs from [`coboundary_homl`] in general and does not square to zero.
pub fn coboundary_homl_leading2(f: &Cochain, alg: &ConformalAlgebra, rep: &Representation) -> Result<Cochain> {
    check_ranks(f, alg, rep)?;
    if f.arity != 2 {
        return Err(Error::Arity("the leading-slot formula is for arity 2".into()));
    }
    let r = alg.rank();
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;
    let mut out = Cochain::zero(3, r, rep.rank())?;
    for t in tuples(r, 3) {
        let p: Vec<Element> = t.iter().map(|&i| alg.basis(i)).collect();
        let a: Vec<Element> = p.iter().map(|x| alg.alpha(x)).collect();
        let f2 = |x: &Element, y: &Element, l: &MultiPoly| f.eval(&[x.clone(), y.clone()], std::slice::from_ref(l));
        let mut acc = rep.l(&a[0], &f2(&p[1], &p[2], &l2), &l1);
        acc.sub_assign(&rep.l(&a[1], &f2(&p[0], &p[2], &l1), &l2));
        acc.sub_assign(&rep.r(&f2(&p[0], &p[1], &l1), &a[2], &l12));
        acc.sub_assign(&f2(&alg.bracket(&p[0], &p[1], &l1), &a[2], &l12));
        acc.add_assign(&f2(&alg.bracket(&p[0], &p[2], &l1), &a[1], &l12));
        acc.sub_assign(&f2(&alg.bracket(&p[1], &p[2], &l2), &a[0], &l12));
        out.set(&t, acc)?;
    }
    Ok(out)
}

/// ∂_HN, written out in terms of the undeformed data:
/// `l'(p) = l(Np) + l(p)N_M − N_M l(p)`, `r'(m) = r(N_M m) + r(m)N − N_M r(m)`
/// and `[p q]_N = [Np q] + [p Nq] − N[p q]`, with the same term layout as δ.
pub fn coboundary_hn(g: &Cochain, alg: &ConformalAlgebra, n: &PdMap, rep: &Representation) -> Result<Cochain> {
    check_ranks(g, alg, rep)?;
    let nm = rep.n_m()?;
    dim_check(n.rows() == alg.rank() && n.cols() == alg.rank(), || {
        "N must be square of algebra rank".into()
    })?;
    let cx = Complex {
        rank: alg.rank(),
        rep_rank: rep.rank(),
        alpha: &alg.alpha,
        left: Box::new(move |p, m, l| {
            let mut acc = rep.l(&n.apply(p), m, l);
            acc.add_assign(&rep.l(p, &nm.apply(m), l));
            acc.sub_assign(&nm.apply(&rep.l(p, m, l)));
            acc
        }),
        right: Box::new(move |m, p, l| {
            let mut acc = rep.r(&nm.apply(m), p, l);
            acc.add_assign(&rep.r(m, &n.apply(p), l));
            acc.sub_assign(&nm.apply(&rep.r(m, p, l)));
            acc
        }),
        bracket: Box::new(move |p, q, l| {
            let mut acc = alg.bracket(&n.apply(p), q, l);
            acc.add_assign(&alg.bracket(p, &n.apply(q), l));
            acc.sub_assign(&n.apply(&alg.bracket(p, q, l)));
            acc
        }),
    };
    Ok(coboundary_generic(g, &cx))
}

/// δ computed over the deformed algebra and the induced representation;
/// equal to [`coboundary_hn`].
pub fn coboundary_hn_via_deformation(
    g: &Cochain,
    alg: &ConformalAlgebra,
    n: &PdMap,
    rep: &Representation,
) -> Result<Cochain> {
    let def = deformed_bracket(alg, n, false)?;
    let ind = induced_representation(alg, n, rep, false)?;
    coboundary_homl(g, &def, &ind)
}

/// Which form of φⁿ to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiFormula {
    /// `Σ_{S ⊆ {1..n}} (−1)^{|S|} N_M^{|S|} f(q_1, …, q_n)` with `q_i = p_i`
    /// for `i ∈ S` and `q_i = Np_i` otherwise.
    #[default]
    Alternating,
    /// `f(Np_1, …, Np_n) − Σ_i N_M f(Np_1, …, p_i, …, Np_n) + N_M² f(p_1, …, p_n)`.
    Truncated,
}

/// φⁿ(f). Both forms agree for n ≤ 2.
pub fn phi_map(f: &Cochain, n: &PdMap, rep: &Representation, formula: PhiFormula) -> Result<Cochain> {
    let nm = rep.n_m()?;
    dim_check(
        n.rows() == f.alg_rank && n.cols() == f.alg_rank && f.rep_rank == rep.rank(),
        || "φ: dimension mismatch".into(),
    )?;
    let k = f.arity;
    let lams = formal_lams(k - 1);
    let nm_pows: Vec<PdMap> = (0..=k.max(2)).map(|e| nm.pow(e)).collect();
    let mut out = Cochain::zero(k, f.alg_rank, f.rep_rank)?;
    for t in tuples(f.alg_rank, k) {
        let ps: Vec<Element> = t.iter().map(|&i| Element::basis(f.alg_rank, i)).collect();
        let nps: Vec<Element> = ps.iter().map(|p| n.apply(p)).collect();
        let mut acc = Element::zero(f.rep_rank);
        for mask in 0u32..(1 << k) {
            let size = mask.count_ones() as usize;
            let terms: Vec<(Rational, usize)> = match formula {
                PhiFormula::Alternating => {
                    vec![(if size.is_multiple_of(2) { rat(1) } else { rat(-1) }, size)]
                }
                PhiFormula::Truncated => {
                    let mut v = Vec::new();
                    if size == 0 {
                        v.push((rat(1), 0));
                    }
                    if size == 1 {
                        v.push((rat(-1), 1));
                    }
                    if size == k {
                        v.push((rat(1), 2));
                    }
                    v
                }
            };
            if terms.is_empty() {
                continue;
            }
            let args: Vec<Element> = (0..k)
                .map(|s| {
                    if mask & (1 << s) != 0 {
                        ps[s].clone()
                    } else {
                        nps[s].clone()
                    }
                })
                .collect();
            let v = f.eval(&args, &lams);
            for (sign, power) in terms {
                acc.add_assign(&nm_pows[power].apply(&v).scale(&sign));
            }
        }
        out.set(&t, acc)?;
    }
    Ok(out)
}

/// An element `(f, g)` of `C^n_HomL ⊕ C^{n−1}_HN`; `g = None` is zero
/// (only meaningful for n = 1, where the second summand is not modelled).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnlaPair {
    pub f: Cochain,
    pub g: Option<Cochain>,
}

impl HnlaPair {
    pub fn new(f: Cochain, g: Option<Cochain>) -> Result<Self> {
        if let Some(g) = &g {
            if g.arity + 1 != f.arity {
                return Err(Error::Arity(format!(
                    "pair arities {} and {} must differ by one",
                    f.arity, g.arity
                )));
            }
            dim_check(g.alg_rank == f.alg_rank && g.rep_rank == f.rep_rank, || {
                "pair components have different ranks".into()
            })?;
        }
        Ok(HnlaPair { f, g })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.as_ref().is_none_or(Cochain::is_zero)
    }
}

/// `d(f, g) = (δf, −∂_HN g − φ(f))`.
pub fn coboundary_hnla(
    pair: &HnlaPair,
    alg: &ConformalAlgebra,
    n: &PdMap,
    rep: &Representation,
    formula: PhiFormula,
) -> Result<HnlaPair> {
    let df = coboundary_homl(&pair.f, alg, rep)?;
    let mut g = phi_map(&pair.f, n, rep, formula)?.neg();
    if let Some(h) = &pair.g {
        g = g.sub(&coboundary_hn(h, alg, n, rep)?);
    }
    HnlaPair::new(df, Some(g))
}

/// Whether δf = 0, with the nonzero values of δf as violations.
pub fn is_cocycle(f: &Cochain, alg: &ConformalAlgebra, rep: &Representation) -> Result<Report> {
    let d = coboundary_homl(f, alg, rep)?;
    let mut out = Report::new("cocycle");
    report_nonzero(&mut out, "delta", &d, &alg.basis_names, &rep.basis_names);
    Ok(out)
}

/// Whether `d(f, g) = (0, 0)`.
pub fn is_hnla_cocycle(
    pair: &HnlaPair,
    alg: &ConformalAlgebra,
    n: &PdMap,
    rep: &Representation,
    formula: PhiFormula,
) -> Result<Report> {
    let d = coboundary_hnla(pair, alg, n, rep, formula)?;
    let mut out = Report::new("hnla_cocycle");
    report_nonzero(&mut out, "f", &d.f, &alg.basis_names, &rep.basis_names);
    if let Some(g) = &d.g {
        report_nonzero(&mut out, "g", g, &alg.basis_names, &rep.basis_names);
    }
    Ok(out)
}

/// Reports the nonzero entries of `a − b` under a given check name.
pub fn compare_cochains(name: &str, a: &Cochain, b: &Cochain, alg_names: &[String], rep_names: &[String]) -> Report {
    let mut out = Report::new(name);
    report_nonzero(&mut out, "", &a.sub(b), alg_names, rep_names);
    for v in &mut out.violations {
        v.context = v.context.trim_start().to_string();
    }
    out
}

/// Random polynomial in `vars` of total degree ≤ `max_deg`, small integer
/// coefficients, roughly half the monomials present.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &[Var], max_deg: u32) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for exps in exponent_vectors(vars.len(), max_deg) {
        if rng.gen_bool(0.5) {
            let c: i64 = rng.gen_range(-3..=3);
            let m = Monomial::from_pairs(vars.iter().copied().zip(exps));
            out += MultiPoly::monomial(m, rat(c));
        }
    }
    out
}

fn exponent_vectors(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_deg - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Random cochain with entries of total degree ≤ `max_deg` in `D, l1 … l(n−1)`.
pub fn random_cochain<R: Rng>(
    rng: &mut R,
    arity: usize,
    alg_rank: usize,
    rep_rank: usize,
    max_deg: u32,
) -> Result<Cochain> {
    let mut c = Cochain::zero(arity, alg_rank, rep_rank)?;
    let vars: Vec<Var> = std::iter::once(Var::D).chain((1..arity as u32).map(Var::L)).collect();
    for t in tuples(alg_rank, arity) {
        let v = Element::new((0..rep_rank).map(|_| random_poly(rng, &vars, max_deg)).collect());
        c.set(&t, v)?;
    }
    Ok(c)
}

/// Random `rows × cols` map with entries of ∂-degree ≤ `max_deg`.
pub fn random_map<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_deg: u32) -> PdMap {
    let entries = (0..rows * cols).map(|_| random_poly(rng, &[Var::D], max_deg)).collect();
    PdMap::new(rows, cols, entries).expect("entries only use D")
}
