//! Representations `(M, l, r, β)` of a Hom-Leibniz conformal algebra, with
//! an optional Nijenhuis map `N_M`.
//!
//! `l(p)_λ m` and `r(m)_λ p` are stored as independent product tables, so
//! both actions obey the sesquilinearity rules by construction.

use crate::error::{dim_check, Error, Result};
use crate::operators::{push_map_residual, verify_operator, OperatorKind};
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::structure::{ConformalAlgebra, Element, PdMap, ProductTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub basis_names: Vec<String>,
    /// `l(e_i)_x m_j`, indexed `(i, j)`.
    pub left: ProductTable,
    /// `r(m_j)_x e_i`, indexed `(j, i)`.
    pub right: ProductTable,
    pub beta: PdMap,
    pub n_m: Option<PdMap>,
}

impl Representation {
    pub fn new(
        basis_names: Vec<String>,
        left: ProductTable,
        right: ProductTable,
        beta: PdMap,
        n_m: Option<PdMap>,
    ) -> Result<Self> {
        let s = basis_names.len();
        let a = left.left_rank();
        dim_check(s > 0, || "representation needs a nonempty basis".into())?;
        dim_check(left.right_rank() == s && left.out_rank() == s, || {
            "left action table does not match module rank".into()
        })?;
        dim_check(
            right.left_rank() == s && right.right_rank() == a && right.out_rank() == s,
            || "right action table does not match ranks".into(),
        )?;
        dim_check(beta.rows() == s && beta.cols() == s, || "beta must be square".into())?;
        if let Some(n) = &n_m {
            dim_check(n.rows() == s && n.cols() == s, || "N_M must be square".into())?;
        }
        Ok(Representation {
            basis_names,
            left,
            right,
            beta,
            n_m,
        })
    }

    pub fn alg_rank(&self) -> usize {
        self.left.left_rank()
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis(&self, j: usize) -> Element {
        Element::basis(self.rank(), j)
    }

    /// `l(p)_λ m`.
    pub fn l(&self, p: &Element, m: &Element, lam: &MultiPoly) -> Element {
        self.left.eval(p, m, lam)
    }

    /// `r(m)_λ p`.
    pub fn r(&self, m: &Element, p: &Element, lam: &MultiPoly) -> Element {
        self.right.eval(m, p, lam)
    }

    pub fn beta(&self, m: &Element) -> Element {
        self.beta.apply(m)
    }

    pub fn with_n_m(mut self, n_m: PdMap) -> Result<Self> {
        dim_check(n_m.rows() == self.rank() && n_m.cols() == self.rank(), || {
            "N_M must be square of module rank".into()
        })?;
        self.n_m = Some(n_m);
        Ok(self)
    }

    pub fn n_m(&self) -> Result<&PdMap> {
        self.n_m.as_ref().ok_or(Error::MissingNm)
    }

    pub(crate) fn show(&self, e: &Element) -> String {
        e.display_with(&self.basis_names).to_string()
    }
}

/// `M = L` with `l(p)m = [p m]`, `r(m)p = [m p]`, `β = α`.
pub fn adjoint_rep(alg: &ConformalAlgebra) -> Representation {
    Representation {
        basis_names: alg.basis_names.clone(),
        left: alg.structure.clone(),
        right: alg.structure.clone(),
        beta: alg.alpha.clone(),
        n_m: None,
    }
}

fn check_dims(alg: &ConformalAlgebra, rep: &Representation) -> Result<()> {
    dim_check(rep.alg_rank() == alg.rank(), || {
        format!(
            "representation of an algebra of rank {}, got rank {}",
            rep.alg_rank(),
            alg.rank()
        )
    })
}

/// Checks the representation axioms on basis tuples with λ = l1, μ = l2:
///
/// * `eq3`: `r(βm)_λ[p_μ q] = r(r(m)_λ p)_{λ+μ} αq + l(αp)_μ(r(m)_λ q)`
/// * `eq4`: `r(βm)_λ[p_μ q] = −r(l(p)_μ m)_{λ+μ} αq + l(αp)_μ(r(m)_λ q)`
/// * `eq3-eq4`: `r(r(m)_λ p)_{λ+μ} αq = −r(l(p)_μ m)_{λ+μ} αq`
/// * `l-l`: `l(αp)_λ(l(q)_μ m) = l([p_λ q])_{λ+μ} βm + l(αq)_μ(l(p)_λ m)`
/// * `beta-l`: `β(l(p)_λ m) = l(αp)_λ βm`
/// * `beta-r`: `β(r(m)_λ p) = r(βm)_λ αp`
/// * `sesqui-*`: the four ∂-rules, evaluated on `∂`-multiples of basis vectors.
///
/// Both λ-placements of eq3 and eq4 are checked as written above.
pub fn verify_representation(alg: &ConformalAlgebra, rep: &Representation) -> Result<Report> {
    check_dims(alg, rep)?;
    let mut out = Report::new("representation");
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;
    let (a, s) = (alg.rank(), rep.rank());
    let names = |ps: &[usize], ms: &[usize], order: &[(bool, usize)]| -> String {
        let parts: Vec<String> = order
            .iter()
            .map(|&(is_m, k)| {
                if is_m {
                    rep.basis_names[ms[k]].clone()
                } else {
                    alg.basis_names[ps[k]].clone()
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    };
    let mut push = |cond: &str, ctx: String, res: Element| {
        if !res.is_zero() {
            out.push(format!("{cond} {ctx}"), rep.show(&res));
        }
    };

    for mi in 0..s {
        let m = rep.basis(mi);
        for pi in 0..a {
            let p = alg.basis(pi);
            for qi in 0..a {
                let q = alg.basis(qi);
                let ctx = names(&[pi, qi], &[mi], &[(true, 0), (false, 0), (false, 1)]);
                let lhs = rep.r(&rep.beta(&m), &alg.bracket(&p, &q, &l2), &l1);
                let rr = rep.r(&rep.r(&m, &p, &l1), &alg.alpha(&q), &l12);
                let rl = rep.r(&rep.l(&p, &m, &l2), &alg.alpha(&q), &l12);
                let lr = rep.l(&alg.alpha(&p), &rep.r(&m, &q, &l1), &l2);
                push("eq3", ctx.clone(), &(&lhs - &rr) - &lr);
                push("eq4", ctx.clone(), &(&lhs + &rl) - &lr);
                push("eq3-eq4", ctx, &rr + &rl);
            }
        }
    }
    for pi in 0..a {
        let p = alg.basis(pi);
        for qi in 0..a {
            let q = alg.basis(qi);
            for mi in 0..s {
                let m = rep.basis(mi);
                let ctx = names(&[pi, qi], &[mi], &[(false, 0), (false, 1), (true, 0)]);
                let lhs = rep.l(&alg.alpha(&p), &rep.l(&q, &m, &l2), &l1);
                let t1 = rep.l(&alg.bracket(&p, &q, &l1), &rep.beta(&m), &l12);
                let t2 = rep.l(&alg.alpha(&q), &rep.l(&p, &m, &l1), &l2);
                push("l-l", ctx, &(&lhs - &t1) - &t2);
            }
        }
    }
    let d = MultiPoly::d();
    let shift = &d + &l1;
    let neg = -&l1;
    for pi in 0..a {
        let p = alg.basis(pi);
        let dp = p.mul_poly(&d);
        for mi in 0..s {
            let m = rep.basis(mi);
            let dm = m.mul_poly(&d);
            let pm = names(&[pi], &[mi], &[(false, 0), (true, 0)]);
            let mp = names(&[pi], &[mi], &[(true, 0), (false, 0)]);
            let lpm = rep.l(&p, &m, &l1);
            let rmp = rep.r(&m, &p, &l1);
            push(
                "beta-l",
                pm.clone(),
                &rep.beta(&lpm) - &rep.l(&alg.alpha(&p), &rep.beta(&m), &l1),
            );
            push(
                "beta-r",
                mp.clone(),
                &rep.beta(&rmp) - &rep.r(&rep.beta(&m), &alg.alpha(&p), &l1),
            );
            push("sesqui-l-left", pm.clone(), &rep.l(&dp, &m, &l1) - &lpm.mul_poly(&neg));
            push("sesqui-l-right", pm, &rep.l(&p, &dm, &l1) - &lpm.mul_poly(&shift));
            push("sesqui-r-left", mp.clone(), &rep.r(&dm, &p, &l1) - &rmp.mul_poly(&neg));
            push("sesqui-r-right", mp, &rep.r(&m, &dp, &l1) - &rmp.mul_poly(&shift));
        }
    }
    Ok(out)
}

/// Checks `β∘N_M = N_M∘β` and the two compatibilities
///
/// `l(Np)_λ N_M m = N_M(l(Np)_λ m + l(p)_λ N_M m − N_M l(p)_λ m)`,
/// `r(N_M m)_λ Np = N_M(r(N_M m)_λ p + r(m)_λ Np − N_M r(m)_λ p)`,
///
/// together with the Nijenhuis condition on `n`.
pub fn verify_nijenhuis_representation(alg: &ConformalAlgebra, n: &PdMap, rep: &Representation) -> Result<Report> {
    check_dims(alg, rep)?;
    let nm = rep.n_m()?;
    let mut out = Report::new("nijenhuis_representation");
    out.absorb("nijenhuis", verify_operator(alg, n, &OperatorKind::Nijenhuis)?);
    push_map_residual(&mut out, "beta-commute", &rep.beta.compose(nm), &nm.compose(&rep.beta));
    let l1 = MultiPoly::lam(1);
    for pi in 0..alg.rank() {
        let p = alg.basis(pi);
        let np = n.apply(&p);
        for mi in 0..rep.rank() {
            let m = rep.basis(mi);
            let nmm = nm.apply(&m);
            let lhs = rep.l(&np, &nmm, &l1);
            let inner = &(&rep.l(&np, &m, &l1) + &rep.l(&p, &nmm, &l1)) - &nm.apply(&rep.l(&p, &m, &l1));
            let res = &lhs - &nm.apply(&inner);
            if !res.is_zero() {
                out.push(
                    format!("l ({}, {})", alg.basis_names[pi], rep.basis_names[mi]),
                    rep.show(&res),
                );
            }
            let lhs = rep.r(&nmm, &np, &l1);
            let inner = &(&rep.r(&nmm, &p, &l1) + &rep.r(&m, &np, &l1)) - &nm.apply(&rep.r(&m, &p, &l1));
            let res = &lhs - &nm.apply(&inner);
            if !res.is_zero() {
                out.push(
                    format!("r ({}, {})", rep.basis_names[mi], alg.basis_names[pi]),
                    rep.show(&res),
                );
            }
        }
    }
    Ok(out)
}

/// The representation of the deformed algebra with
/// `l'(p)_λ m = l(Np)_λ m + l(p)_λ N_M m − N_M l(p)_λ m` and the analogous `r'`.
pub fn induced_representation(
    alg: &ConformalAlgebra,
    n: &PdMap,
    rep: &Representation,
    strict: bool,
) -> Result<Representation> {
    check_dims(alg, rep)?;
    let nm = rep.n_m()?.clone();
    dim_check(n.rows() == alg.rank() && n.cols() == alg.rank(), || {
        "N must be square of algebra rank".into()
    })?;
    if strict {
        let chk = verify_nijenhuis_representation(alg, n, rep)?;
        if !chk.passed() {
            return Err(Error::Precondition(format!("not a Nijenhuis representation:\n{chk}")));
        }
    }
    let x = MultiPoly::x();
    let (a, s) = (alg.rank(), rep.rank());
    let left = ProductTable::from_fn(a, s, s, |i, j| {
        let (p, m) = (alg.basis(i), rep.basis(j));
        &(&rep.l(&n.apply(&p), &m, &x) + &rep.l(&p, &nm.apply(&m), &x)) - &nm.apply(&rep.l(&p, &m, &x))
    });
    let right = ProductTable::from_fn(s, a, s, |j, i| {
        let (m, p) = (rep.basis(j), alg.basis(i));
        &(&rep.r(&nm.apply(&m), &p, &x) + &rep.r(&m, &n.apply(&p), &x)) - &nm.apply(&rep.r(&m, &p, &x))
    });
    Ok(Representation {
        basis_names: rep.basis_names.clone(),
        left,
        right,
        beta: rep.beta.clone(),
        n_m: Some(nm),
    })
}
