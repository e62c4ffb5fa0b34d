//! Finite-rank conformal algebras over ℚ[∂].
//!
//! An element of a rank-r free ℚ[∂]-module is a vector of polynomials in `D`
//! and spectator λ variables. A [`ProductTable`] holds structure polynomials
//! `P_ij^k(D, x)`, and every λ-product in the crate (bracket, module actions,
//! NS products) is evaluated through it with the sesquilinearity rules
//! `[f(∂)a_λ g(∂)b] = f(−λ) g(∂+λ) [a_λ b]`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{dim_check, Error, Result};
use crate::poly::{LinearForm, MultiPoly, Rational, Var};
use crate::report::Report;

/// An element of a free ℚ[∂]-module, one coordinate per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<MultiPoly>,
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Element {
            coords: vec![MultiPoly::zero(); rank],
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Element::zero(rank);
        e.coords[i] = MultiPoly::one();
        e
    }

    pub fn new(coords: Vec<MultiPoly>) -> Self {
        Element { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &MultiPoly {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<MultiPoly> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(MultiPoly::is_zero)
    }

    /// Multiplies every coordinate by a polynomial.
    pub fn mul_poly(&self, p: &MultiPoly) -> Element {
        Element {
            coords: self.coords.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn substitute_many(&self, subs: &[(Var, MultiPoly)]) -> Element {
        Element {
            coords: self.coords.iter().map(|c| c.substitute_many(subs)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
    }

    /// Renders nonzero coordinates as `name: poly` pairs.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedElement { e: self, names }
    }
}

struct NamedElement<'a> {
    e: &'a Element,
    names: &'a [String],
}

impl fmt::Display for NamedElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.e.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            match self.names.get(i) {
                Some(n) => write!(f, "{n}: {c}")?,
                None => write!(f, "#{i}: {c}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A ℚ[∂]-linear map between free modules, as a matrix over ℚ[∂].
///
/// The image of the i-th source basis vector is `Σ_j A[j][i] e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdMap {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PdMap {
    /// Builds a map from row-major entries. Entries may only use `D`.
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        dim_check(entries.len() == rows * cols, || {
            format!("{rows}x{cols} map given {} entries", entries.len())
        })?;
        if let Some(bad) = entries.iter().find(|p| !p.uses_only(|v| v == Var::D)) {
            return Err(Error::Invalid(format!(
                "map entry `{bad}` uses a variable other than D"
            )));
        }
        Ok(PdMap { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        dim_check(rows.iter().all(|row| row.len() == c), || {
            "ragged matrix rows".to_string()
        })?;
        PdMap::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PdMap {
            rows,
            cols,
            entries: vec![MultiPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        PdMap::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        PdMap::diagonal(n, &MultiPoly::constant(c))
    }

    /// `p(∂)` times the identity. Panics if `p` uses a variable other than `D`.
    pub fn diagonal(n: usize, p: &MultiPoly) -> Self {
        assert!(p.uses_only(|v| v == Var::D));
        let mut m = PdMap::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &MultiPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn row_vecs(&self) -> Vec<Vec<MultiPoly>> {
        self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// Applies the map. Panics on dimension mismatch; see [`apply_map`].
    pub fn apply(&self, e: &Element) -> Element {
        assert_eq!(self.cols, e.rank(), "map/element dimension mismatch");
        let mut out = Element::zero(self.rows);
        for (i, c) in e.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.rows {
                let a = self.entry(j, i);
                if !a.is_zero() {
                    out.coords[j] += a * c;
                }
            }
        }
        out
    }

    /// Image of the i-th basis vector.
    pub fn column(&self, i: usize) -> Element {
        Element::new((0..self.rows).map(|j| self.entry(j, i).clone()).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PdMap) -> PdMap {
        assert_eq!(self.cols, other.rows, "composition dimension mismatch");
        let mut out = PdMap::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = MultiPoly::zero();
                for k in 0..self.cols {
                    acc += self.entry(r, k) * other.entry(k, c);
                }
                out.entries[r * other.cols + c] = acc;
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> PdMap {
        assert!(self.is_square());
        let mut out = PdMap::identity(self.rows);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PdMap {
        PdMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn zip(&self, other: &PdMap, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> PdMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PdMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &PdMap) -> PdMap {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PdMap) -> PdMap {
        self.zip(other, |a, b| a - b)
    }
}

impl fmt::Display for PdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.row_vecs().iter().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, p) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Checked application of a map to an element.
pub fn apply_map(m: &PdMap, e: &Element) -> Result<Element> {
    dim_check(m.cols() == e.rank(), || {
        format!("map has {} columns, element rank {}", m.cols(), e.rank())
    })?;
    Ok(m.apply(e))
}

/// Structure polynomials of a λ-product `A × B → C` between free modules.
///
/// Entry `(i, j)` is the vector of `P_ij^k(D, x)` with `a_i x b_j = Σ_k P_ij^k c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductTable {
    left_rank: usize,
    right_rank: usize,
    out_rank: usize,
    entries: Vec<Vec<MultiPoly>>,
}

impl ProductTable {
    pub fn zero(left_rank: usize, right_rank: usize, out_rank: usize) -> Self {
        ProductTable {
            left_rank,
            right_rank,
            out_rank,
            entries: vec![vec![MultiPoly::zero(); out_rank]; left_rank * right_rank],
        }
    }

    /// Builds a table from a function returning the product of basis
    /// vectors as an element over `{D, x}`.
    pub fn from_fn(
        left_rank: usize,
        right_rank: usize,
        out_rank: usize,
        mut f: impl FnMut(usize, usize) -> Element,
    ) -> Self {
        let mut t = ProductTable::zero(left_rank, right_rank, out_rank);
        for i in 0..left_rank {
            for j in 0..right_rank {
                let e = f(i, j);
                assert_eq!(e.rank(), out_rank);
                t.entries[i * right_rank + j] = e.into_coords();
            }
        }
        t
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }

    pub fn right_rank(&self) -> usize {
        self.right_rank
    }

    pub fn out_rank(&self) -> usize {
        self.out_rank
    }

    pub fn get(&self, i: usize, j: usize) -> &[MultiPoly] {
        &self.entries[i * self.right_rank + j]
    }

    /// Sets entry `(i, j)`; polynomials may only use `D` and `x`.
    pub fn set(&mut self, i: usize, j: usize, value: Vec<MultiPoly>) -> Result<()> {
        dim_check(i < self.left_rank && j < self.right_rank, || {
            format!("index ({i}, {j}) outside {}x{}", self.left_rank, self.right_rank)
        })?;
        dim_check(value.len() == self.out_rank, || {
            format!("entry has {} components, expected {}", value.len(), self.out_rank)
        })?;
        if let Some(bad) = value.iter().find(|p| !p.uses_only(|v| matches!(v, Var::D | Var::X))) {
            return Err(Error::Invalid(format!(
                "structure polynomial `{bad}` uses a variable other than D and x"
            )));
        }
        self.entries[i * self.right_rank + j] = value;
        Ok(())
    }

    pub fn entry_element(&self, i: usize, j: usize) -> Element {
        Element::new(self.get(i, j).to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MultiPoly::is_zero)
    }

    /// Evaluates `left_λ right` for λ = `lam`.
    pub fn eval(&self, left: &Element, right: &Element, lam: &MultiPoly) -> Element {
        assert_eq!(left.rank(), self.left_rank, "left operand rank");
        assert_eq!(right.rank(), self.right_rank, "right operand rank");
        let neg = -lam;
        let shift = &MultiPoly::d() + lam;
        let lefts: Vec<(usize, MultiPoly)> = left
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.substitute(Var::D, &neg)))
            .collect();
        let rights: Vec<(usize, MultiPoly)> = right
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.substitute(Var::D, &shift)))
            .collect();
        let mut out = Element::zero(self.out_rank);
        for (i, a) in &lefts {
            for (j, b) in &rights {
                let entry = self.get(*i, *j);
                if entry.iter().all(MultiPoly::is_zero) {
                    continue;
                }
                let coef = a * b;
                for (k, p) in entry.iter().enumerate() {
                    if !p.is_zero() {
                        out.coords[k] += p.substitute(Var::X, lam) * &coef;
                    }
                }
            }
        }
        out
    }

    fn zip(&self, other: &ProductTable, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Self {
        assert_eq!(
            (self.left_rank, self.right_rank, self.out_rank),
            (other.left_rank, other.right_rank, other.out_rank)
        );
        ProductTable {
            left_rank: self.left_rank,
            right_rank: self.right_rank,
            out_rank: self.out_rank,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| f(p, q)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &ProductTable) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ProductTable) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.zip(self, |a, _| a.scale(c))
    }

    /// Post-composes every entry with `m`.
    pub fn then(&self, m: &PdMap) -> Self {
        assert_eq!(m.cols(), self.out_rank);
        ProductTable::from_fn(self.left_rank, self.right_rank, m.rows(), |i, j| {
            m.apply(&self.entry_element(i, j))
        })
    }
}

/// A rank-r conformal algebra with twist α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    pub name: String,
    pub basis_names: Vec<String>,
    pub structure: ProductTable,
    pub alpha: PdMap,
}

impl ConformalAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        structure: ProductTable,
        alpha: PdMap,
    ) -> Result<Self> {
        let r = basis_names.len();
        dim_check(r > 0, || "algebra needs a nonempty basis".into())?;
        dim_check(
            structure.left_rank == r && structure.right_rank == r && structure.out_rank == r,
            || format!("structure table does not match rank {r}"),
        )?;
        dim_check(alpha.rows() == r && alpha.cols() == r, || {
            format!("alpha is {}x{}, expected {r}x{r}", alpha.rows(), alpha.cols())
        })?;
        Ok(ConformalAlgebra {
            name: name.into(),
            basis_names,
            structure,
            alpha,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.rank(), i)
    }

    pub fn bracket(&self, a: &Element, b: &Element, lam: &MultiPoly) -> Element {
        self.structure.eval(a, b, lam)
    }

    pub fn alpha(&self, e: &Element) -> Element {
        self.alpha.apply(e)
    }

    /// Same algebra with a different bracket.
    pub fn with_structure(&self, structure: ProductTable) -> ConformalAlgebra {
        ConformalAlgebra {
            structure,
            ..self.clone()
        }
    }

    pub(crate) fn tuple_name(&self, idx: &[usize]) -> String {
        tuple_name(&self.basis_names, idx)
    }

    pub(crate) fn show(&self, e: &Element) -> String {
        e.display_with(&self.basis_names).to_string()
    }
}

pub(crate) fn tuple_name(names: &[String], idx: &[usize]) -> String {
    let parts: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
    format!("({})", parts.join(", "))
}

/// Checked bracket evaluation.
pub fn eval_bracket(alg: &ConformalAlgebra, left: &Element, right: &Element, lam: &LinearForm) -> Result<Element> {
    dim_check(left.rank() == alg.rank() && right.rank() == alg.rank(), || {
        format!(
            "operands of rank {} and {} for an algebra of rank {}",
            left.rank(),
            right.rank(),
            alg.rank()
        )
    })?;
    Ok(alg.bracket(left, right, &lam.to_poly()))
}

/// `α[e_i λ e_j] = [α e_i λ α e_j]` on basis pairs.
pub fn verify_multiplicativity(alg: &ConformalAlgebra) -> Report {
    let mut rep = Report::new("multiplicativity");
    let l1 = MultiPoly::lam(1);
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let lhs = alg.alpha(&alg.bracket(&p, &q, &l1));
            let rhs = alg.bracket(&alg.alpha(&p), &alg.alpha(&q), &l1);
            let res = &lhs - &rhs;
            if !res.is_zero() {
                rep.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }
    rep
}

/// `[αp_λ[q_μ r]] = [[p_λ q]_{λ+μ} αr] + [αq_μ[p_λ r]]` on basis triples,
/// with λ = l1 and μ = l2.
pub fn verify_hom_leibniz(alg: &ConformalAlgebra) -> Report {
    let mut rep = Report::new("hom_leibniz");
    let (l1, l2) = (MultiPoly::lam(1), MultiPoly::lam(2));
    let l12 = &l1 + &l2;
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let (p, q, s) = (alg.basis(i), alg.basis(j), alg.basis(k));
                let lhs = alg.bracket(&alg.alpha(&p), &alg.bracket(&q, &s, &l2), &l1);
                let t1 = alg.bracket(&alg.bracket(&p, &q, &l1), &alg.alpha(&s), &l12);
                let t2 = alg.bracket(&alg.alpha(&q), &alg.bracket(&p, &s, &l1), &l2);
                let res = &(&lhs - &t1) - &t2;
                if !res.is_zero() {
                    rep.push(alg.tuple_name(&[i, j, k]), alg.show(&res));
                }
            }
        }
    }
    rep
}

/// `[p_λ q] = −[q_{−∂−λ} p]` on basis pairs.
pub fn verify_skew_symmetry(alg: &ConformalAlgebra) -> Report {
    let mut rep = Report::new("skew_symmetry");
    let l1 = MultiPoly::lam(1);
    let flipped = -(&MultiPoly::d() + &l1);
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.basis(i), alg.basis(j));
            let lhs = alg.bracket(&p, &q, &l1);
            let other = alg.bracket(&q, &p, &flipped);
            let res = &lhs + &other;
            if !res.is_zero() {
                rep.push(alg.tuple_name(&[i, j]), alg.show(&res));
            }
        }
    }
    rep
}

/// A finite-dimensional algebra over ℚ with twist, the input of the current
/// algebra construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub basis_names: Vec<String>,
    /// `constants[i][j][k]`: coefficient of e_k in [e_i, e_j].
    pub constants: Vec<Vec<Vec<Rational>>>,
    /// Row-major; column i is the image of e_i.
    pub twist: Vec<Vec<Rational>>,
}

impl FiniteAlgebra {
    pub fn new(
        basis_names: Vec<String>,
        constants: Vec<Vec<Vec<Rational>>>,
        twist: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = basis_names.len();
        dim_check(n > 0, || "empty basis".into())?;
        dim_check(
            constants.len() == n
                && constants
                    .iter()
                    .all(|row| row.len() == n && row.iter().all(|v| v.len() == n)),
            || format!("structure constants must be {n}x{n}x{n}"),
        )?;
        dim_check(twist.len() == n && twist.iter().all(|row| row.len() == n), || {
            format!("twist must be {n}x{n}")
        })?;
        Ok(FiniteAlgebra {
            basis_names,
            constants,
            twist,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &c * &self.constants[i][j][k];
                }
            }
        }
        out
    }

    pub fn twist(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| &self.twist[j][i] * &x[i]).sum())
            .collect()
    }

    /// Basis triples violating `[αx,[y,z]] = [[x,y],αz] + [αy,[x,z]]`.
    pub fn hom_leibniz_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let e = |i: usize| -> Vec<Rational> {
            (0..n)
                .map(|k| if k == i { Rational::one() } else { Rational::zero() })
                .collect()
        };
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let lhs = self.bracket(&self.twist(&x), &self.bracket(&y, &z));
                    let a = self.bracket(&self.bracket(&x, &y), &self.twist(&z));
                    let b = self.bracket(&self.twist(&y), &self.bracket(&x, &z));
                    if (0..n).any(|t| lhs[t] != &a[t] + &b[t]) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

/// The current conformal algebra: constant structure polynomials and a
/// constant twist.
pub fn current_algebra(name: &str, fin: &FiniteAlgebra) -> ConformalAlgebra {
    let n = fin.dim();
    let structure = ProductTable::from_fn(n, n, n, |i, j| {
        Element::new(
            fin.constants[i][j]
                .iter()
                .map(|c| MultiPoly::constant(c.clone()))
                .collect(),
        )
    });
    let alpha = PdMap::from_rows(
        fin.twist
            .iter()
            .map(|row| row.iter().map(|c| MultiPoly::constant(c.clone())).collect())
            .collect(),
    )
    .expect("validated twist");
    ConformalAlgebra::new(name, fin.basis_names.clone(), structure, alpha).expect("validated dims")
}
