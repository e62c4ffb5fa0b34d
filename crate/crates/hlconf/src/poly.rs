//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are `D` (the derivation ∂), `X` (the formal λ slot of structure
//! polynomials) and `L(k)` for evaluation variables λ₁, λ₂, …. Terms are kept
//! normalized at all times, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The derivation ∂.
    D,
    /// Formal λ slot of structure polynomials.
    X,
    /// Evaluation variable λ_k, k ≥ 1.
    L(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::D => write!(f, "D"),
            Var::X => write!(f, "x"),
            Var::L(k) => write!(f, "l{k}"),
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order: total degree first, then exponents compared
/// variable by variable in the order D < x < l1 < l2 < ….
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.0.get(i);
            let b = other.0.get(j);
            let (ea, eb) = match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => (ea, 0),
                (None, Some(&(_, eb))) => (0, eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => (ea, 0),
                    Ordering::Greater => (0, eb),
                    Ordering::Equal => (ea, eb),
                },
            };
            match ea.cmp(&eb) {
                Ordering::Equal => match (a, b) {
                    (Some(&(va, _)), Some(&(vb, _))) => match va.cmp(&vb) {
                        Ordering::Less => i += 1,
                        Ordering::Greater => j += 1,
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                    (Some(_), None) => i += 1,
                    (None, Some(_)) => j += 1,
                    (None, None) => unreachable!(),
                },
                o => return o,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn d() -> Self {
        MultiPoly::var(Var::D)
    }

    pub fn x() -> Self {
        MultiPoly::var(Var::X)
    }

    /// The evaluation variable λ_k.
    pub fn lam(k: u32) -> Self {
        MultiPoly::var(Var::L(k))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Constant term, zero if absent.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    /// True when every variable satisfies `allowed`.
    pub fn uses_only(&self, allowed: impl Fn(Var) -> bool) -> bool {
        self.vars().into_iter().all(allowed)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Replaces every occurrence of `v` by `target`.
    pub fn substitute(&self, v: Var, target: &MultiPoly) -> MultiPoly {
        self.substitute_many(&[(v, target.clone())])
    }

    /// Replaces `v` by a linear form.
    pub fn substitute_linear(&self, v: Var, target: &LinearForm) -> MultiPoly {
        self.substitute(v, &target.to_poly())
    }

    /// Simultaneous substitution: targets are never re-substituted, so
    /// permutations such as `l1 ↦ l2, l2 ↦ l1` behave as expected.
    pub fn substitute_many(&self, subs: &[(Var, MultiPoly)]) -> MultiPoly {
        if subs.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|_| vec![MultiPoly::one()]).collect();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut factor = MultiPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match subs.iter().position(|(w, _)| *w == v) {
                    Some(idx) => {
                        let cache = &mut powers[idx];
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * &subs[idx].1;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                    None => rest.push((v, e)),
                }
            }
            let rest = Monomial(rest);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), fc);
            }
        }
        out
    }

    /// Multiplies by a monomial scaled by `c`.
    fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &small.terms {
            for (n, a) in large.mul_monomial(m, c).terms {
                out.add_term(n, a);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &'a MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl SubAssign<MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: MultiPoly) {
        *self -= &rhs;
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An affine form `c₀ + Σ c_v·v`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(v: Var) -> Self {
        LinearForm::zero().plus(v, Rational::one())
    }

    /// λ_k.
    pub fn lam(k: u32) -> Self {
        LinearForm::var(Var::L(k))
    }

    /// λ_a + λ_{a+1} + … + λ_b.
    pub fn lam_sum(ks: impl IntoIterator<Item = u32>) -> Self {
        ks.into_iter()
            .fold(LinearForm::zero(), |acc, k| acc.plus(Var::L(k), Rational::one()))
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    /// Adds `c·v`.
    pub fn plus(mut self, v: Var, c: Rational) -> Self {
        let e = self.coeffs.entry(v).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&v);
        }
        self
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out = out.plus(*v, c.clone());
        }
        out.constant += &other.constant;
        out
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, -c)).collect(),
            constant: -&self.constant,
        }
    }

    pub fn coeff(&self, v: Var) -> Rational {
        self.coeffs.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p.add_term(Monomial::var(*v), c.clone());
        }
        p
    }
}

impl From<&LinearForm> for MultiPoly {
    fn from(l: &LinearForm) -> Self {
        l.to_poly()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Errors from [`parse_poly`]. Positions are 1-based character columns.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at column {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("reserved name `{name}` at column {pos}: {msg}")]
    ReservedName { name: String, pos: usize, msg: String },
}

impl PolyError {
    pub fn column(&self) -> usize {
        match self {
            PolyError::Syntax { pos, .. }
            | PolyError::UnknownVariable { pos, .. }
            | PolyError::ReservedName { pos, .. } => *pos,
        }
    }
}

/// Parses a polynomial expression.
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := atom ('^' uint)?
/// atom   := uint ('/' uint)? | var | '(' expr ')'
/// var    := 'D' | 'x' | 'l' uint
/// ```
///
/// A single leading sign is accepted so that printed output such as `-D`
/// parses back.
pub fn parse_poly(text: &str) -> Result<MultiPoly, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars, pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

/// Canonical printing; inverse of [`parse_poly`] on normalized polynomials.
pub fn print_poly(p: &MultiPoly) -> String {
    p.to_string()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            if c == '+' {
                acc += t;
            } else {
                acc -= t;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while let Some('*') = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if let Some('^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(&e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return Err(self.err("expected unsigned integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if let Some('/') = self.peek() {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(MultiPoly::constant(Rational::new(n, d)));
                }
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let col = start + 1;
                match name.as_str() {
                    "D" => Ok(MultiPoly::d()),
                    "x" => Ok(MultiPoly::x()),
                    "X" => Err(PolyError::ReservedName {
                        name,
                        pos: col,
                        msg: "the formal λ slot is written `x`".into(),
                    }),
                    _ => {
                        if let Some(digits) = name.strip_prefix('l') {
                            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                                if let Ok(k) = digits.parse::<u32>() {
                                    if k >= 1 {
                                        return Ok(MultiPoly::lam(k));
                                    }
                                }
                            }
                        }
                        Err(PolyError::UnknownVariable { name, pos: col })
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}
