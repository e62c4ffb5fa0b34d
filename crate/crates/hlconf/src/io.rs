//! The definition file format: a parser with line/column diagnostics, a
//! typed model, and a canonical printer.
//!
//! ```text
//! file    := section+
//! section := '[' ident (':' ident)? ']' entry*
//! entry   := key '=' value
//! key     := ident ('.' ident)*
//! value   := string | '[' value (',' value)* ']'
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Section kinds:
//!
//! * `[algebra]`: `name`, `basis`, `alpha` (default identity),
//!   `bracket.A.B = [coords]` (default zero), polynomials in `D` and `x`.
//! * `[finite:NAME]`: `basis`, `twist`, `bracket.A.B = [constants]`.
//! * `[operator:NAME]`: `matrix`.
//! * `[representation:NAME]`: either `kind = "adjoint"`, or `basis`, `beta`,
//!   `left.A.M` for `l(A)_x M` and `right.M.A` for `r(M)_x A`; optional `n_m`.
//! * `[cochain:NAME]`: `arity`, optional `rep` (default the adjoint
//!   representation), `value.A1...An = [coords]` in `D, l1, …`.
//! * `[ns:NAME]`: `basis`, `alpha`, `left.A.B`, `right.A.B`, `vee.A.B`.
//! * `[deformation:NAME]`: `operator`, `order.K.bracket.A.B`, `order.K.operator`.
//! * `[twisted_rb:NAME]`: `rep`, `t`, optional `phi` (a cochain name).
//!
//! Matrices are lists of rows; column i is the image of the i-th basis vector.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cohomology::{tuples, Cochain};
use crate::deformation::DeformationData;
use crate::ns::NsAlgebra;
use crate::poly::{parse_poly, MultiPoly, Rational, Var};
use crate::representation::{adjoint_rep, Representation};
use crate::structure::{ConformalAlgebra, Element, FiniteAlgebra, PdMap, ProductTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate {what}")]
    Duplicate { line: usize, what: String },
    #[error("line {line}: unresolved reference `{name}`")]
    Unresolved { line: usize, name: String },
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

type DResult<T> = std::result::Result<T, DefError>;

// ---------------------------------------------------------------------------
// Untyped layer

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Str { text: String, line: usize, col: usize },
    List(Vec<Value>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: Vec<String>,
    pub value: Value,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub kind: String,
    pub name: Option<String>,
    pub entries: Vec<Entry>,
    pub line: usize,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> DResult<T> {
        Err(DefError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips spaces, tabs and comments, and also newlines if `newlines`.
    fn skip(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' if newlines => {
                    self.bump();
                }
                '#' => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: char) -> DResult<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> DResult<String> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return self.err("expected identifier");
        }
        Ok(s)
    }

    fn value(&mut self) -> DResult<Value> {
        self.skip(true);
        match self.peek() {
            Some('"') => {
                self.bump();
                let (line, col) = (self.line, self.col);
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None | Some('\n') => return self.err("unterminated string"),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => text.push(c),
                            _ => return self.err("invalid escape"),
                        },
                        Some(c) => text.push(c),
                    }
                }
                Ok(Value::Str { text, line, col })
            }
            Some('[') => {
                self.bump();
                let mut items = Vec::new();
                self.skip(true);
                if self.peek() == Some(']') {
                    return self.err("empty list");
                }
                loop {
                    items.push(self.value()?);
                    self.skip(true);
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                        }
                        Some(']') => {
                            self.bump();
                            break;
                        }
                        _ => return self.err("expected `,` or `]`"),
                    }
                }
                Ok(Value::List(items))
            }
            _ => self.err("expected a string or a list"),
        }
    }

    fn end_of_line(&mut self) -> DResult<()> {
        self.skip(false);
        match self.peek() {
            None => Ok(()),
            Some('\n') => {
                self.bump();
                Ok(())
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parses the section/entry structure without interpreting it.
pub fn parse_sections(text: &str) -> DResult<Vec<Section>> {
    let mut cur = Cursor::new(text);
    let mut out: Vec<Section> = Vec::new();
    loop {
        cur.skip(true);
        let Some(c) = cur.peek() else { break };
        if c == '[' {
            let line = cur.line;
            cur.bump();
            cur.skip(false);
            let kind = cur.ident()?;
            cur.skip(false);
            let name = if cur.peek() == Some(':') {
                cur.bump();
                cur.skip(false);
                let n = cur.ident()?;
                cur.skip(false);
                Some(n)
            } else {
                None
            };
            cur.expect(']')?;
            cur.end_of_line()?;
            out.push(Section {
                kind,
                name,
                entries: Vec::new(),
                line,
            });
            continue;
        }
        let Some(section) = out.last_mut() else {
            return cur.err("entry outside of a section");
        };
        let line = cur.line;
        let mut key = vec![cur.ident()?];
        while cur.peek() == Some('.') {
            cur.bump();
            key.push(cur.ident()?);
        }
        cur.skip(false);
        cur.expect('=')?;
        let value = cur.value()?;
        cur.end_of_line()?;
        section.entries.push(Entry { key, value, line });
    }
    if out.is_empty() {
        return cur.err("no sections");
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Typed layer

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepKind {
    Adjoint,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDef {
    pub kind: RepKind,
    pub rep: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainDef {
    /// `None` is the adjoint representation.
    pub rep: Option<String>,
    pub cochain: Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDef {
    pub operator: String,
    pub data: DeformationData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedRbDef {
    pub rep: String,
    pub t: PdMap,
    pub phi: Option<String>,
}

/// A parsed definition file. Named items keep file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Definition {
    pub algebra: Option<ConformalAlgebra>,
    pub finite: Vec<(String, FiniteAlgebra)>,
    pub operators: Vec<(String, PdMap)>,
    pub representations: Vec<(String, RepDef)>,
    pub cochains: Vec<(String, CochainDef)>,
    pub ns: Vec<(String, NsAlgebra)>,
    pub deformations: Vec<(String, DeformationDef)>,
    pub twisted_rb: Vec<(String, TwistedRbDef)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

impl Definition {
    pub fn operator(&self, name: &str) -> Option<&PdMap> {
        lookup(&self.operators, name)
    }

    pub fn representation(&self, name: &str) -> Option<&RepDef> {
        lookup(&self.representations, name)
    }

    pub fn cochain(&self, name: &str) -> Option<&CochainDef> {
        lookup(&self.cochains, name)
    }

    pub fn ns_algebra(&self, name: &str) -> Option<&NsAlgebra> {
        lookup(&self.ns, name)
    }

    pub fn deformation(&self, name: &str) -> Option<&DeformationDef> {
        lookup(&self.deformations, name)
    }

    pub fn finite_algebra(&self, name: &str) -> Option<&FiniteAlgebra> {
        lookup(&self.finite, name)
    }

    pub fn twisted_rb_def(&self, name: &str) -> Option<&TwistedRbDef> {
        lookup(&self.twisted_rb, name)
    }

    /// The representation a cochain refers to.
    pub fn cochain_rep(&self, def: &CochainDef) -> Option<Representation> {
        match &def.rep {
            None => self.algebra.as_ref().map(adjoint_rep),
            Some(n) => self.representation(n).map(|r| r.rep.clone()),
        }
    }
}

/// Keyed access to one section's entries, tracking which keys were used.
struct Table<'a> {
    section: &'a Section,
    used: BTreeSet<usize>,
}

impl<'a> Table<'a> {
    fn new(section: &'a Section) -> DResult<Self> {
        let mut seen = BTreeSet::new();
        for e in &section.entries {
            if !seen.insert(e.key.clone()) {
                return Err(DefError::Duplicate {
                    line: e.line,
                    what: format!("key `{}`", e.key.join(".")),
                });
            }
        }
        Ok(Table {
            section,
            used: BTreeSet::new(),
        })
    }

    fn get(&mut self, key: &str) -> Option<&'a Entry> {
        let (i, e) = self
            .section
            .entries
            .iter()
            .enumerate()
            .find(|(_, e)| e.key.len() == 1 && e.key[0] == key)?;
        self.used.insert(i);
        Some(e)
    }

    fn require(&mut self, key: &str) -> DResult<&'a Entry> {
        let line = self.section.line;
        self.get(key).ok_or_else(|| DefError::Invalid {
            line,
            msg: format!("missing key `{key}`"),
        })
    }

    /// Entries `prefix.rest…`, returning `rest`.
    fn with_prefix(&mut self, prefix: &str) -> Vec<(&'a [String], &'a Entry)> {
        let mut out = Vec::new();
        for (i, e) in self.section.entries.iter().enumerate() {
            if e.key.len() > 1 && e.key[0] == prefix {
                self.used.insert(i);
                out.push((&e.key[1..], e));
            }
        }
        out
    }

    fn finish(self) -> DResult<()> {
        for (i, e) in self.section.entries.iter().enumerate() {
            if !self.used.contains(&i) {
                return Err(DefError::Invalid {
                    line: e.line,
                    msg: format!("unknown key `{}` in [{}]", e.key.join("."), self.section.kind),
                });
            }
        }
        Ok(())
    }
}

fn string(e: &Entry) -> DResult<&str> {
    match &e.value {
        Value::Str { text, .. } => Ok(text),
        Value::List(_) => Err(DefError::Invalid {
            line: e.line,
            msg: format!("`{}` must be a string", e.key.join(".")),
        }),
    }
}

fn strings(line: usize, v: &Value, what: &str) -> DResult<Vec<(String, usize, usize)>> {
    match v {
        Value::List(items) => items
            .iter()
            .map(|it| match it {
                Value::Str { text, line, col } => Ok((text.clone(), *line, *col)),
                Value::List(_) => Err(DefError::Invalid {
                    line,
                    msg: format!("{what} must be a list of strings"),
                }),
            })
            .collect(),
        Value::Str { .. } => Err(DefError::Invalid {
            line,
            msg: format!("{what} must be a list"),
        }),
    }
}

fn names(e: &Entry) -> DResult<Vec<String>> {
    let v = strings(e.line, &e.value, "basis")?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (s, line, col) in v {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(DefError::Syntax {
                line,
                col,
                msg: format!("basis name `{s}` is not an identifier"),
            });
        }
        if !seen.insert(s.clone()) {
            return Err(DefError::Duplicate {
                line,
                what: format!("basis name `{s}`"),
            });
        }
        out.push(s);
    }
    Ok(out)
}

fn poly(text: &str, line: usize, col: usize, allowed: impl Fn(Var) -> bool, what: &str) -> DResult<MultiPoly> {
    let p = parse_poly(text).map_err(|e| DefError::Syntax {
        line,
        col: col + e.column() - 1,
        msg: e.to_string(),
    })?;
    if let Some(v) = p.vars().into_iter().find(|&v| !allowed(v)) {
        return Err(DefError::Syntax {
            line,
            col,
            msg: format!("variable `{v}` is not allowed in {what}"),
        });
    }
    Ok(p)
}

fn polys(e: &Entry, len: usize, allowed: impl Fn(Var) -> bool + Copy, what: &str) -> DResult<Vec<MultiPoly>> {
    let items = strings(e.line, &e.value, what)?;
    if items.len() != len {
        return Err(DefError::Invalid {
            line: e.line,
            msg: format!("{what} needs {len} coordinates, got {}", items.len()),
        });
    }
    items.iter().map(|(s, l, c)| poly(s, *l, *c, allowed, what)).collect()
}

fn only_d(v: Var) -> bool {
    v == Var::D
}

fn d_or_x(v: Var) -> bool {
    matches!(v, Var::D | Var::X)
}

fn matrix(e: &Entry, rows: usize, cols: usize) -> DResult<PdMap> {
    let bad = || DefError::Invalid {
        line: e.line,
        msg: format!("`{}` must be a {rows}x{cols} matrix", e.key.join(".")),
    };
    let Value::List(rs) = &e.value else { return Err(bad()) };
    if rs.len() != rows {
        return Err(bad());
    }
    let mut out = Vec::new();
    for r in rs {
        let items = strings(e.line, r, "matrix row")?;
        if items.len() != cols {
            return Err(bad());
        }
        out.push(
            items
                .iter()
                .map(|(s, l, c)| poly(s, *l, *c, only_d, "a module map"))
                .collect::<DResult<Vec<_>>>()?,
        );
    }
    PdMap::from_rows(out).map_err(|err| DefError::Invalid {
        line: e.line,
        msg: err.to_string(),
    })
}

fn constant_matrix(e: &Entry, n: usize) -> DResult<Vec<Vec<Rational>>> {
    let m = matrix(e, n, n)?;
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    m.entry(r, c).as_constant().ok_or_else(|| DefError::Invalid {
                        line: e.line,
                        msg: "twist entries must be constants".into(),
                    })
                })
                .collect()
        })
        .collect()
}

fn index(names: &[String], name: &str, line: usize) -> DResult<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| DefError::Unresolved {
            line,
            name: name.to_string(),
        })
}

fn pair_key(rest: &[String], line: usize, what: &str) -> DResult<(String, String)> {
    if rest.len() != 2 {
        return Err(DefError::Invalid {
            line,
            msg: format!("{what} keys take two basis names"),
        });
    }
    Ok((rest[0].clone(), rest[1].clone()))
}

fn invalid(line: usize) -> impl Fn(crate::Error) -> DefError {
    move |e| DefError::Invalid {
        line,
        msg: e.to_string(),
    }
}

/// Fills a product table from `prefix.A.B = [coords]` entries.
fn read_table(
    tab: &mut Table,
    prefix: &str,
    left: &[String],
    right: &[String],
    out_rank: usize,
) -> DResult<ProductTable> {
    let mut t = ProductTable::zero(left.len(), right.len(), out_rank);
    for (rest, e) in tab.with_prefix(prefix) {
        let (a, b) = pair_key(rest, e.line, prefix)?;
        let (i, j) = (index(left, &a, e.line)?, index(right, &b, e.line)?);
        let v = polys(e, out_rank, d_or_x, "a product")?;
        t.set(i, j, v).map_err(invalid(e.line))?;
    }
    Ok(t)
}

fn section_name(s: &Section) -> DResult<String> {
    s.name.clone().ok_or_else(|| DefError::Invalid {
        line: s.line,
        msg: format!("[{}] sections need a name: [{}:NAME]", s.kind, s.kind),
    })
}

fn need_algebra<'a>(alg: &'a Option<ConformalAlgebra>, s: &Section) -> DResult<&'a ConformalAlgebra> {
    alg.as_ref().ok_or_else(|| DefError::Invalid {
        line: s.line,
        msg: format!("[{}] needs an [algebra] section", s.kind),
    })
}

fn parse_algebra(s: &Section) -> DResult<ConformalAlgebra> {
    let mut tab = Table::new(s)?;
    let name = match tab.get("name") {
        Some(e) => string(e)?.to_string(),
        None => s.name.clone().unwrap_or_else(|| "algebra".into()),
    };
    let basis = names(tab.require("basis")?)?;
    let r = basis.len();
    let alpha = match tab.get("alpha") {
        Some(e) => matrix(e, r, r)?,
        None => PdMap::identity(r),
    };
    let structure = read_table(&mut tab, "bracket", &basis, &basis, r)?;
    tab.finish()?;
    ConformalAlgebra::new(name, basis, structure, alpha).map_err(invalid(s.line))
}

fn parse_finite(s: &Section) -> DResult<FiniteAlgebra> {
    let mut tab = Table::new(s)?;
    let basis = names(tab.require("basis")?)?;
    let n = basis.len();
    let twist = match tab.get("twist") {
        Some(e) => constant_matrix(e, n)?,
        None => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            crate::poly::rat(1)
                        } else {
                            crate::poly::rat(0)
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    let mut constants = vec![vec![vec![crate::poly::rat(0); n]; n]; n];
    for (rest, e) in tab.with_prefix("bracket") {
        let (a, b) = pair_key(rest, e.line, "bracket")?;
        let (i, j) = (index(&basis, &a, e.line)?, index(&basis, &b, e.line)?);
        let v = polys(e, n, |_| false, "structure constants")?;
        constants[i][j] = v.iter().map(|p| p.constant_term()).collect();
    }
    tab.finish()?;
    FiniteAlgebra::new(basis, constants, twist).map_err(invalid(s.line))
}

fn parse_operator(s: &Section, alg: &ConformalAlgebra) -> DResult<PdMap> {
    let mut tab = Table::new(s)?;
    let m = matrix(tab.require("matrix")?, alg.rank(), alg.rank())?;
    tab.finish()?;
    Ok(m)
}

fn parse_representation(s: &Section, alg: &ConformalAlgebra) -> DResult<RepDef> {
    let mut tab = Table::new(s)?;
    let kind = match tab.get("kind") {
        Some(e) => match string(e)? {
            "adjoint" => RepKind::Adjoint,
            "explicit" => RepKind::Explicit,
            other => {
                return Err(DefError::Invalid {
                    line: e.line,
                    msg: format!("unknown representation kind `{other}`"),
                })
            }
        },
        None => RepKind::Explicit,
    };
    let mut rep = match kind {
        RepKind::Adjoint => adjoint_rep(alg),
        RepKind::Explicit => {
            let basis = names(tab.require("basis")?)?;
            let s_rank = basis.len();
            let beta = match tab.get("beta") {
                Some(e) => matrix(e, s_rank, s_rank)?,
                None => PdMap::identity(s_rank),
            };
            let left = read_table(&mut tab, "left", &alg.basis_names, &basis, s_rank)?;
            let right = read_table(&mut tab, "right", &basis, &alg.basis_names, s_rank)?;
            Representation::new(basis, left, right, beta, None).map_err(invalid(s.line))?
        }
    };
    if let Some(e) = tab.get("n_m") {
        let k = rep.rank();
        rep = rep.with_n_m(matrix(e, k, k)?).map_err(invalid(e.line))?;
    }
    tab.finish()?;
    Ok(RepDef { kind, rep })
}

fn parse_uint(e: &Entry) -> DResult<usize> {
    string(e)?.trim().parse().map_err(|_| DefError::Invalid {
        line: e.line,
        msg: format!("`{}` must be a non-negative integer", e.key.join(".")),
    })
}

fn parse_cochain(s: &Section, def: &Definition, alg: &ConformalAlgebra) -> DResult<CochainDef> {
    let mut tab = Table::new(s)?;
    let arity_e = tab.require("arity")?;
    let arity = parse_uint(arity_e)?;
    let (rep_name, rep) = match tab.get("rep") {
        Some(e) => {
            let n = string(e)?;
            let r = def.representation(n).ok_or_else(|| DefError::Unresolved {
                line: e.line,
                name: n.to_string(),
            })?;
            (Some(n.to_string()), r.rep.clone())
        }
        None => (None, adjoint_rep(alg)),
    };
    let mut c = Cochain::zero(arity, alg.rank(), rep.rank()).map_err(invalid(arity_e.line))?;
    for (rest, e) in tab.with_prefix("value") {
        if rest.len() != arity {
            return Err(DefError::Invalid {
                line: e.line,
                msg: format!("value keys take {arity} basis names"),
            });
        }
        let idx = rest
            .iter()
            .map(|n| index(&alg.basis_names, n, e.line))
            .collect::<DResult<Vec<_>>>()?;
        let a = arity as u32;
        let v = polys(
            e,
            rep.rank(),
            move |v| matches!(v, Var::D) || matches!(v, Var::L(k) if k < a),
            "a cochain value",
        )?;
        c.set(&idx, Element::new(v)).map_err(invalid(e.line))?;
    }
    tab.finish()?;
    Ok(CochainDef {
        rep: rep_name,
        cochain: c,
    })
}

fn parse_ns(s: &Section) -> DResult<NsAlgebra> {
    let mut tab = Table::new(s)?;
    let basis = names(tab.require("basis")?)?;
    let r = basis.len();
    let alpha = match tab.get("alpha") {
        Some(e) => matrix(e, r, r)?,
        None => PdMap::identity(r),
    };
    let left = read_table(&mut tab, "left", &basis, &basis, r)?;
    let right = read_table(&mut tab, "right", &basis, &basis, r)?;
    let vee = read_table(&mut tab, "vee", &basis, &basis, r)?;
    tab.finish()?;
    NsAlgebra::new(section_name(s)?, basis, left, right, vee, alpha).map_err(invalid(s.line))
}

fn parse_deformation(s: &Section, def: &Definition, alg: &ConformalAlgebra) -> DResult<DeformationDef> {
    let mut tab = Table::new(s)?;
    let op_e = tab.require("operator")?;
    let op_name = string(op_e)?.to_string();
    let base_n = def.operator(&op_name).ok_or_else(|| DefError::Unresolved {
        line: op_e.line,
        name: op_name.clone(),
    })?;
    let r = alg.rank();
    let mut brackets: BTreeMap<usize, ProductTable> = BTreeMap::new();
    let mut ops: BTreeMap<usize, PdMap> = BTreeMap::new();
    for (rest, e) in tab.with_prefix("order") {
        let k: usize = rest[0].parse().map_err(|_| DefError::Invalid {
            line: e.line,
            msg: format!("`{}` is not an order", rest[0]),
        })?;
        if k == 0 {
            return Err(DefError::Invalid {
                line: e.line,
                msg: "order 0 is the base; list orders from 1".into(),
            });
        }
        match rest.get(1).map(String::as_str) {
            Some("operator") if rest.len() == 2 => {
                ops.insert(k, matrix(e, r, r)?);
            }
            Some("bracket") if rest.len() == 4 => {
                let (i, j) = (
                    index(&alg.basis_names, &rest[2], e.line)?,
                    index(&alg.basis_names, &rest[3], e.line)?,
                );
                let v = polys(e, r, d_or_x, "a product")?;
                brackets
                    .entry(k)
                    .or_insert_with(|| ProductTable::zero(r, r, r))
                    .set(i, j, v)
                    .map_err(invalid(e.line))?;
            }
            _ => {
                return Err(DefError::Invalid {
                    line: e.line,
                    msg: "expected order.K.operator or order.K.bracket.A.B".into(),
                })
            }
        }
    }
    tab.finish()?;
    let order = brackets.keys().chain(ops.keys()).copied().max().unwrap_or(0);
    let b = (1..=order)
        .map(|k| brackets.remove(&k).unwrap_or_else(|| ProductTable::zero(r, r, r)))
        .collect();
    let n = (1..=order)
        .map(|k| ops.remove(&k).unwrap_or_else(|| PdMap::zero(r, r)))
        .collect();
    let data = DeformationData::new(alg.clone(), base_n.clone(), b, n).map_err(invalid(s.line))?;
    Ok(DeformationDef {
        operator: op_name,
        data,
    })
}

fn parse_twisted_rb(s: &Section, def: &Definition, alg: &ConformalAlgebra) -> DResult<TwistedRbDef> {
    let mut tab = Table::new(s)?;
    let rep_e = tab.require("rep")?;
    let rep_name = string(rep_e)?.to_string();
    let rep = def.representation(&rep_name).ok_or_else(|| DefError::Unresolved {
        line: rep_e.line,
        name: rep_name.clone(),
    })?;
    let t = matrix(tab.require("t")?, alg.rank(), rep.rep.rank())?;
    let phi = match tab.get("phi") {
        Some(e) => {
            let n = string(e)?;
            let c = def.cochain(n).ok_or_else(|| DefError::Unresolved {
                line: e.line,
                name: n.to_string(),
            })?;
            if c.cochain.arity() != 2 || c.cochain.rep_rank() != rep.rep.rank() {
                return Err(DefError::Invalid {
                    line: e.line,
                    msg: format!("φ must be an arity-2 cochain with values in `{rep_name}`"),
                });
            }
            Some(n.to_string())
        }
        None => None,
    };
    tab.finish()?;
    Ok(TwistedRbDef { rep: rep_name, t, phi })
}

/// Parses and resolves a definition file. References must point to
/// sections defined earlier in the file.
pub fn parse_definition(text: &str) -> DResult<Definition> {
    let sections = parse_sections(text)?;
    let mut def = Definition::default();
    let mut seen: BTreeSet<(String, Option<String>)> = BTreeSet::new();
    for s in &sections {
        let key = if s.kind == "algebra" {
            (s.kind.clone(), None)
        } else {
            (s.kind.clone(), s.name.clone())
        };
        if !seen.insert(key) {
            return Err(DefError::Duplicate {
                line: s.line,
                what: match &s.name {
                    Some(n) if s.kind != "algebra" => format!("section [{}:{n}]", s.kind),
                    _ => format!("section [{}]", s.kind),
                },
            });
        }
        match s.kind.as_str() {
            "algebra" => def.algebra = Some(parse_algebra(s)?),
            "finite" => def.finite.push((section_name(s)?, parse_finite(s)?)),
            "operator" => {
                let alg = need_algebra(&def.algebra, s)?;
                def.operators.push((section_name(s)?, parse_operator(s, alg)?));
            }
            "representation" => {
                let alg = need_algebra(&def.algebra, s)?;
                def.representations
                    .push((section_name(s)?, parse_representation(s, alg)?));
            }
            "cochain" => {
                let alg = need_algebra(&def.algebra, s)?;
                let c = parse_cochain(s, &def, alg)?;
                def.cochains.push((section_name(s)?, c));
            }
            "ns" => def.ns.push((section_name(s)?, parse_ns(s)?)),
            "deformation" => {
                let alg = need_algebra(&def.algebra, s)?;
                let d = parse_deformation(s, &def, alg)?;
                def.deformations.push((section_name(s)?, d));
            }
            "twisted_rb" => {
                let alg = need_algebra(&def.algebra, s)?;
                let t = parse_twisted_rb(s, &def, alg)?;
                def.twisted_rb.push((section_name(s)?, t));
            }
            other => {
                return Err(DefError::Invalid {
                    line: s.line,
                    msg: format!("unknown section kind `{other}`"),
                })
            }
        }
    }
    Ok(def)
}

// ---------------------------------------------------------------------------
// Printer

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn list<I: IntoIterator<Item = String>>(items: I) -> String {
    let v: Vec<String> = items.into_iter().collect();
    format!("[{}]", v.join(", "))
}

fn poly_list(ps: &[MultiPoly]) -> String {
    list(ps.iter().map(|p| quote(&p.to_string())))
}

fn matrix_text(m: &PdMap) -> String {
    list(m.row_vecs().iter().map(|r| poly_list(r)))
}

fn table_lines(out: &mut String, prefix: &str, t: &ProductTable, left: &[String], right: &[String]) {
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let v = t.get(i, j);
            if v.iter().any(|p| !p.is_zero()) {
                let _ = writeln!(out, "{prefix}.{a}.{b} = {}", poly_list(v));
            }
        }
    }
}

fn names_text(ns: &[String]) -> String {
    list(ns.iter().map(|n| quote(n)))
}

/// Canonical text for a definition; `parse_definition` of the output gives
/// back an equal [`Definition`].
pub fn print_definition(def: &Definition) -> String {
    let mut out = String::new();
    let sep = |out: &mut String| {
        if !out.is_empty() {
            out.push('\n');
        }
    };
    if let Some(alg) = &def.algebra {
        out.push_str("[algebra]\n");
        let _ = writeln!(out, "name = {}", quote(&alg.name));
        let _ = writeln!(out, "basis = {}", names_text(&alg.basis_names));
        let _ = writeln!(out, "alpha = {}", matrix_text(&alg.alpha));
        table_lines(&mut out, "bracket", &alg.structure, &alg.basis_names, &alg.basis_names);
    }
    for (name, f) in &def.finite {
        sep(&mut out);
        let _ = writeln!(out, "[finite:{name}]");
        let _ = writeln!(out, "basis = {}", names_text(&f.basis_names));
        let tw = list(f.twist.iter().map(|r| list(r.iter().map(|c| quote(&c.to_string())))));
        let _ = writeln!(out, "twist = {tw}");
        for (i, a) in f.basis_names.iter().enumerate() {
            for (j, b) in f.basis_names.iter().enumerate() {
                let v = &f.constants[i][j];
                if v.iter().any(|c| *c != crate::poly::rat(0)) {
                    let _ = writeln!(
                        out,
                        "bracket.{a}.{b} = {}",
                        list(v.iter().map(|c| quote(&c.to_string())))
                    );
                }
            }
        }
    }
    for (name, m) in &def.operators {
        sep(&mut out);
        let _ = writeln!(out, "[operator:{name}]\nmatrix = {}", matrix_text(m));
    }
    for (name, r) in &def.representations {
        sep(&mut out);
        let _ = writeln!(out, "[representation:{name}]");
        match r.kind {
            RepKind::Adjoint => out.push_str("kind = \"adjoint\"\n"),
            RepKind::Explicit => {
                let alg = def.algebra.as_ref().expect("representations need an algebra");
                out.push_str("kind = \"explicit\"\n");
                let _ = writeln!(out, "basis = {}", names_text(&r.rep.basis_names));
                let _ = writeln!(out, "beta = {}", matrix_text(&r.rep.beta));
                table_lines(&mut out, "left", &r.rep.left, &alg.basis_names, &r.rep.basis_names);
                table_lines(&mut out, "right", &r.rep.right, &r.rep.basis_names, &alg.basis_names);
            }
        }
        if let Some(n) = &r.rep.n_m {
            let _ = writeln!(out, "n_m = {}", matrix_text(n));
        }
    }
    for (name, c) in &def.cochains {
        sep(&mut out);
        let _ = writeln!(out, "[cochain:{name}]");
        let _ = writeln!(out, "arity = \"{}\"", c.cochain.arity());
        if let Some(r) = &c.rep {
            let _ = writeln!(out, "rep = {}", quote(r));
        }
        let alg = def.algebra.as_ref().expect("cochains need an algebra");
        for t in tuples(c.cochain.alg_rank(), c.cochain.arity()) {
            let v = c.cochain.get(&t);
            if !v.is_zero() {
                let key: Vec<&str> = t.iter().map(|&i| alg.basis_names[i].as_str()).collect();
                let _ = writeln!(out, "value.{} = {}", key.join("."), poly_list(v.coords()));
            }
        }
    }
    for (name, ns) in &def.ns {
        sep(&mut out);
        let _ = writeln!(out, "[ns:{name}]");
        let _ = writeln!(out, "basis = {}", names_text(&ns.basis_names));
        let _ = writeln!(out, "alpha = {}", matrix_text(&ns.alpha));
        table_lines(&mut out, "left", &ns.left, &ns.basis_names, &ns.basis_names);
        table_lines(&mut out, "right", &ns.right, &ns.basis_names, &ns.basis_names);
        table_lines(&mut out, "vee", &ns.vee, &ns.basis_names, &ns.basis_names);
    }
    for (name, d) in &def.deformations {
        sep(&mut out);
        let _ = writeln!(out, "[deformation:{name}]");
        let _ = writeln!(out, "operator = {}", quote(&d.operator));
        let names = &d.data.base.basis_names;
        for k in 1..=d.data.order() {
            table_lines(&mut out, &format!("order.{k}.bracket"), d.data.bracket(k), names, names);
            let _ = writeln!(out, "order.{k}.operator = {}", matrix_text(d.data.operator(k)));
        }
    }
    for (name, t) in &def.twisted_rb {
        sep(&mut out);
        let _ = writeln!(out, "[twisted_rb:{name}]");
        let _ = writeln!(out, "rep = {}", quote(&t.rep));
        let _ = writeln!(out, "t = {}", matrix_text(&t.t));
        if let Some(p) = &t.phi {
            let _ = writeln!(out, "phi = {}", quote(p));
        }
    }
    out
}

/// A standalone file holding one algebra.
pub fn print_algebra(alg: &ConformalAlgebra) -> String {
    print_definition(&Definition {
        algebra: Some(alg.clone()),
        ..Definition::default()
    })
}

/// A standalone `[ns:NAME]` section.
pub fn print_ns(name: &str, ns: &NsAlgebra) -> String {
    print_definition(&Definition {
        ns: vec![(name.to_string(), ns.clone())],
        ..Definition::default()
    })
}
