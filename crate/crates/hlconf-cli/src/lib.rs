//! Command-line front end: parses a definition file, runs the requested
//! checks or constructions, and prints reports as text or JSON records.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hlconf::cohomology::{
    coboundary_hn, coboundary_hnla, coboundary_homl, compare_cochains, phi_map, random_cochain, HnlaPair, PhiFormula,
};
use hlconf::deformation::{equivalence_order1_check, infinitesimal_cocycle_check, verify_deformation_order};
use hlconf::io::{
    parse_definition, print_algebra, print_definition, print_ns, CochainDef, Definition, RepDef, RepKind,
};
use hlconf::ns::{
    adjacent_algebra, ns_from_nijenhuis, ns_from_rb, ns_from_twisted_rb, verify_ns_axioms, verify_o_operator,
    verify_twisted_rb, verify_vee_skew, NsAlgebra, TwistedRbData,
};
use hlconf::operators::{deformed_bracket, verify_operator, OperatorKind};
use hlconf::representation::{
    adjoint_rep, induced_representation, verify_nijenhuis_representation, verify_representation, Representation,
};
use hlconf::structure::{current_algebra, verify_hom_leibniz, verify_multiplicativity, verify_skew_symmetry};
use hlconf::{parse_poly, ConformalAlgebra, PdMap, Rational, Report};

#[derive(Parser, Debug)]
#[command(name = "hlconf", version, about = "Verify Hom-Leibniz conformal algebra structures")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Verify an axiom system on data from a definition file.
    Check { what: CheckCmd, file: PathBuf },
    /// Build a new structure and print it as a definition file.
    Construct { what: ConstructCmd, file: PathBuf },
    /// Coboundary operators and randomized cohomology checks.
    Cohomology { what: CohomologyCmd, file: PathBuf },
    /// Formal deformations of a Nijenhuis operator.
    Deform { what: DeformCmd, file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckCmd {
    Algebra,
    Lie,
    Nijenhuis,
    Rb,
    Mrb,
    Rep,
    Nijrep,
    Ns,
    TwistedRb,
    OOperator,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConstructCmd {
    Deformed,
    NsFromN,
    NsFromRb,
    NsFromTrb,
    InducedRep,
    Cur,
    Adjacent,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CohomologyCmd {
    Delta,
    DeltaHn,
    Phi,
    DHnla,
    D2Zero,
    SquareLemma,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DeformCmd {
    CheckOrder,
    Cocycle,
    Equiv1,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Records,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum PhiArg {
    #[default]
    Alternating,
    Truncated,
}

#[derive(Args, Debug)]
struct Opts {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Total degree bound for random cochain entries.
    #[arg(long, global = true, default_value_t = 2)]
    max_deg: u32,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 10)]
    random: usize,
    /// Treat failed preconditions of constructions as errors.
    #[arg(long, global = true)]
    strict_preconditions: bool,
    /// Operator section name.
    #[arg(long, global = true)]
    op: Option<String>,
    /// Representation section name; defaults to the adjoint representation.
    #[arg(long, global = true)]
    rep: Option<String>,
    /// Rota-Baxter weight, a rational such as `-1` or `3/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Cochain arity for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    arity: usize,
    /// Cochain section name; for `d-hnla`, the first component. Without it,
    /// `d-hnla` checks d∘d = 0 on random pairs.
    #[arg(long, global = true)]
    cochain: Option<String>,
    /// Second component for `d-hnla`.
    #[arg(long, global = true)]
    cochain_g: Option<String>,
    /// NS section name.
    #[arg(long, global = true)]
    ns: Option<String>,
    /// Twisted Rota-Baxter section name.
    #[arg(long, global = true)]
    trb: Option<String>,
    /// Finite algebra section name for `construct cur`.
    #[arg(long, global = true)]
    finite: Option<String>,
    /// Deformation section name.
    #[arg(long, global = true)]
    deformation: Option<String>,
    /// Second (primed) deformation for `equiv1`.
    #[arg(long, global = true)]
    other: Option<String>,
    /// Operator section holding ψ₁ for `equiv1`.
    #[arg(long, global = true)]
    psi: Option<String>,
    /// Order for `check-order`; all orders when omitted.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Form of the comparison map φ.
    #[arg(long, global = true, value_enum, default_value_t)]
    phi: PhiArg,
    /// With `check ns`, also report skew-symmetry of ∨.
    #[arg(long, global = true)]
    vee_skew: bool,
    /// Attach wall-clock timings to reports.
    #[arg(long, global = true)]
    timing: bool,
}

impl Opts {
    fn formula(&self) -> PhiFormula {
        match self.phi {
            PhiArg::Alternating => PhiFormula::Alternating,
            PhiArg::Truncated => PhiFormula::Truncated,
        }
    }
}

/// Failures that stop a command before any report is produced.
#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CResult<T> = std::result::Result<T, CliError>;

enum Output {
    Reports(Vec<Report>),
    Text(String),
}

/// Runs one command. Exit code 0 when every report passes, 1 when some
/// report fails, 2 on usage, file or precondition errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Output::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Ok(Output::Reports(reports)) => {
            for r in &reports {
                let _ = match cli.opts.format {
                    Format::Text => writeln!(out, "{r}"),
                    Format::Records => writeln!(out, "{}", r.to_record()),
                };
            }
            if reports.iter().all(Report::passed) {
                0
            } else {
                1
            }
        }
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(cli: &Cli) -> CResult<Output> {
    let file = match &cli.group {
        Group::Check { file, .. }
        | Group::Construct { file, .. }
        | Group::Cohomology { file, .. }
        | Group::Deform { file, .. } => file,
    };
    let text = std::fs::read_to_string(file).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
    let def = parse_definition(&text).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
    let opts = &cli.opts;
    match &cli.group {
        Group::Check { what, .. } => check(*what, &def, opts),
        Group::Construct { what, .. } => construct(*what, &def, opts),
        Group::Cohomology { what, .. } => cohomology(*what, &def, opts),
        Group::Deform { what, .. } => deform(*what, &def, opts),
    }
}

/// Times `f` and, when requested, stores the elapsed milliseconds.
fn timed(opts: &Opts, f: impl FnOnce() -> CResult<Report>) -> CResult<Report> {
    let start = Instant::now();
    let mut r = f()?;
    if opts.timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

fn algebra(def: &Definition) -> CResult<&ConformalAlgebra> {
    def.algebra
        .as_ref()
        .ok_or_else(|| CliError("the file has no [algebra] section".into()))
}

/// The named item, or the only one of its kind when no name is given.
fn pick<'a, T>(items: &'a [(String, T)], name: Option<&String>, kind: &str, flag: &str) -> CResult<(&'a str, &'a T)> {
    match name {
        Some(n) => items
            .iter()
            .find(|(k, _)| k == n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError(format!("no [{kind}:{n}] section"))),
        None if items.len() == 1 => Ok((items[0].0.as_str(), &items[0].1)),
        None if items.is_empty() => Err(CliError(format!("the file has no [{kind}] section"))),
        None => Err(CliError(format!("select a [{kind}] section with --{flag}"))),
    }
}

fn operator<'a>(def: &'a Definition, opts: &Opts) -> CResult<(&'a str, &'a PdMap)> {
    pick(&def.operators, opts.op.as_ref(), "operator", "op")
}

fn weight(opts: &Opts) -> CResult<Rational> {
    let w = opts
        .weight
        .as_deref()
        .ok_or_else(|| CliError("--weight is required".into()))?;
    parse_poly(w)?
        .as_constant()
        .ok_or_else(|| CliError(format!("weight `{w}` is not a rational number")))
}

/// The selected representation, defaulting to the adjoint one. When the
/// representation has no `n_m` and an operator applies, `N_M = N`.
fn representation(def: &Definition, opts: &Opts, n: Option<&PdMap>) -> CResult<Representation> {
    let alg = algebra(def)?;
    let rep = match &opts.rep {
        Some(name) => pick(&def.representations, Some(name), "representation", "rep")?
            .1
            .rep
            .clone(),
        None => adjoint_rep(alg),
    };
    match (&rep.n_m, n) {
        (None, Some(n)) if rep.rank() == alg.rank() && opts.rep.is_none() => Ok(rep.with_n_m(n.clone())?),
        _ => Ok(rep),
    }
}

fn ns_algebra<'a>(def: &'a Definition, opts: &Opts) -> CResult<(&'a str, &'a NsAlgebra)> {
    pick(&def.ns, opts.ns.as_ref(), "ns", "ns")
}

fn trb_data(def: &Definition, opts: &Opts) -> CResult<TwistedRbData> {
    let alg = algebra(def)?;
    let (_, t) = pick(&def.twisted_rb, opts.trb.as_ref(), "twisted_rb", "trb")?;
    let rep = def
        .representation(&t.rep)
        .ok_or_else(|| CliError(format!("no [representation:{}] section", t.rep)))?
        .rep
        .clone();
    let phi = match &t.phi {
        Some(n) => def.cochain(n).expect("resolved by the parser").cochain.clone(),
        None => hlconf::cohomology::Cochain::zero(2, alg.rank(), rep.rank())?,
    };
    Ok(TwistedRbData::new(alg.clone(), rep, t.t.clone(), phi)?)
}

fn renamed(mut r: Report, name: impl Into<String>) -> Report {
    r.check_name = name.into();
    r
}

fn check(what: CheckCmd, def: &Definition, opts: &Opts) -> CResult<Output> {
    let reports = match what {
        CheckCmd::Algebra => {
            let alg = algebra(def)?;
            vec![
                timed(opts, || Ok(verify_hom_leibniz(alg)))?,
                timed(opts, || Ok(verify_multiplicativity(alg)))?,
            ]
        }
        CheckCmd::Lie => vec![timed(opts, || Ok(verify_skew_symmetry(algebra(def)?)))?],
        CheckCmd::Nijenhuis | CheckCmd::Rb | CheckCmd::Mrb => {
            let alg = algebra(def)?;
            let (_, op) = operator(def, opts)?;
            let kind = match what {
                CheckCmd::Nijenhuis => OperatorKind::Nijenhuis,
                CheckCmd::Rb => OperatorKind::RotaBaxter(weight(opts)?),
                _ => OperatorKind::ModifiedRotaBaxter(weight(opts)?),
            };
            vec![timed(opts, || Ok(verify_operator(alg, op, &kind)?))?]
        }
        CheckCmd::Rep => {
            let rep = representation(def, opts, None)?;
            vec![timed(opts, || Ok(verify_representation(algebra(def)?, &rep)?))?]
        }
        CheckCmd::Nijrep => {
            let (_, op) = operator(def, opts)?;
            let rep = representation(def, opts, Some(op))?;
            vec![timed(opts, || {
                Ok(verify_nijenhuis_representation(algebra(def)?, op, &rep)?)
            })?]
        }
        CheckCmd::Ns => {
            let (_, ns) = ns_algebra(def, opts)?;
            let mut v = vec![timed(opts, || Ok(verify_ns_axioms(ns)))?];
            if opts.vee_skew {
                v.push(timed(opts, || Ok(verify_vee_skew(ns)))?);
            }
            v
        }
        CheckCmd::TwistedRb => {
            let data = trb_data(def, opts)?;
            vec![timed(opts, || Ok(verify_twisted_rb(&data)?))?]
        }
        CheckCmd::OOperator => {
            let data = trb_data(def, opts)?;
            vec![timed(opts, || Ok(verify_o_operator(&data.alg, &data.rep, &data.t)?))?]
        }
    };
    Ok(Output::Reports(reports))
}

fn construct(what: ConstructCmd, def: &Definition, opts: &Opts) -> CResult<Output> {
    let strict = opts.strict_preconditions;
    let text = match what {
        ConstructCmd::Deformed => {
            let (_, op) = operator(def, opts)?;
            print_algebra(&deformed_bracket(algebra(def)?, op, strict)?)
        }
        ConstructCmd::NsFromN => {
            let (name, op) = operator(def, opts)?;
            print_ns(&format!("{name}_ns"), &ns_from_nijenhuis(algebra(def)?, op, strict)?)
        }
        ConstructCmd::NsFromRb => {
            let (name, op) = operator(def, opts)?;
            print_ns(
                &format!("{name}_ns"),
                &ns_from_rb(algebra(def)?, op, &weight(opts)?, strict)?,
            )
        }
        ConstructCmd::NsFromTrb => {
            let (name, _) = pick(&def.twisted_rb, opts.trb.as_ref(), "twisted_rb", "trb")?;
            print_ns(
                &format!("{name}_ns"),
                &ns_from_twisted_rb(&trb_data(def, opts)?, strict)?,
            )
        }
        ConstructCmd::InducedRep => {
            let (name, op) = operator(def, opts)?;
            let alg = algebra(def)?;
            let rep = representation(def, opts, Some(op))?;
            let ind = induced_representation(alg, op, &rep, strict)?;
            let out = Definition {
                algebra: Some(deformed_bracket(alg, op, false)?),
                representations: vec![(
                    format!("{name}_induced"),
                    RepDef {
                        kind: RepKind::Explicit,
                        rep: ind,
                    },
                )],
                ..Definition::default()
            };
            print_definition(&out)
        }
        ConstructCmd::Cur => {
            let (name, fin) = pick(&def.finite, opts.finite.as_ref(), "finite", "finite")?;
            print_algebra(&current_algebra(&format!("cur_{name}"), fin))
        }
        ConstructCmd::Adjacent => {
            let (_, ns) = ns_algebra(def, opts)?;
            print_algebra(&adjacent_algebra(ns)?)
        }
    };
    Ok(Output::Text(text))
}

fn cochain<'a>(def: &'a Definition, name: Option<&String>) -> CResult<(&'a str, &'a CochainDef)> {
    pick(&def.cochains, name, "cochain", "cochain")
}

/// Prints cochains together with the algebra and representations they use.
fn cochain_text(def: &Definition, cochains: Vec<(String, CochainDef)>) -> String {
    print_definition(&Definition {
        algebra: def.algebra.clone(),
        representations: def.representations.clone(),
        cochains,
        ..Definition::default()
    })
}

fn cohomology(what: CohomologyCmd, def: &Definition, opts: &Opts) -> CResult<Output> {
    let alg = algebra(def)?;
    let formula = opts.formula();
    match what {
        CohomologyCmd::Delta | CohomologyCmd::DeltaHn | CohomologyCmd::Phi => {
            let (name, c) = cochain(def, opts.cochain.as_ref())?;
            let rep_of = |n: Option<&PdMap>| -> CResult<Representation> {
                let base = def
                    .cochain_rep(c)
                    .ok_or_else(|| CliError("unresolved representation".into()))?;
                Ok(match (&base.n_m, n) {
                    (None, Some(n)) if c.rep.is_none() => base.with_n_m(n.clone())?,
                    _ => base,
                })
            };
            let (suffix, out) = match what {
                CohomologyCmd::Delta => ("delta", coboundary_homl(&c.cochain, alg, &rep_of(None)?)?),
                CohomologyCmd::DeltaHn => {
                    let (_, op) = operator(def, opts)?;
                    ("delta_hn", coboundary_hn(&c.cochain, alg, op, &rep_of(Some(op))?)?)
                }
                _ => {
                    let (_, op) = operator(def, opts)?;
                    ("phi", phi_map(&c.cochain, op, &rep_of(Some(op))?, formula)?)
                }
            };
            let rep = c.rep.clone();
            Ok(Output::Text(cochain_text(
                def,
                vec![(format!("{name}_{suffix}"), CochainDef { rep, cochain: out })],
            )))
        }
        CohomologyCmd::DHnla => {
            let (_, op) = operator(def, opts)?;
            let rep = representation(def, opts, Some(op))?;
            if opts.cochain.is_none() {
                return Ok(Output::Reports(vec![timed(opts, || {
                    d_hnla_squared(alg, op, &rep, opts)
                })?]));
            }
            let (name, f) = cochain(def, opts.cochain.as_ref())?;
            let g = match &opts.cochain_g {
                Some(n) => Some(cochain(def, Some(n))?.1.cochain.clone()),
                None => None,
            };
            let d = coboundary_hnla(&HnlaPair::new(f.cochain.clone(), g)?, alg, op, &rep, formula)?;
            let mut parts = vec![(
                format!("{name}_dhnla_f"),
                CochainDef {
                    rep: f.rep.clone(),
                    cochain: d.f,
                },
            )];
            if let Some(g) = d.g {
                parts.push((
                    format!("{name}_dhnla_g"),
                    CochainDef {
                        rep: f.rep.clone(),
                        cochain: g,
                    },
                ));
            }
            let text = cochain_text(def, parts);
            Ok(Output::Text(text))
        }
        CohomologyCmd::D2Zero => {
            let rep = representation(def, opts, None)?;
            Ok(Output::Reports(vec![timed(opts, || d2_zero(alg, &rep, opts))?]))
        }
        CohomologyCmd::SquareLemma => {
            let (_, op) = operator(def, opts)?;
            let rep = representation(def, opts, Some(op))?;
            Ok(Output::Reports(vec![timed(opts, || {
                square_lemma(alg, op, &rep, opts)
            })?]))
        }
    }
}

fn rng(opts: &Opts) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed)
}

/// δ∘δ = 0 on random cochains of the requested arity.
fn d2_zero(alg: &ConformalAlgebra, rep: &Representation, opts: &Opts) -> CResult<Report> {
    let mut rng = rng(opts);
    let mut out = Report::new(format!("d2_zero(arity={})", opts.arity));
    for k in 0..opts.random {
        let f = random_cochain(&mut rng, opts.arity, alg.rank(), rep.rank(), opts.max_deg)?;
        let dd = coboundary_homl(&coboundary_homl(&f, alg, rep)?, alg, rep)?;
        let zero = hlconf::cohomology::Cochain::zero(dd.arity(), alg.rank(), rep.rank())?;
        out.absorb(
            &format!("sample {k}"),
            compare_cochains("", &dd, &zero, &alg.basis_names, &rep.basis_names),
        );
    }
    Ok(out)
}

/// φ^{n+1}∘δⁿ = ∂ⁿ_HN∘φⁿ on random cochains of the requested arity.
fn square_lemma(alg: &ConformalAlgebra, n: &PdMap, rep: &Representation, opts: &Opts) -> CResult<Report> {
    let mut rng = rng(opts);
    let formula = opts.formula();
    let mut out = Report::new(format!("square_lemma(arity={})", opts.arity));
    for k in 0..opts.random {
        let f = random_cochain(&mut rng, opts.arity, alg.rank(), rep.rank(), opts.max_deg)?;
        let lhs = phi_map(&coboundary_homl(&f, alg, rep)?, n, rep, formula)?;
        let rhs = coboundary_hn(&phi_map(&f, n, rep, formula)?, alg, n, rep)?;
        out.absorb(
            &format!("sample {k}"),
            compare_cochains("", &lhs, &rhs, &alg.basis_names, &rep.basis_names),
        );
    }
    Ok(out)
}

/// d_HNLA∘d_HNLA = (0, 0) on random pairs `(f, g)` with `f` of the requested
/// arity (`g` is absent at arity 1).
fn d_hnla_squared(alg: &ConformalAlgebra, n: &PdMap, rep: &Representation, opts: &Opts) -> CResult<Report> {
    let mut rng = rng(opts);
    let formula = opts.formula();
    let mut out = Report::new(format!("d_hnla_squared(arity={})", opts.arity));
    for k in 0..opts.random {
        let f = random_cochain(&mut rng, opts.arity, alg.rank(), rep.rank(), opts.max_deg)?;
        let g = if opts.arity > 1 {
            Some(random_cochain(
                &mut rng,
                opts.arity - 1,
                alg.rank(),
                rep.rank(),
                opts.max_deg,
            )?)
        } else {
            None
        };
        let once = coboundary_hnla(&HnlaPair::new(f, g)?, alg, n, rep, formula)?;
        let mut r = hlconf::cohomology::is_hnla_cocycle(&once, alg, n, rep, formula)?;
        r = renamed(r, "");
        out.absorb(&format!("sample {k}"), r);
    }
    Ok(out)
}

fn deform(what: DeformCmd, def: &Definition, opts: &Opts) -> CResult<Output> {
    let (_, d) = pick(
        &def.deformations,
        opts.deformation.as_ref(),
        "deformation",
        "deformation",
    )?;
    let reports = match what {
        DeformCmd::CheckOrder => {
            let orders: Vec<usize> = match opts.order {
                Some(k) => vec![k],
                None => (0..=d.data.order()).collect(),
            };
            orders
                .into_iter()
                .map(|k| timed(opts, || Ok(verify_deformation_order(&d.data, k)?)))
                .collect::<CResult<Vec<_>>>()?
        }
        DeformCmd::Cocycle => vec![timed(opts, || {
            Ok(infinitesimal_cocycle_check(&d.data, opts.formula())?.1)
        })?],
        DeformCmd::Equiv1 => {
            let other = opts
                .other
                .as_ref()
                .ok_or_else(|| CliError("--other is required".into()))?;
            let (_, b) = pick(&def.deformations, Some(other), "deformation", "other")?;
            let psi = opts.psi.as_ref().ok_or_else(|| CliError("--psi is required".into()))?;
            let (_, psi) = pick(&def.operators, Some(psi), "operator", "psi")?;
            vec![timed(opts, || {
                Ok(equivalence_order1_check(psi, &d.data, &b.data, opts.formula())?)
            })?]
        }
    };
    Ok(Output::Reports(reports))
}
