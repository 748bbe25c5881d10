use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use n2sca::algebra::check_super_jacobi;
use n2sca::expr::parse_y_polynomial;
use n2sca::maps::check_maps_agree;
use n2sca::poly::DensePoly;
use n2sca::restriction::check_simplicity_witness;
use n2sca::series::factor_label;
use n2sca::{
    check_homomorphism, check_lattice_battery, Algebra, AlgebraElement, CompositionSeries, Error, GeneratorMap,
    ModuleElement, Omega, Param, Parity, QuadExt, QuotientElement, QuotientModule, Representation, RestrictedAction,
    Scalar, StandardMap, Status, SubmoduleSpec, VerificationReport, WitnessBounds,
};

const USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "n2sca",
    version,
    about = "Exact checks for N=2 superconformal algebras and the modules Omega(lam,alp)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Act with an algebra element on a module element.
    Act(ActArgs),
    /// Composition series of Omega/M_h.
    Decompose(DecomposeArgs),
    /// Checks on the restriction of S(lam,alp,a) to an N=1 algebra.
    Restrict(RestrictArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Algebra,
    Module,
    Homomorphism,
    Submodule,
    Quotient,
    Restriction,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
    window: i64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    /// Algebra for `algebra` and `restriction` (default: all, resp. N1R).
    #[arg(long)]
    which: Option<Algebra>,
    /// A map name or `all`.
    #[arg(long, default_value = "all")]
    map: String,
    /// Submodule spec such as `M[h=y^2-1]`; repeatable.
    #[arg(long)]
    spec: Vec<String>,
    /// Polynomial in y: lattice battery entry, or h~ for the Xi check.
    #[arg(long)]
    h: Vec<String>,
    /// Value of a in S(lam,alp,a); formal `a` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Specialize lam (default: formal).
    #[arg(long, allow_hyphen_values = true)]
    lam0: Option<String>,
    /// Specialize alp (default: formal).
    #[arg(long, allow_hyphen_values = true)]
    alp0: Option<String>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    word_length: u32,
    /// Compare images exactly, even for maps defined modulo the center.
    #[arg(long)]
    keep_center: bool,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    Omega,
    Quotient,
}

#[derive(Args)]
struct ActArgs {
    element: String,
    vector: String,
    #[arg(long, default_value = "R")]
    algebra: Algebra,
    #[arg(long, value_enum, default_value = "omega")]
    module: ModuleKind,
    /// Parity of the vector when its variables do not decide it.
    #[arg(long, default_value = "even")]
    parity: Parity,
    /// Value of a in S(lam,alp,a); formal `a` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Specialize lam (default: formal).
    #[arg(long, allow_hyphen_values = true)]
    lam0: Option<String>,
    /// Specialize alp (default: formal).
    #[arg(long, allow_hyphen_values = true)]
    alp0: Option<String>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    h: String,
    /// Roots of h in chain order, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    roots: Option<Vec<String>>,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    All,
    Relations,
    Rank1,
    G0,
    Simplicity,
}

#[derive(Args)]
struct RestrictArgs {
    #[arg(long, default_value = "N1R")]
    algebra: Algebra,
    /// Value of a in S(lam,alp,a).
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, value_enum, default_value = "all")]
    check: Check,
    /// Specialize lam (default: formal, or 3/2 for the simplicity witness).
    #[arg(long, allow_hyphen_values = true)]
    lam0: Option<String>,
    /// Specialize alp (default: formal, or 2 for the simplicity witness).
    #[arg(long, allow_hyphen_values = true)]
    alp0: Option<String>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    word_length: u32,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn scalar(text: &str) -> CliResult<Scalar> {
    text.parse::<Scalar>().map_err(usage)
}

fn number(flag: &str, text: &str) -> CliResult<QuadExt> {
    scalar(text)?
        .as_constant()
        .ok_or_else(|| CliError::Usage(format!("--{flag} must be a number in Q(sqrt2), got `{text}`")))
}

fn y_poly(text: &str) -> CliResult<DensePoly> {
    parse_y_polynomial(text).map_err(usage)
}

fn omega(lam0: &Option<String>, alp0: &Option<String>) -> CliResult<(Scalar, Scalar)> {
    let lam = lam0.as_deref().map_or(Ok(Scalar::param(Param::Lam)), scalar)?;
    let alp = alp0.as_deref().map_or(Ok(Scalar::param(Param::Alp)), scalar)?;
    Ok((lam, alp))
}

/// Result of a command: a report plus optional extra JSON fields.
struct Outcome {
    report: VerificationReport,
    extra: Value,
    lines: Vec<String>,
}

impl Outcome {
    fn plain(report: VerificationReport) -> Self {
        Outcome { report, extra: Value::Null, lines: Vec::new() }
    }
}

fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let (window, degree) = (args.bounds.window, args.bounds.degree);
    let mut report = VerificationReport::new(match args.suite {
        Suite::Algebra => "algebra",
        Suite::Module => "module",
        Suite::Homomorphism => "homomorphism",
        Suite::Submodule => "submodule",
        Suite::Quotient => "quotient",
        Suite::Restriction => "restriction",
    })
    .param("window", window);
    if !matches!(args.suite, Suite::Algebra | Suite::Homomorphism) {
        report = report.param("degree", degree);
    }
    match args.suite {
        Suite::Algebra => {
            let algebras = args.which.map_or_else(|| Algebra::ALL.to_vec(), |a| vec![a]);
            report = report.param("which", algebras.iter().map(ToString::to_string).collect::<Vec<_>>());
            for alg in algebras {
                report.absorb(check_super_jacobi(alg, window));
            }
        }
        Suite::Module => {
            let (lam, alp) = omega(&args.lam0, &args.alp0)?;
            let om = Omega::new(lam, alp)?;
            report = report.param("lam", om.lam().to_string()).param("alp", om.alp().to_string());
            report.absorb(om.check_module_compatibility(window, degree));
            report.absorb(om.check_uh_freeness(degree));
            report.absorb(om.check_shift_identities(window, 3, degree));
            report.absorb(om.check_central_triviality(degree));
        }
        Suite::Homomorphism => {
            let maps = if args.map == "all" {
                StandardMap::ALL.to_vec()
            } else {
                vec![args.map.parse::<StandardMap>().map_err(CliError::Usage)?]
            };
            report = report.param("map", args.map.clone());
            for m in &maps {
                let mut map = GeneratorMap::standard(*m);
                if args.keep_center {
                    map = map.with_mod_center(false);
                }
                report.absorb(check_homomorphism(&map, window));
            }
            if args.map == "all" {
                let composite = GeneratorMap::compose(&GeneratorMap::t_to_r(), &GeneratorMap::tau())?;
                report.absorb(check_maps_agree(&composite, &GeneratorMap::sigma(), window));
            }
        }
        Suite::Submodule => {
            if args.spec.is_empty() {
                let texts: Vec<String> = if args.h.is_empty() {
                    ["1", "y", "y+1", "y-2", "y^2-1"].map(String::from).to_vec()
                } else {
                    args.h.clone()
                };
                let hs = texts.iter().map(|t| y_poly(t)).collect::<CliResult<Vec<_>>>()?;
                report = report.param("h", hs.iter().map(ToString::to_string).collect::<Vec<_>>());
                report.absorb(check_lattice_battery(&hs, window, degree)?);
            } else {
                let specs = args
                    .spec
                    .iter()
                    .map(|s| s.parse::<SubmoduleSpec>().map_err(usage))
                    .collect::<CliResult<Vec<_>>>()?;
                report = report.param("spec", specs.iter().map(ToString::to_string).collect::<Vec<_>>());
                for s in specs {
                    report.absorb(s.check_closure(window, degree));
                }
            }
        }
        Suite::Quotient => {
            let (lam, alp) = omega(&args.lam0, &args.alp0)?;
            let a = args.a.as_deref().map_or(Ok(Scalar::param(Param::A)), scalar)?;
            let s = QuotientModule::new(lam.clone(), alp, a.clone())?;
            report = report.param("module", s.label());
            report.absorb(s.check_module_compatibility(window, degree));
            report.absorb(s.check_projection(window, degree));
            let target = QuotientModule::new(lam, Scalar::param(Param::Bet), a)?;
            report.absorb(s.check_phi_intertwining(&target, window, degree)?);
            if s.a_value().is_some() {
                report.absorb(s.check_kernel(degree)?);
                let tildes = if args.h.is_empty() {
                    vec![DensePoly::one()]
                } else {
                    args.h.iter().map(|t| y_poly(t)).collect::<CliResult<Vec<_>>>()?
                };
                for h in tildes {
                    report.absorb(s.check_xi_intertwining(&h, window, degree)?);
                }
            } else {
                report.note("kernel and Xi checks need a numeric --a; skipped");
            }
        }
        Suite::Restriction => {
            let alg = args.which.unwrap_or(Algebra::N1R);
            let a = args.a.as_deref().unwrap_or("1");
            let inner = restrict_report(alg, a, Check::All, &args.lam0, &args.alp0, args.word_length, window, degree)?;
            report = report.param("which", alg.to_string()).param("a", a);
            report.absorb(inner);
        }
    }
    Ok(Outcome::plain(report))
}

#[allow(clippy::too_many_arguments)]
fn restrict_report(
    alg: Algebra,
    a_text: &str,
    check: Check,
    lam0: &Option<String>,
    alp0: &Option<String>,
    word_length: u32,
    window: i64,
    degree: u32,
) -> CliResult<VerificationReport> {
    if !matches!(alg, Algebra::N1R | Algebra::N1NS) {
        return Err(CliError::Usage(format!("restriction is defined for N1R and N1NS, not {alg}")));
    }
    let ramond = alg == Algebra::N1R;
    if matches!(check, Check::Rank1 | Check::G0) && !ramond {
        return Err(CliError::Usage("rank1 and g0 checks need --algebra N1R".into()));
    }
    let a = scalar(a_text)?;
    let mut report = VerificationReport::new("restrict").param("algebra", alg.to_string()).param("a", a.to_string());
    let (lam, alp) = omega(lam0, alp0)?;
    let r = RestrictedAction::new(alg, QuotientModule::new(lam, alp, a.clone())?)?;
    if matches!(check, Check::All | Check::Relations) {
        report.absorb(r.check_n1_relations(window, degree));
    }
    if ramond && matches!(check, Check::All | Check::G0) {
        report.absorb(r.check_g0_square(degree.max(5))?);
    }
    if ramond && matches!(check, Check::All | Check::Rank1) {
        report.absorb(r.check_rank1_freeness(degree.max(5))?);
    }
    if matches!(check, Check::All | Check::Simplicity) {
        let a = a.as_constant().ok_or_else(|| CliError::Usage("the simplicity witness needs a numeric --a".into()))?;
        let lam0 = number("lam0", lam0.as_deref().unwrap_or("3/2"))?;
        let alp0 = number("alp0", alp0.as_deref().unwrap_or("2"))?;
        let bounds = WitnessBounds { degree, word_length, window };
        report.absorb(check_simplicity_witness(alg, &a, &lam0, &alp0, bounds)?);
    }
    Ok(report)
}

fn act(args: &ActArgs) -> CliResult<String> {
    let x = AlgebraElement::parse(args.algebra, &args.element).map_err(usage)?;
    let (lam, alp) = omega(&args.lam0, &args.alp0)?;
    match args.module {
        ModuleKind::Omega => {
            if args.algebra != Algebra::R {
                return Err(CliError::Usage("Omega is a module over R; use --module quotient for N1R/N1NS".into()));
            }
            let v = ModuleElement::parse(&args.vector, args.parity).map_err(usage)?;
            Ok(Omega::new(lam, alp)?.act(&x, &v)?.to_string())
        }
        ModuleKind::Quotient => {
            let a = args.a.as_deref().map_or(Ok(Scalar::param(Param::A)), scalar)?;
            let s = QuotientModule::new(lam, alp, a)?;
            let v = QuotientElement::parse(&args.vector, args.parity).map_err(usage)?;
            let w = match args.algebra {
                Algebra::R => s.act(&x, &v)?,
                Algebra::N1R | Algebra::N1NS => RestrictedAction::new(args.algebra, s)?.act(&x, &v)?,
                other => return Err(CliError::Usage(format!("no action of {other} on S(lam,alp,a)"))),
            };
            Ok(w.to_string())
        }
    }
}

fn decompose(args: &DecomposeArgs) -> CliResult<Outcome> {
    let h = y_poly(&args.h)?;
    let hint = args
        .roots
        .as_ref()
        .map(|rs| rs.iter().map(|r| number("roots", r)).collect::<CliResult<Vec<_>>>())
        .transpose()?;
    let (window, degree) = (args.bounds.window, args.bounds.degree);
    let series = match CompositionSeries::new(&h, hint.as_deref()) {
        Ok(s) => s,
        Err(Error::UnsplitPolynomial(p)) => {
            let mut report = VerificationReport::new("composition-series")
                .param("h", p.clone())
                .param("window", window)
                .param("degree", degree);
            report.mark_inconclusive(format!("no factorization of {p} into linear factors over Q(sqrt2) was found"));
            return Ok(Outcome::plain(report));
        }
        Err(e) => return Err(e.into()),
    };
    let links = series.verify_links(window, degree);
    let mut report = VerificationReport::new("composition-series")
        .param("h", series.h().to_string())
        .param("window", window)
        .param("degree", degree);
    report.record(0, []);
    let mut link_json = Vec::new();
    let mut lines = Vec::new();
    for (link, r) in series.links().iter().zip(links) {
        let factor = factor_label(&link.factor);
        lines.push(format!("  {} / {} = {}  [{}]", link.outer_label(), link.inner, factor, status_name(r.status)));
        link_json.push(json!({
            "outer": link.outer_label(),
            "inner": link.inner.to_string(),
            "factor": factor,
            "status": r.status,
        }));
        report.absorb(r);
    }
    let mut extra = series.to_json();
    extra["links"] = Value::Array(link_json);
    lines.insert(
        0,
        format!("  chain: Omega > {}", series.chain().iter().map(ToString::to_string).collect::<Vec<_>>().join(" > ")),
    );
    Ok(Outcome { report, extra, lines })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}

fn exit_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}

fn emit(outcome: Outcome, json: bool) -> u8 {
    let Outcome { report, extra, lines } = outcome;
    if json {
        let mut v = report.to_json();
        if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
            for (k, val) in more {
                map.entry(k).or_insert(val);
            }
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
        println!(
            "{}: {} ({} checked, {} violations) {}",
            report.suite,
            status_name(report.status),
            report.checked(),
            report.violations.len(),
            params.join(" ")
        );
        for line in lines {
            println!("{line}");
        }
        for v in &report.violations {
            println!("  violation at {}: {} != {}", v.context, v.lhs, v.rhs);
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
    }
    exit_code(report.status)
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(compact).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    Ok(match cli.command {
        Command::Verify(args) => emit(verify(&args)?, args.bounds.json),
        Command::Act(args) => {
            println!("{}", act(&args)?);
            0
        }
        Command::Decompose(args) => emit(decompose(&args)?, args.bounds.json),
        Command::Restrict(args) => {
            let (w, d) = (args.bounds.window, args.bounds.degree);
            let report =
                restrict_report(args.algebra, &args.a, args.check, &args.lam0, &args.alp0, args.word_length, w, d)?;
            emit(Outcome::plain(report), args.bounds.json)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}
