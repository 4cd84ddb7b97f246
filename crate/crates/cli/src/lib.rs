//! `structcon` command line: check, oracle, closure, graph and report
//! subcommands over JSON pattern specs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use structcon_core::algebra::{lie_closure, AlgebraElement, AlgebraKind, BasisElement, Rational};
use structcon_core::document::{parse_spec, SpecError};
use structcon_core::graphs::{
    contr_graph_gl, contr_graph_so, contr_graph_su, drift_graph_gl, drift_graph_so, drift_graph_su,
};
use structcon_core::patterns::{control_generators, sample_coefficients};
use structcon_core::verdict::{check, oracle, OracleConfig, OracleReport, Report};
use structcon_core::{CoefficientPool, Family, Graph, ZeroPatternPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "structcon", version, about = "Structural controllability of bilinear systems on SO(n), GL+(n), SU(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the graph conditions and print the verdict.
    Check {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the oracle and flag contradictions (exit 3).
        #[arg(long)]
        cross: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Closure dimensions of sampled drifts plus all control bases.
    Oracle {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the checker and flag contradictions (exit 3).
        #[arg(long)]
        cross: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Dimension of the Lie algebra generated by a spec or an inline list.
    Closure(ClosureArgs),
    /// Drift, controlled or union graph in DOT.
    Graph {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Union)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Checker verdict cross-validated against the oracle.
    Report {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Nonzero integers in `a..b` (inclusive).
    #[arg(long, default_value = "-9..9", value_parser = parse_pool)]
    pool: CoefficientPool,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig { trials: self.trials as usize, seed: self.seed, pool: self.pool.clone() }
    }
}

#[derive(Debug, Args)]
struct ClosureArgs {
    /// Spec file: the drift is instantiated and joined with every control base.
    #[arg(conflicts_with_all = ["algebra", "n", "gens"], required_unless_present = "gens")]
    spec: Option<PathBuf>,
    /// Drift coefficients, comma separated (e.g. `1,3,1` or `1/2,-2`).
    #[arg(long, value_delimiter = ',', requires = "spec")]
    coeffs: Option<Vec<String>>,
    /// Seed for drawing drift coefficients when `--coeffs` is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-9..9", value_parser = parse_pool)]
    pool: CoefficientPool,
    #[arg(long, requires_all = ["n", "gens"])]
    algebra: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    /// Inline generators, e.g. `B12,C13,D24`, or `all` for the full basis.
    #[arg(long, value_delimiter = ',', requires_all = ["algebra", "n"])]
    gens: Option<Vec<String>>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Drift,
    Contr,
    Union,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
}

fn parse_pool(s: &str) -> Result<CoefficientPool, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    CoefficientPool::integer_range(lo, hi).map_err(|e| e.to_string())
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Self { code: EXIT_USAGE, msg: msg.to_string() }
    }

    fn invalid(msg: impl ToString) -> Self {
        Self { code: EXIT_INVALID, msg: msg.to_string() }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse { .. } => Failure::usage(e),
            SpecError::Validation { .. } => Failure::invalid(e),
        }
    }
}

impl From<structcon_core::Error> for Failure {
    fn from(e: structcon_core::Error) -> Self {
        Failure::invalid(e)
    }
}

type Outcome = Result<(String, i32), Failure>;

fn load(path: &Path) -> Result<ZeroPatternPair, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_spec(&text)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_report(pair: &ZeroPatternPair, r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {}", pair.kind());
    let width = r.conditions.iter().map(|c| c.name.len()).max().unwrap_or(0).max("condition".len());
    let _ = writeln!(out, "{:<width$}  holds  citation", "condition");
    for c in &r.conditions {
        let _ = writeln!(out, "{:<width$}  {:<5}  {}", c.name, yes_no(c.holds), c.citation);
    }
    let _ = writeln!(out, "verdict: {}", r.headline());
    if let Some(o) = &r.oracle {
        out.push_str(&render_oracle(o));
    }
    if r.contradiction {
        let _ = writeln!(out, "CONTRADICTION: checker verdict disagrees with the oracle");
    }
    out
}

fn render_oracle(o: &OracleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "oracle: {} trials, seed {}, target dimension {}", o.trials, o.seed, o.target);
    for (t, d) in o.dims.iter().enumerate() {
        let _ = writeln!(out, "  trial {}: {d}/{}", t + 1, o.target);
    }
    if o.achieved_full {
        let _ = writeln!(out, "full algebra reached");
    } else {
        let _ = writeln!(out, "no witness found in {} trials (max dimension {})", o.trials, o.max_dim());
    }
    out
}

fn cmd_check(spec: &Path, as_json: bool, cross: bool, args: &OracleArgs) -> Outcome {
    let pair = load(spec)?;
    let mut report = check(&pair)?;
    if cross {
        report = report.with_oracle(oracle(&pair, &args.config())?);
    }
    let code = if report.contradiction { EXIT_CONTRADICTION } else { EXIT_OK };
    let text = if as_json { json(&report) } else { render_report(&pair, &report) };
    Ok((text, code))
}

fn cmd_oracle(spec: &Path, as_json: bool, cross: bool, args: &OracleArgs) -> Outcome {
    let pair = load(spec)?;
    let o = oracle(&pair, &args.config())?;
    if cross {
        let report = check(&pair)?.with_oracle(o);
        let code = if report.contradiction { EXIT_CONTRADICTION } else { EXIT_OK };
        let text = if as_json { json(&report) } else { render_report(&pair, &report) };
        return Ok((text, code));
    }
    let text = if as_json { json(&o) } else { render_oracle(&o) };
    Ok((text, EXIT_OK))
}

fn closure_generators(args: &ClosureArgs) -> Result<Vec<AlgebraElement>, Failure> {
    if let Some(spec) = &args.spec {
        let pair = load(spec)?;
        let coeffs: Vec<Rational> = match &args.coeffs {
            Some(cs) => cs
                .iter()
                .map(|c| c.trim().parse().map_err(|_| Failure::usage(format!("bad coefficient {c:?}"))))
                .collect::<Result<_, _>>()?,
            None => sample_coefficients(&pair.drift, &args.pool, args.seed),
        };
        let mut gens = vec![pair.drift.instantiate(&coeffs)?];
        gens.extend(control_generators(&pair.control));
        return Ok(gens);
    }
    let family = args.algebra.expect("clap enforces --algebra with --gens");
    let kind = AlgebraKind::new(family, args.n.expect("clap enforces --n with --gens"))?;
    let names = args.gens.as_deref().unwrap_or_default();
    if names.len() == 1 && names[0].trim() == "all" {
        return kind.basis().into_iter().map(|b| Ok(AlgebraElement::from_basis(kind, b)?)).collect();
    }
    names
        .iter()
        .map(|s| {
            let b: BasisElement = s.parse().map_err(Failure::usage)?;
            Ok(AlgebraElement::from_basis(kind, b)?)
        })
        .collect()
}

fn cmd_closure(args: &ClosureArgs) -> Outcome {
    let gens = closure_generators(args)?;
    let closure = lie_closure(&gens)?;
    let kind = gens[0].kind();
    if args.json {
        let basis: Vec<String> = closure.basis.rows().iter().map(ToString::to_string).collect();
        let value = serde_json::json!({
            "algebra": kind.family().as_str(),
            "n": kind.n(),
            "dimension": closure.dimension,
            "target": kind.dimension(),
            "steps": closure.steps,
            "basis": basis,
        });
        return Ok((json(&value), EXIT_OK));
    }
    let mut out = String::new();
    let _ = writeln!(out, "dimension: {} / {} ({kind})", closure.dimension, kind.dimension());
    let _ = writeln!(out, "bracket sweeps: {}", closure.steps);
    for row in closure.basis.rows() {
        let _ = writeln!(out, "  {row}");
    }
    Ok((out, EXIT_OK))
}

fn cmd_graph(spec: &Path, which: Which, _format: Format) -> Outcome {
    let pair = load(spec)?;
    fn pick<G: Graph>(drift: G, contr: G, which: Which) -> Result<String, Failure> {
        Ok(match which {
            Which::Drift => drift.to_dot(),
            Which::Contr => contr.to_dot(),
            Which::Union => drift.union(&contr)?.to_dot(),
        })
    }
    let dot = match pair.kind().family() {
        Family::So => pick(drift_graph_so(&pair.drift)?, contr_graph_so(&pair.control)?, which)?,
        Family::Gl => pick(drift_graph_gl(&pair.drift)?, contr_graph_gl(&pair.control)?, which)?,
        Family::Su => pick(drift_graph_su(&pair.drift)?, contr_graph_su(&pair.control)?, which)?,
    };
    Ok((dot, EXIT_OK))
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { spec, json, cross, oracle } => cmd_check(&spec, json, cross, &oracle),
        Command::Oracle { spec, json, cross, oracle } => cmd_oracle(&spec, json, cross, &oracle),
        Command::Closure(args) => cmd_closure(&args),
        Command::Graph { spec, which, format } => cmd_graph(&spec, which, format),
        Command::Report { spec, json, oracle } => cmd_check(&spec, json, true, &oracle),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
