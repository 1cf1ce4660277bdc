//! The `liepair` command line.
//!
//! Exit codes: 0 success, 1 a negative verdict (not Maurer-Cartan, not
//! equivalent, failed verification), 2 bad input, 3 undecided.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog;
use crate::coeff::{format_scalar, ArtinAlgebra};
use crate::cohomology::{h1_ext, h1_ext0, h_ce, CohomologyReport};
use crate::deform::{equiv_decide, Decision};
use crate::error::{Error, Result};
use crate::io::{self, AutomorphismDoc, CohomologyDoc, GaugeDoc, LieDoc, MCDoc, OmegaDoc};
use crate::liealg::LiePair;
use crate::mc::{gauge_act, mc_extend, mc_residual, Extension, GaugeMode, MCElement};
use crate::omega::OmegaElement;
use crate::sample::Sampler;
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "liepair", version, about = "Exact deformation theory of Lie algebra pairs")]
struct Cli {
    /// Catalog name or path to a pair document.
    #[arg(long, global = true)]
    pair: Option<String>,
    /// Built-in algebra name (`dual`, `t^k`, `m2xr`) or path to an algebra document.
    #[arg(long, global = true)]
    algebra: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Weak)]
    mode: ModeArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Weak,
    Semistrict,
    Matched,
}

impl From<ModeArg> for GaugeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => GaugeMode::Weak,
            ModeArg::Semistrict => GaugeMode::Semistrict,
            ModeArg::Matched => GaugeMode::Matched,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Functor {
    /// Chevalley-Eilenberg cohomology of the subalgebra with values in the quotient.
    Ce,
    Weak,
    Semistrict,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First cohomology governing a deformation functor.
    Tangent {
        functor: Functor,
        /// Cohomological degree, only for `ce`.
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Maurer-Cartan elements.
    Mc {
        #[command(subcommand)]
        action: McAction,
    },
    /// Gauge action and equivalence.
    Gauge {
        #[command(subcommand)]
        action: GaugeAction,
    },
    /// List the built-in pairs, or print one with `--pair`.
    Catalog,
    /// Run a property suite.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum McAction {
    /// Check the Maurer-Cartan equation; exit 1 if it fails.
    Check { element: PathBuf },
    /// Correct an element order by order, or report the obstruction.
    Extend {
        element: PathBuf,
        /// Only perform the step from `m^k` to `m^(k+1)`.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Sample a Maurer-Cartan element for `--pair` over `--algebra`.
    Random,
}

#[derive(Subcommand, Debug)]
enum GaugeAction {
    /// Apply a gauge parameter to a Maurer-Cartan element.
    Act { parameter: PathBuf, element: PathBuf },
    /// Search for a gauge parameter carrying the first element to the second.
    Solve { source: PathBuf, target: PathBuf },
}

/// Output of one command: a document and a human-readable rendering.
struct Output {
    json: serde_json::Value,
    table: String,
    code: i32,
}

impl Output {
    fn new<T: Serialize>(doc: &T, table: String, code: i32) -> Self {
        Self {
            json: serde_json::to_value(doc).expect("documents serialize"),
            table,
            code,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&output.json).expect("json"),
                Format::Table => output.table.trim_end().to_string(),
            };
            let _ = writeln!(out, "{text}");
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotMaurerCartan | Error::NotMaurerCartanModulo(_) => EXIT_NEGATIVE,
        Error::InternalInconsistency(_) => EXIT_UNDECIDED,
        _ => EXIT_INPUT,
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Tangent { functor, degree } => tangent(cli, *functor, *degree),
        Command::Mc { action } => match action {
            McAction::Check { element } => mc_check(cli, element),
            McAction::Extend { element, order } => mc_extend_cmd(cli, element, *order),
            McAction::Random => mc_random(cli),
        },
        Command::Gauge { action } => match action {
            GaugeAction::Act { parameter, element } => gauge_act_cmd(cli, parameter, element),
            GaugeAction::Solve { source, target } => gauge_solve_cmd(cli, source, target),
        },
        Command::Catalog => catalog_cmd(cli),
        Command::Verify { suite } => verify_cmd(cli, suite),
    }
}

fn require_pair(cli: &Cli) -> Result<Arc<LiePair>> {
    let name = cli
        .pair
        .as_deref()
        .ok_or_else(|| Error::Parse("this command needs --pair".into()))?;
    io::load_pair(name)
}

fn algebra_or_dual(cli: &Cli) -> Result<Arc<ArtinAlgebra>> {
    match cli.algebra.as_deref() {
        Some(name) => io::load_algebra(name),
        None => Ok(ArtinAlgebra::dual()),
    }
}

/// Reads an element document, checking it against `--pair`/`--algebra`
/// when those are given.
fn read_element(cli: &Cli, path: &Path) -> Result<MCElement> {
    let xi = io::read_json::<MCDoc>(path)?.to_element()?;
    if let Some(name) = &cli.pair {
        if **xi.pair() != *io::load_pair(name)? {
            return Err(Error::PairMismatch);
        }
    }
    if let Some(name) = &cli.algebra {
        if !xi.algebra().same_as(&*io::load_algebra(name)?) {
            return Err(Error::AlgebraMismatch);
        }
    }
    Ok(xi)
}

fn omega_table(x: &OmegaElement) -> String {
    let pair = x.pair();
    let labels = pair.lie().labels();
    let terms: Vec<String> = x
        .entries()
        .into_iter()
        .map(|(idx, b, c)| {
            let args: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
            format!("({}) -> {} {}", args.join(","), format_scalar(&c), labels[pair.r() + b])
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(", ")
    }
}

fn element_table(xi: &MCElement) -> String {
    let labels = xi.algebra().labels();
    let mut lines = vec![format!(
        "pair {}  algebra {}",
        xi.pair().name(),
        xi.algebra().name()
    )];
    for (i, c) in xi.components().iter().enumerate() {
        if !c.is_zero() {
            lines.push(format!("  {}: {}", labels[i], omega_table(c)));
        }
    }
    if lines.len() == 1 {
        lines.push("  0".into());
    }
    lines.join("\n")
}

fn report_table(r: &CohomologyReport) -> String {
    let mut lines = vec![format!(
        "{} of {} in degree {}: dimension {} (kernel {}, image {})",
        r.complex(),
        r.pair_name(),
        r.degree(),
        r.dimension(),
        r.kernel_dimension(),
        r.image_dimension()
    )];
    for (i, x) in r.representatives().iter().enumerate() {
        lines.push(format!("  [{i}] {}", omega_table(x)));
    }
    lines.join("\n")
}

fn tangent(cli: &Cli, functor: Functor, degree: usize) -> Result<Output> {
    let pair = require_pair(cli)?;
    if degree > pair.r() {
        return Err(Error::Parse(format!("degree {degree} exceeds the subalgebra rank {}", pair.r())));
    }
    let report = match functor {
        Functor::Ce => h_ce(&pair, degree),
        Functor::Weak => h1_ext(&pair),
        Functor::Semistrict => h1_ext0(&pair),
    };
    Ok(Output::new(&CohomologyDoc::from_report(&report), report_table(&report), EXIT_OK))
}

fn residual_docs(xi: &MCElement) -> Vec<serde_json::Value> {
    mc_residual(xi)
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m_index, c)| json!({ "m_index": m_index, "omega": OmegaDoc::from_omega(c) }))
        .collect()
}

fn mc_check(cli: &Cli, path: &Path) -> Result<Output> {
    let xi = read_element(cli, path)?;
    let residual = residual_docs(&xi);
    let ok = residual.is_empty();
    let doc = json!({ "maurer_cartan": ok, "residual": residual });
    let table = format!("{}\nMaurer-Cartan: {}", element_table(&xi), if ok { "yes" } else { "no" });
    Ok(Output::new(&doc, table, if ok { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn obstruction_output(o: &crate::mc::ObstructionClass, alg: &ArtinAlgebra) -> Output {
    let class: Vec<String> = o.class.iter().map(format_scalar).collect();
    let doc = json!({
        "status": "obstructed",
        "order": o.order,
        "direction": alg.adapted_vector(o.direction).iter().map(format_scalar).collect::<Vec<_>>(),
        "cocycle": OmegaDoc::from_omega(&o.cocycle),
        "class": class,
    });
    let table = format!(
        "obstructed at order {}\n  cocycle: {}\n  class in H2: [{}]",
        o.order,
        omega_table(&o.cocycle),
        class.join(", ")
    );
    Output::new(&doc, table, EXIT_OK)
}

fn mc_extend_cmd(cli: &Cli, path: &Path, order: Option<usize>) -> Result<Output> {
    let mut xi = read_element(cli, path)?;
    let alg = Arc::clone(xi.algebra());
    let orders: Vec<usize> = match order {
        Some(k) => vec![k],
        None => (1..=alg.nilpotency()).collect(),
    };
    for k in orders {
        if order.is_none() && mc_residual(&xi).in_power(k + 1) {
            continue;
        }
        match mc_extend(&xi, k)? {
            Extension::Extended(next) => xi = next,
            Extension::Obstructed(o) => return Ok(obstruction_output(&o, &alg)),
        }
    }
    let ok = crate::mc::is_mc(&xi);
    let doc = json!({ "status": "extended", "maurer_cartan": ok, "element": MCDoc::from_element(&xi) });
    let table = format!("{}\nMaurer-Cartan: {}", element_table(&xi), if ok { "yes" } else { "no" });
    Ok(Output::new(&doc, table, EXIT_OK))
}

fn mc_random(cli: &Cli) -> Result<Output> {
    let pair = require_pair(cli)?;
    let alg = algebra_or_dual(cli)?;
    let xi = Sampler::new(cli.seed).mc_element(&pair, &alg).verify()?;
    Ok(Output::new(&MCDoc::from_element(&xi), element_table(&xi), EXIT_OK))
}

fn gauge_act_cmd(cli: &Cli, parameter: &Path, element: &Path) -> Result<Output> {
    let delta = io::read_json::<GaugeDoc>(parameter)?.to_parameter()?;
    let xi = read_element(cli, element)?.verify()?;
    let image = gauge_act(&delta, &xi)?;
    Ok(Output::new(&MCDoc::from_element(&image), element_table(&image), EXIT_OK))
}

fn gauge_solve_cmd(cli: &Cli, source: &Path, target: &Path) -> Result<Output> {
    let xi = read_element(cli, source)?.verify()?;
    let eta = read_element(cli, target)?.verify()?;
    let mode = GaugeMode::from(cli.mode);
    Ok(match equiv_decide(&xi, &eta, mode)? {
        Decision::Equivalent(w) => {
            let doc = json!({
                "verdict": "equivalent",
                "mode": mode.name(),
                "parameter": GaugeDoc::from_parameter(&w.delta),
                "automorphism": AutomorphismDoc::from_automorphism(&w.automorphism),
            });
            let mut table = format!("equivalent ({} mode)\n  parameter:", mode.name());
            for (i, d) in w.delta.components().iter().enumerate() {
                if !d.is_zero() {
                    table.push_str(&format!("\n    {}: {:?}", xi.algebra().labels()[i], d.matrix()));
                }
            }
            Output::new(&doc, table, EXIT_OK)
        }
        Decision::NotEquivalent => Output::new(
            &json!({ "verdict": "not-equivalent", "mode": mode.name() }),
            format!("not equivalent ({} mode)", mode.name()),
            EXIT_NEGATIVE,
        ),
        Decision::Unknown { order } => Output::new(
            &json!({ "verdict": "unknown", "mode": mode.name(), "order": order }),
            format!("undecided: no parameter found at order {order}"),
            EXIT_UNDECIDED,
        ),
    })
}

fn catalog_cmd(cli: &Cli) -> Result<Output> {
    if let Some(name) = &cli.pair {
        let pair = io::load_pair(name)?;
        let doc = LieDoc::from_pair(&pair);
        let table = format!(
            "{}: dim {}, subalgebra rank {}, matched {}\n  basis {}",
            pair.name(),
            pair.n(),
            pair.r(),
            pair.is_matched(),
            pair.lie().labels().join(" ")
        );
        return Ok(Output::new(&doc, table, EXIT_OK));
    }
    let mut docs = Vec::new();
    let mut lines = Vec::new();
    for e in catalog::entries() {
        let golden = e.golden.map(|g| json!({ "ce": g.ce, "weak": g.weak, "semistrict": g.semistrict }));
        docs.push(json!({
            "name": e.name,
            "dim": e.pair.n(),
            "subalgebra_rank": e.pair.r(),
            "matched": e.pair.is_matched(),
            "note": e.note,
            "golden": golden,
        }));
        lines.push(format!(
            "{:<14} dim {}  rank {}  matched {:<5}  {}",
            e.name,
            e.pair.n(),
            e.pair.r(),
            e.pair.is_matched(),
            e.note
        ));
    }
    Ok(Output::new(&docs, lines.join("\n"), EXIT_OK))
}

fn verify_cmd(cli: &Cli, suite: &str) -> Result<Output> {
    let suite = Suite::parse(suite)?;
    let report = verify::run(suite, cli.seed);
    let mut lines = Vec::new();
    for c in &report.checks {
        lines.push(format!(
            "{} {:<10} {} ({} instances)",
            if c.passed() { "PASS" } else { "FAIL" },
            c.module,
            c.property,
            c.instances
        ));
        if let Some(w) = &c.witness {
            lines.push(format!("     witness: {w}"));
        }
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Output::new(&report, lines.join("\n"), code))
}
