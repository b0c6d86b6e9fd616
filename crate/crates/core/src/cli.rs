//! Command-line front end. Everything except process exit lives here so the
//! commands can be driven from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chow::{betti_closed_form, betti_oracle, presentation, GradedDims};
use crate::error::Error;
use crate::exact::{format_rational, parse_point, Rational};
use crate::fan::{build_fan, build_fan_stellar, Fan};
use crate::guard::Guards;
use crate::io::{betti_table_json, fan_to_json, normal_complex_to_json, presentation_json, rational_strings};
use crate::lattice::{enumerate_decorated_subsets, ArrangementSpec, BuildingSet};
use crate::normal::{complex_cells, union_extremes};
use crate::tropical::{combinatorial_type, curve_from_point, embed, TropicalCurve};
use crate::verify::{run_suite, Outcome, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildingSetChoice {
    /// Every nonempty decorated subset.
    Max,
    /// Decorated singletons only (the product fan).
    Singletons,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteChoice {
    All,
    Fan,
    Chow,
    Tropical,
    Normal,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-wonderful",
    version,
    about = "Nested-set fans, Chow rings, tropical curves and normal complexes for L^r_n"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Order of the cyclic action (r >= 2).
    #[arg(long, global = true)]
    pub r: Option<u32>,

    /// Number of light orbits (n >= 0).
    #[arg(long, global = true)]
    pub n: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed of the sampling generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the nested-set fan.
    Fan(FanArgs),
    /// Chow ring presentation and Betti numbers.
    Chow(ChowArgs),
    /// Locate a tropical curve or a point in the fan.
    Locate(LocateArgs),
    /// Cells of the normal complex.
    NormalComplex(NormalArgs),
    /// Run the invariant suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct FanArgs {
    /// Build by successive stellar subdivision of the product fan.
    #[arg(long)]
    pub via_stellar: bool,
    #[arg(long, value_enum, default_value_t = BuildingSetChoice::Max)]
    pub building_set: BuildingSetChoice,
}

#[derive(Debug, Args)]
pub struct ChowArgs {
    /// Require the quotient-ring oracle (by default it runs when feasible).
    #[arg(long)]
    pub oracle: bool,
    /// Print only the Betti table.
    #[arg(long)]
    pub betti_only: bool,
}

#[derive(Debug, Args)]
pub struct LocateArgs {
    /// Curve as `i:spoke:length,...`, spoke `c` for the center.
    #[arg(long, conflicts_with = "point", required_unless_present = "point")]
    pub curve: Option<String>,
    /// Ambient coordinates, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

#[derive(Debug, Args)]
pub struct NormalArgs {
    /// Also report the extreme points of the union of the cells.
    #[arg(long)]
    pub union_extremes: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
    pub suite: SuiteChoice,
}

/// What a run produced: exit status, report, and diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Self {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => match Guards::from_env() {
            Ok(guards) => run_with(&config, &guards),
            Err(e) => RunOutput::usage(e.to_string()),
        },
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if status == EXIT_OK {
                RunOutput::ok(text)
            } else {
                RunOutput {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(config: &RunConfig) -> RunOutput {
    match Guards::from_env() {
        Ok(guards) => run_with(config, &guards),
        Err(e) => RunOutput::usage(e.to_string()),
    }
}

pub fn run_with(config: &RunConfig, guards: &Guards) -> RunOutput {
    let spec = match spec_of(config) {
        Ok(s) => s,
        Err(message) => return RunOutput::usage(message),
    };
    let result = match &config.command {
        Command::Fan(a) => fan_command(&spec, a, config.format, guards),
        Command::Chow(a) => chow_command(&spec, a, config.format, guards),
        Command::Locate(a) => locate_command(&spec, a, config.format, guards),
        Command::NormalComplex(a) => normal_command(&spec, a, config.format, guards),
        Command::Check(a) => check_command(&spec, a, config.format, config.seed, guards),
    };
    let mut output = match result {
        Ok(o) => o,
        Err(CommandError { flag, error }) => {
            let message = match flag {
                Some(flag) => format!("{flag}: {error}"),
                None => error.to_string(),
            };
            return RunOutput::usage(message);
        }
    };
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &output.stdout) {
            return RunOutput::usage(format!("--out: cannot write {}: {e}", path.display()));
        }
        output.stdout.clear();
    }
    output
}

fn spec_of(config: &RunConfig) -> Result<ArrangementSpec, String> {
    let r = config.r.ok_or("--r is required")?;
    let n = config.n.ok_or("--n is required")?;
    ArrangementSpec::new(r, n).map_err(|e| format!("--r: {e}"))
}

struct CommandError {
    flag: Option<&'static str>,
    error: Error,
}

impl From<Error> for CommandError {
    fn from(error: Error) -> Self {
        Self { flag: None, error }
    }
}

fn flagged(flag: &'static str) -> impl Fn(Error) -> CommandError {
    move |error| CommandError {
        flag: Some(flag),
        error,
    }
}

type CommandResult = Result<RunOutput, CommandError>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn fan_command(spec: &ArrangementSpec, a: &FanArgs, format: Format, guards: &Guards) -> CommandResult {
    guards.check_fan(spec)?;
    let g = match a.building_set {
        BuildingSetChoice::Max => BuildingSet::maximal(spec),
        BuildingSetChoice::Singletons => BuildingSet::validated(
            spec,
            enumerate_decorated_subsets(spec).into_iter().filter(|d| d.len() == 1),
        )
        .map_err(flagged("--building-set"))?,
    };
    let fan = if a.via_stellar {
        build_fan_stellar(spec, &g)?
    } else {
        build_fan(spec, &g)?
    };
    Ok(RunOutput::ok(match format {
        Format::Json => pretty(&serde_json::to_value(fan_to_json(&fan)).expect("fan JSON")),
        Format::Text => fan_text(&fan, a),
    }))
}

fn fan_text(fan: &Fan, a: &FanArgs) -> String {
    let spec = fan.spec();
    let j = fan_to_json(fan);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fan r={} n={} ({} construction, {} building set)",
        spec.r(),
        spec.n(),
        if a.via_stellar { "stellar" } else { "direct" },
        match a.building_set {
            BuildingSetChoice::Max => "maximal",
            BuildingSetChoice::Singletons => "singleton",
        }
    );
    let _ = writeln!(out, "basis: {}", j.basis.join(" "));
    let _ = writeln!(out, "rays: {}", j.rays.len());
    for ray in &j.rays {
        let v: Vec<String> = ray.vector.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {:>3}  {:<24} ({})", ray.id, ray.subset, v.join(","));
    }
    let top = j.cones.iter().map(|c| c.dim).max().unwrap_or(0);
    let counts: Vec<String> = (0..=top)
        .map(|d| format!("{d}:{}", j.cones.iter().filter(|c| c.dim == d).count()))
        .collect();
    let _ = writeln!(out, "cones by dimension: {}", counts.join(" "));
    let _ = writeln!(out, "maximal cones: {}", fan.maximal_cones().count());
    for cone in fan.maximal_cones() {
        let label = match cone.chain() {
            Some(c) => c.to_string(),
            None => cone
                .rays()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        };
        let gens: Vec<String> = cone.generators().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {label}  {}", gens.join(" "));
    }
    out
}

fn chow_command(spec: &ArrangementSpec, a: &ChowArgs, format: Format, guards: &Guards) -> CommandResult {
    let closed = betti_closed_form(spec);
    let oracle = match betti_oracle(spec, guards) {
        Ok(o) => Some(o),
        Err(e) if a.oracle => return Err(flagged("--oracle")(e)),
        Err(_) => None,
    };
    let agree = oracle.as_ref().is_none_or(|o| *o == closed);
    let stdout = match format {
        Format::Json => {
            let mut v = json!({
                "r": spec.r(),
                "n": spec.n(),
                "betti": betti_table_json(&closed, oracle.as_ref()),
            });
            if !a.betti_only {
                v["presentation"] = presentation_json(&presentation(spec));
            }
            pretty(&v)
        }
        Format::Text => {
            let mut out = String::new();
            if !a.betti_only {
                out.push_str(&presentation_text(spec));
            }
            out.push_str(&betti_text(&closed, oracle.as_ref()));
            out
        }
    };
    Ok(RunOutput {
        status: if agree { EXIT_OK } else { EXIT_CHECK_FAILED },
        stdout,
        stderr: if agree {
            String::new()
        } else {
            "error: closed form and oracle disagree\n".into()
        },
    })
}

fn presentation_text(spec: &ArrangementSpec) -> String {
    let p = presentation(spec);
    let mut out = String::new();
    let _ = writeln!(out, "Chow ring presentation r={} n={}", spec.r(), spec.n());
    let gens: Vec<String> = p.generators().iter().map(|d| format!("D{d}")).collect();
    let _ = writeln!(out, "generators ({}): {}", gens.len(), gens.join(" "));
    let _ = writeln!(out, "monomial relations: D_I D_J = 0 for incomparable I, J");
    let _ = writeln!(
        out,
        "linear relations ({} listed, {} independent):",
        p.linear_relations().len(),
        p.independent_relation_count()
    );
    for rel in p.linear_relations() {
        let mut terms = String::new();
        for (k, &(g, c)) in rel.terms.iter().enumerate() {
            let sign = match (k, c > 0) {
                (0, true) => "",
                (0, false) => "-",
                (_, true) => " + ",
                (_, false) => " - ",
            };
            let _ = write!(terms, "{sign}{}", gens[g]);
        }
        let _ = writeln!(out, "  [i={} a={} b={}] {terms} = 0", rel.factor, rel.a, rel.b);
    }
    out
}

fn betti_text(closed: &GradedDims, oracle: Option<&GradedDims>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:>14}  {:>14}  match", "k", "closed_form", "oracle");
    for (k, b) in closed.dims().iter().enumerate() {
        let o = oracle.map(|o| &o.dims()[k]);
        let _ = writeln!(
            out,
            "{:>3}  {:>14}  {:>14}  {}",
            k,
            b.to_string(),
            o.map_or("-".to_string(), ToString::to_string),
            o.map_or("-", |o| if o == b { "yes" } else { "NO" })
        );
    }
    let _ = writeln!(out, "betti {closed}");
    out
}

fn locate_command(spec: &ArrangementSpec, a: &LocateArgs, format: Format, guards: &Guards) -> CommandResult {
    guards.check_fan(spec)?;
    let fan = build_fan(spec, &BuildingSet::maximal(spec))?;
    let (point, curve) = match (&a.curve, &a.point) {
        (Some(text), _) => {
            let curve = TropicalCurve::parse(text, spec).map_err(flagged("--curve"))?;
            (embed(&curve, spec), Some(curve))
        }
        (None, Some(text)) => {
            let p = parse_point(text).map_err(flagged("--point"))?;
            if p.len() != spec.dim() {
                return Err(flagged("--point")(Error::DimensionMismatch {
                    expected: spec.dim(),
                    got: p.len(),
                }));
            }
            let curve = curve_from_point(&p, spec);
            (p, curve)
        }
        (None, None) => unreachable!("clap requires --curve or --point"),
    };
    let located = fan.locate_point(&point);
    if let (Some(c), Some(chain)) = (&curve, &located) {
        if combinatorial_type(c, spec) != *chain {
            return Err(Error::Internal(format!("combinatorial type of {c} disagrees with the fan")).into());
        }
    }
    let stdout = match format {
        Format::Json => pretty(&json!({
            "r": spec.r(),
            "n": spec.n(),
            "coordinates": rational_strings(&point),
            "in_support": located.is_some(),
            "chain": located.as_ref().map(ToString::to_string),
            "curve": curve.as_ref().map(TropicalCurve::to_text),
        })),
        Format::Text => {
            let mut out = String::new();
            let coords: Vec<String> = point.iter().map(format_rational).collect();
            let _ = writeln!(out, "coordinates: ({})", coords.join(","));
            match &located {
                Some(chain) if chain.is_empty() => {
                    let _ = writeln!(out, "chain: (empty, the zero cone)");
                }
                Some(chain) => {
                    let _ = writeln!(out, "chain: {chain}");
                }
                None => {
                    let _ = writeln!(out, "chain: none (outside the support)");
                }
            }
            if let Some(c) = &curve {
                let _ = writeln!(out, "curve: {c}");
                out.push_str(&c.pinwheel(spec));
            }
            out
        }
    };
    Ok(RunOutput::ok(stdout))
}

fn normal_command(spec: &ArrangementSpec, a: &NormalArgs, format: Format, guards: &Guards) -> CommandResult {
    let complex = complex_cells(spec, guards)?;
    let extremes = a.union_extremes.then(|| union_extremes(&complex));
    let stdout = match format {
        Format::Json => pretty(
            &serde_json::to_value(normal_complex_to_json(&complex, extremes.as_deref())).expect("normal complex JSON"),
        ),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "normal complex r={} n={}: {} cells",
                spec.r(),
                spec.n(),
                complex.cells().len()
            );
            let show = |v: &[Rational]| format!("({})", rational_strings(v).join(","));
            for cell in complex.cells() {
                let verts: Vec<String> = cell.v_rep.iter().map(|v| show(v)).collect();
                let _ = writeln!(out, "  {}  {} vertices: {}", cell.label, verts.len(), verts.join(" "));
            }
            if let Some(e) = &extremes {
                let pts: Vec<String> = e.iter().map(|v| show(v)).collect();
                let _ = writeln!(out, "union extreme points ({}): {}", pts.len(), pts.join(" "));
            }
            out
        }
    };
    Ok(RunOutput::ok(stdout))
}

fn check_command(spec: &ArrangementSpec, a: &CheckArgs, format: Format, seed: u64, guards: &Guards) -> CommandResult {
    let suites: Vec<Suite> = match a.suite {
        SuiteChoice::All => Suite::ALL.to_vec(),
        SuiteChoice::Fan => vec![Suite::Fan],
        SuiteChoice::Chow => vec![Suite::Chow],
        SuiteChoice::Tropical => vec![Suite::Tropical],
        SuiteChoice::Normal => vec![Suite::Normal],
    };
    let mut reports = Vec::new();
    for suite in suites {
        reports.push(run_suite(suite, spec, seed, guards)?);
    }
    let failed: usize = reports.iter().map(|r| r.count(Outcome::Fail)).sum();
    let stdout = match format {
        Format::Json => pretty(&json!({
            "r": spec.r(),
            "n": spec.n(),
            "seed": seed,
            "failed": failed,
            "suites": reports.iter().map(|r| json!({
                "suite": r.suite.name(),
                "passed": r.count(Outcome::Pass),
                "failed": r.count(Outcome::Fail),
                "skipped": r.count(Outcome::Skip),
                "checks": r.checks.iter().map(|c| json!({
                    "name": c.name,
                    "outcome": c.outcome.to_string(),
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                for c in &r.checks {
                    let detail = if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", c.detail)
                    };
                    let _ = writeln!(out, "[{}] {}: {}{detail}", c.outcome, r.suite, c.name);
                }
            }
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{}: {} passed, {} failed, {} skipped",
                    r.suite,
                    r.count(Outcome::Pass),
                    r.count(Outcome::Fail),
                    r.count(Outcome::Skip)
                );
            }
            out
        }
    };
    Ok(RunOutput {
        status: if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED },
        stdout,
        stderr: String::new(),
    })
}
