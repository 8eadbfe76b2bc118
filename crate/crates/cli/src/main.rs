//! `killing`: check, construct and classify Killing fields of diagonal
//! plane metrics from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod examples;
mod render;

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use killing_core::families::{construct_family, FamilyCase, FamilyParams};
use killing_core::geometry::{
    classify_dependence, convert_basis, Basis, DependenceLabel, DependenceProfile, Region, VALIDATION_GRID,
};
use killing_core::io::{self, ErrorDoc, FamilyRequest, FamilyResponse, FieldDoc, MetricDoc, ProblemDoc};
use killing_core::verify::{
    flow_isometry_check, flow_refinement, grid_residual_check, FlowReport, GridReport, Refinement,
};
use killing_core::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "killing", version)]
#[command(about = "Killing vector fields of g = dx1^2/f1^2 + dx2^2/f2^2")]
struct Cli {
    /// Output format; defaults to table on a terminal and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the Killing residual over a lattice.
    Check(CheckArgs),
    /// Integrate the flow and compare the transported metric.
    Flow(FlowArgs),
    /// Report which coordinates f1 and f2 depend on.
    Classify(ClassifyArgs),
    /// Construct a member of a closed-form family and check it.
    Family(FamilyArgs),
    /// Run the bundled example metric/field pairs.
    Examples(ExamplesArgs),
}

#[derive(Debug, Args)]
struct Sweep {
    /// Rectangle `xmin,xmax,ymin,ymax`; overrides the document's region.
    #[arg(long, allow_hyphen_values = true)]
    region: Option<String>,
    /// Lattice points per axis; overrides the document's grid.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// JSON document with `f1`, `f2`.
    #[arg(long)]
    metric: PathBuf,
    /// JSON document with `basis`, `v1`, `v2`; defaults to the metric file.
    #[arg(long)]
    field: Option<PathBuf>,
    #[command(flatten)]
    sweep: Sweep,
}

#[derive(Debug, Args)]
struct FlowArgs {
    #[arg(long)]
    metric: PathBuf,
    #[arg(long)]
    field: Option<PathBuf>,
    /// Start point `x1,x2`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    point: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    metric: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    region: Option<String>,
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Family request document; replaces `--case`, `--k`, `--c`, `--anchor`
    /// and `--metric`.
    #[arg(long, conflicts_with_all = ["case", "metric"])]
    request: Option<PathBuf>,
    #[arg(long, required_unless_present = "request")]
    case: Option<FamilyCase>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    k: f64,
    /// Comma-separated constants, in the order the case lists them.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    c: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    anchor: f64,
    #[arg(long, required_unless_present = "request")]
    metric: Option<PathBuf>,
    #[command(flatten)]
    sweep: Sweep,
}

#[derive(Debug, Args)]
struct ExamplesArgs {
    #[arg(long, default_value_t = 21)]
    grid: usize,
    /// Grid residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Flow deviation tolerance.
    #[arg(long, default_value_t = 1e-6)]
    flow_tol: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
}

fn read_doc(path: &Path) -> Result<ProblemDoc> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    ProblemDoc::from_json(&text)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("{what}: `{s}` is not a number")))
        })
        .collect()
}

fn parse_fixed<const N: usize>(text: &str, what: &str) -> Result<[f64; N]> {
    let v = parse_list(text, what)?;
    v.try_into()
        .map_err(|v: Vec<f64>| Error::Input(format!("{what} needs {N} comma-separated numbers, got {}", v.len())))
}

fn pick_region(flag: Option<&str>, doc: &ProblemDoc) -> Result<Region> {
    let region = match flag {
        Some(s) => Region::from(parse_fixed::<4>(s, "--region")?),
        None => doc.region.unwrap_or_default(),
    };
    region.validate()?;
    Ok(region)
}

#[derive(Serialize)]
struct CheckOutput {
    metric: MetricDoc,
    field: FieldDoc,
    report: GridReport,
}

#[derive(Serialize)]
struct FlowOutput {
    metric: MetricDoc,
    field: FieldDoc,
    report: FlowReport,
    refinement: Refinement,
}

#[derive(Serialize)]
struct ClassifyOutput {
    metric: MetricDoc,
    region: Region,
    grid: usize,
    label: DependenceLabel,
    profile: DependenceProfile,
}

#[derive(Serialize)]
struct FamilyOutput {
    #[serde(flatten)]
    family: FamilyResponse,
    check: GridReport,
}

/// What a command produced and whether it counts as a pass.
struct Outcome {
    json: String,
    table: String,
    pass: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, table: String, pass: bool) -> Self {
        Outcome { json: io::to_json(value), table, pass }
    }
}

fn field_doc_for(metric: &ProblemDoc, field: Option<&PathBuf>) -> Result<ProblemDoc> {
    match field {
        Some(p) => read_doc(p),
        None if metric.has_field() => Ok(metric.clone()),
        None => Err(Error::Input("no field given: pass --field or add basis/v1/v2 to the metric file".into())),
    }
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let mdoc = read_doc(&a.metric)?;
    let fdoc = field_doc_for(&mdoc, a.field.as_ref())?;
    let m = mdoc.metric()?;
    let v = fdoc.field()?;
    let region = pick_region(a.sweep.region.as_deref(), &mdoc)?;
    let n = a.sweep.grid.or(mdoc.grid).unwrap_or(21);
    let report = grid_residual_check(&m, &v, &region, n, a.sweep.tol)?;
    let out = CheckOutput { metric: (&m).into(), field: (&v).into(), report };
    let pass = out.report.pass;
    Ok(Outcome::new(&out, render::check(&out.metric, &out.field, &out.report), pass))
}

fn flow(a: &FlowArgs) -> Result<Outcome> {
    let mdoc = read_doc(&a.metric)?;
    let fdoc = field_doc_for(&mdoc, a.field.as_ref())?;
    let m = mdoc.metric()?;
    let v = fdoc.field()?;
    let p = parse_fixed::<2>(&a.point, "--point")?;
    let report = flow_isometry_check(&m, &v, p, a.t, a.steps, a.tol)?;
    let refinement = flow_refinement(&m, &v, p, a.t, a.steps)?;
    if !refinement.converging {
        eprintln!(
            "warning: deviation shrank only by {:.3} from {} to {} steps",
            refinement.ratio, refinement.coarse_steps, refinement.fine_steps
        );
    }
    let out = FlowOutput { metric: (&m).into(), field: (&v).into(), report, refinement };
    let pass = out.report.pass;
    Ok(Outcome::new(&out, render::flow(&out.metric, &out.field, &out.report, &out.refinement), pass))
}

fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let mdoc = read_doc(&a.metric)?;
    let m = mdoc.metric()?;
    let region = pick_region(a.region.as_deref(), &mdoc)?;
    let n = a.grid.or(mdoc.grid).unwrap_or(VALIDATION_GRID);
    if n < 2 {
        return Err(Error::Input(format!("grid needs at least 2 points per axis, got {n}")));
    }
    let samples = region.lattice(n);
    let profile = DependenceProfile::sample(&m, &samples)?;
    let label = classify_dependence(&m, &samples)?;
    let out = ClassifyOutput { metric: (&m).into(), region, grid: n, label, profile };
    Ok(Outcome::new(&out, render::classify(&out.metric, label, &profile), true))
}

fn family(a: &FamilyArgs) -> Result<Outcome> {
    let (case, params, mdoc) = match &a.request {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let r: FamilyRequest = io::from_json(&text)?;
            (r.case, r.params, r.metric)
        }
        None => {
            let case = a.case.expect("clap enforces --case");
            let mdoc = read_doc(a.metric.as_ref().expect("clap enforces --metric"))?;
            let params = FamilyParams { k: a.k, c: parse_list(&a.c, "--c")?, anchor: a.anchor };
            (case, params, mdoc)
        }
    };
    let m = mdoc.metric()?;
    let region = pick_region(a.sweep.region.as_deref(), &mdoc)?;
    let n = a.sweep.grid.or(mdoc.grid).unwrap_or(21);
    let fam = construct_family(case, &params, &m, &region)?;
    let other = match fam.field.basis {
        Basis::Frame => Basis::Coordinate,
        Basis::Coordinate => Basis::Frame,
    };
    let check = grid_residual_check(&m, &fam.field, &region, n, a.sweep.tol)?;
    let out = FamilyOutput {
        family: FamilyResponse {
            case,
            params,
            metric: (&m).into(),
            region,
            field: (&fam.field).into(),
            converted: (&convert_basis(&fam.field, &m, other)).into(),
            provenance: fam.provenance,
            k: fam.k,
            lambda: fam.lambda,
        },
        check,
    };
    let pass = out.check.pass;
    Ok(Outcome::new(&out, render::family(&out.family, &out.check), pass))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Flow(a) => flow(a),
        Command::Classify(a) => classify(a),
        Command::Family(a) => family(a),
        Command::Examples(a) => {
            let s = examples::run(a.grid, a.tol, a.t, a.steps, a.flow_tol)?;
            let pass = s.pass;
            Ok(Outcome::new(&s, render::examples(&s), pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() {
        Format::Table
    } else {
        Format::Json
    });
    match run(&cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", out.json),
                Format::Table => print!("{}", out.table),
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            println!("{}", io::to_json(&serde_json::json!({ "error": ErrorDoc::from(&e) })));
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
