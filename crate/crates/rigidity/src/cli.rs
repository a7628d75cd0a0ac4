//! The `analyze` command line tool.
//!
//! Every command prints one JSON document on stdout (the SVG itself for
//! `coupler-plot` without `-o`). Warnings go to stderr. Exit codes: 0 on
//! success, 1 for invalid input, 2 when numerical certification fails.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rigidity_core::calligraph::{
    class_of, coupler_degree_numeric, coupler_multiplicity, is_calligraph, is_thin, predict,
};
use rigidity_core::components::{
    class_sizes, classify_witnesses, component_number, equal_degree_check, fiber_witnesses,
};
use rigidity_core::henneberg::henneberg_sequence;
use rigidity_core::monodromy::{monodromy_orbits, MonodromyOptions};
use rigidity_core::realization::{count_realizations, count_realizations_with};
use rigidity_core::rng::{self, tag};
use rigidity_core::sparsity::{is_tight, max_tight_decomposition};
use rigidity_core::trace::{coupler_trace, DEFAULT_SAMPLES};
use rigidity_core::{EdgeLengths, Graph};
use serde::Serialize;

use crate::report::{
    CalligraphReport, ComponentsReport, CountReport, DecomposeReport, ErrorReport, NumericDegree,
    PlotReport, Verification, VerifyReport,
};
use crate::{io, svg, Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "analyze",
    version,
    about = "Rigidity and coupler curve analysis of bar graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Sparsity, tightness, max-tight decomposition and a Henneberg sequence.
    Decompose { graph: PathBuf },
    /// Number of complex realizations of a tight graph.
    Count {
        graph: PathBuf,
        #[arg(long)]
        lengths: Option<PathBuf>,
    },
    /// Number of irreducible components of the realization set.
    Components {
        graph: PathBuf,
        #[arg(long)]
        lengths: Option<PathBuf>,
        /// Cross-check with classified witness points.
        #[arg(long)]
        verify: bool,
    },
    /// Class, thinness and coupler curve predictions of a calligraph.
    Calligraph {
        graph: PathBuf,
        /// Also count the coupler degree numerically.
        #[arg(long)]
        verify: bool,
    },
    /// Draw the real coupler curve as SVG.
    CouplerPlot {
        graph: PathBuf,
        #[arg(long)]
        lengths: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Component number, witness classes and monodromy orbits side by side.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        lengths: Option<PathBuf>,
    },
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            seed: cli.seed,
        }
    }
}

/// Result of one invocation, ready to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub exit_code: u8,
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn json(value: &impl Serialize, exit_code: u8) -> Self {
        Output {
            exit_code,
            stdout: serde_json::to_string(value).expect("reports serialize") + "\n",
            warnings: Vec::new(),
        }
    }

    pub fn error(e: &Error) -> Self {
        Output::json(&ErrorReport::from(e), e.exit_code())
    }
}

/// Parses arguments; `Err` holds the output for help, version and usage
/// errors.
pub fn parse<I, T>(args: I) -> std::result::Result<RunConfig, Output>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(cli.into()),
        Err(e) if !e.use_stderr() => Err(Output {
            exit_code: 0,
            stdout: e.to_string(),
            warnings: Vec::new(),
        }),
        Err(e) => {
            let rendered = e.render().to_string();
            let message = rendered
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let message = message.trim_start_matches("error: ").to_string();
            Err(Output::error(&Error::Usage(message)))
        }
    }
}

/// Caps the global thread pool at `RIGIDITY_THREADS` when set.
pub fn configure_threads(value: Option<&str>) -> Result<()> {
    let Some(value) = value else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Error::Usage(format!(
                "RIGIDITY_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Usage(e.to_string()))
}

pub fn run(config: &RunConfig) -> Output {
    match dispatch(config) {
        Ok(out) => out,
        Err(e) => Output::error(&e),
    }
}

fn lengths_for(g: &Graph, path: Option<&PathBuf>, seed: u64) -> Result<EdgeLengths> {
    match path {
        Some(p) => io::read_lengths(p, g),
        None => Ok(EdgeLengths::sample(g, &mut rng::stream(seed, tag::LENGTHS))),
    }
}

fn dispatch(config: &RunConfig) -> Result<Output> {
    let seed = config.seed;
    match &config.command {
        Command::Decompose { graph } => decompose(&io::read_graph(graph)?),
        Command::Count { graph, lengths } => {
            let g = io::read_graph(graph)?;
            let count = match lengths {
                Some(p) => count_realizations_with(&g, &io::read_lengths(p, &g)?, seed)?,
                None => count_realizations(&g, seed)?,
            };
            Ok(Output::json(
                &CountReport {
                    command: "count",
                    c: count.count,
                    paths: count.paths,
                    certified: count.certified,
                    seed,
                },
                0,
            ))
        }
        Command::Components {
            graph,
            lengths,
            verify,
        } => {
            let g = io::read_graph(graph)?;
            let report = component_number(&g, seed)?;
            let verification = if *verify && report.sparse {
                let l = lengths_for(&g, lengths.as_ref(), seed)?;
                let ws = fiber_witnesses(&g, &l, seed)?;
                let sizes = class_sizes(&classify_witnesses(&g, &l, &ws.points.solutions)?);
                let equal_degree = equal_degree_check(&g, &l, seed)?.equal;
                Some(Verification {
                    witness_points: ws.points.count,
                    agrees: sizes.len() as u64 == report.component_number && equal_degree,
                    class_sizes: sizes,
                    equal_degree,
                })
            } else {
                None
            };
            let failed = verification.as_ref().is_some_and(|v| !v.agrees);
            Ok(Output::json(
                &ComponentsReport::new(&report, verification),
                if failed { 2 } else { 0 },
            ))
        }
        Command::Calligraph { graph, verify } => calligraph(&io::read_graph(graph)?, *verify, seed),
        Command::CouplerPlot {
            graph,
            lengths,
            output,
            samples,
        } => {
            let g = io::read_graph(graph)?;
            let l = lengths_for(&g, lengths.as_ref(), seed)?;
            let trace = coupler_trace(&g, &l, *samples, seed)?;
            let document = svg::render(&trace);
            let mut out = match output {
                Some(path) => {
                    fs::write(path, &document).map_err(|source| Error::Write {
                        path: path.clone(),
                        source,
                    })?;
                    let shown = path.display().to_string();
                    Output::json(&PlotReport::new(&trace, Some(shown)), 0)
                }
                None => Output {
                    exit_code: 0,
                    stdout: document,
                    warnings: Vec::new(),
                },
            };
            if trace.is_empty() {
                out.warnings
                    .push("no real coupler points for these lengths; the plot is empty".into());
            }
            Ok(out)
        }
        Command::Verify { graph, lengths } => {
            let g = io::read_graph(graph)?;
            let l = lengths_for(&g, lengths.as_ref(), seed)?;
            verify_components(&g, &l, seed)
        }
    }
}

fn decompose(g: &Graph) -> Result<Output> {
    let decomposition = match max_tight_decomposition(g) {
        Ok(d) => Some(d),
        Err(rigidity_core::Error::NotSparse) => None,
        Err(e) => return Err(e.into()),
    };
    let tight = is_tight(g);
    let sequence = if tight { henneberg_sequence(g) } else { None };
    Ok(Output::json(
        &DecomposeReport::new(tight, decomposition.as_ref(), sequence.as_ref()),
        0,
    ))
}

fn calligraph(g: &Graph, verify: bool, seed: u64) -> Result<Output> {
    if !is_calligraph(g)? {
        return Ok(Output::json(&CalligraphReport::not_calligraph(), 0));
    }
    let thin = is_thin(g)?;
    let class = class_of(g, seed)?;
    let prediction = if thin {
        let k = component_number(g, seed)?.component_number;
        Some(predict(class, k))
    } else {
        None
    };
    let multiplicity = coupler_multiplicity(g, seed)?;
    let mut report = CalligraphReport::new(thin, class, prediction.as_ref(), multiplicity);
    let mut exit_code = 0;
    if verify {
        let d = coupler_degree_numeric(g, seed)?;
        let agrees = thin.then(|| d.degree as i64 == 2 * class.a && d.multiplicity == 1);
        if agrees == Some(false) {
            exit_code = 2;
        }
        report.numeric_degree = Some(NumericDegree {
            degree: d.degree,
            line_counts: d.line_counts,
            agrees,
        });
    }
    Ok(Output::json(&report, exit_code))
}

fn verify_components(g: &Graph, l: &EdgeLengths, seed: u64) -> Result<Output> {
    let report = component_number(g, seed)?;
    if !report.sparse {
        return Err(rigidity_core::Error::NotSparse.into());
    }
    let ws = fiber_witnesses(g, l, seed)?;
    let labels = classify_witnesses(g, l, &ws.points.solutions)?;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); class_sizes(&labels).len()];
    for (i, label) in labels.iter().enumerate() {
        classes[label.class_id].push(i);
    }
    classes.sort();
    let orbits = monodromy_orbits(&ws, seed, &MonodromyOptions::default())?;
    let equal_degree = equal_degree_check(g, l, seed)?.equal;
    let agrees =
        classes.len() as u64 == report.component_number && orbits.orbits == classes && equal_degree;
    let out = VerifyReport {
        command: "verify",
        component_number: report.component_number,
        witness_points: ws.points.count,
        witness_classes: classes.iter().map(Vec::len).collect(),
        monodromy_orbits: orbits.orbits.iter().map(Vec::len).collect(),
        monodromy_loops: orbits.loops,
        equal_degree,
        agrees,
    };
    Ok(Output::json(&out, if agrees { 0 } else { 2 }))
}
