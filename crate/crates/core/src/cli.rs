//! The `ccd` command-line tool.
//!
//! Exit codes: 0 success (or a positive answer), 1 negative answer to a
//! yes/no command, 2 usage or input-file errors, 3 data-quality failures and
//! conflicts under `--strict`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::ccd::{run_ccd, CcdState};
use crate::digraph::DirectedGraph;
use crate::dsep::{brute_force_d_connected_with, d_connected, ColliderRule, SeparationQuery};
use crate::equiv::{enumerate_equiv_class_up_to, markov_equivalent, DEFAULT_CLASS_VERTICES};
use crate::oracle::{DataMatrix, FisherZOracle, GraphOracle, OracleError, DEFAULT_ALPHA};
use crate::pag::{verify_pag_with, Pag, VerifyOptions};
use crate::sem::LinearSem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ccd", version, about = "Causal discovery for directed graphs with feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recover a PAG from a graph (exact oracle) or from CSV data.
    Discover(DiscoverArgs),
    /// Decide d-separation in a graph.
    Dsep(DsepArgs),
    /// Draw samples from a linear model.
    Simulate(SimulateArgs),
    /// Compare two graphs, or list a graph's equivalence class.
    Equiv(EquivArgs),
    /// Check a PAG's claims against a graph.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct DiscoverArgs {
    #[arg(long, conflicts_with = "data", required_unless_present = "data")]
    graph: Option<PathBuf>,
    #[arg(long)]
    data: Option<PathBuf>,
    /// Significance level for Fisher-z tests (data mode only).
    #[arg(long)]
    alpha: Option<f64>,
    /// Append sepsets, supsets, query counts and the phase trace as comments.
    #[arg(long)]
    dump_state: bool,
    /// Also write the PAG in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Exit with status 3 when orientation conflicts occur.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct DsepArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated vertex set.
    x: String,
    /// Comma-separated vertex set.
    y: String,
    /// Comma-separated conditioning set.
    #[arg(long, default_value = "")]
    given: String,
    /// Require a conditioned descendant of the vertex after the collider
    /// rather than of the collider itself.
    #[arg(long)]
    literal_clause_ii: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EquivArgs {
    #[arg(long = "graph", required = true)]
    graphs: Vec<PathBuf>,
    /// Print every graph equivalent to the single `--graph`.
    #[arg(long)]
    class: bool,
    /// Vertex limit for `--class`.
    #[arg(long, default_value_t = DEFAULT_CLASS_VERTICES)]
    max_vertices: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    pag: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    /// Skip the exhaustive skeleton check.
    #[arg(long)]
    skip_adjacency: bool,
}

/// Failure carrying its exit code.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure(EXIT_USAGE, msg.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Discover(a) => discover(a, out, err),
        Command::Dsep(a) => dsep(a, out),
        Command::Simulate(a) => simulate(a, out, err),
        Command::Equiv(a) => equiv(a, out),
        Command::Verify(a) => verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<DirectedGraph, Failure> {
    DirectedGraph::parse(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn io_failure(e: io::Error) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::InsufficientRows { .. } | OracleError::Singular | OracleError::Data(_) => {
            Failure(EXIT_DATA, e.to_string())
        }
        _ => Failure::usage(e),
    }
}

/// Text printed by `discover`: the PAG, then (optionally) the state dump
/// as comment lines so the output still parses as a PAG.
pub fn render_report(state: &CcdState, dump_state: bool) -> String {
    let mut text = state.pag().serialize();
    if dump_state {
        for line in state.describe().lines() {
            text.push_str("# ");
            text.push_str(line);
            text.push('\n');
        }
    }
    text
}

fn discover(a: DiscoverArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if a.graph.is_some() && a.alpha.is_some() {
        return Err(Failure::usage("--alpha applies only with --data"));
    }
    let start = Instant::now();
    let state = if let Some(path) = &a.graph {
        run_ccd(&GraphOracle::new(load_graph(path)?)).map_err(oracle_failure)?
    } else {
        let path = a.data.as_ref().expect("clap requires one of --graph/--data");
        let file = fs::File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let data = DataMatrix::from_csv(file).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let oracle = FisherZOracle::new(data, a.alpha.unwrap_or(DEFAULT_ALPHA)).map_err(Failure::usage)?;
        let state = run_ccd(&oracle).map_err(oracle_failure)?;
        if oracle.singular_count() > 0 {
            let _ = writeln!(err, "warning: {} tests hit a singular covariance block", oracle.singular_count());
        }
        state
    };
    out.write_all(render_report(&state, a.dump_state).as_bytes()).map_err(io_failure)?;
    if let Some(dot) = &a.dot {
        fs::write(dot, state.pag().to_dot()).map_err(|e| Failure::usage(format!("{}: {e}", dot.display())))?;
    }
    for c in state.conflicts() {
        let _ = writeln!(err, "conflict in phase {}: {}", c.phase, c.detail);
    }
    let _ = writeln!(err, "elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    Ok(if a.strict && !state.conflicts().is_empty() { EXIT_DATA } else { EXIT_OK })
}

fn split_set(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn dsep(a: DsepArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let q = SeparationQuery::new(&g, &split_set(&a.x), &split_set(&a.y), &split_set(&a.given))
        .map_err(Failure::usage)?;
    let connected = if a.literal_clause_ii {
        brute_force_d_connected_with(&g, &q, ColliderRule::DescendantOfSuccessor)
    } else {
        d_connected(&g, &q)
    };
    writeln!(out, "{}", if connected { "d-connected" } else { "d-separated" }).map_err(io_failure)?;
    Ok(if connected { EXIT_OK } else { EXIT_NO })
}

fn simulate(a: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let sem = LinearSem::parse(&read(&a.model)?).map_err(|e| Failure::usage(format!("{}: {e}", a.model.display())))?;
    if !sem.is_stable() {
        let _ = writeln!(err, "warning: spectral radius {:.4} >= 1; feedback does not settle", sem.spectral_radius());
    }
    let data = sem.simulate(a.samples, a.seed).map_err(Failure::usage)?;
    let file = fs::File::create(&a.out).map_err(|e| Failure::usage(format!("{}: {e}", a.out.display())))?;
    data.write_csv(io::BufWriter::new(file)).map_err(Failure::usage)?;
    writeln!(out, "wrote {} rows to {}", data.rows(), a.out.display()).map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn equiv(a: EquivArgs, out: &mut dyn Write) -> Outcome {
    if a.class {
        let [path] = a.graphs.as_slice() else {
            return Err(Failure::usage("--class takes exactly one --graph"));
        };
        let g = load_graph(path)?;
        let members = enumerate_equiv_class_up_to(&g, a.max_vertices).map_err(Failure::usage)?;
        let blocks: Vec<String> = members.iter().map(DirectedGraph::serialize).collect();
        out.write_all(blocks.join("\n").as_bytes()).map_err(io_failure)?;
        return Ok(EXIT_OK);
    }
    let [p1, p2] = a.graphs.as_slice() else {
        return Err(Failure::usage("expected two --graph arguments (or --class with one)"));
    };
    let same = markov_equivalent(&load_graph(p1)?, &load_graph(p2)?).map_err(Failure::usage)?;
    writeln!(out, "{}", if same { "equivalent" } else { "not equivalent" }).map_err(io_failure)?;
    Ok(if same { EXIT_OK } else { EXIT_NO })
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let pag = Pag::parse(&read(&a.pag)?).map_err(|e| Failure::usage(format!("{}: {e}", a.pag.display())))?;
    let g = load_graph(&a.graph)?;
    if g.len() > 12 && !a.skip_adjacency {
        return Err(Failure::usage("skeleton check is exhaustive; use --skip-adjacency above 12 vertices"));
    }
    let opts = VerifyOptions { check_adjacency: !a.skip_adjacency };
    let violations = verify_pag_with(&pag, &g, opts).map_err(Failure::usage)?;
    for v in &violations {
        writeln!(out, "{v}").map_err(io_failure)?;
    }
    if violations.is_empty() {
        writeln!(out, "ok").map_err(io_failure)?;
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_NO)
    }
}
