use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixlay_cli::classify::{classify, ClassifyOptions, Query};
use mixlay_cli::input::{load_graph, load_graphs, load_layout, read_input, write_output, HarnessError};
use mixlay_cli::render::arc_diagram_svg;
use mixlay_core::concentric::concentric_layout;
use mixlay_core::formats::{to_graph6, to_json_graph};
use mixlay_core::generators::{counterexample_gc, gadget_h, goldner_harary, random_triangulation, subdivide_all_edges};
use mixlay_core::sat::{
    encode, export_dimacs, format_solver_output, parse_dimacs, solve_cnf_with, Branching, EncodeOptions, SolveResult,
    SolverAnswer, SolverConfig,
};
use mixlay_core::{planar_embed, solve_layout, verify_mixed, Backend, Graph, LayoutOutcome, SolveOptions};
use serde_json::json;

const FEASIBLE: u8 = 0;
const INFEASIBLE: u8 = 1;
const USAGE: u8 = 2;
const TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "mixlay", version, about = "Mixed stack/queue linear layouts of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph has an s-stack q-queue layout
    Solve(SolveArgs),
    /// Check a layout JSON against a graph
    Verify {
        graph: PathBuf,
        layout: PathBuf,
    },
    /// Check that a graph is planar
    VerifyPlanar {
        input: Option<PathBuf>,
    },
    /// Write a generated graph
    Gen {
        #[command(subcommand)]
        which: GenCommand,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6, global = true)]
        format: GraphFormat,
    },
    /// Layer a planar graph and lay out its subdivision on one stack and one queue
    Concentric(ConcentricArgs),
    /// Run layout queries over a corpus and summarise per vertex count
    Classify(ClassifyArgs),
    /// Draw a layout as an SVG arc diagram
    Render {
        graph: PathBuf,
        layout: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the layout instance in DIMACS CNF
    ExportCnf {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        stacks: usize,
        #[arg(long, default_value_t = 1)]
        queues: usize,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve a DIMACS CNF with the embedded solver
    Sat {
        input: Option<PathBuf>,
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, value_enum, default_value_t = BranchingArg::Activity)]
        branching: BranchingArg,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// One gadget with its shared vertices
    Gadget {
        #[arg(long, default_value_t = 7)]
        connectors: usize,
    },
    /// Copies of the gadget glued at their shared vertices
    Gc {
        #[arg(long, default_value_t = 19)]
        copies: usize,
        #[arg(long, default_value_t = 7)]
        connectors: usize,
    },
    GoldnerHarary,
    /// A random maximal planar graph
    Triangulation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Subdivide every edge of the input once
    Subdivide {
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Embedded,
    External,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchingArg {
    Activity,
    Lowest,
}

impl From<BranchingArg> for Branching {
    fn from(b: BranchingArg) -> Self {
        match b {
            BranchingArg::Activity => Branching::Activity,
            BranchingArg::Lowest => Branching::LowestIndex,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file (graph6, planar_code or JSON); standard input if omitted
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    stacks: usize,
    #[arg(long, default_value_t = 1)]
    queues: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Embedded)]
    backend: BackendArg,
    /// Solver program for the external backend
    #[arg(long, required_if_eq("backend", "external"))]
    solver_cmd: Option<PathBuf>,
    /// Solver argument; `{cnf}` and `{out}` are substituted
    #[arg(long = "solver-arg", allow_hyphen_values = true)]
    solver_args: Vec<String>,
    /// Budget in seconds
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, value_enum, default_value_t = BranchingArg::Activity)]
    branching: BranchingArg,
    #[arg(long)]
    no_symmetry: bool,
    /// Where to write the layout JSON when one exists
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct ConcentricArgs {
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    origin: usize,
    /// Representation and division map as JSON
    #[arg(long)]
    representation_out: Option<PathBuf>,
    /// The subdivided graph as a JSON edge list
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(long)]
    layout_out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    input: Option<PathBuf>,
    /// Comma-separated `stacks:queues` queries
    #[arg(long, default_value = "1:1,2:0,3:0,0:2,0:3")]
    tasks: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Budget in seconds per graph
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long)]
    report_out: Option<PathBuf>,
    /// Print the per-n table instead of the JSON report
    #[arg(long)]
    table: bool,
    #[arg(long)]
    witness_dir: Option<PathBuf>,
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>, HarnessError> {
    s.map(|s| Duration::try_from_secs_f64(s).map_err(|_| HarnessError::Query(format!("timeout {s}"))))
        .transpose()
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(p) => write_output(p, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| HarnessError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn graph_text(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g) + "\n",
        GraphFormat::Json => to_json_graph(g) + "\n",
    }
}

fn solve(args: SolveArgs) -> Result<u8, HarnessError> {
    let g = load_graph(args.input.as_deref())?;
    let backend = match args.backend {
        BackendArg::Embedded => Backend::Embedded,
        BackendArg::External => Backend::ExternalDimacs {
            program: args.solver_cmd.expect("clap enforces --solver-cmd"),
            args: args.solver_args,
        },
    };
    let opts = SolveOptions {
        backend,
        encode: if args.no_symmetry {
            EncodeOptions::without_symmetry_breaking()
        } else {
            EncodeOptions::default()
        },
        branching: args.branching.into(),
        timeout: seconds(args.timeout)?,
        conflict_limit: None,
    };
    let outcome = match solve_layout(&g, args.stacks, args.queues, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("mixlay: {e}");
            return Ok(USAGE);
        }
    };
    let (status, code) = match &outcome {
        LayoutOutcome::Feasible(_) => ("feasible", FEASIBLE),
        LayoutOutcome::Infeasible => ("infeasible", INFEASIBLE),
        LayoutOutcome::Unknown => ("unknown", TIMEOUT),
    };
    let mut report = json!({ "status": status, "stacks": args.stacks, "queues": args.queues });
    if let Some(layout) = outcome.layout() {
        report["layout"] = serde_json::to_value(layout.to_json()).expect("layouts serialize");
        if let Some(p) = &args.witness_out {
            write_output(p, layout.to_json_string().as_bytes())?;
        }
    }
    emit(None, &format!("{report}\n"))?;
    Ok(code)
}

fn verify(graph: &Path, layout: &Path) -> Result<u8, HarnessError> {
    let g = load_graph(Some(graph))?;
    let layout = load_layout(layout)?;
    match verify_mixed(&g, &layout) {
        Ok(report) => {
            emit(None, &format!("{}\n", serde_json::to_string(&report).expect("reports serialize")))?;
            Ok(if report.is_valid() { FEASIBLE } else { INFEASIBLE })
        }
        Err(e) => {
            emit(None, &format!("{}\n", json!({ "valid": false, "error": e.to_string() })))?;
            Ok(INFEASIBLE)
        }
    }
}

fn verify_planar(input: Option<&Path>) -> Result<u8, HarnessError> {
    let graphs = load_graphs(input)?;
    let mut code = FEASIBLE;
    for g in &graphs {
        let line = match planar_embed(g) {
            Ok(rot) => json!({ "planar": true, "n": g.vertex_count(), "m": g.edge_count(), "faces": rot.face_count() }),
            Err(_) => {
                code = INFEASIBLE;
                json!({ "planar": false, "n": g.vertex_count(), "m": g.edge_count() })
            }
        };
        emit(None, &format!("{line}\n"))?;
    }
    Ok(code)
}

fn generate(which: GenCommand, format: GraphFormat) -> Result<u8, HarnessError> {
    let g = match which {
        GenCommand::Gadget { connectors } if connectors >= 1 => gadget_h(connectors),
        GenCommand::Gc { copies, connectors } if copies >= 1 && connectors >= 1 => counterexample_gc(copies, connectors),
        GenCommand::GoldnerHarary => goldner_harary(),
        GenCommand::Triangulation { n, seed } if n >= 3 => random_triangulation(n, seed),
        GenCommand::Subdivide { input } => {
            let mut out = String::new();
            for g in load_graphs(input.as_deref())? {
                out += &graph_text(&subdivide_all_edges(&g), format);
            }
            emit(None, &out)?;
            return Ok(FEASIBLE);
        }
        _ => {
            eprintln!("mixlay: parameters out of range (copies, connectors >= 1; n >= 3)");
            return Ok(USAGE);
        }
    };
    emit(None, &graph_text(&g, format))?;
    Ok(FEASIBLE)
}

fn concentric(args: ConcentricArgs) -> Result<u8, HarnessError> {
    let g = load_graph(args.input.as_deref())?;
    let result = match concentric_layout(&g, args.origin) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("mixlay: {e}");
            return Ok(INFEASIBLE);
        }
    };
    let dump = serde_json::to_value(result.dump()).expect("representations serialize");
    let graph: serde_json::Value = serde_json::from_str(&to_json_graph(&result.subdivided.graph)).expect("valid JSON");
    let layout = serde_json::to_value(result.layout.to_json()).expect("layouts serialize");
    if let Some(p) = &args.representation_out {
        write_output(p, dump.to_string().as_bytes())?;
    }
    if let Some(p) = &args.graph_out {
        write_output(p, graph.to_string().as_bytes())?;
    }
    if let Some(p) = &args.layout_out {
        write_output(p, layout.to_string().as_bytes())?;
    }
    let all = json!({ "representation": dump, "graph": graph, "layout": layout });
    emit(None, &format!("{all}\n"))?;
    Ok(FEASIBLE)
}

fn run_classify(args: ClassifyArgs) -> Result<u8, HarnessError> {
    let corpus = load_graphs(args.input.as_deref())?;
    let opts = ClassifyOptions {
        queries: Query::parse_list(&args.tasks)?,
        jobs: args.jobs,
        timeout: seconds(args.timeout)?,
        witness_dir: args.witness_dir,
        ..ClassifyOptions::default()
    };
    let report = classify(&corpus, &opts)?;
    let json = report.to_json_pretty() + "\n";
    if let Some(p) = &args.report_out {
        write_output(p, json.as_bytes())?;
    }
    if args.table {
        emit(None, &report.table())?;
    } else if args.report_out.is_none() {
        emit(None, &json)?;
    }
    let unknown = report.rows.iter().any(|r| r.unknown > 0);
    Ok(if unknown { TIMEOUT } else { FEASIBLE })
}

fn render(graph: &Path, layout: &Path, output: Option<&Path>) -> Result<u8, HarnessError> {
    let g = load_graph(Some(graph))?;
    let layout = load_layout(layout)?;
    if !verify_mixed(&g, &layout)?.is_valid() {
        eprintln!("mixlay: layout does not verify");
        return Ok(INFEASIBLE);
    }
    emit(output, &arc_diagram_svg(&g, &layout))?;
    Ok(FEASIBLE)
}

fn export_cnf(input: Option<&Path>, stacks: usize, queues: usize, no_symmetry: bool, output: Option<&Path>) -> Result<u8, HarnessError> {
    if stacks + queues == 0 {
        eprintln!("mixlay: need at least one page");
        return Ok(USAGE);
    }
    let g = load_graph(input)?;
    let opts = if no_symmetry {
        EncodeOptions::without_symmetry_breaking()
    } else {
        EncodeOptions::default()
    };
    let cnf = encode(&g, stacks, queues, opts);
    let mut buf = Vec::new();
    export_dimacs(&cnf, &mut buf).expect("writing to memory");
    match output {
        Some(p) => write_output(p, &buf)?,
        None => emit(None, &String::from_utf8(buf).expect("DIMACS is ASCII"))?,
    }
    Ok(FEASIBLE)
}

fn sat(input: Option<&Path>, timeout: Option<f64>, branching: BranchingArg) -> Result<u8, HarnessError> {
    let text = String::from_utf8_lossy(&read_input(input)?).into_owned();
    let cnf = match parse_dimacs(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("mixlay: {e}");
            return Ok(USAGE);
        }
    };
    let config = SolverConfig {
        branching: branching.into(),
        deadline: seconds(timeout)?.map(|t| std::time::Instant::now() + t),
        ..SolverConfig::default()
    };
    let (answer, code) = match solve_cnf_with(&cnf, config) {
        SolveResult::Sat(model) => (SolverAnswer::Sat(model.literals()), FEASIBLE),
        SolveResult::Unsat => (SolverAnswer::Unsat, INFEASIBLE),
        SolveResult::Unknown => (SolverAnswer::Unknown, TIMEOUT),
    };
    emit(None, &format_solver_output(&answer))?;
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify { graph, layout } => verify(&graph, &layout),
        Command::VerifyPlanar { input } => verify_planar(input.as_deref()),
        Command::Gen { which, format } => generate(which, format),
        Command::Concentric(args) => concentric(args),
        Command::Classify(args) => run_classify(args),
        Command::Render { graph, layout, output } => render(&graph, &layout, output.as_deref()),
        Command::ExportCnf { input, stacks, queues, no_symmetry, output } => {
            export_cnf(input.as_deref(), stacks, queues, no_symmetry, output.as_deref())
        }
        Command::Sat { input, timeout, branching } => sat(input.as_deref(), timeout, branching),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mixlay: {e}");
            ExitCode::from(USAGE)
        }
    }
}
