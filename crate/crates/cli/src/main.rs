use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use rubik_np::certificates::{
    synthesize_cube_solution, synthesize_square_solution, verify_tokens, PathCertificate,
};
use rubik_np::coloring::{predict_cb, predict_ct, render_coloring, render_config, FaceSelection, RenderFormat};
use rubik_np::corpus::load_manifest;
use rubik_np::hampath::{
    cycle_to_path, find_ham_path_with, grid_to_cubical, validate_promise, CubicalInstance, GridGraph,
    PromiseGridInstance,
};
use rubik_np::puzzle::{make_solved, Metric, PuzzleConfig, PuzzleKind, StickerPermutation};
use rubik_np::reduction::{reduce, ReducedInstance, Target};
use rubik_np::selftest::{run_selftest, run_selftest_with, SelftestOptions};
use rubik_np::solver::{solve_with_stats, SearchBudget, SearchStart, Strategy};
use rubik_np::Error;

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SCHEMA: u8 = 3;
const EXIT_CAPACITY: u8 = 4;

/// Reduce Hamiltonian path instances to Rubik's Square and Cube instances,
/// certify, solve, verify and render them.
///
/// Exit status: 0 ok, 1 answer is no (or a solution was rejected), 2 usage
/// or I/O error, 3 malformed or invalid input, 4 search capacity exceeded.
#[derive(Parser)]
#[command(name = "rubik-np", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input file; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 20261016)]
    seed: u64,
    /// Search depth; defaults to the instance's move budget.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 500_000_000)]
    node_limit: u64,
    #[arg(long, global = true, value_parser = parse_strategy, default_value = "bi")]
    strategy: Strategy,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a reduced puzzle instance.
    Reduce(ReduceArgs),
    /// Turn a Hamiltonian path into a move sequence and verify it.
    Certify(CertifyArgs),
    /// Exhaustively search for an optimal solution.
    Solve(SolveArgs),
    /// Check a move sequence against a reduced instance.
    Verify(VerifyArgs),
    /// Draw a configuration or a predicted coloring.
    Render(RenderArgs),
    /// Run the built-in checks.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct TargetArgs {
    #[arg(long, value_parser = parse_target, default_value = "square")]
    target: Target,
    /// Emit the group variant (a transformation rather than a coloring).
    #[arg(long)]
    group: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    target: TargetArgs,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// JSON file `{"ordering":[...]}` with a 1-based Hamiltonian path.
    #[arg(long, conflicts_with = "search", required_unless_present = "search")]
    certificate: Option<PathBuf>,
    /// Find the path by exhaustive search.
    #[arg(long)]
    search: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Metric for a bare configuration or transformation input.
    #[arg(long, value_enum)]
    metric: Option<MetricArg>,
    #[arg(long)]
    no_pruning: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// File holding the whitespace-separated move tokens.
    #[arg(long, conflicts_with = "moves", required_unless_present = "moves")]
    solution: Option<PathBuf>,
    /// The move tokens inline.
    #[arg(long, allow_hyphen_values = true)]
    moves: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, value_parser = parse_format, default_value = "ascii")]
    format: RenderFormat,
    #[arg(long, value_parser = parse_faces, default_value = "all", allow_hyphen_values = true)]
    face: FaceSelection,
    /// With a cubical input, render the predicted `C_b` or `C_t`.
    #[arg(long, value_enum)]
    predict: Option<Prediction>,
    /// Puzzle for predictions or for the solved puzzle.
    #[arg(long, value_enum, default_value = "square")]
    kind: KindArg,
    /// Render the solved puzzle of this side instead of reading input.
    #[arg(long)]
    solved: Option<usize>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Random cases per randomized check.
    #[arg(long, default_value_t = 20)]
    rounds: usize,
    /// Pipeline manifest whose corpus, seed and limits are used.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Flip,
    Stm,
    Sqtm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prediction {
    Cb,
    Ct,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Square,
    Cube,
}

impl From<KindArg> for PuzzleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Square => PuzzleKind::Square,
            KindArg::Cube => PuzzleKind::Cube,
        }
    }
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Flip => Metric::SquareFlip,
            MetricArg::Stm => Metric::Stm,
            MetricArg::Sqtm => Metric::Sqtm,
        }
    }
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<RenderFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_faces(s: &str) -> Result<FaceSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity(_) => EXIT_CAPACITY,
            Error::Io(_) => EXIT_USAGE,
            _ => EXIT_SCHEMA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn schema(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_SCHEMA,
        message: msg.into(),
    }
}

type CmdResult = Result<u8, Failure>;

impl Global {
    fn read_input(&self) -> Result<String, Failure> {
        match &self.input {
            Some(p) => read_file(p),
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn read_json(&self) -> Result<Value, Failure> {
        serde_json::from_str(&self.read_input()?).map_err(|e| schema(format!("input is not JSON: {e}")))
    }

    fn write(&self, text: &str) -> Result<(), Failure> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.output {
            Some(p) => fs::write(p, text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{}: {e}", p.display()),
            }),
            None => Ok(io::stdout().write_all(text.as_bytes())?),
        }
    }

    fn budget(&self, depth: usize, pruning: bool) -> SearchBudget {
        SearchBudget {
            max_depth: self.max_depth.unwrap_or(depth),
            node_limit: self.node_limit,
            strategy: self.strategy,
            pruning,
        }
    }
}

fn read_file(p: &Path) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", p.display()),
    })
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| schema(format!("bad {what}: {e}")))
}

/// Reads a cubical instance, or a grid graph (with or without endpoints) and
/// converts it; a plain grid graph first goes through the cycle gadget.
fn load_cubical(doc: Value) -> Result<CubicalInstance, Failure> {
    let obj = doc.as_object().ok_or_else(|| schema("input must be a JSON object"))?;
    let inst = if obj.contains_key("labels") {
        from_value::<CubicalInstance>(doc, "cubical instance")?
    } else if obj.contains_key("s") || obj.contains_key("t") {
        grid_to_cubical(&from_value::<PromiseGridInstance>(doc, "promise grid instance")?)?
    } else if obj.contains_key("vertices") {
        let g: GridGraph = from_value(doc, "grid graph")?;
        grid_to_cubical(&cycle_to_path(&g)?)?
    } else {
        return Err(schema("expected a cubical instance, a grid graph or a promise grid instance"));
    };
    let report = validate_promise(&inst, true);
    if !report.is_valid() {
        return Err(Failure {
            code: EXIT_SCHEMA,
            message: format!("invalid instance: {}", report.problems.join("; ")),
        });
    }
    Ok(inst)
}

fn cmd_reduce(g: &Global, args: &ReduceArgs) -> CmdResult {
    let inst = load_cubical(g.read_json()?)?;
    let ri = reduce(&inst, args.target.target, args.target.group)?;
    g.write(&serde_json::to_string(&ri).map_err(Error::from)?)?;
    Ok(0)
}

fn cmd_certify(g: &Global, args: &CertifyArgs) -> CmdResult {
    let inst = load_cubical(g.read_json()?)?;
    let cert = match &args.certificate {
        Some(p) => {
            let c: PathCertificate = serde_json::from_str(&read_file(p)?)
                .map_err(|e| schema(format!("bad certificate: {e}")))?;
            c.validate(&inst)?;
            c
        }
        None => match find_ham_path_with(&inst, g.node_limit)? {
            Some(ordering) => PathCertificate::new(ordering),
            None => {
                eprintln!("no path: the instance has no Hamiltonian path");
                return Ok(EXIT_NO);
            }
        },
    };
    let target = args.target.target;
    let seq = match target {
        Target::Square => synthesize_square_solution(&inst, &cert)?,
        _ => synthesize_cube_solution(&inst, &cert, target.metric())?,
    };
    let ri = reduce(&inst, target, args.target.group)?;
    let text = seq.to_string();
    let verdict = verify_tokens(&ri, &text);
    g.write(&text)?;
    if verdict.accepted {
        Ok(0)
    } else {
        eprintln!("synthesized sequence rejected: {:?}", verdict.reasons);
        Ok(EXIT_NO)
    }
}

fn cmd_solve(g: &Global, args: &SolveArgs) -> CmdResult {
    let doc = g.read_json()?;
    let obj = doc.as_object().ok_or_else(|| schema("input must be a JSON object"))?;
    let pruning = !args.no_pruning;
    let (outcome, depth) = if obj.contains_key("faces") {
        let c: PuzzleConfig = from_value(doc, "configuration")?;
        let metric = args.metric.map(Metric::from).unwrap_or(Metric::default_for(c.kind()));
        let b = g.budget(3, pruning);
        (solve_with_stats(SearchStart::Config(&c), metric, &b)?, b.max_depth)
    } else if obj.contains_key("map") {
        let t: StickerPermutation = from_value(doc, "transformation")?;
        let metric = args.metric.map(Metric::from).unwrap_or(Metric::default_for(t.kind()));
        let b = g.budget(3, pruning);
        (solve_with_stats(SearchStart::Transformation(&t), metric, &b)?, b.max_depth)
    } else {
        let ri: ReducedInstance = from_value(doc, "reduced instance")?;
        let b = g.budget(ri.k, pruning);
        let start = match (&ri.transformation, &ri.configuration) {
            (Some(t), _) if ri.group => SearchStart::Transformation(t),
            (_, Some(c)) => SearchStart::Config(c),
            _ => return Err(schema("reduced instance has nothing to solve")),
        };
        (solve_with_stats(start, ri.metric(), &b)?, b.max_depth)
    };
    eprintln!("searched {} nodes", outcome.nodes);
    match outcome.solution {
        Some(seq) => {
            g.write(&seq.to_string())?;
            Ok(0)
        }
        None => {
            eprintln!("no: no solution of length <= {depth}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_verify(g: &Global, args: &VerifyArgs) -> CmdResult {
    let ri: ReducedInstance = from_value(g.read_json()?, "reduced instance")?;
    let text = match (&args.solution, &args.moves) {
        (Some(p), _) => read_file(p)?,
        (None, Some(m)) => m.clone(),
        (None, None) => unreachable!("clap requires one of them"),
    };
    let verdict = verify_tokens(&ri, &text);
    g.write(&serde_json::to_string(&verdict).map_err(Error::from)?)?;
    Ok(if verdict.accepted { 0 } else { EXIT_NO })
}

fn cmd_render(g: &Global, args: &RenderArgs) -> CmdResult {
    let kind = PuzzleKind::from(args.kind);
    let text = if let Some(side) = args.solved {
        render_config(&make_solved(kind, side)?, args.format, args.face)
    } else {
        let doc = g.read_json()?;
        let obj = doc.as_object().ok_or_else(|| schema("input must be a JSON object"))?;
        if let Some(p) = args.predict {
            if !obj.contains_key("labels") {
                return Err(schema("--predict needs a cubical instance"));
            }
            let inst = load_cubical(doc)?;
            let pred = match p {
                Prediction::Cb => predict_cb(&inst, kind)?,
                Prediction::Ct => predict_ct(&inst, kind)?,
            };
            render_coloring(&pred, args.format, args.face)
        } else if obj.contains_key("faces") {
            render_config(&from_value(doc, "configuration")?, args.format, args.face)
        } else {
            let ri: ReducedInstance = from_value(doc, "reduced instance")?;
            let c = ri.configuration.as_ref().ok_or_else(|| schema("no configuration"))?;
            render_config(c, args.format, args.face)
        }
    };
    g.write(&text)?;
    Ok(0)
}

fn cmd_selftest(g: &Global, args: &SelftestArgs) -> CmdResult {
    let mut opts = SelftestOptions {
        seed: g.seed,
        budget: g.budget(3, true),
        rounds: args.rounds,
    };
    let report = match &args.manifest {
        Some(p) => {
            let (manifest, items) = load_manifest(p)?;
            opts.seed = manifest.seed;
            opts.budget = manifest.limits;
            run_selftest_with(&opts, &items)
        }
        None => run_selftest(&opts),
    };
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {:<14} {:>7} ms  {}\n", c.name, c.millis, c.detail));
    }
    g.write(&out)?;
    Ok(if report.all_passed() { 0 } else { EXIT_NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Reduce(a) => cmd_reduce(g, a),
        Command::Certify(a) => cmd_certify(g, a),
        Command::Solve(a) => cmd_solve(g, a),
        Command::Verify(a) => cmd_verify(g, a),
        Command::Render(a) => cmd_render(g, a),
        Command::Selftest(a) => cmd_selftest(g, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
