use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bookcross::{
    biconnected_components, count, kernel_for, solve, stats, Engine, Error, Graph, LayoutJson, Objective,
    SearchConfig, Style,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod render;

/// Exact 1-page and 2-page book crossing minimization for sparse graphs.
#[derive(Parser, Debug)]
#[command(name = "bookcross", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, m, a (cyclomatic number), k (largest block cyclomatic
    /// number) and the 2-core size n2, m2.
    Stats {
        /// Edge-list files ("-" for standard input).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compute an optimal layout and its value.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Print the summary (including the layout) as JSON.
        #[arg(long)]
        json: bool,
        /// Write the layout JSON here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Dump the kernel of every biconnected block.
    Kernel {
        input: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw a layout as a sunburst SVG.
    Render {
        input: PathBuf,
        /// Layout JSON as written by `solve --output`.
        #[arg(required_unless_present = "solve", conflicts_with = "solve")]
        layout: Option<PathBuf>,
        /// Solve first and draw the optimal layout.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ProblemArgs {
    #[arg(long, value_enum, default_value_t = StyleArg::OnePage)]
    style: StyleArg,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Crossings)]
    objective: ObjectiveArg,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    engine: EngineArg,
    /// Abort after this many explored configurations.
    #[arg(long, env = "BOOKCROSS_BUDGET")]
    budget: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Largest kernel (vertices) handed to the exhaustive search.
    #[arg(long)]
    max_kernel_vertices: Option<usize>,
    /// Largest kernel (edges) handed to the 2-page search.
    #[arg(long)]
    max_kernel_edges: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StyleArg {
    #[value(name = "1page")]
    OnePage,
    #[value(name = "2page")]
    TwoPage,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ObjectiveArg {
    Crossings,
    CrossedEdges,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EngineArg {
    Sjt,
    Enumeration,
    Matmult,
    Auto,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::OnePage => Style::OnePage,
            StyleArg::TwoPage => Style::TwoPage,
        }
    }
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Crossings => Objective::Crossings,
            ObjectiveArg::CrossedEdges => Objective::CrossedEdges,
        }
    }
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Sjt => Engine::Sjt,
            EngineArg::Enumeration => Engine::Enumeration,
            EngineArg::Matmult => Engine::Matmult,
            EngineArg::Auto => Engine::Auto,
        }
    }
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig {
            budget: self.budget,
            threads: self.threads,
            ..SearchConfig::default()
        };
        if let Some(v) = self.max_kernel_vertices {
            cfg.max_vertices_1page = v;
            cfg.max_vertices_2page = v;
            cfg.max_vertices_matmult = v;
        }
        if let Some(e) = self.max_kernel_edges {
            cfg.max_edges_2page = e;
            cfg.max_edges_matmult_2page = e;
        }
        cfg
    }
}

/// Failure with its exit code: 1 for bad input, 2 for size or budget.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_size_error() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    Graph::parse_edge_list(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to stdout; a reader that went away early is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: standard output: {e}");
        }
    }
}

fn check_engine(problem: &ProblemArgs, search: &SearchArgs) -> Result<(), Failure> {
    if search.engine == EngineArg::Matmult && problem.objective == ObjectiveArg::CrossedEdges {
        return Err(input_error(
            "--engine matmult only minimizes crossings; use --engine auto for crossed-edges",
        ));
    }
    Ok(())
}

fn name_of(path: &Path) -> String {
    if path.as_os_str() == "-" {
        return "stdin".into();
    }
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn cmd_stats(inputs: &[PathBuf], json: bool) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for path in inputs {
        let g = read_graph(path)?;
        rows.push((name_of(path), stats(&g)));
    }
    if json {
        let values: Vec<_> = rows
            .iter()
            .map(|(name, s)| {
                serde_json::json!({
                    "name": name, "n": s.n, "m": s.m, "a": s.a, "k": s.k, "n2": s.n2, "m2": s.m2,
                })
            })
            .collect();
        let v = if values.len() == 1 {
            values.into_iter().next().unwrap()
        } else {
            serde_json::Value::Array(values)
        };
        emit(&(serde_json::to_string_pretty(&v).expect("stats serialize") + "\n"));
        return Ok(());
    }
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0).max(4);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$} {:>8} {:>8} {:>8} {:>6} {:>8} {:>8}", "name", "n", "m", "a", "k", "n2", "m2");
    for (name, s) in &rows {
        let _ = writeln!(
            out,
            "{:<width$} {:>8} {:>8} {:>8} {:>6} {:>8} {:>8}",
            name, s.n, s.m, s.a, s.k, s.n2, s.m2
        );
    }
    emit(&out);
    Ok(())
}

fn cmd_solve(
    input: &Path,
    problem: ProblemArgs,
    search: &SearchArgs,
    json: bool,
    output: Option<&Path>,
) -> Result<(), Failure> {
    check_engine(&problem, search)?;
    let g = read_graph(input)?;
    let r = solve(&g, problem.style.into(), problem.objective.into(), search.engine.into(), &search.config())?;
    let layout = LayoutJson::new(&g, &r.layout, &count(&g, &r.layout)?);
    if let Some(p) = output {
        write_out(Some(p), &(layout.to_json() + "\n"))?;
    }
    if json {
        let v = serde_json::json!({
            "style": r.style.to_string(),
            "objective": r.objective.to_string(),
            "value": r.value,
            "explored": r.explored,
            "wall_time_ms": r.wall_time.as_secs_f64() * 1000.0,
            "blocks": r.blocks,
            "layout": layout,
        });
        emit(&(serde_json::to_string_pretty(&v).expect("summary serialize") + "\n"));
        return Ok(());
    }
    let mut s = String::new();
    let _ = writeln!(s, "{} {} = {}", r.style, r.objective, r.value);
    for (i, b) in r.blocks.iter().enumerate() {
        let _ = writeln!(
            s,
            "  block {i}: {} vertices, {} edges, k={}, ell={}, kernel {}/{}, value {}, explored {}",
            b.vertices, b.edges, b.k, b.ell, b.kernel_vertices, b.kernel_edges, b.value, b.explored
        );
    }
    let _ = writeln!(
        s,
        "explored {} configurations in {:.3} ms",
        r.explored,
        r.wall_time.as_secs_f64() * 1000.0
    );
    if output.is_none() {
        s.push_str(&layout.to_json());
        s.push('\n');
    }
    emit(&s);
    Ok(())
}

fn cmd_kernel(input: &Path, problem: ProblemArgs, output: Option<&Path>) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let forest = biconnected_components(&g);
    let mut out = String::new();
    let mut bridges = 0;
    for i in 0..forest.len() {
        if forest.blocks[i].len() == 1 {
            bridges += 1;
            continue;
        }
        let sub = forest.block_subgraph(&g, i).graph;
        let kernel = kernel_for(&sub, problem.style.into(), problem.objective.into());
        let _ = writeln!(
            out,
            "# block {i}: {} vertices, {} edges",
            sub.vertex_count(),
            sub.edge_count()
        );
        out.push_str(&kernel.dump());
    }
    if bridges > 0 {
        let _ = writeln!(out, "# {bridges} bridges outside all blocks");
    }
    write_out(output, &out)
}

fn cmd_render(
    input: &Path,
    layout: Option<&Path>,
    problem: ProblemArgs,
    search: &SearchArgs,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let emb = match layout {
        Some(path) => {
            let text = read_text(path)?;
            let json = LayoutJson::from_json(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            json.to_embedding(&g)
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?
        }
        None => {
            check_engine(&problem, search)?;
            solve(&g, problem.style.into(), problem.objective.into(), search.engine.into(), &search.config())?.layout
        }
    };
    let svg = render::sunburst(&g, &emb)?;
    write_out(output, &svg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Stats { inputs, json } => cmd_stats(&inputs, json),
        Command::Solve {
            input,
            problem,
            search,
            json,
            output,
        } => cmd_solve(&input, problem, &search, json, output.as_deref()),
        Command::Kernel { input, problem, output } => cmd_kernel(&input, problem, output.as_deref()),
        Command::Render {
            input,
            layout,
            solve: _,
            problem,
            search,
            output,
        } => cmd_render(&input, layout.as_deref(), problem, &search, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors are input errors; 2 is reserved for size limits.
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
