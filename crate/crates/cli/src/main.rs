use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use trident::generate::gen_planted;
use trident::lp::{export_lp, parse_solution, round_solution, FEASIBILITY_TOLERANCE};
use trident::scalar::{parse_rational, to_f64};
use trident::{
    batch_peel, density_report, greedy_ds, list_kcliques, list_triangles, load_edge_list, peel,
    solve_constrained, solve_exact, CliqueIndex, Error, Graph, Rational, SolveResult, VertexSet,
};

mod output;

use output::{Extra, Format, Rendered, SweepRow};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "trident", version, about = "Triangle- and k-clique-densest subgraph extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Edge-list file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the clique list (one tab-separated tuple per line) to this path.
    #[arg(long)]
    dump_cliques: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PeelArgs {
    #[command(flatten)]
    common: Common,
    /// Write the removal trace as CSV to this path.
    #[arg(long)]
    dump_trace: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact triangle-densest subgraph.
    TdsExact(Common),
    /// Single-vertex triangle peeling (1/3-approximation).
    TdsPeel(PeelArgs),
    /// Batch triangle peeling, optionally swept over several epsilons.
    TdsBatch {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0.1")]
        epsilon: String,
        /// Run every epsilon of `--epsilons` and print one row per value.
        #[arg(long)]
        sweep: bool,
        /// Comma-separated epsilons for `--sweep` (default 0.1, 0.2, ..., 1.8).
        #[arg(long, value_delimiter = ',')]
        epsilons: Option<Vec<String>>,
    },
    /// Exact k-clique-densest subgraph.
    KdsExact {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Single-vertex k-clique peeling (1/k-approximation).
    KdsPeel {
        #[command(flatten)]
        peel: PeelArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Exact densest subgraph (average degree).
    DsExact(Common),
    /// Greedy densest subgraph (1/2-approximation).
    DsPeel(PeelArgs),
    /// Densest subgraph forced to contain the query vertices.
    Constrained {
        #[command(flatten)]
        peel: PeelArgs,
        /// Comma-separated vertex labels that must be kept.
        #[arg(long, value_delimiter = ',', required = true)]
        query: Vec<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Use protected peeling instead of the exact solver.
        #[arg(long = "peel")]
        approximate: bool,
    },
    /// Print the triangle LP in lp_solve format.
    LpExport {
        input: PathBuf,
    },
    /// Round an externally solved LP (`name value` lines) to a vertex set.
    LpRound {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Vertex, edge and triangle counts.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Erdős–Rényi graph with a planted clique, written as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the planted labels, one per line, to this path.
        #[arg(long)]
        planted: Option<PathBuf>,
    },
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parameter(_) => 1,
            Error::Overflow => 3,
            Error::Parse { .. } | Error::VertexOutOfRange { .. } | Error::TooLarge(_) | Error::Io(_) => 2,
        };
        Failure { code, message: err.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::input(err.to_string())
    }
}

type Status = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(failure) = configure_threads() {
        eprintln!("trident: {}", failure.message);
        return ExitCode::from(failure.code);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("trident: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn configure_threads() -> Status {
    let Ok(value) = std::env::var("TRIDENT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("TRIDENT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    Ok(load_edge_list(text.as_bytes())?)
}

fn clique_index(g: &Graph, k: usize) -> Result<CliqueIndex, Failure> {
    match k {
        2 => Ok(CliqueIndex::edges(g)),
        3 => Ok(list_triangles(g)),
        4..=8 => Ok(list_kcliques(g, k)?),
        _ => Err(Failure::usage(format!("k must lie in 2..=8, got {k}"))),
    }
}

fn write_file(path: &Path, contents: &str) -> Status {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Status {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

/// Loads the graph, builds the index and honours `--dump-cliques`.
fn prepare(common: &Common, k: usize) -> Result<(Graph, CliqueIndex), Failure> {
    let g = load(&common.input)?;
    let index = clique_index(&g, k)?;
    if let Some(path) = &common.dump_cliques {
        write_file(path, &index.dump(&g))?;
    }
    Ok((g, index))
}

fn report(common: &Common, method: &str, n: usize, result: SolveResult, extra: Extra) -> Status {
    emit(&Rendered { method, n, result, extra }.render(common.format))
}

fn run_exact(common: &Common, k: usize, method: &str) -> Status {
    let (g, index) = prepare(common, k)?;
    let result = solve_exact(&g, &index)?;
    let iterations = Value::from(result.iterations);
    report(common, method, g.n(), result, vec![("iterations", iterations)])
}

fn run_peel(args: &PeelArgs, k: usize, protected: &VertexSet, method: &str) -> Status {
    let (g, index) = prepare(&args.common, k)?;
    let (result, trace) = if k == 2 && protected.is_empty() {
        greedy_ds(&g)?
    } else {
        peel(&g, &index, protected)?
    };
    if let Some(path) = &args.dump_trace {
        write_file(path, &trace.to_csv(&g))?;
    }
    report(&args.common, method, g.n(), result, vec![])
}

fn parse_epsilon(text: &str) -> Result<Rational, Failure> {
    let eps = parse_rational(text).map_err(|_| Failure::usage(format!("bad epsilon {text:?}")))?;
    if eps <= Rational::from_integer(0.into()) {
        return Err(Failure::usage(format!("epsilon must be positive, got {text}")));
    }
    Ok(eps)
}

fn default_sweep() -> Vec<String> {
    (1..=18).map(|i| format!("{i}/10")).collect()
}

fn run_batch(common: &Common, epsilon: &str, sweep: bool, epsilons: Option<Vec<String>>) -> Status {
    if !sweep {
        let eps = parse_epsilon(epsilon)?;
        let (g, index) = prepare(common, 3)?;
        let (result, rounds) = batch_peel(&g, &index, &eps)?;
        let extra = vec![("epsilon", Value::from(eps.to_string())), ("rounds", Value::from(rounds))];
        return report(common, "tds-batch", g.n(), result, extra);
    }
    let labels = epsilons.unwrap_or_else(default_sweep);
    let values = labels.iter().map(|e| parse_epsilon(e)).collect::<Result<Vec<_>, _>>()?;
    let (g, index) = prepare(common, 3)?;
    let optimum = solve_exact(&g, &index)?.density;
    let rows = values
        .par_iter()
        .map(|eps| {
            let (result, rounds) = batch_peel(&g, &index, eps)?;
            let ratio = if optimum == Rational::from_integer(0.into()) {
                1.0
            } else {
                to_f64(&(&result.density / &optimum))
            };
            Ok(SweepRow {
                epsilon: to_f64(eps),
                rounds,
                size: result.report.size,
                density: to_f64(&result.density),
                ratio,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    emit(&output::render_sweep(&rows, common.format))
}

fn query_set(g: &Graph, labels: &[String]) -> Result<VertexSet, Failure> {
    let ids = labels
        .iter()
        .map(|label| {
            g.id_of(label)
                .ok_or_else(|| Failure::input(format!("unknown vertex label {label:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VertexSet::new(ids, g.n())?)
}

fn run_constrained(args: &PeelArgs, labels: &[String], k: usize, approximate: bool) -> Status {
    let (g, index) = prepare(&args.common, k)?;
    let q = query_set(&g, labels)?;
    if approximate {
        let (result, trace) = peel(&g, &index, &q)?;
        if let Some(path) = &args.dump_trace {
            write_file(path, &trace.to_csv(&g))?;
        }
        return report(&args.common, "constrained-peel", g.n(), result, vec![]);
    }
    let result = solve_constrained(&g, &index, &q)?;
    let iterations = Value::from(result.iterations);
    report(&args.common, "constrained", g.n(), result, vec![("iterations", iterations)])
}

fn run_lp_round(common: &Common, solution: &Path) -> Status {
    let (g, index) = prepare(common, 3)?;
    let text = read_input(solution)?;
    let sol = parse_solution(&index, &text)?;
    sol.check_feasible(&index, FEASIBILITY_TOLERANCE)
        .map_err(|e| Failure::input(format!("infeasible solution: {e}")))?;
    let (set, _) = round_solution(&index, &sol)?;
    let result = SolveResult::from_set(&g, &index, set, 0)?;
    let extra = vec![("lp_objective", Value::from(to_f64(&sol.objective)))];
    report(common, "lp-round", g.n(), result, extra)
}

fn run_stats(input: &Path, format: Format) -> Status {
    let g = load(input)?;
    let index = list_triangles(&g);
    let whole = density_report(&g, &g.vertices(), &index)?;
    let stats = output::Stats {
        n: g.n(),
        m: g.m(),
        triangles: index.len(),
        max_tv: index.counts().iter().copied().max().unwrap_or(0),
        f_e: whole.f_e,
        tau: whole.tau,
    };
    emit(&stats.render(format))
}

fn run_gen(n: usize, p: f64, gamma: f64, seed: u64, planted: Option<&Path>) -> Status {
    let instance = gen_planted(n, p, gamma, seed).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(path) = planted {
        write_file(path, &instance.sidecar())?;
    }
    emit(&instance.to_edge_list())
}

fn run(command: Command) -> Status {
    let none = VertexSet::empty();
    match command {
        Command::TdsExact(common) => run_exact(&common, 3, "tds-exact"),
        Command::TdsPeel(args) => run_peel(&args, 3, &none, "tds-peel"),
        Command::TdsBatch { common, epsilon, sweep, epsilons } => run_batch(&common, &epsilon, sweep, epsilons),
        Command::KdsExact { common, k } => run_exact(&common, k, "kds-exact"),
        Command::KdsPeel { peel, k } => run_peel(&peel, k, &none, "kds-peel"),
        Command::DsExact(common) => run_exact(&common, 2, "ds-exact"),
        Command::DsPeel(args) => run_peel(&args, 2, &none, "ds-peel"),
        Command::Constrained { peel, query, k, approximate } => run_constrained(&peel, &query, k, approximate),
        Command::LpExport { input } => {
            let g = load(&input)?;
            emit(&export_lp(&list_triangles(&g))?)
        }
        Command::LpRound { common, solution } => run_lp_round(&common, &solution),
        Command::Stats { input, format } => run_stats(&input, format),
        Command::Gen { n, p, gamma, seed, planted } => run_gen(n, p, gamma, seed, planted.as_deref()),
    }
}
