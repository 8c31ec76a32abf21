use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linkpred::baselines::NeighborhoodMode;
use linkpred::benchmarks::{bench_rows_to_csv, runtime_benchmark, BenchConfig};
use linkpred::datasets;
use linkpred::eval::{run_experiment, score_method, ExperimentConfig, MethodKind, MethodSpec, Ranking};
use linkpred::graph::{generate_pa, RandomSeed};
use linkpred::verify::verify_kernels;
use linkpred::{DistanceKind, Error, WeightFamily};

#[derive(Parser)]
#[command(
    name = "linkpred",
    about = "Game-theoretic link prediction: interaction-index ranking, baselines, and the edge-removal evaluation protocol",
    version
)]
struct Cli {
    /// Worker thread count; 1 guarantees bit-stable output.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank non-adjacent node pairs of a graph by a similarity method.
    Rank(RankArgs),
    /// Run the edge-removal evaluation protocol and report AUC/precision.
    Evaluate(EvaluateArgs),
    /// Generate a preferential-attachment graph as an edge list.
    Generate(GenerateArgs),
    /// Time the similarity kernels on preferential-attachment graphs.
    Bench(BenchArgs),
    /// Check the fast kernels against the enumeration oracles on small graphs.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MethodFlags {
    /// Radius / step count k.
    #[arg(long)]
    k: f64,
    /// Distance function for the closeness kernels.
    #[arg(long, default_value = "inverse-square")]
    f: String,
    /// Coalition-size weight family for the semivalue kernel.
    #[arg(long, default_value = "shapley")]
    weights: String,
    /// Common-neighbors ball inequality: inclusive (dist <= k) or strict (< k).
    #[arg(long, default_value = "inclusive")]
    cn_mode: String,
}

impl MethodFlags {
    fn spec(&self, kind: MethodKind) -> Result<MethodSpec, Error> {
        let mut spec = MethodSpec::new(kind, self.k);
        spec.f_kind = self.f.parse::<DistanceKind>()?;
        spec.weights = parse_weights(&self.weights)?;
        spec.cn_mode = parse_cn_mode(&self.cn_mode)?;
        Ok(spec)
    }
}

#[derive(Args)]
struct RankArgs {
    /// Dataset name or edge-list path.
    #[arg(long)]
    graph: String,
    /// One of: shapley-closeness, semivalue-closeness, shapley-degree, cn, lrw, srw.
    #[arg(long)]
    method: String,
    #[command(flatten)]
    flags: MethodFlags,
    /// Number of top pairs to print.
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    graph: String,
    /// Comma-separated method names; each is crossed with every k.
    #[arg(long, value_delimiter = ',', default_value = "shapley-closeness")]
    methods: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    k_list: Vec<f64>,
    #[arg(long, default_value = "inverse-square")]
    f: String,
    #[arg(long, default_value = "shapley")]
    weights: String,
    #[arg(long, default_value = "inclusive")]
    cn_mode: String,
    #[arg(long, default_value_t = 0.3)]
    fraction: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for report.csv and report.json; stdout only if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m0: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    m0: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    k_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "shapley-closeness")]
    methods: Vec<String>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest node count to sweep (enumeration-bounded).
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    k_list: Vec<f64>,
}

fn parse_method(name: &str) -> Result<MethodKind, Error> {
    match name {
        "shapley-closeness" => Ok(MethodKind::ShapleyCloseness),
        "semivalue-closeness" => Ok(MethodKind::SemivalueCloseness),
        "shapley-degree" => Ok(MethodKind::ShapleyDegree),
        "cn" => Ok(MethodKind::CommonNeighbors),
        "lrw" => Ok(MethodKind::Lrw),
        "srw" => Ok(MethodKind::Srw),
        other => Err(Error::InvalidParameter(format!("unknown method '{other}'"))),
    }
}

fn parse_weights(name: &str) -> Result<WeightFamily, Error> {
    match name {
        "shapley" => Ok(WeightFamily::Shapley),
        "banzhaf" => Ok(WeightFamily::Banzhaf),
        other => Err(Error::InvalidParameter(format!("unknown weight family '{other}'"))),
    }
}

fn parse_cn_mode(name: &str) -> Result<NeighborhoodMode, Error> {
    match name {
        "inclusive" => Ok(NeighborhoodMode::Inclusive),
        "strict" => Ok(NeighborhoodMode::Strict),
        other => Err(Error::InvalidParameter(format!("unknown cn mode '{other}'"))),
    }
}

fn echo_config(value: &impl serde::Serialize) {
    let json = serde_json::to_string(value).expect("config serializes");
    println!("# config: {json}");
}

fn cmd_rank(args: &RankArgs) -> Result<(), Error> {
    let kind = parse_method(&args.method)?;
    let spec = args.flags.spec(kind)?;
    let graph = datasets::by_name(&args.graph)?;
    echo_config(&serde_json::json!({
        "command": "rank",
        "graph": args.graph,
        "method": spec,
        "top": args.top,
    }));
    let scores = score_method(&graph, &spec)?;
    let candidates: Vec<_> = graph.nonadjacent_pairs().collect();
    let ranking = Ranking::new(&scores, &candidates);
    for &((u, v), score) in ranking.entries.iter().take(args.top) {
        println!("{},{},{}", graph.label(u), graph.label(v), score);
    }
    // flag a tie group cut off by --top: those ranks are arbitrary within it
    if args.top > 0 && args.top < ranking.entries.len() {
        let cutoff_score = ranking.entries[args.top - 1].1;
        if ranking.entries[args.top].1 == cutoff_score {
            let tied = ranking.entries.iter().filter(|e| e.1 == cutoff_score).count();
            println!("# note: score {cutoff_score} ties {tied} pairs across the --top cutoff");
        }
    }
    Ok(())
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<(), Error> {
    let mut methods = Vec::new();
    for name in &args.methods {
        let kind = parse_method(name)?;
        for &k in &args.k_list {
            let mut spec = MethodSpec::new(kind, k);
            spec.f_kind = args.f.parse()?;
            spec.weights = parse_weights(&args.weights)?;
            spec.cn_mode = parse_cn_mode(&args.cn_mode)?;
            methods.push(spec);
        }
    }
    let mut config = ExperimentConfig::new(args.graph.clone(), methods);
    config.removal_fraction = args.fraction;
    config.trials = args.trials;
    config.master_seed = args.seed;
    config.validate()?;
    let graph = datasets::by_name(&args.graph)?;
    echo_config(&config);
    let report = run_experiment(&graph, &config)?;
    print!("{}", report.to_csv());
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.csv"), report.to_csv())?;
        std::fs::write(dir.join("report.json"), report.to_json())?;
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<(), Error> {
    echo_config(&serde_json::json!({
        "command": "generate",
        "n": args.n, "m0": args.m0, "m": args.m, "seed": args.seed,
    }));
    let graph = generate_pa(args.n, args.m0, args.m, RandomSeed::new(args.seed))?;
    let text = graph.to_edge_list_string();
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Error> {
    let mut methods = Vec::new();
    for name in &args.methods {
        let kind = parse_method(name)?;
        for &k in &args.k_list {
            methods.push(MethodSpec::new(kind, k));
        }
    }
    let mut config = BenchConfig::new(args.sizes.clone(), args.m0, args.m, methods);
    config.repeats = args.repeats;
    config.master_seed = args.seed;
    echo_config(&config);
    let rows = runtime_benchmark(&config)?;
    let csv = bench_rows_to_csv(&rows);
    print!("{csv}");
    if let Some(path) = &args.out {
        std::fs::write(path, csv)?;
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Error> {
    echo_config(&serde_json::json!({
        "command": "verify", "max_n": args.max_n, "k_list": args.k_list,
    }));
    let report = verify_kernels(args.max_n, &args.k_list)?;
    println!(
        "checked {} graphs, {} comparisons, max |error| {:.3e}",
        report.graphs_checked, report.comparisons, report.max_abs_error
    );
    match &report.first_counterexample {
        None => {
            println!("verify: PASS");
            Ok(())
        }
        Some(example) => {
            println!("verify: FAIL");
            println!("first counterexample: {example}");
            Err(Error::InvalidParameter("kernel/oracle mismatch".into()))
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::InvalidParameter("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Rank(args) => cmd_rank(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit codes don't match ours: usage problems are 1.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Dataset(_) | Error::Io(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
