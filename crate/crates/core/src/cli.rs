//! Command-line front end. Exit codes: 0 success, 1 internal failure,
//! 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::coloring::loss_hard;
use crate::error::Error;
use crate::experiments::{
    case_study, case_study_table, oversmooth_csv, oversmoothing_threshold, records_to_csv,
    summarize, summary_text, Algorithm, BenchConfig, CaseStudyPlan, OversmoothRow, Solver,
};
use crate::gcn::{grad_check_suite, mod_gcn, trace_csv, TrainConfig};
use crate::graph::{
    gen_erdos_renyi, gen_family, gen_max_planar, gen_regular, gen_replica, read_graph_file,
    write_edge_list, DegreeSequence, FamilySpec, Graph, ParseOptions,
};

#[derive(Debug, Parser)]
#[command(name = "kcolor", version, about = "Approximate graph k-coloring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Color a graph file.
    Solve(SolveArgs),
    /// Run a trial grid from a key=value config and emit CSV.
    Bench(BenchArgs),
    /// Best loss and chromatic bounds of one graph over repeated runs.
    CaseStudy(CaseStudyArgs),
    /// Density thresholds at which n-color GCN runs collapse to uniform output.
    Oversmooth(OversmoothArgs),
    /// Compare analytic and finite-difference gradients on random instances.
    GradCheck(GradCheckArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// er, regular, max-planar, replica, cycle, complete, grid, hex, tri
    #[arg(long)]
    family: String,
    #[arg(short)]
    n: Option<usize>,
    /// Average degree for `er`.
    #[arg(short)]
    d: Option<f64>,
    /// Degree for `regular`.
    #[arg(short)]
    r: Option<usize>,
    /// Side lengths for `grid`, e.g. `3x2`.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Graph whose degree sequence `replica` copies; defaults to a fresh
    /// maximal planar graph on `n` vertices.
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// `.col` files are read as DIMACS, anything else as an edge list.
    graph: PathBuf,
    /// Remove degree-0 vertices after reading.
    #[arg(long)]
    drop_isolated: bool,
}

#[derive(Debug, Args)]
struct TrainOverrides {
    /// Training override `key=value`, repeatable (depth, features, init, loss,
    /// lr, dropout, max_epochs, patience, ...).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl TrainOverrides {
    fn apply(&self) -> Result<TrainConfig, Error> {
        let mut cfg = TrainConfig::default();
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got `{kv}`")))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: GraphInput,
    /// discrete, full, triple, mod-gcn, full-gcn
    #[arg(long)]
    algo: String,
    #[arg(short)]
    k: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the coloring here, one color per line.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-epoch training trace (mod-gcn only).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    train: TrainOverrides,
}

#[derive(Debug, Args)]
struct BenchArgs {
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; output is identical for any value.
    #[arg(long)]
    jobs: Option<usize>,
    /// Fill the `ms` column with wall times (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct CaseStudyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    algo: String,
    /// Budget whose best loss is reported.
    #[arg(short)]
    k: usize,
    #[arg(long)]
    k_min: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    name: Option<String>,
    /// Table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Proper coloring certifying the chromatic upper bound.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[command(flatten)]
    train: TrainOverrides,
}

#[derive(Debug, Args)]
struct OversmoothArgs {
    /// Vertex counts, comma separated.
    #[arg(short, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    depth: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.1")]
    dropout: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    train: TrainOverrides,
}

#[derive(Debug, Args)]
struct GradCheckArgs {
    #[arg(long, default_value_t = 20)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::EmptyInput
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop(_)
            | Error::InvalidParameter(_)
            | Error::ColorOutOfRange { .. }
            | Error::UnknownAlgorithm(_)
            | Error::Config(_)
            | Error::Io(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::CaseStudy(a) => cmd_case_study(a),
        Command::Oversmooth(a) => cmd_oversmooth(a),
        Command::GradCheck(a) => cmd_grad_check(a),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            1
        }
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64);
        eprintln!("seed={s}");
        log::info!("no --seed given, using {s}");
        s
    })
}

fn write_output(path: &Path, text: &str) -> CliResult {
    fs::write(path, text)
        .map_err(|e| Failure::Internal(format!("writing {}: {e}", path.display())))
}

fn emit(path: Option<&PathBuf>, text: &str) -> CliResult {
    match path {
        Some(p) => write_output(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(input: &GraphInput) -> Result<Graph, Failure> {
    let opts = ParseOptions {
        drop_isolated: input.drop_isolated,
    };
    read_graph_file(&input.graph, opts)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.graph.display())))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("family `{family}` needs {flag}")))
}

fn cmd_gen(a: GenArgs) -> CliResult {
    let fam = a.family.as_str();
    let needs_seed = matches!(fam, "er" | "regular" | "max-planar" | "replica");
    let seed = if needs_seed { seed_or_default(a.seed) } else { 0 };
    let g = match fam {
        "er" => gen_erdos_renyi(need(a.n, "-n", fam)?, need(a.d, "-d", fam)?, seed)?,
        "regular" => gen_regular(need(a.n, "-n", fam)?, need(a.r, "-r", fam)?, seed)?,
        "max-planar" => gen_max_planar(need(a.n, "-n", fam)?, seed)?,
        "replica" => {
            let target = match &a.target {
                Some(path) => read_graph_file(path, ParseOptions::default())?,
                None => gen_max_planar(need(a.n, "-n or --target", fam)?, seed)?,
            };
            gen_replica(&DegreeSequence::of(&target), crate::rng::derive_seed(seed, 1))?
        }
        "cycle" => gen_family(&FamilySpec::Cycle(need(a.n, "-n", fam)?))?,
        "complete" => gen_family(&FamilySpec::Complete(need(a.n, "-n", fam)?))?,
        "grid" => gen_family(&format!("grid:{}", need(a.dims, "--dims", fam)?).parse()?)?,
        "hex" => gen_family(&FamilySpec::HexLattice {
            rows: need(a.rows, "--rows", fam)?,
            cols: need(a.cols, "--cols", fam)?,
        })?,
        "tri" => gen_family(&FamilySpec::TriLattice {
            rows: need(a.rows, "--rows", fam)?,
            cols: need(a.cols, "--cols", fam)?,
        })?,
        other => return Err(Failure::Input(format!("unknown family `{other}`"))),
    };
    if let Some(path) = &a.out {
        write_output(path, &write_edge_list(&g))?;
    }
    println!("n={} m={}", g.n(), g.m());
    Ok(())
}

fn cmd_solve(a: SolveArgs) -> CliResult {
    let algo: Algorithm = a.algo.parse()?;
    if a.k == 0 {
        return Err(Failure::Input("-k must be at least 1".into()));
    }
    let train = a.train.apply()?;
    let g = read_input(&a.input)?;
    let seed = seed_or_default(a.seed);

    let coloring = if let (Algorithm::ModGcn, Some(path)) = (algo, &a.trace) {
        let out = mod_gcn(&g, a.k, &train.with_seed(seed), None)?;
        write_output(path, &trace_csv(&out.trace))?;
        out.hard
    } else {
        Solver::new(algo).with_train(train).solve(&g, a.k, seed)?
    };
    let loss = loss_hard(&g, &coloring)?;
    if let Some(path) = &a.out {
        write_output(path, &coloring.to_text())?;
    }
    println!("loss={loss} proper={} k={} seed={seed}", loss == 0, a.k);
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> CliResult {
    let text = fs::read_to_string(&a.config)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.config.display())))?;
    let mut cfg = BenchConfig::parse(&text)?;
    if let Some(jobs) = a.jobs {
        cfg.jobs = jobs.max(1);
    }
    let records = cfg.run()?;
    emit(a.out.as_ref(), &records_to_csv(&records, a.timing))?;
    eprint!("{}", summary_text(&summarize(&records)));
    Ok(())
}

fn cmd_case_study(a: CaseStudyArgs) -> CliResult {
    let algo: Algorithm = a.algo.parse()?;
    let solver = Solver::new(algo).with_train(a.train.apply()?);
    let g = read_input(&a.input)?;
    let plan = CaseStudyPlan {
        k_range: a.k_min.unwrap_or(a.k)..=a.k_max.unwrap_or(a.k),
        table_k: a.k,
        runs: a.runs,
        base_seed: seed_or_default(a.seed),
    };
    let name = a.name.clone().unwrap_or_else(|| {
        a.input
            .graph
            .file_stem()
            .map_or("graph".into(), |s| s.to_string_lossy().into_owned())
    });
    let row = case_study(&name, &g, &solver, &plan)?;
    if let (Some(path), Some(w)) = (&a.witness, &row.witness) {
        write_output(path, &w.to_text())?;
    }
    let (csv, text) = case_study_table(std::slice::from_ref(&row));
    if let Some(path) = &a.csv {
        write_output(path, &csv)?;
    }
    print!("{text}");
    Ok(())
}

fn cmd_oversmooth(a: OversmoothArgs) -> CliResult {
    let train = a.train.apply()?;
    let seed = seed_or_default(a.seed);
    let mut rows = Vec::new();
    for &depth in &a.depth {
        for &dropout in &a.dropout {
            for &n in &a.n {
                let density = oversmoothing_threshold(n, depth, dropout, seed, &train)?;
                rows.push(OversmoothRow {
                    n,
                    depth,
                    dropout,
                    density,
                });
            }
        }
    }
    emit(a.out.as_ref(), &oversmooth_csv(&rows))
}

fn cmd_grad_check(a: GradCheckArgs) -> CliResult {
    let mut worst = 0.0f64;
    for (i, case) in grad_check_suite(a.instances, a.seed).iter().enumerate() {
        let r = case.run(a.step)?;
        println!(
            "case {i:>2}: n={:<2} depth={} k={} loss={:<15} rel={:.3e} abs={:.3e}",
            case.n,
            case.depth,
            case.k,
            case.loss.to_string(),
            r.max_rel_error,
            r.max_abs_error
        );
        worst = worst.max(r.max_rel_error);
    }
    println!("max relative error {worst:.3e} (tolerance {:.1e})", a.tol);
    if worst > a.tol {
        return Err(Failure::Internal("gradient check exceeded tolerance".into()));
    }
    Ok(())
}
