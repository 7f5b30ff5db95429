//! `tss`: command-line front end for the tss-core solvers.
//!
//! Exit status: 0 for YES or success, 1 for NO, 2 for usage and input errors.

mod commands;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "tss", version, about = "Exact solvers for Target Set Selection")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether some X with |X| <= k activates at least l vertices.
    Solve(SolveArgs),
    /// Print a minimum perfect target set.
    Perfect(PerfectArgs),
    /// Run the activation process from a seed set and print every round.
    Simulate(SetArgs),
    /// List the minimal partial vertex covers of the graph.
    EnumMpvc(EnumArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Build the Target Set Selection instance for a Clique query.
    Reduce(ReduceArgs),
    /// Equalize thresholds to t with star gadgets.
    Gadget(GadgetArgs),
    /// Build a perfect target set of size at most floor(0.45n).
    Construct(ConstructArgs),
    /// Time solvers over instance files and print CSV.
    Bench(BenchArgs),
    /// Check that a seed set meets the file's query.
    Verify(SetArgs),
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Instance file, or `-` for standard input.
    file: PathBuf,
    /// Clamp out-of-range k and l to n instead of rejecting them.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug, Clone)]
struct QueryArgs {
    /// Budget; overrides the file's `q` line.
    #[arg(long)]
    k: Option<usize>,
    /// Activation target; overrides the file's `q` line.
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    query: QueryArgs,
    /// auto, oracle, bounded, thr2, thr3, third or dual.
    #[arg(long, default_value = "auto")]
    algo: solve::Algo,
    /// Threshold bound for `bounded` (default: largest threshold).
    #[arg(long)]
    t: Option<usize>,
    /// Dual bound for `dual` (default: largest dual threshold).
    #[arg(long)]
    d: Option<usize>,
    /// Print solver counters as key=value lines.
    #[arg(long)]
    stats: bool,
    /// Print a single JSON record.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PerfectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// oracle, thr2, thr3 or dual.
    #[arg(long, default_value = "oracle")]
    algo: solve::Algo,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct SetArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    query: QueryArgs,
    /// Comma-separated 1-based vertex ids; may be empty.
    #[arg(long, default_value = "")]
    set: String,
}

#[derive(Args, Debug)]
struct EnumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Degree bound; must exceed the maximum degree.
    #[arg(long)]
    t: usize,
    #[arg(long)]
    count_only: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// gnp:<p> or regular:<d>.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    /// const:<t>, ratio-third, dual:<d> or uniform:<max>.
    #[arg(long)]
    thr: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    query: QueryArgs,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Graph file (thresholds and query are ignored).
    #[arg(long)]
    from_clique: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    t: usize,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Fail unless the result is within floor(0.45n).
    #[arg(long)]
    bound045: bool,
    #[arg(long, default_value_t = tss_core::degree_ratio::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BenchArgs {
    files: Vec<PathBuf>,
    /// Comma-separated list of algorithms.
    #[arg(long, default_value = "auto")]
    algo: String,
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long)]
    force: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = match cli.command {
        Command::Solve(a) => solve::run_solve(&a, &mut out),
        Command::Perfect(a) => solve::run_perfect(&a, &mut out),
        Command::Simulate(a) => commands::simulate(&a, &mut out),
        Command::EnumMpvc(a) => commands::enum_mpvc(&a, &mut out),
        Command::Gen(a) => commands::gen(&a, &mut out),
        Command::Reduce(a) => commands::reduce(&a, &mut out),
        Command::Gadget(a) => commands::gadget(&a, &mut out),
        Command::Construct(a) => commands::construct(&a, &mut out),
        Command::Bench(a) => solve::run_bench(&a, &mut out),
        Command::Verify(a) => commands::verify(&a, &mut out),
    };
    print!("{out}");
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
