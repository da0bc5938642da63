//! The `fdsc` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 strategy incompatible with the code.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fdsc_core::css::CssCode;
use fdsc_core::groups::{depth_report, make_abelian, make_dihedral, plan_network, Elem, FiniteGroup, SolvableSeries};
use fdsc_core::synth::{best_of_greedy, synthesize, Strategy, SynthError};
use fdsc_core::verify::statevector::statevector_check;
use fdsc_core::verify::verify_circuit;

use crate::format::{build_family, parse_circuit, parse_code, parse_group, write_circuit, write_report};
use crate::scaling::{run_scaling, SweepOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCOMPATIBLE: i32 = 3;

/// Sequences are checked exhaustively while |G|^n stays at or below this.
const EXHAUSTIVE_LIMIT: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "fdsc", version, about = "Single-layer commuting CX circuits for CSS ground states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a circuit and write it as JSON.
    Synth(SynthArgs),
    /// Check a circuit against every stabilizer of a code.
    Verify(VerifyArgs),
    /// Sweep sizes and fit gate_count against L.
    Scaling(ScalingArgs),
    /// Plan and check constant-depth group multiplication networks.
    Groups(GroupsArgs),
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// ghz, toric, xcube, haah, or file:PATH
    #[arg(long)]
    code: String,
    /// Lattice size L (qubit count for ghz); ignored for file codes.
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    strategy: String,
    /// Seed for randomized greedy selection.
    #[arg(long)]
    seed: Option<u64>,
    /// Keep the best of this many seeded greedy runs.
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[command(flatten)]
    code: CodeArgs,
    /// Also compare against the state-vector oracle (at most 20 qubits).
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct ScalingArgs {
    /// ghz, toric, xcube or haah
    #[arg(long)]
    code: String,
    #[arg(long)]
    strategy: String,
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Verify every size L up to this bound.
    #[arg(long)]
    verify_upto: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Write 0 in the wall_ms column so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GroupsArgs {
    /// dihedral:N, abelian:a,b,..., or file:PATH
    #[arg(long)]
    group: String,
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<usize>,
    /// Random sequences per length when exhaustive checking is too large.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure carrying its exit code; the message goes to standard error.
struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn synth_failure(e: SynthError) -> Failure {
    match e {
        SynthError::IncompatibleStrategy { .. } | SynthError::SizeNotPowerOfTwo(_) => {
            Failure(EXIT_INCOMPATIBLE, e.to_string())
        }
        _ => usage(e),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Scaling(a) => cmd_scaling(a),
        Command::Groups(a) => cmd_groups(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("fdsc: {msg}");
            code
        }
    }
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_code(args: &CodeArgs) -> Result<CssCode, Failure> {
    if let Some(path) = args.code.strip_prefix("file:") {
        return parse_code(&read(path.as_ref())?).map_err(|e| usage(format!("{path}: {e}")));
    }
    let size = args.size.ok_or_else(|| usage("--size is required for built-in codes"))?;
    build_family(&args.code, size)
        .ok_or_else(|| usage(format!("unknown code {:?}", args.code)))?
        .map_err(usage)
}

fn parse_strategy(name: &str, seed: Option<u64>) -> Result<Strategy, Failure> {
    let strategy: Strategy = name.parse().map_err(usage)?;
    Ok(match strategy {
        Strategy::Greedy { .. } => Strategy::Greedy { seed },
        s => s,
    })
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn cmd_synth(a: SynthArgs) -> Result<i32, Failure> {
    let code = load_code(&a.code)?;
    let strategy = parse_strategy(&a.strategy, a.seed)?;
    let circ = match strategy {
        Strategy::Greedy { seed } if a.restarts > 1 => {
            let first = seed.unwrap_or(0);
            best_of_greedy(&code, first..first + a.restarts as u64)
                .map_err(synth_failure)?
                .expect("at least one restart")
                .1
        }
        s => synthesize(&code, &s).map_err(synth_failure)?,
    };
    let json = write_circuit(&circ);
    match &a.out {
        Some(p) => fs::write(p, json + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => eprintln!("fdsc: no --out given; circuit not written"),
    }
    println!(
        "{}",
        serde_json::json!({
            "gate_count": circ.gate_count(),
            "s_size": circ.plus_qubits().len(),
            "n_qubits": circ.n_qubits(),
        })
    );
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, Failure> {
    let code = load_code(&a.code)?;
    let path = a.circuit.display().to_string();
    let circ = parse_circuit(&read(&a.circuit)?).map_err(|e| usage(format!("{path}: {e}")))?;
    let report = verify_circuit(&code, &circ).map_err(usage)?;
    let oracle = if a.oracle {
        Some(statevector_check(&code, &circ).map_err(usage)?)
    } else {
        None
    };
    let pass = report.pass && oracle != Some(false);
    println!("{}", write_report(&report, oracle));
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_scaling(a: ScalingArgs) -> Result<i32, Failure> {
    if build_family(&a.code, 2).is_none() {
        return Err(usage(format!("unknown code {:?}", a.code)));
    }
    let strategy = parse_strategy(&a.strategy, a.seed)?;
    let opts = SweepOptions {
        verify_upto: a.verify_upto,
        restarts: a.restarts.max(1),
        record_timing: !a.no_timing,
    };
    let result = run_scaling(&a.code, &strategy, &a.sizes, &opts);
    for (l, msg) in &result.failures {
        eprintln!("fdsc: L={l}: {msg}");
    }
    write_output(&a.out, &result.to_csv())?;
    Ok(if result.all_verified() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad number {t:?}"))))
        .collect()
}

fn load_group(spec: &str) -> Result<(FiniteGroup, SolvableSeries), Failure> {
    if let Some(n) = spec.strip_prefix("dihedral:") {
        let n = n.trim().parse().map_err(|_| usage(format!("bad dihedral size {n:?}")))?;
        make_dihedral(n).map_err(usage)
    } else if let Some(orders) = spec.strip_prefix("abelian:") {
        make_abelian(&parse_list(orders)?).map_err(usage)
    } else if let Some(path) = spec.strip_prefix("file:") {
        parse_group(&read(path.as_ref())?).map_err(|e| usage(format!("{path}: {e}")))
    } else {
        Err(usage(format!("unknown group {spec:?}")))
    }
}

/// Every sequence of length `n` when there are few enough, otherwise `trials` random ones.
fn test_sequences(order: usize, n: usize, trials: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Elem>> {
    let total = (order as u64).checked_pow(n as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT);
    match total {
        Some(total) => (0..total)
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let g = (idx % order as u64) as Elem;
                        idx /= order as u64;
                        g
                    })
                    .collect()
            })
            .collect(),
        None => (0..trials)
            .map(|_| (0..n).map(|_| rng.random_range(0..order as Elem)).collect())
            .collect(),
    }
}

fn cmd_groups(a: GroupsArgs) -> Result<i32, Failure> {
    let (group, series) = load_group(&a.group)?;
    if a.lengths.contains(&0) {
        return Err(usage("sequence lengths must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut mismatches = 0usize;
    for &n in &a.lengths {
        let net = plan_network(&group, &series, n).map_err(usage)?;
        for seq in test_sequences(group.order(), n, a.trials, &mut rng) {
            if net.evaluate(&seq).map_err(usage)? != group.fold(&seq) {
                mismatches += 1;
            }
        }
    }
    println!("n,depth,ancillas");
    for row in depth_report(&group, &series, &a.lengths).map_err(usage)? {
        println!("{},{},{}", row.n, row.depth, row.ancilla_count);
    }
    if mismatches > 0 {
        eprintln!("fdsc: {mismatches} products disagree with the table");
        Ok(EXIT_VERIFY_FAILED)
    } else {
        Ok(EXIT_OK)
    }
}
