use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use freediv::generic::SampleConfig;
use freediv::TermOrder;
use freediv_cli::{parse_input, run, Command, Failure, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Local,
    Global,
}

/// Logarithmic derivations and freeness checks for hypersurface germs.
#[derive(Parser, Debug)]
#[command(name = "freediv", version)]
struct Args {
    command: Command,
    /// Problem file, or `-` for standard input.
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on numerators and denominators of sampled coefficients.
    #[arg(long, default_value_t = 100)]
    coeff_bound: u64,
    #[arg(long, default_value_t = 5)]
    retries: u32,
    /// Ring used for membership tests where both make sense.
    #[arg(long, value_enum, default_value_t = Order::Local)]
    order: Order,
    #[arg(long)]
    json: bool,
    /// Degree cutoff for the jet colength oracle.
    #[arg(long, default_value_t = 8)]
    jet_cutoff: u32,
    /// Coefficient degree for the jet derivation oracle.
    #[arg(long, default_value_t = 2)]
    jet_degree: u32,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let text = match read_input(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(3);
        }
    };
    let problem = match parse_input(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(3);
        }
    };
    let sample = match SampleConfig::new(args.seed, args.coeff_bound, args.retries) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let order = match args.order {
        Order::Local => TermOrder::LocalNegDegRevLex,
        Order::Global => TermOrder::GlobalDegRevLex,
    };
    let opts = Options { sample, order, jet_cutoff: args.jet_cutoff, jet_degree: args.jet_degree };
    let mut report = match run(args.command, &opts, &problem) {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            return ExitCode::from(2);
        }
    };
    if args.timings {
        report.timings_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    if report.verdict.is_none() {
        for d in &report.diagnostics {
            eprintln!("precondition failed: {d}");
        }
    }
    if args.json {
        print!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
