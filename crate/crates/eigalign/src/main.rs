use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eigalign::reports::{
    eig1_report, perturb_report, spectral_stats, toy_analytic_report, toy_critical_report,
    toy_mc_report,
};
use eigalign::{emit, run_sweep, ExperimentError, Format, Mode, NoiseGrid, Result, SweepConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "eigalign",
    version,
    about = "Spectral alignment of correlated GOE matrices"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format of sweeps.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Sizes N, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Replicates per cell.
    #[arg(long)]
    replicates: Option<u64>,
    /// Master seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow sizes above the desk-scale ceiling.
    #[arg(long)]
    allow_large: bool,
    /// Write 0 in the runtime column so outputs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Mean EIG1 overlap over a (N, σ) grid.
    SweepEig1 {
        #[command(flatten)]
        common: SweepArgs,
        /// Raw noise levels σ.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "scaled_sigma",
            required_unless_present = "scaled_sigma"
        )]
        sigma: Vec<f64>,
        /// Scaled noise levels σ·N^{7/6}.
        #[arg(long, value_delimiter = ',')]
        scaled_sigma: Vec<f64>,
    },
    /// Toy-model p(N, s) over a (N, s) grid.
    SweepToy {
        #[command(flatten)]
        common: SweepArgs,
        /// Raw noise levels s.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "scaled_s",
            required_unless_present = "scaled_s"
        )]
        s: Vec<f64>,
        /// Scaled noise levels s·N.
        #[arg(long, value_delimiter = ',')]
        scaled_s: Vec<f64>,
        /// Evaluate by quadrature instead of sampling.
        #[arg(long)]
        analytic: bool,
    },
    /// EIG1 on a single planted instance (JSON).
    Eig1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Monte Carlo p(N, s) (JSON).
    ToyMc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 10_000)]
        replicates: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Quadrature p(N, s) (JSON).
    ToyAnalytic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: f64,
    },
    /// Limit of p(N, c/N) as N grows (JSON).
    ToyCritical {
        #[arg(long)]
        c: f64,
    },
    /// Top-eigenvector perturbation diagnostics (JSON).
    PerturbReport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// GOE gap statistics and fitted exponents (JSON).
    SpectralStats {
        /// Sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn sweep(
    mode: Mode,
    common: SweepArgs,
    raw: Vec<f64>,
    scaled: Vec<f64>,
    default_replicates: u64,
    cli: (Option<usize>, Format),
) -> Result<()> {
    let noise = if raw.is_empty() {
        NoiseGrid::Scaled(scaled)
    } else {
        NoiseGrid::Raw(raw)
    };
    let mut config = SweepConfig::new(
        mode,
        common.sizes,
        noise,
        common.replicates.unwrap_or(default_replicates),
        common.seed,
    );
    config.threads = cli.0;
    config.output_format = cli.1;
    config.output_path = common.out;
    config.allow_large = common.allow_large;
    config.record_timing = !common.no_timing;
    let result = run_sweep(&config)?;
    emit(&result, config.output_format, config.output_path.as_deref())
}

fn run(cli: Cli) -> Result<()> {
    if cli.threads == Some(0) {
        return Err(ExperimentError::InvalidConfig(
            "threads must be at least 1".into(),
        ));
    }
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let globals = (cli.threads, format);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build()?;
    pool.install(|| match cli.command {
        Command::SweepEig1 {
            common,
            sigma,
            scaled_sigma,
        } => sweep(Mode::Eig1, common, sigma, scaled_sigma, 20, globals),
        Command::SweepToy {
            common,
            s,
            scaled_s,
            analytic,
        } => {
            let mode = if analytic {
                Mode::ToyAnalytic
            } else {
                Mode::ToyMc
            };
            sweep(mode, common, s, scaled_s, 10_000, globals)
        }
        Command::Eig1 { n, sigma, seed } => print_json(&eig1_report(n, sigma, seed)?),
        Command::ToyMc {
            n,
            s,
            replicates,
            seed,
        } => print_json(&toy_mc_report(n, s, replicates, seed)?),
        Command::ToyAnalytic { n, s } => print_json(&toy_analytic_report(n, s)?),
        Command::ToyCritical { c } => print_json(&toy_critical_report(c)?),
        Command::PerturbReport { n, sigma, seed } => print_json(&perturb_report(n, sigma, seed)?),
        Command::SpectralStats { n, trials, seed } => {
            print_json(&spectral_stats(&n, trials, seed)?)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
