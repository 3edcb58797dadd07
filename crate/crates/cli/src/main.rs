use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use supou_cli::{run_config_file, ExperimentKind, RunOptions};

#[derive(Parser)]
#[command(name = "supou", version, about = "Exact cumulants, simulation and intermittency diagnostics for supOU processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed; overrides the config's master_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write simulated paths (simulate experiment).
    #[arg(long)]
    dump_paths: bool,
}

#[derive(Args)]
struct Named {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Run {
    /// Config file; the experiment is taken from its `experiment` field.
    #[arg(required_unless_present = "config_flag")]
    config: Option<PathBuf>,
    #[arg(long = "config", conflicts_with = "config")]
    config_flag: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and asymptotic partial-sum cumulants over a horizon grid.
    Cumulants(Named),
    /// Covariance function and the slowly varying function L*.
    Covariance(Named),
    /// Log-log scaling fits and intermittency verdicts.
    Scaling(Named),
    /// Normality diagnostics for a finite superposition.
    Clt(Named),
    /// Asymptotic constants D_m with quadrature cross-checks.
    Constants(Named),
    /// Monte Carlo k-statistics against exact cumulants.
    Simulate(Named),
    /// Any experiment, chosen by the config.
    Run(Run),
}

fn options(common: Common, expect: Option<ExperimentKind>) -> RunOptions {
    RunOptions {
        expect,
        seed: common.seed,
        threads: common.threads,
        out: common.out,
        dump_paths: common.dump_paths,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (path, opts) = match cli.command {
        Command::Run(r) => {
            let path = r.config.or(r.config_flag).expect("clap enforces a config path");
            (path, options(r.common, None))
        }
        Command::Cumulants(a) => (a.config, options(a.common, Some(ExperimentKind::Cumulants))),
        Command::Covariance(a) => (a.config, options(a.common, Some(ExperimentKind::Covariance))),
        Command::Scaling(a) => (a.config, options(a.common, Some(ExperimentKind::Scaling))),
        Command::Clt(a) => (a.config, options(a.common, Some(ExperimentKind::Clt))),
        Command::Constants(a) => (a.config, options(a.common, Some(ExperimentKind::Constants))),
        Command::Simulate(a) => (a.config, options(a.common, Some(ExperimentKind::Simulate))),
    };
    let report = run_config_file(&path, &opts);
    match &report.manifest.reason {
        Some(reason) => eprintln!("{}: {reason}", report.manifest.status),
        None => eprintln!("ok: results in {}", report.out_dir.display()),
    }
    ExitCode::from(report.exit_code as u8)
}
