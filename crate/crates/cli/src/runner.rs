//! Loads a config, runs it on a sized thread pool and writes artifacts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::RunError;
use crate::experiments::{execute, ExperimentOutput};
use crate::manifest::{Diagnostics, Manifest};
use crate::table::emit_plotdata;

/// Command-line overrides applied on top of a config.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Required experiment kind when invoked through a named subcommand.
    pub expect: Option<ExperimentKind>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub dump_paths: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub exit_code: i32,
    pub out_dir: PathBuf,
    pub manifest: Manifest,
}

/// Applies overrides and checks the subcommand matches the config.
pub fn effective_config(mut config: ExperimentConfig, opts: &RunOptions) -> Result<ExperimentConfig, RunError> {
    if let Some(kind) = opts.expect {
        if kind != config.experiment {
            return Err(RunError::Validation(format!(
                "subcommand {} does not match config experiment {}",
                kind.name(),
                config.experiment.name()
            )));
        }
    }
    if let Some(seed) = opts.seed {
        config.master_seed = Some(seed);
    }
    if opts.dump_paths {
        config.dump_paths = true;
    }
    Ok(config)
}

/// Runs `config` with `threads` workers (rayon's default when `None`).
pub fn execute_with_threads(config: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentOutput, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(RunError::Validation("threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| RunError::Io(e.to_string()))?;
    pool.install(|| execute(config))
}

fn write_artifacts(dir: &Path, experiment: &str, out: &ExperimentOutput) -> Result<Vec<String>, RunError> {
    std::fs::create_dir_all(dir)?;
    let mut names = vec!["results.csv".to_string()];
    out.results.write(&dir.join("results.csv"))?;
    for (name, table) in &out.extra {
        table.write(&dir.join(name))?;
        names.push(name.clone());
    }
    for name in emit_plotdata(&dir.join("plotdata"), experiment, &out.plots)? {
        names.push(format!("plotdata/{name}"));
    }
    Ok(names)
}

/// Full run from a config file: always writes `manifest.json`, and the
/// result files when the experiment completes.
pub fn run_config_file(path: &Path, opts: &RunOptions) -> RunReport {
    let started = Instant::now();
    let loaded = ExperimentConfig::load(path).and_then(|c| effective_config(c, opts));
    let config = loaded.as_ref().ok().cloned();
    let out_dir = opts
        .out
        .clone()
        .or_else(|| config.as_ref().and_then(|c| c.output.clone()).map(PathBuf::from))
        .unwrap_or_else(|| {
            let name = config.as_ref().map(|c| c.experiment.name()).unwrap_or("run");
            PathBuf::from("out").join(name)
        });
    let threads = opts.threads.unwrap_or_else(rayon::current_num_threads);

    let mut diagnostics = Diagnostics { max_tail_bound: None, exactness: None, tolerance_failures: vec![] };
    let mut outputs = Vec::new();
    let mut summary = serde_json::Value::Null;
    let result: Result<(), RunError> = loaded.and_then(|config| {
        let out = execute_with_threads(&config, opts.threads)?;
        outputs = write_artifacts(&out_dir, config.experiment.name(), &out)?;
        diagnostics.max_tail_bound = out.max_tail_bound;
        diagnostics.exactness = out.exactness.map(|e| format!("{e:?}").to_lowercase());
        diagnostics.tolerance_failures = out.tolerance_failures.clone();
        summary = out.summary;
        if out.tolerance_failures.is_empty() {
            Ok(())
        } else {
            Err(RunError::Tolerance(out.tolerance_failures.join("; ")))
        }
    });
    let (status, exit_code, reason) = match &result {
        Ok(()) => ("ok".to_string(), 0, None),
        Err(e) => (e.status().to_string(), e.exit_code(), Some(e.reason().to_string())),
    };
    outputs.push("manifest.json".into());
    let manifest = Manifest {
        tool: "supou",
        cli_version: env!("CARGO_PKG_VERSION"),
        core_version: supou::VERSION,
        experiment: config.as_ref().map(|c| c.experiment.name().to_string()),
        status,
        exit_code,
        reason,
        master_seed: config.as_ref().map(|c| c.seed()),
        threads,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        config,
        diagnostics,
        outputs,
        summary,
    };
    let mut exit_code = exit_code;
    let written = std::fs::create_dir_all(&out_dir)
        .and_then(|_| std::fs::write(out_dir.join("manifest.json"), manifest.to_json()));
    if let Err(e) = written {
        eprintln!("cannot write manifest: {e}");
        if exit_code == 0 {
            exit_code = 1;
        }
    }
    RunReport { exit_code, out_dir, manifest }
}
