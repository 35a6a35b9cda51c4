//! Cartesian parameter sweeps run in parallel with deterministic output.

use std::path::PathBuf;

use rayon::prelude::*;

use crate::commands::Command;
use crate::error::{CliError, Result};
use crate::settings::{Resolver, Settings};
use crate::table::{Format, ResultTable};
use crate::{run_command, write_file};

const SWEEP_KEYS: [&str; 5] = ["command", "spins", "couplings", "energies", "out-dir"];

/// One point of the sweep grid. `None` leaves the base setting in place.
#[derive(Debug, Clone, Copy)]
struct Job {
    spin: Option<f64>,
    coupling: Option<f64>,
    energy: Option<f64>,
}

fn axis(list: Option<Vec<f64>>) -> Vec<Option<f64>> {
    match list {
        Some(v) => v.into_iter().map(Some).collect(),
        None => vec![None],
    }
}

/// Worker count from `KRYLOV_THREADS`, or rayon's default when unset.
fn thread_count() -> Result<usize> {
    match std::env::var("KRYLOV_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Config(format!("KRYLOV_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(0),
    }
}

pub struct SweepReport {
    pub runs: Vec<PathBuf>,
    pub merged: PathBuf,
}

/// Runs every job, writes `run-NNN.<ext>` per job and a merged table.
pub fn run_sweep(settings: &Settings) -> Result<SweepReport> {
    let r = Resolver::new(settings);
    let command = Command::from_name(&r.string("command", "lanczos"))?;
    let out_dir = PathBuf::from(
        r.optional_string("out-dir")
            .ok_or_else(|| CliError::Config("sweep needs `out-dir`".into()))?,
    );
    let format = Format::parse(settings.get("format").unwrap_or("csv"))?;
    let mut jobs = Vec::new();
    for spin in axis(r.f64_list("spins")?) {
        for coupling in axis(r.f64_list("couplings")?) {
            for energy in axis(r.f64_list("energies")?) {
                jobs.push(Job { spin, coupling, energy });
            }
        }
    }
    let mut base = settings.clone();
    for key in SWEEP_KEYS.iter().chain(&["output", "gnuplot"]) {
        base.remove(key);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<(Job, ResultTable)>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let mut s = base.clone();
                for (key, value) in [("spin", job.spin), ("coupling", job.coupling), ("energy", job.energy)] {
                    if let Some(v) = value {
                        s.set(key, &v.to_string())?;
                    }
                }
                run_command(command, &s).map(|t| (*job, t))
            })
            .collect()
    });
    // Collected in job order, so the first error is the lowest-index failure.
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;

    std::fs::create_dir_all(&out_dir).map_err(|e| CliError::io(out_dir.display(), e))?;
    let mut runs = Vec::with_capacity(results.len());
    for (k, (_, table)) in results.iter().enumerate() {
        let path = out_dir.join(format!("run-{k:03}.{}", format.extension()));
        write_file(&path, table, format)?;
        runs.push(path);
    }
    let merged = merge(&results, command, &r)?;
    let merged_path = out_dir.join(format!("merged.{}", format.extension()));
    write_file(&merged_path, &merged, format)?;
    Ok(SweepReport {
        runs,
        merged: merged_path,
    })
}

fn merge(results: &[(Job, ResultTable)], command: Command, r: &Resolver) -> Result<ResultTable> {
    let mut merged = ResultTable::default();
    merged.meta("command", "sweep");
    merged.meta("version", env!("CARGO_PKG_VERSION"));
    merged.meta("sweep_command", command.name());
    for (k, v) in r.echo() {
        if k != "command" {
            merged.meta(format!("setting.{k}"), v);
        }
    }
    merged.meta("runs", results.len());
    let Some((_, first)) = results.first() else {
        return Ok(merged);
    };
    let names: Vec<&str> = first.columns.iter().map(|c| c.name.as_str()).collect();
    let mut fixed: [Vec<f64>; 4] = Default::default();
    let mut body: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (k, (job, table)) in results.iter().enumerate() {
        let these: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
        if these != names {
            return Err(CliError::Config(format!(
                "run {k} produced columns {these:?}, expected {names:?}"
            )));
        }
        let rows = table.rows();
        let run_value = |v: Option<f64>, key: &str| {
            v.or_else(|| table.meta_value(&format!("setting.{key}")).and_then(|s| s.parse().ok()))
                .unwrap_or(f64::NAN)
        };
        let row_values = [
            k as f64,
            run_value(job.spin, "spin"),
            run_value(job.coupling, "coupling"),
            run_value(job.energy, "energy"),
        ];
        for (col, v) in fixed.iter_mut().zip(row_values) {
            col.extend(std::iter::repeat_n(v, rows));
        }
        for (col, c) in body.iter_mut().zip(&table.columns) {
            col.extend_from_slice(&c.values);
        }
    }
    for (name, col) in ["run", "spin", "coupling", "energy"].into_iter().zip(fixed) {
        merged.push_column(name, col);
    }
    for (name, col) in names.iter().zip(body) {
        merged.push_column(*name, col);
    }
    Ok(merged)
}

