//! Command-line front end for the operator-growth engine.
//!
//! Every run is described by flat `key = value` settings. A config file is
//! read first and command-line flags override it. Results are tables written
//! as CSV or JSON; the metadata block records every resolved setting and a
//! command line that reproduces the run.

pub mod commands;
pub mod error;
pub mod settings;
pub mod sweep;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgAction, ArgMatches};

pub use commands::Command;
pub use error::{CliError, Result};
use settings::{Resolver, Settings, KEYS};
use table::{gnuplot_script, Format, ResultTable};

const SWEEP_ONLY: [&str; 5] = ["command", "spins", "couplings", "energies", "out-dir"];

/// Runs `command` and prefixes its table with the run description.
pub fn run_command(command: Command, settings: &Settings) -> Result<ResultTable> {
    let r = Resolver::new(settings);
    Format::parse(&r.string("format", "csv"))?;
    let body = command.run(&r)?;
    let echo = r.echo();
    let mut t = ResultTable::default();
    t.meta("command", command.name());
    t.meta("version", env!("CARGO_PKG_VERSION"));
    for (k, v) in &echo {
        t.meta(format!("setting.{k}"), v);
    }
    let mut rerun = format!("krylov {}", command.name());
    for (k, v) in &echo {
        rerun.push_str(&format!(" --{k} {v}"));
    }
    t.meta("rerun", rerun);
    t.metadata.extend(body.metadata);
    t.columns = body.columns;
    Ok(t)
}

pub(crate) fn write_file(path: &Path, table: &ResultTable, format: Format) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path.display(), e))?;
    let mut out = std::io::BufWriter::new(file);
    table
        .write(format, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io(path.display(), e))
}

fn about(name: &str) -> &'static str {
    match name {
        "lanczos" => "Lanczos coefficients b_n of a quantum model",
        "kcomplexity" => "Krylov complexity K(t) and auto-correlation C(t)",
        "otoc" => "Out-of-time-order correlator of the seed operator",
        "microcanonical" => "Microcanonical b_n with smooth and alternating parts",
        "classical-alpha" => "Classical growth rate alpha(E) of the LMG model",
        "classical-saddles" => "Fixed points of the classical flow and their stability",
        "classical-lanczos" => "Lanczos coefficients from Poisson brackets on the sphere",
        "fp-bound" => "Lower bound on the FP growth rate and the saddle exponent",
        "sweep" => "Run a command over a grid of spins, couplings and energies",
        _ => "",
    }
}

fn cli() -> clap::Command {
    let flags = |sweep: bool| -> Vec<Arg> {
        let mut args = vec![Arg::new("config")
            .long("config")
            .value_name("FILE")
            .help("Read `key = value` settings from FILE; flags override them")
            .action(ArgAction::Set)];
        for key in KEYS {
            if !sweep && SWEEP_ONLY.contains(key) {
                continue;
            }
            args.push(
                Arg::new(*key)
                    .long(*key)
                    .value_name("VALUE")
                    .allow_hyphen_values(true)
                    .action(ArgAction::Set),
            );
        }
        args
    };
    let mut app = clap::Command::new("krylov")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Operator growth in collective spin models")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in Command::ALL {
        app = app.subcommand(clap::Command::new(c.name()).about(about(c.name())).args(flags(false)));
    }
    app.subcommand(clap::Command::new("sweep").about(about("sweep")).args(flags(true)))
}

fn collect_settings(m: &ArgMatches) -> Result<Settings> {
    let mut s = match m.get_one::<String>("config") {
        Some(path) => Settings::read(Path::new(path))?,
        None => Settings::default(),
    };
    let mut flags = Settings::default();
    for key in KEYS {
        if let Ok(Some(v)) = m.try_get_one::<String>(key) {
            flags.set(key, v)?;
        }
    }
    s.overlay(&flags);
    Ok(s)
}

fn emit(command: Command, settings: &Settings) -> Result<()> {
    let format = Format::parse(settings.get("format").unwrap_or("csv"))?;
    let output = settings.get("output").map(PathBuf::from);
    let gnuplot = settings.get("gnuplot").map(PathBuf::from);
    if let Some(g) = &gnuplot {
        if format != Format::Csv {
            return Err(CliError::Config("`gnuplot` needs CSV output".into()));
        }
        let Some(out) = &output else {
            return Err(CliError::Config("`gnuplot` needs `output` so the script can name the data file".into()));
        };
        if g == out {
            return Err(CliError::Config("`gnuplot` and `output` must differ".into()));
        }
    }
    let table = run_command(command, settings)?;
    match &output {
        Some(path) => write_file(path, &table, format)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table
                .write(format, &mut lock)
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::io("stdout", e))?;
        }
    }
    if let (Some(g), Some(out)) = (&gnuplot, &output) {
        let data = out.file_name().map_or_else(|| out.display().to_string(), |n| n.to_string_lossy().into_owned());
        let script = gnuplot_script(&table, &data, command.name(), command.log_plot());
        std::fs::write(g, script).map_err(|e| CliError::io(g.display(), e))?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let result = collect_settings(sub).and_then(|settings| {
        if name == "sweep" {
            let report = sweep::run_sweep(&settings)?;
            let mut err = std::io::stderr();
            for p in &report.runs {
                let _ = writeln!(err, "wrote {}", p.display());
            }
            println!("{}", report.merged.display());
            Ok(())
        } else {
            emit(Command::from_name(name)?, &settings)
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            e.exit_code()
        }
    }
}
