//! Command-line surface: `franson-sim <analytic|montecarlo|figure2|validate> [flags]`.
//!
//! Every flag can also come from a `--config` run file (`key = value` lines);
//! flags win over file entries. Phases are converted to radians here, so the
//! rest of the program never sees the `pi` suffix.

mod config_file;
mod csv_io;
mod phase;
mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config_file::{parse_config_text, ConfigFileError};
pub use csv_io::{
    curve_path, emit_csv, format_value, metadata_lines, read_sweep_csv, sweep_csv_string, write_sweep_csv,
    ParsedSweep, TIMESTAMP_PREFIX,
};
pub use phase::{parse_phase, PhaseParseError};
pub use svg::{emit_svg, render_svg, PlotBounds, AXIS_MARGIN};

use crate::error::{Error, Result};
use crate::experiment::{
    check_conjugate_outputs, check_no_superposition_baseline, cross_validate_network, figure2_panel, run_sweep,
    Observable, Panel, SweepRange, SweepResult, SweepSpec, SweptPhase,
};
use crate::montecarlo::{worker_pool, SourceConfig};
use crate::optics::PhaseConfig;

/// Environment variable supplying the default Monte Carlo seed.
pub const SEED_ENV: &str = "FRANSON_SEED";
pub const DEFAULT_SEED: u64 = 2021;
pub const DEFAULT_MEAN_PHOTON_NUMBER: f64 = 0.012;
pub const DEFAULT_TRIALS: u64 = 10_000_000;
pub const DEFAULT_MONTE_CARLO_STEPS: usize = 25;
pub const DEFAULT_VALIDATION_GRID: usize = 21;

#[derive(Debug, Parser)]
#[command(name = "franson-sim", version, about = "Polarization-basis Franson interferometer simulator")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Sweep a closed-form observable.
    Analytic(AnalyticArgs),
    /// Sweep the Monte Carlo coincidence estimate.
    Montecarlo(MonteCarloArgs),
    /// Regenerate one figure panel.
    Figure2(Figure2Args),
    /// Cross-check network propagation against the closed forms.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Run file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path. CSV goes to stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// csv, svg or both.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    i0: Option<String>,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    /// Alice's phase φ: radians, or a multiple of π such as 0.5pi.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Bob's phase ψ.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// Total Bob path phase θ = η + ξ.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Swept phase: phi, psi or theta.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    end: Option<String>,
    #[arg(long)]
    steps: Option<String>,
}

#[derive(Debug, Args)]
struct AnalyticArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    phases: PhaseArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    /// R_AB, I_alpha, I_beta or product.
    #[arg(long)]
    observable: Option<String>,
}

#[derive(Debug, Args)]
struct MonteCarloArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    phases: PhaseArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Mean photon number per pulse.
    #[arg(long = "mean-n")]
    mean_n: Option<String>,
    /// Pulses per sweep point.
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<String>,
}

#[derive(Debug, Args)]
struct Figure2Args {
    #[command(flatten)]
    common: CommonArgs,
    /// Panel letter, a to h.
    #[arg(long)]
    panel: Option<String>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid points per phase axis.
    #[arg(long)]
    grid: Option<String>,
}

type Flags = Vec<(&'static str, Option<String>)>;

impl CommonArgs {
    fn flags(self) -> (Option<PathBuf>, Flags) {
        (
            self.config,
            vec![("out", self.out), ("format", self.format), ("i0", self.i0)],
        )
    }
}

impl PhaseArgs {
    fn flags(self) -> Flags {
        vec![
            ("phi", self.phi),
            ("psi", self.psi),
            ("theta", self.theta),
            ("eta", self.eta),
            ("xi", self.xi),
        ]
    }
}

impl SweepArgs {
    fn flags(self) -> Flags {
        vec![
            ("sweep", self.sweep),
            ("start", self.start),
            ("end", self.end),
            ("steps", self.steps),
        ]
    }
}

impl CommandArgs {
    fn into_parts(self) -> (Command, Option<PathBuf>, Flags) {
        match self {
            CommandArgs::Analytic(a) => {
                let (config, mut flags) = a.common.flags();
                flags.extend(a.phases.flags());
                flags.extend(a.sweep.flags());
                flags.push(("observable", a.observable));
                (Command::Analytic, config, flags)
            }
            CommandArgs::Montecarlo(a) => {
                let (config, mut flags) = a.common.flags();
                flags.extend(a.phases.flags());
                flags.extend(a.sweep.flags());
                flags.extend([
                    ("mean-n", a.mean_n),
                    ("trials", a.trials),
                    ("seed", a.seed),
                    ("workers", a.workers),
                ]);
                (Command::MonteCarlo, config, flags)
            }
            CommandArgs::Figure2(a) => {
                let (config, mut flags) = a.common.flags();
                flags.push(("panel", a.panel));
                (Command::Figure2, config, flags)
            }
            CommandArgs::Validate(a) => {
                let (config, mut flags) = a.common.flags();
                flags.push(("grid", a.grid));
                (Command::Validate, config, flags)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analytic,
    MonteCarlo,
    Figure2,
    Validate,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Analytic => "analytic",
            Command::MonteCarlo => "montecarlo",
            Command::Figure2 => "figure2",
            Command::Validate => "validate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

/// A fully parsed run. Phases are in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Merged raw `key → value` settings, file entries overridden by flags.
    pub parameters: BTreeMap<String, String>,
    pub phases: PhaseConfig,
    pub observable: Observable,
    pub swept: SweptPhase,
    pub range: SweepRange,
    pub i0: f64,
    pub source: SourceConfig,
    pub workers: Option<usize>,
    pub panel: Option<Panel>,
    pub grid_steps: usize,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

/// What the command line asked for.
#[derive(Debug, Clone, PartialEq)]
pub enum CliRequest {
    Run(Box<RunConfig>),
    /// `--help` or `--version` text, to print and exit successfully.
    Info(String),
}

/// Parses arguments (without the program name), reading `--config` from disk.
///
/// `env_seed` is the value of `FRANSON_SEED`, used when no seed is given.
pub fn parse_config<I, T>(args: I, env_seed: Option<&str>) -> Result<CliRequest>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_config_with(args, env_seed, |path| {
        std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
    })
}

/// [`parse_config`] with a caller-supplied run-file reader.
pub fn parse_config_with<I, T, F>(args: I, env_seed: Option<&str>, read_file: F) -> Result<CliRequest>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    F: FnOnce(&Path) -> Result<String>,
{
    let argv = std::iter::once(OsString::from("franson-sim")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(CliRequest::Info(e.render().to_string())),
                _ => Err(Error::Usage(e.render().to_string().trim_end().to_string())),
            };
        }
    };
    let (command, config_path, flags) = cli.command.into_parts();
    let allowed: Vec<&'static str> = flags.iter().map(|(k, _)| *k).collect();

    let mut parameters = BTreeMap::new();
    if let Some(path) = config_path {
        let text = read_file(&path)?;
        let entries = parse_config_text(&text)
            .map_err(|e| Error::config("config", path.display().to_string(), e.to_string()))?;
        for (key, value) in entries {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::config(
                    key,
                    value,
                    format!("unknown key for `{command}` (allowed: {})", allowed.join(", ")),
                ));
            }
            parameters.insert(key, value);
        }
    }
    for (key, value) in flags {
        if let Some(value) = value {
            parameters.insert(key.to_string(), value);
        }
    }
    build_run_config(command, parameters, env_seed).map(|c| CliRequest::Run(Box::new(c)))
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn phase(&self, key: &str) -> Result<Option<f64>> {
        self.raw(key)
            .map(|v| parse_phase(v).map_err(|e| Error::config(key, v, e.to_string())))
            .transpose()
    }

    fn positive(&self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => match v.trim().parse::<f64>() {
                Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
                Ok(_) => Err(Error::config(key, v, "must be a positive finite number")),
                Err(_) => Err(Error::config(key, v, "not a number")),
            },
        }
    }

    /// Non-negative integer; accepts exact scientific forms such as `1e7`.
    fn count(&self, key: &str, default: u64) -> Result<u64> {
        let Some(v) = self.raw(key) else {
            return Ok(default);
        };
        let v_trim = v.trim();
        if let Ok(n) = v_trim.parse::<u64>() {
            return Ok(n);
        }
        match v_trim.parse::<f64>() {
            Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= 9.0e15 => Ok(x as u64),
            _ => Err(Error::config(key, v, "expected a non-negative integer")),
        }
    }

    fn seed(&self, env_seed: Option<&str>) -> Result<u64> {
        let (key, value) = match (self.raw("seed"), env_seed) {
            (Some(v), _) => ("seed", v),
            (None, Some(v)) => (SEED_ENV, v),
            (None, None) => return Ok(DEFAULT_SEED),
        };
        let v = value.trim();
        let parsed = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
            Some(hex) => u64::from_str_radix(hex, 16),
            None => v.parse::<u64>(),
        };
        parsed.map_err(|_| Error::config(key, value, "expected an unsigned 64-bit integer"))
    }
}

fn build_run_config(command: Command, parameters: BTreeMap<String, String>, env_seed: Option<&str>) -> Result<RunConfig> {
    let p = Params(&parameters);

    let phi = p.phase("phi")?.unwrap_or(0.0);
    let psi = p.phase("psi")?.unwrap_or(0.0);
    let (eta, xi) = match (p.phase("theta")?, p.phase("eta")?, p.phase("xi")?) {
        (Some(_), Some(_), Some(_)) => {
            return Err(Error::config(
                "theta",
                p.raw("theta").unwrap_or_default(),
                "give theta or eta and xi, not all three",
            ))
        }
        (Some(theta), Some(eta), None) => (eta, theta - eta),
        (Some(theta), None, xi) => {
            let xi = xi.unwrap_or(0.0);
            (theta - xi, xi)
        }
        (None, eta, xi) => (eta.unwrap_or(0.0), xi.unwrap_or(0.0)),
    };
    let phases = PhaseConfig::new(phi, psi, eta, xi);

    let observable = match p.raw("observable") {
        None => Observable::CoincidenceRate,
        Some(v) => {
            let o: Observable = v.parse()?;
            if o.is_stochastic() {
                return Err(Error::config("observable", v, "use the montecarlo command for Monte Carlo estimates"));
            }
            o
        }
    };
    let swept = p.raw("sweep").map(str::parse).transpose()?.unwrap_or(SweptPhase::Phi);
    let default_steps = if command == Command::MonteCarlo {
        DEFAULT_MONTE_CARLO_STEPS
    } else {
        crate::experiment::POINTS_PER_TURN
    };
    let range = SweepRange::new(
        p.phase("start")?.unwrap_or(0.0),
        p.phase("end")?.unwrap_or(std::f64::consts::TAU),
        p.count("steps", default_steps as u64)? as usize,
    );
    if matches!(command, Command::Analytic | Command::MonteCarlo) {
        range.validate()?;
    }

    let i0 = p.positive("i0", 1.0)?;
    let source = SourceConfig {
        mean_photon_number: p.positive("mean-n", DEFAULT_MEAN_PHOTON_NUMBER)?,
        trials: p.count("trials", DEFAULT_TRIALS)?,
        seed: p.seed(env_seed)?,
        i0,
    };
    if command == Command::MonteCarlo && source.trials == 0 {
        return Err(Error::config("trials", "0", "at least one pulse is required"));
    }
    let workers = match p.raw("workers") {
        None => None,
        Some(v) => match p.count("workers", 0)? {
            0 => return Err(Error::config("workers", v, "at least one worker is required")),
            n => Some(n as usize),
        },
    };

    let panel = p.raw("panel").map(str::parse).transpose()?;
    if command == Command::Figure2 && panel.is_none() {
        return Err(Error::config("panel", "", "figure2 requires --panel <a..h>"));
    }

    let grid_steps = p.count("grid", DEFAULT_VALIDATION_GRID as u64)? as usize;
    if grid_steps < 2 {
        return Err(Error::config("grid", grid_steps.to_string(), "need at least 2 points per axis"));
    }

    let format = match p.raw("format") {
        None => OutputFormat::Csv,
        Some(v) => match v.to_ascii_lowercase().as_str() {
            "csv" => OutputFormat::Csv,
            "svg" => OutputFormat::Svg,
            "both" => OutputFormat::Both,
            _ => return Err(Error::config("format", v, "expected csv, svg or both")),
        },
    };
    let output_path = p.raw("out").map(PathBuf::from);
    if output_path.is_none() && (format != OutputFormat::Csv || command == Command::Figure2) {
        return Err(Error::config("out", "", format!("`{command}` with this format needs --out")));
    }

    Ok(RunConfig {
        command,
        parameters,
        phases,
        observable,
        swept,
        range,
        i0,
        source,
        workers,
        panel,
        grid_steps,
        output_path,
        format,
    })
}

fn write_results(results: &[SweepResult], config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let Some(out) = &config.output_path else {
        for result in results {
            write_sweep_csv(result, &mut *stdout).map_err(|e| Error::io("<stdout>", e))?;
        }
        return Ok(());
    };
    if matches!(config.format, OutputFormat::Csv | OutputFormat::Both) {
        for (i, result) in results.iter().enumerate() {
            let path = curve_path(out, i, results.len(), "csv");
            emit_csv(result, &path)?;
            let _ = writeln!(stdout, "wrote {}: {}", path.display(), csv_io::describe(result));
        }
    }
    if matches!(config.format, OutputFormat::Svg | OutputFormat::Both) {
        let path = out.with_extension("svg");
        emit_svg(results, &path)?;
        let _ = writeln!(stdout, "wrote {}", path.display());
    }
    Ok(())
}

/// Runs a parsed command, writing reports (or CSV without `--out`) to `stdout`.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    match config.command {
        Command::Analytic => {
            let mut spec = SweepSpec::analytic(config.observable, config.swept, config.range, config.phases);
            spec.i0 = config.i0;
            let result = run_sweep(&spec)?;
            write_results(std::slice::from_ref(&result), config, stdout)
        }
        Command::MonteCarlo => {
            let spec = SweepSpec::monte_carlo(config.swept, config.range, config.phases, config.source);
            let result = match config.workers {
                Some(n) => worker_pool(n)?.install(|| run_sweep(&spec))?,
                None => run_sweep(&spec)?,
            };
            write_results(std::slice::from_ref(&result), config, stdout)
        }
        Command::Figure2 => {
            let panel = config.panel.expect("figure2 parse requires a panel");
            let results = figure2_panel(panel)?;
            write_results(&results, config, stdout)
        }
        Command::Validate => {
            let reports = [
                cross_validate_network(config.grid_steps)?,
                check_conjugate_outputs(config.grid_steps)?,
                check_no_superposition_baseline(config.grid_steps, config.i0)?,
            ];
            let mut text = String::new();
            for report in &reports {
                text.push_str(&report.to_string());
            }
            let passed = reports.iter().all(|r| r.passed());
            text.push_str(if passed { "validation passed\n" } else { "validation FAILED\n" });
            if let Some(path) = &config.output_path {
                std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
            }
            stdout.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))?;
            if passed {
                Ok(())
            } else {
                Err(Error::Numeric("network validation failed".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn run(args: &[&str]) -> Result<RunConfig> {
        run_with_file(args, "")
    }

    fn run_with_file(args: &[&str], file: &str) -> Result<RunConfig> {
        match parse_config_with(args.iter().copied(), None, |_| Ok(file.to_string()))? {
            CliRequest::Run(c) => Ok(*c),
            CliRequest::Info(text) => panic!("unexpected info: {text}"),
        }
    }

    #[test]
    fn figure2_panel_and_output() {
        let c = run(&["figure2", "--panel", "g", "--out", "g.csv"]).unwrap();
        assert_eq!(c.command, Command::Figure2);
        assert_eq!(c.panel, Some(Panel::G));
        assert_eq!(c.parameters.get("panel").map(String::as_str), Some("g"));
        assert_eq!(c.output_path, Some(PathBuf::from("g.csv")));
        assert_eq!(c.format, OutputFormat::Csv);
    }

    #[test]
    fn montecarlo_literal_phases() {
        let c = run(&[
            "montecarlo", "--phi", "0.5pi", "--psi", "0", "--mean-n", "0.012", "--trials", "1000000", "--seed", "42",
        ])
        .unwrap();
        assert_eq!(c.phases.phi, FRAC_PI_2);
        assert_eq!(c.phases.psi, 0.0);
        assert_eq!(c.source.mean_photon_number, 0.012);
        assert_eq!(c.source.trials, 1_000_000);
        assert_eq!(c.source.seed, 42);
        assert_eq!(c.range.steps, DEFAULT_MONTE_CARLO_STEPS);
    }

    #[test]
    fn malformed_phase_names_key() {
        let err = run(&["analytic", "--phi", "abc"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("phi"), "{err}");
    }

    #[test]
    fn usage_errors_exit_2() {
        for args in [
            &["bogus"][..],
            &["analytic", "--panel", "g"],
            &["analytic", "--steps", "1"],
            &["analytic", "--format", "pdf"],
            &["analytic", "--format", "svg"],
            &["analytic", "--observable", "R_AB_montecarlo"],
            &["montecarlo", "--trials", "0"],
            &["montecarlo", "--workers", "0"],
            &["montecarlo", "--seed", "-1"],
            &["montecarlo", "--mean-n", "0"],
            &["figure2"],
            &["figure2", "--panel", "z", "--out", "x.csv"],
            &["validate", "--grid", "1"],
            &["analytic", "--theta", "1", "--eta", "1", "--xi", "1"],
        ] {
            let err = run(args).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}: {err}");
        }
    }

    #[test]
    fn flags_override_config_file() {
        let file = "# run\nphi = pi\npsi = 0.25pi\nsteps = 11\n";
        let c = run_with_file(&["analytic", "--config", "run.cfg", "--phi", "0"], file).unwrap();
        assert_eq!(c.phases.phi, 0.0);
        assert_eq!(c.phases.psi, PI / 4.0);
        assert_eq!(c.range.steps, 11);
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let err = run_with_file(&["analytic", "--config", "run.cfg"], "panel = g\n").unwrap_err();
        assert!(matches!(&err, Error::Config { key, .. } if key == "panel"), "{err}");
        let err = run_with_file(&["analytic", "--config", "run.cfg"], "phi 1\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn missing_config_file_is_io_error() {
        let err = parse_config(["analytic", "--config", "/nonexistent/franson.cfg"], None).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn theta_split() {
        let c = run(&["analytic", "--theta", "pi", "--xi", "0.25pi"]).unwrap();
        assert_eq!(c.phases.xi, PI / 4.0);
        assert!((c.phases.theta() - PI).abs() < 1e-15);
        let c = run(&["analytic", "--eta", "1", "--xi", "2"]).unwrap();
        assert_eq!(c.phases.theta(), 3.0);
        let c = run(&["analytic", "--theta", "-pi/2"]).unwrap();
        assert_eq!(c.phases.theta(), -FRAC_PI_2);
    }

    #[test]
    fn seed_sources() {
        let parse = |args: &[&str], env: Option<&str>| match parse_config_with(args.iter().copied(), env, |_| unreachable!()) {
            Ok(CliRequest::Run(c)) => Ok(c.source.seed),
            Ok(_) => unreachable!(),
            Err(e) => Err(e),
        };
        assert_eq!(parse(&["montecarlo"], None).unwrap(), DEFAULT_SEED);
        assert_eq!(parse(&["montecarlo"], Some("77")).unwrap(), 77);
        assert_eq!(parse(&["montecarlo", "--seed", "5"], Some("77")).unwrap(), 5);
        assert_eq!(parse(&["montecarlo", "--seed", "0xff"], None).unwrap(), 255);
        let err = parse(&["montecarlo"], Some("seven")).unwrap_err();
        assert!(err.to_string().contains(SEED_ENV));
    }

    #[test]
    fn trials_accept_exact_scientific() {
        assert_eq!(run(&["montecarlo", "--trials", "1.5e8"]).unwrap().source.trials, 150_000_000);
        assert!(run(&["montecarlo", "--trials", "1.5"]).is_err());
    }

    #[test]
    fn help_is_info() {
        let req = parse_config(["--help"], None).unwrap();
        assert!(matches!(req, CliRequest::Info(text) if text.contains("figure2")));
    }

    #[test]
    fn analytic_without_out_writes_csv_to_stdout() {
        let c = run(&["analytic", "--observable", "I_alpha", "--sweep", "psi", "--steps", "3", "--end", "pi"]).unwrap();
        let mut buf = Vec::new();
        execute(&c, &mut buf).unwrap();
        let parsed = read_sweep_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(parsed.swept_name, "psi");
        assert_eq!(parsed.rows.len(), 3);
    }

    #[test]
    fn validate_reports_pass() {
        let c = run(&["validate", "--grid", "4"]).unwrap();
        let mut buf = Vec::new();
        execute(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("[PASS]").count(), 3);
        assert!(text.ends_with("validation passed\n"));
    }
}
