//! Command-line front end. [`run`] parses arguments, executes one command
//! and writes a JSON report; it returns the process exit code.
//!
//! Exit codes: `0` success, `1` a verification ran and failed (the report is
//! still written), `2` bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use landauer_mbqc::report::to_json_string;
use landauer_mbqc::thermo::{mbqc_heat_report, PhysicalConstants, DEFAULT_TEMPERATURE};
use landauer_mbqc::verify::{
    check_decomposition, check_no_signaling, check_one_time_pad, otp_from_mbqc,
    DEFAULT_OTP_SAMPLES, DEFAULT_TOLERANCE,
};
use landauer_mbqc::{
    enumerate_trajectories, run_pattern, LatticeProgram, OutcomeMode, PatternFile, VERSION,
};

pub const THREADS_ENV: &str = "LANDAUER_MBQC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "landauer-mbqc",
    version,
    about = "MBQC simulation, verification and heat accounting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute a pattern once with sampled outcomes.
    Run(Common),
    /// List every outcome branch with its probability and byproduct.
    Enumerate(Common),
    /// Compare trailing-region states for two leading-region strategies.
    VerifyNosignaling(NoSignalingArgs),
    /// Check the byproduct keys of the measured columns as a one-time pad.
    VerifyOtp(LayerArgs),
    /// Rebuild each post-measurement state from the logical register.
    VerifyDecomposition(LayerArgs),
    /// Entropy floors and the heat of erasing the outcome record.
    ThermoReport(ThermoArgs),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LayerArgs {
    #[command(flatten)]
    common: Common,
    /// Number of measured leading columns (default: all measured in the file).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Args)]
struct NoSignalingArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Comma-separated angles for the leading region (default: drawn from the seed).
    #[arg(long)]
    angles_a: Option<String>,
    #[arg(long)]
    angles_b: Option<String>,
}

#[derive(Debug, Args)]
struct ThermoArgs {
    #[command(flatten)]
    common: Common,
    /// Kelvin; dimensionless with --natural-units (default 300 K, or 1).
    #[arg(long)]
    temp: Option<f64>,
    #[arg(long)]
    natural_units: bool,
    /// Leave the last two layers' bits stored.
    #[arg(long)]
    no_final_erasure: bool,
}

/// Reports carry the command, seed and tool version next to their own fields.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    tool_version: &'a str,
    seed: u64,
    #[serde(flatten)]
    report: T,
}

struct Outcome {
    json: String,
    pass: bool,
}

fn emit<T: Serialize>(command: &str, seed: u64, report: T, pass: bool) -> anyhow::Result<Outcome> {
    let json = to_json_string(&Envelope {
        command,
        tool_version: VERSION,
        seed,
        report,
    })?;
    Ok(Outcome { json, pass })
}

fn load(path: &Path) -> anyhow::Result<PatternFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PatternFile::from_json(&text).with_context(|| format!("{}", path.display()))
}

fn tolerance(t: Option<f64>) -> anyhow::Result<f64> {
    match t {
        None => Ok(DEFAULT_TOLERANCE),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => bail!("--tolerance must be positive, got {t}"),
    }
}

fn parse_angles(csv: &str, flag: &str) -> anyhow::Result<Vec<f64>> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("{flag}: bad angle {s:?}"))
        })
        .collect()
}

/// Layer program from the file's layout and step angles.
fn file_program(file: &PatternFile) -> anyhow::Result<LatticeProgram> {
    Ok(LatticeProgram::from_pattern(&file.pattern()?)?)
}

#[derive(Serialize)]
struct RunReport {
    schema: &'static str,
    outcomes: String,
    probability: f64,
    outputs: Vec<usize>,
    byproduct: String,
    frame_bits: usize,
    state: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct BranchLine {
    outcomes: String,
    probability: f64,
    byproduct: String,
}

#[derive(Serialize)]
struct EnumerateReport {
    schema: &'static str,
    measured_qubits: usize,
    num_trajectories: usize,
    total_probability: f64,
    entropy_bits: f64,
    trajectories: Vec<BranchLine>,
}

/// Errors here are input errors (exit 2); `pass == false` means exit 1.
fn execute(command: Command) -> anyhow::Result<(Outcome, Option<PathBuf>)> {
    match command {
        Command::Run(c) => {
            let file = load(&c.pattern)?;
            let pattern = file.pattern()?;
            let r = run_pattern(&file.resource()?, &pattern, &OutcomeMode::Sampled(c.seed))?;
            let report = RunReport {
                schema: "engine/1",
                outcomes: r.record.bitstring(),
                probability: r.record.probability,
                outputs: pattern.outputs().to_vec(),
                byproduct: r.frame.to_pauli().label(),
                frame_bits: r.frame.num_bits(),
                state: r.state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            };
            Ok((emit("run", c.seed, report, true)?, c.out))
        }
        Command::Enumerate(c) => {
            let file = load(&c.pattern)?;
            let pattern = file.pattern()?;
            let e = enumerate_trajectories(&file.resource()?, &pattern)?;
            let report = EnumerateReport {
                schema: "engine/1",
                measured_qubits: pattern.num_measured(),
                num_trajectories: e.len(),
                total_probability: e.total_probability(),
                entropy_bits: e.entropy_bits()?,
                trajectories: e
                    .trajectories
                    .iter()
                    .map(|t| BranchLine {
                        outcomes: t.record.bitstring(),
                        probability: t.record.probability,
                        byproduct: t.frame.to_pauli().label(),
                    })
                    .collect(),
            };
            Ok((emit("enumerate", c.seed, report, true)?, c.out))
        }
        Command::VerifyNosignaling(a) => {
            let file = load(&a.common.pattern)?;
            let layout = file.layout()?;
            let count = a.r * layout.rows();
            let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
            let mut draw = || -> Vec<f64> {
                (0..count)
                    .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                    .collect()
            };
            let sa = match &a.angles_a {
                Some(s) => parse_angles(s, "--angles-a")?,
                None => draw(),
            };
            let sb = match &a.angles_b {
                Some(s) => parse_angles(s, "--angles-b")?,
                None => draw(),
            };
            let rep = check_no_signaling(
                &layout,
                &file.input_state()?,
                &sa,
                &sb,
                a.r,
                tolerance(a.tolerance)?,
            )?;
            let pass = rep.pass;
            Ok((
                emit("verify-nosignaling", a.common.seed, rep, pass)?,
                a.common.out,
            ))
        }
        Command::VerifyOtp(a) => {
            let file = load(&a.common.pattern)?;
            let program = file_program(&file)?;
            let r = a.r.unwrap_or(program.layers());
            let keys = otp_from_mbqc(&program, r)?;
            let rep = check_one_time_pad(
                &keys,
                DEFAULT_OTP_SAMPLES,
                a.common.seed,
                tolerance(a.tolerance)?,
            )?;
            let pass = rep.pass();
            Ok((emit("verify-otp", a.common.seed, rep, pass)?, a.common.out))
        }
        Command::VerifyDecomposition(a) => {
            let file = load(&a.common.pattern)?;
            let program = file_program(&file)?;
            let r = a.r.unwrap_or(program.layers());
            let rep =
                check_decomposition(&program, &file.input_state()?, r, tolerance(a.tolerance)?)?;
            let pass = rep.pass;
            Ok((
                emit("verify-decomposition", a.common.seed, rep, pass)?,
                a.common.out,
            ))
        }
        Command::ThermoReport(a) => {
            let file = load(&a.common.pattern)?;
            let (constants, default_t) = if a.natural_units {
                (PhysicalConstants::natural(), 1.0)
            } else {
                (PhysicalConstants::si(), DEFAULT_TEMPERATURE)
            };
            let t = a.temp.unwrap_or(default_t);
            let e = enumerate_trajectories(&file.resource()?, &file.pattern()?)?;
            let rep = mbqc_heat_report(&e, t, &constants, !a.no_final_erasure)?;
            let pass = rep.pass;
            Ok((
                emit("thermo-report", a.common.seed, rep, pass)?,
                a.common.out,
            ))
        }
    }
}

fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> anyhow::Result<R> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize =
                v.trim().parse().ok().filter(|&n| n > 0).with_context(|| {
                    format!("{THREADS_ENV} must be a positive integer, got {v:?}")
                })?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = with_thread_cap(|| execute(cli.command)).and_then(|r| r);
    match result {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => fs::write(&path, &outcome.json)
                    .with_context(|| format!("writing {}", path.display())),
                None => stdout
                    .write_all(outcome.json.as_bytes())
                    .map_err(Into::into),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e:#}");
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}
