//! `chebadj`: basis conversion, adjustment certificates, and verification
//! suites from the command line.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or input error,
//! 3 internal invariant breach.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chebadj_core::cheb::{power_to_trig, trig_to_power};
use chebadj_core::scalar::parse_rational_list;
use chebadj_core::suites::{run_suite, Suite, SuiteOptions};
use chebadj_core::{construct_b, AdjustmentProblem, AnyPoly, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chebadj", version, about = "Exact cosine/power basis conversion and small-l1 adjustment certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert a polynomial JSON file between the cosine and power bases.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        output: PathBuf,
    },
    /// Build b_s..b_r with prescribed leading power-basis coefficients and write its certificate.
    Construct {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        /// Comma-separated targets a_0,...,a_{p-1} as "num/den" (integers allowed).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named verification suite and write <suite>.json and <suite>.csv.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Omit wall time so reports are byte-stable.
        #[arg(long)]
        no_timing: bool,
        /// Lift the size cap on the heavy constructor runs and include p = 3.
        #[arg(long)]
        slow: bool,
    },
    /// Evaluate a polynomial JSON file in floating point (diagnostic only).
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// Angle x for a cosine polynomial, or y = cos x for a power polynomial.
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    TrigToPower,
    PowerToTrig,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; expected one of: {}", names.join(", "))
    })
}

/// A failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Parse(_) => 2,
            Error::Singular { .. } | Error::NoConvergence { .. } | Error::IdentityViolation(_) => 3,
        };
        Self { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, mut text: String) -> Result<(), Failure> {
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn convert(input: &Path, direction: Direction, output: &Path) -> Result<u8, Failure> {
    let poly = AnyPoly::from_json(&read(input)?)?;
    let converted = match (direction, poly) {
        (Direction::TrigToPower, AnyPoly::Trig(p)) => AnyPoly::Power(trig_to_power(&p)),
        (Direction::PowerToTrig, AnyPoly::Power(p)) => AnyPoly::Trig(power_to_trig(&p)),
        (dir, p) => {
            return Err(Failure::usage(format!(
                "input basis is {:?} but direction is {}",
                p.basis(),
                dir.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
            )))
        }
    };
    write(output, converted.to_json())?;
    Ok(0)
}

fn construct(p: usize, s: usize, r: usize, a: &str, out: &Path) -> Result<u8, Failure> {
    let problem = AdjustmentProblem::new(p, s, r, parse_rational_list(a)?)?;
    let cert = construct_b(&problem)?;
    write(out, cert.to_json_pretty())?;
    println!("{}", cert.summary());
    Ok(if cert.identity_ok { 0 } else { 1 })
}

fn verify(suite: Suite, max_size: Option<usize>, out: &Path, no_timing: bool, slow: bool) -> Result<u8, Failure> {
    let options = SuiteOptions { max_size, slow, threads: None };
    let mut run = run_suite(suite, &options)?;
    if no_timing {
        run.report.wall_time_s = None;
    }
    run.write(out)?;
    let report = &run.report;
    println!(
        "{}: {} checks, {} failures{}",
        report.suite,
        report.total,
        report.failures.len(),
        report.wall_time_s.map(|t| format!(" in {t:.2}s")).unwrap_or_default()
    );
    for failure in report.failures.iter().take(10) {
        println!("  FAIL {failure}");
    }
    if report.failures.len() > 10 {
        println!("  ... {} more in {}", report.failures.len() - 10, report.outputs.join(", "));
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn eval(input: &Path, at: f64) -> Result<u8, Failure> {
    let value = match AnyPoly::from_json(&read(input)?)? {
        AnyPoly::Trig(p) => p.eval(at),
        AnyPoly::Power(p) => p.eval(at),
    };
    println!("{value:.17e}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Convert { input, direction, output } => convert(input, *direction, output),
        Command::Construct { p, s, r, a, out } => construct(*p, *s, *r, a, out),
        Command::Verify { suite, max_size, out, no_timing, slow } => verify(*suite, *max_size, out, *no_timing, *slow),
        Command::Eval { input, at } => eval(input, *at),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("chebadj: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
