//! `holink`: modular lambda, holomorphic linking numbers, the ABC Massey value
//! on `X_tau`, its Hodge diamond, grid scans and the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 domain or
//! numerical error, 4 I/O error.

mod divisor_json;
mod format;
mod scan;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holink_core::hodge::hodge_diamond_x;
use holink_core::linking::{linking, LinkingMethod};
use holink_core::massey::{massey_report, DEFAULT_NONVANISHING_TOL};
use holink_core::special::modular_lambda;
use holink_core::tolerance::Tolerances;
use holink_core::verify;
use holink_core::Tau;

use crate::divisor_json::{divisor_to_json, parse_curve_spec, parse_divisor, SchemaError};
use crate::format::{format_complex, format_sig, parse_complex};
use crate::scan::ScanGrid;

const DIGITS: usize = 15;

#[derive(Parser)]
#[command(
    name = "holink",
    version,
    about = "Holomorphic linking numbers and the ABC Massey value on X_tau"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print lambda(tau).
    Lambda {
        /// Modulus as a+bi with b > 0.
        #[arg(allow_hyphen_values = true)]
        tau: String,
    },
    /// Evaluate the Massey value on X_tau by the closed form and the linking chain.
    Massey {
        #[arg(allow_hyphen_values = true)]
        tau: String,
        /// |value| above this counts as nonvanishing.
        #[arg(long, env = "HOLINK_TOL", default_value_t = DEFAULT_NONVANISHING_TOL)]
        tol: f64,
    },
    /// Print the Hodge diamond of X and its JSON form.
    Hodge,
    /// Linking number of two divisor files.
    Link {
        z: PathBuf,
        w: PathBuf,
        /// "sphere", "elliptic:a+bi" or a bare modulus; overrides the files' curve.
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
    },
    /// Write lambda and the Massey value over a grid of tau to CSV.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_max: f64,
        #[arg(long, default_value_t = 10)]
        steps_re: usize,
        #[arg(long, default_value_t = 10)]
        steps_im: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every invariant suite with a seeded generator.
    Verify {
        /// Replace every suite threshold with this value.
        #[arg(long, env = "HOLINK_TOL")]
        tol: Option<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    /// Carries the suite report.
    VerifyFailed(String),
    Input(String),
    Domain(holink_core::Error),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::VerifyFailed(_) => 1,
            Failure::Input(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<holink_core::Error> for Failure {
    fn from(e: holink_core::Error) -> Self {
        match e {
            holink_core::Error::Validation(msg) => Failure::Input(msg),
            other => Failure::Domain(other),
        }
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        match e {
            SchemaError::Domain(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn parse_tau(text: &str) -> Result<Tau, Failure> {
    let z = parse_complex(text).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Tau::new(z)?)
}

fn cmd_lambda(tau: &str) -> Result<String, Failure> {
    let mut out = String::new();
    let lambda = modular_lambda(parse_tau(tau)?)?;
    let _ = writeln!(out, "{}", format_complex(lambda, DIGITS));
    Ok(out)
}

fn cmd_massey(tau: &str, tol: f64) -> Result<String, Failure> {
    let mut out = String::new();
    let r = massey_report(parse_tau(tau)?, tol)?;
    let c = |z| format_complex(z, DIGITS);
    let f = |x| format_sig(x, DIGITS);
    let _ = writeln!(out, "tau               {}", c(r.tau.value()));
    let _ = writeln!(out, "lambda(tau)       {}", c(r.lambda_at_tau));
    let _ = writeln!(out, "value             {}", f(r.value_closed_form));
    let _ = writeln!(out, "value_via_linking {}", f(r.value_via_linking));
    let _ = writeln!(out, "residual          {}", f(r.residual));
    let _ = writeln!(out, "tolerance         {}", f(r.tolerance));
    let _ = writeln!(out, "nonvanishing      {}", r.nonvanishing);
    if r.divergent {
        let _ = writeln!(out, "divergent         true (lambda(tau) = 1)");
    }
    let _ = writeln!(out, "1-lambda(tau)     {}", c(r.inversion.complement));
    let _ = match (r.inversion.at_negative_inverse, r.inversion.negative_inverse_residual()) {
        (Some(v), Some(res)) => writeln!(out, "lambda(-1/tau)    {} (residual {})", c(v), f(res)),
        _ => writeln!(
            out,
            "lambda(-1/tau)    unavailable (outside Im tau >= {})",
            holink_core::tau::MIN_IM_TAU
        ),
    };
    let _ = match r.inversion.at_inverse {
        Some(v) => writeln!(out, "lambda(1/tau)     {}", c(v)),
        None => writeln!(out, "lambda(1/tau)     undefined (1/tau is in the lower half-plane)"),
    };
    Ok(out)
}

fn cmd_hodge() -> Result<String, Failure> {
    let mut out = String::new();
    let dims = hodge_diamond_x();
    out.push_str(&dims.diamond());
    let doc = serde_json::json!({ "hodge": dims.matrix(), "betti": dims.betti() });
    let _ = writeln!(out, "{doc}");
    Ok(out)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_link(z: &Path, w: &Path, curve: Option<&str>) -> Result<String, Failure> {
    let mut out = String::new();
    let curve = curve.map(parse_curve_spec).transpose()?;
    let z = parse_divisor(&read(z)?, curve)?;
    let w = parse_divisor(&read(w)?, curve)?;
    let r = linking(&z, &w)?;
    let method = match r.method {
        LinkingMethod::CrossRatio => "cross-ratio",
        LinkingMethod::HalfPeriodClosedForm => "half-period closed form",
        LinkingMethod::ArakelovGreen => "arakelov-green",
    };
    let _ = writeln!(out, "curve    {}", z.curve());
    let _ = writeln!(out, "z        {}", divisor_to_json(&z));
    let _ = writeln!(out, "w        {}", divisor_to_json(&w));
    let _ = writeln!(out, "value    {}", format_sig(r.value, DIGITS));
    let _ = writeln!(out, "method   {method}");
    if let Some(check) = r.cross_check {
        let _ = writeln!(
            out,
            "check    {} (residual {})",
            format_sig(check, DIGITS),
            format_sig(r.residual, 3)
        );
    }
    Ok(out)
}

fn cmd_scan(grid: ScanGrid, path: &Path) -> Result<String, Failure> {
    let csv = scan::render(&grid)?;
    scan::write_atomically(path, &csv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(String::new())
}

fn cmd_verify(tol: Option<f64>, seed: u64) -> Result<String, Failure> {
    let tolerances = match tol {
        Some(t) if t.is_nan() || t < 0.0 => return Err(Failure::Input(format!("--tol must be non-negative, got {t}"))),
        Some(t) => Tolerances::uniform(t),
        None => Tolerances::default(),
    };
    let outcomes = verify::run_all(seed, &tolerances);
    let report = verify::summary(&outcomes);
    if outcomes.iter().all(|o| o.passed) {
        Ok(report)
    } else {
        Err(Failure::VerifyFailed(report))
    }
}

/// A closed stdout (e.g. `holink verify | head`) is not an error.
fn emit(text: &str) {
    let mut stdout = io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => eprintln!("error: writing output: {e}"),
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Lambda { tau } => cmd_lambda(tau),
        Command::Massey { tau, tol } => cmd_massey(tau, *tol),
        Command::Hodge => cmd_hodge(),
        Command::Link { z, w, curve } => cmd_link(z, w, curve.as_deref()),
        Command::Scan {
            re_min,
            re_max,
            im_min,
            im_max,
            steps_re,
            steps_im,
            out,
        } => cmd_scan(
            ScanGrid {
                re_min: *re_min,
                re_max: *re_max,
                im_min: *im_min,
                im_max: *im_max,
                steps_re: *steps_re,
                steps_im: *steps_im,
            },
            out,
        ),
        Command::Verify { tol, seed } => cmd_verify(*tol, *seed),
    };
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::VerifyFailed(report) => emit(report),
                Failure::Input(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Domain(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
