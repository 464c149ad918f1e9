//! Command-line front end.
//!
//! Exit status: 0 when the answer is affirmative (nonnegative, valid, PSD),
//! 1 when it is not or could not be established, 2 on malformed input.

use crate::certify::{
    certify, from_json, to_json, verify_certificate, CertifyOptions, CertifyOutcome, Mode, NegFailReason,
};
use crate::poly::rational::{format_fraction, parse_rational, Rational};
use crate::poly::{parse_poly, parse_poly_auto, MvPoly};
use crate::sospert::{certify_sos_perturbed, sos_pert_threshold};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polycert",
    version,
    about = "Exact nonnegativity certificates for real polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide nonnegativity and write a certificate file.
    Certify {
        #[command(flatten)]
        source: Source,
        /// Stage selection: auto, pos, neg or nopert.
        #[arg(long, default_value = "auto")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid parameter for shift points and perturbation candidates.
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// Certificate path.
        #[arg(long, default_value = "certificate.json")]
        out: PathBuf,
    },
    /// Check a certificate file against a polynomial.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cert: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram matrix check for f + ε(1 + ‖X‖²)^t.
    Sospert {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Degree parameter; defaults to the guaranteed threshold.
        #[arg(long)]
        t: Option<u32>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact value of the polynomial at a rational point.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Comma-separated coordinates such as "1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Polynomial text in x1, x2, …
    #[arg(long)]
    poly: Option<String>,
    /// File holding the polynomial text.
    #[arg(long)]
    input: Option<PathBuf>,
}

struct InputError(String);

impl Source {
    fn text(&self) -> Result<String, InputError> {
        match (&self.poly, &self.input) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| InputError(format!("{}: {e}", path.display()))),
            (None, None) => Err(InputError("no polynomial given".into())),
        }
    }

    fn parse(&self, min_vars: usize) -> Result<MvPoly, InputError> {
        let text = self.text()?;
        parse_poly_auto(&text, min_vars).map_err(|e| InputError(format!("polynomial: {e}")))
    }
}

/// Runs one command; `argv[0]` is the program name.
pub fn run_cli<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if shown { write!(out, "{e}") } else { write!(err, "{e}") };
            return if shown { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = match cli.command {
        Command::Certify {
            source,
            mode,
            seed,
            k,
            out: path,
        } => run_certify(&source, &mode, seed, k, &path, out),
        Command::Verify {
            source,
            cert,
            out: path,
        } => run_verify(&source, &cert, path.as_deref(), out),
        Command::Sospert {
            source,
            epsilon,
            t,
            out: path,
        } => run_sospert(&source, &epsilon, t, path.as_deref(), out),
        Command::Eval { source, point } => run_eval(&source, &point, out),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn point_text(p: &[Rational]) -> String {
    p.iter().map(format_fraction).collect::<Vec<_>>().join(",")
}

fn run_certify(
    source: &Source,
    mode: &str,
    seed: u64,
    k: u32,
    path: &std::path::Path,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let f = source.parse(1)?;
    let mode = Mode::parse(mode).ok_or_else(|| InputError(format!("unknown mode {mode:?}")))?;
    let opts = CertifyOptions { mode, seed, k };
    let run = certify(&f, &opts).map_err(|e| InputError(e.to_string()));
    let run = match run {
        Ok(r) => r,
        Err(InputError(msg)) => {
            let _ = writeln!(out, "UNDECIDED: {msg}");
            return Ok(EXIT_NO);
        }
    };
    let cert = match run.outcome {
        CertifyOutcome::Certificate(c) => c,
        CertifyOutcome::NegFail(fail) => {
            let why = match fail.reason {
                NegFailReason::NonPositiveAt(p) => {
                    format!("perturbed polynomial is not positive at {}", point_text(&p))
                }
                NegFailReason::WindowExhausted => "no admissible λ in the candidate window".to_string(),
            };
            let _ = writeln!(out, "UNDECIDED: negative perturbation stage failed: {why}");
            return Ok(EXIT_NO);
        }
    };
    write_file(path, &to_json(&cert))?;
    let _ = writeln!(out, "certificate: {}", path.display());
    if cert.nonneg {
        let _ = writeln!(out, "NONNEGATIVE ({})", cert.pert_type.as_str());
        if cert.proves_strict_positivity() {
            let _ = writeln!(out, "STRICTLY POSITIVE (negative perturbation certificate)");
        }
        Ok(EXIT_OK)
    } else {
        let w = cert.witness.as_ref().expect("negative certificates carry a witness");
        let _ = writeln!(
            out,
            "NEGATIVE at ({}): value {}",
            point_text(&w.point),
            format_fraction(&w.value)
        );
        Ok(EXIT_NO)
    }
}

fn run_verify(
    source: &Source,
    cert_path: &std::path::Path,
    path: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let text = std::fs::read_to_string(cert_path).map_err(|e| InputError(format!("{}: {e}", cert_path.display())))?;
    let cert = from_json(&text).map_err(|e| InputError(format!("{}: {e}", cert_path.display())))?;
    let f = parse_poly(&source.text()?, &cert.variables).map_err(|e| InputError(format!("polynomial: {e}")))?;
    let report = verify_certificate(&f, &cert);
    let json = report.to_json();
    if let Some(p) = path {
        write_file(p, &json)?;
    }
    let _ = write!(out, "{json}");
    let _ = writeln!(out, "{}", if report.valid { "VALID" } else { "INVALID" });
    Ok(if report.valid { EXIT_OK } else { EXIT_NO })
}

fn run_sospert(
    source: &Source,
    epsilon: &str,
    t: Option<u32>,
    path: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let f = source.parse(1)?;
    let eps = parse_rational(epsilon).map_err(|e| InputError(format!("epsilon: {e}")))?;
    let t = match t {
        Some(t) => t,
        None => sos_pert_threshold(&f, &eps).map_err(|e| InputError(e.to_string()))?,
    };
    let r = certify_sos_perturbed(&f, &eps, t).map_err(|e| InputError(e.to_string()))?;
    let json = r.to_json();
    if let Some(p) = path {
        write_file(p, &json)?;
    }
    let _ = write!(out, "{json}");
    let _ = writeln!(out, "{}", if r.report.psd { "PSD" } else { "NOT PSD" });
    Ok(if r.report.psd { EXIT_OK } else { EXIT_NO })
}

fn run_eval(source: &Source, point: &str, out: &mut dyn Write) -> Result<i32, InputError> {
    let coords: Vec<Rational> = point
        .split(',')
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| InputError(format!("point coordinate {}: {e}", i + 1))))
        .collect::<Result<_, _>>()?;
    let f = source.parse(coords.len())?;
    let v = f.eval(&coords).map_err(|e| InputError(e.to_string()))?;
    let _ = writeln!(out, "{}", format_fraction(&v));
    Ok(EXIT_OK)
}
