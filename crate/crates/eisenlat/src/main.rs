//! Command-line driver: verification suites and machine-readable
//! certificates for the Eisenstein lattice toolkit.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure or an
//! invalid mathematical input, 2 on usage errors.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eisenlat::gamma::GenSet;
use eisenlat::lattice::{Frame, HermGram, LatVec};
use eisenlat::suites::{self, DEFAULT_BOUND, DEFAULT_SEED, SUITES};
use eisenlat::EisInt;

#[derive(Parser)]
#[command(
    name = "eisenlat",
    about = "Exact verification for the Eisenstein hermitian lattice of signature (4,1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const COORD_HELP: &str = "five comma-separated entries over Z[w]; each entry is a sum of terms \
like '3', '-1+2w', '2-wb' where w is the cube root of unity and wb its conjugate";

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report to stdout.
    Verify {
        /// one of: relations, translations, f3, arrangement, reduction,
        /// milnor, classify, torsion, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// enumeration bound for the arrangement scans
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// seed for every randomized corpus
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// also write the JSON report to this path
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Reduce a primitive null vector (hyperbolic frame) to a unit multiple
    /// of rho and print the certificate as JSON.
    ReduceNull {
        /// the vector; five entries in hyperbolic coordinates (l1,l2,l3;mu,nu)
        #[arg(help = COORD_HELP)]
        vector: String,
        /// also write the certificate to this path
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
    /// Classify a negative-norm vector in diag(-1,1,1,1,1) coordinates.
    Classify {
        #[arg(help = COORD_HELP)]
        vector: String,
        /// also write the report to this path
        #[arg(long)]
        json: Option<std::path::PathBuf>,
    },
}

fn parse_vector(s: &str, frame: Frame) -> Result<LatVec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(format!("expected 5 comma-separated entries, got {}", parts.len()));
    }
    let coords: Result<Vec<EisInt>, _> = parts.iter().map(|p| EisInt::parse(p)).collect();
    match coords {
        Ok(c) => Ok(LatVec::new(frame, c)),
        Err(e) => Err(format!("{e}")),
    }
}

fn emit(value: &serde_json::Value, path: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // tolerate a closed pipe on stdout
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        other => other?,
    }
    if let Some(p) = path {
        let mut f = std::fs::File::create(p)?;
        writeln!(f, "{text}")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            bound,
            seed,
            json,
        } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                eprintln!(
                    "error: unknown suite '{suite}'; valid names: {}, all",
                    SUITES.join(", ")
                );
                return ExitCode::from(2);
            }
            let start = std::time::Instant::now();
            let report = if suite == "all" {
                suites::run_all(bound, seed)
            } else {
                suites::run_suite(&suite, bound, seed).expect("validated above")
            };
            let value = serde_json::to_value(&report).expect("serializable");
            if emit(&value, &json).is_err() {
                eprintln!("error: could not write the JSON report");
                return ExitCode::from(2);
            }
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| c.status == "fail")
                .map(|c| c.name.as_str())
                .collect();
            eprintln!(
                "suite '{}': {} checks, {} failed, {:.2?}",
                report.suite,
                report.checks.len(),
                failed.len(),
                start.elapsed()
            );
            for f in &failed {
                eprintln!("  FAIL {f}");
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::ReduceNull { vector, json } => {
            let v = match parse_vector(&vector, Frame::Hyp5) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let gens = GenSet::standard();
            match eisenlat::gamma::reduce_null(&gens, &v) {
                Ok(cert) => {
                    let value = suites::certificate_json(&cert);
                    if emit(&value, &json).is_err() {
                        eprintln!("error: could not write the certificate");
                        return ExitCode::from(2);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Classify { vector, json } => {
            let v = match parse_vector(&vector, Frame::Diag5) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let _ = HermGram::diag5();
            match eisenlat::classify::classify_vector(&v) {
                Ok(c) => {
                    let value = suites::classification_json(&v, &c);
                    if emit(&value, &json).is_err() {
                        eprintln!("error: could not write the report");
                        return ExitCode::from(2);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
