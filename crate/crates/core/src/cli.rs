//! Command-line front end. Exit status: 0 when every requested check
//! passed, 1 when the analysis ran but some check failed, 2 on malformed
//! input or arguments.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::generators::{gen_banded, gen_direct_sum, gen_group_algebra, gen_random, BandedRingParams, Embedding};
use crate::group::GroupSignature;
use crate::report::{build_report, render_text, Request};
use crate::ring::GradedRing;
use crate::spec_file::RingSpecFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "graded", about = "Structure analysis of finite-dimensional graded rings with semidefinite forms")]
pub struct Cli {
    /// Report format for analysis commands.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Random vectors of E_1 tried by the simplicity oracle.
    #[arg(long = "oracle-samples", env = "GRADED_SAMPLES", default_value_t = 8)]
    pub samples: usize,
    #[arg(long, env = "GRADED_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the ring axioms.
    Validate { file: PathBuf },
    /// Connection classes of the support with certificates.
    Classes { file: PathBuf },
    /// Graded ideals attached to the connection classes.
    Decompose { file: PathBuf },
    /// Structural hypotheses and graded simplicity.
    Properties {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Graded simplicity by criterion and by ideal closure.
    Simple {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write a generated ring-spec file.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Banded matrix-unit ring graded through primes.
    Banded {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Comma-separated rational weights, each at least 1.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<String>>,
        /// Comma-separated primes for (n, t) in row-major order.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// Group algebra of a finite abelian group.
    Group {
        #[arg(long, value_delimiter = ',', required = true)]
        torsion: Vec<i64>,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// Direct sum of two ring-spec files.
    Sum {
        a: PathBuf,
        b: PathBuf,
        /// Use a shared group instead of the product of both groups.
        #[arg(long)]
        shared: bool,
        #[arg(short, long)]
        o: PathBuf,
    },
    /// Seeded random direct sum of generated summands.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
        #[arg(short, long)]
        o: PathBuf,
    },
}

struct Failure(String);

fn load(path: &Path) -> Result<GradedRing, Failure> {
    let spec = RingSpecFile::load(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    spec.to_ring().map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn parse_weight(s: &str) -> Result<BigRational, Failure> {
    s.trim().parse::<BigRational>().map_err(|_| Failure(format!("weight `{s}` is not a rational number")))
}

fn generate(cmd: GenCommand) -> Result<(GradedRing, PathBuf, serde_json::Value), Failure> {
    let gen_err = |e: crate::generators::GeneratorError| Failure(e.to_string());
    Ok(match cmd {
        GenCommand::Banded { n, r, weights, primes, o } => {
            let mut params = BandedRingParams::new(n, r);
            if let Some(w) = weights {
                params.weights = w.iter().map(|s| parse_weight(s)).collect::<Result<_, _>>()?;
            }
            params.primes = primes;
            let meta = serde_json::json!({
                "generator": "banded",
                "n": n,
                "r": r,
                "primes": params.prime_map(),
                "weights": params.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            (gen_banded(&params).map_err(gen_err)?, o, meta)
        }
        GenCommand::Group { torsion, o } => {
            let mut sorted = torsion.clone();
            sorted.sort_unstable();
            let sig = GroupSignature::new(0, sorted).map_err(|e| Failure(e.to_string()))?;
            let meta = serde_json::json!({ "generator": "group", "torsion": sig.torsion() });
            (gen_group_algebra(&sig).map_err(gen_err)?, o, meta)
        }
        GenCommand::Sum { a, b, shared, o } => {
            let (ra, rb) = (load(&a)?, load(&b)?);
            let embedding = if shared { Embedding::Shared } else { Embedding::Disjoint };
            let meta = serde_json::json!({ "generator": "sum", "shared": shared });
            (gen_direct_sum(&ra, &rb, embedding).map_err(gen_err)?, o, meta)
        }
        GenCommand::Random { seed, max_dim, o } => {
            let meta = serde_json::json!({ "generator": "random", "seed": seed, "max_dim": max_dim });
            (gen_random(seed, max_dim), o, meta)
        }
    })
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let (name, file, request) = match cli.command {
        Command::Gen(cmd) => {
            let (ring, path, meta) = generate(cmd)?;
            write(&path, &RingSpecFile::from_ring(&ring, meta).to_json())?;
            println!("wrote {} (dimension {})", path.display(), ring.dim());
            return Ok(EXIT_OK);
        }
        Command::Validate { file } => ("validate", file, Request::default()),
        Command::Classes { file } => ("classes", file, Request { classes: true, ..Request::default() }),
        Command::Decompose { file } => ("decompose", file, Request { decomposition: true, ..Request::default() }),
        Command::Properties { file, oracle } => {
            ("properties", file, Request { properties: true, samples: oracle.samples, seed: oracle.seed, ..Request::default() })
        }
        Command::Simple { file, oracle } => {
            ("simple", file, Request { simplicity: true, samples: oracle.samples, seed: oracle.seed, ..Request::default() })
        }
    };
    let ring = load(&file)?;
    let start = Instant::now();
    let mut report = build_report(name, &ring, &request);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match cli.report {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => render_text(&report),
    };
    match &cli.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_MALFORMED
        }
    }
}
