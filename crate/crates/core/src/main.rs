use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use quantvol::arith::{format_ratio, parse_ratio};
use quantvol::harness::{
    emit_report, hilbert_rows, info_rows, parse_polytopes, scan_conjecture, scan_delta, write_rows,
    PolytopeRecord, ReportFormat, ScanOptions, ScanReport,
};
use quantvol::hilbert::{compute_m0, compute_m0_exact, verify_m0, HrrCoefficients};
use quantvol::lattice::{EnumerationConfig, DEFAULT_POINT_BUDGET};
use quantvol::{Error, Result};

/// Lattice-point counts, Hilbert polynomials and fixed-point delta
/// invariants of toric Fano varieties, given by their anticanonical
/// polytopes.
#[derive(Parser)]
#[command(name = "quantvol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Report format.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of scanned candidates per enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_BUDGET)]
    point_budget: u64,
}

#[derive(Args)]
struct Scan {
    /// Polytope file(s), anticanonical polytopes in row layout.
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    /// Largest dilation factor.
    #[arg(long, default_value_t = 10)]
    m_max: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Reflexivity, smoothness, volume and volume bound of each polytope.
    Info {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
    },
    /// Compare h^0(-mK) with the projective-space count for m = 1..m_max.
    CheckConjecture(Scan),
    /// As check-conjecture, with the fixed-point delta of every row.
    Delta {
        #[command(flatten)]
        scan: Scan,
        /// Random bases to probe per smooth vertex and level.
        #[arg(long, default_value_t = 0)]
        probe: u64,
    },
    /// Fitted Hilbert polynomials checked against Riemann-Roch.
    Hilbert(Scan),
    /// Uniform threshold m0 beyond which every admissible X with volume
    /// below (n+1)^n has fewer sections than projective space.
    M0 {
        #[arg(long)]
        n: usize,
        /// Bound on the absolute lower coefficients, as p/q or an integer.
        #[arg(long, value_parser = parse_bound)]
        a: Option<BigRational>,
        /// Use the dimension-2 or dimension-3 Riemann-Roch family instead
        /// of a generic bound.
        #[arg(long)]
        exact: bool,
        /// Check the threshold for every m up to this value.
        #[arg(long, default_value_t = 10_000)]
        verify_to: u64,
    },
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bound(s: &str) -> std::result::Result<BigRational, String> {
    parse_ratio(s).ok_or_else(|| format!("expected p/q, found `{s}`"))
}

#[derive(Serialize)]
struct M0Row {
    n: usize,
    a: Option<String>,
    method: &'static str,
    m0: u64,
    verified_to: u64,
    counterexample: Option<String>,
}

/// Exit status: 0 clean, 2 findings, 1 errors.
#[derive(Default)]
struct Outcome {
    findings: usize,
    errors: usize,
}

impl Outcome {
    fn code(&self) -> ExitCode {
        if self.errors > 0 {
            ExitCode::from(1)
        } else if self.findings > 0 {
            ExitCode::from(2)
        } else {
            ExitCode::SUCCESS
        }
    }
}

fn load(inputs: &[PathBuf], outcome: &mut Outcome) -> Result<Vec<PolytopeRecord>> {
    let mut records = Vec::new();
    for path in inputs {
        let parsed = parse_polytopes(path)?;
        for issue in &parsed.issues {
            eprintln!(
                "error: {} (line {}): {}",
                issue.id, issue.line, issue.message
            );
        }
        outcome.errors += parsed.issues.len();
        records.extend(parsed.records);
    }
    Ok(records)
}

fn summarize(report: &ScanReport, outcome: &mut Outcome) {
    for f in &report.findings {
        let m = f.m.map(|m| format!(" m={m}")).unwrap_or_default();
        eprintln!("finding: {}{m}: {:?}: {}", f.id, f.kind, f.detail);
    }
    for n in &report.notes {
        eprintln!("note: {}: {}", n.id, n.message);
    }
    for e in &report.errors {
        let m = e.m.map(|m| format!(" m={m}")).unwrap_or_default();
        eprintln!("error: {}{m}: {}", e.id, e.message);
    }
    outcome.findings += report.findings.len();
    outcome.errors += report.errors.len();
}

fn run(cli: Cli) -> Result<Outcome> {
    let common = &cli.common;
    let mut out: Box<dyn Write> = match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            }
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let scan_options = |m_max: u64, probe: u64| ScanOptions {
        m_max,
        enumeration: EnumerationConfig {
            point_budget: common.point_budget,
        },
        probe_bases: probe,
        seed: common.seed,
    };
    let mut outcome = Outcome::default();
    match &cli.command {
        Command::Info { input } => {
            let records = load(input, &mut outcome)?;
            write_rows(&info_rows(&records), common.format, &mut out)?;
        }
        Command::CheckConjecture(scan) => {
            let records = load(&scan.input, &mut outcome)?;
            let report = scan_conjecture(&records, &scan_options(scan.m_max, 0));
            emit_report(&report.rows, common.format, &mut out)?;
            summarize(&report, &mut outcome);
        }
        Command::Delta { scan, probe } => {
            let records = load(&scan.input, &mut outcome)?;
            let report = scan_delta(&records, &scan_options(scan.m_max, *probe));
            emit_report(&report.rows, common.format, &mut out)?;
            summarize(&report, &mut outcome);
        }
        Command::Hilbert(scan) => {
            let records = load(&scan.input, &mut outcome)?;
            let (rows, report) = hilbert_rows(&records, &scan_options(scan.m_max, 0));
            write_rows(&rows, common.format, &mut out)?;
            summarize(&report, &mut outcome);
        }
        Command::M0 {
            n,
            a,
            exact,
            verify_to,
        } => {
            let row = m0_row(*n, a.as_ref(), *exact, *verify_to)?;
            if row.counterexample.is_some() {
                outcome.findings += 1;
            }
            write_rows(&[row], common.format, &mut out)?;
        }
    }
    out.flush().map_err(|e| Error::Io {
        path: "output".into(),
        message: e.to_string(),
    })?;
    Ok(outcome)
}

fn m0_row(n: usize, a: Option<&BigRational>, exact: bool, verify_to: u64) -> Result<M0Row> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if exact {
        let m0 = match n {
            2 => compute_m0_exact(2, HrrCoefficients::surface)?,
            3 => compute_m0_exact(3, HrrCoefficients::threefold)?,
            _ => return Err(Error::InvalidInput("--exact needs n = 2 or n = 3".into())),
        };
        return Ok(M0Row {
            n,
            a: None,
            method: "exact",
            m0,
            verified_to: m0,
            counterexample: None,
        });
    }
    let a = a.ok_or_else(|| Error::InvalidInput("--a is required without --exact".into()))?;
    let m0 = compute_m0(n, a)?;
    let end = verify_to.max(m0);
    let counterexample = verify_m0(n, a, m0, end).map(|(vol, m)| format!("vol={vol} m={m}"));
    Ok(M0Row {
        n,
        a: Some(format_ratio(a)),
        method: "generic",
        m0,
        verified_to: end,
        counterexample,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
