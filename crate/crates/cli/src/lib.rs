//! Command-line front end for `pretzel-core`.
//!
//! Every command writes to one sink (stdout or `--out`) and returns an exit
//! code; errors from the core map onto fixed codes so batch scripts can
//! tell them apart.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pretzel_core::alexander::find_theta_n;
use pretzel_core::certify::{
    certify_slope_with, coverage_report, sweep, CertifyOptions, CoverageReport,
};
use pretzel_core::charvariety::{knot_params, Branch};
use pretzel_core::holonomy::HolonomyPoint;
use pretzel_core::lemmas::{run_lemmas, LemmaRow, Metric};
use pretzel_core::Error;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OUT_OF_RANGE: i32 = 3;
pub const EXIT_ZERO_SLOPE: i32 = 4;
pub const EXIT_EXCLUDED: i32 = 5;

/// Worker-count override; 0 or unset means all cores.
pub const THREADS_ENV: &str = "PRETZEL_LO_THREADS";

pub const SWEEP_COLUMNS: [&str; 14] = [
    "theta",
    "y",
    "x",
    "z",
    "s",
    "r",
    "C",
    "D",
    "d2c2",
    "G",
    "phi",
    "varphi",
    "slope",
    "abs_L_minus_1_formula_vs_matrix",
];

#[derive(Debug, Parser)]
#[command(
    name = "pretzel-lo",
    version,
    about = "Elliptic representation paths and surgery-slope certificates for (-2,3,2n+1)-pretzel knots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the numeric checks for one knot; exit 0 iff every row passes.
    Lemmas(LemmasArgs),
    /// Locate θ_n and print the interval data.
    Theta(ThetaArgs),
    /// Tabulate the holonomy along one branch of the path.
    Sweep(SweepArgs),
    /// Certify a surgery slope m/l.
    Certify(CertifyArgs),
    /// Slope ranges reached by both branches, for several knots.
    Coverage(CoverageArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format; tables print as aligned text when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: i64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: i64,
    /// Bisection bracket width.
    #[arg(long, default_value = "1e-12", value_parser = parse_tol)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: i64,
    #[arg(long, value_enum)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 1000, value_parser = parse_samples)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: i64,
    /// `m/l`, or `m` for `l = 1`.
    #[arg(long, value_parser = parse_slope, allow_hyphen_values = true)]
    pub slope: (i64, i64),
    /// Must agree with the sign of the slope when given.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    /// Bracket width on θ* before the residual check.
    #[arg(long, default_value = "1e-12", value_parser = parse_tol)]
    pub tol: f64,
    /// Grid cells used to bracket θ*.
    #[arg(long, default_value_t = 1000, value_parser = parse_samples)]
    pub samples: usize,
    /// Attempt n = 4 anyway.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    /// One or more knots, comma separated.
    #[arg(long, value_parser = parse_n, value_delimiter = ',', num_args = 1.., required = true)]
    pub n: Vec<i64>,
    #[arg(long, default_value_t = 1000, value_parser = parse_samples)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

pub fn parse_n(s: &str) -> Result<i64, String> {
    let n: i64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if n < 3 {
        return Err(format!("n must be at least 3, got {n}"));
    }
    Ok(n)
}

pub fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if !(1e-14..=1e-6).contains(&t) {
        return Err(format!("tolerance must lie in [1e-14, 1e-6], got {t:e}"));
    }
    Ok(t)
}

pub fn parse_samples(s: &str) -> Result<usize, String> {
    let k: usize = s.trim().parse().map_err(|e| format!("{e}"))?;
    if k < 2 {
        return Err(format!("need at least 2 samples, got {k}"));
    }
    Ok(k)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `"m/l"` or `"m"`, reduced, with the sign carried by `m`.
pub fn parse_slope(s: &str) -> Result<(i64, i64), String> {
    let (m, l) = match s.split_once('/') {
        Some((m, l)) => (m.trim(), l.trim()),
        None => (s.trim(), "1"),
    };
    let m: i64 = m.parse().map_err(|e| format!("bad numerator {m:?}: {e}"))?;
    let l: i64 = l
        .parse()
        .map_err(|e| format!("bad denominator {l:?}: {e}"))?;
    if l == 0 {
        return Err("denominator is zero".into());
    }
    let (m, l) = if l < 0 { (-m, -l) } else { (m, l) };
    let g = gcd(m, l).max(1);
    Ok((m / g, l / g))
}

/// Exit code for an error raised by a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::OutOfRange { .. }) => EXIT_OUT_OF_RANGE,
        Some(Error::ZeroSlope) => EXIT_ZERO_SLOPE,
        Some(Error::Excluded) => EXIT_EXCLUDED,
        _ => EXIT_FAILURE,
    }
}

/// Reads the worker cap from the environment.
pub fn thread_count() -> anyhow::Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_ENV}={v:?} is not a worker count")),
        _ => Ok(0),
    }
}

/// `{:.16e}`, i.e. 17 significant digits, which round-trips every f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn sweep_row(p: &HolonomyPoint) -> [f64; 14] {
    let c = &p.coords;
    [
        p.theta,
        c.y,
        c.x,
        c.z,
        c.s,
        c.r,
        p.c,
        p.d,
        p.d2c2,
        p.g,
        p.phi,
        p.varphi,
        p.slope,
        p.l_route_gap(),
    ]
}

#[derive(Debug, Serialize)]
struct SweepRecord {
    n: i64,
    branch: Branch,
    excluded: bool,
    theta: f64,
    y: f64,
    x: f64,
    z: f64,
    s: f64,
    r: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "D")]
    d: f64,
    d2c2: f64,
    #[serde(rename = "G")]
    g: f64,
    phi: f64,
    varphi: f64,
    slope: f64,
    abs_l_minus_1_formula_vs_matrix: f64,
}

impl From<&HolonomyPoint> for SweepRecord {
    fn from(p: &HolonomyPoint) -> Self {
        let [theta, y, x, z, s, r, c, d, d2c2, g, phi, varphi, slope, gap] = sweep_row(p);
        SweepRecord {
            n: p.n,
            branch: p.branch,
            excluded: p.excluded,
            theta,
            y,
            x,
            z,
            s,
            r,
            c,
            d,
            d2c2,
            g,
            phi,
            varphi,
            slope,
            abs_l_minus_1_formula_vs_matrix: gap,
        }
    }
}

pub fn write_sweep_csv<W: Write>(points: &[HolonomyPoint], w: W) -> anyhow::Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record(SWEEP_COLUMNS)?;
    for p in points {
        wr.write_record(sweep_row(p).map(fmt_f64))?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_sweep_json<W: Write>(points: &[HolonomyPoint], mut w: W) -> anyhow::Result<()> {
    let records: Vec<SweepRecord> = points.iter().map(SweepRecord::from).collect();
    serde_json::to_writer_pretty(&mut w, &records)?;
    writeln!(w)?;
    Ok(())
}

fn metric_str(m: Metric) -> &'static str {
    match m {
        Metric::MaxResidual => "max residual <",
        Metric::MinMargin => "min margin >",
    }
}

pub fn write_lemmas_text<W: Write>(n: i64, rows: &[LemmaRow], mut w: W) -> anyhow::Result<()> {
    writeln!(w, "n = {n}")?;
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in rows {
        writeln!(
            w,
            "{:<6} {:<width$}  {:>24} {:<14} {:<6}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            fmt_f64(r.value),
            metric_str(r.metric),
            if r.threshold == 0.0 {
                "0".to_string()
            } else {
                format!("{:e}", r.threshold)
            },
            r.statement,
        )?;
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    writeln!(w, "{} of {} rows pass", rows.len() - failed, rows.len())?;
    Ok(())
}

pub fn write_lemmas_csv<W: Write>(rows: &[LemmaRow], w: W) -> anyhow::Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record([
        "name",
        "passed",
        "metric",
        "value",
        "threshold",
        "statement",
    ])?;
    for r in rows {
        let metric = match r.metric {
            Metric::MaxResidual => "max_residual",
            Metric::MinMargin => "min_margin",
        };
        wr.write_record([
            r.name.to_string(),
            r.passed.to_string(),
            metric.to_string(),
            fmt_f64(r.value),
            fmt_f64(r.threshold),
            r.statement.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct ThetaReport {
    n: i64,
    theta_n: f64,
    y_n: f64,
    alpha_n: f64,
    beta_n: f64,
    gamma_n: f64,
    residual_f: f64,
    residual_delta: f64,
    bracket_width: f64,
    excluded: bool,
}

fn theta_report(n: i64, tol: f64) -> anyhow::Result<ThetaReport> {
    let p = knot_params(n)?;
    let root = find_theta_n(n, tol)?;
    Ok(ThetaReport {
        n,
        theta_n: root.theta_n,
        y_n: 2.0 * root.theta_n.cos(),
        alpha_n: p.alpha_n,
        beta_n: p.beta_n,
        gamma_n: p.gamma_n,
        residual_f: root.residual_f,
        residual_delta: root.residual_delta,
        bracket_width: root.width(),
        excluded: p.excluded,
    })
}

fn write_theta<W: Write>(t: &ThetaReport, format: Option<Format>, mut w: W) -> anyhow::Result<()> {
    let fields = [
        ("theta_n", t.theta_n),
        ("y_n", t.y_n),
        ("alpha_n", t.alpha_n),
        ("beta_n", t.beta_n),
        ("gamma_n", t.gamma_n),
        ("residual_f", t.residual_f),
        ("residual_delta", t.residual_delta),
        ("bracket_width", t.bracket_width),
    ];
    match format {
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut w, t)?;
            writeln!(w)?;
        }
        Some(Format::Csv) => {
            let mut wr = csv_writer(w);
            let mut header = vec!["n".to_string()];
            header.extend(fields.iter().map(|f| f.0.to_string()));
            header.push("excluded".into());
            wr.write_record(&header)?;
            let mut row = vec![t.n.to_string()];
            row.extend(fields.iter().map(|f| fmt_f64(f.1)));
            row.push(t.excluded.to_string());
            wr.write_record(&row)?;
            wr.flush()?;
        }
        None => {
            writeln!(w, "{:<15} {}", "n", t.n)?;
            for (k, v) in fields {
                writeln!(w, "{k:<15} {}", fmt_f64(v))?;
            }
            if t.excluded {
                writeln!(w, "{:<15} true", "excluded")?;
            }
        }
    }
    Ok(())
}

pub fn write_coverage_csv<W: Write>(reports: &[CoverageReport], w: W) -> anyhow::Result<()> {
    let mut wr = csv_writer(w);
    wr.write_record([
        "n",
        "excluded",
        "certified_upper",
        "conjectured_upper",
        "plus_slope_min",
        "plus_slope_max",
        "minus_slope_min",
        "minus_slope_max",
    ])?;
    for r in reports {
        wr.write_record([
            r.n.to_string(),
            r.excluded.to_string(),
            r.certified_upper.to_string(),
            r.conjectured_upper.to_string(),
            fmt_f64(r.plus.min),
            fmt_f64(r.plus.max),
            fmt_f64(r.minus.min),
            fmt_f64(r.minus.max),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// Runs one command, writing its output to `w`; returns the exit code.
pub fn execute<W: Write>(cmd: &Command, mut w: W) -> anyhow::Result<i32> {
    match cmd {
        Command::Lemmas(a) => {
            let rows = run_lemmas(a.n)?;
            match a.output.format {
                None => write_lemmas_text(a.n, &rows, &mut w)?,
                Some(Format::Csv) => write_lemmas_csv(&rows, &mut w)?,
                Some(Format::Json) => {
                    serde_json::to_writer_pretty(&mut w, &rows)?;
                    writeln!(w)?;
                }
            }
            Ok(if rows.iter().all(|r| r.passed) {
                0
            } else {
                EXIT_FAILURE
            })
        }
        Command::Theta(a) => {
            write_theta(&theta_report(a.n, a.tol)?, a.output.format, &mut w)?;
            Ok(0)
        }
        Command::Sweep(a) => {
            let points = sweep(a.n, a.branch.into(), a.samples)?;
            match a.output.format {
                Some(Format::Json) => write_sweep_json(&points, &mut w)?,
                _ => write_sweep_csv(&points, &mut w)?,
            }
            Ok(0)
        }
        Command::Certify(a) => {
            let (m, l) = a.slope;
            let opts = CertifyOptions {
                theta_tol: a.tol,
                samples: a.samples,
                force: a.force,
            };
            let cert = certify_slope_with(a.n, m, l, opts)?;
            if let Some(b) = a.branch {
                if Branch::from(b) != cert.branch {
                    anyhow::bail!("slope {m}/{l} lies on the {} branch", cert.branch);
                }
            }
            match a.output.format {
                Some(Format::Csv) => {
                    let mut wr = csv_writer(&mut w);
                    wr.write_record([
                        "n",
                        "m",
                        "l",
                        "branch",
                        "theta_star",
                        "h_residual",
                        "matrix_residual",
                        "tolerance",
                        "paper_bound",
                    ])?;
                    wr.write_record([
                        cert.n.to_string(),
                        cert.m.to_string(),
                        cert.l.to_string(),
                        cert.branch.to_string(),
                        fmt_f64(cert.theta_star),
                        fmt_f64(cert.h_residual),
                        fmt_f64(cert.matrix_residual),
                        fmt_f64(cert.tolerance),
                        cert.certified_bound.to_string(),
                    ])?;
                    wr.flush()?;
                }
                _ => {
                    serde_json::to_writer_pretty(&mut w, &cert)?;
                    writeln!(w)?;
                }
            }
            Ok(0)
        }
        Command::Coverage(a) => {
            // collect() on an indexed parallel iterator keeps input order
            let reports =
                a.n.par_iter()
                    .map(|&n| coverage_report(n, a.samples))
                    .collect::<Result<Vec<_>, Error>>()?;
            match a.output.format {
                Some(Format::Json) => {
                    serde_json::to_writer_pretty(&mut w, &reports)?;
                    writeln!(w)?;
                }
                _ => write_coverage_csv(&reports, &mut w)?,
            }
            Ok(0)
        }
    }
}

fn output(cmd: &Command) -> &Output {
    match cmd {
        Command::Lemmas(a) => &a.output,
        Command::Theta(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Certify(a) => &a.output,
        Command::Coverage(a) => &a.output,
    }
}

/// Parses `args`, runs the command, and reports errors on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();

    let result = match &output(&cli.command).out {
        Some(path) => std::fs::File::create(path)
            .with_context(|| format!("cannot create {}", path.display()))
            .and_then(|f| {
                let mut buf = std::io::BufWriter::new(f);
                let code = execute(&cli.command, &mut buf)?;
                buf.flush()?;
                Ok(code)
            }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            execute(&cli.command, &mut lock)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
