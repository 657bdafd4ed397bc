//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory streams.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use binomat::laurent::{build_l, cf_expand, SeriesId};
use binomat::net::{digital_points, star_discrepancy_points, t_value, GeneratingSet};
use binomat::search::{search_third_matrix, GeneratorRegistry};
use binomat::verify::{IdentityRegistry, SweepParams, VerificationReport};
use binomat::{ExactMatrix, Family, RationalMatrix, SequenceSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable that sets the worker thread count.
pub const THREADS_ENV: &str = "BINOMAT_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "binomat",
    version,
    about = "Exact Pascal / Catalan-Hankel matrix lab"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build matrix windows and compute determinants, LDU factors and ranks.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Check an identity (or `all`, or `list` the available ones).
    Verify(VerifyArgs),
    /// Continued fractions of the Catalan Laurent series.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Dump a sequence prefix as a JSON array of decimal strings.
    Seq(SeqArgs),
    /// Digital nets: t-values, points, discrepancy and the third-matrix search.
    #[command(subcommand)]
    Net(NetCmd),
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// P1:a=<int>, M1:a=<int>, P2, M2, H1, H2 or Hankel:<sequence>.
    #[arg(long)]
    family: Family,
    /// Number of rows.
    #[arg(long)]
    n: usize,
    /// Number of columns (defaults to n).
    #[arg(long)]
    m: Option<usize>,
    /// First column.
    #[arg(long, default_value_t = 0)]
    k: usize,
}

impl WindowArgs {
    fn build(&self) -> ExactMatrix {
        self.family.window(self.n, self.m.unwrap_or(self.n), self.k)
    }

    fn label(&self) -> String {
        format!(
            "window({}, {}, {}, {})",
            self.family,
            self.n,
            self.m.unwrap_or(self.n),
            self.k
        )
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Print a window.
    Show {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: MatrixFormat,
        #[arg(long)]
        json: bool,
    },
    /// Exact determinant of a square window.
    Det {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        json: bool,
    },
    /// LDU factors of a square window.
    Ldu {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        json: bool,
    },
    /// Rank of a window reduced mod p.
    Rank {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id, `all`, or `list`.
    identity: String,
    #[arg(long)]
    n_max: Option<usize>,
    /// Inclusive range LO..HI, e.g. -5..5.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    a_range: Option<(i64, i64)>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Include wall-clock times (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Subcommand, Debug)]
enum CfCmd {
    /// Expand L1 or L2 into a continued fraction.
    Expand {
        #[arg(long)]
        series: SeriesId,
        /// Number of known series coefficients.
        #[arg(long)]
        coeffs: usize,
        /// Maximum number of partial quotients.
        #[arg(long)]
        quotients: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct SeqArgs {
    /// thue_morse, catalan, catalan_interspersed, catalan_interspersed_mod2 or paperfolding.
    kind: SequenceSpec,
    #[arg(long)]
    len: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum NetCmd {
    /// Minimal t per depth for a generating set.
    TValue {
        #[arg(long)]
        p: u64,
        /// Comma-separated families, e.g. M1:a=0,M1:a=1.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<Family>,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Points of the digital sequence.
    Points {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<Family>,
        /// Digit depth.
        #[arg(long)]
        m: usize,
        /// Number of points.
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: PointFormat,
    },
    /// Exact star discrepancy of a point CSV (dimension 1 or 2).
    Discrepancy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a third matrix next to M1(0), M1(1) mod p.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m_max: usize,
        /// Candidate generator: random, exhaustive, m1-family or p1-family.
        #[arg(long, default_value = "random")]
        strategy: String,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_INTERNAL
            }
        }
    }
}

/// Bad input discovered after parsing (unknown identity, bad prime, ...).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Matrix(cmd) => matrix(cmd, out),
        Command::Verify(args) => verify(args, out),
        Command::Cf(CfCmd::Expand {
            series,
            coeffs,
            quotients,
            json,
        }) => cf(series, coeffs, quotients, json, out),
        Command::Seq(args) => {
            let terms: Vec<String> = args
                .kind
                .prefix(args.len)
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "{}", serde_json::to_string(&terms)?)?;
            Ok(EXIT_OK)
        }
        Command::Net(cmd) => net(cmd, out),
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> anyhow::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn matrix(cmd: MatrixCmd, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        MatrixCmd::Show {
            window,
            format,
            json,
        } => {
            let m = window.build();
            match if json { MatrixFormat::Json } else { format } {
                MatrixFormat::Text => write!(out, "{m}")?,
                MatrixFormat::Json => writeln!(out, "{}", serde_json::to_string(&m)?)?,
                MatrixFormat::Csv => write_matrix_csv(&m, out)?,
            }
        }
        MatrixCmd::Det { window, json } => {
            let det = window
                .build()
                .determinant()
                .map_err(|e| usage(e.to_string()))?;
            if json {
                emit_json(
                    out,
                    &json!({ "window": window.label(), "determinant": det.to_string() }),
                )?;
            } else {
                writeln!(out, "{det}")?;
            }
        }
        MatrixCmd::Ldu { window, json } => {
            let f = window.build().ldu().map_err(|e| usage(e.to_string()))?;
            let d: Vec<String> = f.d.iter().map(rational_string).collect();
            if json {
                emit_json(
                    out,
                    &json!({
                        "window": window.label(),
                        "l": rational_matrix_json(&f.l),
                        "d": d,
                        "u": rational_matrix_json(&f.u),
                    }),
                )?;
            } else {
                writeln!(out, "L =")?;
                write!(out, "{}", f.l.map(rational_string))?;
                writeln!(out, "D = [{}]", d.join(", "))?;
                writeln!(out, "U =")?;
                write!(out, "{}", f.u.map(rational_string))?;
            }
        }
        MatrixCmd::Rank { window, p, json } => {
            let rank = window
                .build()
                .rank_mod_p(p)
                .map_err(|e| usage(e.to_string()))?;
            if json {
                emit_json(
                    out,
                    &json!({ "window": window.label(), "p": p, "rank": rank }),
                )?;
            } else {
                writeln!(out, "{rank}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_matrix_csv(m: &ExactMatrix, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    for row in m.iter_rows() {
        w.write_record(row.iter().map(ToString::to_string))?;
    }
    w.flush()?;
    Ok(())
}

/// Integers print plainly, other rationals as `num/den`.
fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rational_matrix_json(m: &RationalMatrix) -> Value {
    let entries: Vec<Vec<String>> = m
        .iter_rows()
        .map(|r| r.iter().map(rational_string).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let registry = IdentityRegistry::builtin();
    if args.identity == "list" {
        for id in registry.iter() {
            writeln!(out, "{:<22} {}", id.id(), id.description())?;
        }
        return Ok(EXIT_OK);
    }
    let params = SweepParams {
        n_max: args.n_max,
        a_range: args.a_range,
        k_max: args.k_max,
    };
    let reports: Vec<VerificationReport> = if args.identity == "all" {
        registry.run_all(&params)
    } else {
        let identity = registry.get(&args.identity).ok_or_else(|| {
            usage(format!(
                "unknown identity {:?}; available: all, list, {}",
                args.identity,
                registry.ids().join(", ")
            ))
        })?;
        vec![identity.run(&params)]
    };
    emit_reports(&reports, args.json, args.timings, out)
}

/// Prints verification reports and returns the exit status: 0 when every
/// report passed, 1 otherwise.
pub fn emit_reports(
    reports: &[VerificationReport],
    json_out: bool,
    timings: bool,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let all_passed = reports.iter().all(VerificationReport::passed);
    if json_out {
        let items: Vec<Value> = reports
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("report serializes");
                if timings {
                    v["elapsed_ms"] = json!(r.elapsed.as_millis() as u64);
                }
                v
            })
            .collect();
        emit_json(out, &json!({ "all_passed": all_passed, "reports": items }))?;
    } else {
        for r in reports {
            write!(out, "{r}")?;
            if timings {
                writeln!(out, "  elapsed: {:.3}s", r.elapsed.as_secs_f64())?;
            }
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        writeln!(out, "{passed}/{} identities passed", reports.len())?;
    }
    Ok(if all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

fn cf(
    series: SeriesId,
    coeffs: usize,
    quotients: usize,
    json_out: bool,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    if coeffs == 0 {
        return Err(usage("--coeffs must be at least 1"));
    }
    let s = build_l(series, coeffs);
    let cf = cf_expand(&s, quotients).map_err(|e| usage(e.to_string()))?;
    if json_out {
        let mut v = serde_json::to_value(&cf)?;
        v["series"] = json!(series.to_string());
        v["coeffs"] = json!(coeffs);
        emit_json(out, &v)?;
    } else {
        writeln!(out, "integer part: {}", cf.integer_part)?;
        for (i, q) in cf.partial_quotients.iter().enumerate() {
            writeln!(out, "A_{}: {q}", i + 1)?;
        }
        if cf.exhausted_precision {
            writeln!(
                out,
                "stopped: remaining precision cannot certify the next quotient"
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn generating_set(p: u64, dims: &[Family]) -> anyhow::Result<GeneratingSet> {
    GeneratingSet::from_families(p, dims).map_err(|e| usage(e.to_string()))
}

fn net(cmd: NetCmd, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        NetCmd::TValue {
            p,
            dims,
            m_max,
            json,
        } => {
            let gs = generating_set(p, &dims)?;
            let profile = t_value(&gs, m_max)?;
            if json {
                emit_json(out, &serde_json::to_value(&profile)?)?;
            } else {
                for (m, t) in profile.per_m.iter().enumerate() {
                    writeln!(out, "m={} t={t}", m + 1)?;
                }
                writeln!(out, "t = {}", profile.t)?;
            }
        }
        NetCmd::Points {
            p,
            dims,
            m,
            n,
            format,
        } => {
            let gs = generating_set(p, &dims)?;
            let ps = digital_points(&gs, n, m).map_err(|e| usage(e.to_string()))?;
            match format {
                PointFormat::Csv => {
                    let mut w = csv::WriterBuilder::new()
                        .has_headers(false)
                        .from_writer(out);
                    for pt in &ps.points {
                        w.write_record(pt.iter().map(|x| format!("{}/{}", x.numer(), x.denom())))?;
                    }
                    w.flush()?;
                }
                PointFormat::Json => {
                    let points: Vec<Vec<String>> = ps
                        .points
                        .iter()
                        .map(|pt| {
                            pt.iter()
                                .map(|x| format!("{}/{}", x.numer(), x.denom()))
                                .collect()
                        })
                        .collect();
                    emit_json(
                        out,
                        &json!({
                            "p": p,
                            "dimension": ps.dimension,
                            "m": m,
                            "dims": dims.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            "points": points,
                        }),
                    )?;
                }
            }
        }
        NetCmd::Discrepancy { input, json } => {
            let points = read_points(&input)?;
            let dimension = points.first().map_or(0, Vec::len);
            let d =
                star_discrepancy_points(dimension, &points).map_err(|e| usage(e.to_string()))?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "n": points.len(),
                        "dimension": dimension,
                        "star_discrepancy": rational_string(&d),
                    }),
                )?;
            } else {
                writeln!(out, "{}", rational_string(&d))?;
            }
        }
        NetCmd::Search {
            p,
            m_max,
            strategy,
            budget,
            seed,
            json,
        } => {
            let registry = GeneratorRegistry::builtin();
            let generator = registry
                .lookup(&strategy)
                .map_err(|e| usage(e.to_string()))?;
            let report = search_third_matrix(p, m_max, generator, budget, seed)
                .map_err(|e| usage(e.to_string()))?;
            if json {
                emit_json(out, &serde_json::to_value(&report)?)?;
            } else {
                writeln!(
                    out,
                    "{} candidates from {} (p={p}, m<={m_max})",
                    report.results.len(),
                    report.generator
                )?;
                for (m, t) in report.best_per_m.iter().enumerate() {
                    writeln!(out, "m={} best t={t}", m + 1)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// Reads a point CSV: one point per row, coordinates `num/den` or integers.
pub fn read_points(path: &std::path::Path) -> anyhow::Result<Vec<Vec<BigRational>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut points = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let pt = record
            .iter()
            .map(|field| {
                parse_rational(field)
                    .ok_or_else(|| usage(format!("line {}: bad coordinate {field:?}", line + 1)))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        if let Some(first) = points.first().map(Vec::len) {
            if first != pt.len() {
                bail!(usage(format!(
                    "line {}: expected {first} coordinates",
                    line + 1
                )));
            }
        }
        if pt.iter().any(|x| {
            x < &BigRational::from_integer(0.into()) || x >= &BigRational::from_integer(1.into())
        }) {
            bail!(usage(format!(
                "line {}: coordinates must lie in [0,1)",
                line + 1
            )));
        }
        points.push(pt);
    }
    Ok(points)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// Builds the global rayon pool from [`THREADS_ENV`], if set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
