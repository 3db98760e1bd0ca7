//! Command-line front end for the `mucube` library.

pub mod scan;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use mucube::classify::{self, Classification, Direction, Method};
use mucube::flow::cylinder_decomposition;
use mucube::group::{
    convergents, find_witness, fourey_word, recurrence_classify, ContinuedFraction, WitnessReport,
};
use mucube::mucube3d::{
    canonical_start, trace3d, twist_length_prediction, twist_slope, DirectionalData, Point3, Slope,
    TwistAxis, SEED_FACE,
};
use mucube::{Error, Exact, Rational};

#[derive(Debug, Parser)]
#[command(name = "mucube", version, about = "Straight-line flow on the Mucube")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    All,
    Oracle,
    Y,
    X,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::All => None,
            MethodArg::Oracle => Some(Method::Oracle3D),
            MethodArg::Y => Some(Method::QuotientY),
            MethodArg::X => Some(Method::DisplacementX),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SurfaceArg {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AxisArg {
    Vertical,
    Horizontal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether direction (p, q) is periodic or drifts.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Replay the certificate independently.
        #[arg(long)]
        verify: bool,
    },
    /// Classify every primitive direction with |p|, |q| <= max; write CSV and SVG.
    Scan {
        #[arg(long)]
        max: i64,
        /// CSV path (default: $MUCUBE_OUT_DIR/scan_<max>.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG path (default: next to the CSV).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "oracle")]
        method: MethodArg,
    },
    /// Unfold a trajectory in R^3 and export it as JSON.
    Trace {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// Start coordinates on the seed face, as fractions.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        /// Flow-time bound (arc length in units of sqrt(p^2+q^2)).
        #[arg(long, default_value = "5")]
        time: String,
    },
    /// Cylinder decomposition of X or Y in direction (p, q).
    Cylinders {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "y")]
        surface: SurfaceArg,
    },
    /// Fourey continued fraction [4a0; 4a1, ...]: word, direction and verdict.
    Fourey {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        /// Repeat these coefficients forever after the others.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        period: Option<Vec<i64>>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Find a word in Gamma carrying (1, 0) to +-(p, q).
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = 200)]
        max_depth: usize,
    },
    /// Twist a slope k times along the vertical or horizontal cylinders.
    Twist {
        /// `inf`, an integer, or `a/b`.
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// 2: bad input or unwritable output, 3: internal inconsistency, 1: search exhausted.
pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Io(_) => 2,
        CliError::Lib(e) => match e {
            Error::InvalidInput(_) | Error::PeriodicDirection | Error::OpenTrajectory => 2,
            Error::Inconsistent(_) | Error::MethodDisagreement(_) => 3,
            Error::NotFoundWithinDepth(_) => 1,
        },
    }
}

/// Parses and runs; returns the process exit code. Normal output goes to `out`.
pub fn run_from<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn reduce(p: i64, q: i64) -> Result<Direction, CliError> {
    let (d, reduced) = Direction::reduced(p, q)?;
    if reduced {
        eprintln!("warning: ({p}, {q}) is not primitive; using {d}");
    }
    Ok(d)
}

fn classification_json(c: &Classification) -> Value {
    serde_json::to_value(c).expect("classification serialises")
}

pub fn run(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Classify {
            p,
            q,
            method,
            verify,
        } => {
            let d = reduce(p, q)?;
            let (p, q) = d.pair();
            let c = match method.method() {
                Some(m) => classify::classify_with(m, p, q)?,
                None => classify::classify_all(p, q)?,
            };
            if verify {
                c.verify()?;
            }
            let (canon, syms) = d.canonical();
            let mut v = json!({
                "input": [p, q],
                "canonical": canon.pair(),
                "symmetries": syms.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "methods": if method.method().is_none() { "all agree" } else { "single" },
                "verified": verify,
            });
            v["classification"] = classification_json(&c);
            v["verdict"] = json!(c.verdict.to_string());
            emit(out, &v)
        }
        Command::Scan {
            max,
            out: csv_path,
            svg,
            jobs,
            method,
        } => {
            if max < 1 {
                return Err(Error::InvalidInput("--max must be at least 1".into()).into());
            }
            let dir = std::env::var_os("MUCUBE_OUT_DIR")
                .map(PathBuf::from)
                .unwrap_or_else(|| ".".into());
            let csv_path = csv_path.unwrap_or_else(|| dir.join(format!("scan_{max}.csv")));
            let svg_path = svg.unwrap_or_else(|| csv_path.with_extension("svg"));
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            let records = pool.install(|| scan::scan(max, method.method()))?;
            scan::write_csv(BufWriter::new(File::create(&csv_path)?), &records)?;
            std::fs::write(&svg_path, scan::render_svg(&records))?;
            let periodic = records.iter().filter(|r| r.periodic()).count();
            let gap = scan::max_angular_gap(&records);
            emit(
                out,
                &json!({
                    "max": max,
                    "directions": records.len(),
                    "periodic": periodic,
                    "drift": records.len() - periodic,
                    "max_gap_degrees": gap.map(f64::to_degrees),
                    "csv": csv_path.display().to_string(),
                    "svg": svg_path.display().to_string(),
                }),
            )
        }
        Command::Trace { p, q, u, v, time } => {
            let d = reduce(p, q)?;
            let (p, q) = d.pair();
            let (a, b, den) = canonical_start(p, q);
            let u = u
                .map(|s| parse_rational(&s))
                .transpose()?
                .unwrap_or_else(|| Rational::ratio(a, den));
            let v = v
                .map(|s| parse_rational(&s))
                .transpose()?
                .unwrap_or_else(|| Rational::ratio(b, den));
            let time = parse_rational(&time)?;
            if time <= Rational::from_int(0) {
                return Err(Error::InvalidInput("--time must be positive".into()).into());
            }
            let start = Point3::new(SEED_FACE, u, v, 0);
            let t = trace3d(&start, p, q, &time)?;
            let mut val = serde_json::to_value(t.export()).expect("export serialises");
            val["direction"] = json!([p, q]);
            val["outcome"] = json!(match &t.outcome {
                mucube::mucube3d::TraceOutcome::Closed => "closed".to_string(),
                mucube::mucube3d::TraceOutcome::BoundReached => "bound_reached".to_string(),
                mucube::mucube3d::TraceOutcome::ConePointHit { at } => format!(
                    "cone_point_hit at ({})",
                    at.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            });
            emit(out, &val)
        }
        Command::Cylinders { p, q, surface } => {
            let d = reduce(p, q)?;
            let (p, q) = d.pair();
            let m = classify::model();
            let s = match surface {
                SurfaceArg::X => &m.x,
                SurfaceArg::Y => &m.y,
            };
            let dec = cylinder_decomposition::<Rational>(s, p, q)?;
            let mut v = serde_json::to_value(dec.report()).expect("report serialises");
            v["surface"] = json!(match surface {
                SurfaceArg::X => "X",
                SurfaceArg::Y => "Y",
            });
            v["gamma0"] = json!(dec.cylinders.iter().map(|c| c.gamma0).collect::<Vec<_>>());
            v["displacement"] = json!(dec
                .cylinders
                .iter()
                .map(|c| c.displacement)
                .collect::<Vec<_>>());
            emit(out, &v)
        }
        Command::Fourey {
            coeffs,
            period,
            depth,
        } => fourey(out, coeffs, period, depth),
        Command::Witness { p, q, max_depth } => {
            let d = reduce(p, q)?;
            let (p, q) = d.pair();
            let w = find_witness(p, q, max_depth)?;
            let r = WitnessReport::new(&w);
            let mut v = serde_json::to_value(&r).expect("report serialises");
            v["direction"] = json!([p, q]);
            v["in_gamma"] = json!(w.is_in_gamma());
            emit(out, &v)
        }
        Command::Twist { slope, axis, k } => twist(out, &slope, axis, k),
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Lib(Error::InvalidInput(format!("not a rational number: {s:?}")));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().map_err(|_| bad())?,
            d.trim().parse::<BigInt>().map_err(|_| bad())?,
        ),
        None => (
            s.trim().parse::<BigInt>().map_err(|_| bad())?,
            BigInt::from(1),
        ),
    };
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_slope(s: &str) -> Result<Slope, CliError> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(Slope::Infinite),
        t => Ok(Slope::Finite(parse_rational(t)?)),
    }
}

fn small(x: &BigInt) -> Option<i64> {
    x.to_i64().filter(|v| v.unsigned_abs() < 1 << 40)
}

/// Classification of a direction given by big integers, when it fits.
fn classify_big(p: &BigInt, q: &BigInt) -> Result<Option<Classification>, CliError> {
    match (small(p), small(q)) {
        (Some(p), Some(q)) => Ok(Some(classify::classify_oracle(p, q)?)),
        _ => Ok(None),
    }
}

fn fourey(
    out: &mut dyn Write,
    coeffs: Vec<i64>,
    period: Option<Vec<i64>>,
    depth: usize,
) -> Result<(), CliError> {
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("--coeffs needs at least one value".into()).into());
    }
    let cf = match &period {
        Some(per) => ContinuedFraction::eventually_periodic(
            coeffs[0],
            coeffs[1..].to_vec(),
            per.clone(),
            true,
        )?,
        None => ContinuedFraction::fourey(coeffs[0], coeffs[1..].to_vec())?,
    };
    let recurrence = format!("{:?}", recurrence_classify(&cf));
    if period.is_some() {
        let conv = convergents(&cf, depth)?;
        let approx: Vec<String> = conv.iter().map(|(p, q)| format!("{p}/{q}")).collect();
        return emit(
            out,
            &json!({
                "coefficients": (0..=depth).map(|i| cf.coeff(i)).collect::<Vec<_>>(),
                "convergents": approx,
                "recurrence": recurrence,
            }),
        );
    }
    let word = fourey_word(&coeffs)?;
    let m = word.eval::<BigInt>();
    let conv = convergents(&cf, coeffs.len() - 1)?;
    let (sp, sq) = conv.last().expect("at least one convergent").clone();
    let slope = BigRational::new(sp, sq);
    let (dp, dq) = Slope::Finite(slope.clone()).direction();
    let c = classify_big(&dp, &dq)?;
    emit(
        out,
        &json!({
            "coefficients": (0..coeffs.len()).map(|i| cf.coeff(i)).collect::<Vec<_>>(),
            "slope": slope.to_string(),
            "direction": [dp.to_string(), dq.to_string()],
            "word": word.to_string(),
            "first_column": [m.a.to_string(), m.c.to_string()],
            "in_gamma": word.is_in_gamma(),
            "convergents": conv.iter().map(|(p, q)| format!("{p}/{q}")).collect::<Vec<_>>(),
            "verdict": c.map(|c| c.verdict.to_string()),
            "recurrence": recurrence,
        }),
    )
}

fn twist(out: &mut dyn Write, slope: &str, axis: AxisArg, k: i64) -> Result<(), CliError> {
    let s = parse_slope(slope)?;
    let (axis, vdir) = match axis {
        AxisArg::Vertical => (TwistAxis::Vertical, (0, 1)),
        AxisArg::Horizontal => (TwistAxis::Horizontal, (1, 0)),
    };
    let t = twist_slope(&s, axis, k)?;
    let (ip, iq) = s.direction();
    let (op, oq) = t.direction();
    let before = classify_big(&ip, &iq)?;
    let after = classify_big(&op, &oq)?;
    let prediction = match (&before, small(&ip), small(&iq)) {
        (Some(c), Some(p), Some(q)) if c.verdict == classify::Verdict::Periodic => {
            let o = DirectionalData {
                dir: (p, q),
                multiplier: BigRational::from_integer(c.core_multiplier().into()),
                width_num: BigRational::from_integer(1.into()),
            };
            let v = DirectionalData {
                dir: vdir,
                multiplier: BigRational::from_integer(4.into()),
                width_num: BigRational::from_integer(1.into()),
            };
            Some(twist_length_prediction(&o, &v, k)?)
        }
        _ => None,
    };
    let traced = after
        .as_ref()
        .filter(|c| c.verdict == classify::Verdict::Periodic)
        .map(|c| {
            let n = &op * &op + &oq * &oq;
            format!("{}*sqrt({})", c.core_multiplier(), n)
        });
    emit(
        out,
        &json!({
            "slope": s.to_string(),
            "twisted_slope": t.to_string(),
            "direction": [op.to_string(), oq.to_string()],
            "verdict": after.as_ref().map(|c| c.verdict.to_string()),
            "predicted_length": prediction.as_ref().map(|x| x.to_string()),
            "predicted_length_approx": prediction.as_ref().map(|x| x.to_f64()),
            "core_length": traced,
        }),
    )
}
