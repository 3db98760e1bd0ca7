//! The slope scan behind the periodic-ray picture: records, CSV, SVG and gap statistics.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{Read, Write};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use mucube::classify::{classify_with, Classification, Method, Verdict};
use mucube::mucube3d::{trace3d, Point3, TraceOutcome, SEED_FACE};
use mucube::{Exact, Rational, Result};

pub const CSV_HEADER: &str = "p,q,verdict,core_multiplier,drift_x,drift_y,drift_z";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: i64,
    pub q: i64,
    pub verdict: String,
    pub core_multiplier: i64,
    pub drift_x: i64,
    pub drift_y: i64,
    pub drift_z: i64,
}

impl ScanRecord {
    pub fn from_classification(c: &Classification) -> ScanRecord {
        let (p, q) = c.direction;
        let periodic = c.verdict == Verdict::Periodic;
        let d = if periodic {
            [0, 0, 0]
        } else {
            c.drift_vector()
        };
        ScanRecord {
            p,
            q,
            verdict: c.verdict.to_string(),
            core_multiplier: if periodic { c.core_multiplier() } else { 0 },
            drift_x: d[0],
            drift_y: d[1],
            drift_z: d[2],
        }
    }

    pub fn periodic(&self) -> bool {
        self.verdict == "periodic"
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p,
            self.q,
            self.verdict,
            self.core_multiplier,
            self.drift_x,
            self.drift_y,
            self.drift_z
        )
    }
}

/// All primitive `(p, q)` with `|p|, |q| <= n`, ordered by `p` then `q`.
pub fn directions(n: i64) -> Vec<(i64, i64)> {
    (-n..=n)
        .flat_map(|p| (-n..=n).map(move |q| (p, q)))
        .filter(|&(p, q)| (p, q) != (0, 0) && p.gcd(&q) == 1)
        .collect()
}

/// Classifies every direction of [`directions`] in parallel; output order is the
/// input order.
pub fn scan(n: i64, method: Option<Method>) -> Result<Vec<ScanRecord>> {
    directions(n)
        .into_par_iter()
        .map(|(p, q)| {
            let c = match method {
                Some(m) => classify_with(m, p, q)?,
                None => mucube::classify::classify_all(p, q)?,
            };
            Ok(ScanRecord::from_classification(&c))
        })
        .collect()
}

/// The record for `(p, q)` from a direct unfolding in ℝ³ with big rationals: trace four
/// periods plus one; closure means periodic, otherwise the drift vector of the trace.
pub fn slow_record(p: i64, q: i64) -> Result<ScanRecord> {
    let (a, b, d) = mucube::mucube3d::canonical_start(p, q);
    let start = Point3::new(SEED_FACE, Rational::ratio(a, d), Rational::ratio(b, d), 0);
    let t = trace3d(&start, p, q, &Rational::from_int(5))?;
    let (verdict, mult, dv) = match (&t.outcome, t.drift_vector) {
        (TraceOutcome::Closed, _) => ("periodic", t.arc_length.multiplier(), [0, 0, 0]),
        (TraceOutcome::BoundReached, Some(v)) => ("drift", 0, v),
        _ => {
            return Err(mucube::Error::Inconsistent(format!(
                "slow trace of ({p}, {q}) neither closes nor drifts: {:?}",
                t.outcome
            )))
        }
    };
    Ok(ScanRecord {
        p,
        q,
        verdict: verdict.into(),
        core_multiplier: mult,
        drift_x: dv[0],
        drift_y: dv[1],
        drift_z: dv[2],
    })
}

pub fn write_csv<W: Write>(out: W, records: &[ScanRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<ScanRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

fn angle(p: i64, q: i64) -> f64 {
    (q as f64).atan2(p as f64).rem_euclid(2.0 * PI)
}

/// Largest angle (radians) between circularly consecutive periodic directions.
pub fn max_angular_gap(records: &[ScanRecord]) -> Option<f64> {
    let mut a: Vec<f64> = records
        .iter()
        .filter(|r| r.periodic())
        .map(|r| angle(r.p, r.q))
        .collect();
    if a.is_empty() {
        return None;
    }
    a.sort_by(f64::total_cmp);
    let wrap = a[0] + 2.0 * PI - a[a.len() - 1];
    Some(a.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max))
}

/// Rays from the center for periodic directions, dots on the unit circle for drift
/// directions. Angles are converted to floating point here and only here.
pub fn render_svg(records: &[ScanRecord]) -> String {
    let mut s = String::new();
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n",
    );
    s.push_str("<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"white\"/>\n");
    s.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.002\"/>\n");
    s.push_str("<g stroke=\"#1f4e9c\" stroke-width=\"0.0015\">\n");
    for r in records.iter().filter(|r| r.periodic()) {
        let t = angle(r.p, r.q);
        // y grows downward in SVG
        let _ = writeln!(
            s,
            "<line x1=\"0\" y1=\"0\" x2=\"{:.6}\" y2=\"{:.6}\"/>",
            t.cos(),
            -t.sin()
        );
    }
    s.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for r in records.iter().filter(|r| !r.periodic()) {
        let t = angle(r.p, r.q);
        let _ = writeln!(
            s,
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.003\"/>",
            t.cos(),
            -t.sin()
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Whether the periodic set is closed under `(p, q) -> (q, p), (−p, q), (p, −q)`.
pub fn periodic_set_symmetric(records: &[ScanRecord]) -> bool {
    let set: std::collections::HashSet<(i64, i64)> = records
        .iter()
        .filter(|r| r.periodic())
        .map(|r| (r.p, r.q))
        .collect();
    set.iter()
        .all(|&(p, q)| set.contains(&(q, p)) && set.contains(&(-p, q)) && set.contains(&(p, -q)))
}
