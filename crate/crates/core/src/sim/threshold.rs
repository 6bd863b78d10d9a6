//! Sweeps over physical error rate and threshold estimation from curve crossings.

use std::fmt;

use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::sim::cycle::DecoderConfig;
use crate::sim::monte_carlo::{run_decoders, RunOptions, RunStats};

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub stats: RunStats,
}

/// Logical failure rate against physical error rate for one code and decoder.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub distance: Option<usize>,
    pub decoder: DecoderConfig,
    pub points: Vec<CurvePoint>,
}

/// Point where the curves of two adjacent distances swap order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub lower_distance: usize,
    pub upper_distance: usize,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdEstimate {
    /// Fewer than two distinct distances.
    NotApplicable,
    NoCrossing,
    /// Smallest and largest crossing.
    Interval { low: f64, high: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub decoder: String,
    pub estimate: ThresholdEstimate,
    pub crossings: Vec<Crossing>,
    /// `(code_id, p)` points with no failures, left out of interpolation.
    pub flagged: Vec<(String, f64)>,
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.decoder)?;
        match self.estimate {
            ThresholdEstimate::NotApplicable => write!(f, "threshold: n/a")?,
            ThresholdEstimate::NoCrossing => write!(f, "threshold: no crossing")?,
            ThresholdEstimate::Interval { low, high } => write!(f, "threshold: [{low:.4}, {high:.4}]")?,
        }
        for c in &self.crossings {
            write!(f, "\n  d={} x d={} at p={:.4}", c.lower_distance, c.upper_distance, c.p)?;
        }
        for (id, p) in &self.flagged {
            write!(f, "\n  flagged: {id} has no failures at p={p}")?;
        }
        Ok(())
    }
}

/// Crossings of adjacent-distance curves for a single decoder.
///
/// Curves are sorted by distance and each pair of consecutive distinct
/// distances is scanned for sign changes of `ln p_L(larger) - ln p_L(smaller)`
/// between neighbouring grid points; each crossing is placed by linear
/// interpolation of that difference. Points with zero failures are skipped.
pub fn estimate_threshold(curves: &[Curve]) -> ThresholdReport {
    let decoder = curves.first().map(|c| c.decoder.label().to_string()).unwrap_or_default();
    let flagged = curves
        .iter()
        .flat_map(|c| {
            c.points
                .iter()
                .filter(|pt| pt.stats.failures == 0)
                .map(|pt| (c.code_id.clone(), pt.p))
        })
        .collect();
    let mut sorted: Vec<&Curve> = curves.iter().filter(|c| c.distance.is_some()).collect();
    sorted.sort_by_key(|c| c.distance);
    let mut distances: Vec<usize> = sorted.iter().filter_map(|c| c.distance).collect();
    distances.dedup();
    if distances.len() < 2 {
        return ThresholdReport {
            decoder,
            estimate: ThresholdEstimate::NotApplicable,
            crossings: Vec::new(),
            flagged,
        };
    }
    let mut crossings = Vec::new();
    for pair in sorted.windows(2) {
        let (small, large) = (pair[0], pair[1]);
        if small.distance == large.distance {
            continue;
        }
        crossings.extend(pair_crossings(small, large));
    }
    let estimate = match crossings.iter().map(|c| c.p).fold(None, |acc: Option<(f64, f64)>, p| {
        Some(acc.map_or((p, p), |(lo, hi)| (lo.min(p), hi.max(p))))
    }) {
        Some((low, high)) => ThresholdEstimate::Interval { low, high },
        None => ThresholdEstimate::NoCrossing,
    };
    ThresholdReport {
        decoder,
        estimate,
        crossings,
        flagged,
    }
}

fn pair_crossings(small: &Curve, large: &Curve) -> Vec<Crossing> {
    let diffs: Vec<(f64, f64)> = small
        .points
        .iter()
        .zip(&large.points)
        .filter(|(a, b)| a.p == b.p && a.stats.failures > 0 && b.stats.failures > 0)
        .map(|(a, b)| (a.p, b.stats.p_l.ln() - a.stats.p_l.ln()))
        .collect();
    let make = |p| Crossing {
        lower_distance: small.distance.unwrap_or(0),
        upper_distance: large.distance.unwrap_or(0),
        p,
    };
    let mut out = Vec::new();
    for w in diffs.windows(2) {
        let ((p0, d0), (p1, d1)) = (w[0], w[1]);
        if d0 == 0.0 {
            out.push(make(p0));
        } else if d0 * d1 < 0.0 {
            out.push(make(p0 + (p1 - p0) * d0 / (d0 - d1)));
        }
    }
    if let Some(&(p, d)) = diffs.last() {
        if d == 0.0 {
            out.push(make(p));
        }
    }
    out
}

/// A code entered into a sweep.
#[derive(Clone, Debug)]
pub struct SweepCode {
    pub id: String,
    pub code: CssCode,
    pub distance: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Code-major, then decoder order.
    pub curves: Vec<Curve>,
    /// One report per decoder.
    pub thresholds: Vec<ThresholdReport>,
}

/// Runs every decoder on every code at every grid point, then estimates a
/// threshold per decoder. All points use the same master seed.
pub fn sweep_and_estimate_threshold(
    codes: &[SweepCode],
    p_grid: &[f64],
    decoders: &[DecoderConfig],
    options: &RunOptions,
) -> Result<SweepResult> {
    if p_grid.is_empty() || p_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("p grid must be non-empty and strictly increasing".into()));
    }
    let mut curves = Vec::new();
    for sc in codes {
        let mut per_decoder: Vec<Vec<CurvePoint>> = vec![Vec::new(); decoders.len()];
        for &p in p_grid {
            let stats = run_decoders(&sc.code, p, decoders, options)?;
            for (pts, stats) in per_decoder.iter_mut().zip(stats) {
                pts.push(CurvePoint { p, stats });
            }
        }
        for (decoder, points) in decoders.iter().zip(per_decoder) {
            curves.push(Curve {
                code_id: sc.id.clone(),
                n: sc.code.n(),
                k: sc.code.k(),
                distance: sc.distance,
                decoder: *decoder,
                points,
            });
        }
    }
    let thresholds = (0..decoders.len())
        .map(|j| {
            let mine: Vec<Curve> = curves.iter().skip(j).step_by(decoders.len()).cloned().collect();
            estimate_threshold(&mine)
        })
        .collect();
    Ok(SweepResult { curves, thresholds })
}
