//! Parallel Monte Carlo estimation of logical failure rates.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::sim::channel::{check_probability, sample_bsc, trial_rng};
use crate::sim::cycle::{CycleDecoder, DecoderConfig};

/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// 95% Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if failures == 0 { 0.0 } else { (centre - half).clamp(0.0, phat) };
    let high = if failures == trials { 1.0 } else { (centre + half).clamp(phat, 1.0) };
    (low, high)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunStats {
    pub trials: u64,
    pub failures: u64,
    pub p_l: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    /// Trials where BP converged on its own.
    pub bp_converged: u64,
    pub wall_time: Duration,
}

impl RunStats {
    pub fn from_counts(trials: u64, failures: u64, bp_converged: u64, seed: u64, wall_time: Duration) -> Self {
        let (ci_low, ci_high) = wilson_interval(failures, trials);
        Self {
            trials,
            failures,
            p_l: if trials == 0 { 0.0 } else { failures as f64 / trials as f64 },
            ci_low,
            ci_high,
            seed,
            bp_converged,
            wall_time,
        }
    }

    /// Whether the two 95% intervals intersect.
    pub fn overlaps(&self, other: &RunStats) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StoppingRule {
    /// Exactly this many trials.
    Trials(u64),
    /// Batches of trials until `failures` failures or `max_trials` trials.
    TargetFailures { failures: u64, max_trials: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub stopping: StoppingRule,
    pub master_seed: u64,
    pub workers: usize,
    /// Batch length for [`StoppingRule::TargetFailures`].
    pub batch_size: u64,
}

impl RunOptions {
    pub fn trials(trials: u64, master_seed: u64) -> Self {
        Self {
            stopping: StoppingRule::Trials(trials),
            master_seed,
            workers: 1,
            batch_size: 1000,
        }
    }

    pub fn target_failures(failures: u64, max_trials: u64, master_seed: u64) -> Self {
        Self {
            stopping: StoppingRule::TargetFailures { failures, max_trials },
            ..Self::trials(max_trials, master_seed)
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_batch_size(mut self, batch_size: u64) -> Self {
        self.batch_size = batch_size;
        self
    }

    fn validate(&self) -> Result<()> {
        let (max, target) = match self.stopping {
            StoppingRule::Trials(t) => (t, 1),
            StoppingRule::TargetFailures { failures, max_trials } => (max_trials, failures),
        };
        if max == 0 || target == 0 {
            return Err(Error::InvalidParameter("trial and failure counts must be at least 1".into()));
        }
        if self.workers == 0 || self.batch_size == 0 {
            return Err(Error::InvalidParameter("workers and batch size must be at least 1".into()));
        }
        Ok(())
    }

    fn max_trials(&self) -> u64 {
        match self.stopping {
            StoppingRule::Trials(t) => t,
            StoppingRule::TargetFailures { max_trials, .. } => max_trials,
        }
    }
}

pub fn run_monte_carlo(code: &CssCode, p: f64, decoder: &DecoderConfig, options: &RunOptions) -> Result<RunStats> {
    Ok(run_decoders(code, p, std::slice::from_ref(decoder), options)?.remove(0))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Counts {
    trials: u64,
    failures: u64,
    converged: u64,
}

fn merge(mut a: Vec<Counts>, b: Vec<Counts>) -> Vec<Counts> {
    for (x, y) in a.iter_mut().zip(b) {
        x.trials += y.trials;
        x.failures += y.failures;
        x.converged += y.converged;
    }
    a
}

/// Runs several decoders on the same sampled errors.
///
/// Decoders with equal BP settings share one BP decode per trial. Each
/// decoder's statistics equal those of a separate [`run_monte_carlo`] call
/// with the same options, and do not depend on `options.workers`.
pub fn run_decoders(
    code: &CssCode,
    p: f64,
    decoders: &[DecoderConfig],
    options: &RunOptions,
) -> Result<Vec<RunStats>> {
    check_probability(p)?;
    options.validate()?;
    if decoders.is_empty() {
        return Err(Error::InvalidParameter("no decoders given".into()));
    }
    let mut groups: Vec<(crate::bp::BpConfig, Vec<usize>)> = Vec::new();
    for (i, d) in decoders.iter().enumerate() {
        let cfg = d.bp_config(p);
        match groups.iter_mut().find(|(c, _)| *c == cfg) {
            Some((_, members)) => members.push(i),
            None => groups.push((cfg, vec![i])),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let start = Instant::now();
    let seed = options.master_seed;
    let max_trials = options.max_trials();
    let batch = match options.stopping {
        StoppingRule::Trials(t) => t,
        StoppingRule::TargetFailures { .. } => options.batch_size,
    };
    let mut totals = vec![Counts::default(); decoders.len()];
    let mut active = vec![true; decoders.len()];
    let mut next = 0u64;
    while next < max_trials && active.iter().any(|&a| a) {
        let end = max_trials.min(next + batch);
        let active_now = active.clone();
        let counts = pool.install(|| {
            (next..end)
                .into_par_iter()
                .try_fold(
                    || (CycleDecoder::new(code), vec![Counts::default(); decoders.len()]),
                    |(mut cycle, mut acc), t| -> Result<_> {
                        let x = sample_bsc(code.n(), p, &mut trial_rng(seed, t))?;
                        for (cfg, members) in &groups {
                            if !members.iter().any(|&i| active_now[i]) {
                                continue;
                            }
                            let stage = cycle.bp_stage(&x, cfg)?;
                            for &i in members.iter().filter(|&&i| active_now[i]) {
                                let out = cycle.finish(&x, &stage, decoders[i].osd)?;
                                acc[i].trials += 1;
                                acc[i].failures += out.logical_failure as u64;
                                acc[i].converged += out.converged_bp as u64;
                            }
                        }
                        Ok((cycle, acc))
                    },
                )
                .map(|r| r.map(|(_, acc)| acc))
                .try_reduce(|| vec![Counts::default(); decoders.len()], |a, b| Ok(merge(a, b)))
        })?;
        totals = merge(totals, counts);
        if let StoppingRule::TargetFailures { failures, .. } = options.stopping {
            for (a, c) in active.iter_mut().zip(&totals) {
                *a = *a && c.failures < failures;
            }
        }
        next = end;
    }
    let wall = start.elapsed();
    Ok(totals
        .into_iter()
        .map(|c| RunStats::from_counts(c.trials, c.failures, c.converged, seed, wall))
        .collect())
}
