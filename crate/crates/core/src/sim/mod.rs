//! Monte Carlo simulation of X-error decoding on CSS codes.
//!
//! Each trial draws an error from a binary symmetric channel on its own
//! seeded stream, decodes the `H_Z` syndrome and checks the residual against
//! `L_Z`. Trials are spread over a worker pool and merged with integer sums,
//! so results do not depend on the number of workers.

pub mod channel;
pub mod cycle;
pub mod monte_carlo;
pub mod report;
pub mod threshold;

pub use channel::{sample_bsc, trial_rng};
pub use cycle::{decode_cycle, BpStage, CycleDecoder, DecodePath, DecoderConfig, TrialOutcome};
pub use monte_carlo::{run_decoders, run_monte_carlo, wilson_interval, RunOptions, RunStats, StoppingRule};
pub use report::{records, write_csv, CsvRecord};
pub use threshold::{
    estimate_threshold, sweep_and_estimate_threshold, Crossing, Curve, CurvePoint, SweepCode, SweepResult,
    ThresholdEstimate, ThresholdReport,
};
