//! CSV output of sweep curves.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::threshold::Curve;

/// One CSV row: a single (code, decoder, p) point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRecord {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    #[serde(rename = "p_L")]
    pub p_l: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub decoder: String,
    pub lambda: Option<usize>,
    pub seed: u64,
}

pub fn records(curves: &[Curve]) -> Vec<CsvRecord> {
    curves
        .iter()
        .flat_map(|c| {
            c.points.iter().map(move |pt| CsvRecord {
                code_id: c.code_id.clone(),
                n: c.n,
                k: c.k,
                d: c.distance,
                p: pt.p,
                trials: pt.stats.trials,
                failures: pt.stats.failures,
                p_l: pt.stats.p_l,
                ci_low: pt.stats.ci_low,
                ci_high: pt.stats.ci_high,
                decoder: c.decoder.label().to_string(),
                lambda: c.decoder.lambda(),
                seed: pt.stats.seed,
            })
        })
        .collect()
}

/// Writes a header and one row per record. Output depends only on the records.
pub fn write_csv<W: Write>(records: &[CsvRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(())
}
