use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qldpc::bp::BpDecoder;
use qldpc::osd::{rank_bits, OsdEncoder, OsdStrategy};
use qldpc::sim::{self, SweepCode};
use qldpc::BitVector;

use crate::alist::{read_alist, write_alist_file};
use crate::error::CliError;
use crate::families::{build, CodeSummary};
use crate::manifest::{CodeSpec, DecoderSpec, RunManifest, MANIFEST_FILE, RESULTS_FILE, THRESHOLD_FILE};

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Writes `hx.alist`, `hz.alist`, `lx.alist`, `lz.alist` and `params.json` into `out`.
pub fn construct(spec: &CodeSpec, base_dir: &Path, out: &Path, with_distance: bool) -> Result<CodeSummary, CliError> {
    let built = build(spec, base_dir, with_distance)?;
    create_dir(out)?;
    let c = &built.code;
    for (name, m) in [("hx", c.hx()), ("hz", c.hz()), ("lx", c.lx()), ("lz", c.lz())] {
        write_alist_file(&out.join(format!("{name}.alist")), m)?;
    }
    let summary = built.summary();
    let json = serde_json::to_string_pretty(&summary).expect("summary serialises") + "\n";
    write_file(&out.join("params.json"), json.as_bytes())?;
    Ok(summary)
}

/// Parses a syndrome written as `0`/`1` characters; spaces and commas are ignored.
pub fn parse_syndrome(text: &str) -> Result<BitVector, CliError> {
    let mut bits = Vec::new();
    for ch in text.chars() {
        match ch {
            '0' => bits.push(0u8),
            '1' => bits.push(1u8),
            ' ' | ',' | '\n' | '\t' => {}
            other => return Err(CliError::Data(format!("syndrome contains '{other}', expected 0 or 1"))),
        }
    }
    Ok(BitVector::from_dense(&bits))
}

fn osd_label(strategy: OsdStrategy) -> &'static str {
    match strategy {
        OsdStrategy::Osd0 => "osd0",
        OsdStrategy::CombinationSweep { .. } => "osd-cs",
        OsdStrategy::Exhaustive { .. } => "osd-e",
    }
}

/// Decodes one syndrome against the check matrix in `matrix` and describes the result.
pub fn decode(matrix: &Path, syndrome: &str, p: f64, decoder: &DecoderSpec) -> Result<String, CliError> {
    let h = read_alist(matrix)?;
    let s = parse_syndrome(syndrome)?;
    if s.len() != h.rows() {
        return Err(CliError::Data(format!(
            "syndrome has {} bits but the matrix has {} rows",
            s.len(),
            h.rows()
        )));
    }
    let config = decoder.to_config();
    let bp = BpDecoder::new(&h).decode(&s, &config.bp_config(p))?;
    let mut out = String::new();
    let correction = if bp.converged {
        let _ = writeln!(out, "bp converged iter={}", bp.iterations);
        bp.hard_decision
    } else {
        match config.osd {
            None => {
                let _ = writeln!(out, "bp failed iter={}; no post-processing", bp.iterations);
                bp.hard_decision
            }
            Some(strategy) => {
                let encoder = OsdEncoder::new(&h, &s, rank_bits(&bp.soft_decisions))?;
                let result = encoder.search(strategy)?;
                let _ = writeln!(
                    out,
                    "bp failed iter={}; {} candidates={} k'={} osd0_weight={}",
                    bp.iterations,
                    osd_label(strategy),
                    result.candidates,
                    result.k_prime,
                    result.osd0_weight
                );
                result.correction
            }
        }
    };
    let satisfied = h.mat_vec(&correction)? == s;
    let support: Vec<String> = correction.support().iter().map(|i| i.to_string()).collect();
    let _ = writeln!(out, "correction support: [{}]", support.join(" "));
    let _ = writeln!(out, "weight: {}", correction.weight());
    let _ = writeln!(out, "syndrome satisfied: {satisfied}");
    Ok(out)
}

pub struct SweepOutput {
    pub out_dir: PathBuf,
    pub report: String,
}

/// Runs a sweep, writing `results.csv`, `threshold.txt` and a replayable `manifest.json`.
///
/// Relative paths in the manifest resolve against `base_dir`.
pub fn sweep(manifest: &RunManifest, base_dir: &Path) -> Result<SweepOutput, CliError> {
    manifest.validate()?;
    let out_dir = base_dir.join(&manifest.out_dir);
    let mut codes = Vec::with_capacity(manifest.codes.len());
    for spec in &manifest.codes {
        let built = build(spec, base_dir, true)?;
        codes.push(SweepCode {
            id: built.id.clone(),
            distance: built.exact_distance(),
            code: built.code,
        });
    }
    let decoders: Vec<_> = manifest.decoders.iter().map(DecoderSpec::to_config).collect();
    let result = sim::sweep_and_estimate_threshold(&codes, &manifest.p_grid, &decoders, &manifest.run_options())?;

    create_dir(&out_dir)?;
    let mut csv = Vec::new();
    sim::write_csv(&sim::records(&result.curves), &mut csv)?;
    write_file(&out_dir.join(RESULTS_FILE), &csv)?;

    let mut report = String::new();
    for c in &result.curves {
        let _ = write!(report, "{} {}:", c.code_id, c.decoder.label());
        for pt in &c.points {
            let _ = write!(report, " p={}:{}/{}", pt.p, pt.stats.failures, pt.stats.trials);
        }
        report.push('\n');
    }
    for t in &result.thresholds {
        let _ = writeln!(report, "{t}");
    }
    write_file(&out_dir.join(THRESHOLD_FILE), report.as_bytes())?;

    let replay = replay_manifest(manifest, base_dir);
    write_file(&out_dir.join(MANIFEST_FILE), replay.to_json().as_bytes())?;
    Ok(SweepOutput { out_dir, report })
}

/// Copy of `manifest` that replays in place from the output directory.
fn replay_manifest(manifest: &RunManifest, base_dir: &Path) -> RunManifest {
    let mut replay = manifest.clone();
    replay.out_dir = PathBuf::from(".");
    for spec in &mut replay.codes {
        if let CodeSpec::SemiTopological { parent: Some(p), .. } = spec {
            let joined = base_dir.join(&*p);
            *p = std::fs::canonicalize(&joined).unwrap_or(joined);
        }
    }
    replay
}
