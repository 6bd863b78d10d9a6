//! Builds CSS codes from family specifications.

use std::fmt;
use std::path::Path;

use qldpc::codes::{
    augment_edges, mackay_neal_ldpc, min_distance_bruteforce, repetition_code, transpose_code, ClassicalCode,
    Distance,
};
use qldpc::css::{hgp_symmetric, CssCode};
use qldpc::BitMatrix;

use crate::alist::read_alist;
use crate::error::CliError;
use crate::manifest::CodeSpec;

/// Support-search cap for parents too large for the kernel walk.
const DISTANCE_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub id: String,
    pub code: CssCode,
    pub parent: ClassicalCode,
    /// Set only when requested.
    pub distance: Option<Distance>,
}

impl BuiltCode {
    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            id: self.id.clone(),
            n: self.code.n(),
            k: self.code.k(),
            d: self.distance,
            rate: self.code.k() as f64 / self.code.n() as f64,
            mean_check_weight: self.code.mean_check_weight(),
            l_q: self.code.max_col_weight(),
            q_q: self.code.max_row_weight(),
        }
    }

    /// Exact distance, if known.
    pub fn exact_distance(&self) -> Option<usize> {
        self.distance.and_then(|d| d.exact())
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CodeSummary {
    pub id: String,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_distance")]
    pub d: Option<Distance>,
    pub rate: f64,
    pub mean_check_weight: f64,
    pub l_q: usize,
    pub q_q: usize,
}

fn ser_distance<S: serde::Serializer>(d: &Option<Distance>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_str(&d.to_string()),
        None => s.serialize_none(),
    }
}

impl fmt::Display for CodeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.map_or_else(|| "—".to_string(), |d| d.to_string());
        writeln!(f, "code: {}", self.id)?;
        writeln!(f, "[[{},{},{}]]", self.n, self.k, d)?;
        writeln!(f, "rate R = {:.6}", self.rate)?;
        writeln!(f, "mean check weight w = {:.4}", self.mean_check_weight)?;
        write!(f, "(l_Q, q_Q) = ({}, {})", self.l_q, self.q_q)
    }
}

fn all_ones_parent() -> ClassicalCode {
    ClassicalCode::new(BitMatrix::from_dense(&[[1u8, 1, 1], [1, 1, 1]]).expect("static matrix"))
}

/// Builds the code; computes its distance when `with_distance` is set.
pub fn build(spec: &CodeSpec, base_dir: &Path, with_distance: bool) -> Result<BuiltCode, CliError> {
    let (id, parent, known) = match spec {
        CodeSpec::Surface { n } => (format!("surface-{n}"), repetition_code(*n, false)?, Some(Distance::Exact(*n))),
        CodeSpec::Toric { n } => (format!("toric-{n}"), repetition_code(*n, true)?, Some(Distance::Exact(*n))),
        CodeSpec::RandomHgp {
            n,
            col_weight,
            row_weight,
            seed,
        } => (
            format!("random-hgp-{n}-{col_weight}-{row_weight}-s{seed}"),
            mackay_neal_ldpc(*n, *col_weight, *row_weight, *seed)?,
            None,
        ),
        CodeSpec::SemiTopological { g, parent } => {
            let base = match parent {
                Some(p) => ClassicalCode::new(read_alist(&base_dir.join(p))?),
                None => all_ones_parent(),
            };
            (format!("semi-topological-g{g}"), augment_edges(&base, *g)?, None)
        }
    };
    let code = hgp_symmetric(&parent)?;
    let distance = match (with_distance, known) {
        (false, _) => None,
        (true, Some(d)) => Some(d),
        (true, None) => Some(hgp_distance(&parent)?),
    };
    Ok(BuiltCode {
        id,
        code,
        parent,
        distance,
    })
}

/// `min(d, d^T)` of a symmetric product from its parent and the transposed parent.
fn hgp_distance(parent: &ClassicalCode) -> Result<Distance, CliError> {
    let d = min_distance_bruteforce(parent, DISTANCE_CAP)?;
    let dt = min_distance_bruteforce(&transpose_code(parent), DISTANCE_CAP)?;
    Ok(d.min(dt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_summary() {
        let b = build(&CodeSpec::Toric { n: 3 }, Path::new("."), false).unwrap();
        let s = b.summary();
        assert_eq!((s.n, s.k, s.mean_check_weight), (18, 2, 4.0));
        assert!(s.to_string().contains("[[18,2,—]]"));
        let b = build(&CodeSpec::Toric { n: 3 }, Path::new("."), true).unwrap();
        assert_eq!(b.exact_distance(), Some(3));
    }

    #[test]
    fn semi_topological_summary() {
        let b = build(&CodeSpec::SemiTopological { g: 1, parent: None }, Path::new("."), false).unwrap();
        let s = b.summary();
        assert_eq!((s.n, s.k, s.mean_check_weight, s.l_q, s.q_q), (145, 5, 4.25, 6, 5));
        assert!(s.to_string().contains("[[145,5,—]]"));
        let b = build(&CodeSpec::SemiTopological { g: 1, parent: None }, Path::new("."), true).unwrap();
        assert_eq!(b.exact_distance(), Some(6));
    }

    #[test]
    fn random_summary() {
        let spec = CodeSpec::RandomHgp {
            n: 16,
            col_weight: 3,
            row_weight: 4,
            seed: 1,
        };
        let b = build(&spec, Path::new("."), true).unwrap();
        let s = b.summary();
        assert_eq!((s.n, s.k, s.d, s.mean_check_weight), (400, 16, Some(Distance::Exact(6)), 7.0));
        assert_eq!((s.l_q, s.q_q), (8, 7));
    }

    #[test]
    fn invalid_parameters() {
        assert!(build(&CodeSpec::Toric { n: 1 }, Path::new("."), false).is_err());
        let spec = CodeSpec::RandomHgp {
            n: 10,
            col_weight: 3,
            row_weight: 4,
            seed: 0,
        };
        assert!(build(&spec, Path::new("."), false).is_err());
    }
}
