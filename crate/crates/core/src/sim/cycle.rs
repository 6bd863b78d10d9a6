//! One decoding cycle for X errors: syndrome, BP, optional OSD, logical check.

use crate::bp::{BpConfig, BpDecoder, BpResult, Scaling};
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::osd::{rank_bits, OsdEncoder, OsdStrategy};

/// Decoding prior used when the channel rate is exactly zero.
pub const ZERO_RATE_PRIOR: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodePath {
    BpOnly,
    BpOsd,
}

/// A decoder chain: BP, then OSD on non-convergence when `osd` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    pub osd: Option<OsdStrategy>,
    /// `None` means the block length.
    pub max_iterations: Option<usize>,
    pub scaling: Scaling,
}

impl DecoderConfig {
    pub fn bp() -> Self {
        Self {
            osd: None,
            max_iterations: None,
            scaling: Scaling::IterationScaled,
        }
    }

    pub fn bp_osd(strategy: OsdStrategy) -> Self {
        Self {
            osd: Some(strategy),
            ..Self::bp()
        }
    }

    pub fn with_max_iterations(mut self, max: Option<usize>) -> Self {
        self.max_iterations = max;
        self
    }

    pub fn with_scaling(mut self, scaling: Scaling) -> Self {
        self.scaling = scaling;
        self
    }

    /// Short name: `bp`, `bp-osd0`, `bp-osd-cs` or `bp-osd-e`.
    pub fn label(&self) -> &'static str {
        match self.osd {
            None => "bp",
            Some(OsdStrategy::Osd0) => "bp-osd0",
            Some(OsdStrategy::CombinationSweep { .. }) => "bp-osd-cs",
            Some(OsdStrategy::Exhaustive { .. }) => "bp-osd-e",
        }
    }

    pub fn lambda(&self) -> Option<usize> {
        self.osd.and_then(|s| s.lambda())
    }

    /// BP settings for channel rate `p`.
    pub fn bp_config(&self, p: f64) -> BpConfig {
        let prior = if p > 0.0 { p } else { ZERO_RATE_PRIOR };
        BpConfig {
            channel_error_rate: prior,
            max_iterations: self.max_iterations,
            scaling: self.scaling,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub error: BitVector,
    pub syndrome: BitVector,
    pub correction: BitVector,
    /// `error + correction`.
    pub residual: BitVector,
    pub converged_bp: bool,
    pub bp_iterations: usize,
    pub logical_failure: bool,
    pub decode_path: DecodePath,
    /// Remainder patterns examined by OSD, when it ran.
    pub osd_candidates: Option<u128>,
}

/// Syndrome and BP output, shareable across decoders with the same BP settings.
#[derive(Clone, Debug)]
pub struct BpStage {
    pub syndrome: BitVector,
    pub bp: BpResult,
}

/// Reusable decoding state for one code (decodes X errors against `H_Z`).
#[derive(Clone, Debug)]
pub struct CycleDecoder<'a> {
    code: &'a CssCode,
    bp: BpDecoder,
}

impl<'a> CycleDecoder<'a> {
    pub fn new(code: &'a CssCode) -> Self {
        Self {
            code,
            bp: BpDecoder::new(code.hz()),
        }
    }

    pub fn code(&self) -> &'a CssCode {
        self.code
    }

    pub fn bp_stage(&mut self, x: &BitVector, config: &BpConfig) -> Result<BpStage> {
        if x.len() != self.code.n() {
            return Err(Error::DimensionMismatch {
                context: "error vector",
                expected: self.code.n(),
                found: x.len(),
            });
        }
        let syndrome = self.code.hz().mat_vec(x)?;
        let bp = self.bp.decode(&syndrome, config)?;
        Ok(BpStage { syndrome, bp })
    }

    /// Completes a cycle from a BP stage.
    ///
    /// With OSD disabled, a non-converged BP decode counts as a logical failure.
    pub fn finish(&self, x: &BitVector, stage: &BpStage, osd: Option<OsdStrategy>) -> Result<TrialOutcome> {
        let bp = &stage.bp;
        let (correction, path, candidates) = match (bp.converged, osd) {
            (true, _) | (false, None) => (bp.hard_decision.clone(), DecodePath::BpOnly, None),
            (false, Some(strategy)) => {
                let encoder = OsdEncoder::new(self.code.hz(), &stage.syndrome, rank_bits(&bp.soft_decisions))?;
                let out = encoder.search(strategy)?;
                (out.correction, DecodePath::BpOsd, Some(out.candidates))
            }
        };
        let residual = x.xor(&correction)?;
        let logical_flip = !self.code.lz().mat_vec(&residual)?.is_zero();
        Ok(TrialOutcome {
            error: x.clone(),
            syndrome: stage.syndrome.clone(),
            correction,
            residual,
            converged_bp: bp.converged,
            bp_iterations: bp.iterations,
            logical_failure: logical_flip || (!bp.converged && osd.is_none()),
            decode_path: path,
            osd_candidates: candidates,
        })
    }

    pub fn decode(&mut self, x: &BitVector, config: &BpConfig, osd: Option<OsdStrategy>) -> Result<TrialOutcome> {
        let stage = self.bp_stage(x, config)?;
        self.finish(x, &stage, osd)
    }
}

/// Runs one cycle: `s = H_Z·x`, BP on `(H_Z, s)`, OSD if BP does not converge,
/// and failure iff `L_Z·(x + correction) ≠ 0`.
pub fn decode_cycle(code: &CssCode, x: &BitVector, config: &BpConfig, osd: Option<OsdStrategy>) -> Result<TrialOutcome> {
    CycleDecoder::new(code).decode(x, config, osd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::repetition_code;
    use crate::css::hgp_symmetric;

    fn toric3() -> CssCode {
        hgp_symmetric(&repetition_code(3, true).unwrap()).unwrap()
    }

    #[test]
    fn zero_error() {
        let code = toric3();
        let out = decode_cycle(&code, &BitVector::zeros(18), &BpConfig::new(0.05), None).unwrap();
        assert!(out.converged_bp);
        assert_eq!(out.bp_iterations, 1);
        assert!(!out.logical_failure);
        assert!(out.correction.is_zero());
    }

    #[test]
    fn stabiliser_error_is_harmless() {
        let code = toric3();
        let x = code.hx().row_vector(0);
        let out = decode_cycle(&code, &x, &BpConfig::new(0.05), Some(OsdStrategy::Osd0)).unwrap();
        assert!(out.syndrome.is_zero());
        assert_eq!(out.residual, x);
        assert!(!out.logical_failure);
    }

    #[test]
    fn logical_error_is_a_failure() {
        let code = toric3();
        let x = code.lx().row_vector(0);
        let out = decode_cycle(&code, &x, &BpConfig::new(0.05), Some(OsdStrategy::Osd0)).unwrap();
        assert!(out.syndrome.is_zero());
        assert!(out.correction.is_zero());
        assert!(out.logical_failure);
    }

    #[test]
    fn labels() {
        assert_eq!(DecoderConfig::bp().label(), "bp");
        assert_eq!(DecoderConfig::bp_osd(OsdStrategy::Osd0).label(), "bp-osd0");
        let cs = DecoderConfig::bp_osd(OsdStrategy::CombinationSweep { lambda: 7 });
        assert_eq!((cs.label(), cs.lambda()), ("bp-osd-cs", Some(7)));
        assert_eq!(DecoderConfig::bp_osd(OsdStrategy::Exhaustive { lambda: 3 }).label(), "bp-osd-e");
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(decode_cycle(&toric3(), &BitVector::zeros(5), &BpConfig::new(0.1), None).is_err());
    }
}
