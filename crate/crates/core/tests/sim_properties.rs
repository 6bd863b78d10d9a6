use qldpc::codes::{mackay_neal_ldpc, repetition_code};
use qldpc::css::{hgp_symmetric, CssCode};
use qldpc::osd::OsdStrategy;
use qldpc::sim::{
    decode_cycle, run_decoders, run_monte_carlo, sample_bsc, sweep_and_estimate_threshold, trial_rng,
    DecodePath, DecoderConfig, RunOptions, SweepCode, ThresholdEstimate,
};

fn toric(l: usize) -> CssCode {
    hgp_symmetric(&repetition_code(l, true).unwrap()).unwrap()
}

#[test]
fn every_trial_satisfies_its_syndrome() {
    let codes = [toric(3), toric(5), hgp_symmetric(&mackay_neal_ldpc(16, 3, 4, 1).unwrap()).unwrap()];
    for code in &codes {
        for decoder in [
            DecoderConfig::bp_osd(OsdStrategy::Osd0),
            DecoderConfig::bp_osd(OsdStrategy::CombinationSweep { lambda: 20 }),
        ] {
            let config = decoder.bp_config(0.08);
            for t in 0..300 {
                let x = sample_bsc(code.n(), 0.08, &mut trial_rng(17, t)).unwrap();
                let out = decode_cycle(code, &x, &config, decoder.osd).unwrap();
                assert_eq!(code.hz().mat_vec(&out.correction).unwrap(), out.syndrome);
                assert_eq!(code.hz().mat_vec(&x).unwrap(), out.syndrome);
                assert_eq!(out.residual, x.xor(&out.correction).unwrap());
                let flips = !code.lz().mat_vec(&out.residual).unwrap().is_zero();
                assert_eq!(out.logical_failure, flips);
                assert_eq!(out.decode_path == DecodePath::BpOsd, !out.converged_bp);
            }
        }
    }
}

#[test]
fn plain_bp_counts_non_convergence_as_failure() {
    let code = toric(4);
    let config = DecoderConfig::bp().bp_config(0.1);
    for t in 0..300 {
        let x = sample_bsc(code.n(), 0.1, &mut trial_rng(3, t)).unwrap();
        let out = decode_cycle(&code, &x, &config, None).unwrap();
        assert_eq!(out.decode_path, DecodePath::BpOnly);
        if !out.converged_bp {
            assert!(out.logical_failure);
        }
    }
}

#[test]
fn results_are_reproducible() {
    let code = toric(4);
    let decoders = [DecoderConfig::bp(), DecoderConfig::bp_osd(OsdStrategy::CombinationSweep { lambda: 60 })];
    let a = run_decoders(&code, 0.09, &decoders, &RunOptions::trials(1500, 8)).unwrap();
    let b = run_decoders(&code, 0.09, &decoders, &RunOptions::trials(1500, 8).with_workers(3)).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((x.trials, x.failures, x.bp_converged), (y.trials, y.failures, y.bp_converged));
        assert_eq!((x.p_l, x.ci_low, x.ci_high), (y.p_l, y.ci_low, y.ci_high));
    }
    let c = run_decoders(&code, 0.09, &decoders, &RunOptions::trials(1500, 9)).unwrap();
    assert_ne!(a[0].failures, c[0].failures);
}

#[test]
fn failure_rate_grows_with_p() {
    let code = toric(3);
    let decoder = DecoderConfig::bp_osd(OsdStrategy::CombinationSweep { lambda: 60 });
    let stats: Vec<_> = [0.02, 0.05, 0.08, 0.11, 0.14]
        .iter()
        .map(|&p| run_monte_carlo(&code, p, &decoder, &RunOptions::trials(3000, 2)).unwrap())
        .collect();
    for w in stats.windows(2) {
        assert!(w[1].p_l >= w[0].p_l || w[0].overlaps(&w[1]), "{:?}", w);
    }
}

#[test]
fn sweep_reports_per_decoder() {
    let codes: Vec<SweepCode> = [3, 4]
        .iter()
        .map(|&l| SweepCode {
            id: format!("toric-{l}"),
            code: toric(l),
            distance: Some(l),
        })
        .collect();
    let decoders = [DecoderConfig::bp(), DecoderConfig::bp_osd(OsdStrategy::Osd0)];
    let r = sweep_and_estimate_threshold(&codes, &[0.05, 0.1], &decoders, &RunOptions::trials(300, 1)).unwrap();
    assert_eq!(r.curves.len(), 4);
    assert_eq!(r.thresholds.len(), 2);
    assert_eq!(r.curves[1].decoder, decoders[1]);
    assert_eq!(r.thresholds[0].decoder, "bp");

    let single = sweep_and_estimate_threshold(&codes[..1], &[0.05, 0.1], &decoders[..1], &RunOptions::trials(50, 1)).unwrap();
    assert_eq!(single.thresholds[0].estimate, ThresholdEstimate::NotApplicable);
}
