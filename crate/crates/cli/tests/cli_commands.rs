use std::path::Path;
use std::process::{Command, Output};

use qldpc::bp::{decode_bp, BpConfig};
use qldpc::codes::repetition_code;
use qldpc::css::hgp_symmetric;
use qldpc::BitVector;

fn qldpc(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qldpc"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn construct_writes_matrices_and_params() {
    let dir = tempfile::tempdir().unwrap();
    let out = qldpc(&["construct", "--code", "toric", "--n", "3", "--out", "t3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[[18,2,—]]"), "{}", stdout(&out));
    for f in ["hx.alist", "hz.alist", "lx.alist", "lz.alist", "params.json"] {
        assert!(dir.path().join("t3").join(f).is_file(), "{f}");
    }

    let out = qldpc(
        &["construct", "--code", "semi-topological", "--g", "1", "--distance", "--out", "st1"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[[145,5,6]]"), "{}", stdout(&out));
    let params: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("st1/params.json")).unwrap()).unwrap();
    assert_eq!(params["n"], 145);
    assert_eq!(params["k"], 5);
    assert_eq!(params["l_q"], 6);
    assert_eq!(params["q_q"], 5);

    let out = qldpc(
        &["construct", "--code", "random-hgp", "--n", "16", "--seed", "1", "--out", "r16"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("[[400,16,"), "{}", stdout(&out));
}

#[test]
fn decode_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qldpc(&["construct", "--code", "toric", "--n", "3", "--out", "t3"], dir.path()).status.code(), Some(0));

    let zero = "0".repeat(9);
    let out = qldpc(&["decode", "--matrix", "t3/hz.alist", "--syndrome", &zero], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("bp converged iter=1\n"), "{text}");
    assert!(text.contains("weight: 0"));
    assert!(text.contains("syndrome satisfied: true"));

    // A weight-2 error whose syndrome BP cannot settle.
    let code = hgp_symmetric(&repetition_code(3, true).unwrap()).unwrap();
    let h = code.hz();
    let split = (0..18)
        .flat_map(|a| (a + 1..18).map(move |b| (a, b)))
        .map(|(a, b)| h.mat_vec(&BitVector::from_support(18, vec![a, b]).unwrap()).unwrap())
        .find(|s| !decode_bp(h, s, &BpConfig::new(0.05)).unwrap().converged)
        .expect("toric-3 has a split-belief syndrome");
    let bits: String = split.to_dense().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();

    let out = qldpc(&["decode", "--matrix", "t3/hz.alist", "--syndrome", &bits, "--lambda", "4"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("bp failed iter=18; osd-cs candidates=16 k'=10"), "{text}");
    assert!(text.contains("syndrome satisfied: true"));

    let out = qldpc(&["decode", "--matrix", "t3/hz.alist", "--syndrome", &bits, "--decoder", "bp"], dir.path());
    assert!(stdout(&out).contains("no post-processing"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.alist"), "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 x\n2 3\n").unwrap();
    let out = qldpc(&["decode", "--matrix", "bad.alist", "--syndrome", "11"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 8"), "{}", stderr(&out));

    let out = qldpc(&["decode", "--matrix", "missing.alist", "--syndrome", "11"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["construct", "--code", "toric", "--out", "x"][..],
        &["construct", "--code", "hexagonal", "--n", "3", "--out", "x"],
        &["sweep", "--code", "toric", "--n", "3"],
        &["sweep", "--code", "toric", "--n", "3", "--p-grid", "0.2:0.1:0.01"],
        &["sweep", "--manifest", "m.json", "--p", "0.1"],
        &["decode", "--matrix", "h.alist", "--syndrome", "1", "--p", "0.7"],
        &["frobnicate"],
    ] {
        let out = qldpc(args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(qldpc(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn single_code_sweep_has_no_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let out = qldpc(
        &["sweep", "--code", "toric", "--n", "3", "--p-grid", "0.05,0.1", "--trials", "200", "--decoder", "bp-osd0", "--out", "s"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("bp-osd0: threshold: n/a"), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.path().join("s/results.csv")).unwrap();
    assert!(csv.starts_with("code_id,n,k,d,p,trials,failures,p_L,ci_low,ci_high,decoder,lambda,seed\n"), "{csv}");
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn replayed_manifest_is_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let out = qldpc(
        &[
            "sweep", "--code", "toric", "--n", "3,4", "--p-grid", "0.06:0.1:0.02", "--trials", "400",
            "--decoder", "bp", "--decoder", "bp-osd-cs", "--seed", "5", "--out", "first",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let first = std::fs::read(dir.path().join("first/results.csv")).unwrap();

    for workers in ["1", "3"] {
        let target = format!("replay{workers}");
        let out = qldpc(
            &["sweep", "--manifest", "first/manifest.json", "--workers", workers, "--out", &target],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let again = std::fs::read(dir.path().join(&target).join("results.csv")).unwrap();
        assert_eq!(first, again, "workers={workers}");
    }
}
