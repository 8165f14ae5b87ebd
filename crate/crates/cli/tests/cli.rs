//! End-to-end tests driving the compiled binary: exit-code contract, JSON
//! schema stability, and the documented subcommand behaviors.

use std::process::{Command, Output};

use chern_einstein::search::ClassificationReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ce-classify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn classify_su11_reports_two_negative() {
    let out = run(&["classify", "--form", "su:1,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: ClassificationReport = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report.weyl_order, 2);
    assert_eq!(report.counts.neg, 2);
    assert_eq!(report.witnesses.len(), 2);
}

#[test]
fn classify_verify_su32_passes() {
    let out = run(&["classify", "--form", "su:3,2", "--verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: ClassificationReport = serde_json::from_str(
        stdout(&out).lines().next().unwrap(),
    )
    .unwrap();
    assert_eq!(report.counts.zero, 12);
}

#[test]
fn classify_verify_soo32_all_none() {
    let out = run(&["classify", "--form", "so:3,2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("none=8"));
}

#[test]
fn classify_verify_sl2_avatar_exits_3() {
    // sp(1,R) is sl(2,R): the sweep finds its two λ<0 chambers, which the
    // row-by-name prediction table does not list; --verify reports that.
    let out = run(&["classify", "--form", "sp:1", "--verify"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sp(1,R)"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["classify", "--form", "so:3,3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["classify", "--form", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // clap's own parse failures use exit code 2 as well.
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["tables", "--norm", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_cap_exceeded_exits_2() {
    let out = run(&["classify", "--form", "so:9,8", "--rank-cap", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("10321920"), "{err}");
}

#[test]
fn json_round_trip_is_byte_identical() {
    for form in ["su:3,2", "so:5,4", "sp:2,1"] {
        let out = run(&["classify", "--form", form, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out).trim().to_string();
        let report: ClassificationReport = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string(&report).unwrap();
        // elapsed_ms is part of the emitted report and round-trips with it.
        assert_eq!(text, again);
    }
}

#[test]
fn shard_flag_leaves_report_unchanged() {
    let a = run(&["classify", "--form", "so:5,4", "--format", "json"]);
    let b = run(&[
        "classify", "--form", "so:5,4", "--format", "json", "--shards", "5",
    ]);
    let ra: ClassificationReport = serde_json::from_str(stdout(&a).trim()).unwrap();
    let rb: ClassificationReport = serde_json::from_str(stdout(&b).trim()).unwrap();
    assert!(ra.same_outcome(&rb));
}

#[test]
fn example_su32_default_passes() {
    let out = run(&["example-su32"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ricci flat           true"));
    assert!(text.contains("matches lists        true"));
}

#[test]
fn example_su32_perturbed_exits_3() {
    // The identity permutation is not Ricci-flat.
    let out = run(&["example-su32", "--perm", "1 2 3 4 5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("ricci flat           false"));

    // The cycle (245) has the same block preimage {1,3,5}, so it is still
    // Ricci-flat, but its chamber differs from the published lists.
    let out = run(&["example-su32", "--perm", "1 4 3 5 2"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("ricci flat           true"));
    assert!(text.contains("matches lists        false"));
}

#[test]
fn example_su32_sweep_lists_twelve_flats() {
    let out = run(&["example-su32", "--sweep", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["flat_chambers"].as_array().unwrap().len(), 12);
}

#[test]
fn tables_lambda_values() {
    let out = run(&["tables", "--rank-cap", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v["table2"].as_array().unwrap();
    let find = |form: &str, isotropy: &str| {
        rows.iter()
            .find(|r| r["form"] == form && r["isotropy"] == isotropy)
            .unwrap_or_else(|| panic!("{form}/{isotropy} present"))
            .clone()
    };
    let so42 = find("so(4,2)", "R+su(2)+so(2)");
    assert_eq!(so42["lambda"], "-2/1");
    assert_eq!(so42["sign"], "neg");
    let so62 = find("so(6,2)", "R+su(3)+so(2)");
    assert_eq!(so62["lambda"], "0/1");
    assert_eq!(so62["sign"], "zero");
}

#[test]
fn tables_norm_scales_lambda() {
    let out = run(&["tables", "--rank-cap", "3", "--norm", "1/2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let rows = v["table2"].as_array().unwrap();
    let so12 = rows
        .iter()
        .find(|r| r["form"] == "so(1,2)")
        .unwrap();
    // λ doubles when the pairing is halved; the sign never changes.
    assert_eq!(so12["lambda"], "-4/1");
    assert_eq!(so12["sign"], "neg");
}

#[test]
fn csv_output_has_witness_rows() {
    let out = run(&["classify", "--form", "su:2,1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "form,rank,weyl_order,perm,signs,lambda_sign,delta"
    );
    assert_eq!(lines.clone().count(), 2); // the two flat chambers
    assert!(lines.all(|l| l.starts_with("su(2,1),2,6,")));
}

#[test]
fn check_identities_small_run() {
    let out = run(&[
        "check-identities",
        "--exhaustive-rank",
        "2",
        "--samples",
        "25",
        "--sample-rank",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("identities: ok"));
}
