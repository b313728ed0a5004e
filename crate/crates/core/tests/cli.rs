use std::path::PathBuf;
use std::process::Command;

use olfm::cli::run;
use olfm::Society;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn olfm(args: &[&str]) -> (String, String, i32) {
    run(std::iter::once("olfm").chain(args.iter().copied()))
}

fn column(tsv: &str, name: &str) -> Vec<String> {
    let mut lines = tsv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let k = header.iter().position(|&h| h == name).unwrap();
    lines.map(|l| l.split('\t').nth(k).unwrap().to_string()).collect()
}

#[test]
fn classify_seven_actor() {
    let (out, _, code) = olfm(&["classify", &data("seven_actor.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        column(&out, "class"),
        [
            "leader",
            "leader",
            "independent",
            "mediator",
            "mediator",
            "follower",
            "follower"
        ]
    );
    assert_eq!(column(&out, "layer"), ["1", "1", "1", "2", "2", "2", "3"]);
    let (out, _, _) = olfm(&["classify", &data("single.json")]);
    assert_eq!(out.lines().nth(1), Some("1\tindependent\t1\t0\t0"));
}

#[test]
fn classify_rejects_non_layered() {
    let (out, err, code) = olfm(&["classify", &data("not_layered.json")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("edge (1, 3)"), "{err}");
}

#[test]
fn decide_rows() {
    assert_eq!(
        olfm(&["decide", &data("seven_actor.json"), "0100101"]).0,
        "c=0100111 C=1\n"
    );
    assert_eq!(
        olfm(&["decide", &data("seven_actor.json"), "0000000"]).0,
        "c=0000000 C=0\n"
    );
    assert_eq!(olfm(&["decide", &data("fan_in.json"), "01110"]).0, "c=11110 C=1\n");
    assert_eq!(
        olfm(&["decide", "--integer", &data("seven_actor.json"), "37"]).0,
        "c=0100111 C=1\n"
    );
    let (_, err, code) = olfm(&["decide", &data("seven_actor.json"), "0101"]);
    assert_eq!(code, 2);
    assert!(err.contains("4 bits"), "{err}");
}

#[test]
fn decide_json_and_rule_override() {
    let (out, _, _) = olfm(&["decide", "--format", "json", &data("seven_actor.json"), "0100101"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c"], "0100111");
    assert_eq!(v["c_int"], 0b0100111);
    assert_eq!(v["C"], 1);
    // q = 1/2 on 3 leaders: two agreeing leaders convert the follower
    let (out, _, _) = olfm(&[
        "decide",
        "--rule",
        "fraction",
        "--q",
        "1/2",
        &data("fan_in.json"),
        "01100",
    ]);
    assert_eq!(out, "c=11100 C=1\n");
    let (out, _, _) = olfm(&["decide", &data("fan_in.json"), "01100"]);
    assert_eq!(out, "c=01100 C=0\n");
    // file rule q = 0.6 -> threshold 1 of 3
    let (out, _, _) = olfm(&["decide", &data("fan_in_fraction.json"), "01100"]);
    assert_eq!(out, "c=11100 C=1\n");
    let (_, _, code) = olfm(&["decide", "--rule", "fraction", &data("fan_in.json"), "01100"]);
    assert_eq!(code, 2);
}

#[test]
fn ties_follow_tie_rule() {
    let dir = tempdir();
    let even = dir.join("even.json");
    std::fs::write(&even, r#"{"n": 2, "edges": [], "rule": {"type": "unanimity"}}"#).unwrap();
    let even = even.display().to_string();
    let (_, err, code) = olfm(&["decide", &even, "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("tie"), "{err}");
    assert_eq!(olfm(&["decide", "--tie-rule", "ones-win", &even, "10"]).0, "c=10 C=1\n");
    assert_eq!(
        olfm(&["decide", "--tie-rule", "zeros-win", &even, "10"]).0,
        "c=10 C=0\n"
    );
    assert_eq!(olfm(&["scores", &even]).2, 2);
    let (out, _, code) = olfm(&["scores", "--tie-rule", "ones-win", &even]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "sat"), ["3", "3"]);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("olfm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn table_layouts() {
    let (out, _, code) = olfm(&["table", &data("single.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "x\tc\tC\n0\t0\t0\n1\t1\t1\n");
    let (out, _, _) = olfm(&["table", &data("seven_actor.json")]);
    assert_eq!(out.lines().count(), 129);
    let (out, _, _) = olfm(&["table", &data("twoleader3.json")]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "000\t000\t0",
            "001\t001\t0",
            "010\t010\t0",
            "011\t111\t1",
            "100\t000\t0",
            "101\t101\t1",
            "110\t110\t1",
            "111\t111\t1",
        ]
    );
    let (_, _, code) = olfm(&["table", "--cap", "5", &data("seven_actor.json")]);
    assert_eq!(code, 4);
}

#[test]
fn scores_outputs() {
    let (out, _, code) = olfm(&["scores", &data("seven_actor.json")]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "sat"), ["104", "88", "72", "64", "88", "64", "72"]);
    assert!(column(&out, "consistent").iter().all(|c| c == "ok"));
    assert!(out.contains("# total_sat=552 sum_sat=552 normalization=ok"));
    assert_eq!(
        column(&olfm(&["scores", &data("star3.json")]).0, "sat"),
        ["8", "4", "4"]
    );
    assert_eq!(
        column(&olfm(&["scores", &data("twoleader3.json")]).0, "sat"),
        ["6", "6", "6"]
    );

    let (out, _, _) = olfm(&[
        "scores",
        "--format",
        "json",
        "--workers",
        "4",
        &data("seven_actor.json"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total_sat"], 552);
    assert_eq!(v["actors"][0]["sat"], 104);
    assert_eq!(v["actors"][3]["class"], "Mediator");
    assert_eq!(v["rae"][0], 104);
    let (_, _, code) = olfm(&["scores", "--cap", "3", &data("seven_actor.json")]);
    assert_eq!(code, 4);
    let (_, _, code) = olfm(&["scores", "--workers", "0", &data("seven_actor.json")]);
    assert_eq!(code, 2);
}

#[test]
fn scores_identical_across_workers() {
    let one = olfm(&["scores", &data("seven_actor.json")]).0;
    for w in ["2", "8"] {
        assert_eq!(olfm(&["scores", "--workers", w, &data("seven_actor.json")]).0, one);
    }
}

#[test]
fn verify_zero_trials() {
    let (out, _, code) = olfm(&["verify", "--trials", "0"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

#[test]
fn verify_sources_only_passes() {
    let (out, _, code) = olfm(&[
        "verify",
        "--seed",
        "7",
        "--trials",
        "20",
        "--n-range",
        "3..9",
        "--sources-only",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all axioms hold: 20/20 per axiom"), "{out}");
}

#[test]
fn verify_reports_layered_counterexamples() {
    let (out, _, code) = olfm(&["verify", "--seed", "7", "--trials", "100", "--properties", "4b"]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("property 4b"));
    assert!(out.contains("counterexample"));
}

#[test]
fn verify_negative_control() {
    let (out, _, code) = olfm(&["verify", "--seed", "7", "--trials", "10", "--negative-control"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("negative control: 10/10"), "{out}");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "11", "--trials", "15", "--format", "json"];
    assert_eq!(olfm(&args).0, olfm(&args).0);
}

#[test]
fn verify_bad_params() {
    assert_eq!(olfm(&["verify", "--n-range", "4..4"]).2, 2);
    assert_eq!(olfm(&["verify", "--properties", "9"]).2, 2);
    assert_eq!(olfm(&["verify", "--n-range", "9..3"]).2, 2);
}

#[test]
fn emitted_json_reparses() {
    let text = std::fs::read_to_string(data("seven_actor.json")).unwrap();
    let s = Society::from_json(&text).unwrap();
    assert_eq!(Society::from_json(&s.to_json()).unwrap(), s);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_olfm");
    let ok = Command::new(bin)
        .args(["decide", &data("seven_actor.json"), "0100101"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "c=0100111 C=1\n");
    let bad = Command::new(bin)
        .args(["classify", &data("not_layered.json")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let missing = Command::new(bin)
        .args(["classify", "/nonexistent.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
