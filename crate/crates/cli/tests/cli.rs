use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nashax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nashax"))
        .args(args)
        .env_remove("NASHAX_BUDGET")
        .env_remove("NASHAX_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn solve_prints_sets_in_linear_order() {
    let cases = [
        ("ex2", "nash", "(U,L) (D,R)"),
        ("ex5", "nash", "(U,L) (C,R) (D,L)"),
        ("pd", "nash", "(D,D)"),
        ("pd", "empty", "{}"),
        ("ex2", "ne_indifference_closure", "(U,L) (D,L) (D,R)"),
        ("ex2", "strong_nash", "(U,L)"),
        ("three_player", "nash", "(A,A,A)"),
    ];
    for (game, concept, expected) in cases {
        let out = nashax(&["solve", &fixture(game), "--concept", concept]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert_eq!(stdout(&out).trim_end(), expected, "{concept} on {game}");
    }
}

#[test]
fn solve_json_lists_label_profiles() {
    let out = nashax(&["solve", "ex2", "--concept", "nash", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!([["U", "L"], ["D", "R"]]));
}

#[test]
fn check_reports_strong_nash_merge_witness() {
    let out = nashax(&[
        "check",
        "--axiom",
        "mc",
        "--concept",
        "strong_nash",
        "--class",
        "ex2_dclosed",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("result:   violated"), "{text}");
    assert!(
        text.contains("(D,R) solves {D}×{L,R} and {U,D}×{R}"),
        "{text}"
    );

    let out = nashax(&[
        "check",
        "--axiom",
        "mc",
        "--concept",
        "strong_nash",
        "--class",
        "ex2_dclosed",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["axiom"], "mc");
    assert_eq!(v["class"], "ex2_dclosed");
    assert_eq!(v["result"], "violated");
    assert_eq!(v["witness"]["clause"], "mc");
    assert_eq!(v["witness"]["profile"], serde_json::json!(["D", "R"]));
}

#[test]
fn check_passing_verdict_has_no_witness() {
    let out = nashax(&[
        "check",
        "--axiom",
        "iis",
        "--concept",
        "nash",
        "--class",
        "pd_dclosed",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"], "pass");
    assert!(v["witness"].is_null());
}

#[test]
fn closure_directory_feeds_check() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().to_string_lossy().into_owned();
    let out = nashax(&["closure", &fixture("ex2"), "--mode", "d", "--out", &out_dir]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("9 games -> "), "{text}");
    let dir = PathBuf::from(text.trim_end().split(" -> ").nth(1).unwrap());
    assert!(dir.join("manifest.json").is_file());

    let out = nashax(&[
        "check",
        "--axiom",
        "iis",
        "--concept",
        "ne_indifference_closure",
        "--class",
        dir.to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert!(text.contains("class:    ex2 (9 games)"), "{text}");
    assert!(text.contains("result:   violated"), "{text}");
    assert!(text.contains("(D,L)"), "{text}");

    // same content, same directory name
    let again = nashax(&["closure", "ex2_dclosed", "--mode", "d", "--out", &out_dir]);
    assert!(stdout(&again).ends_with(&format!("{}\n", dir.display())));
}

#[test]
fn closure_modes_have_golden_sizes() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().to_str().unwrap();
    for (source, mode, size) in [
        ("pd", "d", 9),
        ("ex5", "reductions", 21),
        ("ex2", "reductions", 9),
        ("one_player_chain", "strict", 8),
        ("pd", "strict", 4),
    ] {
        let out = nashax(&["closure", source, "--mode", mode, "--out", out_dir]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(
            stdout(&out).starts_with(&format!("{size} games")),
            "{source} {mode}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn construct_commands() {
    let out = nashax(&[
        "construct",
        "--lemma",
        "1a",
        "--game",
        "ex2",
        "--profile",
        "D,L",
        "--concept",
        "ne_indifference_closure",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("violated: iis"));

    let out = nashax(&[
        "construct",
        "--lemma",
        "1b",
        "--game",
        "ex2",
        "--profile",
        "(U,L)",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[ok] H^1 equals G"));

    let out = nashax(&[
        "construct",
        "--lemma",
        "1b",
        "--game",
        "pd",
        "--profile",
        "C,C",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a Nash equilibrium"));

    let out = nashax(&["construct", "--lemma", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all_profiles"));
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"players\": 2,\n  \"strategies\": [[\"U\"] [\"L\"]]\n}\n",
    )
    .unwrap();
    let out = nashax(&["solve", bad.to_str().unwrap(), "--concept", "nash"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column"), "{}", stderr(&out));

    std::fs::write(
        &bad,
        "{\n  \"players\": 2,\n  \"strategies\": [[\"U\", \"D\"], [\"L\"]],\n  \"ranks\": [[0, 1], [0]]\n}\n",
    )
    .unwrap();
    let out = nashax(&["solve", bad.to_str().unwrap(), "--concept", "nash"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn domain_and_lookup_errors_exit_two() {
    for args in [
        vec!["solve", "ex2", "--concept", "ex5_phi_zz"],
        vec!["solve", "one_player_chain", "--concept", "ex5_phi"],
        vec![
            "check",
            "--axiom",
            "mc",
            "--concept",
            "nash",
            "--class",
            "no_such_class",
        ],
        vec![
            "check",
            "--axiom",
            "nope",
            "--concept",
            "nash",
            "--class",
            "ex2_dclosed",
        ],
    ] {
        let out = nashax(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "));
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nashax"))
        .args([
            "closure",
            "pd",
            "--mode",
            "d",
            "--out",
            tmp.path().to_str().unwrap(),
        ])
        .env("NASHAX_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget of 3"), "{}", stderr(&out));
}

#[test]
fn reproduce_matches_golden_output() {
    let out = nashax(&["reproduce"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let golden = include_str!("golden/reproduce.txt");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn reproduce_is_byte_stable_across_runs_and_jobs() {
    let first = nashax(&["reproduce"]).stdout;
    for _ in 0..2 {
        assert_eq!(nashax(&["reproduce"]).stdout, first);
    }
    assert_eq!(nashax(&["--jobs", "1", "reproduce"]).stdout, first);
    assert_eq!(nashax(&["reproduce", "--jobs", "6"]).stdout, first);
}
