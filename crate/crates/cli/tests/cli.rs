//! End-to-end behavior of the `chieftain` binary: exit codes, report
//! determinism, and human-readable output, driven over small corpora.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chieftain"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Writes a corpus file containing the named builtin entries.
fn corpus_file(stem: &str, names: &[&str]) -> PathBuf {
    let entries: Vec<chieftain_core::CorpusEntry> = names
        .iter()
        .map(|n| {
            chieftain_core::find_entry(chieftain_core::builtin_corpus(), n)
                .expect("builtin entry")
                .clone()
        })
        .collect();
    let path = std::env::temp_dir().join(format!("chieftain-{stem}-{}.jsonl", std::process::id()));
    std::fs::write(&path, chieftain_core::serialize_corpus(&entries)).expect("write corpus");
    path
}

#[test]
fn info_prints_profile() {
    let out = run(&["info", "builtin", "S4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order 24 = 2^3 * 3"), "{text}");
    assert!(text.contains("supersoluble: no"), "{text}");
    assert!(text.contains("p = 3: p-nilpotent no, p-soluble yes, p-supersoluble yes"), "{text}");
}

#[test]
fn info_unknown_group_exits_2() {
    let out = run(&["info", "builtin", "M11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no group named"), "{}", stderr(&out));
}

#[test]
fn bad_corpus_path_exits_2() {
    let out = run(&["info", "/nonexistent/corpus.jsonl", "S4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_pi_reports_failing_edge() {
    let out = run(&[
        "check-pi",
        "--group",
        "PSL27",
        "--subgroup",
        "derived-of-sylow:2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("satisfies: no"), "{text}");
    assert!(text.contains("normalizer index 21"), "{text}");
}

#[test]
fn check_pi_witness_series_in_normalizer_ambient() {
    let out = run(&[
        "check-pi",
        "--group",
        "S4",
        "--subgroup",
        "sylow:2",
        "--ambient",
        "normalizer-of-sylow:2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("satisfies: yes"), "{text}");
    assert!(text.contains("witness series orders: 1 < 2 < 4 < 8"), "{text}");
}

#[test]
fn check_pi_cyclic_element_spec() {
    let out = run(&["check-pi", "--group", "S4", "--subgroup", "cyclic:(1 2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order 2"), "{text}");
}

#[test]
fn check_pi_rejects_bad_subgroup_kind() {
    let out = run(&["check-pi", "--group", "S4", "--subgroup", "centre:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_pi_rejects_subgroup_outside_ambient() {
    // A Sylow 3-subgroup of S4 does not lie inside the Sylow 2-normalizer.
    let out = run(&[
        "check-pi",
        "--group",
        "S4",
        "--subgroup",
        "sylow:3",
        "--ambient",
        "normalizer-of-sylow:2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not lie"), "{}", stderr(&out));
}

#[test]
fn verify_clean_corpus_exits_0_with_report_file() {
    let corpus = corpus_file("clean", &["S3", "A4", "D8"]);
    let report = std::env::temp_dir().join(format!("chieftain-report-{}.jsonl", std::process::id()));
    let out = run(&[
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--checks",
        "T3,L8",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("suite  verified"), "{text}");
    let report_text = std::fs::read_to_string(&report).unwrap();
    let mut lines = report_text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("\"report\":\"chieftain-verify\""), "{header}");
    for line in report_text.lines() {
        serde_json::from_str::<serde_json::Value>(line).expect("every report line is JSON");
    }
    let last = report_text.lines().last().unwrap();
    assert!(last.contains("\"verified\""), "trailing summary line: {last}");
    std::fs::remove_file(&corpus).ok();
    std::fs::remove_file(&report).ok();
}

#[test]
fn verify_without_report_streams_jsonl_to_stdout() {
    let corpus = corpus_file("stream", &["S3"]);
    let out = run(&["verify", "--corpus", corpus.to_str().unwrap(), "--checks", "T3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with('{'), "stdout is the report stream: {text}");
    assert!(stderr(&out).contains("suite  verified"), "{}", stderr(&out));
    std::fs::remove_file(&corpus).ok();
}

#[test]
fn verify_tiny_cap_exits_3() {
    let corpus = corpus_file("capped", &["S4"]);
    let out = run(&[
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--checks",
        "T1",
        "--cap",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("skipped-cap"), "{}", stdout(&out));
    std::fs::remove_file(&corpus).ok();
}

#[test]
fn verify_unknown_check_exits_2() {
    let out = run(&["verify", "--checks", "T9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check id"), "{}", stderr(&out));
}

#[test]
fn verify_nonprime_primes_flag_exits_2() {
    let out = run(&["verify", "--checks", "T3", "--primes", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_deterministic_modulo_elapsed() {
    let corpus = corpus_file("determinism", &["S4", "SL23", "F21"]);
    let normalize = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                if v.get("elapsed_ms").is_some() {
                    v["elapsed_ms"] = serde_json::json!(0);
                }
                v.to_string()
            })
            .collect()
    };
    let args = [
        "verify",
        "--corpus",
        corpus.to_str().unwrap(),
        "--checks",
        "T3,T5,L2,L6",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(normalize(&a), normalize(&b));
    std::fs::remove_file(&corpus).ok();
}

#[test]
fn search_finds_expected_refutation() {
    let out = run(&["search", "--check", "T3", "--drop", "pprime-subgroup-condition"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PSL27 p=2"), "{text}");
    assert!(text.contains("refuted"), "{text}");
}

#[test]
fn search_without_refutation_exits_1() {
    // A corpus of one abelian group cannot refute the weakened statement.
    let corpus = corpus_file("norefute", &["C6"]);
    let out = run(&[
        "search",
        "--corpus",
        corpus.to_str().unwrap(),
        "--check",
        "T3",
        "--drop",
        "gcd-condition",
    ]);
    assert_eq!(out.status.code(), Some(1), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("NO refutation"), "{}", stdout(&out));
    std::fs::remove_file(&corpus).ok();
}

#[test]
fn search_rejects_non_nilpotency_suite() {
    let out = run(&["search", "--check", "L8", "--drop", "gcd-condition"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_rejects_unknown_drop() {
    let out = run(&["search", "--check", "T3", "--drop", "everything"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown hypothesis"), "{}", stderr(&out));
}
