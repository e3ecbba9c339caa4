use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use quadseq::families::{gen_family_l, gen_family_w, read_sequence_file, FamilyConfig, FamilyKind};
use quadseq::ring::RingContext;
use serde_json::Value;

fn quadseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadseq")).args(args).env_remove("QUADSEQ_POLY_TABLE").output().unwrap()
}

fn quadseq_with_table(table: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadseq")).args(args).env("QUADSEQ_POLY_TABLE", table).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn config(kind: FamilyKind) -> FamilyConfig {
    FamilyConfig::new(Arc::new(RingContext::new(2, 2).unwrap()), kind, 1, None).unwrap()
}

#[test]
fn gen_family_v_writes_17_sequences() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.txt");
    let out = quadseq(&["gen", "--family", "V", "--e", "2", "--m", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("period=15 size=17"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# family=V n=4 e=2 m=2 rho=1 lambda_log=5 period=15 count=17\n"));
    let parsed = read_sequence_file(text.as_bytes()).unwrap();
    assert_eq!(parsed.sequences.len(), 17);
    assert!(parsed.sequences.iter().all(|(_, v)| v.len() == 15));
}

#[test]
fn gen_family_w_writes_16_sequences() {
    let out = quadseq(&["gen", "--family", "W", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let parsed = read_sequence_file(out.stdout.as_slice()).unwrap();
    assert_eq!(parsed.header.rho, 0);
    assert_eq!(parsed.sequences.len(), 16);
    assert!(parsed.sequences.iter().all(|(_, v)| v.len() == 30));
    // the summary goes to stderr when stdout carries the file
    assert!(stderr(&out).contains("period=30 size=16"));
}

#[test]
fn rho_out_of_range_is_a_config_error() {
    let out = quadseq(&["gen", "--family", "L", "--e", "2", "--m", "2", "--rho", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("rho"));
    assert!(out.stdout.is_empty());
}

#[test]
fn generated_files_round_trip() {
    for kind in [FamilyKind::V, FamilyKind::W] {
        let out = quadseq(&["gen", "--family", &kind.to_string(), "--e", "2", "--m", "2"]);
        let parsed = read_sequence_file(out.stdout.as_slice()).unwrap();
        let cfg = config(kind);
        let in_memory = match kind {
            FamilyKind::W => {
                let (mut u, v) = gen_family_w(&cfg).unwrap();
                u.extend(v);
                u
            }
            _ => gen_family_l(&cfg).unwrap(),
        };
        assert_eq!(parsed.sequences.len(), in_memory.len());
        for ((idx, values), s) in parsed.sequences.iter().zip(&in_memory) {
            assert_eq!((*idx, values), (s.meta.index, &s.values));
        }
    }
}

#[test]
fn spectrum_csv_has_one_row_per_triple() {
    let out = quadseq(&["spectrum", "--family", "V", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,tau,re,im"));
    assert_eq!(lines.count(), 17 * 17 * 15);
}

#[test]
fn spectrum_from_file_matches_generated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    assert_eq!(code(&quadseq(&["gen", "--family", "W", "--e", "2", "--m", "2", "--out", path.to_str().unwrap()])), 0);
    let from_file = quadseq(&["spectrum", "--input", path.to_str().unwrap(), "--format", "json"]);
    let generated = quadseq(&["spectrum", "--family", "W", "--e", "2", "--m", "2", "--format", "json"]);
    assert_eq!(code(&from_file), 0, "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, generated.stdout);
    let report = json(&generated);
    assert_eq!(report["family"], "W");
    assert_eq!(report["params"]["period"], 30);
    let total: u64 = report["histogram"].as_array().unwrap().iter().map(|b| b["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 16 * 16 * 30);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let runs = [
        vec!["spectrum", "--family", "V", "--e", "2", "--m", "2"],
        vec!["spectrum", "--family", "L", "--e", "2", "--m", "3", "--rho", "2", "--samples", "500", "--seed", "9"],
        vec!["lincomp", "--family", "W", "--e", "2", "--m", "2"],
        vec!["kernel-count", "--e", "2", "--m", "3", "--rho", "2", "--samples", "2", "--format", "json"],
        vec!["verify", "--suite", "theorem1", "--e", "2", "--m", "3", "--rho", "2", "--samples", "300"],
    ];
    for args in runs {
        let a = quadseq(&args);
        let b = quadseq(&args);
        let mut single = vec!["--jobs", "1"];
        single.extend_from_slice(&args);
        let c = quadseq(&single);
        assert_eq!(code(&a), 0, "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?} with one thread");
    }
}

#[test]
fn sampled_spectrum_reports_seed_and_count() {
    let out = quadseq(&["spectrum", "--family", "L", "--e", "2", "--m", "3", "--rho", "2", "--samples", "200", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["params"]["samples"], 200);
    assert_eq!(report["params"]["seed"], 1);
    let csv = quadseq(&["spectrum", "--family", "L", "--e", "2", "--m", "3", "--rho", "2", "--samples", "200"]);
    assert_eq!(stdout(&csv).lines().count(), 201);
}

#[test]
fn oversized_workloads_are_refused_with_guidance() {
    let out = quadseq(&["spectrum", "--family", "V", "--e", "2", "--m", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--samples"));
    let out = quadseq(&["verify", "--suite", "eq2", "--e", "2", "--m", "4"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--samples"));
}

#[test]
fn verify_eq2_checks_every_pair() {
    let out = quadseq(&["verify", "--suite", "eq2", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["checks"][0]["checked"], 65_536);
    assert_eq!(report["sampling"], Value::Null);
}

#[test]
fn verify_theorem3_passes() {
    let out = quadseq(&["verify", "--suite", "theorem3", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["checks"][0]["checked"], 17 * 17 * 15 - 17);
    assert_eq!(report["checks"][0]["violation_count"], 0);
}

#[test]
fn verify_theorem5_matches_all_16() {
    let out = quadseq(&["verify", "--suite", "theorem5", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["checks"][0]["checked"], 16);
    assert_eq!(report["checks"][0]["notes"][0], "16/16 formula-oracle matches");
}

#[test]
fn verify_theorem4_reports_the_cross_pair_zeros() {
    let out = quadseq(&["verify", "--suite", "theorem4", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks[0]["pass"].as_bool().unwrap());
    assert!(checks[1]["pass"].as_bool().unwrap());
    assert!(!checks[2]["pass"].as_bool().unwrap());
    for v in checks[2]["violations"].as_array().unwrap() {
        assert_eq!((v["re"].as_i64(), v["im"].as_i64()), (Some(0), Some(0)));
        let (i, j) = (v["i"].as_u64().unwrap(), v["j"].as_u64().unwrap());
        assert_ne!(i < 8, j < 8, "cross pair expected, got ({i}, {j})");
    }
}

#[test]
fn verify_rejects_mismatched_family() {
    let out = quadseq(&["verify", "--suite", "theorem4", "--family", "V", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_kernel_and_lemma1_pass() {
    for suite in ["kernel", "lemma1", "theorem1", "theorem2"] {
        let out = quadseq(&["verify", "--suite", suite, "--e", "2", "--m", "2"]);
        assert_eq!(code(&out), 0, "{suite}: {}", stderr(&out));
    }
}

#[test]
fn kernel_count_table_n4() {
    let out = quadseq(&["kernel-count", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 15);
    for r in &rows {
        let count: u64 = r[2].parse().unwrap();
        if r[1] == "0" {
            // delta = 1: every z is a root
            assert_eq!(count, 16);
        } else {
            assert!(count == 1 || count == 4);
            assert_eq!(r[3] == "true", count == 4);
        }
    }
}

#[test]
fn lincomp_json_fields() {
    let out = quadseq(&["lincomp", "--family", "V", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 17);
    for r in rows {
        assert_eq!(r["measured"], r["formula"]);
        assert_eq!(r["match"], true);
    }
    assert_eq!(rows[16]["index"], 17);
    assert_eq!(rows[16]["measured"], 4);
}

#[test]
fn ring_info_reports_polynomials() {
    let out = quadseq(&["ring-info", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let info = json(&out);
    assert_eq!(info["binary_poly"], "1,1,0,0,1");
    assert_eq!(info["lifted_poly"], "1,3,2,0,1");
    assert_eq!(info["unit_group_order"], 15);
}

#[test]
fn poly_table_override() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.txt");
    std::fs::write(&table, "# x^4 + x^3 + 1\n4: 1,0,0,1,1\n").unwrap();
    let out = quadseq_with_table(&table, &["ring-info", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["binary_poly"], "1,0,0,1,1");
    // the value set does not depend on the polynomial
    let out = quadseq_with_table(&table, &["verify", "--suite", "theorem3", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);

    let out = quadseq_with_table(&table, &["ring-info", "--e", "2", "--m", "3"]);
    assert_eq!(code(&out), 2);
    std::fs::write(&table, "4: 1,1,1,1,1\n").unwrap();
    let out = quadseq_with_table(&table, &["ring-info", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 1"));
    let out = quadseq_with_table(&dir.path().join("missing.txt"), &["ring-info", "--e", "2", "--m", "2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_input_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "# family=V n=4 e=2 m=2 rho=1 lambda_log=5 period=15 count=2\n1:0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n2:0,5\n").unwrap();
    let out = quadseq(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn io_failures_exit_3() {
    let out = quadseq(&["gen", "--family", "V", "--e", "2", "--m", "2", "--out", "/nonexistent-dir/v.txt"]);
    assert_eq!(code(&out), 3);
    let out = quadseq(&["spectrum", "--input", "/nonexistent-dir/v.txt"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&quadseq(&["verify", "--suite", "theorem9", "--e", "2", "--m", "2"])), 2);
    assert_eq!(code(&quadseq(&["gen", "--family", "X", "--e", "2", "--m", "2"])), 2);
    assert_eq!(code(&quadseq(&["gen", "--family", "V"])), 2);
}
