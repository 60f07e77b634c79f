use std::io::Write;
use std::process::{Command, Output};

fn rootsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootsub")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rules_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn approx_sqrt2_last_row() {
    let out = rootsub(&["approx", "--m", "2", "--N", "2", "--iters", "16", "--digits", "14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 17, "header plus 16 rows");
    let last: Vec<&str> = rows[16].split_whitespace().collect();
    assert_eq!(&last[..4], &["16", "665857", "470832", "1.41421356237469"]);
    assert!(text.contains("# N^(1/m) = 1.41421356237309 (truncated)"));
    assert!(text.contains("# stop: max-iters"));
}

#[test]
fn approx_cbrt2_last_row() {
    let out = rootsub(&["approx", "--m", "3", "--N", "2", "--iters", "15", "--digits", "14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last: Vec<&str> = data_lines(&text)[15].split_whitespace().collect();
    assert_eq!(&last[4..6], &["1.26008968609865", "1.25988700564972"]);
}

#[test]
fn approx_trivial_root_tends_to_one() {
    let out = rootsub(&["approx", "--m", "2", "--N", "1", "--iters", "5", "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let nums: Vec<(u64, u64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[3].parse().unwrap(), r[4].parse().unwrap())
        })
        .collect();
    // [[1,1],[1,1]] sends (1,0) to (1,1) and then doubles: every ratio is 1.
    assert_eq!(nums, vec![(1, 1); 5]);
}

#[test]
fn approx_ratio_index_selects_one_column() {
    let out = rootsub(&["approx", "--m", "3", "--N", "2", "--iters", "5", "--ratio-index", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "iter,n0,n1,n2,r1_num,r1_den,r1_decimal,abs_err1");
    assert_eq!(text.lines().nth(5).unwrap(), "5,21,15,12,5,4,1.25000000000000,3/64");
}

#[test]
fn approx_stop_places_marks_the_last_row() {
    let out = rootsub(&["approx", "--iters", "200", "--stop-places", "10", "--format", "jsonl"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["stop"], "converged");
    assert!(last["iter"].as_u64().unwrap() < 200);
}

#[test]
fn approx_seed_counts_flag() {
    let out = rootsub(&["approx", "--iters", "1", "--seed-counts", "0,1", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().nth(1).unwrap(), "1,2,1,2,1,2.00000000000000,2");
}

#[test]
fn approx_errors() {
    assert_eq!(rootsub(&["approx", "--m", "1"]).status.code(), Some(1));
    assert_eq!(rootsub(&["approx", "--seed-counts", "0,0"]).status.code(), Some(1));
    assert_eq!(rootsub(&["approx", "--seed-counts", "1,0,0"]).status.code(), Some(1));
    assert_eq!(rootsub(&["approx", "--ratio-index", "1"]).status.code(), Some(1));
    assert_eq!(rootsub(&["approx", "--m", "two"]).status.code(), Some(2));
    assert_eq!(rootsub(&["approx", "--bogus"]).status.code(), Some(2));
}

#[test]
fn approx_with_rules_file_reports_power_iteration_limit() {
    let f = rules_file("0: 0 1\n1: 1 0 0\n");
    let out = rootsub(&["approx", "--rules-file", f.path().to_str().unwrap(), "--iters", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("limit of n0/n1 by power iteration ≈ 1.414213562373"), "{text}");
    // No exact error column without a root target.
    assert!(data_lines(&text)[3].ends_with(" -"));
}

#[test]
fn expand_word_lists() {
    let out = rootsub(&["expand", "--m", "2", "--N", "2", "--depth", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().last().unwrap(), "01100100010110001010110001100");
    let out = rootsub(&["expand", "--m", "3", "--N", "2", "--depth", "3"]);
    assert_eq!(stdout(&out).lines().last().unwrap(), "011212200");
    let out = rootsub(&["expand", "--depth", "0"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn expand_truncation_and_seed_errors() {
    let out = rootsub(&["expand", "--depth", "10", "--length-cap", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).lines().count(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("length cap"));
    assert_eq!(rootsub(&["expand", "--seed", ""]).status.code(), Some(2));
    assert_eq!(rootsub(&["expand", "--seed", "0x"]).status.code(), Some(2));
    assert_eq!(rootsub(&["expand", "--seed", "5"]).status.code(), Some(1));
}

#[test]
fn verify_root_family_passes() {
    let out = rootsub(&["verify", "--m", "2", "--N", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{text}");

    let out = rootsub(&["verify", "--m", "3", "--N", "2", "--depth", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS oracle equivalence: depths 0..=10 agree (longest word 2808 symbols)"), "{text}");
}

#[test]
fn verify_flags_non_primitive_rules() {
    let f = rules_file("0: 0\n1: 1\n");
    let out = rootsub(&["verify", "--rules-file", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL primitivity"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("primitivity"));
}

#[test]
fn verify_general_primitive_rules() {
    // Fibonacci substitution: growth rate is the golden ratio.
    let f = rules_file("# fibonacci\n0: 0 1\n1: 0\n");
    let out = rootsub(&["verify", "--rules-file", f.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("1.618033988749"), "{text}");
}

#[test]
fn rules_output() {
    let out = rootsub(&["rules", "--m", "2", "--N", "2"]);
    assert_eq!(stdout(&out), "0: 0 1\n1: 1 0 0\n");
    let out = rootsub(&["rules", "--m", "3", "--N", "5"]);
    assert_eq!(stdout(&out).lines().nth(2).unwrap(), "2: 2 0 0 0 0 0");
}

#[test]
fn rules_file_round_trip_and_errors() {
    let printed = stdout(&rootsub(&["rules", "--m", "4", "--N", "3"]));
    let f = rules_file(&format!("# reprinted\n\n{printed}"));
    let again = rootsub(&["rules", "--rules-file", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&again), printed);

    let bad = rules_file("0: 0 1\n\n1: 1 q\n");
    let out = rootsub(&["rules", "--rules-file", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = rootsub(&["rules", "--rules-file", "/nonexistent/rules.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rootsub(&["rules", "--rules-file", "x", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
