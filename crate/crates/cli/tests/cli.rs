use std::io::{Cursor, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["saek"];
    argv.extend_from_slice(args);
    let code = saek::run(argv, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/sample.tsv")
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("saek-test-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn extract_wh_record() {
    let (code, out, _) = run(&["extract"], "해외 송금 어떻게 하는 거야\n");
    assert_eq!(code, 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["label"], 2);
    assert_eq!(recs[0]["label_name"], "wh_question");
    assert_eq!(recs[0]["question_type"], "wh");
    assert_eq!(recs[0]["argument"], "해외 송금 방법");
    assert_eq!(recs[0]["category"], "방법");
    assert!(recs[0].get("negativeness").is_none());
}

#[test]
fn unclassifiable_is_a_record_not_a_failure() {
    let (code, out, _) = run(&["extract"], "비가 온다\n");
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["error"], "unclassifiable");

    let (code, _, _) = run(&["extract", "--strict"], "비가 온다\n");
    assert_eq!(code, 1);
}

#[test]
fn one_record_per_input_line() {
    let input = "밥 먹었어\n\n비가 온다\n밖에 나가지 마\r\n지금 팔아";
    let (_, out, _) = run(&["classify"], input);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 5);
    assert_eq!(recs[3]["text"], "밖에 나가지 마");
    assert_eq!(recs[3]["negativeness"], "PH");
    assert!(recs[0].get("argument").is_none());
}

#[test]
fn tsv_has_fixed_columns() {
    let (_, out, _) = run(
        &["extract", "--format", "tsv"],
        "안전띠 안매면 큰일나\n비가 온다\n",
    );
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert!(rows
        .iter()
        .all(|r| r.len() == saek::record::TSV_COLUMNS.len()));
    assert_eq!(
        &rows[0][..7],
        [
            "안전띠 안매면 큰일나",
            "5",
            "strong_requirement",
            "",
            "SR",
            "안전띠 매기",
            "요구"
        ]
    );
    assert_eq!(rows[1][8], "unclassifiable");
}

#[test]
fn help_documents_tsv_columns() {
    let (code, out, _) = run(&["extract", "--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains(
        "text, label, label_name, question_type, negativeness, argument, category, evidence, error"
    ));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"], "").0, 2);
    assert_eq!(run(&["extract", "/no/such/file"], "").0, 2);
    assert_eq!(
        run(
            &["corpus", "stats", "--expect-counts", "1,2"],
            "0\t밥 먹었어\n"
        )
        .0,
        2
    );
    assert_eq!(run(&["--lexicon", "/no/such/lexicon", "classify"], "").0, 2);
}

#[test]
fn stats_on_fixture() {
    let path = fixture();
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["corpus", "stats", "--input-format", "paired", p], "");
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["total"], 60);
    assert_eq!(v["counts"]["yes_no"], 10);
    assert_eq!(v["portions"]["strong_requirement"], 0.1667);

    let (code, _, _) = run(
        &[
            "corpus",
            "stats",
            "--input-format",
            "paired",
            "--expect-counts",
            "10,10,10,10,10,10",
            p,
        ],
        "",
    );
    assert_eq!(code, 0);
    let (code, _, err) = run(
        &[
            "corpus",
            "stats",
            "--input-format",
            "paired",
            "--expect-table2",
            p,
        ],
        "",
    );
    assert_eq!(code, 1);
    assert!(err.contains("count[0]"));
}

#[test]
fn stats_tsv_rows() {
    let (code, out, _) = run(
        &["corpus", "stats", "--format", "tsv"],
        "0\t밥 먹었어\n3\t가지 마\n",
    );
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[1], "0\tyes_no\t1\t0.5000\t100.00");
}

#[test]
fn validate_reports_every_bad_row() {
    let input = "0\t너 의료 봉사 신청 했어\n7\tx\n\n2\t밥 먹었어?\n";
    let (code, out, err) = run(&["corpus", "validate"], input);
    assert_eq!(code, 0);
    let recs = json_lines(&out);
    let lines: Vec<u64> = recs.iter().map(|r| r["line"].as_u64().unwrap()).collect();
    assert_eq!(lines, [2, 3, 4]);
    assert!(recs[0]["error"].as_str().unwrap().contains("out of range"));
    assert!(err.contains("1 rows ok, 3 rows rejected"));
    assert_eq!(run(&["corpus", "validate", "--strict"], input).0, 1);
}

#[test]
fn eval_reports_and_lists_failures() {
    let data = tmp(
        "eval.tsv",
        "2\t해외 송금 어떻게 하는 거야\t해외 송금 방법\n0\t비가 온다\t비 오는지 여부\n",
    );
    let fails = std::env::temp_dir().join(format!("saek-test-{}-fails.jsonl", std::process::id()));
    let (code, out, _) = run(
        &[
            "eval",
            "--input-format",
            "paired",
            "--failures",
            fails.to_str().unwrap(),
            data.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["coverage"], 0.5);
    assert_eq!(v["label_accuracy"], 0.5);
    assert_eq!(v["arg_exact"], 0.5);
    let recs = json_lines(&std::fs::read_to_string(&fails).unwrap());
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["line"], 2);
    assert_eq!(recs[0]["error"], "unclassifiable");
    let _ = std::fs::remove_file(fails);
    let _ = std::fs::remove_file(data);
}

#[test]
fn custom_lexicon_replaces_builtin() {
    let builtin = include_str!("../../core/data/lexicon.tsv");
    let trimmed: String = builtin
        .lines()
        .filter(|l| !l.starts_with("info_verb\t알려줘\t"))
        .map(|l| format!("{l}\n"))
        .collect();
    let path = tmp("lexicon.tsv", &trimmed);
    let (_, with_builtin, _) = run(&["classify"], "내일 비 오는지 알려줘\n");
    let (_, with_custom, _) = run(
        &["--lexicon", path.to_str().unwrap(), "classify"],
        "내일 비 오는지 알려줘\n",
    );
    assert_eq!(json_lines(&with_builtin)[0]["rule"], "info-seeking");
    assert_ne!(json_lines(&with_custom)[0]["rule"], "info-seeking");

    let bad = tmp("bad-lexicon.tsv", "nonsense\t가\t-\n");
    let (code, _, err) = run(&["--lexicon", bad.to_str().unwrap(), "classify"], "");
    assert_eq!(code, 2);
    assert!(err.contains("unknown role"));
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(bad);
}

#[test]
fn binary_reads_stdin_and_env_lexicon() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_saek"))
        .args(["extract", "--format", "tsv"])
        .env("SAEK_LEXICON", "/no/such/lexicon")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("지금 팔아\n".as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let mut child = Command::new(env!("CARGO_BIN_EXE_saek"))
        .args(["extract", "--format", "tsv"])
        .env_remove("SAEK_LEXICON")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("지금 팔아\n".as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(
        line.starts_with("지금 팔아\t4\trequirement\t\tREQ\t지금 팔기\t요구"),
        "{line}"
    );
}

#[test]
fn invalid_utf8_does_not_abort() {
    let mut input = Cursor::new(vec![0xff, 0xfe, b'\n', 0xea, 0xb0, b'\n']);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = saek::run(["saek", "extract"], &mut input, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 2);
}
