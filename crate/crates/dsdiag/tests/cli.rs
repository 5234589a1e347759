use std::io::Cursor;

use dsdiag::cli::run;
use dsdiag::kbfile::CANONICAL_KB;
use dsdiag::report::DiagnoseResponse;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn dsdiag(args: &[&str], stdin: &str) -> Outcome {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["dsdiag"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut input, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn trace_table_shows_first_combination() {
    let o = dsdiag(
        &[
            "diagnose",
            "--condition",
            "1",
            "--symptoms",
            "fever,red-urine",
            "--trace",
            "--format",
            "table",
        ],
        "",
    );
    assert_eq!(o.code, 0, "{}", o.err);
    let step2 = o.out.split("step 2: red-urine").nth(1).unwrap();
    let result = step2.split("result:").nth(1).unwrap();
    assert!(result.contains("m{B}                    =  0.65"));
    assert!(result.contains("m{AT, B, DF, M, R, WN}  =  0.23"));
    assert!(result.contains("mΘ                      =  0.12"));
}

#[test]
fn repeated_symptom_flag_matches_list() {
    let a = dsdiag(
        &[
            "diagnose",
            "--condition",
            "2",
            "--symptoms",
            "headache,fever",
            "--format",
            "json",
        ],
        "",
    );
    let b = dsdiag(
        &[
            "diagnose",
            "--condition",
            "2",
            "--symptom",
            "headache",
            "--symptom",
            "fever",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let mixed = dsdiag(
        &[
            "diagnose",
            "--condition",
            "2",
            "--symptom",
            "headache",
            "--symptoms",
            "fever",
        ],
        "",
    );
    assert_eq!(mixed.code, 2);
}

#[test]
fn unknown_condition_exits_2() {
    let o = dsdiag(&["diagnose", "--condition", "9", "--symptoms", "fever"], "");
    assert_eq!(o.code, 2);
    assert_eq!(o.err.trim(), "error: unknown condition: 9");
    assert!(o.out.is_empty());
}

#[test]
fn duplicate_symptom_exits_2() {
    let o = dsdiag(
        &["diagnose", "--condition", "1", "--symptoms", "fever,fever"],
        "",
    );
    assert_eq!(o.code, 2);
    assert_eq!(o.err.trim(), "error: duplicate symptom: fever");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dsdiag(&["diagnose", "--symptoms", "fever"], "").code, 2);
    assert_eq!(dsdiag(&["bogus"], "").code, 2);
    let help = dsdiag(&["--help"], "");
    assert_eq!(help.code, 0);
    assert!(help.out.contains("diagnose"));
}

#[test]
fn tsv_carries_full_precision() {
    let o = dsdiag(
        &[
            "diagnose",
            "--condition",
            "1",
            "--symptoms",
            "fever,red-urine",
            "--format",
            "tsv",
            "--trace",
        ],
        "",
    );
    assert_eq!(o.code, 0);
    assert!(
        o.out
            .contains("final\tAT,B,DF,M,R,WN\t0.22749999999999998\n"),
        "{}",
        o.out
    );
    assert!(o
        .out
        .contains("final\tAT,B,DF,M,R,WN,L\t0.12249999999999998\n"));
    assert!(o.out.contains("rank\t1\tB\t0.65\t0.65\t"));
    assert_eq!(
        o.out.lines().filter(|l| l.starts_with("step\t2\t")).count(),
        3
    );
}

#[test]
fn json_output_parses() {
    let o = dsdiag(
        &[
            "diagnose",
            "--condition",
            "1",
            "--symptoms",
            "fever,red-urine",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(o.code, 0);
    let resp: DiagnoseResponse = serde_json::from_str(&o.out).unwrap();
    assert!(resp.steps.is_none());
    assert_eq!(resp.final_masses["B"], 0.65);
    assert_eq!(resp.ranking[0], "B");
}

#[test]
fn kb_flag_loads_file_and_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("kb.kb");
    std::fs::write(&good, CANONICAL_KB).unwrap();
    let g = good.to_str().unwrap();
    let from_file = dsdiag(
        &[
            "diagnose",
            "--kb",
            g,
            "--condition",
            "3",
            "--symptoms",
            "fever,joint-pain",
        ],
        "",
    );
    let builtin = dsdiag(
        &[
            "diagnose",
            "--condition",
            "3",
            "--symptoms",
            "fever,joint-pain",
        ],
        "",
    );
    assert_eq!(from_file.code, 0);
    assert_eq!(from_file.out, builtin.out);

    let bad = dir.path().join("bad.kb");
    std::fs::write(
        &bad,
        CANONICAL_KB.replace("0.45,0.55,0.45,0.45,0.55", "0.45,0.55,0.45,0.45,1.5"),
    )
    .unwrap();
    let o = dsdiag(
        &[
            "diagnose",
            "--kb",
            bad.to_str().unwrap(),
            "--condition",
            "1",
            "--symptoms",
            "fever",
        ],
        "",
    );
    assert_eq!(o.code, 2);
    assert!(o.err.contains("outside the open interval"), "{}", o.err);
}

// Interactive consultation.

#[test]
fn consult_matches_batch() {
    let o = dsdiag(&["consult", "--condition", "1"], "fever\nred-urine\ndone\n");
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.err.is_empty());
    let batch = dsdiag(
        &[
            "diagnose",
            "--condition",
            "1",
            "--symptoms",
            "fever,red-urine",
        ],
        "",
    );
    assert!(
        o.out.ends_with(&batch.out),
        "consult:\n{}\nbatch:\n{}",
        o.out,
        batch.out
    );
    assert!(o.out.contains("+ red-urine (step 2, K = 0.00)"));
}

#[test]
fn consult_undo_on_empty_warns() {
    let o = dsdiag(&["consult", "--condition", "1"], "undo\nfever\ndone\n");
    assert_eq!(o.code, 0);
    assert!(o.err.contains("warning: nothing to undo"));
}

#[test]
fn consult_undo_to_empty_is_no_symptoms() {
    let o = dsdiag(&["consult", "--condition", "1"], "fever\nundo\ndone\n");
    assert_eq!(o.code, 2);
    assert!(o.err.contains("error: no symptoms"));
}

#[test]
fn consult_warnings_leave_state_unchanged() {
    let o = dsdiag(
        &["consult", "--condition", "4"],
        "fever\ncough\nfever\n\nheadache\nundo\nskin-rash\n",
    );
    assert_eq!(o.code, 0);
    assert!(o.err.contains("warning: unknown symptom: cough"));
    assert!(o.err.contains("warning: duplicate symptom: fever"));
    let batch = dsdiag(
        &[
            "diagnose",
            "--condition",
            "4",
            "--symptoms",
            "fever,skin-rash",
        ],
        "",
    );
    assert!(o.out.ends_with(&batch.out));
}

#[test]
fn consult_unknown_condition() {
    let o = dsdiag(&["consult", "--condition", "x"], "done\n");
    assert_eq!(o.code, 2);
    assert!(o.err.contains("unknown condition: x"));
}

// Validation.

#[test]
fn validate_canonical_fixture() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/kb/trypanosomiasis.kb");
    let o = dsdiag(&["validate", "--kb", path], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.out.trim(), "ok: 7 diseases, 5 conditions, 11 symptoms");
}

#[test]
fn validate_reports_bpa_of_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kb");
    let text = CANONICAL_KB.replace(
        "fever | AT,B,DF,M,R,WN | 0.65,",
        "fever | AT,B,DF,M,R,WN | 1.0,",
    );
    std::fs::write(&path, &text).unwrap();
    let o = dsdiag(&["validate", "--kb", path.to_str().unwrap()], "");
    assert_eq!(o.code, 1);
    let line = text.lines().position(|l| l.starts_with("fever")).unwrap() + 1;
    assert!(o.out.contains("1 violation(s)"), "{}", o.out);
    assert!(
        o.out.contains(&format!(
            "line {line}: bpa 1 is outside the open interval (0, 1)"
        )),
        "{}",
        o.out
    );
}

#[test]
fn validate_missing_file() {
    let o = dsdiag(&["validate", "--kb", "/nonexistent/dir/kb.kb"], "");
    assert_eq!(o.code, 2);
    assert!(o.err.starts_with("error: cannot read"));
}

#[test]
fn serve_bind_failure_exits_2() {
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = taken.local_addr().unwrap().to_string();
    let o = dsdiag(&["serve", "--addr", &addr], "");
    assert_eq!(o.code, 2);
    assert!(o.err.contains("cannot bind"), "{}", o.err);
}

#[test]
fn errata_document_is_current() {
    let o = dsdiag(&["errata"], "");
    assert_eq!(o.code, 0);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../ERRATA.md");
    let committed = std::fs::read_to_string(path).expect("ERRATA.md at the workspace root");
    assert_eq!(
        committed, o.out,
        "ERRATA.md is stale; regenerate with `dsdiag errata > ERRATA.md`"
    );
}
