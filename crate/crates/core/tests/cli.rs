use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use jordan_form::cli::{matrix_to_json, parse_matrix_json, parse_matrix_text};
use jordan_form::jordan::jordan_form;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn jordan(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn jordan_text_output_lists_j_and_p() {
    let out = jordan(&["jordan", path(&data("two_eigenvalues.txt"))], None);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "blocks {2:[2,1], 4:[1]}");
    assert_eq!(lines[1], "J =");
    assert_eq!(&lines[2..6], ["  2 1 0 0", "  0 2 0 0", "  0 0 2 0", "  0 0 0 4"]);
    assert_eq!(lines[6], "P =");
    assert_eq!(lines.len(), 11);
}

#[test]
fn jordan_json_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let a = data("nilpotent7.txt");
    let out = jordan(&["jordan", path(&a), "--json"], None);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["eigenvalues"][0]["value"], "0");
    assert_eq!(v["eigenvalues"][0]["blocks"], serde_json::json!([6, 1]));

    let p_file = dir.path().join("p.json");
    let j_file = dir.path().join("j.json");
    std::fs::write(&p_file, serde_json::json!({ "matrix": v["P"] }).to_string()).unwrap();
    std::fs::write(&j_file, serde_json::json!({ "matrix": v["J"] }).to_string()).unwrap();

    let out = jordan(
        &["validate", path(&a), "--p", path(&p_file), "--j", path(&j_file)],
        None,
    );
    assert_eq!((out.code, out.stdout.as_str()), (0, "valid\n"), "{}", out.stderr);

    // Swapping the two blocks' order makes J non-canonical.
    let mut j = parse_matrix_json(&std::fs::read_to_string(&j_file).unwrap())
        .unwrap()
        .matrix;
    j[(0, 1)] = jordan_form::arith::int(0);
    std::fs::write(&j_file, matrix_to_json(&j)).unwrap();
    let out = jordan(
        &["validate", path(&a), "--p", path(&p_file), "--j", path(&j_file)],
        None,
    );
    assert_eq!((out.code, out.stdout.as_str()), (1, "invalid\n"));
}

#[test]
fn validate_rejects_wrong_shapes() {
    let a = data("two_eigenvalues.txt");
    let small = data("rotation.txt");
    let out = jordan(&["validate", path(&a), "--p", path(&small), "--j", path(&small)], None);
    assert_eq!(out.code, 4);
    assert!(out.stdout.is_empty());
}

#[test]
fn blocks_reports_d_sequence() {
    let out = jordan(
        &["blocks", path(&data("nilpotent7.txt")), "--eigenvalue", "0"],
        None,
    );
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "eigenvalue 0\nd = (2, 1, 1, 1, 1, 1, 0)\nblocks [6, 1]\n"
    );
}

#[test]
fn similar_with_witness_prints_a_valid_conjugator() {
    let a = data("single_block_a.txt");
    let b = data("single_block_b.json");
    let out = jordan(&["similar", path(&a), path(&b), "--witness"], None);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (head, body) = out.stdout.split_once("S =\n").unwrap();
    assert_eq!(head, "similar\n");
    let s = parse_matrix_text(body).unwrap().matrix;

    let am = parse_matrix_text(&std::fs::read_to_string(&a).unwrap()).unwrap().matrix;
    let bm = parse_matrix_json(&std::fs::read_to_string(&b).unwrap()).unwrap().matrix;
    assert_eq!(&(&s.inverse().unwrap() * &am) * &s, bm);
}

#[test]
fn not_similar_exits_one() {
    let out = jordan(
        &["similar", "-", path(&data("single_block_a.txt"))],
        Some("0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n"),
    );
    assert_eq!((out.code, out.stdout.as_str()), (1, "not similar\n"));
}

#[test]
fn expm_prints_terms_per_eigenvalue() {
    let out = jordan(&["expm", "-"], Some("1 1\n0 1\n"));
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "exp(1*t) * [[1, t], [0, 1]]\n");

    let out = jordan(&["expm", path(&data("two_eigenvalues.txt"))], None);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("exp(2*t) * "));
    assert!(out.stdout.contains("\n+ exp(4*t) * "));
}

#[test]
fn exit_codes() {
    assert_eq!(jordan(&["jordan", path(&data("rotation.txt"))], None).code, 3);
    assert_eq!(jordan(&["expm", path(&data("rotation.txt"))], None).code, 3);
    assert_eq!(jordan(&["jordan", "-"], Some("1 2\n3 4\n5 6\n")).code, 4);
    assert_eq!(jordan(&["jordan", "-"], Some("1 2\n3\n")).code, 2);
    assert_eq!(jordan(&["jordan"], None).code, 2);
    assert_eq!(jordan(&["--help"], None).code, 0);
}

#[test]
fn machine_output_is_stable_and_matches_library() {
    let a = data("single_block_b.json");
    let first = jordan(&["jordan", path(&a), "--json"], None);
    let second = jordan(&["jordan", path(&a), "--json"], None);
    assert_eq!(first.stdout, second.stdout);

    let m = parse_matrix_json(&std::fs::read_to_string(&a).unwrap()).unwrap().matrix;
    let dec = jordan_form(&m).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    let p_rows: Vec<Vec<String>> = serde_json::from_value(v["P"].clone()).unwrap();
    for (i, row) in p_rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            assert_eq!(cell, &dec.p[(i, j)].to_string());
        }
    }
}
