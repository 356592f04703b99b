//! Matrix file formats and the `jordan` command-line front end.
//!
//! Text format: one row per line, entries separated by whitespace, lines starting
//! with `#` ignored. JSON format: `{"matrix": [[...], ...]}` with integer or string
//! entries. Rationals are always written as strings so nothing passes through
//! floating point.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::arith::{parse_rational, Rational};
use crate::error::Error;
use crate::jordan::{
    eigenvalue_structure, jordan_form, jordan_structure, matrix_exp, similar,
    validate_decomposition, JordanDecomposition,
};
use crate::linalg::Mat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IRRATIONAL: i32 = 3;
pub const EXIT_SHAPE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Inline,
    Stdin,
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub matrix: Mat,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("input contains no matrix rows")]
    EmptyInput,
}

fn rectangular(rows: Vec<Vec<Rational>>) -> Result<MatrixDocument, InputError> {
    let Some(first) = rows.first() else {
        return Err(InputError::EmptyInput);
    };
    let expected = first.len();
    if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != expected) {
        return Err(InputError::RaggedRows {
            row: row + 1,
            expected,
            found: r.len(),
        });
    }
    let matrix = Mat::from_rows(rows).expect("rows checked rectangular");
    Ok(MatrixDocument {
        matrix,
        source: Source::Inline,
    })
}

pub fn parse_matrix_text(input: &str) -> Result<MatrixDocument, InputError> {
    let mut rows = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            let token = &rest[start..start + len];
            let value = parse_rational(token).map_err(|e| InputError::Parse {
                line: idx + 1,
                column: line[..offset + start].chars().count() + 1,
                message: e.to_string(),
            })?;
            row.push(value);
            offset += start + len;
            rest = &rest[start + len..];
        }
        rows.push(row);
    }
    rectangular(rows)
}

pub fn parse_matrix_json(input: &str) -> Result<MatrixDocument, InputError> {
    let value: Value = serde_json::from_str(input).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let shape_error = |message: String| InputError::Parse {
        line: 0,
        column: 0,
        message,
    };
    let rows = value
        .get("matrix")
        .ok_or_else(|| shape_error("missing key \"matrix\"".into()))?
        .as_array()
        .ok_or_else(|| shape_error("\"matrix\" must be an array of rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| shape_error(format!("row {} is not an array", i + 1)))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, entry) in row.iter().enumerate() {
            let at = |m: String| shape_error(format!("entry ({}, {}): {m}", i + 1, j + 1));
            let value = match entry {
                Value::String(s) => parse_rational(s).map_err(|e| at(e.to_string()))?,
                Value::Number(n) if n.is_i64() || n.is_u64() => {
                    parse_rational(&n.to_string()).map_err(|e| at(e.to_string()))?
                }
                other => return Err(at(format!("expected integer or string, got {other}"))),
            };
            out.push(value);
        }
        parsed.push(out);
    }
    rectangular(parsed)
}

/// `{"matrix": [["a", ...], ...]}`
pub fn matrix_to_json(m: &Mat) -> String {
    #[derive(Serialize)]
    struct Doc {
        matrix: Vec<Vec<String>>,
    }
    serde_json::to_string(&Doc {
        matrix: string_rows(m),
    })
    .expect("serializing strings cannot fail")
}

fn string_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "jordan", version, about = "Exact Jordan canonical forms over the rationals")]
struct Cli {
    /// Input format; defaults to json for `.json` files and text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the block structure, J and P with A·P = P·J.
    Jordan {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the d-sequence and block sizes at one eigenvalue.
    Blocks {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        eigenvalue: String,
    },
    /// Decide whether two matrices are similar.
    Similar {
        file1: String,
        file2: String,
        /// Also print S with S⁻¹·A·S = B.
        #[arg(long)]
        witness: bool,
    },
    /// Print exp(tA) as a sum of exp(λ·t) times polynomial matrices.
    Expm {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a claimed decomposition A·P = P·J.
    Validate {
        file: String,
        #[arg(long = "p")]
        p: String,
        #[arg(long = "j")]
        j: String,
    },
}

/// Failure of one command, already mapped to an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IrrationalSpectrum(_) => EXIT_IRRATIONAL,
            _ => EXIT_SHAPE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

struct Loader<R> {
    stdin: Option<R>,
    format: Option<Format>,
}

impl<R: Read> Loader<R> {
    fn load(&mut self, path: &str) -> Result<MatrixDocument, Failure> {
        let (text, source) = if path == "-" {
            let mut stdin = self
                .stdin
                .take()
                .ok_or_else(|| usage("standard input can only be read once"))?;
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("reading standard input: {e}")))?;
            (buf, Source::Stdin)
        } else {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("reading {path}: {e}")))?;
            (text, Source::File(path.to_string()))
        };
        let is_json = Path::new(path)
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("json"));
        let format = self
            .format
            .unwrap_or(if is_json { Format::Json } else { Format::Text });
        let parsed = match format {
            Format::Text => parse_matrix_text(&text),
            Format::Json => parse_matrix_json(&text),
        };
        let mut doc = parsed.map_err(|e| usage(format!("{path}: {e}")))?;
        doc.source = source;
        Ok(doc)
    }
}

fn indent(m: &Mat) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn blocks_summary(dec: &JordanDecomposition) -> String {
    let parts: Vec<String> = dec
        .blocks
        .iter()
        .map(|eb| {
            let sizes: Vec<String> = eb.sizes.iter().map(ToString::to_string).collect();
            format!("{}:[{}]", eb.eigenvalue, sizes.join(","))
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn jordan_json(dec: &JordanDecomposition) -> String {
    #[derive(Serialize)]
    struct Eigen {
        value: String,
        blocks: Vec<usize>,
    }
    #[derive(Serialize)]
    struct Out {
        eigenvalues: Vec<Eigen>,
        #[serde(rename = "J")]
        j: Vec<Vec<String>>,
        #[serde(rename = "P")]
        p: Vec<Vec<String>>,
    }
    let out = Out {
        eigenvalues: dec
            .blocks
            .iter()
            .map(|eb| Eigen {
                value: eb.eigenvalue.to_string(),
                blocks: eb.sizes.clone(),
            })
            .collect(),
        j: string_rows(&dec.j),
        p: string_rows(&dec.p),
    };
    serde_json::to_string(&out).expect("serializing strings cannot fail")
}

fn execute<R: Read>(cli: Cli, stdin: R, out: &mut String) -> Result<i32, Failure> {
    let mut loader = Loader {
        stdin: Some(stdin),
        format: cli.format,
    };
    match cli.command {
        Command::Jordan { file, json } => {
            let a = loader.load(&file)?.matrix;
            let dec = jordan_form(&a)?;
            if json {
                writeln!(out, "{}", jordan_json(&dec)).unwrap();
            } else {
                writeln!(out, "blocks {}", blocks_summary(&dec)).unwrap();
                write!(out, "J =\n{}P =\n{}", indent(&dec.j), indent(&dec.p)).unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Blocks { file, eigenvalue } => {
            let lambda = parse_rational(&eigenvalue)
                .map_err(|e| usage(format!("--eigenvalue: {e}")))?;
            let a = loader.load(&file)?.matrix;
            writeln!(out, "eigenvalue {lambda}").unwrap();
            match eigenvalue_structure(&a, &lambda)? {
                Some(seq) => {
                    let d: Vec<String> = seq.values().iter().map(ToString::to_string).collect();
                    writeln!(out, "d = ({})", d.join(", ")).unwrap();
                    writeln!(out, "blocks {:?}", seq.block_sizes()).unwrap();
                }
                None => {
                    writeln!(out, "not an eigenvalue").unwrap();
                    writeln!(out, "blocks []").unwrap();
                }
            }
            Ok(EXIT_OK)
        }
        Command::Similar {
            file1,
            file2,
            witness,
        } => {
            let a = loader.load(&file1)?.matrix;
            let b = loader.load(&file2)?.matrix;
            match similar(&a, &b)? {
                Some(s) => {
                    writeln!(out, "similar").unwrap();
                    if witness {
                        write!(out, "S =\n{}", indent(&s)).unwrap();
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "not similar").unwrap();
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Expm { file, json } => {
            let a = loader.load(&file)?.matrix;
            let exp = matrix_exp(&a)?;
            if json {
                #[derive(Serialize)]
                struct Term {
                    eigenvalue: String,
                    coeff: Vec<Vec<String>>,
                }
                let terms: Vec<Term> = exp
                    .terms
                    .iter()
                    .map(|t| Term {
                        eigenvalue: t.eigenvalue.to_string(),
                        coeff: (0..t.coeff.rows())
                            .map(|i| {
                                (0..t.coeff.cols())
                                    .map(|j| t.coeff.get(i, j).display_in("t").to_string())
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect();
                #[derive(Serialize)]
                struct Out {
                    terms: Vec<Term>,
                }
                let body = serde_json::to_string(&Out { terms }).expect("strings serialize");
                writeln!(out, "{body}").unwrap();
            } else {
                writeln!(out, "{exp}").unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Validate { file, p, j } => {
            let a = loader.load(&file)?.matrix;
            let p = loader.load(&p)?.matrix;
            let j = loader.load(&j)?.matrix;
            let n = a.ensure_square()?;
            for (name, m) in [("P", &p), ("J", &j)] {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "{name} is {}x{}, expected {n}x{n}",
                        m.rows(),
                        m.cols()
                    ))
                    .into());
                }
            }
            let valid = jordan_structure(&j).is_some_and(|blocks| {
                validate_decomposition(&a, &JordanDecomposition { blocks, j, p })
            });
            writeln!(out, "{}", if valid { "valid" } else { "invalid" }).unwrap();
            Ok(if valid { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Runs one invocation. Standard output receives nothing unless the command
/// produced a result; diagnostics go to `err`.
pub fn run<I, T>(args: I, stdin: impl Read, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut buf = String::new();
    match execute(cli, stdin, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(buf.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use proptest::prelude::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["jordan"];
        argv.extend_from_slice(args);
        let code = run(argv, stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn text_examples() {
        let doc = parse_matrix_text("0 1\n0 0\n").unwrap();
        assert_eq!(doc.matrix, Mat::from_ints(&[[0, 1], [0, 0]]));

        let doc = parse_matrix_text("# comment\n1/2   -3\n\n0 4\n").unwrap();
        assert_eq!(
            doc.matrix,
            Mat::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), int(4)]]).unwrap()
        );

        assert_eq!(
            parse_matrix_text("1 2\n3\n"),
            Err(InputError::RaggedRows {
                row: 2,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(parse_matrix_text("# nothing\n\n"), Err(InputError::EmptyInput));
    }

    #[test]
    fn text_parse_error_position() {
        match parse_matrix_text("1 2\n3  x/2\n") {
            Err(InputError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_examples() {
        let doc = parse_matrix_json(r#"{"matrix": [[0,1],[0,0]]}"#).unwrap();
        assert_eq!(doc.matrix, Mat::from_ints(&[[0, 1], [0, 0]]));

        let doc = parse_matrix_json(r#"{"matrix": [["1/2","-3"],["0","4"]]}"#).unwrap();
        assert_eq!(
            doc.matrix,
            Mat::from_rows(vec![vec![frac(1, 2), int(-3)], vec![int(0), int(4)]]).unwrap()
        );

        assert!(matches!(
            parse_matrix_json(r#"{"matrix": [[1],[2,3]]}"#),
            Err(InputError::RaggedRows { .. })
        ));
        assert!(matches!(
            parse_matrix_json(r#"{"matrix": [[1.5]]}"#),
            Err(InputError::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_json(r#"{"rows": []}"#),
            Err(InputError::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_json("{"),
            Err(InputError::Parse { .. })
        ));
        assert_eq!(
            parse_matrix_json(r#"{"matrix": []}"#),
            Err(InputError::EmptyInput)
        );
    }

    #[test]
    fn jordan_from_stdin() {
        let (code, out, err) = run_str(&["jordan", "-"], "2 0 2 1\n0 2 1 1\n0 0 2 2\n0 0 0 4\n");
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("blocks {2:[2,1], 4:[1]}\n"));
        assert!(out.contains("J =\n  2 1 0 0\n  0 2 0 0\n  0 0 2 0\n  0 0 0 4\n"));
    }

    #[test]
    fn jordan_json_shape() {
        let (code, out, _) = run_str(&["jordan", "-", "--json"], "0 1\n0 0\n");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"eigenvalues\":[{\"value\":\"0\",\"blocks\":[2]}],\"J\":[[\"0\",\"1\"],[\"0\",\"0\"]],\"P\":[[\"1\",\"0\"],[\"0\",\"1\"]]}\n"
        );
    }

    #[test]
    fn format_override() {
        let (code, out, _) = run_str(
            &["--format", "json", "jordan", "-"],
            r#"{"matrix": [["1/2"]]}"#,
        );
        assert_eq!(code, 0);
        assert!(out.starts_with("blocks {1/2:[1]}"));
    }

    #[test]
    fn blocks_command() {
        let input = "2 0 2 1\n0 2 1 1\n0 0 2 2\n0 0 0 4\n";
        let (code, out, _) = run_str(&["blocks", "-", "--eigenvalue", "2"], input);
        assert_eq!(code, 0);
        assert_eq!(out, "eigenvalue 2\nd = (2, 1, 0)\nblocks [2, 1]\n");

        let (code, out, _) = run_str(&["blocks", "-", "--eigenvalue", "-1/2"], input);
        assert_eq!(code, 0);
        assert_eq!(out, "eigenvalue -1/2\nnot an eigenvalue\nblocks []\n");

        let (code, out, _) = run_str(&["blocks", "-", "--eigenvalue", "2.5"], input);
        assert_eq!((code, out.as_str()), (2, ""));
    }

    #[test]
    fn expm_command() {
        let (code, out, _) = run_str(&["expm", "-"], "0 1\n0 0\n");
        assert_eq!(code, 0);
        assert_eq!(out, "exp(0*t) * [[1, t], [0, 1]]\n");
        let (code, out, _) = run_str(&["expm", "-", "--json"], "2 0\n0 4\n");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"terms\":[{\"eigenvalue\":\"2\",\"coeff\":[[\"1\",\"0\"],[\"0\",\"0\"]]},{\"eigenvalue\":\"4\",\"coeff\":[[\"0\",\"0\"],[\"0\",\"1\"]]}]}\n"
        );
    }

    #[test]
    fn error_paths_keep_stdout_clean() {
        let cases: &[(&[&str], &str, i32)] = &[
            (&["jordan", "-"], "0 -1\n1 0\n", EXIT_IRRATIONAL),
            (&["jordan", "-"], "1 2 3\n4 5 6\n", EXIT_SHAPE),
            (&["jordan", "-"], "1 2\n3\n", EXIT_USAGE),
            (&["jordan", "-"], "1 q\n", EXIT_USAGE),
            (&["jordan", "/nonexistent/matrix.txt"], "", EXIT_USAGE),
            (&["bogus"], "", EXIT_USAGE),
            (&["similar", "-", "-"], "1\n", EXIT_USAGE),
        ];
        for (args, stdin, code) in cases {
            let (got, out, err) = run_str(args, stdin);
            assert_eq!(got, *code, "{args:?}: {err}");
            assert!(out.is_empty(), "{args:?} wrote {out:?}");
            assert!(!err.is_empty());
        }
        let (_, _, err) = run_str(&["jordan", "-"], "0 -1\n1 0\n");
        assert!(err.contains("x^2 + 1"), "{err}");
    }

    fn small_doc() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec((-50i64..50, 1i64..9), r * c).prop_map(move |xs| {
                Mat::from_row_major(r, c, xs.into_iter().map(|(n, d)| frac(n, d)).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(m in small_doc()) {
            let doc = parse_matrix_json(&matrix_to_json(&m)).unwrap();
            prop_assert_eq!(doc, MatrixDocument { matrix: m, source: Source::Inline });
        }
    }
}
