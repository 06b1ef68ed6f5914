//! Fixture corpus runner. Each `NAME.complex` or `NAME.ideal` may have a
//! `NAME.complex.expected` (or `NAME.ideal.expected`) sidecar:
//!
//! ```toml
//! [[check]]
//! command = "wlp"
//! args = ["--char", "all"]
//! pointer = "/degrees/1/failure/primes"   # into the command's results
//! value = [2]
//! source = "where the number comes from"
//!
//! [[check]]
//! command = "char-analysis"
//! args = ["--degree", "2"]
//! exit = 2                                # expected failure instead of a value
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;
use lefschetz::document::InputObject;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::commands::{dispatch, load, CliError, Outcome, Res};
use crate::Cli;

/// Exit status when any fixture disagrees with its sidecar.
pub const MISMATCH_EXIT: u8 = 4;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sidecar {
    #[serde(default)]
    check: Vec<Check>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Check {
    command: String,
    #[serde(default)]
    args: Vec<String>,
    pointer: Option<String>,
    value: Option<toml::Value>,
    exit: Option<u8>,
    #[serde(default)]
    source: String,
}

fn fixtures(dir: &Path) -> Res<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("complex" | "ideal")
            )
        })
        .collect();
    files.sort();
    Ok(files)
}

fn round_trip(obj: &InputObject) -> bool {
    let text = obj.to_document().to_toml();
    matches!(InputObject::parse(&text), Ok(back) if &back == obj)
}

/// Runs one sidecar check; `Ok` carries the observed value.
fn run_check(path: &Path, obj: &InputObject, check: &Check) -> (bool, Value) {
    let mut argv = vec![
        "lefschetz".to_string(),
        check.command.clone(),
        path.display().to_string(),
    ];
    argv.extend(check.args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => return (false, json!({ "usage_error": e.to_string() })),
    };
    if matches!(cli.command, crate::Command::Corpus { .. }) {
        return (false, json!({ "usage_error": "corpus checks cannot nest" }));
    }
    match (dispatch(&cli.command, obj), check.exit) {
        (Err(e), Some(code)) => (
            e.exit_code() == code,
            json!({ "exit": e.exit_code(), "message": e.message }),
        ),
        (Err(e), None) => (
            false,
            json!({ "exit": e.exit_code(), "message": e.message }),
        ),
        (Ok(_), Some(_)) => (false, json!({ "exit": 0 })),
        (Ok(Outcome { results, .. }), None) => {
            let pointer = check.pointer.as_deref().unwrap_or("");
            let actual = results.pointer(pointer).cloned().unwrap_or(Value::Null);
            let expected = check
                .value
                .as_ref()
                .map(|v| serde_json::to_value(v).expect("toml value converts"));
            (expected.as_ref() == Some(&actual), actual)
        }
    }
}

pub fn run(dir: &Path) -> Res<Outcome> {
    let mut report = Vec::new();
    let mut text = String::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    for path in fixtures(dir)? {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let obj = match load(&path) {
            Ok(obj) => obj,
            Err(e) => {
                failed += 1;
                let _ = writeln!(text, "FAIL {name}: {}", e.message);
                report.push(json!({ "file": name, "error": e.message }));
                continue;
            }
        };
        let rt = round_trip(&obj);
        if rt {
            passed += 1;
        } else {
            failed += 1;
        }
        let _ = writeln!(
            text,
            "{} {name}: round trip",
            if rt { "ok  " } else { "FAIL" }
        );

        let sidecar_path = PathBuf::from(format!("{}.expected", path.display()));
        let checks = match std::fs::read_to_string(&sidecar_path) {
            Ok(s) => {
                toml::from_str::<Sidecar>(&s)
                    .map_err(|e| {
                        CliError::input(format!("{}: {}", sidecar_path.display(), e.message()))
                    })?
                    .check
            }
            Err(_) => Vec::new(),
        };
        let mut rows = Vec::new();
        for check in &checks {
            let (ok, actual) = run_check(&path, &obj, check);
            if ok {
                passed += 1;
            } else {
                failed += 1;
            }
            let mut what = vec![check.command.clone()];
            what.extend(check.args.iter().cloned());
            what.extend(check.pointer.clone());
            let _ = write!(
                text,
                "{} {name}: {}",
                if ok { "ok  " } else { "FAIL" },
                what.join(" ")
            );
            if !check.source.is_empty() {
                let _ = write!(text, " [{}]", check.source);
            }
            if !ok {
                let _ = write!(text, " got {actual}");
            }
            text.push('\n');
            let mut row = Map::new();
            row.insert("command".into(), json!(check.command));
            row.insert("args".into(), json!(check.args));
            row.insert("pointer".into(), json!(check.pointer));
            row.insert(
                "expected".into(),
                match (&check.value, check.exit) {
                    (_, Some(code)) => json!({ "exit": code }),
                    (Some(v), None) => serde_json::to_value(v).expect("toml value converts"),
                    (None, None) => Value::Null,
                },
            );
            row.insert("actual".into(), actual);
            row.insert("ok".into(), json!(ok));
            row.insert("source".into(), json!(check.source));
            rows.push(Value::Object(row));
        }
        report.push(json!({ "file": name, "round_trip": rt, "checks": rows }));
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed");
    Ok(Outcome {
        results: json!({ "fixtures": report, "passed": passed, "failed": failed }),
        crosschecks: Map::new(),
        text,
        exit: if failed == 0 { 0 } else { MISMATCH_EXIT },
    })
}
