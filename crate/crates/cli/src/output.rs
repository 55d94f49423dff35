//! Output serialization: JSON, CSV, and human-readable text, to stdout or a
//! file. JSON and CSV output is byte-deterministic; wall-clock timing never
//! appears in machine-readable output.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;

use crate::suites::Report;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("cannot write {path:?}: {e}"))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| {
                    if !content.ends_with('\n') {
                        lock.write_all(b"\n")
                    } else {
                        Ok(())
                    }
                })
                .map_err(|e| format!("cannot write stdout: {e}"))
        }
    }
}

/// Writes a single command result. `csv` supplies a `(header, rows)` table
/// for commands that have a natural tabular form; commands without one
/// reject the CSV format.
pub fn write_output<T: serde::Serialize>(
    format: &OutputFormat,
    out: Option<&Path>,
    json: &T,
    pretty: &str,
    csv: Option<(&[&str], &[Vec<String>])>,
) -> Result<(), String> {
    match format {
        OutputFormat::Json => emit(out, &serde_json::to_string(json).unwrap()),
        OutputFormat::Pretty => emit(out, pretty),
        OutputFormat::Csv => match csv {
            Some((header, rows)) => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                w.write_record(header).map_err(|e| e.to_string())?;
                for row in rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                emit(out, std::str::from_utf8(&bytes).unwrap())
            }
            None => Err("this command has no CSV form; use --format json or pretty".into()),
        },
    }
}

/// Writes verification reports. CSV uses the fixed schema
/// `suite,case_id,param_json,residual,tolerance,pass`; JSON carries the full
/// report structure.
pub fn write_reports(
    format: &OutputFormat,
    out: Option<&Path>,
    reports: &[Report],
) -> Result<(), String> {
    match format {
        OutputFormat::Json => {
            let value = if reports.len() == 1 {
                serde_json::to_value(&reports[0]).unwrap()
            } else {
                serde_json::to_value(reports).unwrap()
            };
            emit(out, &serde_json::to_string(&value).unwrap())
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record([
                "suite",
                "case_id",
                "param_json",
                "residual",
                "tolerance",
                "pass",
            ])
            .map_err(|e| e.to_string())?;
            for report in reports {
                for case in &report.cases {
                    w.write_record([
                        report.suite.as_str(),
                        case.case_id.as_str(),
                        &serde_json::to_string(&case.params).unwrap(),
                        &format!("{:.16e}", case.residual),
                        &format!("{:.16e}", case.tolerance),
                        if case.pass { "true" } else { "false" },
                    ])
                    .map_err(|e| e.to_string())?;
                }
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            emit(out, std::str::from_utf8(&bytes).unwrap())
        }
        OutputFormat::Pretty => {
            let mut text = String::new();
            for report in reports {
                text.push_str(&format!(
                    "suite {}: {}/{} passed, max residual {:.3e}\n",
                    report.suite,
                    report.summary.passed,
                    report.summary.total,
                    report.summary.max_residual
                ));
                for case in &report.cases {
                    if !case.pass {
                        text.push_str(&format!(
                            "  FAIL {} residual {:.3e} > {:.3e} {}\n",
                            case.case_id,
                            case.residual,
                            case.tolerance,
                            serde_json::to_string(&case.params).unwrap()
                        ));
                    }
                }
            }
            emit(out, text.trim_end())
        }
    }
}
