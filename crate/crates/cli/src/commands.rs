use std::io::Write;
use std::path::{Path, PathBuf};

use linv_core::linv::casefile::{CaseFile, DEFAULT_GUARD, DEFAULT_PRECISION};
use linv_core::linv::{greenberg23 as run_greenberg, run_case, LInvariantReport};
use linv_core::repcheck::{verify_dimension_claims, AuditInput, MultiplicityReport, RepError};
use linv_core::selftest::{self, Corruption};
use serde::Serialize;

use crate::render;
use crate::Common;

/// Exit codes: checks passed, a check failed, the input was rejected.
pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const INVALID: u8 = 2;

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct CheckDocument {
    pub path: String,
    pub report: Option<LInvariantReport>,
    pub repcheck: Option<MultiplicityReport>,
    pub notes: Vec<String>,
    pub error: Option<ErrorRecord>,
    pub passed: bool,
}

impl CheckDocument {
    fn new(path: &Path) -> Self {
        CheckDocument {
            path: path.display().to_string(),
            report: None,
            repcheck: None,
            notes: Vec::new(),
            error: None,
            passed: false,
        }
    }

    fn fail(mut self, stage: &'static str, message: impl ToString, code: u8) -> (u8, Self) {
        self.error = Some(ErrorRecord { stage, message: message.to_string() });
        (code, self)
    }
}

fn check_one(path: &Path, common: &Common) -> (u8, CheckDocument) {
    let doc = CheckDocument::new(path);
    let file = match CaseFile::load(path) {
        Ok(f) => f,
        Err(e) => return doc.fail("load", e, INVALID),
    };
    let loaded = match file.resolve(common.precision, common.guard) {
        Ok(l) => l,
        Err(e) => return doc.fail("validate", e, INVALID),
    };
    let case = match loaded.build() {
        Ok(c) => c,
        Err(e) => return doc.fail("validate", e, INVALID),
    };
    let mut doc = doc;
    match AuditInput::from_case(&case, None) {
        Ok(input) => match verify_dimension_claims(&input) {
            Ok(r) => doc.repcheck = Some(r),
            Err(e) => return doc.fail("repcheck", e, INVALID),
        },
        Err(RepError::MissingConjugation) => doc.notes.push("repcheck skipped: no conjugation_index".into()),
        Err(e) => return doc.fail("repcheck", e, INVALID),
    }
    let report = match run_case(&case) {
        Ok(r) => r,
        Err(e) => return doc.fail("run", e, FAILED),
    };
    doc.passed = report.passed && doc.repcheck.as_ref().is_none_or(|r| r.passed);
    doc.report = Some(report);
    (if doc.passed { OK } else { FAILED }, doc)
}

fn emit(common: &Common, text: String) -> Result<(), String> {
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Files run concurrently; documents are assembled in argument order.
pub fn check(paths: &[PathBuf], common: &Common) -> Result<u8, String> {
    let results: Vec<(u8, CheckDocument)> = std::thread::scope(|s| {
        let handles: Vec<_> = paths.iter().map(|p| s.spawn(move || check_one(p, common))).collect();
        handles.into_iter().map(|h| h.join().expect("case thread panicked")).collect()
    });
    for (_, d) in &results {
        if let Some(e) = &d.error {
            eprintln!("{}: {}", d.path, e.message);
        }
    }
    let code = results.iter().map(|(c, _)| *c).max().unwrap_or(OK);
    let docs: Vec<&CheckDocument> = results.iter().map(|(_, d)| d).collect();
    let text = if common.json {
        if docs.len() == 1 {
            json(docs[0])
        } else {
            json(&docs)
        }
    } else {
        docs.iter().map(|d| render::check(d)).collect::<Vec<_>>().join("\n")
    };
    emit(common, text)?;
    Ok(code)
}

pub fn greenberg23(common: &Common) -> Result<u8, String> {
    let precision = common.precision.unwrap_or(DEFAULT_PRECISION);
    let guard = common.guard.unwrap_or(DEFAULT_GUARD);
    if precision == 0 || precision <= 2 * guard {
        return Err(format!("precision: {precision} must exceed twice the guard ({guard})"));
    }
    let report = run_greenberg(precision, guard).map_err(|e| e.to_string())?;
    let text = if common.json { json(&report) } else { render::greenberg(&report) };
    emit(common, text)?;
    Ok(if report.passed { OK } else { FAILED })
}

pub fn selftest(common: &Common, corrupt_log: bool) -> Result<u8, String> {
    let precision = common.precision.unwrap_or(DEFAULT_PRECISION);
    let guard = common.guard.unwrap_or(DEFAULT_GUARD);
    if precision == 0 || precision <= 2 * guard {
        return Err(format!("precision: {precision} must exceed twice the guard ({guard})"));
    }
    let report = selftest::run(precision, guard, Corruption { log_table: corrupt_log });
    let text = if common.json { json(&report) } else { render::selftest(&report) };
    emit(common, text)?;
    if let Some(f) = report.first_failure() {
        eprintln!("selftest failed: {}: {}", f.name, f.detail);
        return Ok(FAILED);
    }
    Ok(OK)
}
