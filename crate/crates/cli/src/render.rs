//! Plain-text forms of the reports.  Same content as the JSON, minus digits.

use std::fmt::Write;

use linv_core::linv::{CheckRecord, GreenbergReport, LInvariantReport, RatioClass};
use linv_core::selftest::SelftestReport;

use crate::commands::CheckDocument;

fn mark(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn checks(out: &mut String, title: &str, list: &[CheckRecord]) {
    let _ = writeln!(out, "{title}:");
    for c in list {
        if c.detail.is_empty() {
            let _ = writeln!(out, "  [{}] {}", mark(c.passed), c.name);
        } else {
            let _ = writeln!(out, "  [{}] {} ({})", mark(c.passed), c.name, c.detail);
        }
    }
}

fn header(out: &mut String, conventions: &[String]) {
    let _ = writeln!(out, "{} {}", linv_core::linv::TOOL_NAME, linv_core::linv::TOOL_VERSION);
    let _ = writeln!(out, "conventions:");
    for c in conventions {
        let _ = writeln!(out, "  - {c}");
    }
}

fn ratio(r: &RatioClass) -> String {
    match r {
        RatioClass::Rational { u, w } if w == "1" => format!("rational {u}"),
        RatioClass::Rational { u, w } => format!("rational {u}/{w}"),
        RatioClass::Quadratic { poly } => format!("root of {}", poly.join(" ")),
        RatioClass::Unrecognized => "unrecognized".into(),
    }
}

fn report(out: &mut String, r: &LInvariantReport) {
    header(out, &r.conventions);
    let syn = if r.synthetic { " (synthetic)" } else { "" };
    let _ = writeln!(out, "case {}{syn}, p = {}, precision {}, guard {}", r.case_type, r.p, r.precision, r.guard);
    let _ = writeln!(out, "local field {}", r.local_field);
    let _ = writeln!(out, "decomposition group {:?}, Frobenius {}", r.decomposition_group, r.frobenius);
    checks(out, "hypotheses", &r.hypotheses);
    let _ = writeln!(out, "log u1      = {}", r.components.log_u1.text);
    if let Some(v) = &r.components.log_u_ba {
        let _ = writeln!(out, "log u_ba    = {}", v.text);
    }
    let _ = writeln!(out, "log v1      = {}", r.components.log_v1.text);
    if let Some(v) = &r.components.log_v_ba {
        let _ = writeln!(out, "log v_ba    = {}", v.text);
    }
    let _ = writeln!(out, "l_an        = {}", r.l_an.text);
    let _ = writeln!(out, "l_gr_closed = {}", r.l_gr_closed.text);
    let _ = writeln!(out, "l_gr_solver = {}", r.l_gr_solver.text);
    for u in &r.unknowns {
        let _ = writeln!(out, "  {} = {}", u.name, u.value.text);
    }
    let _ = writeln!(out, "solver residuals vanish to {} (1/e units)", r.solver_residual_valuation);
    let _ = writeln!(
        out,
        "choices: sigma2 {:?}, sigma_tilde {:?}, order {:?}",
        r.choices.sigma2, r.choices.sigma_tilde, r.choices.sigma_order
    );
    let _ = writeln!(out, "l_an / l_gr_closed: {}", ratio(&r.ratio));
    let _ = writeln!(out, "dropped factors:");
    for d in &r.dropped_factors {
        let applied = if d.applied { "applied" } else { "not applied" };
        let _ = writeln!(out, "  {} = {} ({applied})", d.name, d.value);
    }
    checks(out, "checks", &r.checks);
}

pub fn check(doc: &CheckDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "== {}", doc.path);
    if let Some(r) = &doc.report {
        report(&mut out, r);
    }
    if let Some(a) = &doc.repcheck {
        let _ = writeln!(out, "repcheck (conjugation {}):", a.conjugation);
        for c in &a.constituents {
            let _ = writeln!(
                out,
                "  {}: degree {}, in Reg {}, in units {}, contributes {}",
                c.name, c.degree, c.in_regular, c.in_units, c.contribution
            );
        }
        let _ = writeln!(
            out,
            "  global {}, local {}, W {}",
            a.global_dimension, a.local_dimension, a.w_dimension
        );
        checks(&mut out, "repcheck checks", &a.checks);
    }
    for n in &doc.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(e) = &doc.error {
        let _ = writeln!(out, "error during {}: {}", e.stage, e.message);
    }
    let _ = writeln!(out, "result: {}", if doc.passed { "PASS" } else { "FAIL" });
    out
}

pub fn greenberg(r: &GreenbergReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.conventions);
    let _ = writeln!(out, "case {}, p = {}, precision {}, guard {}", r.case_type, r.p, r.precision, r.guard);
    let _ = writeln!(out, "local field {}", r.local_field);
    let _ = writeln!(out, "bracketed ratio = {}", r.bracket_ratio.text);
    let _ = writeln!(out, "value = {}·(log π − ratio·log ε) = {}", r.coefficient, r.value.text);
    checks(&mut out, "checks", &r.checks);
    let _ = writeln!(out, "result: {}", if r.passed { "PASS" } else { "FAIL" });
    out
}

pub fn selftest(r: &SelftestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} selftest, precision {}, guard {}", linv_core::linv::TOOL_NAME, linv_core::linv::TOOL_VERSION, r.precision, r.guard);
    checks(&mut out, "properties", &r.properties);
    let _ = writeln!(out, "result: {}", if r.passed { "PASS" } else { "FAIL" });
    out
}
