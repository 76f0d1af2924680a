//! Deterministic CSV, JSON, and markdown emission. Two runs of the same
//! configuration produce byte-identical output: floats are written with
//! Rust's shortest round-trip formatting and row order is fixed by the
//! runner.

use super::{CheckResult, CsvRow, FitSummary};
use serde::Serialize;

/// Exact column order of the data CSV.
pub const CSV_HEADER: &str = "geometry,mode,alpha,rational_p,rational_q,epsilon,t,lambda,\
                              observed,predicted,ratio,tolerance,pass,provenance";

fn field(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render the rows with the fixed header; every row carries the observed,
/// predicted and ratio columns needed to recompute the comparison offline.
pub fn emit_csv(rows: &[CsvRow]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let p = r.rational_p.map(|v| v.to_string()).unwrap_or_default();
        let q = r.rational_q.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.geometry,
            r.mode,
            field(r.alpha),
            p,
            q,
            field(r.epsilon),
            field(r.t),
            field(r.lambda),
            r.observed,
            r.predicted,
            r.ratio,
            r.tolerance,
            r.pass,
            csv_escape(&r.provenance),
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    config_echo: serde_json::Value,
    checks: &'a [CheckResult],
    fits: &'a [FitSummary],
    verdict: String,
}

/// JSON summary: `{config_echo, checks, fits, verdict}`.
pub fn emit_json(
    config_echo: serde_json::Value,
    checks: &[CheckResult],
    fits: &[FitSummary],
) -> String {
    let summary = JsonSummary {
        config_echo,
        checks,
        fits,
        verdict: verdict(checks),
    };
    let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Overall verdict line assembled from which check families ran and passed.
pub fn verdict(checks: &[CheckResult]) -> String {
    if checks.is_empty() {
        return "no experiments run".to_string();
    }
    let mut confirmed: Vec<&str> = Vec::new();
    let section_pass = |section: &str, pred: &dyn Fn(&CheckResult) -> bool| {
        let relevant: Vec<_> = checks
            .iter()
            .filter(|c| c.section == section && pred(c))
            .collect();
        !relevant.is_empty() && relevant.iter().all(|c| c.pass)
    };

    if section_pass("torus", &|_| true) {
        confirmed.push("torus");
    }
    if section_pass("heisenberg", &|_| true) {
        confirmed.push("Heisenberg-internal");
    }
    if section_pass("sol", &|c| c.name.starts_with("sol-riemannian")) {
        confirmed.push("alpha=0 Sol");
    }
    if section_pass("weyl-ref", &|_| true) {
        confirmed.push("semiclassical reference");
    }

    let mismatch: Vec<_> = checks
        .iter()
        .filter(|c| c.name.starts_with("sol-mismatch alpha"))
        .collect();

    let mut parts = Vec::new();
    if confirmed.is_empty() {
        parts.push("no confirmation checks passed".to_string());
    } else {
        parts.push(format!("CONFIRMED ({})", confirmed.join(", ")));
    }
    if !mismatch.is_empty() {
        if mismatch.iter().all(|c| c.pass) {
            let r_max = mismatch.iter().map(|c| c.ratio).fold(f64::NEG_INFINITY, f64::max);
            parts.push(format!("FAILS (Sol alpha!=0, ratio <= {r_max:.4} < 2/3)"));
        } else {
            parts.push("Sol mismatch checks inconclusive".to_string());
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut line = format!("NC Weyl formula: {}", parts.join(" / "));
    if failed > 0 {
        line.push_str(&format!(" / WARNING: {failed} check(s) failed"));
    }
    line
}

/// Markdown report: one table per geometry, a fits section, a verdict line.
pub fn emit_report(checks: &[CheckResult], fits: &[FitSummary]) -> String {
    let mut out = String::from("# adialab experiment report\n");
    if checks.is_empty() {
        out.push_str("\nno experiments run\n");
        return out;
    }
    for section in ["torus", "heisenberg", "sol", "weyl-ref"] {
        let rows: Vec<_> = checks.iter().filter(|c| c.section == section).collect();
        if rows.is_empty() {
            continue;
        }
        out.push_str(&format!("\n## {section}\n\n"));
        out.push_str("| check | observed | predicted | ratio | tolerance | pass |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for c in rows {
            out.push_str(&format!(
                "| {} | {:.9e} | {:.9e} | {:.9} | {:.3e} | {} |\n",
                c.name,
                c.observed,
                c.predicted,
                c.ratio,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
    }
    if !fits.is_empty() {
        out.push_str("\n## leading-order fits\n\n");
        out.push_str("| fit | coefficient | exponent | residual |\n|---|---|---|---|\n");
        for f in fits {
            out.push_str(&format!(
                "| {} | {:.9e} | {:.9} | {:.3e} |\n",
                f.name, f.coefficient, f.exponent, f.residual
            ));
        }
    }
    out.push_str(&format!("\n**Verdict:** {}\n", verdict(checks)));
    out
}
