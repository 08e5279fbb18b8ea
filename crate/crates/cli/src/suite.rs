//! Running named suites and rendering their reports.

use std::collections::BTreeMap;

use mmm_core::verify::{self, SuiteOptions, SuiteReport, SUITES};
use serde_json::{json, Value};

use crate::render::Output;

/// Runs the named suites concurrently; reports come back in request order.
pub fn run_suites(names: &[&str], options: &SuiteOptions) -> mmm_core::Result<Vec<SuiteReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| scope.spawn(move || verify::run_suite(name, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

/// `all` expands to every suite.
pub fn resolve(name: &str) -> Option<Vec<&'static str>> {
    if name == "all" {
        return Some(SUITES.to_vec());
    }
    SUITES.iter().find(|s| **s == name).map(|s| vec![*s])
}

fn report_json(report: &SuiteReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let witness: BTreeMap<&str, &str> = c
                .witness
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect();
            json!({
                "id": c.id,
                "claim": c.claim,
                "status": if c.passed { "pass" } else { "fail" },
                "witness": witness,
            })
        })
        .collect();
    json!({ "suite": report.suite, "passed": report.passed(), "checks": checks })
}

fn report_text(report: &SuiteReport) -> String {
    let mut out = format!("suite {}\n", report.suite);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("  {status} {}: {}\n", c.id, c.claim));
        for (k, v) in &c.witness {
            out.push_str(&format!("       {k} = {v}\n"));
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("  {passed}/{} checks pass\n", report.checks.len()));
    out
}

pub fn render_reports(reports: &[SuiteReport]) -> Output {
    let text = reports
        .iter()
        .map(report_text)
        .collect::<Vec<_>>()
        .join("\n");
    let json = if reports.len() == 1 {
        report_json(&reports[0])
    } else {
        Value::Array(reports.iter().map(report_json).collect())
    };
    Output {
        text,
        json,
        ok: reports.iter().all(SuiteReport::passed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_names() {
        assert_eq!(resolve("all").unwrap().len(), 9);
        assert_eq!(resolve("thm18").unwrap(), vec!["thm18"]);
        assert!(resolve("thm19").is_none());
    }

    #[test]
    fn order_is_fixed() {
        let names = ["holo", "lclass", "vanishing"];
        let reports = run_suites(&names, &SuiteOptions::default()).unwrap();
        let got: Vec<&str> = reports.iter().map(|r| r.suite.as_str()).collect();
        assert_eq!(got, names);
    }
}
