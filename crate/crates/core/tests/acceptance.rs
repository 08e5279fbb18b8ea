//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

use std::process::ExitCode;

use mmm_core::verify::{run_suite, Check, SuiteOptions, SuiteReport};

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(name: &str) -> SuiteReport {
    run_suite(name, &SuiteOptions::default()).expect("known suite")
}

fn all<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Outcome {
    let checks: Vec<&Check> = checks.into_iter().collect();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.as_str())
        .collect();
    Outcome {
        passed: !checks.is_empty() && failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn witness<'a>(check: &'a Check, key: &str) -> &'a str {
    check
        .witness
        .iter()
        .find(|(k, _)| k == key)
        .map_or("?", |(_, v)| v.as_str())
}

fn criterion_3() -> (Outcome, Vec<String>) {
    let r = suite("thm18");
    let pont = all(r.group("thm18.pont."));
    let contains = all(r.group("thm18.full.contains."));
    let dims: Vec<String> = r
        .group("thm18.full.dim.")
        .map(|c| witness(c, "dim").to_string())
        .collect();
    let full = all(r.group("thm18.full.dim."));
    let outcome = Outcome {
        passed: pont.passed && contains.passed && full.passed,
        detail: format!(
            "Pont kernel = span{{L}}: {} ({}); full kernel contains L and (p_4 - chi)^(d+1): {}; full kernel dims for d = 1..4: [{}], expected 2",
            pont.passed, pont.detail, contains.passed, dims.join(", ")
        ),
    };
    // The pinned red state: everything but the dimension clause holds.
    let pinned = if pont.passed && contains.passed {
        dims
    } else {
        vec![]
    };
    (outcome, pinned)
}

fn main() -> ExitCode {
    let lclass = suite("lclass");
    let vanishing = suite("vanishing");
    let weyl = suite("weyl-compare");
    let (c3, c3_pinned) = criterion_3();
    let prop52 = suite("prop52");
    let closed = prop52
        .check("prop52.closed-form")
        .map(|c| witness(c, "matches").to_string());
    let mut c2 = all(&prop52.checks);
    c2.detail = format!(
        "{}; printed closed form that matches: {}",
        c2.detail,
        closed.unwrap_or_default()
    );

    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "L-class values and signature pairings",
            all(&lclass.checks),
        ),
        (
            2,
            "ch pushforward coefficients, a_0, series agreement, closed form",
            c2,
        ),
        (3, "kernel of kappa for the CP^2 bundle over BSU(3)", c3),
        (
            4,
            "Weyl averaging agrees with the Gysin engine; det C = ±1",
            all(weyl
                .group("weyl.agree.")
                .chain(weyl.group("weyl.binomial."))),
        ),
        (
            5,
            "kappa(L_4k) = 0 for 2 <= k <= 6 and kappa(L) = 1",
            all(vanishing
                .group("vanishing.L")
                .chain(vanishing.group("vanishing.total"))),
        ),
        (
            6,
            "Whitney kernel intersections equal the closed form",
            all(&suite("lemma31").checks),
        ),
        (
            7,
            "transgression injectivity, closed formula, loop kernel",
            all(&suite("transgression").checks),
        ),
        (
            8,
            "randomized Gysin axioms",
            all(&suite("gysin-axioms").checks),
        ),
        (
            9,
            "holomorphic composite pushforwards",
            all(&suite("holo").checks),
        ),
        (
            10,
            "L columns of loop kappa tables vanish",
            all(vanishing.group("vanishing.loop-L-column.")),
        ),
    ];

    // Criteria that are red for a documented reason, with the measured
    // values that keep them red.
    let known_red: [(u32, Vec<String>); 1] = [(3, ["2", "3", "3", "4"].map(String::from).to_vec())];

    let measured = |n: u32| (n == 3).then(|| c3_pinned.clone());

    let mut unexpected = Vec::new();
    for (n, title, outcome) in &criteria {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} [{status}] {title}: {}", outcome.detail);
        match known_red.iter().find(|(k, _)| k == n) {
            Some((_, pinned)) => {
                let still = !outcome.passed && measured(*n).as_ref() == Some(pinned);
                if !still {
                    unexpected.push(format!("criterion {n} left its known red state"));
                }
            }
            None if !outcome.passed => unexpected.push(format!("criterion {n} failed")),
            None => {}
        }
    }
    let passed = criteria.iter().filter(|c| c.2.passed).count();
    println!(
        "acceptance: {passed}/{} criteria pass; known red: 3 (full-domain kernel dimension)",
        criteria.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in unexpected {
            eprintln!("{u}");
        }
        ExitCode::FAILURE
    }
}
