//! One line per acceptance criterion, each with its time bound.
//!
//! Runs without the libtest harness so the lines always reach the terminal.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sturmian_apr::iet::IntervalExchange;
use sturmian_apr::induction::induce;
use sturmian_apr::oracle::{apr_bruteforce, OracleConfig};
use sturmian_apr::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use sturmian_apr::{
    algorithm_trace, apr_cardinality, apr_set, minimal_indices, r_prime_set, r_set, Error, FieldElement, Slope,
};

fn q(s: &str) -> FieldElement {
    s.parse().unwrap()
}

fn inv_tau_pow(n: u32) -> FieldElement {
    (0..n).fold(q("1"), |acc, _| acc * q("(-1+sqrt(5))/2"))
}

fn golden() -> Slope {
    "[0;(1)]".parse().unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn fibonacci() -> Outcome {
    let rho = q("1") - golden().value().clone();
    let set = apr_set(&golden(), &rho).unwrap();
    let words: Vec<String> = set.apr.iter().map(|w| w.to_string()).collect();
    let count = apr_cardinality(&golden(), &rho).unwrap().count;
    check(words == ["0", "1", "01", "10", "001"] && count == 5, format!("APR = {words:?}, cardinality {count}"))
}

fn table1() -> Outcome {
    let expected = [
        ("0", "1", "01", "[0;(1)]"),
        ("0", "01", "001", "[0;2,(1)]"),
        ("001", "01", "00101", "[0;(1)]"),
        ("001", "00101", "00100101", "[0;2,(1)]"),
        ("00100101", "00101", "0010010100101", "[0;(1)]"),
    ];
    let rows = algorithm_trace(&golden(), 5);
    let mismatches: Vec<usize> = rows
        .iter()
        .zip(expected)
        .enumerate()
        .filter(|(n, (row, (r, rp, prod, cf)))| {
            row.delta.value != inv_tau_pow(*n as u32)
                || row.r.to_string() != *r
                || row.r_prime.to_string() != *rp
                || row.product.to_string() != *prod
                || row.epsilon.to_string() != *cf
        })
        .map(|(n, _)| n)
        .collect();
    check(rows.len() == 5 && mismatches.is_empty(), format!("5 rows, mismatched rows {mismatches:?}"))
}

fn example_four_pieces() -> Outcome {
    let t = IntervalExchange::two_interval(inv_tau_pow(1)).unwrap();
    let result = induce(&t, inv_tau_pow(3), inv_tau_pow(1) + inv_tau_pow(4)).unwrap();
    let split = inv_tau_pow(2) + inv_tau_pow(5);
    let expected = [
        (inv_tau_pow(3), inv_tau_pow(2), 1, "0"),
        (inv_tau_pow(2), split.clone(), 3, "010"),
        (split, inv_tau_pow(1), 2, "01"),
        (inv_tau_pow(1), inv_tau_pow(1) + inv_tau_pow(4), 2, "10"),
    ];
    let ok = result.pieces.len() == 4
        && result.pieces.iter().zip(&expected).all(|(p, (l, r, time, word))| {
            p.left == *l && p.right == *r && p.return_time == *time && p.itinerary.to_string() == *word
        });
    let times: Vec<usize> = result.pieces.iter().map(|p| p.return_time).collect();
    check(ok, format!("return times {times:?}, exact endpoints"))
}

fn suite_outcome(report: &SuiteReport, extra: bool, detail: String) -> Outcome {
    let failures: Vec<String> = report.failures.iter().take(3).map(|f| format!("{}: {}", f.input, f.detail)).collect();
    let detail = if failures.is_empty() { detail } else { format!("{detail}; first failures {failures:?}") };
    check(report.passed() && extra, detail)
}

fn characteristic(config: &VerifyConfig) -> Outcome {
    let report = run_suite(Suite::Characteristic, config);
    let both = report.tally("alpha < 1/2") > 0 && report.tally("alpha > 1/2") > 0;
    let detail = format!("{} slopes, tallies {:?}", report.cases, report.tallies);
    suite_outcome(&report, both && report.cases == 20, detail)
}

fn cardinality(config: &VerifyConfig) -> Outcome {
    let report = run_suite(Suite::Cardinality, config);
    let covered = ["case i(a)", "case i(b)", "case ii"].iter().all(|k| report.tally(k) > 0);
    let detail = format!("{} pairs, tallies {:?}", report.cases, report.tallies);
    suite_outcome(&report, covered && report.cases == 200, detail)
}

fn oracle_equivalence(report: &SuiteReport) -> Outcome {
    let others: Vec<_> = report.failures.iter().filter(|f| !f.detail.starts_with("structure:")).collect();
    let detail = format!(
        "{} inputs, L=60, M=10^5, {} heavy cross-checks, {} mismatches",
        report.cases,
        report.tally("heavy cross-checks"),
        others.len()
    );
    let mut shown = detail.clone();
    if let Some(f) = others.first() {
        shown = format!("{detail}; first: {}: {}", f.input, f.detail);
    }
    check(others.is_empty() && report.cases == 25, shown)
}

fn structure(report: &SuiteReport) -> Outcome {
    let scans = report.tally("prefix scans");
    let sizes_ok = report.tallies.keys().filter(|k| k.ends_with("-word sets")).all(|k| k == "2-word sets" || k == "3-word sets");
    let violations = report.tally("structure violations");
    check(
        violations == 0 && sizes_ok && scans == 25 * 60,
        format!(
            "{scans} per-prefix scans: {} with 2 returns, {} with 3, {violations} violations",
            report.tally("2-word sets"),
            report.tally("3-word sets")
        ),
    )
}

fn dichotomy(config: &VerifyConfig) -> Outcome {
    let report = run_suite(Suite::Dichotomy, config);
    let detail = format!("{} checks over 5 slopes x 8 delta values (+ rescaling identity)", report.cases);
    suite_outcome(&report, report.cases == 5 * (2 * 8 + 1), detail)
}

fn finiteness() -> Outcome {
    let zero = q("0");
    let s = golden();
    let infinite = |r: Result<(), Error>| matches!(r, Err(Error::Infinite(_)));
    let results = [
        ("r_set", infinite(r_set(&s, &zero).map(|_| ()))),
        ("r_prime_set", infinite(r_prime_set(&s, &zero).map(|_| ()))),
        ("apr_set", infinite(apr_set(&s, &zero).map(|_| ()))),
        ("apr_cardinality", infinite(apr_cardinality(&s, &zero).map(|_| ()))),
        ("minimal_indices", infinite(minimal_indices(&s, &zero).map(|_| ()))),
        ("apr_bruteforce", infinite(apr_bruteforce(&s, &zero, &OracleConfig::default()).map(|_| ()))),
    ];
    let failing: BTreeSet<&str> = results.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    check(failing.is_empty(), format!("{} operations checked, not infinite: {failing:?}", results.len()))
}

fn main() -> ExitCode {
    let config = VerifyConfig::default();
    let mut oracle_report = None;
    let mut oracle_time = Duration::ZERO;
    let mut all = true;
    let mut run = |n: usize, name: &str, bound: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let ok = outcome.ok && elapsed <= bound;
        all &= ok;
        println!(
            "criterion {n} [{name}]: {} ({}; {:.2} s, bound {} s)",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            bound.as_secs()
        );
    };
    let secs = Duration::from_secs;
    run(1, "fibonacci golden set", secs(1), &mut fibonacci);
    run(2, "golden-ratio table rows", secs(1), &mut table1);
    run(3, "four-piece induction", secs(1), &mut example_four_pieces);
    run(4, "characteristic closed form", secs(30), &mut || characteristic(&config));
    run(5, "closed-form cardinalities", secs(60), &mut || cardinality(&config));
    run(6, "oracle equivalence", secs(120), &mut || {
        let start = Instant::now();
        let report = run_suite(Suite::Oracle, &config);
        oracle_time = start.elapsed();
        let outcome = oracle_equivalence(&report);
        oracle_report = Some(report);
        outcome
    });
    // Reuses the scans of criterion 6.
    run(7, "two or three returns per prefix", secs(120), &mut || {
        let mut outcome = structure(oracle_report.as_ref().unwrap());
        outcome.detail = format!("{}; scans took {:.2} s", outcome.detail, oracle_time.as_secs_f64());
        outcome
    });
    run(8, "two/three itinerary dichotomy", secs(30), &mut || dichotomy(&config));
    run(9, "zero intercept is infinite", secs(5), &mut finiteness);
    if all {
        println!("acceptance: all 9 criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL");
        ExitCode::FAILURE
    }
}
