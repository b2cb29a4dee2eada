//! Cross-checks between independent code paths over seeded random inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::delta::{delta_table, minimal_indices, DeltaStream};
use crate::error::Error;
use crate::iet::{IntervalExchange, Permutation};
use crate::induction::{classify_itineraries, induce};
use crate::oracle::{apr_bruteforce, OracleConfig};
use crate::random::{intercept_for_case, random_intercept, random_slope, rng, SlopeShape};
use crate::returns::{
    apr_cardinality, apr_set_with, characteristic_apr, AlgorithmOptions, CardinalityCase, ReturnAlgorithm,
    Weight,
};
use crate::slope::Slope;
use crate::word::BinaryWord;
use crate::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// The golden-ratio rows of the renormalization loop.
    Table1,
    /// Closed-form counts against the algorithm's set sizes.
    Cardinality,
    /// The characteristic-word formula against the algorithm.
    Characteristic,
    /// Brute-force scans against the algorithm, with the per-prefix structure.
    Oracle,
    /// Two itineraries at each `δ`, three strictly between.
    Dichotomy,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Table1, Suite::Cardinality, Suite::Characteristic, Suite::Oracle, Suite::Dichotomy];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Cardinality => "cardinality",
            Suite::Characteristic => "characteristic",
            Suite::Oracle => "oracle",
            Suite::Dichotomy => "dichotomy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cardinality_cases: usize,
    pub characteristic_cases: usize,
    pub oracle_cases: usize,
    pub dichotomy_slopes: usize,
    pub dichotomy_depth: usize,
    pub oracle: OracleConfig,
    pub options: AlgorithmOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2024,
            cardinality_cases: 200,
            characteristic_cases: 20,
            oracle_cases: 25,
            dichotomy_slopes: 5,
            dichotomy_depth: 8,
            oracle: OracleConfig::default(),
            options: AlgorithmOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    /// Named tallies, e.g. how often each cardinality branch was hit.
    pub tallies: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, cases: 0, tallies: BTreeMap::new(), failures: Vec::new(), elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, key: &str) -> usize {
        self.tallies.get(key).copied().unwrap_or(0)
    }

    fn count(&mut self, key: impl Into<String>) {
        *self.tallies.entry(key.into()).or_default() += 1;
    }

    fn fail(&mut self, input: impl fmt::Display, detail: impl Into<String>) {
        self.failures.push(Failure { input: input.to_string(), detail: detail.into() });
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(suite);
    match suite {
        Suite::Table1 => table1(config, &mut report),
        Suite::Cardinality => cardinality(config, &mut report),
        Suite::Characteristic => characteristic(config, &mut report),
        Suite::Oracle => oracle(config, &mut report),
        Suite::Dichotomy => dichotomy(config, &mut report),
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

pub fn run_all(config: &VerifyConfig) -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(|suite| run_suite(suite, config)).collect()
}

fn q(text: &str) -> FieldElement {
    text.parse().expect("literal")
}

struct Input<'a>(&'a Slope, &'a FieldElement);

impl fmt::Display for Input<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "--slope \"{}\" --intercept \"{}\"", self.0, self.1)
    }
}

/// Rows `(R, R′, RR′, renormalized slope)` of the golden-ratio table; the
/// `δ` column is `τ^{−n}`.
pub const TABLE1: [(&str, &str, &str, &str); 5] = [
    ("0", "1", "01", "[0;(1)]"),
    ("0", "01", "001", "[0;2,(1)]"),
    ("001", "01", "00101", "[0;(1)]"),
    ("001", "00101", "00100101", "[0;2,(1)]"),
    ("00100101", "00101", "0010010100101", "[0;(1)]"),
];

fn table1(config: &VerifyConfig, report: &mut SuiteReport) {
    let slope: Slope = "[0;(1)]".parse().expect("literal");
    let inv_tau = q("(-1+sqrt(5))/2");
    let mut power = q("1");
    let rows = ReturnAlgorithm::with_options(&slope, config.options).take(TABLE1.len());
    for (n, (step, expected)) in rows.zip(TABLE1).enumerate() {
        report.cases += 1;
        let got = (step.r.to_string(), step.r_prime.to_string(), step.product.to_string(), step.epsilon.to_string());
        let want = (expected.0.into(), expected.1.into(), expected.2.into(), expected.3.into());
        if got != want {
            report.fail(format!("--slope \"[0;(1)]\" row {n}"), format!("got {got:?}, expected {want:?}"));
        }
        if step.delta.value != power {
            report.fail(format!("--slope \"[0;(1)]\" row {n}"), format!("delta {} is not tau^-{n}", step.delta.value));
        }
        power = power * inv_tau.clone();
    }
}

fn cardinality(config: &VerifyConfig, report: &mut SuiteReport) {
    let mut r = rng(config.seed ^ 0xCA4D);
    let shape = SlopeShape::default();
    let targets = [Some(CardinalityCase::MiddleLow), Some(CardinalityCase::MiddleHigh), Some(CardinalityCase::Outer), None];
    let (zero, one) = (q("0"), q("1"));
    let mut i = 0;
    while report.cases < config.cardinality_cases {
        let slope = random_slope(&mut r, shape);
        let target = targets[i % targets.len()];
        let rho = match target {
            Some(case) => match intercept_for_case(&mut r, &slope, case) {
                Some(rho) => rho,
                None => continue,
            },
            None => random_intercept(&mut r, &slope, &zero, &one),
        };
        i += 1;
        report.cases += 1;
        let input = Input(&slope, &rho);
        let (card, set) = match (apr_cardinality(&slope, &rho), apr_set_with(&slope, &rho, config.options)) {
            (Ok(c), Ok(s)) => (c, s),
            (c, s) => {
                report.fail(&input, format!("error: {:?} / {:?}", c.err(), s.err()));
                continue;
            }
        };
        report.count(format!("case {}", card.case));
        if card.count != set.apr.len() {
            report.fail(&input, format!("formula {} ({}) vs {} words", card.count, card.case, set.apr.len()));
        }
        if card.case == CardinalityCase::Outer {
            let small = if slope.exceeds_half() { slope.complement() } else { slope.clone() };
            let small_rho = if slope.exceeds_half() { one.clone() - rho.clone() } else { rho.clone() };
            let nearest = std::cmp::min(small_rho.clone(), one.clone() - small_rho);
            let expected = minimal_indices(&small, &nearest)
                .map(|d| 2 + (1..=d.k).map(|j| small.a(j) as usize).sum::<usize>() + d.s as usize);
            if expected.as_ref().ok() != Some(&card.count) {
                report.fail(&input, format!("2 + a_1 + ... + a_k + s = {expected:?}, formula {}", card.count));
            }
            let low = std::cmp::min(slope.value().clone(), one.clone() - slope.value().clone());
            if rho <= low && set.counts.n_apr != set.counts.n_r + 1 {
                report.fail(&input, format!("n_apr {} != n_r {} + 1", set.counts.n_apr, set.counts.n_r));
            }
        }
    }
}

fn characteristic(config: &VerifyConfig, report: &mut SuiteReport) {
    let mut r = rng(config.seed ^ 0xC4A2);
    let one = q("1");
    while report.cases < config.characteristic_cases {
        let slope = random_slope(&mut r, SlopeShape::default());
        // Alternate the two branches.
        if slope.exceeds_half() != report.cases.is_multiple_of(2) {
            continue;
        }
        report.cases += 1;
        report.count(if slope.exceeds_half() { "alpha > 1/2" } else { "alpha < 1/2" });
        let rho = one.clone() - slope.value().clone();
        match apr_set_with(&slope, &rho, config.options) {
            Ok(set) if set.apr == characteristic_apr(&slope) => {}
            Ok(set) => report.fail(
                Input(&slope, &rho),
                format!("closed form {:?} vs algorithm {:?}", characteristic_apr(&slope), set.apr),
            ),
            Err(e) => report.fail(Input(&slope, &rho), e.to_string()),
        }
    }
}

/// Slopes and intercepts whose abelian returns all show up among the first
/// few dozen prefixes: small partial quotients, `ρ ∈ (1/6, 5/6)`, and `ρ`
/// (resp. `1−ρ`) at least `1/25` below the nearest larger `δ` of `α` (resp.
/// `1−α`).
pub fn oracle_input<R: Rng>(rng: &mut R) -> (Slope, FieldElement) {
    let shape = SlopeShape { max_preperiod: 2, max_period: 3, max_digit: 3 };
    let (low, high, margin, one) = (q("1/6"), q("5/6"), q("1/25"), q("1"));
    let clear = |slope: &Slope, rho: &FieldElement| {
        let above = DeltaStream::new(slope).take_while(|d| d.value > *rho).last().expect("delta_0 = 1 > rho");
        above.value - rho.clone() >= margin
    };
    loop {
        let slope = random_slope(rng, shape);
        let rho = random_intercept(rng, &slope, &low, &high);
        if clear(&slope, &rho) && clear(&slope.complement(), &(one.clone() - rho.clone())) {
            return (slope, rho);
        }
    }
}

fn oracle(config: &VerifyConfig, report: &mut SuiteReport) {
    let mut r = rng(config.seed ^ 0x0AC1E);
    for _ in 0..config.oracle_cases {
        let (slope, rho) = oracle_input(&mut r);
        report.cases += 1;
        let input = Input(&slope, &rho);
        let (brute, set) = match (apr_bruteforce(&slope, &rho, &config.oracle), apr_set_with(&slope, &rho, config.options)) {
            (Ok(b), Ok(s)) => (b, s),
            (b, s) => {
                report.fail(&input, format!("error: {:?} / {:?}", b.err(), s.err()));
                continue;
            }
        };
        if !brute.authoritative {
            report.fail(&input, format!("word capped at {} letters", brute.generated_length));
        }
        if !brute.stabilized() {
            report.fail(&input, format!("not stabilized, last growth at prefix {}", brute.last_growth));
        }
        if brute.accumulated != set.apr {
            report.fail(&input, format!("oracle {:?} vs algorithm {:?}", brute.accumulated, set.apr));
        }
        for violation in &brute.violations {
            report.count("structure violations");
            report.fail(&input, format!("structure: {violation}"));
        }
        for failure in &brute.cross_check_failures {
            report.fail(&input, failure.clone());
        }
        let light: BTreeSet<&BinaryWord> = set.r_set.iter().collect();
        let heavy: BTreeSet<&BinaryWord> = set.r_prime_set.iter().collect();
        for (n, words) in &brute.per_prefix {
            report.count("prefix scans");
            report.count(format!("{}-word sets", words.len()));
            let home = if brute.weights[n] == Weight::Light { &light } else { &heavy };
            if let Some(w) = words.iter().find(|w| !home.contains(w)) {
                report.fail(&input, format!("prefix {n} ({:?}) has return {w} outside its half", brute.weights[n]));
            }
        }
        *report.tallies.entry("heavy cross-checks".into()).or_default() += brute.heavy_cross_checks;
    }
}

fn dichotomy(config: &VerifyConfig, report: &mut SuiteReport) {
    let mut r = rng(config.seed ^ 0xD1C0);
    let two = q("2");
    for _ in 0..config.dichotomy_slopes {
        let slope = random_slope(&mut r, SlopeShape::default());
        let t = IntervalExchange::two_interval(slope.value().clone()).expect("irrational slope");
        let deltas = delta_table(&slope, config.dichotomy_depth + 1);
        for pair in deltas.windows(2) {
            let (delta, next) = (&pair[0].value, &pair[1].value);
            let middle = (delta.clone() + next.clone()) / two.clone();
            for (beta, expected, permutation) in [(delta, 2, Permutation::Swap2), (&middle, 3, Permutation::Perm321)] {
                report.cases += 1;
                let input = format!("--slope \"{slope}\" --interval \"[0,{beta})\"");
                let outcome = induce(&t, q("0"), beta.clone()).and_then(|result| {
                    if result.kac_sum() != q("1") {
                        return Err(Error::Invariant(format!("Kac sum {}", result.kac_sum())));
                    }
                    if result.induced.permutation() != permutation {
                        return Err(Error::Invariant(format!("induced map {}", result.induced.permutation())));
                    }
                    classify_itineraries(result.itineraries())
                });
                match outcome {
                    Ok(found) if found.len() == expected => {}
                    Ok(found) => report.fail(input, format!("{} itineraries, expected {expected}", found.len())),
                    Err(e) => report.fail(input, e.to_string()),
                }
            }
        }
        report.cases += 1;
        let renormalized = delta_table(&slope.renormalize(), 2);
        if renormalized[1].value != deltas[2].value.clone() / deltas[1].value.clone() {
            report.fail(format!("--slope \"{slope}\""), "renormalized delta_1 differs from delta_2 / delta_1");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            cardinality_cases: 40,
            characteristic_cases: 6,
            oracle_cases: 3,
            dichotomy_slopes: 2,
            dichotomy_depth: 4,
            oracle: OracleConfig { word_len: 20_000, ..OracleConfig::default() },
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suites_pass_on_a_small_budget() {
        for report in run_all(&small()) {
            assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn flipped_order_is_caught() {
        let config = VerifyConfig { options: AlgorithmOptions { flip_lex: true }, ..small() };
        assert!(!run_suite(Suite::Table1, &config).passed());
        let oracle = run_suite(Suite::Oracle, &config);
        assert!(oracle.failures.iter().any(|f| f.input.starts_with("--slope")));
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("tabel1".parse::<Suite>().is_err());
    }
}
