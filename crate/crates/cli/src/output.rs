//! Table and JSON renderings of each command's result.
//!
//! Both renderings are built from the same data. JSON carries exact values
//! only; tables add a 12-digit decimal next to each exact value.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};
use sturmian_apr::verify::SuiteReport;
use sturmian_apr::{BinaryWord, Cardinality, DeltaValue, FieldElement, InductionResult, ReturnSetResult, Slope};

pub const SCHEMA: u32 = 1;

pub struct Rendered {
    pub table: String,
    pub json: Value,
}

fn decimal(x: &FieldElement) -> String {
    let f = x.to_f64();
    if f == 0.0 || f.abs() >= 1e-4 {
        format!("{f:.12}")
    } else {
        format!("{f:.11e}")
    }
}

fn exact(x: &FieldElement) -> String {
    format!("{x} ≈ {}", decimal(x))
}

fn words(list: &[BinaryWord]) -> String {
    list.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn header(command: &str, slope: &Slope) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    map.insert("slope".into(), json!(slope.to_string()));
    map.insert("alpha".into(), json!(slope.value().to_string()));
    map
}

fn indices_line(d: &DeltaValue) -> String {
    format!("(k,s) = ({},{}), flat index {}, δ = {}", d.k, d.s, d.flat_index, exact(&d.value))
}

pub fn apr(slope: &Slope, rho: &FieldElement, result: ReturnSetResult, card: Cardinality) -> Rendered {
    let mut t = String::new();
    writeln!(t, "slope      {slope}   α = {}", exact(slope.value())).unwrap();
    writeln!(t, "intercept  {}", exact(rho)).unwrap();
    writeln!(t).unwrap();
    writeln!(t, "R   ({:>2})  {}", result.counts.n_r, words(&result.r_set)).unwrap();
    writeln!(t, "R'  ({:>2})  {}", result.counts.n_rprime, words(&result.r_prime_set)).unwrap();
    writeln!(t, "APR ({:>2})  {}", result.counts.n_apr, words(&result.apr)).unwrap();
    writeln!(t).unwrap();
    writeln!(t, "for ρ:        {}", indices_line(&result.indices)).unwrap();
    writeln!(t, "for 1−ρ:      {}", indices_line(&result.indices_prime)).unwrap();
    let mut case = format!("case {}, count {}", card.case, card.count);
    if let Some(l) = card.l {
        write!(case, ", l = {l}").unwrap();
    }
    if card.mirrored {
        case.push_str(", evaluated for (1−α, 1−ρ)");
    }
    writeln!(t, "closed form:  {case}").unwrap();

    let mut map = header("apr", slope);
    map.insert("intercept".into(), json!(rho.to_string()));
    map.insert("r_set".into(), to_value(&result.r_set));
    map.insert("r_prime_set".into(), to_value(&result.r_prime_set));
    map.insert("apr".into(), to_value(&result.apr));
    map.insert("counts".into(), to_value(&result.counts));
    map.insert("indices".into(), to_value(&result.indices));
    map.insert("indices_prime".into(), to_value(&result.indices_prime));
    map.insert("cardinality".into(), to_value(&card));
    Rendered { table: t, json: Value::Object(map) }
}

pub fn itineraries(slope: &Slope, result: &InductionResult<FieldElement>) -> Rendered {
    let mut t = String::new();
    writeln!(t, "slope     {slope}   α = {}", exact(slope.value())).unwrap();
    writeln!(t, "interval  [{}, {})", result.left, result.right).unwrap();
    writeln!(t, "          ≈ [{}, {})", decimal(&result.left), decimal(&result.right)).unwrap();
    writeln!(t).unwrap();
    let mut rows = Vec::new();
    for (j, p) in result.pieces.iter().enumerate() {
        writeln!(t, "I{}  [{}, {})", j + 1, p.left, p.right).unwrap();
        writeln!(t, "    ≈ [{}, {})", decimal(&p.left), decimal(&p.right)).unwrap();
        writeln!(t, "    r = {}   T_I(x) = x + {}   R = {}", p.return_time, p.translation, p.itinerary).unwrap();
        rows.push(json!({
            "left": p.left.to_string(),
            "right": p.right.to_string(),
            "return_time": p.return_time,
            "translation": p.translation.to_string(),
            "itinerary": p.itinerary,
        }));
    }
    let induced = &result.induced;
    let itineraries: Vec<BinaryWord> = result.itineraries().into_iter().collect();
    writeln!(t).unwrap();
    writeln!(
        t,
        "induced map: {} intervals, permutation {}; {} distinct itineraries; Kac sum {}",
        induced.interval_count(),
        induced.permutation(),
        itineraries.len(),
        result.kac_sum()
    )
    .unwrap();

    let mut map = header("itineraries", slope);
    map.insert("left".into(), json!(result.left.to_string()));
    map.insert("right".into(), json!(result.right.to_string()));
    map.insert("pieces".into(), Value::Array(rows));
    map.insert(
        "induced".into(),
        json!({
            "intervals": induced.interval_count(),
            "permutation": induced.permutation(),
            "breakpoints": induced.breakpoints().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        }),
    );
    map.insert("itineraries".into(), to_value(&itineraries));
    map.insert("kac_sum".into(), json!(result.kac_sum().to_string()));
    Rendered { table: t, json: Value::Object(map) }
}

pub fn delta_table(slope: &Slope, rows: &[DeltaValue]) -> Rendered {
    let mut t = String::new();
    writeln!(t, "slope  {slope}   α = {}", exact(slope.value())).unwrap();
    writeln!(t).unwrap();
    writeln!(t, "{:>4} {:>4} {:>4}  δ", "n", "k", "s").unwrap();
    for d in rows {
        writeln!(t, "{:>4} {:>4} {:>4}  {}", d.flat_index, d.k, d.s, exact(&d.value)).unwrap();
    }
    writeln!(t).unwrap();
    writeln!(t, "strictly decreasing: yes").unwrap();

    let mut map = header("delta-table", slope);
    map.insert("rows".into(), to_value(&rows));
    map.insert("strictly_decreasing".into(), json!(true));
    Rendered { table: t, json: Value::Object(map) }
}

pub fn verify(seed: u64, reports: &[SuiteReport]) -> Rendered {
    let mut t = String::new();
    writeln!(t, "seed {seed}").unwrap();
    let mut suites = Vec::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(t, "{:<15} {status}  {} cases", r.suite.name(), r.cases).unwrap();
        for (key, n) in &r.tallies {
            writeln!(t, "    {key}: {n}").unwrap();
        }
        for f in &r.failures {
            writeln!(t, "  counterexample: {}", f.input).unwrap();
            writeln!(t, "    {}", f.detail).unwrap();
        }
        // elapsed time goes to stderr only, so the output is reproducible
        suites.push(json!({
            "suite": r.suite,
            "passed": r.passed(),
            "cases": r.cases,
            "tallies": r.tallies,
            "failures": r.failures,
        }));
    }
    let passed = reports.iter().all(|r| r.passed());
    writeln!(t, "{}", if passed { "all suites passed" } else { "some suites FAILED" }).unwrap();
    let json = json!({ "schema": SCHEMA, "command": "verify", "seed": seed, "passed": passed, "suites": suites });
    Rendered { table: t, json }
}
