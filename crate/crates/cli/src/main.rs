//! `apr`: exact abelian returns to prefixes of Sturmian words.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sturmian_apr::induction::{induce_capped, DEFAULT_STEP_CAP};
use sturmian_apr::oracle::OracleConfig;
use sturmian_apr::returns::AlgorithmOptions;
use sturmian_apr::verify::{run_suite, Suite, VerifyConfig};
use sturmian_apr::{
    apr_cardinality, apr_set, delta_table, ArithmeticError, Error, FieldElement, IntervalExchange, Scalar, Slope,
};

use output::Rendered;

#[derive(Parser, Debug)]
#[command(name = "apr", version, about = "Abelian returns to prefixes of Sturmian words, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
struct SlopeArg {
    /// Slope as a continued fraction with explicit period, e.g. "[0;2,(1,3)]",
    /// or as an exact quadratic irrational, e.g. "(-1+sqrt(5))/2".
    #[arg(long)]
    slope: Slope,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelian returns to prefixes: both halves, their union, and the closed-form count.
    Apr {
        #[command(flatten)]
        slope: SlopeArg,
        /// Intercept in [0,1), in the slope's quadratic field.
        #[arg(long)]
        intercept: FieldElement,
    },
    /// First-return pieces and itineraries of an interval.
    Itineraries {
        #[command(flatten)]
        slope: SlopeArg,
        /// Interval "[a,b)" inside [0,1].
        #[arg(long, conflicts_with = "beta_at_delta", required_unless_present = "beta_at_delta")]
        interval: Option<String>,
        /// Use [0, δ_n) with δ_n the n-th gap length (δ_0 = 1).
        #[arg(long, value_name = "N")]
        beta_at_delta: Option<usize>,
        /// Give up after this many refinement steps.
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: usize,
    },
    /// The first gap lengths δ_{k,s} in decreasing order.
    DeltaTable {
        #[command(flatten)]
        slope: SlopeArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Cross-check the algorithm against closed forms and brute force on seeded inputs.
    Verify {
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Run only these suites (repeatable): table1, cardinality, characteristic, oracle, dichotomy.
        #[arg(long = "suite", value_name = "SUITE")]
        suites: Vec<Suite>,
        /// Longest prefix scanned by the brute-force oracle.
        #[arg(long, default_value_t = OracleConfig::default().max_prefix)]
        max_prefix: usize,
        /// Initial length of the word scanned by the oracle.
        #[arg(long, default_value_t = OracleConfig::default().word_len)]
        word_len: usize,
        /// Order the renormalized pair with 1 < 0; the suites must notice.
        #[arg(long, hide = true)]
        inject_lex_bug: bool,
    },
}

enum Failure {
    /// Bad input or configuration (exit 2).
    Config(String),
    /// The computation itself failed (exit 1).
    Math(Error),
    /// A verification suite found a mismatch (exit 3).
    Verification(Rendered),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let input_problem = match &e {
            Error::Arithmetic(ArithmeticError::DivisionByZero) => false,
            Error::Arithmetic(_)
            | Error::RationalSlope(_)
            | Error::OutOfDomain { .. }
            | Error::EmptyInterval { .. }
            | Error::DeltaIndex { .. }
            | Error::ContinuedFraction { .. } => true,
            _ => false,
        };
        if input_problem { Failure::Config(e.to_string()) } else { Failure::Math(e) }
    }
}

fn parse_interval(text: &str) -> Result<(FieldElement, FieldElement), Failure> {
    let bad = || Failure::Config(format!("interval `{text}` is not of the form [a,b)"));
    let inner = text.trim().strip_prefix('[').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let (left, right) = inner.split_once(',').ok_or_else(bad)?;
    let parse = |s: &str| s.trim().parse::<FieldElement>().map_err(|e| Failure::Config(e.to_string()));
    Ok((parse(left)?, parse(right)?))
}

fn run(command: Command) -> Result<Rendered, Failure> {
    match command {
        Command::Apr { slope: SlopeArg { slope }, intercept } => {
            slope.check_intercept(&intercept)?;
            let result = apr_set(&slope, &intercept)?;
            let cardinality = apr_cardinality(&slope, &intercept)?;
            Ok(output::apr(&slope, &intercept, result, cardinality))
        }
        Command::Itineraries { slope: SlopeArg { slope }, interval, beta_at_delta, cap } => {
            let (left, right) = match (interval, beta_at_delta) {
                (Some(text), _) => parse_interval(&text)?,
                (None, Some(n)) => {
                    let delta = delta_table(&slope, n + 1).pop().expect("n + 1 > 0 rows");
                    (FieldElement::from_i64(0), delta.value)
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let t = IntervalExchange::two_interval(slope.value().clone())?;
            let result = induce_capped(&t, left, right, cap)?;
            Ok(output::itineraries(&slope, &result))
        }
        Command::DeltaTable { slope: SlopeArg { slope }, count } => {
            if count == 0 {
                return Err(Failure::Config("--count must be positive".into()));
            }
            let rows = delta_table(&slope, count);
            if rows.windows(2).any(|w| w[0].value <= w[1].value) {
                return Err(Failure::Math(Error::Invariant("delta values are not strictly decreasing".into())));
            }
            Ok(output::delta_table(&slope, &rows))
        }
        Command::Verify { seed, suites, max_prefix, word_len, inject_lex_bug } => {
            if max_prefix < 2 || word_len <= max_prefix {
                return Err(Failure::Config("need 2 <= --max-prefix < --word-len".into()));
            }
            let config = VerifyConfig {
                seed,
                oracle: OracleConfig { max_prefix, word_len, ..OracleConfig::default() },
                options: AlgorithmOptions { flip_lex: inject_lex_bug },
                ..VerifyConfig::default()
            };
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let reports: Vec<_> = suites
                .into_iter()
                .map(|suite| {
                    let report = run_suite(suite, &config);
                    eprintln!("{suite}: {:.2} s", report.elapsed_ms as f64 / 1000.0);
                    report
                })
                .collect();
            let passed = reports.iter().all(|r| r.passed());
            let rendered = output::verify(seed, &reports);
            if passed { Ok(rendered) } else { Err(Failure::Verification(rendered)) }
        }
    }
}

fn emit(rendered: &Rendered, format: Format, out: Option<&PathBuf>) -> Result<(), String> {
    let text = match format {
        Format::Table => rendered.table.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rendered, code) = match run(cli.command) {
        Ok(rendered) => (rendered, 0),
        Err(Failure::Verification(rendered)) => (rendered, 3),
        Err(Failure::Config(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(message) = emit(&rendered, cli.format, cli.out.as_ref()) {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    if code == 3 {
        eprintln!("verification failed");
    }
    ExitCode::from(code)
}
