//! Command-line surface: decide / count / rho / verify / table.
//!
//! Every command emits one structured JSON document on standard output with
//! the fields command, inputs, results, status and elapsed_ms; exact
//! rationals appear as "p/q" strings and exact naturals as decimal strings,
//! never truncated. `table --format csv` emits CSV rows instead.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage or parse error, 3 enumeration budget exceeded, 4 no closed-form
//! formula covers the requested family.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use udcodes::analysis::{
    convergence_table, decimal_string, ratio_string, rho, run_claim, Claim, ConvergenceFamily,
    ConvergenceTable, VerifyOptions, DEFAULT_DECIMAL_DIGITS,
};
use udcodes::census::census;
use udcodes::closed_forms::{pr_count_triple, ud_count_11c, ud_count_12c_binary, ud_count_pair};
use udcodes::decide::{default_search_bound, naive_double_factorization, sardinas_patterson};
use udcodes::{AlphabetSize, CodeSequence, Error, LengthDistribution, DEFAULT_TUPLE_BUDGET};

#[derive(Parser)]
#[command(
    name = "udcodes",
    version,
    about = "Exact decision and counting tools for uniquely decodable codes"
)]
struct Cli {
    /// Worker threads for enumeration sweeps (default: all available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sequence of codewords is uniquely decodable.
    Decide {
        /// Alphabet size n; word digits run 0..n-1.
        #[arg(short = 'n', long = "alphabet")]
        alphabet: u32,
        /// Comma-separated codewords, e.g. 1,00,1000.
        #[arg(short = 'w', long = "words", value_delimiter = ',', required = true)]
        words: Vec<String>,
        /// Include the full dangling-set trace.
        #[arg(long)]
        trace: bool,
        /// For non-codes, also search for a doubly factorizable word.
        #[arg(long)]
        witness: bool,
        /// Length bound for the witness search (default derived from the input).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Count codes (ud) or prefix codes (pr) with a given length distribution.
    Count {
        /// What to count.
        #[arg(value_enum)]
        kind: CountKind,
        /// Alphabet size n.
        #[arg(short = 'n', long = "alphabet")]
        alphabet: u32,
        /// Comma-separated codeword lengths, e.g. 1,2,6.
        #[arg(short = 'L', long = "lengths", value_delimiter = ',', required = true)]
        lengths: Vec<u32>,
        /// Closed-form formula, exhaustive enumeration, or both with an
        /// agreement check.
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
        /// Enumeration budget in tuples.
        #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
        budget: u64,
    },
    /// The exact proportion of prefix codes among codes.
    Rho {
        /// Alphabet size n.
        #[arg(short = 'n', long = "alphabet")]
        alphabet: u32,
        /// Comma-separated codeword lengths.
        #[arg(short = 'L', long = "lengths", value_delimiter = ',', required = true)]
        lengths: Vec<u32>,
        /// Enumeration budget in tuples.
        #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
        budget: u64,
    },
    /// Run a named verification claim over a grid; exits 1 on any failing point.
    Verify {
        /// One of: theorem1 theorem2 theorem4 prop1 prop2 prop3 prop4 nud
        /// lemma1 reversal.
        claim: String,
        /// Smallest alphabet size on grids.
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        /// Largest alphabet size on grids.
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        /// Largest entry of three-element length distributions.
        #[arg(long, default_value_t = 4)]
        len_max: u32,
        /// Largest c for the (1,1,c)/(1,2,c) slice claims.
        #[arg(long, default_value_t = 10)]
        c_max: u32,
        /// Largest total codeword length for the exhaustive binary families.
        #[arg(long, default_value_t = 8)]
        total_len_max: u32,
        /// Enumeration budget in tuples.
        #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
        budget: u64,
    },
    /// Convergence table for a family approaching its limiting proportion.
    Table {
        /// Family: 11c (needs -n > 2) or 12c (needs -n 2).
        #[arg(long)]
        family: String,
        /// Alphabet size n.
        #[arg(short = 'n', long = "alphabet")]
        alphabet: u32,
        /// Largest c to tabulate.
        #[arg(long, default_value_t = 30)]
        c_max: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Fractional digits in decimal columns.
        #[arg(long, default_value_t = DEFAULT_DECIMAL_DIGITS)]
        digits: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    Ud,
    Pr,
}

impl CountKind {
    fn as_str(self) -> &'static str {
        match self {
            CountKind::Ud => "ud",
            CountKind::Pr => "pr",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Formula,
    Enumerate,
    Both,
}

impl CountMethod {
    fn as_str(self) -> &'static str {
        match self {
            CountMethod::Formula => "formula",
            CountMethod::Enumerate => "enumerate",
            CountMethod::Both => "both",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::SizeLimit { .. } | Error::SearchBudgetExceeded { .. } => 3,
            Error::UncoveredFamily => 4,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

enum Output {
    /// command name, inputs echo, results, all-checks-passed flag.
    Document {
        command: &'static str,
        inputs: Value,
        results: Value,
        pass: bool,
    },
    Csv(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore the error if a pool already exists; only the first call counts.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let started = Instant::now();
    match run(&cli.command) {
        Ok(Output::Document {
            command,
            inputs,
            results,
            pass,
        }) => {
            let document = json!({
                "command": command,
                "inputs": inputs,
                "results": results,
                "status": if pass { "ok" } else { "fail" },
                "elapsed_ms": started.elapsed().as_millis() as u64,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&document).expect("serializable document")
            );
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Csv(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Decide {
            alphabet,
            words,
            trace,
            witness,
            max_len,
        } => cmd_decide(*alphabet, words, *trace, *witness, *max_len),
        Command::Count {
            kind,
            alphabet,
            lengths,
            method,
            budget,
        } => cmd_count(*kind, *alphabet, lengths, *method, *budget),
        Command::Rho {
            alphabet,
            lengths,
            budget,
        } => cmd_rho(*alphabet, lengths, *budget),
        Command::Verify {
            claim,
            n_min,
            n_max,
            len_max,
            c_max,
            total_len_max,
            budget,
        } => {
            let options = VerifyOptions {
                n_min: *n_min,
                n_max: *n_max,
                len_max: *len_max,
                c_max: *c_max,
                total_len_max: *total_len_max,
                budget: *budget,
            };
            cmd_verify(claim, &options)
        }
        Command::Table {
            family,
            alphabet,
            c_max,
            format,
            digits,
        } => cmd_table(family, *alphabet, *c_max, *format, *digits),
    }
}

fn parse_alphabet(n: u32) -> Result<AlphabetSize, Failure> {
    Ok(AlphabetSize::new(n)?)
}

fn parse_lengths(lengths: &[u32]) -> Result<LengthDistribution, Failure> {
    Ok(LengthDistribution::new(lengths.to_vec())?)
}

fn nat_string(value: &BigUint) -> Value {
    Value::String(value.to_string())
}

fn cmd_decide(
    alphabet: u32,
    words: &[String],
    trace: bool,
    witness: bool,
    max_len: Option<usize>,
) -> Result<Output, Failure> {
    let n = parse_alphabet(alphabet)?;
    let sequence = CodeSequence::from_strs(n, words)?;
    let verdict = sardinas_patterson(&sequence);

    let mut results = serde_json::Map::new();
    results.insert("is_code".into(), Value::Bool(verdict.is_code));
    results.insert(
        "termination".into(),
        Value::String(verdict.termination.to_string()),
    );
    if trace {
        let rendered: Vec<Value> = verdict
            .trace
            .iter()
            .map(|set| {
                Value::Array(set.iter().map(|w| Value::String(w.to_string())).collect())
            })
            .collect();
        results.insert("trace".into(), Value::Array(rendered));
    }
    if witness && !verdict.is_code {
        let bound = max_len.unwrap_or_else(|| default_search_bound(&sequence).max(1));
        let found = naive_double_factorization(&sequence, bound)?;
        let rendered = match found {
            Some(w) => json!({
                "word": w.word.to_string(),
                "factorization_a": w.factorization_a,
                "factorization_b": w.factorization_b,
            }),
            None => Value::Null,
        };
        results.insert("witness".into(), rendered);
    }

    Ok(Output::Document {
        command: "decide",
        inputs: json!({
            "alphabet": alphabet,
            "words": words,
            "trace": trace,
            "witness": witness,
        }),
        results: Value::Object(results),
        pass: true,
    })
}

/// The closed-form count for a covered (kind, alphabet, lengths) family.
fn formula_count(
    kind: CountKind,
    n: AlphabetSize,
    l: &LengthDistribution,
) -> Result<BigUint, Error> {
    let sorted = l.sorted();
    match kind {
        CountKind::Ud => {
            if l.m() == 2 {
                return Ok(ud_count_pair(n, sorted.lengths()[0], sorted.lengths()[1]));
            }
            if l.m() == 3 {
                let (a, b, c) = (sorted.lengths()[0], sorted.lengths()[1], sorted.lengths()[2]);
                if a == 1 && b == 1 {
                    return Ok(ud_count_11c(n, c));
                }
                if n.get() == 2 && a == 1 && b == 2 {
                    return Ok(ud_count_12c_binary(c));
                }
            }
            Err(Error::UncoveredFamily)
        }
        CountKind::Pr => {
            if l.m() == 3 {
                return pr_count_triple(n, l);
            }
            Err(Error::UncoveredFamily)
        }
    }
}

fn cmd_count(
    kind: CountKind,
    alphabet: u32,
    lengths: &[u32],
    method: CountMethod,
    budget: u64,
) -> Result<Output, Failure> {
    let n = parse_alphabet(alphabet)?;
    let l = parse_lengths(lengths)?;

    let enumerated = |budget| -> Result<BigUint, Error> {
        let sweep = census(n, &l, budget)?;
        Ok(match kind {
            CountKind::Ud => sweep.ud_count,
            CountKind::Pr => sweep.pr_count,
        })
    };

    let (results, pass) = match method {
        CountMethod::Formula => {
            let count = formula_count(kind, n, &l)?;
            (json!({ "count": nat_string(&count), "method": "formula" }), true)
        }
        CountMethod::Enumerate => {
            let count = enumerated(budget)?;
            (json!({ "count": nat_string(&count), "method": "enumeration" }), true)
        }
        CountMethod::Both => {
            let formula = formula_count(kind, n, &l)?;
            let sweep = enumerated(budget)?;
            let agreement = formula == sweep;
            (
                json!({
                    "formula": nat_string(&formula),
                    "enumeration": nat_string(&sweep),
                    "agreement": agreement,
                }),
                agreement,
            )
        }
    };

    Ok(Output::Document {
        command: "count",
        inputs: json!({
            "kind": kind.as_str(),
            "alphabet": alphabet,
            "lengths": lengths,
            "method": method.as_str(),
            "budget": budget,
        }),
        results,
        pass,
    })
}

fn cmd_rho(alphabet: u32, lengths: &[u32], budget: u64) -> Result<Output, Failure> {
    let n = parse_alphabet(alphabet)?;
    let l = parse_lengths(lengths)?;
    let result = rho(n, &l, budget)?;
    Ok(Output::Document {
        command: "rho",
        inputs: json!({
            "alphabet": alphabet,
            "lengths": lengths,
            "budget": budget,
        }),
        results: json!({
            "rho": ratio_string(&result.rho),
            "rho_decimal": decimal_string(&result.rho, DEFAULT_DECIMAL_DIGITS),
            "method": result.method.as_str(),
            "pr_count": nat_string(&result.pr_count),
            "ud_count": nat_string(&result.ud_count),
        }),
        pass: true,
    })
}

fn cmd_verify(claim_name: &str, options: &VerifyOptions) -> Result<Output, Failure> {
    let claim = Claim::from_name(claim_name).ok_or_else(|| Failure {
        code: 2,
        message: format!(
            "unknown claim {claim_name:?}; expected one of {}",
            Claim::ALL
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    })?;
    let report = run_claim(claim, options)?;
    let points: Vec<Value> = report
        .points
        .iter()
        .map(|p| {
            json!({
                "point": p.point,
                "detail": p.detail,
                "pass": p.pass,
            })
        })
        .collect();
    let failing = report.points.iter().filter(|p| !p.pass).count();
    Ok(Output::Document {
        command: "verify",
        inputs: json!({
            "claim": claim.name(),
            "n_min": options.n_min,
            "n_max": options.n_max,
            "len_max": options.len_max,
            "c_max": options.c_max,
            "total_len_max": options.total_len_max,
            "budget": options.budget,
        }),
        results: json!({
            "claim": report.claim,
            "grid": report.grid,
            "points": points,
            "checked_points": report.points.len(),
            "failing_points": failing,
            "pass": report.pass,
        }),
        pass: report.pass,
    })
}

fn table_rows_json(table: &ConvergenceTable, digits: usize) -> Vec<Value> {
    table
        .rows
        .iter()
        .map(|row| {
            json!({
                "c": row.c,
                "rho": ratio_string(&row.rho),
                "rho_decimal": decimal_string(&row.rho, digits),
                "abs_error": ratio_string(&row.delta),
                "abs_error_decimal": decimal_string(&row.delta, digits),
            })
        })
        .collect()
}

fn table_csv(table: &ConvergenceTable, digits: usize) -> String {
    let mut out = String::from("c,rho,rho_decimal,abs_error_decimal\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.c,
            ratio_string(&row.rho),
            decimal_string(&row.rho, digits),
            decimal_string(&row.delta, digits)
        ));
    }
    out
}

fn cmd_table(
    family_name: &str,
    alphabet: u32,
    c_max: u32,
    format: TableFormat,
    digits: usize,
) -> Result<Output, Failure> {
    let family = ConvergenceFamily::from_name(family_name).ok_or_else(|| Failure {
        code: 2,
        message: format!("unknown family {family_name:?}; expected 11c or 12c"),
    })?;
    let n = parse_alphabet(alphabet)?;
    let table = convergence_table(family, n, c_max)?;
    match format {
        TableFormat::Csv => Ok(Output::Csv(table_csv(&table, digits))),
        TableFormat::Json => Ok(Output::Document {
            command: "table",
            inputs: json!({
                "family": family.name(),
                "alphabet": alphabet,
                "c_max": c_max,
                "format": "json",
                "digits": digits,
            }),
            results: json!({
                "family": family.name(),
                "n": alphabet,
                "limit": ratio_string(&table.limit),
                "limit_decimal": decimal_string(&table.limit, digits),
                "rows": table_rows_json(&table, digits),
            }),
            pass: true,
        }),
    }
}
