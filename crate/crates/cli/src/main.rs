//! `lahkit`: tables, matrices, polynomials, identity checks, brute-force
//! counts and poset dumps for restricted Lah-type numbers.
//!
//! Exit status: 0 success, 1 a verification failed, 2 invalid input.

mod output;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use lahkit::numbers::parse_rational;
use lahkit::oracle::{
    count_list_sequences, count_ordered_set_partitions, list_partition_counts, set_partition_counts, Guardrail,
};
use lahkit::poset::build_poset;
use lahkit::riordan::{lah_inverse_matrix, lah_matrix, lah_polynomial};
use lahkit::sequences::{
    doubly_ordered_values, fubini_values, l_totals, lah_triangle, stirling_triangle,
};
use lahkit::sizeset::{dsl_family, parse_sizeset, SizeSet};

use output::{comma_line, csv_text, json_int, json_row, json_text, Format};
use suites::{Params, Suite};

#[derive(Parser)]
#[command(name = "lahkit", version, about = "Restricted Lah, Stirling, Fubini and doubly ordered partition numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqKind {
    Lah,
    Stirling,
    Fubini,
    Doubly,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Lists,
    Sets,
    Ordered,
    Doubly,
}

#[derive(Subcommand)]
enum Command {
    /// Triangle (lah, stirling) or sequence (fubini, doubly, total) up to n
    Seq {
        kind: SeqKind,
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long = "n", alias = "N", alias = "n-max", default_value_t = 10)]
        n: usize,
        #[arg(long = "k", alias = "k-max")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// The (S,r)-Lah matrix, rows 0..=N
    Matrix {
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long = "N", alias = "n", alias = "n-max", default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// The inverse (S,r)-Lah matrix, rows 0..=N (requires 1 in S)
    Inverse {
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long = "N", alias = "n", alias = "n-max", default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Coefficients c_0..c_n of the (S,r)-Lah polynomial (requires 1 in S)
    Poly {
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run an identity suite; omitted --set and --r iterate the default family
    Verify {
        suite: Suite,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "n", alias = "N", alias = "n-max")]
        n: Option<usize>,
        #[arg(long = "k", alias = "k-max")]
        k: Option<usize>,
        /// Removed list size for the size-removal suite (default: 1 and 2)
        #[arg(long)]
        u: Option<usize>,
        /// Largest exponent for the potential-polynomial suite
        #[arg(long, default_value_t = 6)]
        t_max: usize,
        #[arg(long, default_value = "1e-9", allow_hyphen_values = true)]
        tolerance: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Brute-force count next to the formula value
    Oracle {
        kind: OracleKind,
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: usize,
        /// Number of non-special lists or blocks (default: every k)
        #[arg(long = "k")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Elements, cover relation and Möbius values of the asterisk-pair poset
    Poset {
        #[arg(long, default_value = "odd")]
        set: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long = "n", alias = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// Process outcome other than success.
enum Failure {
    Usage(String),
    Verification(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn size_set(text: &str) -> Result<SizeSet, Failure> {
    parse_sizeset(text).map_err(usage)
}

fn header(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn cmd_seq(kind: SeqKind, set: &str, r: usize, n: usize, k: Option<usize>, format: Format) -> Outcome {
    let set = size_set(set)?;
    let kind_name = format!("{kind:?}").to_lowercase();
    let meta = header(&[("kind", json!(kind_name)), ("set", json!(set.to_string())), ("r", json!(r))]);
    let rows = match kind {
        SeqKind::Lah => lah_triangle(&set, r, n).map_err(usage)?,
        SeqKind::Stirling => stirling_triangle(&set, r, n).map_err(usage)?,
        SeqKind::Fubini | SeqKind::Doubly | SeqKind::Total => {
            let values = match kind {
                SeqKind::Fubini => fubini_values(&set, r, n),
                SeqKind::Doubly => doubly_ordered_values(&set, r, n),
                _ => l_totals(&set, r, n),
            }
            .map_err(usage)?;
            return Ok(output::sequence(meta, "n", &values, format));
        }
    };
    let k_max = k.unwrap_or(n);
    let rows: Vec<Vec<BigInt>> = rows.rows().iter().map(|row| row.iter().take(k_max + 1).cloned().collect()).collect();
    Ok(output::triangle(meta, &rows, format))
}

fn cmd_matrix(set: &str, r: usize, n: usize, inverse: bool, format: Format) -> Outcome {
    let set = size_set(set)?;
    let matrix = if inverse { lah_inverse_matrix(&set, r, n) } else { lah_matrix(&set, r, n) }.map_err(usage)?;
    let name = if inverse { "inverse Lah matrix" } else { "Lah matrix" };
    let meta = header(&[("matrix", json!(name)), ("set", json!(set.to_string())), ("r", json!(r))]);
    Ok(output::triangle(meta, matrix.rows(), format))
}

fn cmd_poly(set: &str, r: usize, n: usize, format: Format) -> Outcome {
    let set = size_set(set)?;
    if !set.contains(1) {
        return Err(usage("Riordan condition f'(0) != 0 fails: f'(0) = 0 (1 is not in the set)"));
    }
    let polynomial = lah_polynomial(n, &set, r).map_err(usage)?;
    Ok(match format {
        Format::Plain => comma_line(&polynomial.coeffs) + "\n",
        Format::Csv => csv_text(
            &["k", "coefficient"],
            polynomial.coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]),
        ),
        Format::Json => json_text(header(&[
            ("set", json!(set.to_string())),
            ("r", json!(r)),
            ("n", json!(n)),
            ("coefficients", json_row(&polynomial.coeffs)),
            ("polynomial", json!(polynomial.to_string())),
        ])),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Suite,
    set: Option<String>,
    r: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    u: Option<usize>,
    t_max: usize,
    tolerance: &str,
    format: Format,
) -> Outcome {
    let tolerance = parse_rational(tolerance)
        .filter(|t| t > &num_rational::BigRational::from_integer(0.into()))
        .ok_or_else(|| usage(format!("tolerance must be a positive decimal or fraction, found {tolerance:?}")))?;
    let sets = match &set {
        Some(text) => vec![size_set(text)?],
        None => dsl_family(),
    };
    let params = Params {
        sets,
        explicit_set: set.is_some(),
        rs: r.map_or(vec![0, 1, 2], |r| vec![r]),
        n,
        k,
        u,
        t_max,
        tolerance,
    };
    let outcome = suites::run(suite, &params).map_err(|e| Failure::Usage(e.0))?;
    let failed = outcome.checks.iter().filter(|c| !c.pass).count();
    let text = match format {
        Format::Plain => {
            let mut text = String::new();
            for check in &outcome.checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                text += &format!("{verdict} {} [{}]: {} points\n", check.name, check.range, check.points);
                for failure in &check.failures {
                    text += &format!("    {failure}\n");
                }
            }
            for note in &outcome.notes {
                text += &format!("note: {note}\n");
            }
            text += &match failed {
                0 => format!("all {} checks passed\n", outcome.checks.len()),
                _ => format!("{failed} of {} checks failed\n", outcome.checks.len()),
            };
            text
        }
        Format::Csv => csv_text(
            &["check", "range", "points", "pass", "failures"],
            outcome.checks.iter().map(|c| {
                vec![c.name.clone(), c.range.clone(), c.points.to_string(), c.pass.to_string(), c.failures.join("; ")]
            }),
        ),
        Format::Json => json_text(header(&[
            ("suite", json!(format!("{suite:?}").to_lowercase())),
            ("pass", json!(outcome.pass())),
            (
                "checks",
                Value::Array(
                    outcome
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "range": c.range,
                                "points": c.points,
                                "pass": c.pass,
                                "failures": c.failures,
                            })
                        })
                        .collect(),
                ),
            ),
            ("notes", json!(outcome.notes)),
        ])),
    };
    if outcome.pass() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn cmd_oracle(kind: OracleKind, set: &str, r: usize, n: usize, k: Option<usize>, format: Format) -> Outcome {
    let set = size_set(set)?;
    let guard = Guardrail::from_env();
    // (k, brute-force count, formula value); k is None for whole sequences
    let rows: Vec<(Option<usize>, BigInt, BigInt)> = match kind {
        OracleKind::Lists | OracleKind::Sets => {
            let (counts, formula) = if kind == OracleKind::Lists {
                (list_partition_counts(n, &set, r, &guard), lah_triangle(&set, r, n))
            } else {
                (set_partition_counts(n, &set, r, &guard), stirling_triangle(&set, r, n))
            };
            let counts = counts.map_err(usage)?;
            let formula = formula.map_err(usage)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=n).collect(),
            };
            ks.into_iter()
                .map(|k| (Some(k), counts.get(k).cloned().unwrap_or_default(), formula.get(n, k)))
                .collect()
        }
        OracleKind::Ordered => {
            let count = count_ordered_set_partitions(n, &set, r, &guard).map_err(usage)?;
            let formula = fubini_values(&set, r, n).map_err(usage)?.pop().expect("n + 1 values");
            vec![(None, count, formula)]
        }
        OracleKind::Doubly => {
            let count = count_list_sequences(n, &set, r, &guard).map_err(usage)?;
            let formula = doubly_ordered_values(&set, r, n).map_err(usage)?.pop().expect("n + 1 values");
            vec![(None, count, formula)]
        }
    };
    let agrees = rows.iter().all(|(_, count, formula)| count == formula);
    let verdict = |ok: bool| if ok { "agrees" } else { "disagrees" };
    let text = match format {
        Format::Plain => rows
            .iter()
            .map(|(k, count, formula)| {
                let prefix = k.map(|k| format!("k={k}: ")).unwrap_or_default();
                format!("{prefix}{count}, formula {formula}, {}\n", verdict(count == formula))
            })
            .collect(),
        Format::Csv => csv_text(
            &["k", "count", "formula", "agrees"],
            rows.iter().map(|(k, count, formula)| {
                let k = k.map(|k| k.to_string()).unwrap_or_default();
                vec![k, count.to_string(), formula.to_string(), (count == formula).to_string()]
            }),
        ),
        Format::Json => json_text(header(&[
            ("kind", json!(format!("{kind:?}").to_lowercase())),
            ("set", json!(set.to_string())),
            ("r", json!(r)),
            ("n", json!(n)),
            ("agrees", json!(agrees)),
            (
                "counts",
                Value::Array(
                    rows.iter()
                        .map(|(k, count, formula)| {
                            json!({ "k": k, "count": json_int(count), "formula": json_int(formula), "agrees": count == formula })
                        })
                        .collect(),
                ),
            ),
        ])),
    };
    if agrees {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn cmd_poset(set: &str, r: usize, n: usize, format: Format) -> Outcome {
    let set = size_set(set)?;
    let poset = build_poset(n, &set, r).map_err(usage)?;
    let covers = poset.cover_edges();
    let cardinals: Vec<BigInt> = (0..=n).map(|k| poset.mobius_cardinal(k)).collect();
    Ok(match format {
        Format::Plain => {
            let mut text = String::new();
            for (i, element) in poset.elements().iter().enumerate() {
                text += &format!("{i}: {element}  mu={}\n", poset.mobius(i));
            }
            text += &format!("covers: {}\n", covers.iter().map(|(a, b)| format!("{a}<{b}")).collect::<Vec<_>>().join(" "));
            text += &format!("Möbius cardinals: {}\n", comma_line(&cardinals));
            text
        }
        Format::Csv => csv_text(
            &["index", "element", "lists", "mobius"],
            poset.elements().iter().enumerate().map(|(i, e)| {
                vec![i.to_string(), e.to_string(), e.list_count().to_string(), poset.mobius(i).to_string()]
            }),
        ),
        Format::Json => json_text(header(&[
            ("set", json!(set.to_string())),
            ("r", json!(r)),
            ("n", json!(n)),
            (
                "elements",
                Value::Array(
                    poset
                        .elements()
                        .iter()
                        .enumerate()
                        .map(|(i, e)| {
                            json!({ "index": i, "element": e.to_string(), "lists": e.list_count(), "mobius": json_int(poset.mobius(i)) })
                        })
                        .collect(),
                ),
            ),
            ("covers", json!(covers)),
            ("mobius_cardinals", json_row(&cardinals)),
        ])),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Seq { kind, set, r, n, k, format } => cmd_seq(kind, &set, r, n, k, format),
        Command::Matrix { set, r, n, format } => cmd_matrix(&set, r, n, false, format),
        Command::Inverse { set, r, n, format } => cmd_matrix(&set, r, n, true, format),
        Command::Poly { set, r, n, format } => cmd_poly(&set, r, n, format),
        Command::Verify { suite, set, r, n, k, u, t_max, tolerance, format } => {
            cmd_verify(suite, set, r, n, k, u, t_max, &tolerance, format)
        }
        Command::Oracle { kind, set, r, n, k, format } => cmd_oracle(kind, &set, r, n, k, format),
        Command::Poset { set, r, n, format } => cmd_poset(&set, r, n, format),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
