//! Identity-verification suites behind `lahkit verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use lahkit::poset::{build_poset, monoid_bound, PosetError};
use lahkit::report::IdentityReport;
use lahkit::riordan::{
    verify_determinantal, verify_inverse_relation, verify_inverse_routes, verify_orthogonality, RiordanError,
};
use lahkit::sequences::{
    series_identity_doubly, series_identity_fubini, verify_colouring_identities, verify_doubly_recurrence,
    verify_fubini_recurrence, verify_insertion_recurrence, verify_last_list_recurrence, verify_parity_relation,
    verify_potential_polynomials, verify_rising_falling, verify_size_removal, verify_special_recurrence,
    verify_special_split, verify_stirling_product, SeriesIdentity, SequenceError,
};
use lahkit::sizeset::SizeSet;

/// Suite names on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Rec21,
    Rec22,
    Thm31,
    Rec32,
    Thm33,
    Thm34,
    Eq11,
    Eq12,
    Parity,
    Potential,
    FubiniRec,
    FubiniSeries,
    DoublyRec,
    DoublySeries,
    Riordan,
    Poset,
}

/// Execution order of `all`.
pub const ORDER: [Suite; 16] = [
    Suite::Rec21,
    Suite::Rec22,
    Suite::Thm31,
    Suite::Rec32,
    Suite::Thm33,
    Suite::Thm34,
    Suite::Eq11,
    Suite::Eq12,
    Suite::Parity,
    Suite::Potential,
    Suite::FubiniRec,
    Suite::FubiniSeries,
    Suite::DoublyRec,
    Suite::DoublySeries,
    Suite::Riordan,
    Suite::Poset,
];

/// One aggregated check as printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub range: String,
    pub points: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

impl From<IdentityReport> for Check {
    fn from(report: IdentityReport) -> Self {
        let failures = report.failures().map(|p| format!("{}: lhs {} != rhs {}", p.label, p.lhs, p.rhs)).collect();
        Check { name: report.name, range: report.range, points: report.points.len(), pass: report.pass, failures }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, report: IdentityReport) {
        self.checks.push(report.into());
    }
}

pub struct Params {
    pub sets: Vec<SizeSet>,
    pub explicit_set: bool,
    pub rs: Vec<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub u: Option<usize>,
    pub t_max: usize,
    pub tolerance: BigRational,
}

/// Default `n` bound for every suite but the poset one.
pub const DEFAULT_N: usize = 8;
/// Default `n` bound for the poset suite.
pub const DEFAULT_POSET_N: usize = 4;

#[derive(Debug)]
pub struct UsageError(pub String);

impl From<SequenceError> for UsageError {
    fn from(e: SequenceError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<RiordanError> for UsageError {
    fn from(e: RiordanError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<PosetError> for UsageError {
    fn from(e: PosetError) -> Self {
        UsageError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, UsageError>;

pub fn run(suite: Suite, params: &Params) -> Result<Outcome> {
    let mut outcome = Outcome::default();
    if suite == Suite::All {
        for s in ORDER {
            run_one(s, params, false, &mut outcome)?;
        }
    } else {
        run_one(suite, params, true, &mut outcome)?;
    }
    Ok(outcome)
}

/// `alone` is false under `all`; then inapplicable sets are skipped with a
/// note instead of failing, and the poset bound is capped.
fn run_one(suite: Suite, p: &Params, alone: bool, out: &mut Outcome) -> Result<()> {
    let strict = alone && p.explicit_set;
    let n = p.n.unwrap_or(DEFAULT_N);
    let k = p.k.unwrap_or(n);
    match suite {
        Suite::All => unreachable!("expanded by run"),
        Suite::Rec21 => {
            for set in &p.sets {
                out.push(verify_last_list_recurrence(set, n, k)?);
            }
        }
        Suite::Rec22 => {
            for set in &p.sets {
                out.push(verify_insertion_recurrence(set, n, k)?);
            }
        }
        Suite::Thm31 => for_sets_and_rs(p, out, |set, r| verify_special_split(set, r, n, k))?,
        Suite::Rec32 => for_sets_and_rs(p, out, |set, r| verify_special_recurrence(set, r, n, k))?,
        Suite::Thm33 => for_sets_and_rs(p, out, |set, r| verify_colouring_identities(set, r, n, k))?,
        Suite::Thm34 => {
            let sizes = p.u.map_or(vec![1, 2], |u| vec![u]);
            for set in &p.sets {
                for &u in &sizes {
                    if !set.contains(u) {
                        if strict && p.u.is_some() {
                            return Err(UsageError(format!("{u} is not a member of {set}")));
                        }
                        out.notes.push(format!("size-{u} removal skipped for {set}: {u} is not a member"));
                        continue;
                    }
                    for &r in &p.rs {
                        out.push(verify_size_removal(set, r, u, n, k)?);
                    }
                }
            }
        }
        Suite::Eq11 => out.push(verify_rising_falling(n)),
        Suite::Eq12 => out.push(verify_stirling_product(n)),
        Suite::Parity => out.push(verify_parity_relation(n)?),
        Suite::Potential => {
            for_sets_and_rs(p, out, |set, r| verify_potential_polynomials(set, r, n, p.t_max))?
        }
        Suite::FubiniRec => for_sets_and_rs(p, out, |set, r| verify_fubini_recurrence(set, r, n))?,
        Suite::DoublyRec => for_sets_and_rs(p, out, |set, r| verify_doubly_recurrence(set, r, n))?,
        Suite::FubiniSeries => series_suite(p, n, "Fubini series identity", series_identity_fubini, out),
        Suite::DoublySeries => series_suite(p, n, "doubly ordered series identity", series_identity_doubly, out),
        Suite::Riordan => riordan_suite(p, n, strict, out)?,
        Suite::Poset => {
            let n = if alone { p.n.unwrap_or(DEFAULT_POSET_N) } else { n.min(DEFAULT_POSET_N) };
            poset_suite(p, n, strict, out)?
        }
    }
    Ok(())
}

fn for_sets_and_rs(
    p: &Params,
    out: &mut Outcome,
    check: impl Fn(&SizeSet, usize) -> std::result::Result<IdentityReport, SequenceError>,
) -> Result<()> {
    for set in &p.sets {
        for &r in &p.rs {
            out.push(check(set, r)?);
        }
    }
    Ok(())
}

type SeriesFn = fn(usize, &SizeSet, usize, &BigRational) -> std::result::Result<SeriesIdentity, SequenceError>;

fn decimal(value: &BigRational) -> String {
    value.to_f64().map_or_else(|| value.to_string(), |v| format!("{v:.12e}"))
}

fn series_suite(p: &Params, n_max: usize, name: &str, series: SeriesFn, out: &mut Outcome) {
    for set in &p.sets {
        for &r in &p.rs {
            let mut failures = Vec::new();
            for n in 0..=n_max {
                match series(n, set, r, &p.tolerance) {
                    Ok(result) if result.pass => {}
                    Ok(result) => failures.push(format!(
                        "n={n}: partial sum {} vs exact {} after {} terms",
                        decimal(&result.approximation),
                        result.exact,
                        result.terms
                    )),
                    Err(e) => failures.push(format!("n={n}: {e}")),
                }
            }
            out.checks.push(Check {
                name: format!("{name} [{set}, r={r}]"),
                range: format!("n<={n_max}, tolerance {}", decimal(&p.tolerance)),
                points: n_max + 1,
                pass: failures.is_empty(),
                failures,
            });
        }
    }
}

fn riordan_suite(p: &Params, n: usize, strict: bool, out: &mut Outcome) -> Result<()> {
    for set in &p.sets {
        if !set.contains(1) {
            if strict {
                return Err(RiordanError::ZeroDerivativeF.into());
            }
            out.notes.push(format!("Riordan checks skipped for {set}: 1 is not a member"));
            continue;
        }
        for &r in &p.rs {
            out.push(verify_orthogonality(set, r, n)?);
            out.push(verify_inverse_routes(set, r, n)?);
            let mut relation = verify_inverse_relation(set, r, n, &vec![BigInt::from(1); n + 1])?;
            for i in 0..=n {
                let basis: Vec<BigInt> =
                    (0..=n).map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() }).collect();
                relation.absorb(verify_inverse_relation(set, r, n, &basis)?);
            }
            out.push(relation);
            let mut determinantal = verify_determinantal(0, set, r)?;
            determinantal.range = format!("n<={n}");
            for m in 1..=n {
                determinantal.absorb(verify_determinantal(m, set, r)?);
            }
            out.push(determinantal);
        }
    }
    Ok(())
}

fn poset_suite(p: &Params, n_max: usize, strict: bool, out: &mut Outcome) -> Result<()> {
    for set in &p.sets {
        if !set.is_plus_one_monoid(monoid_bound(n_max)) {
            if strict {
                return Err(PosetError::NotMonoid(set.to_string()).into());
            }
            out.notes.push(format!("poset checks skipped for {set}: not a +1 monoid"));
            continue;
        }
        for &r in &p.rs {
            for n in 1..=n_max {
                let poset = build_poset(n, set, r)?;
                let axioms = poset.order_axioms();
                let mut failures = Vec::new();
                for (holds, name) in [
                    (axioms.reflexive, "reflexivity"),
                    (axioms.antisymmetric, "antisymmetry"),
                    (axioms.transitive, "transitivity"),
                    (axioms.zero_is_minimum, "zero below every element"),
                ] {
                    if !holds {
                        failures.push(format!("{name} fails"));
                    }
                }
                out.checks.push(Check {
                    name: format!("order axioms [{set}, r={r}]"),
                    range: format!("n={n}, {} elements", poset.len()),
                    points: 4,
                    pass: failures.is_empty(),
                    failures,
                });
                out.push(poset.verify_level_counts()?);
                out.push(poset.verify_mobius_cardinals()?);
                let cardinals: Vec<String> = (0..=n).map(|k| poset.mobius_cardinal(k).to_string()).collect();
                out.notes.push(format!("Möbius cardinals [{set}, r={r}] n={n}: {}", cardinals.join(", ")));
            }
        }
    }
    Ok(())
}
