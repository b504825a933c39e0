//! Restricted Lah, Stirling, Fubini and doubly ordered numbers.
//!
//! Every triangle is computed canonically by coefficient extraction from its
//! exponential generating function; explicit formulas and recurrences are
//! used only as independent checks (the `verify_*` functions).
//!
//! Conventions: empty sums are 0, empty products are 1, and any entry with a
//! negative index or `k > n` is 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::TriangularMatrix;
use crate::numbers::{binomial, factorial, falling_factorial, falling_int, rising_factorial};
use crate::report::IdentityReport;
use crate::riordan::column_triangle;
use crate::series::{ExactSeries, SeriesError, Weight};
use crate::sizeset::SizeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("index out of range: n={n}, k={k}")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("{quantity} at n={n}: finite sum gives {sum}, generating function gives {egf}")]
    Disagreement { quantity: &'static str, n: usize, sum: BigInt, egf: BigInt },
    #[error("{u} is not a member of {set}")]
    NotAMember { u: usize, set: String },
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("tolerance must be positive")]
    InvalidTolerance,
}

type Result<T> = std::result::Result<T, SequenceError>;

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// Unsigned Stirling numbers of the first kind, rows `0..=n_max`.
pub fn stirling1_triangle(n_max: usize) -> TriangularMatrix {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let diag = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
                let side = prev.get(k).map(|v| v * (n - 1)).unwrap_or_default();
                diag + side
            })
            .collect();
        rows.push(row);
    }
    TriangularMatrix::from_rows(rows).expect("rows have increasing length")
}

/// Stirling numbers of the second kind, rows `0..=n_max`.
pub fn stirling2_triangle(n_max: usize) -> TriangularMatrix {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let diag = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
                let side = prev.get(k).map(|v| v * k).unwrap_or_default();
                diag + side
            })
            .collect();
        rows.push(row);
    }
    TriangularMatrix::from_rows(rows).expect("rows have increasing length")
}

pub fn stirling1(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(SequenceError::IndexOutOfRange { n, k });
    }
    Ok(stirling1_triangle(n).get(n, k))
}

pub fn stirling2(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(SequenceError::IndexOutOfRange { n, k });
    }
    Ok(stirling2_triangle(n).get(n, k))
}

/// Classical unsigned Lah number `n!/k! C(n-1, k-1)`.
pub fn lah_classic(n: usize, k: usize) -> BigInt {
    if n == 0 && k == 0 {
        return BigInt::one();
    }
    if k == 0 || k > n {
        return BigInt::zero();
    }
    factorial(n) / factorial(k) * binomial(n as i64 - 1, k as i64 - 1)
}

/// Number of compositions of `n` into exactly `k` parts, every part in `set`.
pub fn compositions_count(n: usize, k: usize, set: &SizeSet) -> BigInt {
    let parts = set.members_up_to(n);
    // ways[m] = compositions of m into the current number of parts
    let mut ways = vec![BigInt::zero(); n + 1];
    ways[0] = BigInt::one();
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); n + 1];
        for (m, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for &p in &parts {
                if m + p > n {
                    break;
                }
                next[m + p] += w;
            }
        }
        ways = next;
    }
    ways[n].clone()
}

/// `(S,r)`-Lah triangle, rows `0..=n_max`.
pub fn lah_triangle(set: &SizeSet, r: usize, n_max: usize) -> Result<TriangularMatrix> {
    let lists = ExactSeries::from_sizeset(set, Weight::Plain, n_max);
    let specials = ExactSeries::from_sizeset(set, Weight::DerivativePlain, n_max).pow_int(r as u32);
    Ok(column_triangle(&specials, &lists, n_max)?)
}

/// `(S,r)`-Stirling triangle (second kind), rows `0..=n_max`.
pub fn stirling_triangle(set: &SizeSet, r: usize, n_max: usize) -> Result<TriangularMatrix> {
    let blocks = ExactSeries::from_sizeset(set, Weight::Factorial, n_max);
    let specials =
        ExactSeries::from_sizeset(set, Weight::DerivativeFactorial, n_max).pow_int(r as u32);
    Ok(column_triangle(&specials, &blocks, n_max)?)
}

pub fn s_lah(n: usize, k: usize, set: &SizeSet) -> Result<BigInt> {
    sr_lah(n, k, set, 0)
}

pub fn sr_lah(n: usize, k: usize, set: &SizeSet, r: usize) -> Result<BigInt> {
    Ok(lah_triangle(set, r, n)?.get(n, k))
}

pub fn sr_stirling(n: usize, k: usize, set: &SizeSet, r: usize) -> Result<BigInt> {
    Ok(stirling_triangle(set, r, n)?.get(n, k))
}

/// Total number of `(S,r)` list partitions for `n = 0..=n_max`, extracted from
/// `exp(H_S) (H_S')^r`.
pub fn l_totals(set: &SizeSet, r: usize, n_max: usize) -> Result<Vec<BigInt>> {
    let lists = ExactSeries::from_sizeset(set, Weight::Plain, n_max);
    let specials = ExactSeries::from_sizeset(set, Weight::DerivativePlain, n_max).pow_int(r as u32);
    Ok(lists.exp()?.mul(&specials)?.egf_integers()?)
}

pub fn l_total(n: usize, set: &SizeSet, r: usize) -> Result<BigInt> {
    Ok(l_totals(set, r, n)?.pop().expect("n_max + 1 values"))
}

/// Classical totals `L(0..=n_max)` by `L(n+1) = (2n+1) L(n) - (n^2 - n) L(n-1)`.
pub fn l_classic_totals(n_max: usize) -> Vec<BigInt> {
    let mut values = vec![BigInt::one(), BigInt::one()];
    for n in 1..n_max {
        let next = (2 * n + 1) * &values[n] - (n * n - n) * &values[n - 1];
        values.push(next);
    }
    values.truncate(n_max + 1);
    values
}

pub fn l_classic_total(n: usize) -> BigInt {
    l_classic_totals(n).pop().expect("n + 1 values")
}

/// `r!/(1 - A)^(r+1) * B^r` extracted as integers, where `A` enumerates plain
/// blocks and `B` special blocks.
fn sequence_egf(plain: ExactSeries, special: ExactSeries, r: usize) -> Result<Vec<BigInt>> {
    let order = plain.order();
    let denominator = ExactSeries::one(order).sub(&plain)?.pow_int(r as u32 + 1);
    let egf = denominator
        .reciprocal()?
        .mul(&special.pow_int(r as u32))?
        .scale(&BigRational::from_integer(factorial(r)));
    Ok(egf.egf_integers()?)
}

/// `sum_k (k+r)! T[n][k]` for every row of `triangle`.
fn weighted_row_sums(triangle: &TriangularMatrix, r: usize) -> Vec<BigInt> {
    triangle
        .rows()
        .iter()
        .map(|row| row.iter().enumerate().map(|(k, v)| v * factorial(k + r)).sum())
        .collect()
}

fn agree(quantity: &'static str, sums: Vec<BigInt>, egfs: Vec<BigInt>) -> Result<Vec<BigInt>> {
    for (n, (sum, egf)) in sums.iter().zip(&egfs).enumerate() {
        if sum != egf {
            return Err(SequenceError::Disagreement {
                quantity,
                n,
                sum: sum.clone(),
                egf: egf.clone(),
            });
        }
    }
    Ok(sums)
}

/// `(S,r)`-Fubini numbers for `n = 0..=n_max`, computed both as
/// `sum_k (k+r)! {n k}_{S,r}` and from their generating function.
pub fn fubini_values(set: &SizeSet, r: usize, n_max: usize) -> Result<Vec<BigInt>> {
    let sums = weighted_row_sums(&stirling_triangle(set, r, n_max)?, r);
    let egfs = sequence_egf(
        ExactSeries::from_sizeset(set, Weight::Factorial, n_max),
        ExactSeries::from_sizeset(set, Weight::DerivativeFactorial, n_max),
        r,
    )?;
    agree("Fubini number", sums, egfs)
}

pub fn fubini(n: usize, set: &SizeSet, r: usize) -> Result<BigInt> {
    Ok(fubini_values(set, r, n)?.pop().expect("n + 1 values"))
}

/// Doubly ordered `(S,r)` partition counts for `n = 0..=n_max`, computed both
/// as `sum_k (k+r)! [n k]_{S,r}` and from their generating function.
pub fn doubly_ordered_values(set: &SizeSet, r: usize, n_max: usize) -> Result<Vec<BigInt>> {
    let sums = weighted_row_sums(&lah_triangle(set, r, n_max)?, r);
    let egfs = sequence_egf(
        ExactSeries::from_sizeset(set, Weight::Plain, n_max),
        ExactSeries::from_sizeset(set, Weight::DerivativePlain, n_max),
        r,
    )?;
    agree("doubly ordered count", sums, egfs)
}

pub fn doubly_ordered(n: usize, set: &SizeSet, r: usize) -> Result<BigInt> {
    Ok(doubly_ordered_values(set, r, n)?.pop().expect("n + 1 values"))
}

fn range(n_max: usize, k_max: usize) -> String {
    format!("n<={n_max}, k<={k_max}")
}

/// Recurrence on the size of the list holding the last element:
/// `[n k]_S = sum_{s in S} s (n-1)_{s-1} [n-s k-1]_S`.
pub fn verify_last_list_recurrence(set: &SizeSet, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    let lah = lah_triangle(set, 0, n_max)?;
    let mut report = IdentityReport::new(format!("last-list recurrence [{set}]"), range(n_max, k_max));
    for n in 1..=n_max {
        for k in 1..=n.min(k_max) {
            let rhs: BigInt = set
                .members_up_to(n)
                .into_iter()
                .map(|s| big(s) * falling_int(n as i64 - 1, s as i64 - 1) * lah.at((n - s) as i64, k as i64 - 1))
                .sum();
            report.check(format!("n={n},k={k}"), lah.get(n, k), rhs);
        }
    }
    Ok(report)
}

/// Insertion recurrence over run boundaries of `S`:
/// `[n k]_S = (n+k-1)[n-1 k]_S + sum_{s in S*} C(n-1,s-1) s! [n-s k-1]_S
///            - sum_{s in S-bar} C(n-1,s) (s+1)! [n-s-1 k-1]_S`.
///
/// The subtracted sum runs over every run maximum, including members that
/// are also run minima: inserting into a list whose size is isolated in `S`
/// leaves `S` just as surely as inserting into the top of a longer run.
pub fn verify_insertion_recurrence(set: &SizeSet, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    let lah = lah_triangle(set, 0, n_max)?;
    let runs = set.derived_sets(n_max.max(1));
    let mut report = IdentityReport::new(format!("insertion recurrence [{set}]"), range(n_max, k_max));
    for n in 1..=n_max {
        for k in 1..=n.min(k_max) {
            let (ni, ki) = (n as i64, k as i64);
            let mut rhs = big(n + k - 1) * lah.at(ni - 1, ki);
            for &s in &runs.least {
                let s = s as i64;
                rhs += binomial(ni - 1, s - 1) * factorial(s as usize) * lah.at(ni - s, ki - 1);
            }
            for &s in &runs.greatest {
                let s = s as i64;
                rhs -= binomial(ni - 1, s) * factorial(s as usize + 1) * lah.at(ni - s - 1, ki - 1);
            }
            report.check(format!("n={n},k={k}"), lah.get(n, k), rhs);
        }
    }
    Ok(report)
}

/// Weak compositions `(i_1, ..., i_parts)` of `total` with every `i_j + 1` in `set`.
pub fn special_compositions(total: usize, parts: usize, set: &SizeSet) -> Vec<Vec<usize>> {
    fn walk(rest: usize, parts: usize, set: &SizeSet, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for i in 0..=rest {
            if set.contains(i + 1) {
                prefix.push(i);
                walk(rest - i, parts - 1, set, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(total, parts, set, &mut Vec::new(), &mut out);
    out
}

/// Splits each `(S,r)` partition into its special lists and an `S`-Lah rest:
/// `[n k]_{S,r} = sum_m C(n,m) sum_{i_1+..+i_r=m, i_j+1 in S} m! prod(i_j+1) [n-m k]_S`.
pub fn verify_special_split(set: &SizeSet, r: usize, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    let base = lah_triangle(set, 0, n_max)?;
    let target = lah_triangle(set, r, n_max)?;
    let weights: Vec<BigInt> = (0..=n_max)
        .map(|m| {
            special_compositions(m, r, set)
                .iter()
                .map(|c| c.iter().map(|&i| big(i + 1)).product::<BigInt>())
                .sum()
        })
        .collect();
    let mut report =
        IdentityReport::new(format!("special-list split [{set}, r={r}]"), range(n_max, k_max));
    for n in 0..=n_max {
        for k in 0..=n.min(k_max) {
            let rhs: BigInt = (0..=n - k)
                .map(|m| binomial(n as i64, m as i64) * factorial(m) * &weights[m] * base.get(n - m, k))
                .sum();
            report.check(format!("n={n},k={k}"), target.get(n, k), rhs);
        }
    }
    Ok(report)
}

/// `[n+1 k]_{S,r} = [n k-1]_{S,r+1} + r sum_{s in S} s! C(n,s-2) [n-s+2 k]_{S,r-1}`, `r >= 1`.
pub fn verify_special_recurrence(set: &SizeSet, r: usize, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    let mut report =
        IdentityReport::new(format!("special-element recurrence [{set}, r={r}]"), range(n_max, k_max));
    if r == 0 || n_max == 0 {
        return Ok(report);
    }
    let below = lah_triangle(set, r - 1, n_max)?;
    let here = lah_triangle(set, r, n_max)?;
    let above = lah_triangle(set, r + 1, n_max)?;
    for n in 0..n_max {
        for k in 1..=(n + 1).min(k_max) {
            let ni = n as i64;
            let mut rhs = above.at(ni, k as i64 - 1);
            for s in set.members_up_to(n + 2) {
                let si = s as i64;
                rhs += big(r) * factorial(s) * binomial(ni, si - 2) * below.at(ni - si + 2, k as i64);
            }
            report.check(format!("n={},k={k}", n + 1), here.get(n + 1, k), rhs);
        }
    }
    Ok(report)
}

/// The three colouring identities (a non-special list, a special list, an
/// element), the last two only for `r >= 1`.
pub fn verify_colouring_identities(set: &SizeSet, r: usize, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    let here = lah_triangle(set, r, n_max)?;
    let below = if r >= 1 { Some(lah_triangle(set, r - 1, n_max)?) } else { None };
    let mut report =
        IdentityReport::new(format!("colouring identities [{set}, r={r}]"), range(n_max, k_max));
    for n in 1..=n_max {
        let ni = n as i64;
        let sizes = set.members_up_to(n + 1);
        for k in 1..=n.min(k_max) {
            let ki = k as i64;
            let value = here.get(n, k);
            let list_rhs: BigInt = sizes
                .iter()
                .map(|&s| factorial(s) * binomial(ni, s as i64) * here.at(ni - s as i64, ki - 1))
                .sum();
            report.check(format!("list n={n},k={k}"), big(k) * &value, list_rhs.clone());
            let Some(below) = &below else { continue };
            let special_rhs: BigInt = sizes
                .iter()
                .map(|&s| factorial(s) * binomial(ni, s as i64 - 1) * below.at(ni - s as i64 + 1, ki))
                .sum();
            report.check(format!("special n={n},k={k}"), big(r) * &value, big(r) * &special_rhs);
            let element_rhs: BigInt = sizes
                .iter()
                .map(|&s| {
                    factorial(s) * big(s) * binomial(ni, s as i64) * here.at(ni - s as i64, ki - 1)
                        + big(r) * factorial(s) * big(s) * binomial(ni, s as i64 - 1) * below.at(ni - s as i64 + 1, ki)
                })
                .sum();
            report.check(format!("element n={n},k={k}"), big(n + r) * &value, element_rhs);
        }
    }
    Ok(report)
}

/// Separates the lists of size `u`:
/// `[n k]_{S,r} = sum_i sum_j C(r,i) (n)_{n-j} u^i / (n-M)! [n-M k-j]_{S\{u},r-i}`
/// with `M = (u-1) i + u j`.
pub fn verify_size_removal(set: &SizeSet, r: usize, u: usize, n_max: usize, k_max: usize) -> Result<IdentityReport> {
    if !set.contains(u) {
        return Err(SequenceError::NotAMember { u, set: set.to_string() });
    }
    let reduced = set.without(u);
    let target = lah_triangle(set, r, n_max)?;
    let parts = (0..=r).map(|i| lah_triangle(&reduced, r - i, n_max)).collect::<Result<Vec<_>>>()?;
    let mut report =
        IdentityReport::new(format!("size-{u} removal [{set}, r={r}]"), range(n_max, k_max));
    for n in 0..=n_max {
        for k in 0..=n.min(k_max) {
            let mut rhs = BigInt::zero();
            for (i, part) in parts.iter().enumerate() {
                for j in 0..=k {
                    let used = (u - 1) * i + u * j;
                    if used > n {
                        continue;
                    }
                    // n! / (j! (n-M)!) is a multinomial coefficient
                    let ways = factorial(n) / (factorial(j) * factorial(n - used));
                    rhs += binomial(r as i64, i as i64) * ways * big(u).pow(i as u32) * part.get(n - used, k - j);
                }
            }
            report.check(format!("n={n},k={k}"), target.get(n, k), rhs);
        }
    }
    Ok(report)
}

/// Rising factorials in the falling-factorial basis, as polynomials in `x`,
/// checked at `x = 0..=n` for every `n <= n_max` (enough points for degree `n`).
pub fn verify_rising_falling(n_max: usize) -> IdentityReport {
    let mut report = IdentityReport::new("rising/falling connection", format!("n<={n_max}"));
    for n in 0..=n_max {
        for x in 0..=n {
            let x = big(x);
            let rhs: BigInt = (0..=n).map(|k| lah_classic(n, k) * falling_factorial(&x, k)).sum();
            report.check(format!("n={n},x={x}"), rising_factorial(&x, n), rhs);
        }
    }
    report
}

/// Lah numbers as the product of the Stirling triangles.
pub fn verify_stirling_product(n_max: usize) -> IdentityReport {
    let first = stirling1_triangle(n_max);
    let second = stirling2_triangle(n_max);
    let mut report = IdentityReport::new("Stirling product", format!("n<={n_max}"));
    for n in 0..=n_max {
        for k in 0..=n {
            let rhs: BigInt = (k..=n).map(|j| first.get(n, j) * second.get(j, k)).sum();
            report.check(format!("n={n},k={k}"), lah_classic(n, k), rhs);
        }
    }
    report
}

pub fn verify_connection(n_max: usize) -> IdentityReport {
    let mut report = verify_rising_falling(n_max);
    report.name = "rising/falling connection and Stirling product".into();
    report.absorb(verify_stirling_product(n_max));
    report
}

/// Potential polynomials: for `t = 0..=t_max`, `n! [x^n] (1+H)^t (H')^r`
/// equals `sum_k [n k]_{S,r} (t)_k`, and the same for the block analogue
/// `(1+E)^t (E')^r` against the Stirling triangle. Both sides are polynomials
/// of degree `<= n` in `t`, so `t_max >= n_max` proves the identity outright.
pub fn verify_potential_polynomials(set: &SizeSet, r: usize, n_max: usize, t_max: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(
        format!("potential polynomials [{set}, r={r}]"),
        format!("n<={n_max}, t<={t_max}"),
    );
    let families = [
        ("lists", Weight::Plain, Weight::DerivativePlain, lah_triangle(set, r, n_max)?),
        ("blocks", Weight::Factorial, Weight::DerivativeFactorial, stirling_triangle(set, r, n_max)?),
    ];
    for (label, plain, special, triangle) in families {
        let one_plus =
            ExactSeries::one(n_max).add(&ExactSeries::from_sizeset(set, plain, n_max))?;
        let specials = ExactSeries::from_sizeset(set, special, n_max).pow_int(r as u32);
        for t in 0..=t_max {
            let series = one_plus.pow_int(t as u32).mul(&specials)?;
            let tb = big(t);
            for n in 0..=n_max {
                let rhs: BigInt =
                    (0..=n).map(|k| triangle.get(n, k) * falling_factorial(&tb, k)).sum();
                report.check(format!("{label} t={t},n={n}"), series.egf_integer(n)?, rhs);
            }
        }
    }
    Ok(report)
}

/// `(2n)_k [2n-k k]_odd = [2n k]_even`.
pub fn verify_parity_relation(n_max: usize) -> Result<IdentityReport> {
    let odd = lah_triangle(&SizeSet::odd(), 0, 2 * n_max)?;
    let even = lah_triangle(&SizeSet::even(), 0, 2 * n_max)?;
    let mut report = IdentityReport::new("odd/even parity relation", format!("n<={n_max}"));
    for n in 1..=n_max {
        for k in 0..=n {
            let lhs = falling_int(2 * n as i64, k as i64) * odd.get(2 * n - k, k);
            report.check(format!("n={n},k={k}"), lhs, even.get(2 * n, k));
        }
    }
    Ok(report)
}

/// `F_n = sum_s C(n,s) F_{n-s} + r sum_s C(n,s-1) F^{(r-1)}_{n-s+1}` for `n >= 1`.
pub fn verify_fubini_recurrence(set: &SizeSet, r: usize, n_max: usize) -> Result<IdentityReport> {
    let here = fubini_values(set, r, n_max)?;
    let below = if r >= 1 { fubini_values(set, r - 1, n_max)? } else { Vec::new() };
    let mut report = IdentityReport::new(format!("Fubini recurrence [{set}, r={r}]"), format!("1<=n<={n_max}"));
    for n in 1..=n_max {
        let mut rhs = BigInt::zero();
        for s in set.members_up_to(n + 1) {
            if s <= n {
                rhs += binomial(n as i64, s as i64) * &here[n - s];
            }
            if r >= 1 {
                rhs += big(r) * binomial(n as i64, s as i64 - 1) * &below[n + 1 - s];
            }
        }
        report.check(format!("n={n}"), here[n].clone(), rhs);
    }
    Ok(report)
}

/// `D_n = sum_s (n)_s D_{n-s} + r sum_s s (n)_{s-1} D^{(r-1)}_{n-s+1}` for `n >= 1`.
pub fn verify_doubly_recurrence(set: &SizeSet, r: usize, n_max: usize) -> Result<IdentityReport> {
    let here = doubly_ordered_values(set, r, n_max)?;
    let below = if r >= 1 { doubly_ordered_values(set, r - 1, n_max)? } else { Vec::new() };
    let mut report =
        IdentityReport::new(format!("doubly ordered recurrence [{set}, r={r}]"), format!("1<=n<={n_max}"));
    for n in 1..=n_max {
        let mut rhs = BigInt::zero();
        for s in set.members_up_to(n + 1) {
            if s <= n {
                rhs += falling_int(n as i64, s as i64) * &here[n - s];
            }
            if r >= 1 {
                rhs += big(r) * big(s) * falling_int(n as i64, s as i64 - 1) * &below[n + 1 - s];
            }
        }
        report.check(format!("n={n}"), here[n].clone(), rhs);
    }
    Ok(report)
}

/// Result of summing a convergent series identity in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesIdentity {
    pub approximation: BigRational,
    pub exact: BigInt,
    pub terms: usize,
    pub pass: bool,
}

/// Hard cap on the number of summed terms.
pub const SERIES_TERM_LIMIT: usize = 400;

/// Sums `r!/2^(r+1) sum_l C(r+l,l)/2^l sum_k T[n][k] (l)_k` exactly.
///
/// Summation stops once the terms are decreasing, the last term is below
/// `tolerance` relative to the running sum, and the geometric tail estimate
/// `t q/(1-q)` (with `q` the ratio of the last two terms) is below half of
/// `tolerance` relative to the running sum.
fn series_identity(row: &[BigInt], r: usize, exact: BigInt, tolerance: &BigRational) -> Result<SeriesIdentity> {
    if !tolerance.is_positive() {
        return Err(SequenceError::InvalidTolerance);
    }
    let prefactor = BigRational::new(factorial(r), BigInt::from(2).pow(r as u32 + 1));
    let verdict = |approximation: &BigRational| {
        let error = (approximation - BigRational::from_integer(exact.clone())).abs();
        if exact.is_zero() {
            &error < tolerance
        } else {
            error / BigRational::from_integer(exact.abs()) < *tolerance
        }
    };
    if row.iter().all(Zero::is_zero) {
        let approximation = BigRational::zero();
        let pass = verdict(&approximation);
        return Ok(SeriesIdentity { approximation, exact, terms: 0, pass });
    }
    let half_tol = tolerance / BigRational::from_integer(2.into());
    let mut sum = BigRational::zero();
    let mut previous: Option<BigRational> = None;
    for ell in 0..SERIES_TERM_LIMIT {
        let el = big(ell);
        let inner: BigInt = row.iter().enumerate().map(|(k, v)| v * falling_factorial(&el, k)).sum();
        let term = BigRational::new(
            binomial((r + ell) as i64, ell as i64) * inner,
            BigInt::from(2).pow(ell as u32),
        );
        sum += &term;
        if let Some(prev) = previous.replace(term.clone()) {
            if term < prev && sum.is_positive() {
                let q = &term / &prev;
                let tail = &term * &q / (BigRational::one() - &q);
                if &term / &sum < *tolerance && tail / &sum < half_tol {
                    let approximation = &prefactor * &sum;
                    let pass = verdict(&approximation);
                    return Ok(SeriesIdentity { approximation, exact, terms: ell + 1, pass });
                }
            }
        }
    }
    Err(SequenceError::NonConvergence { terms: SERIES_TERM_LIMIT })
}

/// Halving-series representation of `F_{n,S,r}`.
pub fn series_identity_fubini(n: usize, set: &SizeSet, r: usize, tolerance: &BigRational) -> Result<SeriesIdentity> {
    let triangle = stirling_triangle(set, r, n)?;
    series_identity(triangle.row(n), r, fubini(n, set, r)?, tolerance)
}

/// Halving-series representation of the doubly ordered count.
pub fn series_identity_doubly(n: usize, set: &SizeSet, r: usize, tolerance: &BigRational) -> Result<SeriesIdentity> {
    let triangle = lah_triangle(set, r, n)?;
    series_identity(triangle.row(n), r, doubly_ordered(n, set, r)?, tolerance)
}

fn ln_big(value: &BigInt) -> f64 {
    let bits = value.bits();
    let shift = bits.saturating_sub(60);
    let top = (value >> shift).to_f64().expect("60-bit value fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Saddle-point estimate of `L(n)/n!` divided by the exact value.
pub fn saddle_point_ratio(n: usize) -> f64 {
    let nf = n as f64;
    let ln_approx = -0.5 + 2.0 * nf.sqrt() - (2.0 * std::f64::consts::PI.sqrt()).ln() - 0.75 * nf.ln();
    let ln_exact = ln_big(&l_classic_total(n)) - ln_big(&factorial(n));
    (ln_approx - ln_exact).exp()
}
