//! Brute-force enumeration of the counted objects.
//!
//! Set partitions of `[n+r]` are generated as restricted growth strings with
//! the special elements `1..=r` opening distinct blocks; list, ordered and
//! doubly ordered counts weight each set partition by the number of ways to
//! order its blocks and their contents.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numbers::factorial;
use crate::sizeset::SizeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration of {what} with n+r={size} exceeds the guardrail {limit}")]
    Guardrail { what: &'static str, size: usize, limit: usize },
}

type Result<T> = std::result::Result<T, OracleError>;

/// Largest `n + r` each enumeration accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guardrail {
    pub lists: usize,
    pub sets: usize,
    pub sequences: usize,
}

/// Environment variable that replaces every limit with one value.
pub const GUARDRAIL_ENV: &str = "LAHKIT_GUARDRAIL";

impl Default for Guardrail {
    fn default() -> Self {
        Guardrail { lists: 10, sets: 11, sequences: 8 }
    }
}

impl Guardrail {
    pub fn uniform(limit: usize) -> Self {
        Guardrail { lists: limit, sets: limit, sequences: limit }
    }

    /// Defaults, or a uniform limit from `LAHKIT_GUARDRAIL` when it parses.
    pub fn from_env() -> Self {
        std::env::var(GUARDRAIL_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self::uniform)
            .unwrap_or_default()
    }

    fn check(limit: usize, what: &'static str, size: usize) -> Result<()> {
        if size > limit {
            Err(OracleError::Guardrail { what, size, limit })
        } else {
            Ok(())
        }
    }
}

/// Calls `visit` with the block sizes of every set partition of `[n+r]`
/// whose first `r` elements lie in distinct blocks (blocks `0..r`).
fn for_each_partition(n: usize, r: usize, mut visit: impl FnMut(&[usize])) {
    fn grow(rest: usize, sizes: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if rest == 0 {
            visit(sizes);
            return;
        }
        for b in 0..sizes.len() {
            sizes[b] += 1;
            grow(rest - 1, sizes, visit);
            sizes[b] -= 1;
        }
        sizes.push(1);
        grow(rest - 1, sizes, visit);
        sizes.pop();
    }
    let mut sizes = vec![1; r];
    grow(n, &mut sizes, &mut visit);
}

/// Per-`k` totals for `k = 0..=n` of `weight(block sizes)` over admissible partitions.
fn tally(n: usize, r: usize, set: &SizeSet, weight: impl Fn(&[usize]) -> BigInt) -> Vec<BigInt> {
    let mut totals = vec![BigInt::zero(); n + 1];
    for_each_partition(n, r, |sizes| {
        if sizes.iter().all(|&s| set.contains(s)) {
            totals[sizes.len() - r] += weight(sizes);
        }
    });
    totals
}

fn list_weight(sizes: &[usize]) -> BigInt {
    sizes.iter().map(|&s| factorial(s)).product()
}

/// Counts of `(S,r)` list partitions of `[n+r]` for every `k = 0..=n`.
pub fn list_partition_counts(n: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<Vec<BigInt>> {
    Guardrail::check(guard.lists, "list partitions", n + r)?;
    Ok(tally(n, r, set, list_weight))
}

/// Counts of `(S,r)` set partitions of `[n+r]` for every `k = 0..=n`.
pub fn set_partition_counts(n: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<Vec<BigInt>> {
    Guardrail::check(guard.sets, "set partitions", n + r)?;
    Ok(tally(n, r, set, |_| BigInt::one()))
}

pub fn count_list_partitions(n: usize, k: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<BigInt> {
    Ok(list_partition_counts(n, set, r, guard)?.get(k).cloned().unwrap_or_default())
}

pub fn count_set_partitions(n: usize, k: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<BigInt> {
    Ok(set_partition_counts(n, set, r, guard)?.get(k).cloned().unwrap_or_default())
}

/// Sequences of blocks (sets) of `[n+r]`, special elements in distinct blocks.
pub fn count_ordered_set_partitions(n: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<BigInt> {
    Guardrail::check(guard.sequences, "ordered set partitions", n + r)?;
    Ok(tally(n, r, set, |sizes| factorial(sizes.len())).into_iter().sum())
}

/// Sequences of lists of `[n+r]`, special elements in distinct lists.
pub fn count_list_sequences(n: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<BigInt> {
    Guardrail::check(guard.sequences, "doubly ordered partitions", n + r)?;
    Ok(tally(n, r, set, |sizes| factorial(sizes.len()) * list_weight(sizes)).into_iter().sum())
}

/// A partition of `[n+r]` (labels from 1) into lists, blocks sorted by minimum label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ListPartition {
    pub lists: Vec<Vec<usize>>,
}

/// All orderings of `items`.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Every `(S,r)` list partition of `[n+r]` with exactly `k + r` lists.
pub fn enumerate_list_partitions(n: usize, k: usize, set: &SizeSet, r: usize, guard: &Guardrail) -> Result<Vec<ListPartition>> {
    Guardrail::check(guard.lists, "list partitions", n + r)?;
    fn grow(label: usize, last: usize, r: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if label > last {
            out.push(blocks.clone());
            return;
        }
        if label <= r {
            blocks.push(vec![label]);
            grow(label + 1, last, r, blocks, out);
            blocks.pop();
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(label);
            grow(label + 1, last, r, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![label]);
        grow(label + 1, last, r, blocks, out);
        blocks.pop();
    }
    let mut partitions = Vec::new();
    grow(1, n + r, r, &mut Vec::new(), &mut partitions);
    let mut out = Vec::new();
    for blocks in partitions {
        if blocks.len() != k + r || !blocks.iter().all(|b| set.contains(b.len())) {
            continue;
        }
        let mut lists: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for block in &blocks {
            let orders = permutations(block);
            lists = lists
                .into_iter()
                .flat_map(|prefix| {
                    orders.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect();
        }
        out.extend(lists.into_iter().map(|lists| ListPartition { lists }));
    }
    Ok(out)
}

/// All `k`-tuples of members of `set` summing to `n`, in lexicographic order.
pub fn enumerate_compositions(n: usize, k: usize, set: &SizeSet) -> Vec<Vec<usize>> {
    fn walk(rest: usize, parts: usize, set: &SizeSet, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in set.members_up_to(rest) {
            prefix.push(p);
            walk(rest - p, parts - 1, set, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, k, set, &mut Vec::new(), &mut out);
    out
}
