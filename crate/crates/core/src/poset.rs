//! The poset of asterisk-tuple/list-partition pairs whose Möbius function
//! reproduces the inverse `(S,r)`-Lah matrix.
//!
//! An element `(l_1, ..., l_r)||a` pairs an `r`-tuple of asterisk lists (sizes
//! in `S - 1`) with a partition of the remaining labels of `[n]` into lists
//! (sizes in `S`). Going up the order concatenates lists of `a`, or moves
//! whole lists of `a` into the tuple through the asterisk product.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::matrix::TriangularMatrix;
use crate::oracle::{enumerate_list_partitions, Guardrail};
use crate::report::IdentityReport;
use crate::riordan::{lah_inverse_matrix, RiordanError};
use crate::sequences::{l_total, lah_triangle, SequenceError};
use crate::sizeset::SizeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("label {0} occurs in both operands of the asterisk product")]
    LabelCollision(usize),
    #[error("tuples of different lengths: {0} and {1}")]
    TupleLength(usize, usize),
    #[error("{0} is not a +1 monoid")]
    NotMonoid(String),
    #[error("poset would have {predicted} elements, more than the limit {limit}")]
    Guardrail { predicted: BigInt, limit: usize },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

type Result<T> = std::result::Result<T, PosetError>;

/// Largest number of elements `build_poset` accepts.
pub const ELEMENT_LIMIT: usize = 20000;

/// The list `before * after`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsteriskList {
    pub before: Vec<usize>,
    pub after: Vec<usize>,
}

impl AsteriskList {
    pub fn new(before: Vec<usize>, after: Vec<usize>) -> Self {
        AsteriskList { before, after }
    }

    /// The bare asterisk, unit of the asterisk product.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn size(&self) -> usize {
        self.before.len() + self.after.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = &usize> {
        self.before.iter().chain(&self.after)
    }
}

impl fmt::Display for AsteriskList {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .before
            .iter()
            .map(ToString::to_string)
            .chain(std::iter::once("*".to_string()))
            .chain(self.after.iter().map(ToString::to_string))
            .collect();
        write!(out, "{}", words.join(" "))
    }
}

/// `b1 * a1` placed into the asterisk of `b * a` gives `b b1 * a1 a`.
pub fn asterisk_product(outer: &AsteriskList, inner: &AsteriskList) -> Result<AsteriskList> {
    if let Some(&label) = inner.labels().find(|l| outer.labels().any(|m| m == *l)) {
        return Err(PosetError::LabelCollision(label));
    }
    let mut before = outer.before.clone();
    before.extend(&inner.before);
    let mut after = inner.after.clone();
    after.extend(&outer.after);
    Ok(AsteriskList { before, after })
}

/// Componentwise asterisk product of two tuples.
pub fn tuple_product(outer: &[AsteriskList], inner: &[AsteriskList]) -> Result<Vec<AsteriskList>> {
    if outer.len() != inner.len() {
        return Err(PosetError::TupleLength(outer.len(), inner.len()));
    }
    outer.iter().zip(inner).map(|(a, b)| asterisk_product(a, b)).collect()
}

/// `tuple||lists`, lists sorted by minimum label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPair {
    pub tuple: Vec<AsteriskList>,
    pub lists: Vec<Vec<usize>>,
}

impl PartitionPair {
    pub fn new(tuple: Vec<AsteriskList>, mut lists: Vec<Vec<usize>>) -> Self {
        lists.sort_by_key(|l| l.iter().min().copied());
        PartitionPair { tuple, lists }
    }

    /// `(*, ..., *)||1|2|...|n`.
    pub fn zero(n: usize, r: usize) -> Self {
        PartitionPair { tuple: vec![AsteriskList::empty(); r], lists: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn list_count(&self) -> usize {
        self.lists.len()
    }

    pub fn label_count(&self) -> usize {
        self.tuple.iter().map(AsteriskList::size).sum::<usize>() + self.lists.iter().map(Vec::len).sum::<usize>()
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple: Vec<String> = self.tuple.iter().map(ToString::to_string).collect();
        let lists: Vec<String> = self
            .lists
            .iter()
            .map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let right = if lists.is_empty() { "∅".to_string() } else { lists.join("|") };
        write!(out, "({})||{}", tuple.join(", "), right)
    }
}

/// Which list of the decomposed side each label heads.
struct ListIndex<'a> {
    lists: &'a [Vec<usize>],
    owner: HashMap<usize, usize>,
}

impl<'a> ListIndex<'a> {
    fn new(lists: &'a [Vec<usize>]) -> Self {
        let owner = lists.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&x| (x, i))).collect();
        ListIndex { lists, owner }
    }

    /// Splits `seq` into whole unused lists, marking them used; returns the
    /// number of lists, or `None` when `seq` is not such a concatenation.
    fn split(&self, seq: &[usize], used: &mut [bool]) -> Option<usize> {
        let mut at = 0;
        let mut count = 0;
        while at < seq.len() {
            let i = *self.owner.get(&seq[at])?;
            let list = &self.lists[i];
            if used[i] || !seq[at..].starts_with(list) {
                return None;
            }
            used[i] = true;
            at += list.len();
            count += 1;
        }
        Some(count)
    }
}

/// Whether `tuple` is obtained from `lists` by distributing them over the
/// components, each component the concatenation of its lists with one
/// asterisk inserted between two of them; component `i` must use `c_i`
/// lists with `c_i + 1` in `S`.
pub fn constructed_from(tuple: &[AsteriskList], lists: &[Vec<usize>], set: &SizeSet) -> bool {
    let index = ListIndex::new(lists);
    let mut used = vec![false; lists.len()];
    for component in tuple {
        let Some(left) = index.split(&component.before, &mut used) else { return false };
        let Some(right) = index.split(&component.after, &mut used) else { return false };
        if !set.contains(left + right + 1) {
            return false;
        }
    }
    used.iter().all(|&u| u)
}

/// Every list of `upper` is the concatenation of `s` lists of `lower` with
/// `s` in `S`, and every list of `lower` is used exactly once.
pub fn curly_leq(lower: &[Vec<usize>], upper: &[Vec<usize>], set: &SizeSet) -> bool {
    let index = ListIndex::new(lower);
    let mut used = vec![false; lower.len()];
    upper_is_concatenation(&index, upper, set, &mut used) && used.iter().all(|&u| u)
}

fn upper_is_concatenation(index: &ListIndex, upper: &[Vec<usize>], set: &SizeSet, used: &mut [bool]) -> bool {
    upper.iter().all(|list| index.split(list, used).is_some_and(|s| set.contains(s)))
}

/// `x <= y`: `y.tuple = x.tuple (*) t` with `t` constructed from some lists
/// `a''` of `x`, and the remaining lists of `x` are `<=` (curly) `y.lists`.
///
/// Both the factor `t` (left cancellation) and its split into lists of `x`
/// (lists are label-disjoint) are unique, so the existential is decided by
/// stripping `x.tuple` from `y.tuple` and splitting what is left.
pub fn pair_leq(x: &PartitionPair, y: &PartitionPair, set: &SizeSet) -> bool {
    if x.tuple.len() != y.tuple.len() {
        return false;
    }
    let index = ListIndex::new(&x.lists);
    let mut used = vec![false; x.lists.len()];
    for (small, big) in x.tuple.iter().zip(&y.tuple) {
        if !big.before.starts_with(&small.before) || !big.after.ends_with(&small.after) {
            return false;
        }
        let middle_before = &big.before[small.before.len()..];
        let middle_after = &big.after[..big.after.len() - small.after.len()];
        let Some(left) = index.split(middle_before, &mut used) else { return false };
        let Some(right) = index.split(middle_after, &mut used) else { return false };
        if !set.contains(left + right + 1) {
            return false;
        }
    }
    upper_is_concatenation(&index, &y.lists, set, &mut used) && used.iter().all(|&u| u)
}

/// Dense bit matrix; row `i` holds the `j` with `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(size: usize) -> Self {
        let words = size.div_ceil(64);
        BitMatrix { words, bits: vec![0; words * size] }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }
}

/// Outcome of the exhaustive order-axiom checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderAxioms {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub zero_is_minimum: bool,
}

impl OrderAxioms {
    pub fn all_hold(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive && self.zero_is_minimum
    }
}

/// A fully materialized poset with `mu(0, x)` for every element.
#[derive(Debug, Clone)]
pub struct Poset {
    n: usize,
    r: usize,
    set: SizeSet,
    elements: Vec<PartitionPair>,
    positions: HashMap<PartitionPair, usize>,
    up: BitMatrix,
    down: BitMatrix,
    mobius: Vec<BigInt>,
}

/// Elements of the poset on `[n]`: list partitions of `[n+r]` with the list of
/// special element `j` rewritten as an asterisk list.
pub fn poset_elements(n: usize, set: &SizeSet, r: usize) -> Result<Vec<PartitionPair>> {
    let unbounded = Guardrail::uniform(usize::MAX);
    let mut elements = Vec::new();
    for k in (0..=n).rev() {
        let mut level = Vec::new();
        for partition in enumerate_list_partitions(n, k, set, r, &unbounded).expect("no guardrail") {
            let mut tuple = vec![AsteriskList::empty(); r];
            let mut lists = Vec::new();
            for list in partition.lists {
                match list.iter().position(|&x| x <= r) {
                    Some(at) => {
                        let relabel = |xs: &[usize]| xs.iter().map(|x| x - r).collect::<Vec<_>>();
                        tuple[list[at] - 1] = AsteriskList::new(relabel(&list[..at]), relabel(&list[at + 1..]));
                    }
                    None => lists.push(list.iter().map(|x| x - r).collect()),
                }
            }
            level.push(PartitionPair::new(tuple, lists));
        }
        level.sort();
        elements.extend(level);
    }
    Ok(elements)
}

/// Largest list size that occurs on `[n]`: all labels plus one asterisk.
pub fn monoid_bound(n: usize) -> usize {
    n + 1
}

/// Builds the poset on `[n]`, its order relation and Möbius values from `0`.
pub fn build_poset(n: usize, set: &SizeSet, r: usize) -> Result<Poset> {
    if !set.is_plus_one_monoid(monoid_bound(n)) {
        return Err(PosetError::NotMonoid(set.to_string()));
    }
    let predicted = l_total(n, set, r)?;
    if predicted > BigInt::from(ELEMENT_LIMIT) {
        return Err(PosetError::Guardrail { predicted, limit: ELEMENT_LIMIT });
    }
    let elements = poset_elements(n, set, r)?;
    let size = elements.len();
    let mut up = BitMatrix::new(size);
    let mut down = BitMatrix::new(size);
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            // a strictly larger element has strictly fewer lists
            if (i == j || y.list_count() < x.list_count()) && pair_leq(x, y, set) {
                up.set(i, j);
                down.set(j, i);
            }
        }
    }
    // elements are sorted by decreasing list count, a linear extension
    let mut mobius = vec![BigInt::zero(); size];
    for j in 0..size {
        mobius[j] = if j == 0 {
            BigInt::from(1)
        } else {
            -(0..j).filter(|&i| down.get(j, i)).map(|i| &mobius[i]).sum::<BigInt>()
        };
    }
    let positions = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Ok(Poset { n, r, set: set.clone(), elements, positions, up, down, mobius })
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn set(&self) -> &SizeSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartitionPair] {
        &self.elements
    }

    /// Index of `0`; always the first element.
    pub fn zero(&self) -> usize {
        0
    }

    pub fn index_of(&self, element: &PartitionPair) -> Option<usize> {
        self.positions.get(element).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    /// `mu(0, x)` for the element at index `i`.
    pub fn mobius(&self, i: usize) -> &BigInt {
        &self.mobius[i]
    }

    /// Sum of `mu(0, x)` over elements with exactly `k` lists.
    pub fn mobius_cardinal(&self, k: usize) -> BigInt {
        self.elements
            .iter()
            .zip(&self.mobius)
            .filter(|(e, _)| e.list_count() == k)
            .map(|(_, m)| m)
            .sum()
    }

    /// Number of elements with `k` lists, for `k = 0..=n`.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for e in &self.elements {
            counts[e.list_count()] += 1;
        }
        counts
    }

    pub fn order_axioms(&self) -> OrderAxioms {
        let size = self.len();
        let reflexive = (0..size).all(|i| self.leq(i, i));
        let antisymmetric =
            (0..size).all(|i| (i + 1..size).all(|j| !(self.leq(i, j) && self.leq(j, i))));
        // transitive iff up(j) is contained in up(i) whenever i <= j
        let transitive = (0..size).all(|i| {
            (0..size).filter(|&j| self.leq(i, j)).all(|j| {
                self.up.row(j).iter().zip(self.up.row(i)).all(|(above_j, above_i)| above_j & !above_i == 0)
            })
        });
        let zero_is_minimum = (0..size).all(|j| self.leq(self.zero(), j));
        OrderAxioms { reflexive, antisymmetric, transitive, zero_is_minimum }
    }

    /// Pairs `(i, j)` with `j` covering `i`.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let size = self.len();
        let mut edges = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between: u32 = self
                    .up
                    .row(i)
                    .iter()
                    .zip(self.down.row(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if between == 2 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Elements with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up.row(i).iter().map(|w| w.count_ones()).sum::<u32>() == 1)
            .collect()
    }

    /// Elements above `x` with `j` lists are as many as `[k j]_{S,r}`, `k` the
    /// number of lists of `x`.
    pub fn verify_coideal(&self, x: usize, j: usize) -> Result<IdentityReport> {
        let k = self.elements[x].list_count();
        let above = (0..self.len()).filter(|&y| self.leq(x, y) && self.elements[y].list_count() == j).count();
        let expected = lah_triangle(&self.set, self.r, k)?.get(k, j);
        let mut report = IdentityReport::new(
            format!("coideal sizes [{}, r={}]", self.set, self.r),
            format!("x={}, j={j}", self.elements[x]),
        );
        report.check(format!("j={j}"), BigInt::from(above), expected);
        Ok(report)
    }

    /// Level sizes against the `(S,r)`-Lah numbers.
    pub fn verify_level_counts(&self) -> Result<IdentityReport> {
        let lah = lah_triangle(&self.set, self.r, self.n)?;
        let mut report =
            IdentityReport::new(format!("poset level sizes [{}, r={}]", self.set, self.r), format!("n={}", self.n));
        for (k, count) in self.level_counts().into_iter().enumerate() {
            report.check(format!("n={},k={k}", self.n), BigInt::from(count), lah.get(self.n, k));
        }
        Ok(report)
    }

    /// Möbius cardinals against row `n` of the inverse Lah matrix.
    pub fn verify_mobius_cardinals(&self) -> Result<IdentityReport> {
        let inverse: TriangularMatrix = lah_inverse_matrix(&self.set, self.r, self.n)?;
        let mut report = IdentityReport::new(
            format!("Möbius cardinals [{}, r={}]", self.set, self.r),
            format!("n={}", self.n),
        );
        for k in 0..=self.n {
            report.check(format!("n={},k={k}", self.n), self.mobius_cardinal(k), inverse.get(self.n, k));
        }
        Ok(report)
    }
}
