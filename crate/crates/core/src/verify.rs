//! Exhaustive separability and disjunctness checks, and the exhaustive
//! decoder.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::TestDesign;
use crate::error::{invalid, Error, Result};
use crate::subsets::{for_each_union, Guard};
use crate::support::{canonical_key_from_words, words_subset, SupportSet};

/// Collision statistics over all `k`-subsets of the columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityReport {
    pub k: usize,
    /// `C(n, k)`.
    pub total_subsets: u64,
    /// Subsets `K` for which some other `k`-subset has the same union.
    pub overlapping_subsets_sep: u64,
    /// Subsets `K` for which some column outside `K` has its support inside
    /// `S(K)`.
    pub overlapping_subsets_disj: u64,
    pub epsilon_sep: f64,
    pub epsilon_disj: f64,
}

impl SeparabilityReport {
    fn new(k: usize, total: u64, sep: u64, disj: u64) -> Self {
        Self {
            k,
            total_subsets: total,
            overlapping_subsets_sep: sep,
            overlapping_subsets_disj: disj,
            epsilon_sep: sep as f64 / total as f64,
            epsilon_disj: disj as f64 / total as f64,
        }
    }

    pub fn epsilon_sep_exact(&self) -> Ratio<u64> {
        Ratio::new(self.overlapping_subsets_sep, self.total_subsets)
    }

    pub fn epsilon_disj_exact(&self) -> Ratio<u64> {
        Ratio::new(self.overlapping_subsets_disj, self.total_subsets)
    }

    /// Key/value lines, one field per line.
    pub fn to_key_value(&self) -> String {
        format!(
            "k={}\ntotal_subsets={}\noverlapping_subsets_sep={}\noverlapping_subsets_disj={}\n\
             epsilon_sep={:.12}\nepsilon_disj={:.12}\n",
            self.k,
            self.total_subsets,
            self.overlapping_subsets_sep,
            self.overlapping_subsets_disj,
            self.epsilon_sep,
            self.epsilon_disj
        )
    }
}

fn check_k(design: &TestDesign, k: usize) -> Result<()> {
    if k == 0 || 2 * k > design.n() {
        return Err(invalid(
            "k",
            format!("need 1 <= k <= n/2, got k = {k}, n = {}", design.n()),
        ));
    }
    Ok(())
}

/// True iff some column outside the sorted set `members` has its support
/// inside `union`.
fn covers_outsider(cols: &[SupportSet], members: &[usize], union: &[u64]) -> bool {
    let mut next = members.iter().peekable();
    for (i, col) in cols.iter().enumerate() {
        if next.peek() == Some(&&i) {
            next.next();
            continue;
        }
        if words_subset(col.words(), union) {
            return true;
        }
    }
    false
}

type Partial = (HashMap<Vec<u8>, u64>, u64);

fn merge(mut a: Partial, mut b: Partial) -> Partial {
    if a.0.len() < b.0.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (key, count) in b.0 {
        *a.0.entry(key).or_insert(0) += count;
    }
    (a.0, a.1 + b.1)
}

/// Exact counts over all `C(n, k)` subsets.
///
/// Unions are bucketed by [`SupportSet::canonical_key`]; a subset overlaps
/// iff its bucket holds at least two subsets. Work is split by the first
/// element of the subset and merged by integer addition, so the result does
/// not depend on the thread count.
pub fn separability_report(design: &TestDesign, k: usize, guard: Guard) -> Result<SeparabilityReport> {
    check_k(design, k)?;
    let total = guard.check(design.n(), k)?;
    let (n, m) = (design.n(), design.m());
    let cols = design.columns();

    let (buckets, disj) = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut buckets: HashMap<Vec<u8>, u64> = HashMap::new();
            let mut disj = 0u64;
            let pool: Vec<usize> = (first + 1..n).collect();
            let mut members = Vec::with_capacity(k);
            let _ = for_each_union(cols, cols[first].words(), &pool, k - 1, |rest, union| {
                *buckets.entry(canonical_key_from_words(union, m)).or_insert(0) += 1;
                members.clear();
                members.push(first);
                members.extend_from_slice(rest);
                if covers_outsider(cols, &members, union) {
                    disj += 1;
                }
                ControlFlow::Continue(())
            });
            (buckets, disj)
        })
        .reduce(|| (HashMap::new(), 0), merge);

    let sep: u64 = buckets.values().filter(|&&c| c >= 2).sum();
    Ok(SeparabilityReport::new(k, total, sep, disj))
}

pub fn is_k_separable(design: &TestDesign, k: usize, guard: Guard) -> Result<bool> {
    Ok(separability_report(design, k, guard)?.overlapping_subsets_sep == 0)
}

pub fn is_k_disjunct(design: &TestDesign, k: usize, guard: Guard) -> Result<bool> {
    Ok(separability_report(design, k, guard)?.overlapping_subsets_disj == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DecodeResult {
    Unique(Vec<usize>),
    /// All consistent `k`-sets, in lexicographic order.
    Ambiguous(Vec<Vec<usize>>),
    NoMatch,
}

impl DecodeResult {
    fn from_candidates(mut found: Vec<Vec<usize>>) -> Self {
        match found.len() {
            0 => DecodeResult::NoMatch,
            1 => DecodeResult::Unique(found.pop().unwrap()),
            _ => DecodeResult::Ambiguous(found),
        }
    }
}

fn check_outcome(design: &TestDesign, outcome: &SupportSet, k: usize) -> Result<()> {
    if outcome.len() != design.m() {
        return Err(Error::LengthMismatch {
            expected: design.m(),
            got: outcome.len(),
        });
    }
    if k > design.n() {
        return Err(invalid("k", format!("k = {k} exceeds n = {}", design.n())));
    }
    Ok(())
}

/// Every `k`-set whose union equals `outcome`, found by enumerating all
/// `C(n, k)` candidates.
pub fn decode(design: &TestDesign, outcome: &SupportSet, k: usize, guard: Guard) -> Result<DecodeResult> {
    check_outcome(design, outcome, k)?;
    guard.check(design.n(), k)?;
    let pool: Vec<usize> = (0..design.n()).collect();
    let base = SupportSet::empty(design.m());
    let mut found = Vec::new();
    let _ = for_each_union(design.columns(), base.words(), &pool, k, |items, union| {
        if union == outcome.words() {
            found.push(items.to_vec());
        }
        ControlFlow::Continue(())
    });
    Ok(DecodeResult::from_candidates(found))
}

/// Table of every `k`-set and its union, sorted by union, for repeated
/// decoding by binary search.
#[derive(Debug, Clone)]
pub struct Codebook {
    k: usize,
    m: usize,
    words: usize,
    unions: Vec<u64>,
    subsets: Vec<u32>,
    /// Entry indices sorted by union, then lexicographically by subset.
    order: Vec<u32>,
}

impl Codebook {
    pub fn build(design: &TestDesign, k: usize, guard: Guard) -> Result<Self> {
        if k > design.n() {
            return Err(invalid("k", format!("k = {k} exceeds n = {}", design.n())));
        }
        let total = guard.check(design.n(), k)? as usize;
        if total > u32::MAX as usize {
            return Err(invalid("k", "codebook limited to 2^32 entries"));
        }
        let words = design.columns()[0].words().len();
        let mut unions = Vec::with_capacity(total * words);
        let mut subsets = Vec::with_capacity(total * k);
        let pool: Vec<usize> = (0..design.n()).collect();
        let base = SupportSet::empty(design.m());
        let _ = for_each_union(design.columns(), base.words(), &pool, k, |items, union| {
            unions.extend_from_slice(union);
            subsets.extend(items.iter().map(|&i| i as u32));
            ControlFlow::Continue(())
        });
        let mut order: Vec<u32> = (0..total as u32).collect();
        // stable: entries were produced in lexicographic subset order
        order.sort_by(|&a, &b| Self::union_of(&unions, words, a).cmp(Self::union_of(&unions, words, b)));
        Ok(Self {
            k,
            m: design.m(),
            words,
            unions,
            subsets,
            order,
        })
    }

    fn union_of(unions: &[u64], words: usize, entry: u32) -> &[u64] {
        let s = entry as usize * words;
        &unions[s..s + words]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn subset(&self, entry: u32) -> Vec<usize> {
        let s = entry as usize * self.k;
        self.subsets[s..s + self.k].iter().map(|&i| i as usize).collect()
    }

    pub fn decode(&self, outcome: &SupportSet) -> DecodeResult {
        let target = outcome.words();
        if outcome.len() != self.m {
            return DecodeResult::NoMatch;
        }
        let cmp = |e: &u32| Self::union_of(&self.unions, self.words, *e).cmp(target);
        let lo = self.order.partition_point(|e| cmp(e) == Ordering::Less);
        let hi = self.order.partition_point(|e| cmp(e) != Ordering::Greater);
        DecodeResult::from_candidates(self.order[lo..hi].iter().map(|&e| self.subset(e)).collect())
    }

    /// Each entry's subset and union, in lexicographic subset order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, SupportSet)> + '_ {
        (0..self.len() as u32).map(move |e| {
            let words = Self::union_of(&self.unions, self.words, e).to_vec();
            (self.subset(e), SupportSet::from_words(self.m, words))
        })
    }
}

/// Fraction of `k`-sets `K` that the exhaustive decoder fails to recover
/// from `S(K)`, as an exact rational.
pub fn exact_error_probability(design: &TestDesign, k: usize, guard: Guard) -> Result<Ratio<u64>> {
    check_k(design, k)?;
    let book = Codebook::build(design, k, guard)?;
    let mut failures = 0u64;
    for (subset, outcome) in book.entries() {
        if book.decode(&outcome) != DecodeResult::Unique(subset) {
            failures += 1;
        }
    }
    Ok(Ratio::new(failures, book.len() as u64))
}
