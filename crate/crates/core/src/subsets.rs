//! k-subset enumeration with incrementally maintained unions.

use std::ops::ControlFlow;

use crate::rng::Xoshiro256StarStar;
use crate::support::SupportSet;

/// Default cap on the number of subsets an exhaustive routine may visit.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Exact `C(n, k)`, or `None` on `u128` overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c = C(n, i) here, so c * (n - i) / (i + 1) is exact.
        c = c.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(c)
}

/// Enumeration limit. `None` disables the check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard(pub Option<u64>);

impl Default for Guard {
    fn default() -> Self {
        Guard(Some(DEFAULT_GUARD))
    }
}

impl Guard {
    pub const UNLIMITED: Guard = Guard(None);

    pub fn check(self, n: usize, k: usize) -> crate::Result<u64> {
        let total = binomial_u128(n as u64, k as u64);
        match (total, self.0) {
            (Some(t), Some(g)) if t <= g as u128 => Ok(t as u64),
            (Some(t), None) if t <= u64::MAX as u128 => Ok(t as u64),
            (t, g) => Err(crate::Error::GuardExceeded {
                subsets: t.unwrap_or(u128::MAX),
                guard: g.unwrap_or(u64::MAX),
            }),
        }
    }
}

/// Visits every `r`-subset of `pool` in lexicographic order of pool
/// positions. The visitor receives the chosen items and the union of their
/// column supports ORed onto `base`.
///
/// Unions are kept as a stack of prefix ORs, so advancing the subset only
/// recomputes the levels at and after the lowest changed position.
pub(crate) fn for_each_union<F>(
    cols: &[SupportSet],
    base: &[u64],
    pool: &[usize],
    r: usize,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[u64]) -> ControlFlow<()>,
{
    let words = base.len();
    let p = pool.len();
    if r > p {
        return ControlFlow::Continue(());
    }
    let mut pos: Vec<usize> = (0..r).collect();
    let mut items: Vec<usize> = pos.iter().map(|&j| pool[j]).collect();
    let mut prefix = vec![0u64; (r + 1) * words];
    prefix[..words].copy_from_slice(base);
    let fill = |prefix: &mut [u64], items: &[usize], from: usize| {
        for level in from..r {
            let (lo, hi) = prefix.split_at_mut((level + 1) * words);
            let prev = &lo[level * words..];
            let col = cols[items[level]].words();
            for ((dst, a), b) in hi[..words].iter_mut().zip(prev).zip(col) {
                *dst = a | b;
            }
        }
    };
    fill(&mut prefix, &items, 0);

    loop {
        visit(&items, &prefix[r * words..])?;
        let Some(i) = (0..r).rev().find(|&i| pos[i] < p - r + i) else {
            return ControlFlow::Continue(());
        };
        pos[i] += 1;
        items[i] = pool[pos[i]];
        for j in i + 1..r {
            pos[j] = pos[j - 1] + 1;
            items[j] = pool[pos[j]];
        }
        fill(&mut prefix, &items, i);
    }
}

/// Uniform random `k`-subset of `0..n`, sorted ascending (Floyd's algorithm).
pub fn random_subset(rng: &mut Xoshiro256StarStar, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n);
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for j in n - k..n {
        let t = rng.next_below(j as u64 + 1) as usize;
        match chosen.binary_search(&t) {
            Ok(_) => {
                let at = chosen.binary_search(&j).unwrap_err();
                chosen.insert(at, j);
            }
            Err(at) => chosen.insert(at, t),
        }
    }
    chosen
}
