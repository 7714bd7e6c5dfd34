//! Branch and bound for the least number of conflict edges among s items.

use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

pub(crate) const MAX_ITEMS: usize = 128;
const RAW_SAMPLE_CAP: usize = 1000;

pub(crate) struct Outcome {
    pub minimum: u64,
    pub count: u128,
    /// Up to RAW_SAMPLE_CAP minimizers as item masks, in search order.
    pub samples: Vec<u128>,
    pub exhaustive: bool,
    pub nodes: u64,
}

struct Shared<'a> {
    adj: &'a [u128],
    s: usize,
    incumbent: AtomicU64,
    abort: AtomicBool,
    deadline: Option<Instant>,
}

struct Local {
    best: u64,
    count: u128,
    samples: Vec<u128>,
    nodes: u64,
}

impl Shared<'_> {
    fn dfs(&self, chosen: u128, size: usize, value: u64, next: usize, loc: &mut Local) {
        loc.nodes += 1;
        if loc.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.abort.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        let bound = self.incumbent.load(Ordering::Relaxed).min(loc.best);
        if size == self.s {
            if value < loc.best {
                loc.best = value;
                loc.count = 0;
                loc.samples.clear();
                self.incumbent.fetch_min(value, Ordering::Relaxed);
            }
            if value == loc.best {
                loc.count += 1;
                if loc.samples.len() < RAW_SAMPLE_CAP {
                    loc.samples.push(chosen);
                }
            }
            return;
        }
        let need = self.s - size;
        let n = self.adj.len();
        if n - next < need {
            return;
        }
        // each further item meets at least its conflicts with the chosen ones
        let mut costs: Vec<u32> = (next..n).map(|c| (self.adj[c] & chosen).count_ones()).collect();
        costs.select_nth_unstable(need - 1);
        let lb = value + costs[..need].iter().map(|&c| c as u64).sum::<u64>();
        if lb > bound {
            return;
        }
        for c in next..=n - need {
            let add = (self.adj[c] & chosen).count_ones() as u64;
            if value + add > self.incumbent.load(Ordering::Relaxed).min(loc.best) {
                continue;
            }
            self.dfs(chosen | 1 << c, size + 1, value + add, c + 1, loc);
        }
    }
}

/// `adj[i]` has bit j set when items i and j conflict. `upper` must be the value of some
/// s-subset; ties with the optimum are never pruned, so every minimizer is counted.
pub(crate) fn min_conflicts(adj: &[u128], s: usize, upper: u64, deadline: Option<Instant>) -> Outcome {
    let n = adj.len();
    assert!(n <= MAX_ITEMS && s <= n);
    if s == 0 {
        return Outcome { minimum: 0, count: 1, samples: vec![0], exhaustive: true, nodes: 1 };
    }
    let shared =
        Shared { adj, s, incumbent: AtomicU64::new(upper), abort: AtomicBool::new(false), deadline };
    let locals: Vec<Local> = (0..=n - s)
        .into_par_iter()
        .map(|first| {
            let mut loc = Local { best: u64::MAX, count: 0, samples: Vec::new(), nodes: 0 };
            shared.dfs(1 << first, 1, 0, first + 1, &mut loc);
            loc
        })
        .collect();
    let minimum = locals.iter().map(|l| l.best).min().unwrap_or(u64::MAX);
    let mut out = Outcome {
        minimum,
        count: 0,
        samples: Vec::new(),
        exhaustive: !shared.abort.load(Ordering::Relaxed),
        nodes: 0,
    };
    for l in locals {
        out.nodes += l.nodes;
        if l.best == minimum {
            out.count += l.count;
            let room = RAW_SAMPLE_CAP - out.samples.len();
            out.samples.extend(l.samples.into_iter().take(room));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(adj: &[u128], s: usize) -> (u64, u128) {
        let n = adj.len();
        let mut best = (u64::MAX, 0u128);
        for m in 0u128..1 << n {
            if m.count_ones() as usize != s {
                continue;
            }
            let v: u64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| (adj[i] & m).count_ones() as u64).sum::<u64>() / 2;
            if v < best.0 {
                best = (v, 1);
            } else if v == best.0 {
                best.1 += 1;
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..=12);
            let mut adj = vec![0u128; n];
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
            }
            for s in 0..=n {
                let (v, c) = brute(&adj, s);
                let o = min_conflicts(&adj, s, u64::MAX, None);
                assert_eq!((o.minimum, o.count), (v, c), "n={n} s={s}");
            }
        }
    }
}
