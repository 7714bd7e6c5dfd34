//! Exhaustive minimizers of disj over families of a given size, the Kneser-graph
//! complement duality, and the table for the family that beats lex at n = 3k - 1.

mod counterexample;
mod duality;
mod search;

pub use counterexample::{verify_counterexample, BallRow, CounterexampleRow};
pub use duality::{duality_check, DualityReport, DualityRow};

use crate::error::{cap, range, Result};
use crate::exactcomb::{nat, BigNat};
use crate::permfam::{all_perms, check_perm_cap, disj_t_formula, Perm};
use crate::setfam::{all_ksets, disj_lex_formula, KSet};
use num_traits::ToPrimitive;
use search::{min_conflicts, MAX_ITEMS};
use std::time::Instant;

pub const SAMPLE_CAP: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerReport {
    pub params: Vec<(String, u64)>,
    pub minimum: BigNat,
    pub num_minimizers: BigNat,
    /// Up to SAMPLE_CAP minimizers, one per relabeling class for set families.
    pub sample_minimizers: Vec<String>,
    pub lex_or_t_value: BigNat,
    pub lex_or_t_optimal: bool,
    /// False when the time budget ran out; the minimum is then only an upper bound.
    pub exhaustive: bool,
    pub nodes: u64,
    pub runtime_ms: u128,
}

fn family_string<T: std::fmt::Display>(items: &[T], mask: u128) -> String {
    let parts: Vec<String> = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i].to_string()).collect();
    parts.join(" ")
}

/// Least sorted mask list over all relabelings of [n].
fn relabel_key(sets: &[KSet], n: u32) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    let mut p: Vec<u32> = (0..n).collect();
    loop {
        let mut key: Vec<u64> = sets
            .iter()
            .map(|s| s.elems().iter().fold(0u64, |m, &e| m | 1 << p[e as usize - 1]))
            .collect();
        key.sort_unstable();
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
        if !crate::permfam::next_permutation(&mut p) {
            break;
        }
    }
    best.unwrap_or_default()
}

/// Least disj over all s-subsets of C([n],k), compared with the lex segment.
pub fn min_disj_sets(n: u32, k: u32, s: u64, deadline: Option<Instant>) -> Result<MinimizerReport> {
    if k == 0 || k > n || n > 64 {
        return Err(range("(n,k)", format!("n={n}, k={k}")));
    }
    let items = all_ksets(n, k);
    if items.len() > MAX_ITEMS {
        return Err(cap("C(n,k) for exhaustive search", items.len(), MAX_ITEMS));
    }
    if s as usize > items.len() {
        return Err(range("s", format!("{s} > C({n},{k})")));
    }
    let adj: Vec<u128> = items
        .iter()
        .map(|a| items.iter().enumerate().filter(|(_, b)| a.disjoint(**b)).fold(0u128, |m, (j, _)| m | 1 << j))
        .collect();
    let lex = disj_lex_formula(n as u64, k as u64, &nat(s));
    let start = Instant::now();
    let out = min_conflicts(&adj, s as usize, lex.to_u64().unwrap_or(u64::MAX), deadline);
    let mut keys = std::collections::BTreeSet::new();
    let mut sample = Vec::new();
    for &m in &out.samples {
        if sample.len() >= SAMPLE_CAP {
            break;
        }
        let sets: Vec<KSet> = (0..items.len()).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect();
        if n > 8 || keys.insert(relabel_key(&sets, n)) {
            sample.push(family_string(&items, m));
        }
    }
    let minimum = nat(out.minimum);
    Ok(MinimizerReport {
        params: vec![("n".into(), n as u64), ("k".into(), k as u64), ("s".into(), s)],
        lex_or_t_optimal: minimum == lex,
        minimum,
        num_minimizers: BigNat::from(out.count),
        sample_minimizers: sample,
        lex_or_t_value: lex,
        exhaustive: out.exhaustive,
        nodes: out.nodes,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Least disj over all s-subsets of S_n, compared with the lex segment T(n,s).
pub fn min_disj_perms(n: u32, s: u64, perm_cap: u32, deadline: Option<Instant>) -> Result<MinimizerReport> {
    check_perm_cap(n, perm_cap.min(5))?;
    let items: Vec<Perm> = all_perms(n);
    if s as usize > items.len() {
        return Err(range("s", format!("{s} > {n}!")));
    }
    let adj: Vec<u128> = items
        .iter()
        .map(|a| {
            items.iter().enumerate().fold(0u128, |m, (j, b)| {
                if a.image().iter().zip(b.image()).all(|(x, y)| x != y) {
                    m | 1 << j
                } else {
                    m
                }
            })
        })
        .collect();
    let t = disj_t_formula(n, &nat(s))?;
    let start = Instant::now();
    let out = min_conflicts(&adj, s as usize, t.to_u64().unwrap_or(u64::MAX), deadline);
    let sample = out.samples.iter().take(SAMPLE_CAP).map(|&m| family_string(&items, m)).collect();
    let minimum = nat(out.minimum);
    Ok(MinimizerReport {
        params: vec![("n".into(), n as u64), ("s".into(), s)],
        lex_or_t_optimal: minimum == t,
        minimum,
        num_minimizers: BigNat::from(out.count),
        sample_minimizers: sample,
        lex_or_t_value: t,
        exhaustive: out.exhaustive,
        nodes: out.nodes,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::binom;

    #[test]
    fn set_examples() {
        let r = min_disj_sets(4, 2, 4, None).unwrap();
        assert_eq!(r.minimum, nat(1));
        assert!(r.lex_or_t_optimal && r.exhaustive);
        let r = min_disj_sets(5, 2, 5, None).unwrap();
        assert_eq!(r.minimum, binom(2, 1));
        let r = min_disj_sets(6, 3, 10, None).unwrap();
        assert_eq!(r.minimum, nat(0));
        assert!(min_disj_sets(5, 2, 11, None).is_err());
    }

    #[test]
    fn set_counts_match_brute_force() {
        // all 2^10 families of 2-subsets of [5]
        let items = all_ksets(5, 2);
        for s in 0..=10u64 {
            let mut best = (u64::MAX, 0u64);
            for m in 0u32..1 << 10 {
                if m.count_ones() as u64 != s {
                    continue;
                }
                let chosen: Vec<KSet> = (0..10).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect();
                let mut d = 0;
                for a in 0..chosen.len() {
                    for b in a + 1..chosen.len() {
                        d += chosen[a].disjoint(chosen[b]) as u64;
                    }
                }
                if d < best.0 {
                    best = (d, 1);
                } else if d == best.0 {
                    best.1 += 1;
                }
            }
            let r = min_disj_sets(5, 2, s, None).unwrap();
            assert_eq!((r.minimum.clone(), r.num_minimizers.clone()), (nat(best.0), nat(best.1)), "s={s}");
        }
    }

    #[test]
    fn perm_examples() {
        let r = min_disj_perms(3, 3, 8, None).unwrap();
        assert_eq!(r.minimum, nat(1));
        assert!(r.lex_or_t_optimal);
        let r = min_disj_perms(4, 5, 8, None).unwrap();
        assert_eq!(r.minimum, nat(0));
        assert!(min_disj_perms(6, 3, 8, None).is_err());
    }

    #[test]
    fn relabel_classes() {
        let a = [KSet::from_elems(&[1, 2]), KSet::from_elems(&[1, 3])];
        let b = [KSet::from_elems(&[2, 4]), KSet::from_elems(&[4, 5])];
        assert_eq!(relabel_key(&a, 5), relabel_key(&b, 5));
        let c = [KSet::from_elems(&[1, 2]), KSet::from_elems(&[3, 4])];
        assert_ne!(relabel_key(&a, 5), relabel_key(&c, 5));
    }
}
