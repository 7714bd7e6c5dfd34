//! k-uniform set families over [n], n <= 64.

mod ball;
mod disj;
mod formulas;
pub mod io;
mod kneser;
mod nearest;

pub use ball::{counterexample_family, counterexample_lex, ell_ball, ell_ball_layer_sizes, EllBall};
pub use disj::{disj_cross, disj_naive, disj_naive_u64, disj_zeta, disj_zeta_u64, ZETA_CAP_DEFAULT};
pub use formulas::{
    cross_disj_lower, disj_lex_formula, lex_params, quad_upper_bound, star_upper_bound,
};
pub use kneser::{
    expander_mixing_gap, kneser_adjacency, kneser_params, kneser_vertices, MixingGap, KneserParams,
};
pub use nearest::{nearest_star_union, NEAREST_CAP_DEFAULT};

use crate::error::{invalid, range, Result};
use crate::exactcomb::binom_u128;
use std::cmp::Ordering;
use std::fmt;

/// A subset of [n] stored with element i at bit i-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet(pub u64);

impl KSet {
    pub fn from_elems(elems: &[u32]) -> Self {
        let mut m = 0u64;
        for &e in elems {
            debug_assert!((1..=64).contains(&e));
            m |= 1u64 << (e - 1);
        }
        KSet(m)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=64).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn elems(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn disjoint(self, other: KSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Lex comparison of equal-size sets as increasing tuples.
    pub fn lex_cmp(self, other: KSet) -> Ordering {
        let d = self.0 ^ other.0;
        if d == 0 {
            Ordering::Equal
        } else if self.0 & d & d.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// k-subsets of [n] in lex order, produced lazily.
pub struct LexIter {
    n: u32,
    idx: Vec<u32>,
    done: bool,
}

impl LexIter {
    pub fn new(n: u32, k: u32) -> Self {
        LexIter { n, idx: (1..=k).collect(), done: k > n }
    }
}

impl Iterator for LexIter {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        if self.done {
            return None;
        }
        let out = KSet::from_elems(&self.idx);
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - 1 - i) as u32 {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn all_ksets(n: u32, k: u32) -> Vec<KSet> {
    LexIter::new(n, k).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: u32,
    k: u32,
    members: Vec<KSet>,
}

impl SetFamily {
    /// Validates, sorts into lex order and rejects duplicates.
    pub fn new(n: u32, k: u32, mut members: Vec<KSet>) -> Result<Self> {
        if !(1..=64).contains(&n) || k > n {
            return Err(range("(n,k)", format!("n={n}, k={k}")));
        }
        let full = full_mask(n);
        for m in &members {
            if m.0 & !full != 0 || m.len() != k {
                return Err(invalid(format!("{m} is not a {k}-subset of [{n}]")));
            }
        }
        members.sort_by(|a, b| a.lex_cmp(*b));
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate member {}", w[0])));
        }
        Ok(SetFamily { n, k, members })
    }

    pub(crate) fn from_sorted(n: u32, k: u32, members: Vec<KSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0].lex_cmp(w[1]) == Ordering::Less));
        SetFamily { n, k, members }
    }

    pub fn empty(n: u32, k: u32) -> Self {
        SetFamily { n, k, members: Vec::new() }
    }

    pub fn full_level(n: u32, k: u32) -> Self {
        SetFamily { n, k, members: all_ksets(n, k) }
    }

    pub fn star(n: u32, k: u32, center: u32) -> Self {
        let members = LexIter::new(n, k).filter(|s| s.contains(center)).collect();
        SetFamily { n, k, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.members.binary_search_by(|m| m.lex_cmp(s)).is_ok()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.0).collect()
    }

    pub fn is_intersecting(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (i + 1..m.len()).all(|j| !m[i].disjoint(m[j])))
    }

    pub fn difference(&self, other: &SetFamily) -> SetFamily {
        let members = self.members.iter().copied().filter(|s| !other.contains(*s)).collect();
        SetFamily::from_sorted(self.n, self.k, members)
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        let mut members = self.members.clone();
        members.extend(other.members.iter().copied().filter(|s| !self.contains(*s)));
        members.sort_by(|a, b| a.lex_cmp(*b));
        SetFamily::from_sorted(self.n, self.k, members)
    }

    pub fn symmetric_difference_size(&self, other: &SetFamily) -> usize {
        self.difference(other).len() + other.difference(self).len()
    }
}

fn level_size(n: u32, k: u32) -> u128 {
    binom_u128(n as u64, k as u64)
}

pub fn lex_segment(n: u32, k: u32, s: u128) -> Result<SetFamily> {
    if !(1..=64).contains(&n) || k == 0 || k > n {
        return Err(range("(n,k)", format!("n={n}, k={k}")));
    }
    let total = level_size(n, k);
    if s > total {
        return Err(range("s", format!("{s} > C({n},{k}) = {total}")));
    }
    let members = LexIter::new(n, k).take(s as usize).collect();
    Ok(SetFamily::from_sorted(n, k, members))
}

pub fn colex_complement(n: u32, k: u32, s: u128) -> Result<SetFamily> {
    let total = level_size(n, k);
    if s > total {
        return Err(range("s", format!("{s} > C({n},{k}) = {total}")));
    }
    let skip = (total - s) as usize;
    let members = LexIter::new(n, k).skip(skip).collect();
    Ok(SetFamily::from_sorted(n, k, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[u32]]) -> Vec<KSet> {
        v.iter().map(|e| KSet::from_elems(e)).collect()
    }

    #[test]
    fn lex_segment_small() {
        assert_eq!(lex_segment(4, 2, 3).unwrap().members(), &sets(&[&[1, 2], &[1, 3], &[1, 4]])[..]);
        assert!(lex_segment(6, 3, 0).unwrap().is_empty());
        assert_eq!(
            lex_segment(5, 3, 4).unwrap().members(),
            &sets(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 3, 4]])[..]
        );
        assert!(lex_segment(4, 2, 7).is_err());
    }

    #[test]
    fn lex_iter_matches_sorted_tuples() {
        for n in 1..=9u32 {
            for k in 1..=n {
                let it: Vec<Vec<u32>> = LexIter::new(n, k).map(|s| s.elems()).collect();
                let mut sorted = it.clone();
                sorted.sort();
                assert_eq!(it, sorted);
                assert_eq!(it.len() as u128, level_size(n, k));
            }
        }
    }

    #[test]
    fn star_prefix() {
        for n in 3..=9u32 {
            for k in 1..n {
                let s = level_size(n - 1, k - 1);
                let f = lex_segment(n, k, s).unwrap();
                assert!(f.members().iter().all(|m| m.contains(1)));
                assert_eq!(f, SetFamily::star(n, k, 1));
            }
        }
    }

    #[test]
    fn colex_complement_is_set_difference() {
        assert_eq!(colex_complement(4, 2, 6).unwrap(), SetFamily::full_level(4, 2));
        assert!(colex_complement(4, 2, 0).unwrap().is_empty());
        let c = colex_complement(5, 2, 3).unwrap();
        let l = lex_segment(5, 2, 7).unwrap();
        assert_eq!(c, SetFamily::full_level(5, 2).difference(&l));
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn new_rejects_bad_members() {
        assert!(SetFamily::new(4, 2, sets(&[&[1, 2], &[1, 2]])).is_err());
        assert!(SetFamily::new(4, 2, sets(&[&[1, 5]])).is_err());
        assert!(SetFamily::new(4, 2, sets(&[&[1, 2, 3]])).is_err());
        let f = SetFamily::new(4, 2, sets(&[&[3, 4], &[1, 2]])).unwrap();
        assert_eq!(f.members()[0], KSet::from_elems(&[1, 2]));
    }
}
