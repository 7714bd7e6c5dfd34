//! Permutation families, cosets T_(i,j), and exact disjoint-pair counts.

mod cosets;
mod engine;
pub mod io;
mod spectrum;

pub use cosets::{coset_members, union_members, CliqueLabel, CosetSpec};
pub use engine::{
    exact_cross_clique_disj, exact_disj_to_clique, exact_disj_to_union, exact_disj_within_union,
    exact_intersection_size, mx_class_size, Engine,
};
pub use spectrum::{derangement_graph_spectrum, SpectrumReport};

use crate::error::{cap, invalid, range, Result};
use crate::exactcomb::{derangements, factorial, BigNat};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::fmt;

pub const PERM_CAP_DEFAULT: u32 = 8;

/// A bijection on [n], stored as 1-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u32>,
}

impl Perm {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(invalid(format!("{image:?} is not a permutation of [{n}]")));
            }
            seen[v as usize] = true;
        }
        Ok(Perm { image })
    }

    pub fn identity(n: u32) -> Self {
        Perm { image: (1..=n).collect() }
    }

    pub fn n(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    /// π(i) for 1-based i.
    pub fn at(&self, i: u32) -> u32 {
        self.image[i as usize - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Perm { image: inv }
    }

    /// Bit (i-1)·n + (π(i)-1) for each i; two perms are disjoint iff masks don't meet.
    pub(crate) fn agreement_mask(&self) -> u64 {
        let n = self.image.len();
        self.image.iter().enumerate().fold(0u64, |m, (i, &v)| m | 1u64 << (i * n + v as usize - 1))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// True iff σ(i) ≠ π(i) for every i.
pub fn perm_disjoint(sigma: &Perm, pi: &Perm) -> Result<bool> {
    if sigma.n() != pi.n() {
        return Err(invalid(format!("size mismatch: {} vs {}", sigma.n(), pi.n())));
    }
    Ok(sigma.image.iter().zip(&pi.image).all(|(a, b)| a != b))
}

pub(crate) fn next_permutation(p: &mut [u32]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// S_n in lex order of image sequences.
pub fn all_perms(n: u32) -> Vec<Perm> {
    let mut p: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Perm { image: p.clone() });
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

pub(crate) fn check_perm_cap(n: u32, perm_cap: u32) -> Result<()> {
    if n > perm_cap {
        return Err(cap("n for explicit S_n enumeration", n, perm_cap));
    }
    if n == 0 {
        return Err(range("n", "n must be positive"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermFamily {
    n: u32,
    members: Vec<Perm>,
}

impl PermFamily {
    pub fn new(n: u32, mut members: Vec<Perm>) -> Result<Self> {
        if let Some(p) = members.iter().find(|p| p.n() != n) {
            return Err(invalid(format!("{p} is not in S_{n}")));
        }
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate member {}", w[0])));
        }
        Ok(PermFamily { n, members })
    }

    pub(crate) fn from_sorted(n: u32, members: Vec<Perm>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0].cmp(&w[1]) == Ordering::Less));
        PermFamily { n, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Perm] {
        &self.members
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.members.binary_search(p).is_ok()
    }
}

/// T(n,s): the first s permutations in lex order.
pub fn lex_perm_segment(n: u32, s: u64, perm_cap: u32) -> Result<PermFamily> {
    check_perm_cap(n, perm_cap)?;
    let total = factorial(n as u64).to_u64().unwrap_or(u64::MAX);
    if s > total {
        return Err(range("s", format!("{s} > {n}!")));
    }
    let mut p: Vec<u32> = (1..=n).collect();
    let mut out = Vec::with_capacity(s as usize);
    while (out.len() as u64) < s {
        out.push(Perm { image: p.clone() });
        next_permutation(&mut p);
    }
    Ok(PermFamily::from_sorted(n, out))
}

pub fn disj_perm_u64(f: &PermFamily) -> u64 {
    let m = f.members();
    if f.n() <= 8 {
        let masks: Vec<u64> = m.iter().map(|p| p.agreement_mask()).collect();
        (0..masks.len())
            .into_par_iter()
            .map(|i| masks[i + 1..].iter().filter(|&&b| masks[i] & b == 0).count() as u64)
            .sum()
    } else {
        (0..m.len())
            .into_par_iter()
            .map(|i| {
                m[i + 1..].iter().filter(|q| m[i].image.iter().zip(&q.image).all(|(a, b)| a != b)).count() as u64
            })
            .sum()
    }
}

/// Unordered disjoint pairs: edges of the derangement graph induced on F.
pub fn disj_perm(f: &PermFamily) -> BigNat {
    BigNat::from(disj_perm_u64(f))
}

/// C(ℓ,2)(n-1)! D_{n-1} + ℓ r D_{n-1} for s = ℓ(n-1)! + r, 0 <= r < (n-1)!.
pub fn disj_t_formula(n: u32, s: &BigNat) -> Result<BigNat> {
    if n == 0 {
        return Err(range("n", "n must be positive"));
    }
    let total = factorial(n as u64);
    if *s > total {
        return Err(range("s", format!("{s} > {n}!")));
    }
    let block = factorial(n as u64 - 1);
    let (ell, r) = s.div_rem(&block);
    let d = &derangements(n as usize).big_d[n as usize - 1];
    let pairs = if ell.is_zero() { BigNat::zero() } else { &ell * (&ell - 1u32) / 2u32 };
    Ok(pairs * &block * d + ell * r * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::nat;

    fn p(v: &[u32]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn disjointness() {
        assert!(perm_disjoint(&p(&[1, 2, 3]), &p(&[2, 3, 1])).unwrap());
        assert!(!perm_disjoint(&p(&[1, 2, 3]), &p(&[1, 2, 3])).unwrap());
        assert!(perm_disjoint(&p(&[1, 2]), &p(&[1, 2, 3])).is_err());
        let id = Perm::identity(4);
        let count = all_perms(4).iter().filter(|t| perm_disjoint(&id, t).unwrap()).count();
        assert_eq!(count, 9);
        assert!(Perm::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn lex_segments() {
        let t = lex_perm_segment(3, 2, 8).unwrap();
        assert_eq!(t.members(), &[p(&[1, 2, 3]), p(&[1, 3, 2])]);
        let t = lex_perm_segment(4, 6, 8).unwrap();
        assert!(t.members().iter().all(|q| q.at(1) == 1));
        let t = lex_perm_segment(4, 8, 8).unwrap();
        assert_eq!(t.members()[6], p(&[2, 1, 3, 4]));
        assert_eq!(t.members()[7], p(&[2, 1, 4, 3]));
        assert!(lex_perm_segment(4, 25, 8).is_err());
        assert!(lex_perm_segment(9, 1, 8).is_err());
    }

    #[test]
    fn disj_small() {
        let s3 = PermFamily::new(3, all_perms(3)).unwrap();
        assert_eq!(disj_perm_u64(&s3), 6);
        let coset = PermFamily::new(5, all_perms(5).into_iter().filter(|q| q.at(2) == 4).collect()).unwrap();
        assert_eq!(disj_perm_u64(&coset), 0);
        assert_eq!(disj_perm_u64(&lex_perm_segment(4, 12, 8).unwrap()), 18);
    }

    #[test]
    fn formula_matches_brute_force() {
        for n in 1..=5u32 {
            let total = factorial(n as u64).to_u64().unwrap();
            for s in 0..=total {
                let t = lex_perm_segment(n, s, 8).unwrap();
                assert_eq!(disj_t_formula(n, &nat(s)).unwrap(), nat(disj_perm_u64(&t)), "n={n} s={s}");
            }
        }
        assert_eq!(disj_t_formula(4, &nat(12)).unwrap(), nat(18));
        assert_eq!(disj_t_formula(5, &nat(24)).unwrap(), nat(0));
    }

    #[test]
    fn wide_perms_use_slow_path() {
        let a = Perm::identity(9);
        let b = Perm::new(vec![2, 3, 4, 5, 6, 7, 8, 9, 1]).unwrap();
        let c = Perm::new(vec![3, 1, 2, 5, 4, 7, 6, 9, 8]).unwrap();
        let f = PermFamily::new(9, vec![a, b, c]).unwrap();
        assert_eq!(disj_perm_u64(&f), 2);
    }
}
