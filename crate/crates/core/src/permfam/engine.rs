//! Exact inclusion–exclusion counts over unions of cosets, valid at any n.

use super::{CliqueLabel, CosetSpec, Perm};
use crate::error::{cap, invalid, range, Result};
use crate::exactcomb::{factorials, BigNat};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Spec-size cap for the clique-pair sum.
pub const WITHIN_UNION_CAP: usize = 12;

/// Factorials up to n and a cache of the alternating sums.
pub struct Engine {
    n: u32,
    fact: Vec<BigNat>,
    alt: Mutex<HashMap<(u32, u32), BigInt>>,
}

impl Engine {
    pub fn new(n: u32) -> Self {
        Engine { n, fact: factorials(n as usize), alt: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn factorial(&self, m: u32) -> &BigNat {
        &self.fact[m as usize]
    }

    fn falling(&self, x: i64, len: i64) -> BigNat {
        if len < 0 || x < len {
            return BigNat::zero();
        }
        &self.fact[x as usize] / &self.fact[(x - len) as usize]
    }

    /// Σ_{i=0}^{m} (-1)^i C(m,i) (N-i)!: permutations of N symbols avoiding m fixed
    /// position/value pairs that form a partial matching.
    pub fn alt_sum(&self, big_n: u32, m: u32) -> BigInt {
        assert!(m <= big_n && big_n <= self.n);
        if let Some(v) = self.alt.lock().expect("cache lock").get(&(big_n, m)) {
            return v.clone();
        }
        let mut term = BigInt::from(self.fact[big_n as usize].clone());
        let mut acc = BigInt::zero();
        for i in 0..=m {
            if i % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
            if i < m {
                term *= m - i;
                term /= (i + 1) as u64 * (big_n - i) as u64;
            }
        }
        self.alt.lock().expect("cache lock").insert((big_n, m), acc.clone());
        acc
    }

    fn check_point_range(&self, x: &CliqueLabel) -> Result<()> {
        if x.max_coord() > self.n {
            return Err(range("clique", format!("point outside [{}]^2", self.n)));
        }
        Ok(())
    }

    /// |∩_{x∈X} T_x| = (n - |X|)!.
    pub fn intersection_size(&self, x: &CliqueLabel) -> Result<BigNat> {
        self.check_point_range(x)?;
        if x.len() > self.n as usize {
            return Err(invalid("clique larger than n"));
        }
        Ok(self.fact[self.n as usize - x.len()].clone())
    }

    /// #{σ ∈ ∩X : σ disjoint from π}, for π outside every coset of X.
    pub fn disj_to_clique(&self, pi: &Perm, x: &CliqueLabel) -> Result<BigNat> {
        self.check_point_range(x)?;
        if pi.n() != self.n {
            return Err(invalid("permutation size does not match engine n"));
        }
        if x.points().iter().any(|&(i, j)| pi.at(i) == j) {
            return Err(invalid(format!("{pi} lies in a coset of the clique")));
        }
        let ell = x.len() as u32;
        let hits = x.points().iter().filter(|&&(i, _)| x.points().iter().any(|&(_, j)| pi.at(i) == j)).count() as u32;
        let c = ell - hits;
        let v = self.alt_sum(self.n - ell, self.n - ell - c);
        Ok(v.to_biguint().expect("count is nonnegative"))
    }

    fn signed_to_clique(&self, pi: &Perm, x: &CliqueLabel) -> BigInt {
        let v = BigInt::from(self.disj_to_clique(pi, x).expect("checked by caller"));
        if x.len() % 2 == 1 {
            v
        } else {
            -v
        }
    }

    /// Full inclusion–exclusion over the cliques of the spec.
    pub fn disj_to_union(&self, pi: &Perm, spec: &CosetSpec) -> Result<BigNat> {
        let v = self.disj_to_union_truncated(pi, spec, usize::MAX)?;
        v.to_biguint().ok_or_else(|| invalid("negative union count"))
    }

    /// The same sum restricted to cliques of size <= max_size (a Bonferroni bound).
    pub fn disj_to_union_truncated(&self, pi: &Perm, spec: &CosetSpec, max_size: usize) -> Result<BigInt> {
        if spec.n() != self.n || pi.n() != self.n {
            return Err(invalid("size mismatch between engine, spec and permutation"));
        }
        if spec.contains_perm(pi) {
            return Err(invalid(format!("{pi} lies in the union")));
        }
        Ok(spec
            .cliques()
            .iter()
            .filter(|x| x.len() <= max_size)
            .map(|x| self.signed_to_clique(pi, x))
            .sum())
    }

    /// Ordered pairs (σ, π) with σ ∈ ∩X, π ∈ ∩Y and σ, π disjoint.
    ///
    /// For fixed σ the π-count is alt_sum(n-|Y|, n-|Y|-c) where c counts the Y rows
    /// whose σ-value misses J_Y, so σ ranges over ∩X split by which free Y rows land in J_Y.
    pub fn cross_clique_disj(&self, x: &CliqueLabel, y: &CliqueLabel) -> Result<BigNat> {
        self.check_point_range(x)?;
        self.check_point_range(y)?;
        let n = self.n as i64;
        let xs = x.points();
        let ys = y.points();
        let jy: Vec<u32> = ys.iter().map(|p| p.1).collect();
        let jx: Vec<u32> = xs.iter().map(|p| p.1).collect();
        let mut fixed_hits = 0u32;
        let mut free_rows: Vec<bool> = Vec::new(); // per free Y row: is j_y a free value?
        for &(i, j) in ys {
            match xs.iter().find(|p| p.0 == i) {
                Some(&(_, v)) if v == j => return Ok(BigNat::zero()),
                Some(&(_, v)) => fixed_hits += jy.contains(&v) as u32,
                None => free_rows.push(!jx.contains(&j)),
            }
        }
        let big_n = n - xs.len() as i64;
        let w = jy.iter().filter(|j| !jx.contains(j)).count() as i64;
        let q = free_rows.len();
        let ly = ys.len() as u32;
        let mut total = BigInt::zero();
        for h in 0u32..(1 << q) {
            let size = h.count_ones() as i64;
            let phi = (0..q).filter(|&b| h >> b & 1 == 1 && free_rows[b]).count() as i64;
            // injections H -> W avoiding the φ forbidden pairs
            let mut into_w = BigInt::zero();
            let mut binom_phi = BigInt::one();
            for t in 0..=phi.min(size) {
                let term = binom_phi.clone() * BigInt::from(self.falling(w - t, size - t));
                if t % 2 == 0 {
                    into_w += term;
                } else {
                    into_w -= term;
                }
                binom_phi = binom_phi * (phi - t) / (t + 1);
            }
            if into_w.is_zero() {
                continue;
            }
            let rest = (q as i64) - size;
            let outside = BigInt::from(self.falling(big_n - w, rest));
            if outside.is_zero() {
                continue;
            }
            let tail = BigInt::from(self.fact[(big_n - q as i64) as usize].clone());
            let count = into_w * outside * tail;
            let m = size as u32 + fixed_hits;
            let c = ly - m;
            let free = self.n - ly;
            total += count * self.alt_sum(free, free - c);
        }
        Ok(total.to_biguint().expect("count is nonnegative"))
    }

    /// Unordered disjoint pairs inside the union, by inclusion–exclusion on both members.
    pub fn disj_within_union(&self, spec: &CosetSpec) -> Result<BigNat> {
        if spec.len() > WITHIN_UNION_CAP {
            return Err(cap("coset spec size", spec.len(), WITHIN_UNION_CAP));
        }
        if spec.n() != self.n {
            return Err(invalid("spec n does not match engine n"));
        }
        let cl = spec.cliques();
        let mut ordered = BigInt::zero();
        for a in &cl {
            for b in &cl {
                let v = BigInt::from(self.cross_clique_disj(a, b)?);
                if (a.len() + b.len()) % 2 == 0 {
                    ordered += v;
                } else {
                    ordered -= v;
                }
            }
        }
        let (sign, mag) = ordered.into_parts();
        if sign == Sign::Minus {
            return Err(invalid("negative pair count"));
        }
        Ok(mag / 2u32)
    }

    pub fn union_size(&self, spec: &CosetSpec) -> BigNat {
        let mut acc = BigInt::zero();
        for x in spec.cliques() {
            let v = BigInt::from(self.fact[self.n as usize - x.len()].clone());
            if x.len() % 2 == 1 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc.to_biguint().expect("union size is nonnegative")
    }

    /// |M_X|: permutations whose set of containing cosets is exactly X.
    pub fn mx_class_size(&self, spec: &CosetSpec, x: &CliqueLabel) -> Result<BigNat> {
        if x.points().iter().any(|p| !spec.points().contains(p)) {
            return Err(invalid("X is not a subset of the spec"));
        }
        let mut acc = BigInt::zero();
        for y in spec.cliques() {
            if !x.is_subset_of(&y) {
                continue;
            }
            let v = BigInt::from(self.fact[self.n as usize - y.len()].clone());
            if (y.len() - x.len()) % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc.to_biguint().ok_or_else(|| invalid("negative class size"))
    }
}

pub fn exact_intersection_size(x: &CliqueLabel, n: u32) -> Result<BigNat> {
    Engine::new(n).intersection_size(x)
}

pub fn exact_disj_to_clique(pi: &Perm, x: &CliqueLabel) -> Result<BigNat> {
    Engine::new(pi.n()).disj_to_clique(pi, x)
}

pub fn exact_disj_to_union(pi: &Perm, spec: &CosetSpec) -> Result<BigNat> {
    Engine::new(spec.n()).disj_to_union(pi, spec)
}

pub fn exact_cross_clique_disj(x: &CliqueLabel, y: &CliqueLabel, n: u32) -> Result<BigNat> {
    Engine::new(n).cross_clique_disj(x, y)
}

pub fn exact_disj_within_union(spec: &CosetSpec) -> Result<BigNat> {
    Engine::new(spec.n()).disj_within_union(spec)
}

pub fn mx_class_size(spec: &CosetSpec, x: &CliqueLabel) -> Result<BigNat> {
    Engine::new(spec.n()).mx_class_size(spec, x)
}
