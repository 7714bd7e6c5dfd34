//! Matchings, shadows, maximal families and the counting estimates built on them.

mod families;
mod typicality;

pub use families::{
    bollobas_witnesses, closure_i, count_no_matching_families, enumerate_maximal_families, is_maximal,
    minimal_generating, FAMILY_CAP_DEFAULT, KNESER_VERTEX_CAP,
};
pub use typicality::{typicality_report, TypicalityReport};

use crate::error::{invalid, range, Result};
use crate::exactcomb::{binom, gen_binom, lovasz_root, rat_to_f64, BigNat, BigRat};
use crate::setfam::{KSet, SetFamily};
use std::collections::BTreeSet;

/// All s-subsets of a mask, as masks.
pub(crate) fn subsets_of_size(mask: u64, s: u32, out: &mut Vec<u64>) {
    fn rec(rest: u64, need: u32, acc: u64, out: &mut Vec<u64>) {
        if need == 0 {
            out.push(acc);
            return;
        }
        if rest.count_ones() < need {
            return;
        }
        let low = rest & rest.wrapping_neg();
        rec(rest ^ low, need - 1, acc | low, out);
        rec(rest ^ low, need, acc, out);
    }
    rec(mask, s, 0, out);
}

/// The s-shadow: every s-set contained in a member of F.
pub fn shadow(f: &SetFamily, s: u32) -> Result<SetFamily> {
    if s > f.k() {
        return Err(range("s", format!("shadow level {s} above k={}", f.k())));
    }
    let mut seen = BTreeSet::new();
    let mut buf = Vec::new();
    for m in f.members() {
        buf.clear();
        subsets_of_size(m.0, s, &mut buf);
        seen.extend(buf.iter().copied());
    }
    SetFamily::new(f.n(), s, seen.into_iter().map(KSet).collect())
}

/// C(x,s) with C(x,r) = t; a rigorous lower bound using the low end of the root bracket.
pub fn kk_lower_bound_exact(t: &BigNat, r: u32, s: u32) -> BigRat {
    gen_binom(&lovasz_root(t, r).lo, s)
}

pub fn kk_lower_bound(t: &BigNat, r: u32, s: u32) -> f64 {
    rat_to_f64(&kk_lower_bound_exact(t, r, s))
}

pub fn hilton_milner_bound(n: u64, k: u64) -> Result<BigNat> {
    if k < 2 || n < 2 * k + 1 {
        return Err(range("(n,k)", format!("needs k >= 2 and n >= 2k+1, got n={n}, k={k}")));
    }
    let (n, k) = (n as i64, k as i64);
    Ok(binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1u32)
}

/// Size of the largest pairwise-disjoint subfamily; stops early once `target` is reached.
pub(crate) fn max_matching_masks(masks: &[u64], target: usize) -> usize {
    fn rec(cands: &[u64], depth: usize, best: &mut usize, target: usize) {
        if *best >= target || depth + cands.len() <= *best {
            return;
        }
        let Some((&first, rest)) = cands.split_first() else {
            *best = (*best).max(depth);
            return;
        };
        let with: Vec<u64> = rest.iter().copied().filter(|&m| m & first == 0).collect();
        rec(&with, depth + 1, best, target);
        rec(rest, depth, best, target);
        *best = (*best).max(depth);
    }
    let mut best = 0;
    rec(masks, 0, &mut best, target);
    best.min(target)
}

/// A pairwise-disjoint subfamily of exactly `size` members, if one exists.
pub(crate) fn find_matching(masks: &[u64], size: usize) -> Option<Vec<u64>> {
    fn rec(cands: &[u64], need: usize, acc: &mut Vec<u64>) -> bool {
        if need == 0 {
            return true;
        }
        if cands.len() < need {
            return false;
        }
        for (i, &c) in cands.iter().enumerate() {
            let rest: Vec<u64> = cands[i + 1..].iter().copied().filter(|&m| m & c == 0).collect();
            acc.push(c);
            if rec(&rest, need - 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    rec(masks, size, &mut acc).then_some(acc)
}

pub fn max_matching_size(f: &SetFamily) -> usize {
    let cap = if f.k() == 0 { f.len() } else { (f.n() / f.k()) as usize };
    max_matching_masks(&f.masks(), cap.min(f.len()))
}

/// Pairs (A_i, B_i) as element masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPairSystem {
    pub pairs: Vec<(KSet, KSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BollobasCheck {
    pub valid: bool,
    pub m: usize,
    pub bound: BigNat,
}

pub fn bollobas_check(p: &SetPairSystem) -> Result<BollobasCheck> {
    let Some(&(a0, b0)) = p.pairs.first() else {
        return Ok(BollobasCheck { valid: true, m: 0, bound: BigNat::from(1u32) });
    };
    let (a, b) = (a0.len(), b0.len());
    if p.pairs.iter().any(|(x, y)| x.len() != a || y.len() != b) {
        return Err(invalid("set-pair system must have uniform sizes |A_i| = a, |B_i| = b"));
    }
    let m = p.pairs.len();
    let valid = (0..m).all(|i| {
        p.pairs[i].0.disjoint(p.pairs[i].1)
            && (0..m).all(|j| i == j || !p.pairs[i].0.disjoint(p.pairs[j].1))
    });
    Ok(BollobasCheck { valid, m, bound: binom((a + b) as i64, a as i64) })
}

/// Star center minimizing |F Δ S|, least center on ties.
pub fn nearest_star_center(f: &SetFamily) -> u32 {
    let star_size = binom(f.n() as i64 - 1, f.k() as i64 - 1);
    let star_size: u128 = star_size.try_into().unwrap_or(u128::MAX);
    let mut best = (u128::MAX, 1);
    for c in 1..=f.n() {
        let inside = f.members().iter().filter(|m| m.contains(c)).count() as u128;
        let dist = f.len() as u128 + star_size - 2 * inside;
        if dist < best.0 {
            best = (dist, c);
        }
    }
    best.1
}

fn swap_elements(m: u64, a: u32, b: u32) -> u64 {
    let (ba, bb) = (1u64 << (a - 1), 1u64 << (b - 1));
    let mut out = m & !(ba | bb);
    if m & ba != 0 {
        out |= bb;
    }
    if m & bb != 0 {
        out |= ba;
    }
    out
}

#[derive(Debug, Clone)]
pub struct PqShadow {
    pub center: u32,
    pub p: SetFamily,
    pub q: SetFamily,
    pub shadow_p: SetFamily,
    pub holds: bool,
}

/// With the nearest star's center moved to n, compares ∂^(k-1) P against Q.
pub fn pq_shadow_check(f: &SetFamily) -> Result<PqShadow> {
    let (n, k) = (f.n(), f.k());
    if k == 0 || !f.is_intersecting() || !is_maximal(f, 2) {
        return Err(invalid("pq_shadow_check needs a maximal intersecting family"));
    }
    let center = nearest_star_center(f);
    let relabeled: Vec<KSet> = f.members().iter().map(|m| KSet(swap_elements(m.0, center, n))).collect();
    let g = SetFamily::new(n, k, relabeled)?;
    let star = SetFamily::star(n, k, n);
    let low = crate::setfam::full_mask(n - 1);
    let p_members: Vec<KSet> = g.difference(&star).members().iter().map(|a| KSet(low & !a.0)).collect();
    let q_members: Vec<KSet> = star.difference(&g).members().iter().map(|b| KSet(b.0 & low)).collect();
    let p = SetFamily::new(n, (n - 1).saturating_sub(k), p_members)?;
    let q = SetFamily::new(n, k - 1, q_members)?;
    let shadow_p = if p.k() >= k - 1 { shadow(&p, k - 1)? } else { SetFamily::empty(n, k - 1) };
    let holds = shadow_p == q;
    Ok(PqShadow { center, p, q, shadow_p, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::{nat, nat_to_rat};
    use crate::setfam::{lex_segment, LexIter};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fam(n: u32, k: u32, v: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, k, v.iter().map(|e| KSet::from_elems(e)).collect()).unwrap()
    }

    #[test]
    fn shadow_examples() {
        let f = fam(4, 3, &[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(shadow(&f, 2).unwrap().len(), 5);
        assert_eq!(shadow(&f, 3).unwrap(), f);
    }

    #[test]
    fn kk_examples() {
        assert!((kk_lower_bound(&binom(5, 3), 3, 2) - 10.0).abs() < 1e-9);
        assert!((kk_lower_bound(&nat(1), 4, 2) - 6.0).abs() < 1e-9);
        let x = kk_lower_bound(&nat(7), 2, 1);
        assert!((x - 4.2749).abs() < 1e-4);
        // any 7 edges span at least 5 vertices
        assert!(x.ceil() == 5.0);
    }

    #[test]
    fn kruskal_katona_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(3..=12u32);
            let k = rng.gen_range(1..=n.min(5));
            let p: f64 = rng.gen_range(0.01..0.5);
            let mut members: Vec<KSet> = LexIter::new(n, k).filter(|_| rng.gen_bool(p)).collect();
            if members.is_empty() {
                members.push(KSet::from_elems(&(1..=k).collect::<Vec<_>>()));
            }
            let f = SetFamily::new(n, k, members).unwrap();
            for s in 1..=k {
                let sh = shadow(&f, s).unwrap();
                let lb = kk_lower_bound_exact(&nat(f.len() as u64), k, s);
                assert!(nat_to_rat(&nat(sh.len() as u64)) >= lb, "n={n} k={k} s={s}");
            }
        }
    }

    #[test]
    fn hilton_milner_values() {
        assert_eq!(hilton_milner_bound(7, 3).unwrap(), nat(13));
        assert_eq!(hilton_milner_bound(5, 2).unwrap(), nat(3));
        for k in 2..=8u64 {
            let want = binom(2 * k as i64, k as i64 - 1) - binom(k as i64, k as i64 - 1) + 1u32;
            assert_eq!(hilton_milner_bound(2 * k + 1, k).unwrap(), want);
        }
        assert!(hilton_milner_bound(6, 3).is_err());
    }

    fn brute_matching(f: &SetFamily) -> usize {
        let m = f.masks();
        let mut best = 0;
        for sub in 0u32..(1 << m.len()) {
            let chosen: Vec<u64> = (0..m.len()).filter(|i| sub >> i & 1 == 1).map(|i| m[i]).collect();
            let ok = (0..chosen.len()).all(|i| (i + 1..chosen.len()).all(|j| chosen[i] & chosen[j] == 0));
            if ok {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn matching_sizes() {
        assert_eq!(max_matching_size(&fam(6, 2, &[&[1, 2], &[3, 4], &[5, 6]])), 3);
        assert_eq!(max_matching_size(&SetFamily::star(7, 3, 4)), 1);
        let l = lex_segment(8, 2, 13).unwrap();
        assert_eq!(max_matching_size(&l), brute_matching(&l));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let members: Vec<KSet> = LexIter::new(7, 2).filter(|_| rng.gen_bool(0.3)).collect();
            let f = SetFamily::new(7, 2, members).unwrap();
            if f.len() <= 14 {
                assert_eq!(max_matching_size(&f), brute_matching(&f));
            }
        }
    }

    #[test]
    fn bollobas_examples() {
        let p = SetPairSystem {
            pairs: vec![(KSet::from_elems(&[1]), KSet::from_elems(&[2])), (KSet::from_elems(&[2]), KSet::from_elems(&[1]))],
        };
        let c = bollobas_check(&p).unwrap();
        assert!(c.valid && c.m == 2 && c.bound == nat(2));
        let single = SetPairSystem { pairs: vec![(KSet::from_elems(&[1, 2]), KSet::from_elems(&[3]))] };
        let c = bollobas_check(&single).unwrap();
        assert!(c.valid && c.m == 1 && c.bound == nat(3));
        let bad = SetPairSystem {
            pairs: vec![(KSet::from_elems(&[1, 2]), KSet::from_elems(&[3])), (KSet::from_elems(&[1]), KSet::from_elems(&[3]))],
        };
        assert!(bollobas_check(&bad).is_err());
    }

    #[test]
    fn pq_examples() {
        let star = SetFamily::star(6, 3, 2);
        let r = pq_shadow_check(&star).unwrap();
        assert!(r.holds && r.p.is_empty() && r.q.is_empty());
        let tri = fam(5, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(pq_shadow_check(&tri).unwrap().holds);
        assert!(pq_shadow_check(&fam(5, 2, &[&[1, 2], &[1, 3]])).is_err());
    }
}
