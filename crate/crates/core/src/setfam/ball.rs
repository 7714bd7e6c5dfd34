use super::{lex_segment, KSet, LexIter, SetFamily};
use crate::error::{range, Result};
use crate::exactcomb::binom_u128;

#[derive(Debug, Clone)]
pub struct EllBall {
    pub family: SetFamily,
    pub r: u32,
    /// All sets with |F ∩ [r]| >= ℓ; contained in every completion.
    pub inner: SetFamily,
}

/// Sizes #{F : |F ∩ [r]| >= ℓ} for r = 0..=n.
pub fn ell_ball_layer_sizes(n: u32, k: u32, ell: u32) -> Vec<u128> {
    (0..=n)
        .map(|r| {
            (ell..=k)
                .map(|j| binom_u128(r as u64, j as u64).saturating_mul(binom_u128((n - r) as u64, (k - j) as u64)))
                .sum()
        })
        .collect()
}

/// ℓ-ball of size s: the inner ball for the largest r that fits, then the
/// boundary layer (|F ∩ [r]| = ℓ-1, r+1 ∈ F) in lex order.
pub fn ell_ball(n: u32, k: u32, ell: u32, s: u128) -> Result<EllBall> {
    if ell == 0 || ell > k || k > n || n > 64 {
        return Err(range("(n,k,ℓ)", format!("n={n}, k={k}, ℓ={ell}")));
    }
    let sizes = ell_ball_layer_sizes(n, k, ell);
    if s > sizes[n as usize] {
        return Err(range("s", format!("no ℓ-ball of size {s} in C([{n}],{k})")));
    }
    let r = (0..=n).rev().find(|&r| sizes[r as usize] <= s).unwrap_or(0);
    let prefix = if r == 0 { 0 } else { (1u64 << r) - 1 };
    let mut inner = Vec::new();
    let mut boundary = Vec::new();
    let need = (s - sizes[r as usize]) as usize;
    for set in LexIter::new(n, k) {
        let hits = (set.0 & prefix).count_ones();
        if hits >= ell {
            inner.push(set);
        } else if boundary.len() < need && hits == ell - 1 && r < n && set.contains(r + 1) {
            boundary.push(set);
        }
    }
    let inner = SetFamily::from_sorted(n, k, inner);
    let mut all: Vec<KSet> = inner.members().to_vec();
    all.extend(boundary);
    let family = SetFamily::new(n, k, all)?;
    debug_assert_eq!(family.len() as u128, s);
    Ok(EllBall { family, r, inner })
}

/// Star at 1 minus A = {1, 2k+1, ..., 3k-1}, plus every k-subset of {2, ..., 2k}, over [3k-1].
pub fn counterexample_family(k: u32) -> Result<SetFamily> {
    let n = 3 * k - 1;
    if k < 2 || n > 64 {
        return Err(range("k", format!("k={k} needs 2 <= k and 3k-1 <= 64")));
    }
    let mut a_elems = vec![1];
    a_elems.extend(2 * k + 1..=3 * k - 1);
    let a = KSet::from_elems(&a_elems);
    let block = ((1u64 << (2 * k)) - 1) & !1;
    let members = LexIter::new(n, k)
        .filter(|s| (s.contains(1) && *s != a) || s.0 & !block == 0)
        .collect();
    Ok(SetFamily::from_sorted(n, k, members))
}

/// The lex family of the same size, for side-by-side reports.
pub fn counterexample_lex(k: u32) -> Result<SetFamily> {
    let f = counterexample_family(k)?;
    lex_segment(f.n(), k, f.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::super::{disj_naive_u64, disj_zeta_u64};
    use super::*;

    #[test]
    fn one_ball_is_lex() {
        for n in 2..=9u32 {
            for k in 1..=3u32.min(n) {
                for s in 0..=binom_u128(n as u64, k as u64) {
                    let b = ell_ball(n, k, 1, s).unwrap();
                    assert_eq!(b.family, lex_segment(n, k, s).unwrap(), "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn small_two_ball() {
        let b = ell_ball(5, 2, 2, 3).unwrap();
        assert_eq!(b.r, 3);
        let want: Vec<KSet> = [[1, 2], [1, 3], [2, 3]].iter().map(|e| KSet::from_elems(e)).collect();
        assert_eq!(b.family.members(), &want[..]);
    }

    #[test]
    fn ball_sandwich_holds() {
        for ell in 1..=4u32 {
            for s in [0u128, 1, 17, 200, 840, 2002] {
                let b = ell_ball(14, 5, ell, s).unwrap();
                assert_eq!(b.family.len() as u128, s);
                let inner = (1u64 << b.r) - 1;
                let outer = (1u64 << (b.r + 1).min(14)) - 1;
                for m in b.family.members() {
                    assert!((m.0 & outer).count_ones() >= ell);
                }
                for m in LexIter::new(14, 5) {
                    if (m.0 & inner).count_ones() >= ell {
                        assert!(b.family.contains(m));
                    }
                }
            }
        }
        let b = ell_ball(14, 5, 2, 840).unwrap();
        assert_eq!(disj_zeta_u64(&b.family, 28).unwrap(), disj_naive_u64(&b.family));
    }

    #[test]
    fn counterexample_k5() {
        let f = counterexample_family(5).unwrap();
        assert_eq!(f.len(), 715 + 126 - 1);
        assert_eq!(disj_naive_u64(&f), 8694);
        assert_eq!(disj_zeta_u64(&f, 28).unwrap(), 8694);
        let l = counterexample_lex(5).unwrap();
        assert_eq!(disj_naive_u64(&l), 125 * 70);
    }
}
