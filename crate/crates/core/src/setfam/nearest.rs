use super::{LexIter, SetFamily};
use crate::error::{cap, Result};
use crate::exactcomb::{binom_u128, BigNat};

pub const NEAREST_CAP_DEFAULT: u128 = 1_000_000;

/// Exhaustive nearest union of ℓ stars under |F Δ S|; ties go to the lex-least centers.
pub fn nearest_star_union(f: &SetFamily, ell: u32, center_cap: u128) -> Result<(Vec<u32>, BigNat)> {
    let (n, k) = (f.n(), f.k());
    let choices = binom_u128(n as u64, ell as u64);
    if ell > 3 && choices > center_cap {
        return Err(cap("center sets C(n,ℓ)", choices, center_cap));
    }
    let union_size = binom_u128(n as u64, k as u64) - binom_u128((n - ell.min(n)) as u64, k as u64);
    let masks = f.masks();
    let mut best: Option<(u128, u64)> = None;
    for centers in LexIter::new(n, ell) {
        let inside = masks.iter().filter(|&&m| m & centers.0 != 0).count() as u128;
        let dist = f.len() as u128 + union_size - 2 * inside;
        if best.map_or(true, |(d, _)| dist < d) {
            best = Some((dist, centers.0));
        }
    }
    let (dist, centers) = best.unwrap_or((f.len() as u128, 0));
    Ok((super::KSet(centers).elems(), BigNat::from(dist)))
}

#[cfg(test)]
mod tests {
    use super::super::{lex_segment, KSet};
    use super::*;
    use crate::exactcomb::nat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let star = SetFamily::star(6, 3, 1);
        assert_eq!(nearest_star_union(&star, 1, 100).unwrap(), (vec![1], nat(0)));
        let l = lex_segment(6, 2, 9).unwrap();
        assert_eq!(nearest_star_union(&l, 2, 100).unwrap(), (vec![1, 2], nat(0)));
    }

    #[test]
    fn matches_explicit_union_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(4..=8u32);
            let k = rng.gen_range(1..=3u32);
            let ell = rng.gen_range(1..=3u32);
            let members: Vec<KSet> = LexIter::new(n, k).filter(|_| rng.gen_bool(0.4)).collect();
            let f = SetFamily::new(n, k, members).unwrap();
            let mut best: Option<(usize, Vec<u32>)> = None;
            for c in LexIter::new(n, ell) {
                let mut u = SetFamily::empty(n, k);
                for e in c.elems() {
                    u = u.union(&SetFamily::star(n, k, e));
                }
                let d = f.symmetric_difference_size(&u);
                if best.as_ref().map_or(true, |(b, _)| d < *b) {
                    best = Some((d, c.elems()));
                }
            }
            let (d, c) = best.unwrap();
            assert_eq!(nearest_star_union(&f, ell, 1000).unwrap(), (c, nat(d as u64)));
        }
    }
}
