use super::{full_mask, SetFamily};
use crate::error::{cap, Result};
use crate::exactcomb::BigNat;
use rayon::prelude::*;

pub const ZETA_CAP_DEFAULT: u32 = 28;

pub fn disj_naive_u64(f: &SetFamily) -> u64 {
    let m = f.masks();
    (0..m.len())
        .into_par_iter()
        .map(|i| {
            let a = m[i];
            m[i + 1..].iter().filter(|&&b| a & b == 0).count() as u64
        })
        .sum()
}

/// Unordered disjoint pairs by pairwise tests.
pub fn disj_naive(f: &SetFamily) -> BigNat {
    BigNat::from(disj_naive_u64(f))
}

/// Ordered cross count: pairs (A,B) in F x G with A, B disjoint.
pub fn disj_cross(f: &SetFamily, g: &SetFamily) -> BigNat {
    let gm = g.masks();
    let c: u64 = f
        .members()
        .par_iter()
        .map(|a| gm.iter().filter(|&&b| a.0 & b == 0).count() as u64)
        .sum();
    BigNat::from(c)
}

pub fn disj_zeta_u64(f: &SetFamily, n_cap: u32) -> Result<u64> {
    let n = f.n();
    if n > n_cap {
        return Err(cap("n for the subset-sum transform", n, n_cap));
    }
    let size = 1usize << n;
    let mut g = vec![0u32; size];
    for m in f.members() {
        g[m.0 as usize] += 1;
    }
    for bit in 0..n {
        let step = 1usize << bit;
        for m in 0..size {
            if m & step != 0 {
                g[m] += g[m ^ step];
            }
        }
    }
    let full = full_mask(n);
    let twice: u64 = f.members().iter().map(|a| g[(full ^ a.0) as usize] as u64).sum();
    Ok(twice / 2)
}

/// Same value as [`disj_naive`], via g[m] = #{A in F : A ⊆ m}.
pub fn disj_zeta(f: &SetFamily, n_cap: u32) -> Result<BigNat> {
    disj_zeta_u64(f, n_cap).map(BigNat::from)
}

#[cfg(test)]
mod tests {
    use super::super::{lex_segment, KSet, LexIter};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tiny_family() {
        let f = SetFamily::new(4, 2, vec![
            KSet::from_elems(&[1, 2]),
            KSet::from_elems(&[3, 4]),
            KSet::from_elems(&[1, 3]),
        ])
        .unwrap();
        assert_eq!(disj_naive_u64(&f), 1);
        assert_eq!(disj_zeta_u64(&f, 28).unwrap(), 1);
        assert_eq!(disj_naive_u64(&SetFamily::star(7, 3, 2)), 0);
        assert_eq!(disj_naive_u64(&lex_segment(6, 2, 9).unwrap()), 12);
    }

    #[test]
    fn zeta_matches_naive_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = rng.gen_range(2..=14u32);
            let k = rng.gen_range(1..=n.min(5));
            let p: f64 = rng.gen_range(0.05..0.9);
            let members: Vec<KSet> = LexIter::new(n, k).filter(|_| rng.gen_bool(p)).collect();
            let f = SetFamily::new(n, k, members).unwrap();
            assert_eq!(disj_zeta_u64(&f, 28).unwrap(), disj_naive_u64(&f), "trial {trial}");
        }
    }

    #[test]
    fn zeta_cap_enforced() {
        let f = SetFamily::empty(30, 2);
        assert!(disj_zeta_u64(&f, 28).is_err());
    }
}
