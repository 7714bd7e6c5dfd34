use super::{all_ksets, KSet, SetFamily};
use crate::error::{range, Result};
use crate::exactcomb::{binom, nat_to_rat, BigNat, BigRat};
use num_bigint::BigInt;
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserParams {
    pub vertices: BigNat,
    pub degree: BigNat,
    pub lambda: BigNat,
}

pub fn kneser_params(m: u64, a: u64) -> Result<KneserParams> {
    if m < 2 * a {
        return Err(range("(m,a)", format!("Kneser graph needs m >= 2a, got m={m}, a={a}")));
    }
    let (m, a) = (m as i64, a as i64);
    Ok(KneserParams {
        vertices: binom(m, a),
        degree: binom(m - a, a),
        lambda: binom(m - a - 1, a - 1),
    })
}

pub fn kneser_vertices(m: u32, a: u32) -> Vec<KSet> {
    all_ksets(m, a)
}

/// Dense 0/1 adjacency over [`kneser_vertices`] order.
pub fn kneser_adjacency(m: u32, a: u32) -> Vec<Vec<f64>> {
    let v = kneser_vertices(m, a);
    v.iter()
        .map(|x| v.iter().map(|y| if x.disjoint(*y) { 1.0 } else { 0.0 }).collect())
        .collect()
}

#[derive(Debug, Clone)]
pub struct MixingGap {
    /// Ordered pairs (u,v), u in S, v in T, u and v disjoint.
    pub edges: BigNat,
    pub gap: BigRat,
    pub bound: f64,
    /// gap <= λ sqrt(|S||T|), decided exactly by squaring.
    pub holds: bool,
}

pub fn expander_mixing_gap(m: u32, a: u32, s: &SetFamily, t: &SetFamily) -> Result<MixingGap> {
    let p = kneser_params(m as u64, a as u64)?;
    for f in [s, t] {
        if f.n() != m || f.k() != a {
            return Err(range("family", format!("expected a-sets over [{m}] with a={a}")));
        }
    }
    let edges = super::disj_cross(s, t);
    let (ls, lt) = (BigInt::from(s.len()), BigInt::from(t.len()));
    let expected = nat_to_rat(&p.degree) * BigRat::from_integer(&ls * &lt) / nat_to_rat(&p.vertices);
    let gap = (nat_to_rat(&edges) - expected).abs();
    let lam = nat_to_rat(&p.lambda);
    let holds = &gap * &gap <= &lam * &lam * BigRat::from_integer(&ls * &lt);
    let bound = crate::exactcomb::rat_to_f64(&lam) * ((s.len() * t.len()) as f64).sqrt();
    Ok(MixingGap { edges, gap, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::symmetric_eigenvalues;
    use crate::exactcomb::{nat, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn params() {
        let p = kneser_params(5, 2).unwrap();
        assert_eq!((p.vertices, p.degree, p.lambda), (nat(10), nat(3), nat(2)));
        let p = kneser_params(4, 2).unwrap();
        assert_eq!((p.vertices, p.degree, p.lambda), (nat(6), nat(1), nat(1)));
        let p = kneser_params(6, 2).unwrap();
        assert_eq!((p.vertices, p.degree, p.lambda), (nat(15), nat(6), nat(3)));
        assert!(kneser_params(3, 2).is_err());
    }

    #[test]
    fn params_match_built_graph() {
        for (m, a) in [(4u32, 2u32), (5, 2), (6, 2), (7, 3), (7, 2)] {
            let adj = kneser_adjacency(m, a);
            let p = kneser_params(m as u64, a as u64).unwrap();
            assert_eq!(adj.len() as u64, p.vertices.to_u64_digits()[0]);
            let deg: f64 = adj[0].iter().sum();
            assert_eq!(deg as u64, p.degree.to_u64_digits()[0]);
            let ev = symmetric_eigenvalues(&adj);
            let d = deg;
            let mut rest: Vec<f64> = ev.clone();
            let top = rest.iter().cloned().fold(f64::MIN, f64::max);
            assert!((top - d).abs() < 1e-8);
            let pos = rest.iter().position(|&x| (x - d).abs() < 1e-8).unwrap();
            rest.remove(pos);
            let lam = rest.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let want = p.lambda.to_u64_digits().first().copied().unwrap_or(0) as f64;
            assert!((lam - want).abs() <= 1e-6 * want.max(1.0), "m={m} a={a}: {lam} vs {want}");
        }
    }

    #[test]
    fn mixing_examples() {
        let e = SetFamily::empty(5, 2);
        let g = expander_mixing_gap(5, 2, &e, &e).unwrap();
        assert_eq!(g.gap, rat(0, 1));
        assert!(g.holds);
        let star = SetFamily::star(5, 2, 1);
        let g = expander_mixing_gap(5, 2, &star, &star).unwrap();
        assert_eq!(g.edges, nat(0));
        assert_eq!(g.gap, rat(24, 5));
        assert_eq!(g.bound, 8.0);
        assert!(g.holds);
    }

    #[test]
    fn mixing_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, a) in [(5u32, 2u32), (6, 2)] {
            let v = kneser_vertices(m, a);
            for _ in 0..1000 {
                let ps: f64 = rng.gen();
                let pt: f64 = rng.gen();
                let s: Vec<KSet> = v.iter().copied().filter(|_| rng.gen_bool(ps)).collect();
                let t: Vec<KSet> = v.iter().copied().filter(|_| rng.gen_bool(pt)).collect();
                let s = SetFamily::new(m, a, s).unwrap();
                let t = SetFamily::new(m, a, t).unwrap();
                let mut count = 0u64;
                for x in s.members() {
                    for y in t.members() {
                        if x.0 & y.0 == 0 {
                            count += 1;
                        }
                    }
                }
                let g = expander_mixing_gap(m, a, &s, &t).unwrap();
                assert_eq!(g.edges, nat(count));
                assert!(g.holds);
            }
        }
    }
}
