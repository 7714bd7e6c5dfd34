use crate::error::{cap, Result};
use crate::exactcomb::binom_u128;
use crate::setfam::{all_ksets, kneser_params};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityRow {
    pub s: usize,
    pub min_e: u64,
    pub min_e_complement: u64,
    /// S is a minimizer at size s exactly when V∖S is one at size N - s.
    pub complementary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub n: u32,
    pub k: u32,
    pub vertices: usize,
    pub degree: u64,
    pub edges: u64,
    /// e(V∖S) = e(G) - d|S| + e(S) for every S.
    pub identity_holds: bool,
    pub rows: Vec<DualityRow>,
    pub holds: bool,
}

pub const DUALITY_VERTEX_CAP: usize = 24;

/// Induced edge counts of KG(n,k) over every vertex subset.
pub fn duality_check(n: u32, k: u32) -> Result<DualityReport> {
    kneser_params(n as u64, k as u64)?;
    let verts = all_ksets(n, k);
    let nv = verts.len();
    if nv > DUALITY_VERTEX_CAP {
        return Err(cap("C(n,k) for subset sweep", nv, DUALITY_VERTEX_CAP));
    }
    let adj: Vec<u32> = verts
        .iter()
        .map(|a| verts.iter().enumerate().filter(|(_, b)| a.disjoint(**b)).fold(0u32, |m, (j, _)| m | 1 << j))
        .collect();
    let full = if nv == 32 { u32::MAX } else { (1u32 << nv) - 1 };
    let mut e = vec![0u32; 1usize << nv];
    for m in 1..=full as usize {
        let v = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        e[m] = e[rest] + (adj[v] & rest as u32).count_ones();
    }
    let degree = binom_u128((n - k) as u64, k as u64) as u64;
    let edges = e[full as usize] as u64;
    let mut min_e = vec![u64::MAX; nv + 1];
    let mut identity_holds = true;
    for m in 0..=full as usize {
        let size = (m as u32).count_ones() as usize;
        min_e[size] = min_e[size].min(e[m] as u64);
        let comp = full as usize & !m;
        identity_holds &= e[comp] as i64 == edges as i64 - degree as i64 * size as i64 + e[m] as i64;
    }
    let mut complementary = vec![true; nv + 1];
    for m in 0..=full as usize {
        let size = (m as u32).count_ones() as usize;
        let comp = full as usize & !m;
        let here = e[m] as u64 == min_e[size];
        let there = e[comp] as u64 == min_e[nv - size];
        complementary[size] &= here == there;
    }
    let rows: Vec<DualityRow> = (0..=nv)
        .map(|s| DualityRow { s, min_e: min_e[s], min_e_complement: min_e[nv - s], complementary: complementary[s] })
        .collect();
    let holds = identity_holds && rows.iter().all(|r| r.complementary);
    Ok(DualityReport { n, k, vertices: nv, degree, edges, identity_holds, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kg42() {
        let r = duality_check(4, 2).unwrap();
        assert_eq!((r.vertices, r.degree, r.edges), (6, 1, 3));
        assert_eq!(r.rows[4].min_e, 1);
        assert_eq!(r.rows[2].min_e, 0);
        assert!(r.holds);
        assert_eq!(r.rows[0].min_e_complement, 3);
    }

    #[test]
    fn kg52_sweep() {
        let r = duality_check(5, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.rows[4].min_e, 0);
        assert_eq!(r.rows[5].min_e, 2);
        assert!(duality_check(3, 2).is_err());
    }
}
