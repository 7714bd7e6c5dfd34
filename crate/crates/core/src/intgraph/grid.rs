use crate::error::{cap, Result};
use crate::permfam::{next_permutation, CosetSpec};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub const GRID_K1_CAP: u32 = 6;

/// Orbit key under row permutations, column permutations and transpose: the least
/// (over row orders and orientation) descending list of per-column row masks.
fn orbit_key(points: &[(u32, u32)]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for transpose in [false, true] {
        let pts: Vec<(u32, u32)> = points.iter().map(|&(i, j)| if transpose { (j, i) } else { (i, j) }).collect();
        let mut rows: Vec<u32> = pts.iter().map(|p| p.0).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut cols: Vec<u32> = pts.iter().map(|p| p.1).collect();
        cols.sort_unstable();
        cols.dedup();
        let cells: Vec<(usize, usize)> = pts
            .iter()
            .map(|&(i, j)| (rows.binary_search(&i).unwrap(), cols.binary_search(&j).unwrap()))
            .collect();
        let mut label: Vec<u32> = (0..rows.len() as u32).collect();
        loop {
            let mut masks = vec![0u8; cols.len()];
            for &(r, c) in &cells {
                masks[c] |= 1 << label[r];
            }
            masks.sort_unstable_by(|a, b| b.cmp(a));
            if best.as_ref().map_or(true, |b| masks < *b) {
                best = Some(masks);
            }
            if !next_permutation(&mut label) {
                break;
            }
        }
    }
    best.unwrap_or_default()
}

fn key_points(key: &[u8]) -> Vec<(u32, u32)> {
    let mut pts: Vec<(u32, u32)> = key
        .iter()
        .enumerate()
        .flat_map(|(c, &m)| (0..8u32).filter(move |r| m >> r & 1 == 1).map(move |r| (r + 1, c as u32 + 1)))
        .collect();
    pts.sort_unstable();
    pts
}

/// Representative of the orbit of a point set, with points sorted.
pub fn canonical_form(points: &[(u32, u32)]) -> Vec<(u32, u32)> {
    key_points(&orbit_key(points))
}

/// One representative per orbit of point sets of size 1..=k1_max, ordered by size then key.
pub fn enumerate_grid_graphs(k1_max: u32) -> Result<Vec<CosetSpec>> {
    if k1_max > GRID_K1_CAP {
        return Err(cap("k1_max for grid enumeration", k1_max, GRID_K1_CAP));
    }
    let mut out = Vec::new();
    if k1_max == 0 {
        return Ok(out);
    }
    let mut level: Vec<Vec<u8>> = vec![orbit_key(&[(1, 1)])];
    for size in 1..=k1_max {
        for key in &level {
            out.push(CosetSpec::new(k1_max, key_points(key))?);
        }
        if size == k1_max {
            break;
        }
        let next: BTreeMap<Vec<u8>, ()> = level
            .par_iter()
            .flat_map_iter(|key| {
                let pts = key_points(key);
                let mut keys = Vec::new();
                for i in 1..=k1_max {
                    for j in 1..=k1_max {
                        if !pts.contains(&(i, j)) {
                            let mut q = pts.clone();
                            q.push((i, j));
                            keys.push(orbit_key(&q));
                        }
                    }
                }
                keys
            })
            .map(|k| (k, ()))
            .collect();
        level = next.into_keys().collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permfam::all_perms;

    /// Orbit count of point sets of size 1..=m in [m]^2 by Burnside's lemma.
    fn burnside(m: u32) -> u64 {
        let cells = (m * m) as usize;
        let perms = all_perms(m);
        let mut fixed_total = 0u64;
        for s in &perms {
            for t in &perms {
                for transpose in [false, true] {
                    let img = |c: usize| {
                        let (i, j) = ((c / m as usize) as u32 + 1, (c % m as usize) as u32 + 1);
                        let (a, b) = if transpose { (s.at(j), t.at(i)) } else { (s.at(i), t.at(j)) };
                        ((a - 1) * m + (b - 1)) as usize
                    };
                    let mut seen = vec![false; cells];
                    let mut ways = vec![0u64; m as usize + 1];
                    ways[0] = 1;
                    for c in 0..cells {
                        if seen[c] {
                            continue;
                        }
                        let mut len = 0;
                        let mut x = c;
                        while !seen[x] {
                            seen[x] = true;
                            len += 1;
                            x = img(x);
                        }
                        for tot in (len..=m as usize).rev() {
                            ways[tot] += ways[tot - len];
                        }
                    }
                    fixed_total += ways[1..].iter().sum::<u64>();
                }
            }
        }
        fixed_total / (2 * perms.len() as u64 * perms.len() as u64)
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_grid_graphs(1).unwrap().len(), 1);
        let two = enumerate_grid_graphs(2).unwrap();
        assert_eq!(two.len(), 3);
        assert!(enumerate_grid_graphs(7).is_err());
        assert!(enumerate_grid_graphs(0).unwrap().is_empty());
    }

    #[test]
    fn counts_match_burnside() {
        for m in 1..=4 {
            assert_eq!(enumerate_grid_graphs(m).unwrap().len() as u64, burnside(m), "m={m}");
        }
    }

    #[test]
    fn full_scan_matches_extension_at_four() {
        let mut keys = std::collections::BTreeSet::new();
        for mask in 1u32..1 << 16 {
            if mask.count_ones() > 4 {
                continue;
            }
            let pts: Vec<(u32, u32)> = (0..16).filter(|b| mask >> b & 1 == 1).map(|b| (b / 4 + 1, b % 4 + 1)).collect();
            keys.insert(canonical_form(&pts));
        }
        let ext: std::collections::BTreeSet<Vec<(u32, u32)>> =
            enumerate_grid_graphs(4).unwrap().iter().map(|s| s.points().to_vec()).collect();
        assert_eq!(keys, ext);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = canonical_form(&[(1, 1), (2, 2), (1, 2)]);
        assert_eq!(canonical_form(&[(5, 3), (1, 4), (5, 4)]), a);
        assert_eq!(canonical_form(&[(2, 1), (1, 2), (2, 2)]), a);
        assert_eq!(canonical_form(&a), a);
    }
}
