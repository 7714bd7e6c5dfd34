use super::{check_perm_cap, next_permutation, Perm, PermFamily};
use crate::error::{invalid, range, Result};

/// Distinct grid points (i,j) naming the cosets T_(i,j) = {σ : σ(i) = j}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetSpec {
    n: u32,
    points: Vec<(u32, u32)>,
}

impl CosetSpec {
    pub fn new(n: u32, points: Vec<(u32, u32)>) -> Result<Self> {
        for (idx, &(i, j)) in points.iter().enumerate() {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(range("point", format!("({i},{j}) outside [{n}]^2")));
            }
            if points[..idx].contains(&(i, j)) {
                return Err(invalid(format!("duplicate point ({i},{j})")));
            }
        }
        Ok(CosetSpec { n, points })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        CosetSpec::new(n, self.points.clone())
    }

    /// Nonempty cliques as index lists, ordered by size then lexicographically.
    pub fn clique_indices(&self) -> Vec<Vec<usize>> {
        fn extend(pts: &[(u32, u32)], cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
            for v in start..pts.len() {
                let (i, j) = pts[v];
                if cur.iter().all(|&u| pts[u].0 != i && pts[u].1 != j) {
                    cur.push(v);
                    out.push(cur.clone());
                    extend(pts, cur, v + 1, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(&self.points, &mut Vec::new(), 0, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn cliques(&self) -> Vec<CliqueLabel> {
        self.clique_indices()
            .into_iter()
            .map(|c| CliqueLabel { points: c.iter().map(|&v| self.points[v]).collect() })
            .collect()
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.points.iter().any(|&(i, j)| p.at(i) == j)
    }
}

/// Points with pairwise distinct rows and pairwise distinct columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliqueLabel {
    points: Vec<(u32, u32)>,
}

impl CliqueLabel {
    pub fn new(points: Vec<(u32, u32)>) -> Result<Self> {
        for (a, &(i, j)) in points.iter().enumerate() {
            if i == 0 || j == 0 {
                return Err(range("point", "coordinates are 1-based"));
            }
            if points[..a].iter().any(|&(x, y)| x == i || y == j) {
                return Err(invalid(format!("({i},{j}) shares a row or column with an earlier point")));
            }
        }
        Ok(CliqueLabel { points })
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_subset_of(&self, other: &CliqueLabel) -> bool {
        self.points.iter().all(|p| other.points.contains(p))
    }

    pub(crate) fn max_coord(&self) -> u32 {
        self.points.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
    }
}

pub fn coset_members(n: u32, i: u32, j: u32, perm_cap: u32) -> Result<PermFamily> {
    union_members(&CosetSpec::new(n, vec![(i, j)])?, perm_cap)
}

pub fn union_members(spec: &CosetSpec, perm_cap: u32) -> Result<PermFamily> {
    check_perm_cap(spec.n(), perm_cap)?;
    let mut p: Vec<u32> = (1..=spec.n()).collect();
    let mut out = Vec::new();
    loop {
        if spec.points.iter().any(|&(i, j)| p[i as usize - 1] == j) {
            out.push(Perm { image: p.clone() });
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    Ok(PermFamily::from_sorted(spec.n(), out))
}
