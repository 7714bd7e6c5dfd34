//! Intersection graphs of coset unions: clique and P̄3 statistics, canonicality,
//! interval estimates for union sizes and disjoint-pair counts, and the
//! inequalities between k_1, k_2, k_3 checked over small grid configurations.

mod a5;
mod grid;
mod prop25;

pub use a5::{claim_a5_check, A5Check, Status};
pub use grid::{canonical_form, enumerate_grid_graphs, GRID_K1_CAP};
pub use prop25::{
    dichotomy_check, pi_profiles, prop25_containment, prop25_intervals, ContainmentCheck, DichotomyCheck, PiProfile,
    Prop25,
};

use crate::error::{invalid, range, Result};
use crate::exactcomb::{BigNat, BigRat};
use crate::permfam::CosetSpec;
use std::fmt;

/// Closed interval of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRat,
    pub hi: BigRat,
}

impl Interval {
    pub fn new(lo: BigRat, hi: BigRat) -> Result<Self> {
        if lo > hi {
            return Err(invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// center ± half_width, with a nonnegative half width.
    pub fn around(center: BigRat, half_width: BigRat) -> Self {
        let hw = if half_width < BigRat::from_integer(0.into()) { -half_width } else { half_width };
        Interval { lo: &center - &hw, hi: center + hw }
    }

    pub fn contains(&self, v: &BigRat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_nat(&self, v: &BigNat) -> bool {
        self.contains(&crate::exactcomb::nat_to_rat(v))
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Points of a coset spec, joined when they share neither a row nor a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGraph {
    points: Vec<(u32, u32)>,
    adj: Vec<u64>,
    k: [u64; 4],
    p3bar: u64,
}

pub const INTGRAPH_VERTEX_CAP: usize = 64;

pub fn build_intgraph(spec: &CosetSpec) -> Result<IntGraph> {
    IntGraph::from_points(spec.points().to_vec())
}

impl IntGraph {
    pub fn from_points(points: Vec<(u32, u32)>) -> Result<Self> {
        if points.len() > INTGRAPH_VERTEX_CAP {
            return Err(range("points", format!("{} > {INTGRAPH_VERTEX_CAP}", points.len())));
        }
        for (a, p) in points.iter().enumerate() {
            if points[..a].contains(p) {
                return Err(invalid(format!("duplicate point ({},{})", p.0, p.1)));
            }
        }
        let m = points.len();
        let mut adj = vec![0u64; m];
        for a in 0..m {
            for b in 0..m {
                if points[a].0 != points[b].0 && points[a].1 != points[b].1 {
                    adj[a] |= 1 << b;
                }
            }
        }
        let mut g = IntGraph { points, adj, k: [0; 4], p3bar: 0 };
        let counts = count_cliques(&g.adj, 4);
        g.k.copy_from_slice(&counts);
        g.p3bar = g.p3bar_scan();
        Ok(g)
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// k_t for t = 1..=4.
    pub fn k(&self, t: usize) -> u64 {
        self.k[t - 1]
    }

    pub fn p3bar(&self) -> u64 {
        self.p3bar
    }

    /// Triples (x, {y,z}) where yz is the only edge among x, y, z.
    fn p3bar_scan(&self) -> u64 {
        let m = self.v();
        let mut count = 0;
        for y in 0..m {
            for z in y + 1..m {
                if !self.adjacent(y, z) {
                    continue;
                }
                count += (0..m).filter(|&x| x != y && x != z && !self.adjacent(x, y) && !self.adjacent(x, z)).count()
                    as u64;
            }
        }
        count
    }

    /// The same count through the companions (y_1,z_2) and (z_1,y_2) of each edge yz.
    pub fn p3bar_grid(&self) -> u64 {
        let m = self.v();
        let mut count = 0;
        for y in 0..m {
            for z in y + 1..m {
                if self.adjacent(y, z) {
                    let (p, q) = (self.points[y], self.points[z]);
                    count += self.points.contains(&(p.0, q.1)) as u64;
                    count += self.points.contains(&(q.0, p.1)) as u64;
                }
            }
        }
        count
    }

    /// Some row or column holds at least k_1 - 1 of the points.
    pub fn is_canonical(&self) -> bool {
        let m = self.v();
        if m <= 2 {
            return true;
        }
        let line_max = self
            .points
            .iter()
            .map(|&(i, j)| {
                let row = self.points.iter().filter(|p| p.0 == i).count();
                let col = self.points.iter().filter(|p| p.1 == j).count();
                row.max(col)
            })
            .max()
            .unwrap_or(0);
        line_max + 1 >= m
    }
}

fn count_cliques(adj: &[u64], t_max: usize) -> Vec<u64> {
    fn extend(adj: &[u64], cands: u64, depth: usize, t_max: usize, out: &mut [u64]) {
        let mut c = cands;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            out[depth] += 1;
            if depth + 1 < t_max {
                // only later vertices, so each clique is counted once
                extend(adj, adj[v] & c, depth + 1, t_max, out);
            }
        }
    }
    let mut out = vec![0u64; t_max];
    if t_max == 0 || adj.is_empty() {
        return out;
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    extend(adj, all, 0, t_max, &mut out);
    out
}

/// k_1, ..., k_{t_max}.
pub fn clique_counts(g: &IntGraph, t_max: usize) -> Vec<BigNat> {
    count_cliques(&g.adj, t_max).into_iter().map(BigNat::from).collect()
}

pub fn p3bar_count(g: &IntGraph) -> BigNat {
    BigNat::from(g.p3bar)
}

pub fn is_canonical(g: &IntGraph) -> bool {
    g.is_canonical()
}
