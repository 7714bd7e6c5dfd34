use super::IntGraph;
use crate::permfam::next_permutation;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Exempt,
    NotApplicable,
    Violated,
}

impl Status {
    pub fn is_violation(self) -> bool {
        self == Status::Violated
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Exempt => "exempt",
            Status::NotApplicable => "n/a",
            Status::Violated => "VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A5Check {
    pub i: Status,
    pub ii: Status,
    pub iii: Status,
    /// (III) with 1/12 in place of 1/50; reported, not required.
    pub iii_twelfth: Status,
    /// k_2(k_2 - k_1 + 1) + i(P̄3) - k_3.
    pub excess: i64,
    pub exceptional: Option<&'static str>,
}

impl A5Check {
    pub fn violated(&self) -> bool {
        self.i.is_violation() || self.ii.is_violation() || self.iii.is_violation()
    }
}

const EXCEPTIONAL: [(&str, usize, &[(usize, usize)]); 4] = [
    ("2K2", 4, &[(0, 1), (2, 3)]),
    ("P4", 4, &[(0, 1), (1, 2), (2, 3)]),
    ("P5", 5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
    ("C4+K1", 5, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
];

fn isomorphic_to(g: &IntGraph, v: usize, edges: &[(usize, usize)]) -> bool {
    if g.v() != v || g.k(2) != edges.len() as u64 {
        return false;
    }
    let mut adj = vec![0u64; v];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut map: Vec<u32> = (0..v as u32).collect();
    loop {
        let ok = (0..v).all(|a| (0..v).all(|b| g.adjacent(a, b) == (adj[map[a] as usize] >> map[b] & 1 == 1)));
        if ok {
            return true;
        }
        if !next_permutation(&mut map) {
            return false;
        }
    }
}

fn exceptional_name(g: &IntGraph) -> Option<&'static str> {
    EXCEPTIONAL.iter().find(|(_, v, e)| isomorphic_to(g, *v, e)).map(|(name, _, _)| *name)
}

pub fn claim_a5_check(g: &IntGraph) -> A5Check {
    let (k1, k2, k3) = (g.k(1) as i64, g.k(2) as i64, g.k(3) as i64);
    let canonical = g.is_canonical();
    let exceptional = exceptional_name(g);
    let i = if k2 >= k1.max(2 * k1 - 6) {
        Status::Holds
    } else if canonical || exceptional.is_some() {
        Status::Exempt
    } else {
        Status::Violated
    };
    let ii = if k2 < k1 {
        Status::NotApplicable
    } else if k2 * (k2 - k1 + 1) > 2 * k3 {
        Status::Holds
    } else {
        Status::Violated
    };
    let excess = k2 * (k2 - k1 + 1) + g.p3bar() as i64 - k3;
    let third = |den: i64| {
        if canonical {
            Status::NotApplicable
        } else if den * excess >= k1 * k2 {
            Status::Holds
        } else {
            Status::Violated
        }
    };
    A5Check { i, ii, iii: third(50), iii_twelfth: third(12), excess, exceptional }
}
