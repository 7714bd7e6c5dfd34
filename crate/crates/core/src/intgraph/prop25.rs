use super::{build_intgraph, IntGraph, Interval};
use crate::error::{invalid, range, Result};
use crate::exactcomb::{derangements, factorials, nat_to_rat, BigNat, BigRat};
use crate::permfam::{disj_t_formula, CosetSpec, Engine, Perm};
use num_bigint::BigInt;

/// Interval estimates for a union of cosets with intersection graph G, at a given n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop25 {
    pub n: u32,
    pub k: [u64; 4],
    pub p3bar: u64,
    /// |union|.
    pub a: Interval,
    /// disj(π, union) for π outside the union.
    pub b: Interval,
    /// disj(union).
    pub c: Interval,
    pub c_refined: Interval,
    b_refined_base: BigRat,
    b_refined_half: BigRat,
    d_n3: BigRat,
}

fn r(v: &BigNat) -> BigRat {
    nat_to_rat(v)
}

fn ri(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

pub fn prop25_intervals(g: &IntGraph, n: u32) -> Result<Prop25> {
    if n < 5 {
        return Err(range("n", format!("n={n} < 5")));
    }
    let nu = n as usize;
    let f = factorials(nu);
    let der = derangements(nu);
    let (k1, k2, k3, k4) = (g.k(1) as i64, g.k(2) as i64, g.k(3) as i64, g.k(4) as i64);
    let p3 = g.p3bar() as i64;
    let fact = |m: usize| r(&f[m]);
    let big_d1 = r(&der.big_d[nu - 1]);
    let big_d2 = r(&der.big_d[nu - 2]);
    let dp2 = r(&der.dp[nu - 2]);
    let d3 = r(&der.d[nu - 3]);

    let a = Interval::around(ri(k1) * fact(nu - 1) - ri(k2) * fact(nu - 2) + ri(k3) * fact(nu - 3), ri(k4) * fact(nu - 4));
    let b = Interval::around(ri(k1) * &big_d1 - ri(k2) * &big_d2, ri(3 * k1 * k2) * fact(nu - 3));
    let c = Interval::around(
        ri(k1 * (k1 - 1) / 2) * fact(nu - 1) * &big_d1 - ri((k1 - 1) * k2) * fact(nu - 2) * &big_d1,
        ri(2 * k1 * k1 * k2) * fact(nu - 1) * fact(nu - 3),
    );
    let a1 = ri(k1 * (k1 - 1) / 2);
    let a2 = ri(-(k1 - 1) * k2);
    let a3 = ri((2 * k1 - 3) * k3 + (k2 - k1 + 1) * k2 + p3) / ri(2);
    let c_refined = Interval::around(
        (a1 * fact(nu - 1) + a2 * fact(nu - 2) + a3 * fact(nu - 3)) * &big_d1,
        ri(12 * k1 * k1 * k1 * k2) * fact(nu - 1) * fact(nu - 4),
    );
    Ok(Prop25 {
        n,
        k: [k1 as u64, k2 as u64, k3 as u64, k4 as u64],
        p3bar: p3 as u64,
        a,
        b,
        c,
        c_refined,
        b_refined_base: ri(k1) * big_d1 - ri(k2) * dp2 + ri(k3) * &d3,
        b_refined_half: ri(28 * k2 + 4 * k3 + k4) * fact(nu - 4),
        d_n3: d3,
    })
}

impl Prop25 {
    /// Per-permutation interval; `overlap` is Σ_{xy∈E} |{x_1,y_1} ∩ {π⁻¹(x_2), π⁻¹(y_2)}|.
    pub fn b_refined(&self, overlap: u64) -> Interval {
        Interval::around(&self.b_refined_base + ri(overlap as i64) * &self.d_n3, self.b_refined_half.clone())
    }
}

/// Where π sends each row of the spec: a spec column, or somewhere outside the spec columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiProfile {
    pub rows: Vec<(u32, Option<u32>)>,
}

impl PiProfile {
    /// The least permutation (in image order) with this profile, if one exists at n.
    pub fn realize(&self, n: u32, cols: &[u32]) -> Option<Perm> {
        let mut image = vec![0u32; n as usize];
        let mut used = vec![false; n as usize + 1];
        for &(i, j) in &self.rows {
            if let Some(j) = j {
                image[i as usize - 1] = j;
                used[j as usize] = true;
            }
        }
        let mut outside = (1..=n).filter(|v| !cols.contains(v));
        for &(i, j) in &self.rows {
            if j.is_none() {
                let v = outside.find(|v| !used[*v as usize])?;
                image[i as usize - 1] = v;
                used[v as usize] = true;
            }
        }
        let mut free = (1..=n).filter(|&v| !used[v as usize]).collect::<Vec<_>>().into_iter();
        for slot in image.iter_mut() {
            if *slot == 0 {
                *slot = free.next()?;
            }
        }
        Perm::new(image).ok()
    }

    pub fn overlap(&self, g: &IntGraph) -> u64 {
        let col_of = |row: u32| self.rows.iter().find(|p| p.0 == row).and_then(|p| p.1);
        let pts = g.points();
        let mut total = 0;
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                if g.adjacent(a, b) {
                    let cols = [pts[a].1, pts[b].1];
                    total += [pts[a].0, pts[b].0]
                        .iter()
                        .filter(|&&row| col_of(row).is_some_and(|c| cols.contains(&c)))
                        .count() as u64;
                }
            }
        }
        total
    }
}

/// All partial injections from the spec rows into the spec columns that avoid the
/// spec points, unassigned rows going outside. disj(π, union) depends on π only
/// through this profile.
pub fn pi_profiles(spec: &CosetSpec) -> Vec<PiProfile> {
    let mut rows: Vec<u32> = spec.points().iter().map(|p| p.0).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut cols: Vec<u32> = spec.points().iter().map(|p| p.1).collect();
    cols.sort_unstable();
    cols.dedup();
    fn go(
        idx: usize,
        rows: &[u32],
        cols: &[u32],
        spec: &CosetSpec,
        taken: &mut Vec<bool>,
        cur: &mut Vec<(u32, Option<u32>)>,
        out: &mut Vec<PiProfile>,
    ) {
        if idx == rows.len() {
            out.push(PiProfile { rows: cur.clone() });
            return;
        }
        let i = rows[idx];
        cur.push((i, None));
        go(idx + 1, rows, cols, spec, taken, cur, out);
        cur.pop();
        for (c, &j) in cols.iter().enumerate() {
            if taken[c] || spec.points().contains(&(i, j)) {
                continue;
            }
            taken[c] = true;
            cur.push((i, Some(j)));
            go(idx + 1, rows, cols, spec, taken, cur, out);
            cur.pop();
            taken[c] = false;
        }
    }
    let mut out = Vec::new();
    go(0, &rows, &cols, spec, &mut vec![false; cols.len()], &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub a: bool,
    pub b: bool,
    pub b_refined: bool,
    pub c: bool,
    pub c_refined: bool,
    pub profiles: usize,
    pub union_size: BigNat,
    pub disj_union: BigNat,
    /// First failing value, for reports.
    pub witness: Option<String>,
}

impl ContainmentCheck {
    pub fn all(&self) -> bool {
        self.a && self.b && self.b_refined && self.c && self.c_refined
    }
}

/// Exact values against all five intervals, the per-π ones over every realizable profile.
pub fn prop25_containment(spec: &CosetSpec, engine: &Engine) -> Result<ContainmentCheck> {
    if spec.n() != engine.n() {
        return Err(invalid("spec n does not match engine n"));
    }
    let n = spec.n();
    let g = build_intgraph(spec)?;
    let iv = prop25_intervals(&g, n)?;
    let mut cols: Vec<u32> = spec.points().iter().map(|p| p.1).collect();
    cols.sort_unstable();
    cols.dedup();
    let union_size = engine.union_size(spec);
    let disj_union = engine.disj_within_union(spec)?;
    let mut check = ContainmentCheck {
        a: iv.a.contains_nat(&union_size),
        b: true,
        b_refined: true,
        c: iv.c.contains_nat(&disj_union),
        c_refined: iv.c_refined.contains_nat(&disj_union),
        profiles: 0,
        union_size,
        disj_union,
        witness: None,
    };
    if !check.a {
        check.witness = Some(format!("|union| = {} outside {}", check.union_size, iv.a));
    } else if !check.c || !check.c_refined {
        check.witness = Some(format!("disj(union) = {} vs c {} / refined {}", check.disj_union, iv.c, iv.c_refined));
    }
    for prof in pi_profiles(spec) {
        let Some(pi) = prof.realize(n, &cols) else { continue };
        check.profiles += 1;
        let v = engine.disj_to_union(&pi, spec)?;
        let in_b = iv.b.contains_nat(&v);
        let in_br = iv.b_refined(prof.overlap(&g)).contains_nat(&v);
        if (!in_b || !in_br) && check.witness.is_none() {
            check.witness = Some(format!("disj({pi}, union) = {v}"));
        }
        check.b &= in_b;
        check.b_refined &= in_br;
    }
    Ok(check)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyCheck {
    pub canonical: bool,
    pub union_size: BigNat,
    pub disj_union: BigNat,
    pub disj_t: BigNat,
    /// ½ (k_2(k_2-k_1+1) + i(P̄3) - k_3) (n-3)! D_{n-1}.
    pub predicted_gap: BigRat,
    pub holds: bool,
}

/// Canonical unions tie with the lex family of the same size; the rest have strictly more.
pub fn dichotomy_check(spec: &CosetSpec, engine: &Engine) -> Result<DichotomyCheck> {
    let g = build_intgraph(spec)?;
    let n = spec.n();
    if n < 3 {
        return Err(range("n", format!("n={n} < 3")));
    }
    let union_size = engine.union_size(spec);
    let disj_union = engine.disj_within_union(spec)?;
    let disj_t = disj_t_formula(n, &union_size)?;
    let canonical = g.is_canonical();
    let holds = if canonical { disj_union == disj_t } else { disj_union > disj_t };
    let excess = g.k(2) as i64 * (g.k(2) as i64 - g.k(1) as i64 + 1) + g.p3bar() as i64 - g.k(3) as i64;
    let der = derangements(n as usize);
    let predicted_gap = ri(excess) / ri(2) * r(engine.factorial(n - 3)) * r(&der.big_d[n as usize - 1]);
    Ok(DichotomyCheck { canonical, union_size, disj_union, disj_t, predicted_gap, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::nat;
    use crate::intgraph::enumerate_grid_graphs;
    use crate::permfam::all_perms;

    #[test]
    fn disjoint_cosets_degenerate_a() {
        let spec = CosetSpec::new(9, vec![(1, 1), (1, 2), (1, 3)]).unwrap();
        let g = build_intgraph(&spec).unwrap();
        let iv = prop25_intervals(&g, 9).unwrap();
        assert!(iv.a.is_degenerate());
        assert!(iv.a.contains_nat(&Engine::new(9).union_size(&spec)));
        assert!(prop25_intervals(&g, 4).is_err());
    }

    #[test]
    fn two_cosets_at_100() {
        let spec = CosetSpec::new(100, vec![(1, 1), (2, 2)]).unwrap();
        let e = Engine::new(100);
        let c = prop25_containment(&spec, &e).unwrap();
        assert!(c.all(), "{c:?}");
    }

    #[test]
    fn profiles_cover_all_perms() {
        // per-π values from full S_6 match the profile values exactly as sets
        for spec in enumerate_grid_graphs(3).unwrap() {
            let spec = spec.with_n(6).unwrap();
            let e = Engine::new(6);
            let mut cols: Vec<u32> = spec.points().iter().map(|p| p.1).collect();
            cols.sort_unstable();
            cols.dedup();
            let mut from_profiles: Vec<BigNat> = pi_profiles(&spec)
                .iter()
                .filter_map(|p| p.realize(6, &cols))
                .map(|pi| e.disj_to_union(&pi, &spec).unwrap())
                .collect();
            let mut from_perms: Vec<BigNat> = all_perms(6)
                .iter()
                .filter(|pi| !spec.contains_perm(pi))
                .map(|pi| e.disj_to_union(pi, &spec).unwrap())
                .collect();
            from_profiles.sort();
            from_profiles.dedup();
            from_perms.sort();
            from_perms.dedup();
            assert_eq!(from_profiles, from_perms, "{:?}", spec.points());
        }
    }

    #[test]
    fn overlap_matches_definition() {
        let spec = CosetSpec::new(7, vec![(1, 1), (2, 2), (3, 1)]).unwrap();
        let g = build_intgraph(&spec).unwrap();
        let mut cols = vec![1, 2];
        cols.sort_unstable();
        for prof in pi_profiles(&spec) {
            let Some(pi) = prof.realize(7, &cols) else { continue };
            let inv = pi.inverse();
            let pts = g.points();
            let mut direct = 0;
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    if g.adjacent(a, b) {
                        let ends = [inv.at(pts[a].1), inv.at(pts[b].1)];
                        direct += [pts[a].0, pts[b].0].iter().filter(|x| ends.contains(x)).count() as u64;
                    }
                }
            }
            assert_eq!(prof.overlap(&g), direct);
        }
    }

    #[test]
    fn dichotomy_small() {
        let e = Engine::new(6);
        let canon = CosetSpec::new(6, vec![(1, 1), (1, 2), (2, 3)]).unwrap();
        let d = dichotomy_check(&canon, &e).unwrap();
        assert!(d.canonical && d.holds);
        let diag = CosetSpec::new(6, vec![(1, 1), (2, 2), (3, 3)]).unwrap();
        let d = dichotomy_check(&diag, &e).unwrap();
        assert!(!d.canonical && d.holds && d.disj_union > d.disj_t);
        assert!(d.union_size > nat(0));
    }
}
