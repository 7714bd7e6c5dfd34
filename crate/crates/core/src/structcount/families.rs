use super::{find_matching, max_matching_masks, SetPairSystem};
use crate::error::{cap, invalid, Result};
use crate::exactcomb::{binom_u128, BigNat};
use crate::setfam::{all_ksets, KSet, SetFamily};
use num_traits::One;
use std::collections::HashMap;

pub const FAMILY_CAP_DEFAULT: u128 = 24;
/// Vertex masks are u128.
pub const KNESER_VERTEX_CAP: u128 = 128;

fn check_level(n: u32, k: u32, s: u32, family_cap: u128) -> Result<Vec<KSet>> {
    if k == 0 || k > n || n > 64 || s < 2 {
        return Err(invalid(format!("need 1 <= k <= n <= 64 and s >= 2, got n={n}, k={k}, s={s}")));
    }
    let total = binom_u128(n as u64, k as u64);
    let limit = if s == 2 { KNESER_VERTEX_CAP } else { family_cap };
    if total > limit {
        return Err(cap("C(n,k)", total, limit));
    }
    Ok(all_ksets(n, k))
}

fn kneser_masks(v: &[KSet]) -> Vec<u128> {
    v.iter()
        .map(|x| {
            v.iter()
                .enumerate()
                .filter(|(_, y)| x.disjoint(**y))
                .fold(0u128, |acc, (j, _)| acc | 1u128 << j)
        })
        .collect()
}

fn component(adj: &[u128], mask: u128) -> u128 {
    let start = mask & mask.wrapping_neg();
    let mut comp = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !comp;
        comp |= new;
        frontier |= new;
    }
    comp
}

fn count_independent(adj: &[u128], mask: u128, memo: &mut HashMap<u128, BigNat>) -> BigNat {
    if mask == 0 {
        return BigNat::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let comp = component(adj, mask);
    let out = if comp != mask {
        count_independent(adj, comp, memo) * count_independent(adj, mask ^ comp, memo)
    } else {
        let mut best = (0u32, 0usize);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & mask).count_ones();
            if d > best.0 {
                best = (d, v);
            }
        }
        if best.0 == 0 {
            BigNat::one() << mask.count_ones()
        } else {
            let v = best.1;
            let without = mask & !(1u128 << v);
            count_independent(adj, without, memo) + count_independent(adj, without & !adj[v], memo)
        }
    };
    memo.insert(mask, out.clone());
    out
}

/// Does adding `x` to the chosen sets create s pairwise disjoint members?
fn creates_matching(chosen: &[u64], x: u64, s: u32) -> bool {
    let disjoint: Vec<u64> = chosen.iter().copied().filter(|&m| m & x == 0).collect();
    let need = (s - 1) as usize;
    disjoint.len() >= need && max_matching_masks(&disjoint, need) >= need
}

fn matching_free_dfs(v: &[u64], s: u32, i: usize, chosen: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    if i == v.len() {
        visit(chosen);
        return;
    }
    matching_free_dfs(v, s, i + 1, chosen, visit);
    if !creates_matching(chosen, v[i], s) {
        chosen.push(v[i]);
        matching_free_dfs(v, s, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Subfamilies of C([n],k) with no s pairwise disjoint members.
pub fn count_no_matching_families(n: u32, k: u32, s: u32, family_cap: u128) -> Result<BigNat> {
    let v = check_level(n, k, s, family_cap)?;
    if s == 2 {
        let adj = kneser_masks(&v);
        let full = if v.len() == 128 { u128::MAX } else { (1u128 << v.len()) - 1 };
        return Ok(count_independent(&adj, full, &mut HashMap::new()));
    }
    let masks: Vec<u64> = v.iter().map(|x| x.0).collect();
    let mut count = 0u64;
    matching_free_dfs(&masks, s, 0, &mut Vec::new(), &mut |_| count += 1);
    Ok(BigNat::from(count))
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let px = p | x;
    let mut pivot = 0usize;
    let mut best = -1i32;
    let mut scan = px;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let c = (adj[u] & p).count_ones() as i32;
        if c > best {
            best = c;
            pivot = u;
        }
    }
    let mut cands = p & !adj[pivot];
    while cands != 0 {
        let v = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        let bit = 1u128 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Maximal families with no s pairwise disjoint members, sorted by their lex member lists.
pub fn enumerate_maximal_families(n: u32, k: u32, s: u32, family_cap: u128) -> Result<Vec<SetFamily>> {
    let v = check_level(n, k, s, family_cap)?;
    let mut out: Vec<Vec<KSet>> = Vec::new();
    if s == 2 {
        // maximal cliques of the "intersects" relation
        let kn = kneser_masks(&v);
        let full = if v.len() == 128 { u128::MAX } else { (1u128 << v.len()) - 1 };
        let inter: Vec<u128> = kn.iter().enumerate().map(|(i, m)| full & !m & !(1u128 << i)).collect();
        let mut cliques = Vec::new();
        bron_kerbosch(&inter, 0, full, 0, &mut cliques);
        for c in cliques {
            out.push((0..v.len()).filter(|&i| c >> i & 1 == 1).map(|i| v[i]).collect());
        }
    } else {
        let masks: Vec<u64> = v.iter().map(|x| x.0).collect();
        matching_free_dfs(&masks, s, 0, &mut Vec::new(), &mut |chosen| {
            let maximal = masks.iter().all(|&x| chosen.contains(&x) || creates_matching(chosen, x, s));
            if maximal {
                out.push(chosen.iter().map(|&m| KSet(m)).collect());
            }
        });
    }
    out.sort_by(|a, b| {
        a.iter().zip(b.iter()).map(|(x, y)| x.lex_cmp(*y)).find(|o| o.is_ne()).unwrap_or(a.len().cmp(&b.len()))
    });
    Ok(out.into_iter().map(|m| SetFamily::new(n, k, m).expect("members are valid k-sets")).collect())
}

/// I(G): the k-sets whose addition to G leaves no s pairwise disjoint members.
pub fn closure_i(g: &SetFamily, s: u32) -> SetFamily {
    let masks = g.masks();
    let need = s as usize;
    if max_matching_masks(&masks, need) >= need {
        return SetFamily::empty(g.n(), g.k());
    }
    let members = all_ksets(g.n(), g.k()).into_iter().filter(|x| !creates_matching(&masks, x.0, s)).collect();
    SetFamily::new(g.n(), g.k(), members).expect("level sets are valid")
}

pub fn is_maximal(f: &SetFamily, s: u32) -> bool {
    closure_i(f, s) == *f
}

/// One greedy lex pass removing members whose removal keeps I(G) = F.
/// Closure is antitone, so the result is inclusion-minimal.
pub fn minimal_generating(fmax: &SetFamily, s: u32) -> Result<SetFamily> {
    if !is_maximal(fmax, s) {
        return Err(invalid("family is not maximal for this s"));
    }
    let mut g: Vec<KSet> = fmax.members().to_vec();
    let mut i = 0;
    while i < g.len() {
        let mut trial = g.clone();
        trial.remove(i);
        let tf = SetFamily::new(fmax.n(), fmax.k(), trial.clone())?;
        if closure_i(&tf, s) == *fmax {
            g = trial;
        } else {
            i += 1;
        }
    }
    SetFamily::new(fmax.n(), fmax.k(), g)
}

/// For each F_i of a minimal generator G0, a set G ∈ I(G0 \ F_i) \ I(G0) and the s-2
/// members of G0 completing the matching; pairs are (F_i, union of the completion).
pub fn bollobas_witnesses(g0: &SetFamily, s: u32) -> Result<SetPairSystem> {
    let full = closure_i(g0, s);
    let mut pairs = Vec::new();
    for (i, fi) in g0.members().iter().enumerate() {
        let mut rest = g0.members().to_vec();
        rest.remove(i);
        let rest_f = SetFamily::new(g0.n(), g0.k(), rest.clone())?;
        let wider = closure_i(&rest_f, s);
        let g = wider
            .difference(&full)
            .members()
            .first()
            .copied()
            .ok_or_else(|| invalid(format!("generator is not minimal at {fi}")))?;
        let forbidden = fi.0 | g.0;
        let cands: Vec<u64> = rest.iter().map(|m| m.0).filter(|&m| m & forbidden == 0).collect();
        let others = find_matching(&cands, (s - 2) as usize)
            .ok_or_else(|| invalid(format!("no completing matching for {fi}")))?;
        let b = others.iter().fold(g.0, |acc, m| acc | m);
        pairs.push((*fi, KSet(b)));
    }
    Ok(SetPairSystem { pairs })
}
