use crate::error::{range, Result};
use crate::exactcomb::{binom, BigNat};
use crate::setfam::{counterexample_family, disj_lex_formula, disj_zeta, ell_ball, lex_segment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallRow {
    pub ell: u32,
    pub disj: BigNat,
    /// disj of the part every completion contains.
    pub inner_lower: BigNat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleRow {
    pub k: u32,
    pub n: u32,
    pub s: BigNat,
    pub disj_f: BigNat,
    pub disj_l: BigNat,
    /// disj(L) - disj(F).
    pub gap: BigNat,
    pub balls: Vec<BallRow>,
    /// Counted on explicit families rather than read off the closed forms.
    pub direct: bool,
    pub holds: bool,
}

pub const COUNTEREXAMPLE_DIRECT_MAX: u32 = 8;
pub const COUNTEREXAMPLE_FORMULA_MAX: u32 = 15;

/// n = 3k - 1 and s = C(n-1,k-1) + C(2k-1,k) - 1.
pub fn verify_counterexample(k: u32, zeta_cap: u32) -> Result<CounterexampleRow> {
    if !(5..=COUNTEREXAMPLE_FORMULA_MAX).contains(&k) {
        return Err(range("k", format!("k={k} outside 5..={COUNTEREXAMPLE_FORMULA_MAX}")));
    }
    let n = 3 * k - 1;
    let (ki, ni) = (k as i64, n as i64);
    let lost = binom(2 * ki - 1, ki) - 1u32;
    let gained = binom(2 * ki - 2, ki - 1) - 1u32;
    let s = binom(ni - 1, ki - 1) + &lost;
    let disj_l_closed = &lost * binom(2 * ki - 2, ki - 1);
    let gap = &lost - &gained;
    if k > COUNTEREXAMPLE_DIRECT_MAX || n > zeta_cap {
        let disj_f = &disj_l_closed - &gap;
        return Ok(CounterexampleRow { k, n, s, disj_f, disj_l: disj_l_closed, gap, balls: vec![], direct: false, holds: true });
    }
    let f = counterexample_family(k)?;
    let disj_f = disj_zeta(&f, zeta_cap)?;
    let s_u = f.len() as u128;
    let disj_l = disj_zeta(&lex_segment(n, k, s_u)?, zeta_cap)?;
    if disj_l != disj_l_closed || disj_l != disj_lex_formula(n as u64, k as u64, &s) {
        return Err(range("k", format!("lex count mismatch at k={k}")));
    }
    let mut balls = Vec::new();
    for ell in 2..=k {
        let b = ell_ball(n, k, ell, s_u)?;
        balls.push(BallRow { ell, disj: disj_zeta(&b.family, zeta_cap)?, inner_lower: disj_zeta(&b.inner, zeta_cap)? });
    }
    let holds = disj_f < disj_l && &disj_l - &disj_f == gap && balls.iter().all(|b| b.disj > disj_l);
    Ok(CounterexampleRow { k, n, s, disj_f, disj_l, gap, balls, direct: true, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::nat;

    #[test]
    fn k5_table() {
        let r = verify_counterexample(5, 28).unwrap();
        assert_eq!(r.disj_f, nat(8694));
        assert_eq!(r.disj_l, nat(8750));
        assert_eq!(r.gap, nat(56));
        assert!(r.direct && r.holds);
        assert_eq!(r.balls.len(), 4);
        assert!(r.balls.iter().all(|b| b.disj > nat(8750) && b.inner_lower <= b.disj));
    }

    #[test]
    fn formula_rows() {
        let r = verify_counterexample(12, 28).unwrap();
        assert!(!r.direct && r.gap > nat(0));
        assert!(verify_counterexample(4, 28).is_err());
        assert!(verify_counterexample(16, 28).is_err());
    }
}
