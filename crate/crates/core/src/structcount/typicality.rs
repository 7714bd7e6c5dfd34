use crate::error::{range, Result};
use crate::exactcomb::{binom, nat_to_rat, rat, BigNat, BigRat};
use num_bigint::BigInt;
use num_traits::Zero;

/// Exact terms of 2 log2 M + max(N1, N2) - N0 with log2 M replaced by n C(sk,k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypicalityReport {
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub n0: BigNat,
    pub n2: BigNat,
    pub n1_bound: BigRat,
    pub log2m_bound: BigNat,
    pub margin: BigRat,
    /// Number of extremal families, C(n, s-1); reported only.
    pub t: BigNat,
    /// -(1/18) n C(sk,k), present when n >= 2sk + 38 s^4.
    pub target: Option<BigRat>,
}

impl TypicalityReport {
    pub fn certifies(&self) -> bool {
        self.margin < BigRat::zero()
    }

    pub fn meets_target(&self) -> Option<bool> {
        self.target.as_ref().map(|t| self.margin <= *t)
    }
}

pub fn typicality_report(n: u64, k: u64, s: u64) -> Result<TypicalityReport> {
    if s < 2 || k < 1 || n < (2 * s - 1) * k - s + 1 {
        return Err(range("(n,k,s)", format!("needs s >= 2 and n >= (2s-1)k-s+1, got n={n}, k={k}, s={s}")));
    }
    let (ni, ki, si) = (n as i64, k as i64, s as i64);
    let n0 = binom(ni, ki) - binom(ni - si + 1, ki);
    let n2 = &n0 - binom(ni - si, ki - 1);
    let n1_bound = nat_to_rat(&n0) - nat_to_rat(&binom(ni - ki - si + 1, ki - 1)) * rat(1, si + 1);
    let log2m_bound = binom(si * ki, ki) * n;
    let n2r = nat_to_rat(&n2);
    let worst = if n1_bound > n2r { n1_bound.clone() } else { n2r };
    let margin = nat_to_rat(&log2m_bound) * BigRat::from_integer(BigInt::from(2)) + worst - nat_to_rat(&n0);
    let target = (n >= 2 * s * k + 38 * s.pow(4)).then(|| -nat_to_rat(&log2m_bound) * rat(1, 18));
    Ok(TypicalityReport { n, k, s, n0, n2, n1_bound, log2m_bound, margin, t: binom(ni, si - 1), target })
}
