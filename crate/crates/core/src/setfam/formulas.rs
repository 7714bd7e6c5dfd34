use crate::exactcomb::{binom, nat_to_rat, rat, BigNat, BigRat};
use num_bigint::BigInt;
use num_traits::Zero;

/// The r and γ with s = C(n,k) - C(n-r+1,k) + γ C(n-r,k-1), r minimal.
///
/// For s = 0 this is (0, 0).
pub fn lex_params(n: u64, k: u64, s: &BigNat) -> (u64, BigRat) {
    let (n, k) = (n as i64, k as i64);
    if s.is_zero() {
        return (0, BigRat::zero());
    }
    let total = binom(n, k);
    let mut r = 1i64;
    while r <= n && *s > &total - binom(n - r, k) {
        r += 1;
    }
    let base = &total - binom(n - r + 1, k);
    let layer = binom(n - r, k - 1);
    let gamma = if layer.is_zero() {
        BigRat::zero()
    } else {
        nat_to_rat(&(s - &base)) / nat_to_rat(&layer)
    };
    (r as u64, gamma)
}

/// Disjoint pairs in the lex initial segment, counted by minimum element.
pub fn disj_lex_formula(n: u64, k: u64, s: &BigNat) -> BigNat {
    let (r, _) = lex_params(n, k, s);
    let (n, k) = (n as i64, k as i64);
    let total = binom(n, k);
    let mut acc = BigNat::zero();
    for i in 1..r as i64 {
        let before = &total - binom(n - i, k);
        acc += (s - before) * binom(n - i - k, k - 1);
    }
    acc
}

/// (C(r-1,2) + (r-1)γ) C(n-1,k-1) C(n-k-1,k-1).
///
/// γ is rational, so the value is returned as a rational.
pub fn star_upper_bound(n: u64, k: u64, r: u64, gamma: &BigRat) -> BigRat {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    if r < 1 {
        return BigRat::zero();
    }
    let lead = nat_to_rat(&binom(r - 1, 2)) + rat(r - 1, 1) * gamma;
    lead * nat_to_rat(&(binom(n - 1, k - 1) * binom(n - k - 1, k - 1)))
}

/// (1/2)(1 - 1/r) s^2.
pub fn quad_upper_bound(s: &BigNat, r: u64) -> BigRat {
    if r == 0 {
        return BigRat::zero();
    }
    let s = nat_to_rat(s);
    rat(r as i64 - 1, 2 * r as i64) * &s * &s
}

/// (1 - k^2/n)|F(i)||F(j)| - (3k/2n)(|F(i)|+|F(j)|) C(n-1,k-1); may be negative.
pub fn cross_disj_lower(n: u64, k: u64, size_i: &BigNat, size_j: &BigNat) -> BigRat {
    let a = nat_to_rat(size_i);
    let b = nat_to_rat(size_j);
    let n_r = BigRat::from_integer(BigInt::from(n));
    let k_r = BigRat::from_integer(BigInt::from(k));
    let one = BigRat::from_integer(BigInt::from(1));
    let lead = (&one - &k_r * &k_r / &n_r) * &a * &b;
    let tail = rat(3, 2) * &k_r / &n_r * (a + b) * nat_to_rat(&binom(n as i64 - 1, k as i64 - 1));
    lead - tail
}
