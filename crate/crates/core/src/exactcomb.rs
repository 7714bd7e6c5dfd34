//! Exact integer and rational combinatorial primitives.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigNat = BigUint;
pub type BigRat = BigRational;

pub fn nat(v: u64) -> BigNat {
    BigNat::from(v)
}

pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn nat_to_rat(v: &BigNat) -> BigRat {
    BigRat::from_integer(BigInt::from(v.clone()))
}

pub fn int_to_rat(v: &BigInt) -> BigRat {
    BigRat::from_integer(v.clone())
}

pub fn rat_to_f64(v: &BigRat) -> f64 {
    v.to_f64().unwrap_or(if v.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn factorial(n: u64) -> BigNat {
    let mut acc = BigNat::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `0!..=n_max!` in one pass.
pub fn factorials(n_max: usize) -> Vec<BigNat> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(BigNat::one());
    for i in 1..=n_max {
        let next = &out[i - 1] * i as u64;
        out.push(next);
    }
    out
}

/// C(n,k), zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigNat {
    if n < 0 || k < 0 || k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigNat::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Machine-word binomial for the small enumeration paths; saturates on overflow.
pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerangementTable {
    pub n_max: usize,
    /// d[n]: fixed-point-free permutations of [n].
    pub d: Vec<BigNat>,
    /// D[n] = d[n] + d[n-1].
    pub big_d: Vec<BigNat>,
    /// D'[n] = d[n] + 2 d[n-1].
    pub dp: Vec<BigNat>,
}

pub fn derangements(n_max: usize) -> DerangementTable {
    let n_max = n_max.max(1);
    let mut d = vec![BigNat::one(), BigNat::zero()];
    for n in 2..=n_max {
        let v = (&d[n - 1] + &d[n - 2]) * (n as u64 - 1);
        d.push(v);
    }
    let prev = |n: usize| if n == 0 { BigNat::zero() } else { d[n - 1].clone() };
    let big_d = (0..=n_max).map(|n| &d[n] + prev(n)).collect();
    let dp = (0..=n_max).map(|n| &d[n] + prev(n) * 2u32).collect();
    DerangementTable { n_max, d, big_d, dp }
}

/// n! Σ (-1)^i / i!, summed as Σ (-1)^i n!/i! in integers.
pub fn derangement_incl_excl(n: u64) -> BigNat {
    let mut acc = BigInt::zero();
    for i in 0..=n {
        let t = BigInt::from(falling(n, n - i));
        if i % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc.to_biguint().expect("derangement count is nonnegative")
}

/// x (x-1) ... (x-len+1) for integers.
pub fn falling(x: u64, len: u64) -> BigNat {
    let mut acc = BigNat::one();
    for i in 0..len {
        acc *= x - i;
    }
    acc
}

/// Generalised binomial x(x-1)...(x-r+1)/r!.
pub fn gen_binom(x: &BigRat, r: u32) -> BigRat {
    let mut acc = BigRat::one();
    for i in 0..r {
        acc *= x - BigRat::from_integer(BigInt::from(i));
    }
    acc / BigRat::from_integer(BigInt::from(factorial(r as u64)))
}

/// Bracket [lo, hi] around the real x >= r with C(x,r) = t; lo == hi when exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LovaszRoot {
    pub lo: BigRat,
    pub hi: BigRat,
}

impl LovaszRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> f64 {
        rat_to_f64(&((&self.lo + &self.hi) / BigRat::from_integer(BigInt::from(2))))
    }
}

pub const LOVASZ_REL_TOL: f64 = 1e-12;

pub fn lovasz_root(t: &BigNat, r: u32) -> LovaszRoot {
    assert!(!t.is_zero() && r >= 1, "lovasz_root needs t >= 1, r >= 1");
    let r64 = r as i64;
    // largest integer m >= r with C(m,r) <= t
    let mut lo = r64;
    let mut hi = r64 + 1;
    while binom(hi, r64) <= *t {
        lo = hi;
        hi = r64 + (hi - r64) * 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if binom(mid, r64) <= *t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = lo;
    if binom(m, r64) == *t {
        let x = BigRat::from_integer(BigInt::from(m));
        return LovaszRoot { lo: x.clone(), hi: x };
    }
    let target = nat_to_rat(t);
    let mut a = BigRat::from_integer(BigInt::from(m));
    let mut b = BigRat::from_integer(BigInt::from(m + 1));
    let tol = BigRat::new(BigInt::one(), BigInt::from(1_000_000_000_000u64));
    let two = BigRat::from_integer(BigInt::from(2));
    while (&b - &a) > &tol * &a {
        let mid = (&a + &b) / &two;
        if gen_binom(&mid, r) <= target {
            a = mid;
        } else {
            b = mid;
        }
    }
    LovaszRoot { lo: a, hi: b }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), nat(1));
        assert_eq!(factorial(4), nat(24));
        assert_eq!(factorial(10), nat(3628800));
        assert_eq!(factorials(10)[10], nat(3628800));
    }

    #[test]
    fn binom_against_factorial_ratio() {
        assert_eq!(binom(5, 2), nat(10));
        assert_eq!(binom(4, 5), BigNat::zero());
        assert_eq!(binom(4, -1), BigNat::zero());
        for n in 0..60i64 {
            for k in 0..=n {
                let ratio = factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64));
                assert_eq!(binom(n, k), ratio);
            }
        }
        let ratio = factorial(43) / (factorial(14) * factorial(29));
        assert_eq!(binom(43, 14), ratio);
        assert_eq!(binom_u128(43, 14), ratio.to_u128().unwrap());
    }

    #[test]
    fn derangements_by_enumeration() {
        let t = derangements(8);
        for n in 0..=7usize {
            let mut count = 0u64;
            let mut p: Vec<usize> = (0..n).collect();
            loop {
                if p.iter().enumerate().all(|(i, &v)| i != v) {
                    count += 1;
                }
                if !next_perm(&mut p) {
                    break;
                }
            }
            assert_eq!(t.d[n], nat(count), "n={n}");
        }
        assert_eq!(t.d[4], nat(9));
        assert_eq!(t.d[1], nat(0));
        assert_eq!(t.big_d[4], nat(11));
        assert_eq!(t.dp[4], nat(13));
    }

    fn next_perm(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn recurrence_matches_inclusion_exclusion() {
        let t = derangements(200);
        for n in 0..=200usize {
            assert_eq!(t.d[n], derangement_incl_excl(n as u64), "n={n}");
        }
        for n in 1..=200usize {
            assert_eq!(t.d[n], &t.big_d[n - 1] * (n as u64 - 1));
        }
    }

    #[test]
    fn gen_binom_cases() {
        assert_eq!(gen_binom(&rat(9, 2), 2), rat(63, 8));
        assert_eq!(gen_binom(&rat(7, 3), 0), rat(1, 1));
        assert_eq!(gen_binom(&rat(5, 1), 2), rat(10, 1));
        for m in 0..=60i64 {
            for r in 0..=m {
                assert_eq!(gen_binom(&rat(m, 1), r as u32), nat_to_rat(&binom(m, r)));
            }
        }
    }

    #[test]
    fn lovasz_root_exact_and_bisected() {
        assert_eq!(lovasz_root(&nat(10), 2).lo, rat(5, 1));
        assert!(lovasz_root(&nat(10), 2).is_exact());
        assert_eq!(lovasz_root(&nat(1), 3).lo, rat(3, 1));
        let x = lovasz_root(&nat(7), 2).value();
        let closed = (1.0 + (1.0f64 + 56.0).sqrt()) / 2.0;
        assert!((x - closed).abs() < 1e-10, "{x} vs {closed}");
        for r in 3..=40i64 {
            for m in r..=40 {
                let root = lovasz_root(&binom(m, r), r as u32);
                assert!(root.is_exact());
                assert_eq!(root.lo, rat(m, 1));
            }
        }
    }
}
