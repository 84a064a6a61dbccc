//! Primality, desk-scale factorization and modular helpers.

use std::sync::OnceLock;

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Trial division bound used by [`factor`].
pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// The first 13 primes form a deterministic Miller-Rabin witness set below this value.
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

/// Random-base rounds above [`DETERMINISTIC_LIMIT`].
const RANDOM_ROUNDS: usize = 64;

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn sieve() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let mut x = pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin primality test.
///
/// Deterministic below 3.3e24 (first 13 prime bases); above that, 64 bases
/// drawn from a fixed-seed generator, so repeated calls agree.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus || n.is_one() {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return *n == BigInt::from(p);
        }
    }
    if let Some(small) = n.to_u64() {
        return SMALL_PRIMES.iter().all(|&a| strong_probable_prime_u64(small, a as u64));
    }
    if !SMALL_PRIMES.iter().all(|&a| strong_probable_prime(n, &BigInt::from(a))) {
        return false;
    }
    let limit: BigInt = DETERMINISTIC_LIMIT.parse().unwrap();
    if *n < limit {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let hi = n - 1u32;
    (0..RANDOM_ROUNDS).all(|_| strong_probable_prime(n, &rng.gen_bigint_range(&BigInt::from(2), &hi)))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = if n.sign() == Sign::Minus { BigInt::from(2) } else { n + 1u32 };
    while !is_prime(&c) {
        c += 1u32;
    }
    c
}

/// Outcome of [`factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationResult {
    /// Distinct primes in increasing order with multiplicities.
    pub prime_factors: Vec<(BigInt, u32)>,
    /// Unsplit remainder; 1 when the factorization is complete.
    pub cofactor: BigInt,
    pub budget_exhausted: bool,
}

impl FactorizationResult {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.prime_factors.iter().map(|(p, _)| p)
    }

    /// Product of all prime powers times the cofactor.
    pub fn product(&self) -> BigInt {
        self.prime_factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Factors `|n|`: trial division to 10^6, then Pollard-Brent rho with
/// polynomial constants `c = 1, 2, 3, ...` until `budget` iterations are spent.
pub fn factor(n: &BigInt, budget: u64) -> Result<FactorizationResult> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut rest = n.abs();
    let mut found: Vec<(BigInt, u32)> = Vec::new();
    for &p in sieve() {
        let p_big = BigInt::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((p_big, e));
        }
    }

    let mut budget = Budget(budget);
    let mut cofactor = BigInt::one();
    let mut exhausted = false;
    let mut pending = vec![rest];
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            found.push((c, 1));
            continue;
        }
        if let Some(root) = exact_square_root(&c) {
            pending.push(root.clone());
            pending.push(root);
            continue;
        }
        match pollard_brent(&c, &mut budget) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => {
                exhausted = true;
                cofactor *= c;
            }
        }
    }

    found.sort();
    let mut prime_factors: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in found {
        match prime_factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => prime_factors.push((p, e)),
        }
    }
    Ok(FactorizationResult { prime_factors, cofactor, budget_exhausted: exhausted })
}

fn exact_square_root(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

struct Budget(u64);

impl Budget {
    fn take(&mut self, k: u64) -> bool {
        if self.0 < k {
            self.0 = 0;
            false
        } else {
            self.0 -= k;
            true
        }
    }
}

/// Brent's cycle-finding variant of Pollard rho on an odd composite `n`.
fn pollard_brent(n: &BigInt, budget: &mut Budget) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    let mut c = BigInt::one();
    loop {
        let step = |v: &BigInt| (v * v + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            if !budget.take(r) {
                return None;
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let chunk = BATCH.min(r - k);
                for _ in 0..chunk {
                    y = step(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                if !budget.take(chunk) {
                    return None;
                }
                g = q.gcd(n);
                k += chunk;
            }
            r *= 2;
        }
        if g == *n {
            // The batch overshot; replay single steps from the saved point.
            loop {
                ys = step(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        c += 1u32;
    }
}

/// Inverse of `a` modulo `p`, in `[1, p)`.
pub fn mod_inverse(a: &BigInt, p: &BigInt) -> Result<BigInt> {
    let not_invertible = || Error::NotInvertible { a: a.clone(), p: p.clone() };
    if p.sign() != Sign::Plus || p.is_one() {
        return Err(not_invertible());
    }
    let ext = a.mod_floor(p).extended_gcd(p);
    if !ext.gcd.is_one() {
        return Err(not_invertible());
    }
    Ok(ext.x.mod_floor(p))
}

/// Smallest integer `r` with `r^2 >= n`.
///
/// # Panics
///
/// If `n` is negative.
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    assert!(n.sign() != Sign::Minus, "isqrt_ceil of a negative number");
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&BigInt::from(109)));
        assert!(is_prime(&big("186940255267545011")));
        assert!(!is_prime(&BigInt::from(28)));
        assert!(!is_prime(&BigInt::from(0)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(-7)));
        // 2^89 - 1 is a Mersenne prime above the deterministic range.
        assert!(is_prime(&((BigInt::one() << 89) - 1)));
        assert!(!is_prime(&((BigInt::one() << 89) + 1)));
        // Arnault's strong pseudoprime to many bases (product of three primes).
        assert!(!is_prime(&big("3825123056546413051")));
    }

    #[test]
    fn primality_matches_trial_division_to_a_million() {
        let primes = sieve();
        let mut is_p = vec![false; TRIAL_DIVISION_LIMIT as usize + 1];
        for &p in primes {
            is_p[p as usize] = true;
        }
        // Trial division oracle for the sieve itself on a prefix.
        for n in 0..2000u32 {
            let td = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(td, is_p[n as usize], "{n}");
        }
        for (n, &expected) in is_p.iter().enumerate() {
            assert_eq!(is_prime(&BigInt::from(n)), expected, "{n}");
        }
    }

    #[test]
    fn factor_examples() {
        let r = factor(&BigInt::from(28), 1000).unwrap();
        assert_eq!(r.prime_factors, vec![(BigInt::from(2), 2), (BigInt::from(7), 1)]);
        assert!(r.is_complete());

        for m in 1..=64u32 {
            let r = factor(&(BigInt::one() << m), 1000).unwrap();
            assert_eq!(r.prime_factors, vec![(BigInt::from(2), m)]);
        }

        let r = factor(&BigInt::from(109 * 709), 1000).unwrap();
        assert_eq!(r.prime_factors, vec![(BigInt::from(109), 1), (BigInt::from(709), 1)]);

        assert!(factor(&BigInt::zero(), 10).is_err());
        let r = factor(&BigInt::from(-12), 10).unwrap();
        assert_eq!(r.product(), BigInt::from(12));
    }

    #[test]
    fn rho_splits_large_semiprime() {
        // two primes above the trial-division limit
        let p = next_prime(&BigInt::from(3_000_000_019u64));
        let q = next_prime(&BigInt::from(5_000_000_029u64));
        let r = factor(&(&p * &q * &q), 10_000_000).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.prime_factors, vec![(p, 1), (q, 2)]);
    }

    #[test]
    fn zero_budget_reports_cofactor() {
        let p = next_prime(&BigInt::from(3_000_000_019u64));
        let q = next_prime(&BigInt::from(5_000_000_029u64));
        let n = &p * &q * 4;
        let r = factor(&n, 0).unwrap();
        assert!(r.budget_exhausted);
        assert_eq!(r.prime_factors, vec![(BigInt::from(2), 2)]);
        assert_eq!(r.cofactor, &p * &q);
        assert_eq!(r.product(), n);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&BigInt::from(2), &BigInt::from(109)).unwrap(), BigInt::from(55));
        assert_eq!(mod_inverse(&BigInt::from(1), &BigInt::from(13)).unwrap(), BigInt::from(1));
        assert!(mod_inverse(&BigInt::from(2), &BigInt::from(2)).is_err());
        assert_eq!(mod_inverse(&BigInt::from(-1), &BigInt::from(7)).unwrap(), BigInt::from(6));
    }

    #[test]
    fn isqrt_ceil_examples() {
        assert_eq!(isqrt_ceil(&BigInt::from(16)), BigInt::from(4));
        assert_eq!(isqrt_ceil(&BigInt::from(17)), BigInt::from(5));
        assert_eq!(isqrt_ceil(&BigInt::from(2744)), BigInt::from(53));
        assert_eq!(isqrt_ceil(&BigInt::from(0)), BigInt::from(0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn factor_reconstructs(n in 1u64..u64::MAX) {
                let n = BigInt::from(n);
                let r = factor(&n, 200_000).unwrap();
                prop_assert_eq!(r.product(), n);
                for p in r.primes() {
                    prop_assert!(is_prime(p));
                }
            }

            #[test]
            fn inverse_is_inverse(a in 1u64..1_000_000, idx in 0usize..1000) {
                let p = BigInt::from(sieve()[idx + 10]);
                let a = BigInt::from(a);
                prop_assume!(!(&a % &p).is_zero());
                let inv = mod_inverse(&a, &p).unwrap();
                prop_assert!((inv * a % &p).is_one());
            }

            #[test]
            fn isqrt_ceil_around_squares(k in 1u128..u128::MAX >> 1) {
                let k = BigInt::from(k);
                prop_assert_eq!(isqrt_ceil(&(&k * &k)), k.clone());
                prop_assert_eq!(isqrt_ceil(&(&k * &k + 1u32)), k + 1u32);
            }
        }
    }
}
