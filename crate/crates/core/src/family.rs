//! The extremal family `f_l = (l x^m - 2x + 2) + (x^m - l) y^n`.
//!
//! `f_l` is reducible over a field of characteristic other than 2 exactly when
//! `g_m(l) = (l^2 + 2)^m - 2^m l` vanishes there. Over `Q` it never does for
//! `l >= 2`, so every member is absolutely irreducible, while modulo a prime
//! `p = g_m(l)` the linear factor `x - (l^2 + 2)/2` splits off.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::certify::{certify_mod_p, Certificate};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, mod_inverse};
use crate::oracle::divides_fp;
use crate::poly::{PolyFp, PolyZ};

fn check_family_args(m: usize, n: usize, ell: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(format!("family needs m, n >= 1, got ({m}, {n})")));
    }
    if ell < 2 {
        return Err(Error::Domain(format!("family needs l >= 2, got {ell}")));
    }
    Ok(())
}

/// `(l x^m - 2x + 2) + (x^m - l) y^n`, with the two `x` terms merged when `m = 1`.
pub fn family_poly(m: usize, n: usize, ell: u64) -> Result<PolyZ> {
    check_family_args(m, n, ell)?;
    let l = BigInt::from(ell);
    let a = &(&PolyZ::monomial(l.clone(), m, 0) - &PolyZ::monomial(2, 1, 0)) + &PolyZ::constant(2);
    let b = &PolyZ::monomial(1, m, n) - &PolyZ::monomial(l, 0, n);
    Ok(&a + &b)
}

/// `g_m(t) = (t^2 + 2)^m - 2^m t`.
pub fn g_eval(m: usize, t: &BigInt) -> BigInt {
    let m = m as u32;
    (t * t + 2u32).pow(m) - BigInt::from(2).pow(m) * t
}

/// Coefficients of `g_m`, constant term first.
pub fn g_coefficients(m: usize) -> Vec<BigInt> {
    // (t^2 + 2)^m = sum C(m, k) 2^(m-k) t^(2k)
    let mut coeffs = vec![BigInt::zero(); 2 * m + 1];
    let mut binom = BigInt::one();
    for k in 0..=m {
        coeffs[2 * k] = &binom * BigInt::from(2).pow((m - k) as u32);
        binom = binom * (m - k) / (k + 1);
    }
    coeffs[1] -= BigInt::from(2).pow(m as u32);
    coeffs
}

/// Eisenstein's criterion at `q` for a polynomial given constant term first.
pub fn eisenstein_at(coeffs: &[BigInt], q: &BigInt) -> bool {
    let Some((lead, rest)) = coeffs.split_last() else {
        return false;
    };
    if rest.is_empty() || lead.is_multiple_of(q) {
        return false;
    }
    rest.iter().all(|c| c.is_multiple_of(q)) && !rest[0].is_multiple_of(&(q * q))
}

/// Coefficients of `t^(2m) - 2t + 2`, constant term first.
pub fn eisenstein_poly(m: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); 2 * m + 1];
    coeffs[0] = BigInt::from(2);
    coeffs[1] = BigInt::from(-2);
    coeffs[2 * m] += 1;
    coeffs
}

/// Eisenstein at 2 for `t^(2m) - 2t + 2`.
pub fn eisenstein_check(m: usize) -> bool {
    m >= 1 && eisenstein_at(&eisenstein_poly(m), &BigInt::from(2))
}

fn horner(coeffs: &[BigInt], t: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// `gcd(g(0), ..., g(d))`, which is the gcd of `g` over all integers.
pub fn fixed_divisor(coeffs: &[BigInt]) -> Result<BigInt> {
    let d = coeffs.iter().rposition(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial)?;
    Ok((0..=d).fold(BigInt::zero(), |acc, t| acc.gcd(&horner(coeffs, &BigInt::from(t)))))
}

/// `u = (l^2 + 2) / 2 mod p`, checked to be a common root of `l x^m - 2x + 2`
/// and `x^m - l`, and checked so that `x - u` divides `f_l mod p`.
pub fn split_root(m: usize, ell: u64, p: &BigInt) -> Result<BigInt> {
    check_family_args(m, 1, ell)?;
    if p == &BigInt::from(2) {
        return Err(Error::Domain("no split root in characteristic 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let l = BigInt::from(ell);
    if !g_eval(m, &l).is_multiple_of(p) {
        return Err(Error::Domain(format!("{p} does not divide g_{m}({ell})")));
    }
    let u = ((&l * &l + 2u32) * mod_inverse(&BigInt::from(2), p)?).mod_floor(p);
    let um = u.modpow(&BigInt::from(m), p);
    if !(&um - &l).is_multiple_of(p) || !(&l * &um - 2u32 * &u + 2u32).is_multiple_of(p) {
        return Err(Error::Invariant(format!("u = {u} is not a common root mod {p}")));
    }
    let f = family_poly(m, 1, ell)?.reduce_mod(p)?.poly;
    let linear = PolyFp::new(p.clone(), &[vec![-u.clone()], vec![BigInt::one()]])?;
    if !divides_fp(&linear, &f)? {
        return Err(Error::Invariant(format!("x - {u} does not divide f_{ell} mod {p}")));
    }
    Ok(u)
}

/// One member of the family with its associated prime data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub m: usize,
    pub n: usize,
    pub ell: u64,
    pub f: PolyZ,
    pub g_value: BigInt,
    pub g_is_prime: bool,
    pub height: BigInt,
    /// Present when `g_value` is an odd prime.
    pub split_root: Option<BigInt>,
    /// `g_value >= height^(2m)`.
    pub inequality_holds: bool,
}

impl FamilyInstance {
    pub fn new(m: usize, n: usize, ell: u64) -> Result<Self> {
        let f = family_poly(m, n, ell)?;
        let height = f.height()?;
        let g_value = g_eval(m, &BigInt::from(ell));
        let g_is_prime = is_prime(&g_value);
        let split_root = if g_is_prime && g_value.is_odd() {
            Some(split_root(m, ell, &g_value)?)
        } else {
            None
        };
        let inequality_holds = g_value >= height.pow(2 * m as u32);
        Ok(FamilyInstance { m, n, ell, f, g_value, g_is_prime, height, split_root, inequality_holds })
    }

    /// Recomputes `f` from the parameters and compares.
    pub fn is_consistent(&self) -> bool {
        family_poly(self.m, self.n, self.ell).is_ok_and(|f| f == self.f)
    }
}

/// A family member whose `g_m(l)` is prime, with the certificate modulo that prime.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub instance: FamilyInstance,
    pub certificate: Certificate<PolyFp>,
    /// `x - u` divides `f_l mod p`; `None` without a split root.
    pub divides: Option<bool>,
}

/// All `l` in `[ell_min, ell_max]` with `g_m(l)` prime, in increasing order.
pub fn bouniakowsky_search(m: usize, n: usize, ell_min: u64, ell_max: u64) -> Result<Vec<SearchHit>> {
    check_family_args(m, n, ell_min)?;
    if ell_min > ell_max {
        return Err(Error::Domain(format!("empty range [{ell_min}, {ell_max}]")));
    }
    let hits: Vec<Option<SearchHit>> = (ell_min..=ell_max)
        .into_par_iter()
        .map(|ell| -> Result<Option<SearchHit>> {
            if !is_prime(&g_eval(m, &BigInt::from(ell))) {
                return Ok(None);
            }
            let instance = FamilyInstance::new(m, n, ell)?;
            let p = &instance.g_value;
            let certificate = certify_mod_p(&instance.f, p)?;
            let divides = match &instance.split_root {
                Some(u) => {
                    let linear = PolyFp::new(p.clone(), &[vec![-u.clone()], vec![BigInt::one()]])?;
                    Some(divides_fp(&linear, &instance.f.reduce_mod(p)?.poly)?)
                }
                None => None,
            };
            Ok(Some(SearchHit { instance, certificate, divides }))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::parse_poly;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn family_examples() {
        let f = family_poly(2, 1, 3).unwrap();
        assert_eq!(f, parse_poly("3*x^2-2*x+2+(x^2-3)*y").unwrap());
        assert_eq!(f.height().unwrap(), big(3));
        assert_eq!(family_poly(1, 1, 3).unwrap(), parse_poly("x+2+(x-3)*y").unwrap());
        assert_eq!(family_poly(9, 1, 2).unwrap(), parse_poly("2*x^9-2*x+2+(x^9-2)*y").unwrap());
        assert!(family_poly(2, 1, 1).is_err());
        assert!(family_poly(0, 1, 3).is_err());
        assert!(family_poly(2, 0, 3).is_err());
    }

    #[test]
    fn height_is_ell() {
        for m in 1..5 {
            for n in 1..4 {
                for ell in 2..12 {
                    assert_eq!(family_poly(m, n, ell).unwrap().height().unwrap(), big(ell as i64));
                }
            }
        }
    }

    #[test]
    fn g_values() {
        for m in 1..=10 {
            assert_eq!(g_eval(m, &big(0)), BigInt::from(2).pow(m as u32));
            assert!(g_eval(m, &big(1)).is_odd());
        }
        assert_eq!(g_eval(2, &big(3)), big(109));
        assert_eq!(g_eval(2, &big(5)), big(709));
        assert_eq!(g_eval(2, &big(2)), big(28));
        assert_eq!(g_eval(1, &big(1)), big(1));
        for m in 1..8 {
            let c = g_coefficients(m);
            for t in -5..6 {
                assert_eq!(horner(&c, &big(t)), g_eval(m, &big(t)));
            }
        }
    }

    #[test]
    fn split_roots() {
        let u = split_root(2, 3, &big(109)).unwrap();
        assert_eq!(u, big(60));
        assert_eq!((&u * &u).mod_floor(&big(109)), big(3));
        assert_eq!(split_root(1, 3, &big(5)).unwrap(), big(3));
        assert!(matches!(split_root(1, 2, &big(2)), Err(Error::Domain(_))));
        assert!(matches!(split_root(2, 3, &big(107)), Err(Error::Domain(_))));
        assert!(matches!(split_root(2, 3, &big(109 * 3)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn eisenstein() {
        for m in 1..=50 {
            assert!(eisenstein_check(m));
        }
        assert!(!eisenstein_at(&[big(4), big(-2), big(1)], &big(2)));
        assert!(!eisenstein_at(&[big(2), big(-2), big(2)], &big(2)));
        assert!(!eisenstein_at(&[big(2)], &big(2)));
    }

    #[test]
    fn fixed_divisors() {
        for m in 1..=20 {
            assert_eq!(fixed_divisor(&g_coefficients(m)).unwrap(), big(1));
        }
        assert_eq!(fixed_divisor(&[big(0), big(1), big(1)]).unwrap(), big(2));
        assert_eq!(fixed_divisor(&[big(2)]).unwrap(), big(2));
        assert_eq!(fixed_divisor(&[big(0), big(0), big(0), big(6)]).unwrap(), big(6));
        assert!(fixed_divisor(&[big(0)]).is_err());
    }

    #[test]
    fn instance_fields() {
        let inst = FamilyInstance::new(2, 1, 3).unwrap();
        assert!(inst.g_is_prime && inst.inequality_holds && inst.is_consistent());
        assert_eq!(inst.split_root, Some(big(60)));
        let inst = FamilyInstance::new(2, 1, 2).unwrap();
        assert!(!inst.g_is_prime && inst.split_root.is_none());
        let inst = FamilyInstance::new(1, 1, 3).unwrap();
        assert!(inst.g_is_prime && !inst.inequality_holds);
    }

    #[test]
    fn search_m2() {
        let hits = bouniakowsky_search(2, 1, 2, 10).unwrap();
        let ells: Vec<u64> = hits.iter().map(|h| h.instance.ell).collect();
        assert!(ells.contains(&3) && ells.contains(&5) && !ells.contains(&2));
        assert!(ells.windows(2).all(|w| w[0] < w[1]));
        for h in &hits {
            assert_ne!(h.certificate.verdict, Verdict::AbsolutelyIrreducible);
            assert_eq!(h.divides, Some(true));
            assert!(h.instance.inequality_holds);
        }
    }

    #[test]
    fn search_m1() {
        let hits = bouniakowsky_search(1, 1, 2, 5).unwrap();
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|h| !h.instance.inequality_holds));
        // l = 2 gives p = 2: no split root, still certified
        let two = hits.iter().find(|h| h.instance.ell == 2).unwrap();
        assert_eq!(two.divides, None);
        assert!(bouniakowsky_search(1, 1, 5, 2).is_err());
        assert!(bouniakowsky_search(1, 1, 1, 2).is_err());
    }
}
