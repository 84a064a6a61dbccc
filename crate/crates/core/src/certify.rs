//! Prime bounds, irreducibility certificates and bad-prime discovery.
//!
//! Over `Q` a rank deficit of the criterion matrix is equivalent to
//! reducibility over the algebraic closure. Modulo `p` only one direction
//! survives: full rank proves absolute irreducibility of `f mod p`, a deficit
//! is reported as inconclusive.
//!
//! Every row of the criterion matrix has squared norm at most
//! `base * H^2` with `base = m(n+1)n^2 + (m+1)(n-1)m^2`, so by Hadamard any
//! nonzero maximal minor `D` satisfies `D^2 <= base^N * H^(2N)` with
//! `N = 2mn + n - 1`. A prime above `sqrt` of that cannot divide `D`, hence
//! cannot lower the rank.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::criterion::{build_matrix, expand_form, unknown_count, vec_to_witness, MatrixBody, Witness};
use crate::error::{Error, Result};
use crate::linalg::{max_minor, MinorWitness};
use crate::numtheory::{factor, is_prime, isqrt_ceil, FactorizationResult};
use crate::poly::{BiPoly, PolyFp, PolyZ};

/// The prime threshold `B = base^(N/2) * H^N` kept in squared form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub m: usize,
    pub n: usize,
    pub height: BigInt,
    /// `m(n+1)n^2 + (m+1)(n-1)m^2`.
    pub base: BigInt,
    /// `N = 2mn + n - 1`; the bound raises `base` to `N / 2`.
    pub exponent_num: usize,
    /// `N` again, as the power of the height.
    pub height_exp: usize,
    /// `B^2 = base^N * H^(2N)`, exact.
    pub squared_value: BigInt,
    /// `ceil(B)`.
    pub ceil_value: BigInt,
}

impl BoundValue {
    /// True when `B` is an integer (then `ceil_value == B`).
    pub fn is_integral(&self) -> bool {
        &self.ceil_value * &self.ceil_value == self.squared_value
    }

    /// `p > B`, decided as `p^2 > B^2`.
    pub fn is_exceeded_by(&self, p: &BigInt) -> bool {
        p.is_positive() && p * p > self.squared_value
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp = if self.exponent_num.is_multiple_of(2) {
            (self.exponent_num / 2).to_string()
        } else {
            format!("({}/2)", self.exponent_num)
        };
        write!(f, "{}^{} * {}^{}", self.base, exp, self.height, self.height_exp)
    }
}

/// Evaluates the rectangular-degree bound exactly.
pub fn bound_rect(m: usize, n: usize, height: &BigInt) -> Result<BoundValue> {
    if m == 0 || n == 0 || height < &BigInt::one() {
        return Err(Error::Domain(format!("bound needs m, n >= 1 and H >= 1, got ({m}, {n}, {height})")));
    }
    let (mb, nb) = (BigInt::from(m), BigInt::from(n));
    let base = &mb * (&nb + 1u32) * &nb * &nb + (&mb + 1u32) * (&nb - 1u32) * &mb * &mb;
    let big_n = unknown_count(m, n);
    let squared_value = base.pow(big_n as u32) * height.pow(2 * big_n as u32);
    let ceil_value = isqrt_ceil(&squared_value);
    Ok(BoundValue {
        m,
        n,
        height: height.clone(),
        base,
        exponent_num: big_n,
        height_exp: big_n,
        squared_value,
        ceil_value,
    })
}

/// True iff `p > B(m, n, H)` strictly.
pub fn exceeds_bound(p: &BigInt, m: usize, n: usize, height: &BigInt) -> Result<bool> {
    if p < &BigInt::from(2) {
        return Err(Error::Domain(format!("p must be at least 2, got {p}")));
    }
    Ok(bound_rect(m, n, height)?.is_exceeded_by(p))
}

/// Total-degree bound `d^(3d^2 - 3) * H^(d^2 - 1)`.
pub fn bound_total(d: usize, height: &BigInt) -> Result<BigInt> {
    if d == 0 || height < &BigInt::one() {
        return Err(Error::Domain(format!("total-degree bound needs d, H >= 1, got ({d}, {height})")));
    }
    let d2 = (d * d) as u32;
    Ok(BigInt::from(d).pow(3 * d2 - 3) * height.pow(d2 - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    AbsolutelyIrreducible,
    Reducible,
    InconclusiveRankDrop,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::AbsolutelyIrreducible => "ABSOLUTELY_IRREDUCIBLE",
            Verdict::Reducible => "REDUCIBLE",
            Verdict::InconclusiveRankDrop => "INCONCLUSIVE_RANK_DROP",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`certify_char0`] or [`certify_mod_p`].
///
/// `rank`, `full_rank` and `witness` refer to the polynomial actually
/// examined: transposed when `transposed` is set, reduced for `mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<P> {
    pub verdict: Verdict,
    pub modulus: Option<BigInt>,
    pub rank: usize,
    pub full_rank: usize,
    /// Kernel witness, present whenever `rank < full_rank`.
    pub witness: Option<Witness<P>>,
    pub degree_dropped: bool,
    pub transposed: bool,
    /// Degrees `(m, n)` of the examined polynomial.
    pub degrees: (usize, usize),
    /// Threshold for the integer input, when both its degrees are positive.
    pub bound: Option<BoundValue>,
    /// `p > B`; `None` in characteristic 0 or without a bound.
    pub exceeds_bound: Option<bool>,
}

struct Examined<P> {
    rank: usize,
    full_rank: usize,
    witness: Option<Witness<P>>,
    transposed: bool,
    degrees: (usize, usize),
}

/// Rank test in the ring of `f`, transposing first when `deg_y f = 0`.
///
/// Polynomials in a single variable never reach the matrix: with `m = 0`
/// there are no rows and `n - 1` unknowns, and `(r, s) = (0, 1)` is a kernel
/// witness whenever `n >= 2`.
fn examine<P: BiPoly>(f: &P) -> Result<Examined<P>> {
    let (_, n0) = f.degrees().ok_or(Error::ZeroPolynomial)?;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let transposed = n0 == 0;
    let g = if transposed { f.transpose() } else { f.clone() };
    let (m, n) = g.degrees().unwrap();
    let full_rank = unknown_count(m, n);

    let (rank, witness) = if m == 0 {
        let witness = (n >= 2).then(|| Witness { r: g.zero_like(), s: g.constant_like(1) });
        (0, witness)
    } else {
        let matrix = build_matrix(&g)?;
        let rank = matrix.rank()?;
        let witness = if rank < full_rank {
            let v = matrix
                .kernel_vector()
                .ok_or_else(|| Error::Invariant("rank deficit without kernel vector".into()))?;
            Some(vec_to_witness(&g, &v, m, n)?)
        } else {
            None
        };
        (rank, witness)
    };

    if let Some(w) = &witness {
        if w.is_zero() || !expand_form(&g, &w.r, &w.s)?.is_zero() {
            return Err(Error::Invariant(format!("kernel witness does not annihilate the form: {w}")));
        }
    }
    Ok(Examined { rank, full_rank, witness, transposed, degrees: (m, n) })
}

/// Orientation and bound of the integer input.
fn integer_bound(f: &PolyZ) -> Result<Option<BoundValue>> {
    let (m, n) = f.degrees().ok_or(Error::ZeroPolynomial)?;
    let (m, n) = if n == 0 { (n, m) } else { (m, n) };
    if m == 0 || n == 0 {
        return Ok(None);
    }
    Ok(Some(bound_rect(m, n, &f.height()?)?))
}

/// Certificate over the rationals. A rank deficit is a proof of reducibility.
pub fn certify_char0(f: &PolyZ) -> Result<Certificate<PolyZ>> {
    let ex = examine(f)?;
    let verdict = if ex.rank == ex.full_rank { Verdict::AbsolutelyIrreducible } else { Verdict::Reducible };
    Ok(Certificate {
        verdict,
        modulus: None,
        rank: ex.rank,
        full_rank: ex.full_rank,
        witness: ex.witness,
        degree_dropped: false,
        transposed: ex.transposed,
        degrees: ex.degrees,
        bound: integer_bound(f)?,
        exceeds_bound: None,
    })
}

/// Certificate for `f mod p`, with the matrix rebuilt for the reduced degrees.
pub fn certify_mod_p(f: &PolyZ, p: &BigInt) -> Result<Certificate<PolyFp>> {
    let reduction = f.reduce_mod(p)?;
    let ex = examine(&reduction.poly)?;
    let verdict =
        if ex.rank == ex.full_rank { Verdict::AbsolutelyIrreducible } else { Verdict::InconclusiveRankDrop };
    let bound = integer_bound(f)?;
    let exceeds_bound = bound.as_ref().map(|b| b.is_exceeded_by(p));
    Ok(Certificate {
        verdict,
        modulus: Some(p.clone()),
        rank: ex.rank,
        full_rank: ex.full_rank,
        witness: ex.witness,
        degree_dropped: reduction.degree_dropped,
        transposed: ex.transposed,
        degrees: ex.degrees,
        bound,
        exceeds_bound,
    })
}

/// Why a prime dividing the minor was classified as it was.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeOutcome {
    /// `certify_mod_p` ran; its rank and verdict are attached.
    Certified { rank: usize, full_rank: usize, degree_dropped: bool, verdict: Verdict },
    /// `f mod p` is constant or zero.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: BigInt,
    pub outcome: PrimeOutcome,
}

impl PrimeCheck {
    pub fn is_bad(&self) -> bool {
        !matches!(
            self.outcome,
            PrimeOutcome::Certified { verdict: Verdict::AbsolutelyIrreducible, .. }
        )
    }
}

/// Primes where the criterion loses rank, found through one maximal minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimeReport {
    /// Nonzero maximal minor `D` of the (possibly transposed) matrix.
    pub minor: MinorWitness,
    pub factorization: FactorizationResult,
    /// Known prime factors of `D` where rank drops (or `f mod p` degenerates).
    pub confirmed_bad: Vec<PrimeCheck>,
    /// Known prime factors of `D` where `f mod p` keeps full rank.
    pub ruled_out: Vec<PrimeCheck>,
    /// Unfactored part of `|D|`; any further bad prime divides it.
    pub cofactor_note: BigInt,
    /// Hints that are not primes dividing `D`, ignored.
    pub rejected_hints: Vec<BigInt>,
    /// `base^N * H^(2N)`, the Hadamard bound on `D^2`.
    pub hadamard_squared: BigInt,
    pub transposed: bool,
}

impl BadPrimeReport {
    pub fn confirmed_primes(&self) -> impl Iterator<Item = &BigInt> {
        self.confirmed_bad.iter().map(|c| &c.p)
    }
}

/// Factors one maximal minor of `M(f)` and tests each of its prime factors.
///
/// Every prime at which the rank drops divides every maximal minor, so the
/// confirmed list is complete relative to the factored part of `D`. Hint
/// primes are checked for primality and divisibility before use.
pub fn bad_primes(f: &PolyZ, rho_budget: u64, hint_primes: &[BigInt]) -> Result<BadPrimeReport> {
    let cert = certify_char0(f)?;
    if cert.verdict != Verdict::AbsolutelyIrreducible {
        return Err(Error::ReducibleInput);
    }
    let g = if cert.transposed { f.transpose() } else { f.clone() };
    let (m, n) = cert.degrees;

    let (minor, hadamard_squared) = if m == 0 {
        // linear in one variable: no unknowns, empty minor
        let minor = MinorWitness { row_indices: vec![], col_indices: vec![], det_value: BigInt::one() };
        (minor, BigInt::one())
    } else {
        let matrix = build_matrix(&g)?;
        let MatrixBody::Int(im) = matrix.body() else {
            return Err(Error::Invariant("integer polynomial produced a prime-field matrix".into()));
        };
        let minor = max_minor(im, cert.full_rank)?;
        let bound = bound_rect(m, n, &g.height()?)?;
        if &minor.det_value * &minor.det_value > bound.squared_value {
            return Err(Error::Invariant(format!(
                "Hadamard bound violated: D = {} but D^2 must not exceed {}",
                minor.det_value, bound.squared_value
            )));
        }
        (minor, bound.squared_value)
    };

    let factorization = factor(&minor.det_value, rho_budget)?;
    let mut cofactor = factorization.cofactor.clone();
    let mut known: Vec<BigInt> = factorization.primes().cloned().collect();
    let mut rejected_hints = Vec::new();
    for hint in hint_primes {
        if !is_prime(hint) || !(&minor.det_value % hint).is_zero() {
            rejected_hints.push(hint.clone());
            continue;
        }
        while (&cofactor % hint).is_zero() {
            cofactor /= hint;
        }
        known.push(hint.clone());
    }
    known.sort();
    known.dedup();

    let checks: Vec<PrimeCheck> = known
        .par_iter()
        .map(|p| {
            let outcome = match certify_mod_p(f, p) {
                Ok(c) => PrimeOutcome::Certified {
                    rank: c.rank,
                    full_rank: c.full_rank,
                    degree_dropped: c.degree_dropped,
                    verdict: c.verdict,
                },
                Err(Error::ZeroReduction(_)) | Err(Error::ConstantPolynomial) => PrimeOutcome::Degenerate,
                Err(e) => return Err(e),
            };
            Ok(PrimeCheck { p: p.clone(), outcome })
        })
        .collect::<Result<_>>()?;
    let (confirmed_bad, ruled_out) = checks.into_iter().partition(PrimeCheck::is_bad);

    Ok(BadPrimeReport {
        minor,
        factorization,
        confirmed_bad,
        ruled_out,
        cofactor_note: cofactor,
        rejected_hints,
        hadamard_squared,
        transposed: cert.transposed,
    })
}
