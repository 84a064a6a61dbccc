//! The linear system behind the absolute-irreducibility criterion.
//!
//! For `f` of degree `(m, n)` with `m, n >= 1`, consider unknown polynomials
//! `r` with `deg r <= (m-1, n)` and `s` with `deg s <= (m, n-2)` and the form
//!
//! ```text
//! E(r, s) = r_y f - r f_y - s_x f + s f_x
//! ```
//!
//! `E(r, s) = 0` has a nontrivial solution iff `f` is reducible over the
//! algebraic closure (in characteristic 0; only the forward direction holds
//! in characteristic p). The coefficients of `E` are linear in the
//! coefficients of `r, s`; [`build_matrix`] writes that map out explicitly.
//!
//! Rows are indexed by monomials `x^k y^l`, `0 <= k <= 2m-1`,
//! `0 <= l <= 2n-2`, in lexicographic `(k, l)` order. Columns are the
//! coefficients `u_ij` of `r` (`i < m`, `j <= n`) followed by the
//! coefficients `v_ij` of `s` (`i <= m`, `j <= n-2`), each block
//! lexicographic in `(i, j)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{kernel_vector_int, nullspace_fp, rank_fp, rank_int, FpMatrix, IntMatrix};
use crate::poly::{BiPoly, Dense};

/// Number of unknowns, `2mn + n - 1`.
pub fn unknown_count(m: usize, n: usize) -> usize {
    2 * m * n + n - 1
}

/// Column label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unknown {
    /// Coefficient of `x^i y^j` in `r`.
    U(usize, usize),
    /// Coefficient of `x^i y^j` in `s`.
    V(usize, usize),
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unknown::U(i, j) => write!(f, "u{i},{j}"),
            Unknown::V(i, j) => write!(f, "v{i},{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixBody {
    Int(IntMatrix),
    Fp(FpMatrix),
}

/// The criterion matrix of a polynomial of degree `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionMatrix {
    m: usize,
    n: usize,
    body: MatrixBody,
}

impl CriterionMatrix {
    pub fn degrees(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn body(&self) -> &MatrixBody {
        &self.body
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match &self.body {
            MatrixBody::Int(_) => None,
            MatrixBody::Fp(fm) => Some(fm.p()),
        }
    }

    /// `2m(2n-1)`.
    pub fn rows(&self) -> usize {
        2 * self.m * (2 * self.n - 1)
    }

    /// `2mn + n - 1`.
    pub fn cols(&self) -> usize {
        unknown_count(self.m, self.n)
    }

    pub fn full_rank(&self) -> usize {
        self.cols()
    }

    /// Monomial `(k, l)` of row `r`.
    pub fn row_label(&self, r: usize) -> (usize, usize) {
        let width = 2 * self.n - 1;
        (r / width, r % width)
    }

    pub fn col_label(&self, c: usize) -> Unknown {
        let u_count = self.m * (self.n + 1);
        if c < u_count {
            Unknown::U(c / (self.n + 1), c % (self.n + 1))
        } else {
            let c = c - u_count;
            Unknown::V(c / (self.n - 1), c % (self.n - 1))
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        match &self.body {
            MatrixBody::Int(im) => im.get(r, c),
            MatrixBody::Fp(fm) => fm.get(r, c),
        }
    }

    pub fn rank(&self) -> Result<usize> {
        match &self.body {
            MatrixBody::Int(im) => rank_int(im),
            MatrixBody::Fp(fm) => Ok(rank_fp(fm)),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        match &self.body {
            MatrixBody::Int(im) => im.mul_vec(v),
            MatrixBody::Fp(fm) => fm.mul_vec(v),
        }
    }

    /// One nonzero kernel vector, primitive over Z or canonical over F_p.
    pub fn kernel_vector(&self) -> Option<Vec<BigInt>> {
        match &self.body {
            MatrixBody::Int(im) => kernel_vector_int(im),
            MatrixBody::Fp(fm) => nullspace_fp(fm).into_iter().next(),
        }
    }
}

fn criterion_degrees<P: BiPoly>(f: &P) -> Result<(usize, usize)> {
    let (m, n) = f.degrees().ok_or(Error::ZeroPolynomial)?;
    if m == 0 || n == 0 {
        return Err(Error::DegreeTooSmall { m, n });
    }
    Ok((m, n))
}

/// Builds the criterion matrix of `f` entry by entry.
///
/// Row `(k, l)`, column `u_ij` holds `(2j - l - 1) a[k-i][l-j+1]`; column
/// `v_ij` holds `(k - 2i + 1) a[k-i+1][l-j]`, with out-of-range
/// coefficients read as 0.
pub fn build_matrix<P: BiPoly>(f: &P) -> Result<CriterionMatrix> {
    let (m, n) = criterion_degrees(f)?;
    let rows = 2 * m * (2 * n - 1);
    let cols = unknown_count(m, n);
    let mut entries = Vec::with_capacity(rows * cols);
    for k in 0..2 * m as isize {
        for l in 0..(2 * n - 1) as isize {
            for i in 0..m as isize {
                for j in 0..=n as isize {
                    let a = f.coeff(k - i, l - j + 1);
                    entries.push(BigInt::from(2 * j - l - 1) * a);
                }
            }
            for i in 0..=m as isize {
                for j in 0..n as isize - 1 {
                    let a = f.coeff(k - i + 1, l - j);
                    entries.push(BigInt::from(k - 2 * i + 1) * a);
                }
            }
        }
    }
    let body = match f.modulus() {
        None => MatrixBody::Int(IntMatrix::new(rows, cols, entries)?),
        Some(p) => MatrixBody::Fp(FpMatrix::new_unchecked(p.clone(), rows, cols, entries)?),
    };
    Ok(CriterionMatrix { m, n, body })
}

/// A pair `(r, s)` with `deg r <= (m-1, n)` and `deg s <= (m, n-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<P> {
    pub r: P,
    pub s: P,
}

impl<P: BiPoly> Witness<P> {
    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    /// Checks the degree bounds for a source polynomial of degree `(m, n)`.
    pub fn check_bounds(&self, m: usize, n: usize) -> Result<()> {
        if let Some((dx, dy)) = self.r.degrees() {
            if dx + 1 > m || dy > n {
                return Err(Error::DegreeBound(format!(
                    "deg r = ({dx}, {dy}) exceeds ({}, {n})",
                    m as isize - 1
                )));
            }
        }
        if let Some((dx, dy)) = self.s.degrees() {
            if dx > m || dy + 2 > n {
                return Err(Error::DegreeBound(format!(
                    "deg s = ({dx}, {dy}) exceeds ({m}, {})",
                    n as isize - 2
                )));
            }
        }
        Ok(())
    }
}

impl<P: BiPoly> fmt::Display for Witness<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = {}, s = {}", self.r, self.s)
    }
}

/// `r_y f - r f_y - s_x f + s f_x`, after checking the witness degree bounds.
pub fn expand_form<P: BiPoly>(f: &P, r: &P, s: &P) -> Result<P> {
    let (m, n) = f.degrees().ok_or(Error::ZeroPolynomial)?;
    Witness { r: r.clone(), s: s.clone() }.check_bounds(m, n)?;
    let fx = f.partial_x();
    let fy = f.partial_y();
    let e = r.partial_y().mul(f).sub(&r.mul(&fy)).sub(&s.partial_x().mul(f)).add(&s.mul(&fx));
    Ok(e)
}

/// Coefficients of `E` on the row basis, in row order.
pub fn form_coefficients<P: BiPoly>(e: &P, m: usize, n: usize) -> Result<Vec<BigInt>> {
    if let Some((dx, dy)) = e.degrees() {
        if dx + 1 > 2 * m || dy + 2 > 2 * n {
            return Err(Error::Invariant(format!(
                "expanded form has degree ({dx}, {dy}) beyond ({}, {})",
                2 * m - 1,
                2 * n - 2
            )));
        }
    }
    let mut out = Vec::with_capacity(2 * m * (2 * n - 1));
    for k in 0..2 * m {
        for l in 0..2 * n - 1 {
            out.push(e.coeff(k as isize, l as isize).clone());
        }
    }
    Ok(out)
}

/// Flattens `(r, s)` into the column order of [`build_matrix`].
pub fn witness_to_vec<P: BiPoly>(w: &Witness<P>, m: usize, n: usize) -> Result<Vec<BigInt>> {
    if m == 0 || n == 0 {
        return Err(Error::DegreeTooSmall { m, n });
    }
    w.check_bounds(m, n)?;
    let mut v = Vec::with_capacity(unknown_count(m, n));
    for i in 0..m {
        for j in 0..=n {
            v.push(w.r.coeff(i as isize, j as isize).clone());
        }
    }
    for i in 0..=m {
        for j in 0..n.saturating_sub(1) {
            v.push(w.s.coeff(i as isize, j as isize).clone());
        }
    }
    Ok(v)
}

/// Inverse of [`witness_to_vec`]; `ring` supplies the coefficient ring.
pub fn vec_to_witness<P: BiPoly>(ring: &P, v: &[BigInt], m: usize, n: usize) -> Result<Witness<P>> {
    if m == 0 || n == 0 {
        return Err(Error::DegreeTooSmall { m, n });
    }
    let expected = unknown_count(m, n);
    if v.len() != expected {
        return Err(Error::LengthMismatch { expected, got: v.len() });
    }
    let r = Dense::from_fn(m - 1, n, |i, j| v[i * (n + 1) + j].clone());
    let offset = m * (n + 1);
    let s = if n >= 2 {
        Dense::from_fn(m, n - 2, |i, j| v[offset + i * (n - 1) + j].clone())
    } else {
        Dense::zero()
    };
    Ok(Witness { r: ring.with_dense(r), s: ring.with_dense(s) })
}

/// How the factors passed to [`witness_from_factors`] compose the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    /// `f = g h`.
    Split,
    /// `f = g^2 h`.
    RepeatedFactor,
}

/// Kernel witness from a known factorization of `f`.
///
/// For `Split` with `l = deg_y g` nonzero in the ring:
/// `r = (n-l) g_x h - l g h_x`, `s = (n-l) g_y h - l g h_y`.
/// For `Split` with `l = 0` in the ring: `r = g_x h`, `s = g_y h`.
/// For `RepeatedFactor`: `r = h g_x`, `s = h g_y`.
pub fn witness_from_factors<P: BiPoly>(g: &P, h: &P, mode: FactorMode) -> Result<Witness<P>> {
    let f = match mode {
        FactorMode::Split => g.mul(h),
        FactorMode::RepeatedFactor => g.mul(g).mul(h),
    };
    let (m, n) = criterion_degrees(&f)?;
    let witness = match mode {
        FactorMode::Split => {
            let ell = g.degrees().map_or(0, |(_, dy)| dy);
            let ell_in_ring = reduce_scalar(ell, g.modulus());
            if ell_in_ring.is_zero() {
                Witness { r: g.partial_x().mul(h), s: g.partial_y().mul(h) }
            } else {
                let rest = reduce_scalar(n - ell, g.modulus());
                let ell = BigInt::from(ell);
                Witness {
                    r: g.partial_x().mul(h).scale(&rest).sub(&g.mul(&h.partial_x()).scale(&ell)),
                    s: g.partial_y().mul(h).scale(&rest).sub(&g.mul(&h.partial_y()).scale(&ell)),
                }
            }
        }
        FactorMode::RepeatedFactor => Witness { r: h.mul(&g.partial_x()), s: h.mul(&g.partial_y()) },
    };
    if witness.is_zero() {
        return Err(Error::DegenerateWitness);
    }
    witness.check_bounds(m, n).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(witness)
}

fn reduce_scalar(v: usize, modulus: Option<&BigInt>) -> BigInt {
    let v = BigInt::from(v);
    match modulus {
        Some(p) => v.mod_floor(p),
        None => v,
    }
}
