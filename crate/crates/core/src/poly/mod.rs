//! Dense bivariate polynomials over the integers and over prime fields.
//!
//! Both rings share the [`Dense`] coefficient grid; [`PolyZ`] keeps exact
//! integers, [`PolyFp`] keeps representatives in `[0, p)`. Generic code (the
//! criterion matrix, witnesses) works through the [`BiPoly`] trait.

mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

pub use parse::parse_poly;

static ZERO: BigInt = BigInt::ZERO;

/// Row-major coefficient grid `a[i][j]` for `0 <= i <= deg_x`, `0 <= j <= deg_y`.
///
/// Degrees are exact after [`Dense::trim`]; the zero polynomial is the empty grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dense {
    deg_x: usize,
    deg_y: usize,
    coeffs: Vec<BigInt>,
}

impl Dense {
    pub fn zero() -> Self {
        Dense { deg_x: 0, deg_y: 0, coeffs: Vec::new() }
    }

    /// Builds a grid of the given padded shape and trims it.
    pub fn from_fn(max_x: usize, max_y: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut coeffs = Vec::with_capacity((max_x + 1) * (max_y + 1));
        for i in 0..=max_x {
            for j in 0..=max_y {
                coeffs.push(f(i, j));
            }
        }
        Dense { deg_x: max_x, deg_y: max_y, coeffs }.trim()
    }

    /// Builds from rows `rows[i][j]`; rows may have different lengths.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        if rows.is_empty() {
            return Dense::zero();
        }
        let max_y = rows.iter().map(|r| r.len()).max().unwrap_or(0).saturating_sub(1);
        Dense::from_fn(rows.len() - 1, max_y, |i, j| rows[i].get(j).cloned().unwrap_or_default())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degrees(&self) -> Option<(usize, usize)> {
        (!self.is_zero()).then_some((self.deg_x, self.deg_y))
    }

    /// Coefficient of `x^i y^j`; anything outside the grid reads as 0.
    pub fn get(&self, i: isize, j: isize) -> &BigInt {
        if self.is_zero() || i < 0 || j < 0 {
            return &ZERO;
        }
        let (i, j) = (i as usize, j as usize);
        if i > self.deg_x || j > self.deg_y {
            return &ZERO;
        }
        &self.coeffs[i * (self.deg_y + 1) + j]
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        self.get(i as isize, j as isize)
    }

    /// Drops zero border rows and columns so the stored degrees are exact.
    pub fn trim(self) -> Self {
        if self.coeffs.iter().all(Zero::is_zero) {
            return Dense::zero();
        }
        let w = self.deg_y + 1;
        let dx = (0..=self.deg_x)
            .rev()
            .find(|&i| (0..w).any(|j| !self.coeffs[i * w + j].is_zero()))
            .unwrap();
        let dy = (0..w)
            .rev()
            .find(|&j| (0..=self.deg_x).any(|i| !self.coeffs[i * w + j].is_zero()))
            .unwrap();
        if dx == self.deg_x && dy == self.deg_y {
            return self;
        }
        let mut coeffs = Vec::with_capacity((dx + 1) * (dy + 1));
        for i in 0..=dx {
            coeffs.extend_from_slice(&self.coeffs[i * w..i * w + dy + 1]);
        }
        Dense { deg_x: dx, deg_y: dy, coeffs }
    }

    fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Dense { deg_x: self.deg_x, deg_y: self.deg_y, coeffs: self.coeffs.iter().map(f).collect() }
            .trim()
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let (ax, ay) = self.degrees().unwrap_or((0, 0));
        let (bx, by) = other.degrees().unwrap_or((0, 0));
        Dense::from_fn(ax.max(bx), ay.max(by), |i, j| f(self.at(i, j), other.at(i, j)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map(|a| a * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (Some((ax, ay)), Some((bx, by))) = (self.degrees(), other.degrees()) else {
            return Dense::zero();
        };
        let (rx, ry) = (ax + bx, ay + by);
        let mut out = vec![BigInt::zero(); (rx + 1) * (ry + 1)];
        for i in 0..=ax {
            for j in 0..=ay {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..=bx {
                    for l in 0..=by {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            out[(i + k) * (ry + 1) + j + l] += a * b;
                        }
                    }
                }
            }
        }
        Dense { deg_x: rx, deg_y: ry, coeffs: out }.trim()
    }

    pub fn partial_x(&self) -> Self {
        match self.degrees() {
            Some((dx, dy)) if dx > 0 => {
                Dense::from_fn(dx - 1, dy, |i, j| self.at(i + 1, j) * BigInt::from(i + 1))
            }
            _ => Dense::zero(),
        }
    }

    pub fn partial_y(&self) -> Self {
        match self.degrees() {
            Some((dx, dy)) if dy > 0 => {
                Dense::from_fn(dx, dy - 1, |i, j| self.at(i, j + 1) * BigInt::from(j + 1))
            }
            _ => Dense::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        match self.degrees() {
            Some((dx, dy)) => Dense::from_fn(dy, dx, |i, j| self.at(j, i).clone()),
            None => Dense::zero(),
        }
    }

    fn reduce(&self, p: &BigInt) -> Self {
        self.map(|a| a.mod_floor(p))
    }

    /// Nonzero terms `(i, j, coefficient)` in descending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let w = self.deg_y + 1;
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / w, idx % w, c))
    }
}

/// Operations shared by [`PolyZ`] and [`PolyFp`].
///
/// All binary operations assume both operands live in the same ring; mixing
/// moduli is a programming error and panics. Use [`PolyFp::try_add`] and
/// friends where the moduli come from user input.
pub trait BiPoly: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    /// `None` for the integers, `Some(p)` for `F_p`.
    fn modulus(&self) -> Option<&BigInt>;

    fn dense(&self) -> &Dense;

    /// Wraps a raw grid in the ring of `self`, reducing and trimming.
    fn with_dense(&self, dense: Dense) -> Self;

    fn is_zero(&self) -> bool {
        self.dense().is_zero()
    }

    /// Exact `(deg_x, deg_y)`, or `None` for zero.
    fn degrees(&self) -> Option<(usize, usize)> {
        self.dense().degrees()
    }

    fn coeff(&self, i: isize, j: isize) -> &BigInt {
        self.dense().get(i, j)
    }

    fn is_constant(&self) -> bool {
        matches!(self.degrees(), None | Some((0, 0)))
    }

    fn zero_like(&self) -> Self {
        self.with_dense(Dense::zero())
    }

    fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        self.with_dense(Dense::from_fn(0, 0, |_, _| c.clone()))
    }

    fn add(&self, other: &Self) -> Self {
        assert_same_ring(self, other);
        self.with_dense(self.dense().add(other.dense()))
    }

    fn sub(&self, other: &Self) -> Self {
        assert_same_ring(self, other);
        self.with_dense(self.dense().sub(other.dense()))
    }

    fn mul(&self, other: &Self) -> Self {
        assert_same_ring(self, other);
        self.with_dense(self.dense().mul(other.dense()))
    }

    fn neg(&self) -> Self {
        self.with_dense(self.dense().neg())
    }

    fn scale(&self, c: &BigInt) -> Self {
        self.with_dense(self.dense().scale(c))
    }

    fn partial_x(&self) -> Self {
        self.with_dense(self.dense().partial_x())
    }

    fn partial_y(&self) -> Self {
        self.with_dense(self.dense().partial_y())
    }

    /// Swaps the roles of `x` and `y`.
    fn transpose(&self) -> Self {
        self.with_dense(self.dense().transpose())
    }
}

fn assert_same_ring<P: BiPoly>(a: &P, b: &P) {
    assert!(a.modulus() == b.modulus(), "polynomial arithmetic across different rings");
}

/// Bivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyZ {
    dense: Dense,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ { dense: Dense::zero() }
    }

    pub fn from_dense(dense: Dense) -> Self {
        PolyZ { dense: dense.trim() }
    }

    /// `rows[i][j]` is the coefficient of `x^i y^j`.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().cloned().map(Into::into).collect()).collect();
        PolyZ { dense: Dense::from_rows(&rows) }
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: impl Into<BigInt>, i: usize, j: usize) -> Self {
        let c = c.into();
        PolyZ::from_dense(Dense::from_fn(i, j, |a, b| if (a, b) == (i, j) { c.clone() } else { BigInt::zero() }))
    }

    pub fn x() -> Self {
        PolyZ::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        PolyZ::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        PolyZ::monomial(c, 0, 0)
    }

    /// `H(f) = max |a_ij|`.
    pub fn height(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.dense.coeffs.iter().map(|c| c.abs()).max().unwrap())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyZ::constant(1);
        for _ in 0..e {
            acc = BiPoly::mul(&acc, self);
        }
        acc
    }

    /// Coefficientwise reduction modulo a prime.
    pub fn reduce_mod(&self, p: &BigInt) -> Result<Reduction> {
        let degrees = self.degrees().ok_or(Error::ZeroPolynomial)?;
        check_prime(p)?;
        let reduced = PolyFp::from_parts(p.clone(), self.dense.reduce(p));
        let reduced_degrees = reduced.degrees().ok_or_else(|| Error::ZeroReduction(p.clone()))?;
        Ok(Reduction { degree_dropped: reduced_degrees != degrees, poly: reduced })
    }

    /// Canonical text form; re-parses to the same polynomial.
    pub fn print_canonical(&self) -> String {
        self.to_string()
    }
}

impl BiPoly for PolyZ {
    fn modulus(&self) -> Option<&BigInt> {
        None
    }

    fn dense(&self) -> &Dense {
        &self.dense
    }

    fn with_dense(&self, dense: Dense) -> Self {
        PolyZ::from_dense(dense)
    }
}

/// Result of [`PolyZ::reduce_mod`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub poly: PolyFp,
    /// True when `(deg_x, deg_y)` of the reduction differs from the source.
    pub degree_dropped: bool,
}

/// Bivariate polynomial over `F_p`, entries kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: BigInt,
    dense: Dense,
}

impl PolyFp {
    /// Reduces `rows` modulo `p`; fails unless `p` is prime.
    pub fn new<T: Clone + Into<BigInt>>(p: impl Into<BigInt>, rows: &[Vec<T>]) -> Result<Self> {
        let p = p.into();
        check_prime(&p)?;
        Ok(PolyFp::from_parts(p, PolyZ::from_rows(rows).dense))
    }

    /// Caller guarantees `p` is prime.
    pub(crate) fn from_parts(p: BigInt, dense: Dense) -> Self {
        let dense = dense.reduce(&p);
        PolyFp { p, dense }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// Representatives in `[0, p)` viewed as an integer polynomial.
    pub fn lift(&self) -> PolyZ {
        PolyZ { dense: self.dense.clone() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(BiPoly::add(self, other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(BiPoly::sub(self, other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(BiPoly::mul(self, other))
    }
}

impl BiPoly for PolyFp {
    fn modulus(&self) -> Option<&BigInt> {
        Some(&self.p)
    }

    fn dense(&self) -> &Dense {
        &self.dense
    }

    fn with_dense(&self, dense: Dense) -> Self {
        PolyFp::from_parts(self.p.clone(), dense)
    }
}

pub(crate) fn check_prime(p: &BigInt) -> Result<()> {
    if p.sign() == Sign::Plus && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

macro_rules! forward_ops {
    ($ty:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: Self) -> $ty {
                BiPoly::add(self, rhs)
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: Self) -> $ty {
                BiPoly::sub(self, rhs)
            }
        }
        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: Self) -> $ty {
                BiPoly::mul(self, rhs)
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                BiPoly::neg(self)
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_dense(f, &self.dense)
            }
        }
    };
}

forward_ops!(PolyZ);
forward_ops!(PolyFp);

fn write_monomial(f: &mut fmt::Formatter<'_>, var: char, e: usize) -> fmt::Result {
    match e {
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

/// Terms in descending `x` then `y` order, `*` between factors, no spaces.
fn write_dense(f: &mut fmt::Formatter<'_>, dense: &Dense) -> fmt::Result {
    if dense.is_zero() {
        return f.write_str("0");
    }
    for (idx, (i, j, c)) in dense.terms().enumerate() {
        let negative = c.is_negative();
        if negative {
            f.write_str("-")?;
        } else if idx > 0 {
            f.write_str("+")?;
        }
        let mag = c.abs();
        let mut need_star = false;
        if !mag.is_one() || (i == 0 && j == 0) {
            write!(f, "{mag}")?;
            need_star = true;
        }
        if i > 0 {
            if need_star {
                f.write_str("*")?;
            }
            write_monomial(f, 'x', i)?;
            need_star = true;
        }
        if j > 0 {
            if need_star {
                f.write_str("*")?;
            }
            write_monomial(f, 'y', j)?;
        }
    }
    Ok(())
}
