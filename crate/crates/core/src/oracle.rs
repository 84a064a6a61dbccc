//! Brute-force factor search over tiny finite fields.
//!
//! Independent of the criterion: divisibility is decided by solving the
//! linear system `g * h = f` for the coefficients of `h`, and factor search
//! enumerates every candidate `g`. Only `F_p` and `F_{p^2}` with at most 9
//! elements are searched, so a negative answer says nothing about larger
//! extensions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve_fp, FpMatrix};
use crate::poly::{BiPoly, PolyFp};

/// Largest field size `p^k` accepted by [`brute_factor`].
pub const MAX_FIELD_SIZE: u64 = 9;
/// Largest coefficient-grid size `(deg_x + 1)(deg_y + 1)` accepted by [`brute_factor`].
pub const MAX_GRID_CELLS: usize = 9;

/// `F_p` (`k = 1`) or `F_p[a] / (a^2 + c1 a + c0)` (`k = 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    p: BigInt,
    k: usize,
    /// `(c0, c1)` of the defining quadratic when `k = 2`.
    min_poly: Option<(BigInt, BigInt)>,
}

/// Field element as coordinates in the basis `1, a`.
pub type Elem = Vec<BigInt>;

impl Field {
    pub fn prime(p: BigInt) -> Self {
        Field { p, k: 1, min_poly: None }
    }

    /// Quadratic extension defined by the first irreducible `t^2 + c1 t + c0`
    /// in `(c1, c0)` lexicographic order.
    pub fn quadratic(p: BigInt) -> Self {
        let pu = p.to_u64().expect("small prime");
        for c1 in 0..pu {
            for c0 in 1..pu {
                let has_root = (0..pu).any(|t| (t * t + c1 * t + c0) % pu == 0);
                if !has_root {
                    let min_poly = Some((BigInt::from(c0), BigInt::from(c1)));
                    return Field { p, k: 2, min_poly };
                }
            }
        }
        unreachable!("every prime field has an irreducible quadratic")
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> BigInt {
        self.p.pow(self.k as u32)
    }

    pub fn min_poly(&self) -> Option<&(BigInt, BigInt)> {
        self.min_poly.as_ref()
    }

    fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.k]
    }

    fn is_zero(&self, e: &Elem) -> bool {
        e.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.p)).collect()
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.min_poly {
            None => vec![(&a[0] * &b[0]).mod_floor(&self.p)],
            Some((c0, c1)) => {
                // a^2 = -c1 a - c0
                let sq = &a[1] * &b[1];
                let lo = &a[0] * &b[0] - &sq * c0;
                let hi = &a[0] * &b[1] + &a[1] * &b[0] - &sq * c1;
                vec![lo.mod_floor(&self.p), hi.mod_floor(&self.p)]
            }
        }
    }

    /// The `idx`-th element in enumeration order (base-p digits, low first).
    fn element(&self, mut idx: u64) -> Elem {
        let p = self.p.to_u64().expect("small prime");
        (0..self.k)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                BigInt::from(d)
            })
            .collect()
    }

    fn fmt_elem(&self, e: &Elem) -> String {
        if self.k == 1 || e[1].is_zero() {
            return e[0].to_string();
        }
        let hi = if e[1] == BigInt::from(1) { "a".to_string() } else { format!("{}*a", e[1]) };
        if e[0].is_zero() {
            hi
        } else {
            format!("({}+{hi})", e[0])
        }
    }
}

/// Dense bivariate polynomial over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfPoly {
    field: Field,
    deg_x: usize,
    deg_y: usize,
    coeffs: Vec<Elem>,
}

impl GfPoly {
    fn new(field: &Field, deg_x: usize, deg_y: usize, coeffs: Vec<Elem>) -> Self {
        GfPoly { field: field.clone(), deg_x, deg_y, coeffs }.trim()
    }

    pub fn from_fp(f: &PolyFp, field: &Field) -> Self {
        let (dx, dy) = f.degrees().unwrap_or((0, 0));
        let coeffs = (0..=dx)
            .flat_map(|i| (0..=dy).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut e = field.zero();
                e[0] = f.coeff(i as isize, j as isize).clone();
                e
            })
            .collect();
        GfPoly::new(field, dx, dy, coeffs)
    }

    /// Back to `F_p` when every coefficient lies in the prime field.
    pub fn to_fp(&self) -> Option<PolyFp> {
        if self.coeffs.iter().any(|e| e[1..].iter().any(|c| !c.is_zero())) {
            return None;
        }
        let rows: Vec<Vec<BigInt>> = (0..=self.deg_x)
            .map(|i| (0..=self.deg_y).map(|j| self.get(i, j)[0].clone()).collect())
            .collect();
        PolyFp::new(self.field.p.clone(), &rows).ok()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|e| self.field.is_zero(e))
    }

    pub fn degrees(&self) -> Option<(usize, usize)> {
        (!self.is_zero()).then_some((self.deg_x, self.deg_y))
    }

    fn get(&self, i: usize, j: usize) -> &Elem {
        &self.coeffs[i * (self.deg_y + 1) + j]
    }

    fn trim(mut self) -> Self {
        if self.is_zero() {
            self.deg_x = 0;
            self.deg_y = 0;
            self.coeffs = vec![self.field.zero()];
            return self;
        }
        let w = self.deg_y + 1;
        let nz = |e: &Elem| e.iter().any(|c| !c.is_zero());
        let dx = (0..=self.deg_x).rev().find(|&i| (0..w).any(|j| nz(&self.coeffs[i * w + j]))).unwrap();
        let dy = (0..w).rev().find(|&j| (0..=self.deg_x).any(|i| nz(&self.coeffs[i * w + j]))).unwrap();
        let coeffs = (0..=dx)
            .flat_map(|i| (0..=dy).map(move |j| i * w + j))
            .map(|idx| self.coeffs[idx].clone())
            .collect();
        GfPoly { field: self.field, deg_x: dx, deg_y: dy, coeffs }
    }

    pub fn mul(&self, other: &GfPoly) -> GfPoly {
        let field = &self.field;
        let (rx, ry) = (self.deg_x + other.deg_x, self.deg_y + other.deg_y);
        let mut out = vec![field.zero(); (rx + 1) * (ry + 1)];
        for i in 0..=self.deg_x {
            for j in 0..=self.deg_y {
                for k in 0..=other.deg_x {
                    for l in 0..=other.deg_y {
                        let t = field.mul(self.get(i, j), other.get(k, l));
                        let slot = &mut out[(i + k) * (ry + 1) + j + l];
                        *slot = field.add(slot, &t);
                    }
                }
            }
        }
        GfPoly::new(field, rx, ry, out)
    }
}

impl fmt::Display for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in (0..=self.deg_x).rev() {
            for j in (0..=self.deg_y).rev() {
                let c = self.get(i, j);
                if self.field.is_zero(c) {
                    continue;
                }
                let mut parts = Vec::new();
                let coeff = self.field.fmt_elem(c);
                if coeff != "1" || (i == 0 && j == 0) {
                    parts.push(coeff);
                }
                match i {
                    0 => {}
                    1 => parts.push("x".into()),
                    _ => parts.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("y".into()),
                    _ => parts.push(format!("y^{j}")),
                }
                terms.push(parts.join("*"));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Quotient `f / g` when `g` divides `f`, found by an `F_p`-linear solve.
///
/// Unknowns are the `F_p` coordinates of `h` with `deg h <= deg f - deg g`;
/// equations are the coordinates of `g * h - f`.
fn exact_quotient(g: &GfPoly, f: &GfPoly) -> Result<Option<GfPoly>> {
    let field = &g.field;
    let (gx, gy) = g.degrees().ok_or(Error::ZeroPolynomial)?;
    let Some((fx, fy)) = f.degrees() else {
        return Ok(Some(GfPoly::new(field, 0, 0, vec![field.zero()])));
    };
    if gx > fx || gy > fy {
        return Ok(None);
    }
    let (hx, hy) = (fx - gx, fy - gy);
    let k = field.k;
    let cells_f = (fx + 1) * (fy + 1);
    let cells_h = (hx + 1) * (hy + 1);
    let (rows, cols) = (cells_f * k, cells_h * k);

    let mut entries = vec![BigInt::zero(); rows * cols];
    for a in 0..=hx {
        for b in 0..=hy {
            for e in 0..k {
                let mut basis = field.zero();
                basis[e] = BigInt::from(1);
                let col = ((a * (hy + 1)) + b) * k + e;
                for i in 0..=gx {
                    for j in 0..=gy {
                        let t = field.mul(g.get(i, j), &basis);
                        let cell = (i + a) * (fy + 1) + (j + b);
                        for (c, v) in t.into_iter().enumerate() {
                            entries[(cell * k + c) * cols + col] = v;
                        }
                    }
                }
            }
        }
    }
    let rhs: Vec<BigInt> = (0..=fx)
        .flat_map(|i| (0..=fy).map(move |j| (i, j)))
        .flat_map(|(i, j)| f.get(i, j).clone())
        .collect();
    let system = FpMatrix::new_unchecked(field.p.clone(), rows, cols, entries)?;
    Ok(solve_fp(&system, &rhs)?.map(|x| {
        let coeffs = x.chunks(k).map(<[BigInt]>::to_vec).collect();
        GfPoly::new(field, hx, hy, coeffs)
    }))
}

/// True iff `g` divides `f` in `F_p[x, y]`.
pub fn divides_fp(g: &PolyFp, f: &PolyFp) -> Result<bool> {
    if g.p() != f.p() {
        return Err(Error::ModulusMismatch);
    }
    if g.is_constant() {
        return Err(Error::Domain("divisor must be nonconstant".into()));
    }
    let field = Field::prime(g.p().clone());
    Ok(exact_quotient(&GfPoly::from_fp(g, &field), &GfPoly::from_fp(f, &field))?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    /// `g * h = f` with both factors nonconstant.
    FactorFound { g: GfPoly, h: GfPoly },
    /// No factor over the searched field; not a proof of irreducibility.
    NoFactorWithinScope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub status: OracleStatus,
    pub field: Field,
    /// Degrees of the searched polynomial.
    pub degrees: (usize, usize),
    /// Number of candidate divisors tried.
    pub candidates_tried: u64,
}

impl OracleVerdict {
    pub fn found_factor(&self) -> bool {
        matches!(self.status, OracleStatus::FactorFound { .. })
    }
}

/// Exhaustive search for a nontrivial factor of `f` over `F_{p^k}`, `k` in {1, 2}.
///
/// Candidates `g` run over exact degrees `(a, b)` in increasing lexicographic
/// order with `(a, b) <= (m - a, n - b)`, so the factor of smaller degree is
/// the one enumerated. Each `g` is normalized to have its last nonzero
/// coefficient equal to 1 and coefficients are counted lexicographically, so
/// the reported factor is the first in a fixed order.
pub fn brute_factor(f: &PolyFp, k: usize) -> Result<OracleVerdict> {
    if !(1..=2).contains(&k) {
        return Err(Error::ScopeGuard(format!("extension degree {k} not in {{1, 2}}")));
    }
    let q = f.p().pow(k as u32);
    if q > BigInt::from(MAX_FIELD_SIZE) {
        return Err(Error::ScopeGuard(format!("field size {q} exceeds {MAX_FIELD_SIZE}")));
    }
    let (m, n) = f.degrees().ok_or(Error::ZeroPolynomial)?;
    if (m + 1) * (n + 1) > MAX_GRID_CELLS {
        return Err(Error::ScopeGuard(format!(
            "degree ({m}, {n}) has more than {MAX_GRID_CELLS} coefficients"
        )));
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let field = if k == 1 { Field::prime(f.p().clone()) } else { Field::quadratic(f.p().clone()) };
    let target = GfPoly::from_fp(f, &field);
    let q = q.to_u64().unwrap();
    let mut tried = 0u64;

    for a in 0..=m {
        for b in 0..=n {
            if (a, b) == (0, 0) || (a, b) > (m - a, n - b) {
                continue;
            }
            let cells = (a + 1) * (b + 1);
            for code in 0..q.pow(cells as u32) {
                let mut rest = code;
                let coeffs: Vec<Elem> = (0..cells)
                    .map(|_| {
                        let e = field.element(rest % q);
                        rest /= q;
                        e
                    })
                    .collect();
                let last_nonzero = coeffs.iter().rposition(|e| !field.is_zero(e));
                if last_nonzero.is_none_or(|i| coeffs[i] != field.element(1)) {
                    continue;
                }
                let g = GfPoly { field: field.clone(), deg_x: a, deg_y: b, coeffs };
                if g.clone().trim().degrees() != Some((a, b)) {
                    continue;
                }
                tried += 1;
                if let Some(h) = exact_quotient(&g, &target)? {
                    if g.mul(&h) != target {
                        return Err(Error::Invariant(format!("oracle factors do not multiply back: ({g})({h})")));
                    }
                    return Ok(OracleVerdict {
                        status: OracleStatus::FactorFound { g, h },
                        field,
                        degrees: (m, n),
                        candidates_tried: tried,
                    });
                }
            }
        }
    }
    Ok(OracleVerdict { status: OracleStatus::NoFactorWithinScope, field, degrees: (m, n), candidates_tried: tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn fp(s: &str, p: u64) -> PolyFp {
        parse_poly(s).unwrap().reduce_mod(&BigInt::from(p)).unwrap().poly
    }

    #[test]
    fn divisibility_examples() {
        let p: BigInt = "186940255267545011".parse().unwrap();
        let f = parse_poly("x^9*y-9*x^9-2*x+9*y+2").unwrap().reduce_mod(&p).unwrap().poly;
        let g = parse_poly("x-93470127633772547").unwrap().reduce_mod(&p).unwrap().poly;
        assert!(divides_fp(&g, &f).unwrap());

        assert!(divides_fp(&fp("x-60", 109), &fp("3*x^2-2*x+2+(x^2-3)*y", 109)).unwrap());
        assert!(!divides_fp(&fp("x", 5), &fp("x*y+1", 5)).unwrap());
        assert!(!divides_fp(&fp("x-59", 109), &fp("3*x^2-2*x+2+(x^2-3)*y", 109)).unwrap());
    }

    #[test]
    fn divisibility_errors() {
        assert_eq!(divides_fp(&fp("x", 5), &fp("x", 7)), Err(Error::ModulusMismatch));
        assert!(divides_fp(&fp("3", 5), &fp("x", 5)).is_err());
    }

    #[test]
    fn constructed_products_are_divisible() {
        let g = fp("x^2+3*x*y+1", 7);
        let h = fp("y^2+5*x+2", 7);
        let f = g.mul(&h);
        assert!(divides_fp(&g, &f).unwrap());
        assert!(divides_fp(&h, &f).unwrap());
    }

    #[test]
    fn finds_constructed_factor() {
        let f = fp("(x+1)*(y+1)", 3);
        let v = brute_factor(&f, 1).unwrap();
        let OracleStatus::FactorFound { g, h } = &v.status else { panic!("expected a factor") };
        assert_eq!(g.mul(h), GfPoly::from_fp(&f, &v.field));
        let mut found = [g.to_fp().unwrap().to_string(), h.to_fp().unwrap().to_string()];
        found.sort();
        // associates of x+1 and y+1, normalized so one factor is monic
        assert!(found.iter().any(|s| s == "y+1" || s == "x+1"));
    }

    #[test]
    fn bilinear_irreducible_over_f2() {
        let v = brute_factor(&fp("x*y+1", 2), 1).unwrap();
        assert_eq!(v.status, OracleStatus::NoFactorWithinScope);
        let v = brute_factor(&fp("x*y+1", 2), 2).unwrap();
        assert_eq!(v.status, OracleStatus::NoFactorWithinScope);
    }

    #[test]
    fn conjugate_pair_needs_extension() {
        let f = fp("x^2+y^2", 3);
        assert_eq!(brute_factor(&f, 1).unwrap().status, OracleStatus::NoFactorWithinScope);
        let v = brute_factor(&f, 2).unwrap();
        assert_eq!(v.field.min_poly(), Some(&(BigInt::from(1), BigInt::from(0))));
        let OracleStatus::FactorFound { g, h } = &v.status else { panic!("expected a factor") };
        assert_eq!(g.mul(h), GfPoly::from_fp(&f, &v.field));
        assert!(g.to_fp().is_none() || h.to_fp().is_none());
    }

    #[test]
    fn scope_guard() {
        assert!(matches!(brute_factor(&fp("x*y+1", 11), 1), Err(Error::ScopeGuard(_))));
        assert!(matches!(brute_factor(&fp("x*y+1", 5), 2), Err(Error::ScopeGuard(_))));
        assert!(matches!(brute_factor(&fp("x^4*y+1", 2), 1), Err(Error::ScopeGuard(_))));
        assert!(matches!(brute_factor(&fp("x*y+1", 2), 3), Err(Error::ScopeGuard(_))));
    }

    #[test]
    fn quadratic_field_choice() {
        assert_eq!(Field::quadratic(BigInt::from(2)).min_poly(), Some(&(BigInt::from(1), BigInt::from(1))));
        assert_eq!(Field::quadratic(BigInt::from(3)).min_poly(), Some(&(BigInt::from(1), BigInt::from(0))));
    }
}
