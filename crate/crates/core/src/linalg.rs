//! Exact linear algebra over the integers and over prime fields.
//!
//! Integer rank and maximal minors use Bareiss fraction-free elimination with
//! full pivoting; every division in the elimination is checked to be exact.
//! Prime-field routines are plain Gauss-Jordan on representatives in `[0, p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::mod_inverse;
use crate::poly::check_prime;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        IntMatrix::new(rows.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        IntMatrix::new(rows.len(), cols.len(), entries)
    }

    pub fn reduce_mod(&self, p: &BigInt) -> Result<FpMatrix> {
        FpMatrix::new(p.clone(), self.rows, self.cols, self.entries.clone())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows, self.cols, |r, c| self.get(r, c))
    }
}

fn write_rows<'a>(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    get: impl Fn(usize, usize) -> &'a BigInt,
) -> fmt::Result {
    let cells: Vec<Vec<String>> =
        (0..rows).map(|r| (0..cols).map(|c| get(r, c).to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        writeln!(f, "[{}]", line.join(" "))?;
    }
    Ok(())
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: BigInt,
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl FpMatrix {
    /// Reduces `entries` into `[0, p)`; fails unless `p` is prime.
    pub fn new(p: BigInt, rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        check_prime(&p)?;
        Self::new_unchecked(p, rows, cols, entries)
    }

    pub(crate) fn new_unchecked(p: BigInt, rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e.mod_floor(&p)).collect();
        Ok(FpMatrix { p, rows, cols, entries })
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(p: impl Into<BigInt>, rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        FpMatrix::new(p.into(), rows.len(), cols, entries)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let s: BigInt = self.row(r).iter().zip(v).map(|(a, b)| a * b).sum();
                s.mod_floor(&self.p)
            })
            .collect())
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    fn rref(&mut self) -> Vec<usize> {
        let p = self.p.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..cols {
                self.entries.swap(sel * cols + c, row * cols + c);
            }
            let inv = mod_inverse(self.get(row, col), &p).expect("nonzero element of a prime field");
            for c in col..cols {
                let v = (self.get(row, c) * &inv).mod_floor(&p);
                self.entries[row * cols + c] = v;
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..cols {
                    let v = (self.get(r, c) - &factor * self.get(row, c)).mod_floor(&p);
                    self.entries[r * cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows, self.cols, |r, c| self.get(r, c))
    }
}

/// A nonsingular square submatrix and its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub det_value: BigInt,
}

impl MinorWitness {
    /// Recomputes the determinant of the selected submatrix of `m`.
    pub fn verify(&self, m: &IntMatrix) -> Result<bool> {
        let sub = m.submatrix(&self.row_indices, &self.col_indices)?;
        Ok(det_rational(&sub) == self.det_value && !self.det_value.is_zero())
    }
}

/// Result of full-pivoting Bareiss elimination.
struct Elimination {
    rank: usize,
    /// Original row/column index at each position after the swaps.
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    /// Leading principal minors of the permuted matrix, one per pivot.
    pivots: Vec<BigInt>,
}

/// Bareiss elimination. Pivot = nonzero entry of least absolute value in the
/// active block, ties broken by (row, column) position.
fn bareiss(m: &IntMatrix, stop_at: usize) -> Result<Elimination> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut row_perm: Vec<usize> = (0..rows).collect();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let limit = rows.min(cols).min(stop_at);

    for k in 0..limit {
        let mut best: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                let v = &a[r * cols + c];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < a[br * cols + bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        if pr != k {
            for c in 0..cols {
                a.swap(pr * cols + c, k * cols + c);
            }
            row_perm.swap(pr, k);
        }
        if pc != k {
            for r in 0..rows {
                a.swap(r * cols + pc, r * cols + k);
            }
            col_perm.swap(pc, k);
        }

        let pivot = a[k * cols + k].clone();
        for r in k + 1..rows {
            let lead = a[r * cols + k].clone();
            for c in k + 1..cols {
                let num = &pivot * &a[r * cols + c] - &lead * &a[k * cols + c];
                let (q, rem) = num.div_rem(&prev);
                if !rem.is_zero() {
                    return Err(Error::Invariant(format!(
                        "inexact Bareiss division at step {k}, entry ({r}, {c})"
                    )));
                }
                a[r * cols + c] = q;
            }
            a[r * cols + k] = BigInt::zero();
        }
        pivots.push(pivot.clone());
        prev = pivot;
    }
    Ok(Elimination { rank: pivots.len(), row_perm, col_perm, pivots })
}

/// Rank over the rationals.
pub fn rank_int(m: &IntMatrix) -> Result<usize> {
    Ok(bareiss(m, usize::MAX)?.rank)
}

/// One nonsingular `target x target` submatrix with its exact determinant.
///
/// Indices are returned sorted; the determinant refers to the sorted
/// submatrix and is re-verified by an independent rational elimination.
pub fn max_minor(m: &IntMatrix, target: usize) -> Result<MinorWitness> {
    if target == 0 || target > m.rows.min(m.cols) {
        return Err(Error::RankDeficient { rank: m.rows.min(m.cols), target });
    }
    let elim = bareiss(m, target)?;
    if elim.rank < target {
        return Err(Error::RankDeficient { rank: rank_int(m)?, target });
    }
    let mut row_indices = elim.row_perm[..target].to_vec();
    let mut col_indices = elim.col_perm[..target].to_vec();
    // The last Bareiss pivot is the determinant of the permuted leading block.
    let permuted_det = elim.pivots[target - 1].clone();
    let sign = permutation_parity(&row_indices) ^ permutation_parity(&col_indices);
    row_indices.sort_unstable();
    col_indices.sort_unstable();
    let det_value = if sign { -permuted_det } else { permuted_det };

    let check = det_rational(&m.submatrix(&row_indices, &col_indices)?);
    if check != det_value {
        return Err(Error::Invariant(format!(
            "minor determinant mismatch: Bareiss {det_value}, rational elimination {check}"
        )));
    }
    Ok(MinorWitness { row_indices, col_indices, det_value })
}

/// True when sorting `v` needs an odd number of transpositions.
fn permutation_parity(v: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Determinant of a square matrix by Gaussian elimination over `Q`.
fn det_rational(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut a: Vec<BigRational> = m.entries.iter().cloned().map(BigRational::from_integer).collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(sel) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return BigInt::zero();
        };
        if sel != k {
            for c in 0..n {
                a.swap(sel * n + c, k * n + c);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det *= &pivot;
        for r in k + 1..n {
            let factor = &a[r * n + k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &a[r * n + c] - &factor * &a[k * n + c];
                a[r * n + c] = v;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Primitive integer vector spanning the first direction of the rational
/// kernel (free variables in column order), or `None` for full column rank.
pub fn kernel_vector_int(m: &IntMatrix) -> Option<Vec<BigInt>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigRational> = m.entries.iter().cloned().map(BigRational::from_integer).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(sel) = (row..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        for c in 0..cols {
            a.swap(sel * cols + c, row * cols + c);
        }
        let inv = a[row * cols + col].recip();
        for c in col..cols {
            a[row * cols + c] = &a[row * cols + c] * &inv;
        }
        for r in 0..rows {
            if r == row || a[r * cols + col].is_zero() {
                continue;
            }
            let factor = a[r * cols + col].clone();
            for c in col..cols {
                let v = &a[r * cols + c] - &factor * &a[row * cols + c];
                a[r * cols + c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[r * cols + free].clone();
    }
    let denom_lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&denom_lcm / q.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &content).collect())
}

/// Rank over `F_p`.
pub fn rank_fp(m: &FpMatrix) -> usize {
    m.clone().rref().len()
}

/// Basis of the right kernel over `F_p`.
///
/// From the reduced row echelon form, one vector per free column (in column
/// order) with that coordinate set to 1, then scaled so its first nonzero
/// coordinate is 1.
pub fn nullspace_fp(m: &FpMatrix) -> Vec<Vec<BigInt>> {
    let mut work = m.clone();
    let pivots = work.rref();
    let p = &m.p;
    (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigInt::zero(); m.cols];
            v[free] = BigInt::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (-work.get(r, free)).mod_floor(p);
            }
            let lead = v.iter().find(|x| !x.is_zero()).expect("free coordinate is 1");
            let inv = mod_inverse(lead, p).expect("nonzero element of a prime field");
            v.iter().map(|x| (x * &inv).mod_floor(p)).collect()
        })
        .collect()
}

/// Some solution of `A x = b` over `F_p`, or `None` when inconsistent.
pub fn solve_fp(a: &FpMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(Error::LengthMismatch { expected: a.rows, got: b.len() });
    }
    let cols = a.cols + 1;
    let mut entries = Vec::with_capacity(a.rows * cols);
    for r in 0..a.rows {
        entries.extend_from_slice(a.row(r));
        entries.push(b[r].clone());
    }
    let mut aug = FpMatrix::new_unchecked(a.p.clone(), a.rows, cols, entries)?;
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![BigInt::zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_int_examples() {
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(rank_int(&a).unwrap(), 2);
        let b = IntMatrix::from_rows(&[vec![-1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(rank_int(&b).unwrap(), 1);
        let z = IntMatrix::zeros(3, 2).unwrap();
        assert_eq!(rank_int(&z).unwrap(), 0);
    }

    #[test]
    fn max_minor_examples() {
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let w = max_minor(&a, 2).unwrap();
        assert_eq!(w.row_indices, vec![0, 1]);
        assert_eq!(w.col_indices, vec![0, 1]);
        assert_eq!(w.det_value, BigInt::from(1));

        let b = IntMatrix::from_rows(&[vec![-1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(max_minor(&b, 2), Err(Error::RankDeficient { rank: 1, target: 2 }));
    }

    #[test]
    fn max_minor_of_tall_matrix() {
        let m = IntMatrix::from_rows(&[vec![0, 0], vec![2, 4], vec![1, 3], vec![6, 12]]).unwrap();
        let w = max_minor(&m, 2).unwrap();
        assert!(w.verify(&m).unwrap());
        assert_eq!(w.row_indices.len(), 2);
    }

    #[test]
    fn determinant_sign_follows_sorted_indices() {
        let m = IntMatrix::from_rows(&[vec![5, 2, 0], vec![3, 1, 7], vec![4, 9, 6]]).unwrap();
        let w = max_minor(&m, 3).unwrap();
        // 5(6-63) - 2(18-28) + 0 = -285 + 20
        assert_eq!(w.det_value, BigInt::from(-265));
    }

    #[test]
    fn fp_examples() {
        let m = FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(rank_fp(&m), 2);
        assert!(nullspace_fp(&m).is_empty());

        let m = FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(nullspace_fp(&m), vec![ints(&[1, 2])]);

        let m = FpMatrix::from_rows(5, &[vec![0, 1, 0, 0], vec![0, 0, 1, 2]]).unwrap();
        assert_eq!(nullspace_fp(&m), vec![ints(&[1, 0, 0, 0]), ints(&[0, 0, 1, 2])]);
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::from_rows(7, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = ints(&[3, 5, 6]);
        assert_eq!(solve_fp(&id, &b).unwrap(), Some(b.clone()));

        let a = FpMatrix::from_rows(5, &[vec![1], vec![1]]).unwrap();
        assert_eq!(solve_fp(&a, &ints(&[1, 2])).unwrap(), None);
        assert!(solve_fp(&a, &ints(&[1])).is_err());
    }

    #[test]
    fn rejects_bad_shapes_and_moduli() {
        assert!(IntMatrix::from_rows::<i64>(&[]).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
        assert!(FpMatrix::from_rows(6, &[vec![1]]).is_err());
    }

    #[test]
    fn kernel_vector_examples() {
        let b = IntMatrix::from_rows(&[vec![-1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(kernel_vector_int(&b), Some(ints(&[1, 1])));
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(kernel_vector_int(&a), None);
        let c = IntMatrix::from_rows(&[vec![2, 3, 4]]).unwrap();
        let v = kernel_vector_int(&c).unwrap();
        assert_eq!(c.mul_vec(&v).unwrap(), ints(&[0]));
        assert_eq!(v, ints(&[-3, 2, 0]));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    /// Low-rank integer matrices as products of thin factors.
    fn low_rank_matrix() -> impl Strategy<Value = IntMatrix> {
        (2usize..6, 2usize..6, 1usize..3).prop_flat_map(|(r, c, k)| {
            (prop::collection::vec(-4i64..=4, r * k), prop::collection::vec(-4i64..=4, k * c)).prop_map(
                move |(u, v)| {
                    let e = (0..r * c)
                        .map(|idx| {
                            let (i, j) = (idx / c, idx % c);
                            BigInt::from((0..k).map(|t| u[i * k + t] * v[t * c + j]).sum::<i64>())
                        })
                        .collect();
                    IntMatrix::new(r, c, e).unwrap()
                },
            )
        })
    }

    // zero rows are skipped: they belong to no nonzero minor
    fn hadamard_sq(m: &IntMatrix) -> BigInt {
        (0..m.rows())
            .map(|r| m.row(r).iter().map(|x| x * x).sum::<BigInt>())
            .filter(|n| !n.is_zero())
            .product()
    }

    proptest! {
        #[test]
        fn rank_matches_mod_large_prime(m in prop_oneof![small_matrix(), low_rank_matrix()]) {
            // p^2 above the squared Hadamard bound of every minor, so no minor vanishes mod p.
            let bound = hadamard_sq(&m).max(BigInt::from(1)) * 4 + 1u32;
            let p = crate::numtheory::next_prime(&crate::numtheory::isqrt_ceil(&bound));
            let r = rank_int(&m).unwrap();
            prop_assert_eq!(rank_fp(&m.reduce_mod(&p).unwrap()), r);
            if r > 0 {
                let w = max_minor(&m, r).unwrap();
                prop_assert!(w.verify(&m).unwrap());
            }
        }

        #[test]
        fn rank_fp_never_exceeds_rank_int(m in prop_oneof![small_matrix(), low_rank_matrix()], idx in 0usize..4) {
            let p = BigInt::from([2, 3, 5, 7][idx]);
            prop_assert!(rank_fp(&m.reduce_mod(&p).unwrap()) <= rank_int(&m).unwrap());
        }

        #[test]
        fn minor_det_invariant_under_row_order(m in small_matrix()) {
            let r = rank_int(&m).unwrap();
            prop_assume!(r > 0);
            let w = max_minor(&m, r).unwrap();
            let mut rows = w.row_indices.clone();
            rows.reverse();
            let sub = m.submatrix(&rows, &w.col_indices).unwrap();
            prop_assert_eq!(det_rational(&sub).abs(), w.det_value.abs());
        }

        #[test]
        fn nullspace_is_kernel(m in prop_oneof![small_matrix(), low_rank_matrix()], idx in 0usize..4) {
            let p = BigInt::from([2, 3, 5, 7][idx]);
            let fm = m.reduce_mod(&p).unwrap();
            let basis = nullspace_fp(&fm);
            prop_assert_eq!(basis.len(), fm.cols() - rank_fp(&fm));
            for v in &basis {
                prop_assert!(fm.mul_vec(v).unwrap().iter().all(Zero::is_zero));
                let first = v.iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(first.is_one());
            }
        }

        #[test]
        fn solve_consistent_systems(m in small_matrix(), x in prop::collection::vec(0i64..11, 6)) {
            let fm = m.reduce_mod(&BigInt::from(11)).unwrap();
            let x: Vec<BigInt> = x[..fm.cols()].iter().map(|&v| BigInt::from(v)).collect();
            let b = fm.mul_vec(&x).unwrap();
            let sol = solve_fp(&fm, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(fm.mul_vec(&sol).unwrap(), b);
        }

        #[test]
        fn int_kernel_vector_is_exact(m in prop_oneof![small_matrix(), low_rank_matrix()]) {
            let r = rank_int(&m).unwrap();
            match kernel_vector_int(&m) {
                None => prop_assert_eq!(r, m.cols()),
                Some(v) => {
                    prop_assert!(r < m.cols());
                    prop_assert!(v.iter().any(|x| !x.is_zero()));
                    prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
                }
            }
        }
    }
}
