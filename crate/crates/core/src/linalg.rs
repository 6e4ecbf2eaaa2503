//! Exact linear algebra over the rationals.
//!
//! Every Hom-space, intertwiner and homotopy computation in the crate bottoms
//! out here. Elimination runs fraction-free on integer rows (Bareiss) and is
//! normalized to a rational reduced row echelon form at the end.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ground field element. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn scalar(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor for integer matrices, mostly used in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| scalar(v)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&-Scalar::one())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Mat) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(row + i, col + j)].clone();
            }
        }
        m
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(format_scalar).collect()).collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_strings())
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form.
pub fn rref(a: &Mat) -> Rref {
    let (rows, cols) = a.shape();
    // Clear denominators row by row so elimination runs over the integers.
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = a.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let factor = m[i][c].clone();
            for j in c..cols {
                let v = &piv * &m[i][j] - &factor * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            for j in 0..c {
                debug_assert!(m[i][j].is_zero());
                m[i][j] = BigInt::zero();
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    // Normalize: unit pivots, then clear above each pivot.
    let mut reduced = Mat::zeros(rows, cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let piv = Scalar::from_integer(m[i][pc].clone());
        for j in pc..cols {
            if !m[i][j].is_zero() {
                reduced[(i, j)] = Scalar::from_integer(m[i][j].clone()) / &piv;
            }
        }
    }
    for (i, &pc) in pivots.iter().enumerate().rev() {
        for k in 0..i {
            let factor = reduced[(k, pc)].clone();
            if factor.is_zero() {
                continue;
            }
            for j in pc..cols {
                let v = &reduced[(i, j)] * &factor;
                if !v.is_zero() {
                    reduced[(k, j)] -= v;
                }
            }
        }
    }
    Rref { reduced, rank: pivots.len(), pivot_cols: pivots }
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn kernel_basis(a: &Mat) -> Vec<Vec<Scalar>> {
    let Rref { reduced, pivot_cols, .. } = rref(a);
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (i, &p) in pivot_cols.iter().enumerate() {
                v[p] = -reduced[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Mat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} rows against a right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let aug = a.hstack(&Mat::from_columns(a.rows(), &[b.to_vec()]));
    let Rref { reduced, pivot_cols, .. } = rref(&aug);
    if pivot_cols.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); a.cols()];
    for (i, &p) in pivot_cols.iter().enumerate() {
        x[p] = reduced[(i, a.cols())].clone();
    }
    Ok(Some(x))
}

/// Standard basis vectors completing `span(subspace)` to the whole space.
pub fn quotient_basis(space_dim: usize, subspace: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let s = Subspace::new(space_dim, subspace);
    s.free_cols()
        .into_iter()
        .map(|j| {
            let mut v = vec![Scalar::zero(); space_dim];
            v[j] = Scalar::one();
            v
        })
        .collect()
}

/// A subspace of `Q^dim`, held in reduced row echelon form.
///
/// Reducing a vector against the echelon rows zeroes its pivot coordinates;
/// what is left at the free coordinates are its coordinates in the quotient
/// with respect to the standard complement from [`quotient_basis`].
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize, spanning: &[Vec<Scalar>]) -> Self {
        if spanning.is_empty() {
            return Subspace { dim, rows: Vec::new(), pivots: Vec::new() };
        }
        let m = Mat::from_rows(spanning.to_vec());
        assert_eq!(m.cols(), dim);
        let r = rref(&m);
        let rows = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Subspace { dim, rows, pivots: r.pivot_cols }
    }

    pub fn zero(dim: usize) -> Self {
        Subspace::new(dim, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis of the subspace.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&j| !is_pivot[j]).collect()
    }

    /// `v` minus the unique element of the subspace agreeing with it on the pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` modulo the subspace, indexed by [`Self::free_cols`].
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.free_cols().into_iter().map(|j| r[j].clone()).collect()
    }

    /// Coordinates of a member `v` in the echelon basis, `None` if `v` is not a member.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Coordinates of `v` in the column basis `basis` (independent columns), if `v` lies in its span.
pub fn coords_in_columns(basis: &Mat, v: &[Scalar]) -> Option<Vec<Scalar>> {
    solve(basis, v).expect("coordinate system shape")
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let r = rref(&a.hstack(&Mat::identity(n)));
    if r.rank < n || r.pivot_cols.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.reduced.block(0, n, n, n))
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn sign(s: &Scalar) -> i32 {
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let r = rref(&Mat::identity(2));
        assert_eq!(r.reduced, Mat::identity(2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let r = rref(&Mat::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_permutation() {
        let r = rref(&Mat::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.reduced, Mat::identity(2));
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_with_fractions() {
        let a = Mat::from_rows(vec![
            vec![Scalar::new(1.into(), 2.into()), scalar(1), scalar(3)],
            vec![scalar(2), Scalar::new(1.into(), 3.into()), scalar(0)],
        ]);
        let r = rref(&a);
        assert_eq!(r.rank, 2);
        // Row space is preserved: original rows reduce to zero against it.
        let s = Subspace::new(3, &[r.reduced.row(0).to_vec(), r.reduced.row(1).to_vec()]);
        assert!(s.contains(a.row(0)) && s.contains(a.row(1)));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&Mat::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![v(&[-2, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1]);
        assert_eq!(solve(&Mat::identity(2), &b).unwrap(), Some(b.clone()));
        let a = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&a, &v(&[1, 3])).unwrap(), None);
        let x = solve(&a, &v(&[1, 2])).unwrap().unwrap();
        assert_eq!(&x[0] + scalar(2) * &x[1], scalar(1));
        assert!(matches!(solve(&a, &v(&[1])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_basis(3, &[]).len(), 3);
        assert!(quotient_basis(2, &[v(&[1, 0]), v(&[0, 1])]).is_empty());
        let q = quotient_basis(2, &[v(&[1, 1])]);
        assert_eq!(q.len(), 1);
        let together = Mat::from_rows(vec![v(&[1, 1]), q[0].clone()]);
        assert_eq!(together.rank(), 2);
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::new(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 2, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.quotient_coords(&v(&[1, 1, 0])), v(&[0]));
        assert_eq!(s.quotient_coords(&v(&[0, 0, 1])).len(), 1);
    }

    #[test]
    fn inverse_and_scalars() {
        let a = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.mul(&inverse(&a).unwrap()), Mat::identity(2));
        assert!(inverse(&Mat::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        let s = parse_scalar("-6/4").unwrap();
        assert_eq!(format_scalar(&s), "-3/2");
        assert_eq!(format_scalar(&parse_scalar("7").unwrap()), "7");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                Mat::from_rows(xs.chunks(c).map(|ch| ch.iter().map(|&x| scalar(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_mat()) {
            let once = rref(&a).reduced;
            prop_assert_eq!(rref(&once).reduced, once);
        }

        #[test]
        fn rank_nullity(a in small_mat()) {
            let r = rref(&a);
            let k = kernel_basis(&a);
            prop_assert_eq!(r.rank + k.len(), a.cols());
            for x in &k {
                prop_assert!(is_zero_vec(&a.mul_vec(x)));
            }
        }

        #[test]
        fn solve_is_exact(a in small_mat(), seed in proptest::collection::vec(-3i64..4, 4)) {
            let x0: Vec<Scalar> = (0..a.cols()).map(|i| scalar(seed[i % seed.len()])).collect();
            let b = a.mul_vec(&x0);
            let x = solve(&a, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }
}
