//! Dense and sparse exact linear algebra over a field-like scalar.
//!
//! Gaussian elimination with exact division is all the engine needs:
//! kernels of stacked curvature matrices, ranks of Killing-field
//! component matrices, inverses of constant frame metrics, and the
//! floating-point variant for the finite-difference oracle.

use crate::scalar::Scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense row-major matrix over the scalar `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<C: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        let data = self.data.iter().map(|x| x.clone() * c.clone()).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = C::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let d = self[(r, j)].clone() * f.clone();
                        self[(i, j)] = self[(i, j)].clone() - d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel (columns `x` with `self * x = 0`).
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.sort_unstable();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![C::zero(); self.cols];
            v[fc] = C::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = C::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        if rhs[(k, l)].is_zero() {
                            continue;
                        }
                        out[(i * rhs.rows + k, j * rhs.cols + l)] =
                            self[(i, j)].clone() * rhs[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<C: Scalar> std::ops::Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: Scalar> Add for &Matrix<C> {
    type Output = Matrix<C>;
    fn add(self, rhs: Self) -> Matrix<C> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl<C: Scalar> Sub for &Matrix<C> {
    type Output = Matrix<C>;
    fn sub(self, rhs: Self) -> Matrix<C> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }
}

impl<C: Scalar> Neg for &Matrix<C> {
    type Output = Matrix<C>;
    fn neg(self) -> Matrix<C> {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

impl<C: Scalar> Mul for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: Self) -> Matrix<C> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::<C>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A sparse row: sorted `(column, coefficient)` pairs, coefficients nonzero.
pub type SparseRow<C> = Vec<(usize, C)>;

/// Kernel basis of a sparse system, as dense vectors.
///
/// Plain elimination on sparse rows; the symplectic-form system couples at
/// most two unknowns per row, so fill-in stays negligible there.
pub fn sparse_kernel<C: Scalar>(rows: Vec<SparseRow<C>>, ncols: usize) -> Vec<Vec<C>> {
    // pivot_of_col[c] = index into `reduced` of the row pivoting on c
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut reduced: Vec<SparseRow<C>> = Vec::new();

    for mut row in rows {
        loop {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|&(j, _)| j);
            let Some(&(lead, ref lc)) = row.first() else {
                break;
            };
            match pivot_of_col[lead] {
                None => {
                    // normalize so the leading coefficient is 1
                    let inv = C::one() / lc.clone();
                    for (_, c) in row.iter_mut() {
                        *c = c.clone() * inv.clone();
                    }
                    pivot_of_col[lead] = Some(reduced.len());
                    reduced.push(row);
                    break;
                }
                Some(pi) => {
                    let factor = lc.clone();
                    let pivot_row = reduced[pi].clone();
                    let mut merged: SparseRow<C> = Vec::new();
                    let (mut a, mut b) = (row.into_iter().peekable(), pivot_row.into_iter().peekable());
                    loop {
                        match (a.peek(), b.peek()) {
                            (None, None) => break,
                            (Some(_), None) => merged.push(a.next().unwrap()),
                            (None, Some(_)) => {
                                let (j, c) = b.next().unwrap();
                                merged.push((j, -(c * factor.clone())));
                            }
                            (Some(&(ja, _)), Some(&(jb, _))) => {
                                if ja < jb {
                                    merged.push(a.next().unwrap());
                                } else if jb < ja {
                                    let (j, c) = b.next().unwrap();
                                    merged.push((j, -(c * factor.clone())));
                                } else {
                                    let (j, ca) = a.next().unwrap();
                                    let (_, cb) = b.next().unwrap();
                                    let v = ca - cb * factor.clone();
                                    if !v.is_zero() {
                                        merged.push((j, v));
                                    }
                                }
                            }
                        }
                    }
                    row = merged;
                }
            }
        }
    }

    // back-substitute to full reduced form
    let pivot_cols: Vec<usize> = (0..ncols).filter(|&c| pivot_of_col[c].is_some()).collect();
    for &c in pivot_cols.iter().rev() {
        let pi = pivot_of_col[c].unwrap();
        let prow = reduced[pi].clone();
        for ri in 0..reduced.len() {
            if ri == pi {
                continue;
            }
            let coeff = reduced[ri]
                .iter()
                .find(|&&(j, _)| j == c)
                .map(|(_, v)| v.clone());
            if let Some(coeff) = coeff {
                let mut updated: SparseRow<C> = Vec::new();
                let (mut a, mut b) = (
                    reduced[ri].clone().into_iter().peekable(),
                    prow.clone().into_iter().peekable(),
                );
                loop {
                    match (a.peek(), b.peek()) {
                        (None, None) => break,
                        (Some(_), None) => updated.push(a.next().unwrap()),
                        (None, Some(_)) => {
                            let (j, v) = b.next().unwrap();
                            updated.push((j, -(v * coeff.clone())));
                        }
                        (Some(&(ja, _)), Some(&(jb, _))) => {
                            if ja < jb {
                                updated.push(a.next().unwrap());
                            } else if jb < ja {
                                let (j, v) = b.next().unwrap();
                                updated.push((j, -(v * coeff.clone())));
                            } else {
                                let (j, ca) = a.next().unwrap();
                                let (_, cb) = b.next().unwrap();
                                let v = ca - cb * coeff.clone();
                                if !v.is_zero() {
                                    updated.push((j, v));
                                }
                            }
                        }
                    }
                }
                reduced[ri] = updated;
            }
        }
    }

    let free: Vec<usize> = (0..ncols).filter(|&c| pivot_of_col[c].is_none()).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![C::zero(); ncols];
        v[fc] = C::one();
        for &pc in &pivot_cols {
            let pi = pivot_of_col[pc].unwrap();
            if let Some((_, coeff)) = reduced[pi].iter().find(|&&(j, _)| j == fc) {
                v[pc] = -coeff.clone();
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 1, -1], &[3, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let dense = m(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[1, 0, -1, 0]]);
        let rows: Vec<SparseRow<Rat>> = (0..dense.nrows())
            .map(|i| {
                (0..dense.ncols())
                    .filter(|&j| !dense[(i, j)].is_zero())
                    .map(|j| (j, dense[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let sk = sparse_kernel(rows, 4);
        assert_eq!(sk.len(), dense.kernel().len());
        for v in &sk {
            assert!(dense.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn f64_matrix_inverse() {
        let a: Matrix<f64> =
            Matrix::from_rows(vec![vec![4.0, 1.0], vec![2.0, 3.0]]);
        let inv = a.inverse().unwrap();
        let id = &a * &inv;
        assert!((id[(0, 0)] - 1.0).abs() < 1e-12 && id[(0, 1)].abs() < 1e-12);
    }
}
