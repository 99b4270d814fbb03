//! Dense exact matrices: integer products, Bareiss determinants, Smith
//! invariant factors, rational inertia and kernels, and GF(2) solving.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length".into()));
        }
        let mut data = Vec::with_capacity(rows * cols.len());
        for i in 0..rows {
            for c in cols {
                data.push(c[i].clone());
            }
        }
        Ok(Matrix { rows, cols: cols.len(), data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn checked_mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = scalar::add(out.get(i, j), &scalar::mul(a, other.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.zip(other, scalar::add)
    }

    pub fn checked_sub(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.zip(other, scalar::sub)
    }

    fn zip(&self, other: &Matrix<T>, f: fn(&T, &T) -> Result<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect::<Result<Vec<T>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc = scalar::add(&acc, &scalar::mul(a, x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == if i == j { T::one() } else { T::zero() }))
    }

    pub fn to_bigint(&self) -> Matrix<BigInt> {
        self.map(|x| x.to_bigint().expect("integer scalar"))
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.to_bigint().expect("integer scalar")))
    }

    /// Fraction-free Gaussian elimination; every division is exact.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = scalar::sub(&scalar::mul(m.get(i, j), m.get(k, k))?, &scalar::mul(m.get(i, k), m.get(k, j))?)?;
                    m.set(i, j, num / prev.clone());
                }
                m.set(i, k, T::zero());
            }
            prev = m.get(k, k).clone();
        }
        scalar::mul(&sign, m.get(n - 1, n - 1))
    }

    /// Smith invariant factors `d₁ | d₂ | …`, all positive, one per unit of rank.
    pub fn smith_invariants(&self) -> Result<Vec<T>> {
        let mut m = self.clone();
        let (r, c) = (m.rows, m.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            // pivot: smallest nonzero absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let v = m.get(i, j);
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let p = m.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..r {
                    let q = m.get(i, t).div_floor(&p);
                    if !q.is_zero() {
                        for j in t..c {
                            let v = scalar::sub(m.get(i, j), &scalar::mul(&q, m.get(t, j))?)?;
                            m.set(i, j, v);
                        }
                    }
                    if !m.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..c {
                    let q = m.get(t, j).div_floor(&p);
                    if !q.is_zero() {
                        for i in t..r {
                            let v = scalar::sub(m.get(i, j), &scalar::mul(&q, m.get(i, t))?)?;
                            m.set(i, j, v);
                        }
                    }
                    if !m.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility of the remaining block by the pivot
                    let bad = (t + 1..r).flat_map(|i| (t + 1..c).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_multiple_of(&p));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in t..c {
                                let v = scalar::add(m.get(t, j), m.get(i, j))?;
                                m.set(t, j, v);
                            }
                            continue;
                        }
                    }
                }
                // move the smallest remaining entry of row/column t into the pivot
                let mut best = (t, t);
                for i in t..r {
                    let v = m.get(i, t);
                    if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    let v = m.get(t, j);
                    if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                m.swap_cols(t, best.1);
            }
            diag.push(m.get(t, t).abs());
            t += 1;
        }
        Ok(diag)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.smith_invariants()?.len())
    }
}

/// Counts of positive, negative and zero eigenvalues of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Sylvester inertia by symmetric (congruence) Gaussian elimination over ℚ.
pub fn inertia(form: &Matrix<BigRational>) -> Result<Inertia> {
    let n = form.rows();
    if n != form.cols() {
        return Err(Error::Dimension("form must be square".into()));
    }
    let mut m = form.clone();
    for i in 0..n {
        for j in 0..i {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::Dimension("form must be symmetric".into()));
            }
        }
    }
    let mut res = Inertia { positive: 0, negative: 0, zero: 0 };
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let _ = first;
        // a nonzero diagonal pivot, or create one from an off-diagonal pair
        let pivot = active.iter().copied().find(|&i| !m.get(i, i).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !m.get(i, j).is_zero());
                match pair {
                    None => {
                        res.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // e_i ← e_i + e_j gives diagonal 2·m_ij
                        for k in 0..n {
                            let v = m.get(i, k) + m.get(j, k);
                            m.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = m.get(k, i) + m.get(k, j);
                            m.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let d = m.get(p, p).clone();
        if d.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = m.get(i, p) / &d;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = m.get(i, k) - &f * m.get(p, k);
                m.set(i, k, v);
            }
        }
        for &i in &active {
            m.set(i, p, BigRational::zero());
            m.set(p, i, BigRational::zero());
        }
    }
    Ok(res)
}

/// Basis of the right kernel `{x : Mx = 0}` over ℚ.
pub fn rational_kernel(m: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !a.get(i, col).is_zero()) else { continue };
        a.swap_rows(row, p);
        let inv = a.get(row, col).recip();
        for j in 0..c {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for i in 0..r {
            if i != row && !a.get(i, col).is_zero() {
                let f = a.get(i, col).clone();
                for j in 0..c {
                    let v = a.get(i, j) - &f * a.get(row, j);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); c];
            v[f] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -a.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// Solve `Ax = b` over GF(2). Rows of `a` are equations.
pub fn solve_gf2(a: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rows: Vec<(Vec<bool>, bool)> = a.iter().cloned().zip(b.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[col]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].0[col] {
                let (src, rhs) = rows[r].clone();
                for (x, s) in rows[i].0.iter_mut().zip(&src) {
                    *x ^= *s;
                }
                rows[i].1 ^= rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; n];
    for (k, &p) in pivots.iter().enumerate() {
        x[p] = rows[k].1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn product_and_identity() {
        let a = Matrix::from_rows(vec![vec![1i64, 2], vec![3, 4]]).unwrap();
        let i = Matrix::<i64>::identity(2);
        assert_eq!(a.checked_mul(&i).unwrap(), a);
        assert_eq!(a.checked_mul(&a).unwrap(), Matrix::from_rows(vec![vec![7, 10], vec![15, 22]]).unwrap());
        assert!(Matrix::from_rows(vec![vec![i64::MAX]]).unwrap().checked_mul(&Matrix::from_rows(vec![vec![2]]).unwrap()).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = Matrix::from_rows(vec![vec![2i64, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap();
        assert_eq!(a.determinant().unwrap(), 4);
        let b = Matrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]).unwrap();
        assert_eq!(b.determinant().unwrap(), -1);
    }

    #[test]
    fn smith_examples() {
        let a = Matrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(a.smith_invariants().unwrap(), vec![2, 6, 12]);
        let z = Matrix::<i64>::zeros(2, 3);
        assert!(z.smith_invariants().unwrap().is_empty());
        let b = Matrix::from_rows(vec![vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(b.smith_invariants().unwrap(), vec![1, 6]);
    }

    #[test]
    fn inertia_of_hyperbolic_and_e8_like() {
        let h = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(inertia(&h).unwrap(), Inertia { positive: 1, negative: 1, zero: 0 });
        let d = Matrix::from_rows(vec![vec![q(-2), q(1), q(0)], vec![q(1), q(-2), q(1)], vec![q(0), q(1), q(-2)]]).unwrap();
        assert_eq!(inertia(&d).unwrap().signature(), -3);
        let z = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(inertia(&z).unwrap(), Inertia { positive: 1, negative: 0, zero: 1 });
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
        let k = rational_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for i in 0..2 {
                let s: BigRational = (0..3).map(|j| m.get(i, j) * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn gf2_solve_and_inconsistency() {
        let a = vec![vec![true, true], vec![false, true]];
        assert_eq!(solve_gf2(&a, &[true, true]), Some(vec![false, true]));
        let b = vec![vec![true, true], vec![true, true]];
        assert_eq!(solve_gf2(&b, &[true, false]), None);
    }
}
