//! The homology representation: integer symplectic matrices and transvections.
//!
//! Coordinates are `(a₁…a_g, b₁…b_g)` with `⟨aᵢ, bⱼ⟩ = δᵢⱼ`, so the form is
//! `⟨u, v⟩ = uᵀ J v` with `J = [[0, I], [−I, 0]]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// `⟨u, v⟩ = Σ uᵢ v_{g+i} − u_{g+i} vᵢ`.
pub fn pairing<T: Scalar>(u: &[T], v: &[T]) -> Result<T> {
    if u.len() != v.len() || !u.len().is_multiple_of(2) {
        return Err(Error::Dimension("pairing needs equal even lengths".into()));
    }
    let g = u.len() / 2;
    let mut acc = T::zero();
    for i in 0..g {
        acc = scalar::add(&acc, &scalar::sub(&scalar::mul(&u[i], &v[g + i])?, &scalar::mul(&u[g + i], &v[i])?)?)?;
    }
    Ok(acc)
}

pub fn standard_form<T: Scalar>(g: usize) -> Matrix<T> {
    let mut j = Matrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, T::one());
        j.set(g + i, i, -T::one());
    }
    j
}

/// A `2g × 2g` matrix with `MᵀJM = J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpMatrix<T> {
    genus: usize,
    m: Matrix<T>,
}

impl<T: Scalar> SpMatrix<T> {
    pub fn identity(genus: usize) -> Self {
        SpMatrix { genus, m: Matrix::identity(2 * genus) }
    }

    /// Validates the symplectic condition.
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
            return Err(Error::Dimension("symplectic matrix must be 2g x 2g".into()));
        }
        let s = SpMatrix { genus: m.rows() / 2, m };
        if !s.is_symplectic()? {
            return Err(Error::NotSymplectic);
        }
        Ok(s)
    }

    /// `T_v^k : x ↦ x + k⟨x, v⟩v`; `k = 1` is the image of a right-handed twist.
    pub fn transvection(v: &[T], k: i64) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::Dimension("class vector must have even length".into()));
        }
        let g = v.len() / 2;
        let n = 2 * g;
        let kk: T = scalar::from_i64(k)?;
        // column j is T(e_j) = e_j + k⟨e_j, v⟩ v, and ⟨e_j, v⟩ = (Jv)_j
        let jv: Vec<T> = (0..n).map(|j| if j < g { v[g + j].clone() } else { -v[j - g].clone() }).collect();
        let mut m = Matrix::identity(n);
        for j in 0..n {
            let c = scalar::mul(&kk, &jv[j])?;
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let val = scalar::add(m.get(i, j), &scalar::mul(&c, &v[i])?)?;
                m.set(i, j, val);
            }
        }
        Ok(SpMatrix { genus: g, m })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn is_symplectic(&self) -> Result<bool> {
        let j = standard_form::<T>(self.genus);
        Ok(self.m.transpose().checked_mul(&j)?.checked_mul(&self.m)? == j)
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::RankMismatch { left: self.genus, right: other.genus });
        }
        Ok(SpMatrix { genus: self.genus, m: self.m.checked_mul(&other.m)? })
    }

    /// `M⁻¹ = −J Mᵀ J`.
    pub fn inverse(&self) -> Result<Self> {
        let j = standard_form::<T>(self.genus);
        let inv = j.checked_mul(&self.m.transpose())?.checked_mul(&j)?.map(|x| -x.clone());
        Ok(SpMatrix { genus: self.genus, m: inv })
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        self.m.apply(v)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = SpMatrix::identity(self.genus);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }
}

/// Product `T_{v₁} T_{v₂} ⋯` in word order.
pub fn word_product<T: Scalar>(genus: usize, classes: &[(Vec<T>, i64)]) -> Result<SpMatrix<T>> {
    let mut acc = SpMatrix::identity(genus);
    for (v, s) in classes {
        acc = acc.mul(&SpMatrix::transvection(v, *s)?)?;
    }
    Ok(acc)
}

/// Classes of the standard chain `c₁ … c_{2g+1}`: `c_{2k} = a_k`, `c₁ = b₁`,
/// `c_{2k+1} = b_{k+1} − b_k`, `c_{2g+1} = −b_g`. Odd classes sum to zero and
/// consecutive classes pair to `±1`.
pub fn chain_classes(g: usize) -> Vec<Vec<i64>> {
    let n = 2 * g;
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut out = Vec::with_capacity(2 * g + 1);
    for idx in 1..=2 * g + 1 {
        let v = if idx % 2 == 0 {
            unit(idx / 2 - 1)
        } else if idx == 1 {
            unit(g)
        } else if idx == 2 * g + 1 {
            unit(2 * g - 1).into_iter().map(|x| -x).collect()
        } else {
            let k = (idx - 1) / 2;
            let mut v = unit(g + k);
            v[g + k - 1] = -1;
            v
        };
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn transvection_is_symplectic_and_unipotent() {
        let v = vec![1i64, -2, 3, 1];
        let t = SpMatrix::transvection(&v, 1).unwrap();
        assert!(t.is_symplectic().unwrap());
        assert!(t.mul(&SpMatrix::transvection(&v, -1).unwrap()).unwrap().is_identity());
        assert_eq!(t.inverse().unwrap(), SpMatrix::transvection(&v, -1).unwrap());
        assert_eq!(t.apply(&v).unwrap(), v);
    }

    #[test]
    fn right_twist_convention() {
        // genus one: a = (1,0), b = (0,1), ⟨a,b⟩ = 1, T_a(b) = b + ⟨b,a⟩a = b − a
        let ta = SpMatrix::transvection(&[1i64, 0], 1).unwrap();
        assert_eq!(ta.apply(&[0, 1]).unwrap(), vec![-1, 1]);
    }

    #[test]
    fn chain_pattern() {
        for g in 1..=5 {
            let c = chain_classes(g);
            for i in 0..c.len() {
                for j in 0..c.len() {
                    let p = pairing(&c[i], &c[j]).unwrap();
                    if i.abs_diff(j) == 1 {
                        assert_eq!(p.abs(), 1);
                    } else {
                        assert_eq!(p, 0);
                    }
                }
            }
            let mut sum = vec![0i64; 2 * g];
            for v in c.iter().step_by(2) {
                for (s, x) in sum.iter_mut().zip(v) {
                    *s += x;
                }
            }
            assert!(sum.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn generic_over_bigint() {
        let v: Vec<BigInt> = vec![1, 1].into_iter().map(BigInt::from).collect();
        let t = SpMatrix::transvection(&v, 3).unwrap();
        assert!(t.is_symplectic().unwrap());
        assert_eq!(t.pow(-1).unwrap().mul(&t).unwrap(), SpMatrix::identity(1));
    }
}
