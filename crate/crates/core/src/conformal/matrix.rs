//! Square matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::GaussRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<GaussRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![GaussRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| {
            if i == j {
                GaussRational::one()
            } else {
                GaussRational::zero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Builds a matrix from rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    field: format!("row {i}"),
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Integer entries, row by row. Panics if the rows are ragged.
    pub fn from_ints<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Matrix::from_fn(N, |i, j| GaussRational::from_int(rows[i][j]))
    }

    pub fn diagonal(entries: &[GaussRational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                GaussRational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<GaussRational>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[_]>::to_vec)
            .collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[GaussRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(GaussRational::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Matrix) -> Matrix {
        &(self * other) + &(other * self)
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::identity(self.n), |acc, _| &acc * self)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let m = other.n;
        Matrix::from_fn(self.n * m, |i, j| {
            self.get(i / m, j / m) * other.get(i % m, j % m)
        })
    }

    pub fn apply(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(GaussRational::zero(), |acc, j| {
                    &acc + &(self.get(i, j) * &v[j])
                })
            })
            .collect()
    }

    /// Leading `k×k` block.
    pub fn leading(&self, k: usize) -> Matrix {
        Matrix::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// Determinant by fraction-exact elimination.
    pub fn det(&self) -> GaussRational {
        let n = self.n;
        let mut a = self.rows();
        let mut det = GaussRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return GaussRational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                let (top, bottom) = a.split_at_mut(r);
                for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = Matrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot, col);
            b.swap(pivot, col);
            let inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let ta = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &ta;
                    let tb = &f * &b[col][c];
                    b[r][c] = &b[r][c] - &tb;
                }
            }
        }
        Matrix::from_rows(b).ok()
    }

    /// Sylvester's criterion: hermitian with every leading principal minor
    /// real and positive.
    pub fn is_positive_definite(&self) -> bool {
        self.is_hermitian() && (1..=self.n).all(|k| self.leading(k).det().is_positive_real())
    }

    pub(crate) fn check_dim(&self, field: &str, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                field: field.to_string(),
                expected: n,
                found: self.n,
            })
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<GaussRational>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// An exact linear span of matrices, kept in reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<GaussRational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.reduce(m.entries()).iter().all(Zero::is_zero)
    }

    /// Adds `m` to the span; returns false if it was already a member.
    pub fn insert(&mut self, m: &Matrix) -> bool {
        let mut v = self.reduce(m.entries());
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                *x = &*x - &(&f * r);
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_ints([[2, 1], [1, 1]]);
        assert_eq!(m.det(), GaussRational::one());
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_ints([[1, -1], [-1, 2]]));
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_ints([[1, 2], [2, 4]]).inverse().is_none());
        let c = Matrix::from_rows(vec![vec![g("0"), g("i")], vec![g("1"), g("0")]]).unwrap();
        assert_eq!(c.det(), -GaussRational::i());
        assert!((&c * &c.inverse().unwrap()).is_identity());
    }

    #[test]
    fn sylvester() {
        assert!(Matrix::from_ints([[2, 1], [1, 1]]).is_positive_definite());
        assert!(!Matrix::from_ints([[1, 2], [2, 1]]).is_positive_definite());
        assert!(!Matrix::from_ints([[0, 0], [0, 1]]).is_positive_definite());
        let h = Matrix::from_rows(vec![vec![g("2"), g("i")], vec![g("-i"), g("1")]]).unwrap();
        assert!(h.is_positive_definite());
        let not_h = Matrix::from_rows(vec![vec![g("2"), g("i")], vec![g("i"), g("1")]]).unwrap();
        assert!(!not_h.is_positive_definite());
    }

    #[test]
    fn kron_mixes_indices() {
        let a = Matrix::from_ints([[1, 2], [3, 4]]);
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k.get(2, 0), &GaussRational::from_int(3));
        assert_eq!(k.get(3, 1), &GaussRational::from_int(3));
        assert!(k.get(3, 0).is_zero());
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&Matrix::from_ints([[1, 1], [0, 0]])));
        assert!(s.insert(&Matrix::from_ints([[0, 1], [0, 1]])));
        assert!(!s.insert(&Matrix::from_ints([[2, 5], [0, 3]])));
        assert!(!s.contains(&Matrix::identity(2)));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn display_and_serde() {
        let m = Matrix::from_rows(vec![vec![g("1/2"), g("i")], vec![g("-i"), g("0")]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix>(r#"[["1","2"]]"#).is_err());
        assert_eq!(
            m.to_string(),
            format!("[[1/2, {}], [{}, 0]]", g("i"), g("-i"))
        );
    }
}
