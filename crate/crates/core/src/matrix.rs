//! Small dense square matrices over a cyclotomic field.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    conductor: u32,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, conductor);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::one(conductor);
        }
        m
    }

    pub fn zero(n: usize, conductor: u32) -> Self {
        Matrix {
            n,
            conductor,
            data: vec![Cyclotomic::zero(conductor); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let conductor = rows[0][0].conductor();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in {n}x{n} matrix",
                    row.len()
                )));
            }
            for c in row {
                if c.conductor() != conductor {
                    return Err(Error::ConductorMismatch(conductor, c.conductor()));
                }
                data.push(c);
            }
        }
        Ok(Matrix { n, conductor, data })
    }

    /// Integer matrix embedded at the given conductor.
    pub fn from_ints(conductor: u32, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Cyclotomic::from_int(conductor, v)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed integer matrix")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        let n = self.n;
        let mut out = Matrix::zero(n, self.conductor);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix {
            n: self.n,
            conductor: self.conductor,
            data: self.data.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        self.conj().transpose()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n, self.conductor)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conj_transpose())
            .map(|p| p.is_identity())
            .unwrap_or(false)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_real)
    }

    /// True when every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).filter(|&j| !self.get(i, j).is_zero()).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| !self.get(i, j).is_zero()).count() == 1)
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.conductor);
        for i in 0..self.n {
            acc += self.get(i, i);
        }
        acc
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Cyclotomic {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Cyclotomic::one(self.conductor);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Cyclotomic::zero(self.conductor);
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= &v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = Matrix::identity(n, self.conductor).rows();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(piv, col);
            b.swap(piv, col);
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
                    let va = &f * &a[col][c];
                    a[r][c] -= &va;
                    let vb = &f * &b[col][c];
                    b[r][c] -= &vb;
                }
            }
        }
        Matrix::from_rows(b)
    }

    /// Principal minor on the given index set.
    pub fn principal_minor(&self, idx: &[usize]) -> Cyclotomic {
        if idx.is_empty() {
            return Cyclotomic::one(self.conductor);
        }
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(rows).expect("square submatrix").det_cofactor()
    }

    /// Division-free Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Cyclotomic {
        let n = self.n;
        if n == 1 {
            return self.data[0].clone();
        }
        let mut acc = Cyclotomic::zero(self.conductor);
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor: Vec<Vec<Cyclotomic>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| self.get(i, c).clone())
                        .collect()
                })
                .collect();
            let sub = Matrix::from_rows(minor).expect("square minor").det_cofactor();
            let term = a * &sub;
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let t = Matrix::from_ints(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(t.det(), Cyclotomic::from_int(1, -1));
        assert_eq!(t.det_cofactor(), t.det());
        assert!(Matrix::identity(3, 1).det().is_one());
        let a = Matrix::from_ints(1, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(a.det(), a.det_cofactor());
    }

    #[test]
    fn singular_inverse_fails() {
        let a = Matrix::from_ints(1, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert!(a.det().is_zero());
    }

    #[test]
    fn unitary_checks() {
        let z = Cyclotomic::zeta(3);
        let one = Cyclotomic::one(3);
        let zero = Cyclotomic::zero(3);
        let d = Matrix::from_rows(vec![vec![z, zero.clone()], vec![zero, one]]).unwrap();
        assert!(d.is_unitary());
        assert!(!d.is_real());
        assert!(d.is_monomial());
    }
}
