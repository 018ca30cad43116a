//! Small exact integer matrices for proximity-matrix arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// A square integer matrix, row-major. All arithmetic is exact over `i64`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len(), "matrix/vector size mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        for i in 0..self.n {
            if self.get(i, i) != 1 {
                return false;
            }
            for j in i + 1..self.n {
                if self.get(i, j) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Exact inverse of a unit lower-triangular matrix by forward
    /// substitution. The inverse is again integral and unit lower-triangular.
    pub fn inverse_unit_lower(&self) -> IntMatrix {
        assert!(self.is_unit_lower_triangular(), "matrix must be unit lower-triangular");
        let n = self.n;
        let mut inv = Self::zero(n);
        for j in 0..n {
            for i in j..n {
                let mut x = if i == j { 1 } else { 0 };
                for k in j..i {
                    x -= self.get(i, k) * inv.get(k, j);
                }
                inv.set(i, j, x);
            }
        }
        inv
    }

    pub fn min_entry(&self) -> i64 {
        self.data.iter().copied().min().unwrap_or(0)
    }

    pub fn has_negative_entry(&self) -> bool {
        self.data.iter().any(|&x| x < 0)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.n, self.n)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}
