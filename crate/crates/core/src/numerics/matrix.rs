//! Dense square complex matrices and the Hermitian newtype used for every
//! orbit point and Lax block.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

/// Row-major dense `n x n` complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Builds from a row-major slice of length `n * n`.
    pub fn from_row_major(n: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data must have n*n entries");
        Self { n, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = C64::new(v, 0.0);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `A B - B A`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading_block(&self, k: usize) -> Self {
        assert!(k <= self.n);
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Embeds `self` as the leading block of an `n x n` zero matrix.
    pub fn pad_to(&self, n: usize) -> Self {
        assert!(n >= self.n);
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Block-diagonal sum of square matrices.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out[(off + i, off + j)] = b[(i, j)];
                }
            }
            off += b.n;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// `v v^dagger`
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = v[i] * v[j].conj();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Solves `self * X = rhs` by LU with partial pivoting. Returns `None`
    /// when a pivot vanishes.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        let n = self.n;
        assert_eq!(rhs.n, n);
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .unwrap();
            if a[(piv, col)].norm() == 0.0 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    b.data.swap(piv * n + j, col * n + j);
                }
            }
            let inv = a[(col, col)].inv();
            for i in col + 1..n {
                let f = a[(i, col)] * inv;
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let t = a[(col, j)];
                    a[(i, j)] -= f * t;
                }
                for j in 0..n {
                    let t = b[(col, j)];
                    b[(i, j)] -= f * t;
                }
            }
        }
        for col in (0..n).rev() {
            let inv = a[(col, col)].inv();
            for j in 0..n {
                let mut s = b[(col, j)];
                for k in col + 1..n {
                    s -= a[(col, k)] * b[(k, j)];
                }
                b[(col, j)] = s * inv;
            }
        }
        Some(b)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl<'a> Mul<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        let n = self.n;
        assert_eq!(n, rhs.n);
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMat> for &'a CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!(self.n, rhs.n);
        CMat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Complex Hermitian matrix. Construction symmetrizes, so
/// `a[i][j] == conj(a[j][i])` holds bit-for-bit and the diagonal is real.
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianMatrix(CMat);

impl HermitianMatrix {
    /// Symmetrizes `(A + A^dagger) / 2`.
    pub fn new(a: CMat) -> Self {
        let n = a.dim();
        let mut h = CMat::zeros(n);
        for i in 0..n {
            h[(i, i)] = C64::new(a[(i, i)].re, 0.0);
            for j in i + 1..n {
                let v = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
                h[(i, j)] = v;
                h[(j, i)] = v.conj();
            }
        }
        Self(h)
    }

    pub fn from_diag(d: &[f64]) -> Self {
        Self(CMat::from_diag(d))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::new(CMat::from_real_rows(rows))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMat::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMat::zeros(n))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn as_cmat(&self) -> &CMat {
        &self.0
    }

    pub fn into_cmat(self) -> CMat {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn leading_block(&self, k: usize) -> Self {
        Self(self.0.leading_block(k))
    }

    pub fn pad_to(&self, n: usize) -> Self {
        Self(self.0.pad_to(n))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    /// `U A U^dagger`, re-symmetrized.
    pub fn conjugate_by(&self, u: &CMat) -> Self {
        Self::new(&(u * &self.0) * &u.adjoint())
    }

    /// `Re Tr(A B)`, the real trace pairing on Hermitian matrices.
    pub fn pairing(&self, other: &Self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.0[(i, j)] * other.0[(j, i)]).re;
            }
        }
        s
    }

    /// Largest deviation from exact Hermitian symmetry of an arbitrary matrix.
    pub fn asymmetry(a: &CMat) -> f64 {
        a.max_abs_diff(&a.adjoint())
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes() {
        let mut a = CMat::zeros(2);
        a[(0, 1)] = C64::new(1.0, 2.0);
        a[(1, 0)] = C64::new(3.0, 0.0);
        a[(0, 0)] = C64::new(1.0, 5.0);
        let h = HermitianMatrix::new(a);
        assert_eq!(h[(0, 1)], h[(1, 0)].conj());
        assert_eq!(h[(0, 0)].im, 0.0);
        assert_eq!(h[(0, 1)], C64::new(2.0, 1.0));
    }

    #[test]
    fn solve_recovers_inverse() {
        let a = CMat::from_real_rows(&[&[4.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 2.0]]);
        let inv = a.solve(&CMat::identity(3)).unwrap();
        assert!((&a * &inv).max_abs_diff(&CMat::identity(3)) < 1e-14);
        assert!(CMat::zeros(2).solve(&CMat::identity(2)).is_none());
    }

    #[test]
    fn block_diag_and_leading_block() {
        let b1 = CMat::from_diag(&[1.0]);
        let b2 = CMat::from_real_rows(&[&[2.0, 3.0], &[3.0, 4.0]]);
        let bd = CMat::block_diag(&[b1, b2.clone()]);
        assert_eq!(bd.dim(), 3);
        assert_eq!(bd[(1, 2)].re, 3.0);
        assert_eq!(bd[(0, 1)].re, 0.0);
        assert_eq!(bd.leading_block(1)[(0, 0)].re, 1.0);
        assert_eq!(b2.pad_to(3).leading_block(2), b2);
    }
}
