//! Small dense linear algebra: matrix-vector products, spectral norms and
//! an LU solve for the direct step solver.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.as_ref().len(), n, "matrix must be square");
            data.extend_from_slice(r.as_ref());
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec_into(&self, v: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate().take(self.n) {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *o = row
                .iter()
                .zip(v)
                .fold(T::zero(), |acc, (&a, &x)| acc + a * x);
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        self.mul_vec_into(v, &mut out);
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &x| acc + x * x)
            .sqrt()
    }

    /// Frobenius norm of `A + A^T`.
    pub fn skew_defect(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let s = self[(i, j)] + self[(j, i)];
                acc = acc + s * s;
            }
        }
        acc.sqrt()
    }

    /// Largest singular value: square root of the largest eigenvalue of
    /// `A^T A`, found by cyclic Jacobi rotations.
    pub fn spectral_norm(&self) -> T {
        if self.n == 0 {
            return T::zero();
        }
        let eig = symmetric_eigenvalues(self.transpose().matmul(self));
        eig.into_iter()
            .fold(T::zero(), |m, x| m.max(x))
            .max(T::zero())
            .sqrt()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

fn symmetric_eigenvalues<T: Real>(mut a: Matrix<T>) -> Vec<T> {
    let n = a.n;
    let scale = a.frobenius_norm();
    if scale == T::zero() {
        return vec![T::zero(); n];
    }
    let tol = T::epsilon() * scale;
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[(i, i)]).collect()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn lu_solve<T: Real>(mut a: Matrix<T>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = a.n;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let tiny = T::epsilon() * a.frobenius_norm().max(T::min_positive_value());
    for col in 0..n {
        let (piv, max) =
            (col..n)
                .map(|r| (r, a[(r, col)].abs()))
                .fold(
                    (col, -T::one()),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if !(max > tiny) {
            return Err(Error::SingularSystem);
        }
        if piv != col {
            for j in 0..n {
                a.data.swap(col * n + j, piv * n + j);
            }
            b.swap(col, piv);
        }
        let d = a[(col, col)];
        for r in col + 1..n {
            let f = a[(r, col)] / d;
            if f == T::zero() {
                continue;
            }
            for j in col..n {
                a[(r, j)] = a[(r, j)] - f * a[(col, j)];
            }
            b[r] = b[r] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(b[i], |acc, j| acc - a[(i, j)] * x[j]);
        x[i] = s / a[(i, i)];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_of_known_matrices() {
        let rot = Matrix::<f64>::from_rows(&[[0.0, -1.0], [1.0, 0.0]]);
        assert!((rot.spectral_norm() - 1.0).abs() < 1e-15);
        let diag = Matrix::<f64>::from_rows(&[[3.0, 0.0, 0.0], [0.0, -7.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!((diag.spectral_norm() - 7.0).abs() < 1e-14);
        assert_eq!(Matrix::<f64>::zeros(3).spectral_norm(), 0.0);
        // singular values of [[1,2],[3,4]]: sqrt(15 + sqrt(221))
        let m = Matrix::<f64>::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let want = (15.0 + 221.0f64.sqrt()).sqrt();
        assert!((m.spectral_norm() - want).abs() < 1e-13);
    }

    #[test]
    fn lu_solves_and_detects_singularity() {
        let a = Matrix::<f64>::from_rows(&[[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]]);
        let x = vec![1.0, -2.0, 0.5];
        let b = a.mul_vec(&x);
        let got = lu_solve(a, b).unwrap();
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).abs() < 1e-14);
        }
        let s = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert_eq!(lu_solve(s, vec![1.0, 1.0]), Err(Error::SingularSystem));
    }

    #[test]
    fn skew_defect() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
        assert_eq!(a.skew_defect(), 0.0);
        let b = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(b.skew_defect(), 2.0);
    }
}
