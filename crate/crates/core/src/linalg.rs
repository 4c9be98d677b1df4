//! Dense complex linear algebra and a diagonal-plus-low-rank solver.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![ONE; n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, z) in sums.iter_mut().zip(self.row(i)) {
                *s += z.norm();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let src = other.row(k);
                for (o, b) in out.row_mut(i).iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `max |self − other|` over entries.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    norm_one: f64,
}

impl Lu {
    pub fn factor(mut a: CMatrix) -> Result<Self> {
        assert!(a.is_square(), "LU needs a square matrix");
        let n = a.rows;
        let norm_one = a.norm_one();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if !(pmax > 0.0) || !pmax.is_finite() {
                return Err(Error::Singular { dim: n });
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let inv = ONE / a[(k, k)];
            let (upper, lower) = a.data.split_at_mut((k + 1) * n);
            let pivot_row = &upper[k * n + k + 1..k * n + n];
            for row in lower.chunks_exact_mut(n) {
                let l = row[k] * inv;
                row[k] = l;
                if l == ZERO {
                    continue;
                }
                for (x, u) in row[k + 1..].iter_mut().zip(pivot_row) {
                    *x -= l * u;
                }
            }
        }
        Ok(Self { lu: a, perm, norm_one })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: Complex64 = row[..i].iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Solves `Aᴴ x = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        // Aᴴ = Uᴴ Lᴴ P, so solve Uᴴ y = b, Lᴴ w = y, x = Pᵀ w.
        let mut y = b.to_vec();
        for i in 0..n {
            let d = self.lu[(i, i)].conj();
            y[i] /= d;
            let yi = y[i];
            let row = self.lu.row(i);
            for (yj, u) in y[i + 1..].iter_mut().zip(&row[i + 1..]) {
                *yj -= u.conj() * yi;
            }
        }
        for i in (0..n).rev() {
            let yi = y[i];
            let row = self.lu.row(i);
            for (yj, l) in y[..i].iter_mut().zip(&row[..i]) {
                *yj -= l.conj() * yi;
            }
        }
        let mut x = vec![ZERO; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }

    pub fn inverse(&self) -> CMatrix {
        let n = self.dim();
        let mut inv = CMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e[j] = ONE;
            let col = self.solve(&e);
            e[j] = ZERO;
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        inv
    }

    /// Hager-Higham estimate of the 1-norm condition number.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut estimate = 0.0;
        for _ in 0..5 {
            let y = self.solve(&x);
            let ynorm: f64 = y.iter().map(|z| z.norm()).sum();
            if !ynorm.is_finite() {
                return f64::INFINITY;
            }
            if ynorm <= estimate {
                break;
            }
            estimate = ynorm;
            let xi: Vec<Complex64> = y
                .iter()
                .map(|z| if z.norm() > 0.0 { z / z.norm() } else { ONE })
                .collect();
            let z = self.solve_adjoint(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, v)| (j, v.norm()))
                .fold((0, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![ZERO; n];
            x[j] = ONE;
        }
        estimate * self.norm_one
    }
}

/// `D + Σ_j u_j v_jᵀ` with a diagonal `D` and a few rank-one terms.
#[derive(Debug, Clone)]
pub struct DiagonalPlusLowRank {
    pub diagonal: Vec<Complex64>,
    pub left: Vec<Vec<Complex64>>,
    pub right: Vec<Vec<Complex64>>,
}

impl DiagonalPlusLowRank {
    pub fn new(diagonal: Vec<Complex64>) -> Self {
        Self { diagonal, left: Vec::new(), right: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn rank(&self) -> usize {
        self.left.len()
    }

    pub fn push(&mut self, u: Vec<Complex64>, v: Vec<Complex64>) {
        assert_eq!(u.len(), self.dim());
        assert_eq!(v.len(), self.dim());
        self.left.push(u);
        self.right.push(v);
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y: Vec<Complex64> = self.diagonal.iter().zip(x).map(|(d, v)| d * v).collect();
        for (u, v) in self.left.iter().zip(&self.right) {
            let c: Complex64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
            for (yi, ui) in y.iter_mut().zip(u) {
                *yi += ui * c;
            }
        }
        y
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::from_diagonal(&self.diagonal);
        for (u, v) in self.left.iter().zip(&self.right) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += u[i] * v[j];
                }
            }
        }
        m
    }

    /// Upper bound on the largest entry modulus, in `O(n·rank)`.
    pub fn max_abs_bound(&self) -> f64 {
        let inf = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let low: f64 = self.left.iter().zip(&self.right).map(|(u, v)| inf(u) * inf(v)).sum();
        inf(&self.diagonal) + low
    }

    /// Solves by the Woodbury identity with an LU-factored capacitance matrix.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        let r = self.rank();
        if self.diagonal.iter().any(|d| *d == ZERO || !d.re.is_finite() || !d.im.is_finite()) {
            return Err(Error::Singular { dim: n });
        }
        let dinv = |v: &[Complex64]| -> Vec<Complex64> {
            v.iter().zip(&self.diagonal).map(|(x, d)| x / d).collect()
        };
        let y = dinv(b);
        if r == 0 {
            return Ok(y);
        }
        let z: Vec<Vec<Complex64>> = self.left.iter().map(|u| dinv(u)).collect();
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        let cap = CMatrix::from_fn(r, r, |i, j| {
            let base = if i == j { ONE } else { ZERO };
            base + dot(&self.right[i], &z[j])
        });
        let lu = Lu::factor(cap)?;
        let rhs: Vec<Complex64> = self.right.iter().map(|v| dot(v, &y)).collect();
        let w = lu.solve(&rhs);
        let mut x = y;
        for (zj, wj) in z.iter().zip(&w) {
            for (xi, zi) in x.iter_mut().zip(zj) {
                *xi -= zi * wj;
            }
        }
        Ok(x)
    }
}

/// Relative residual `‖A x − b‖∞ / (‖A‖max ‖x‖∞ + ‖b‖∞)`.
pub fn relative_residual(ax: &[Complex64], b: &[Complex64], a_max: f64, x: &[Complex64]) -> f64 {
    let r = ax.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let xn = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let bn = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = a_max * xn + bn;
    if scale == 0.0 {
        0.0
    } else {
        r / scale
    }
}
