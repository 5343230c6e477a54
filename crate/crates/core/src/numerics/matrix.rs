//! Dense complex matrices with the few operations the rest of the crate
//! needs: products, conjugate transpose, a unitary matrix exponential, the
//! action of a matrix exponential on a vector, and a Jacobi eigensolver for
//! Hermitian matrices.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hermiticity / anti-Hermiticity gate used by the solvers.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = k * rhs.cols;
                let orow = i * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[orow + j] += a * rhs.data[row + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// [A, B] = AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        let mut best = 0.0_f64;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self[(i, j)].norm()).sum();
            best = best.max(s);
        }
        best
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.dagger()).max_abs()
    }

    pub fn anti_hermiticity_defect(&self) -> f64 {
        self.add(&self.dagger()).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.anti_hermiticity_defect() <= tol
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Largest off-diagonal entry magnitude.
    pub fn max_offdiag(&self) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    best = best.max(self[(i, j)].norm());
                }
            }
        }
        best
    }

    /// Leading principal submatrix of size `n`.
    pub fn leading_block(&self, n: usize) -> Self {
        assert!(n <= self.rows && n <= self.cols);
        Self::from_fn(n, n, |i, j| self[(i, j)])
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// exp(A) for anti-Hermitian A by scaling and squaring around a Taylor core.
///
/// The result is unitary to roughly machine precision because the argument is
/// scaled so that its 1-norm is at most 1/2 before the series is summed.
pub fn unitary_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} not square", a.rows, a.cols)));
    }
    let defect = a.anti_hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotAntiHermitian(defect));
    }
    Ok(exp_scaled_taylor(a))
}

fn exp_scaled_taylor(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.norm_one();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale(C64::new(1.0 / f64::powi(2.0, s as i32), 0.0));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=40 {
        term = term.mul(&b).scale(C64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        result = result.mul(&result);
    }
    result
}

/// exp(A) v without forming exp(A).
///
/// The argument is scanned once into a compressed sparse form, so the cost is
/// proportional to the number of nonzero entries; the ladder-operator
/// combinations this crate feeds in are extremely sparse.
pub fn expm_apply(a: &ComplexMatrix, v: &[C64]) -> Vec<C64> {
    assert!(a.is_square() && a.rows() == v.len());
    let n = v.len();

    // Compressed rows of A.
    let mut entries: Vec<Vec<(usize, C64)>> = Vec::with_capacity(n);
    let mut norm_one = 0.0_f64;
    let mut col_sums = vec![0.0_f64; n];
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let z = a[(i, j)];
            if z.norm_sqr() != 0.0 {
                row.push((j, z));
                col_sums[j] += z.norm();
            }
        }
        entries.push(row);
    }
    for s in col_sums {
        norm_one = norm_one.max(s);
    }

    let s = if norm_one > 0.5 { (norm_one / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 1.0 / f64::powi(2.0, s as i32);
    let segments = 1u64 << s;

    let mut state = v.to_vec();
    let mut term = vec![C64::new(0.0, 0.0); n];
    let mut next = vec![C64::new(0.0, 0.0); n];
    for _ in 0..segments {
        term.copy_from_slice(&state);
        for k in 1..=30u32 {
            // next = (scale / k) * A * term
            for x in next.iter_mut() {
                *x = C64::new(0.0, 0.0);
            }
            for (i, row) in entries.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &(j, z) in row {
                    acc += z * term[j];
                }
                next[i] = acc * (scale / k as f64);
            }
            std::mem::swap(&mut term, &mut next);
            let mut max = 0.0_f64;
            for (si, ti) in state.iter_mut().zip(&term) {
                *si += ti;
                max = max.max(ti.norm_sqr());
            }
            if max < 1e-36 {
                break;
            }
        }
    }
    state
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and the matching
/// orthonormal eigenvectors as matrix columns.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} not square", h.rows, h.cols)));
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian(defect));
    }

    let n = h.rows();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    if n <= 1 {
        let vals = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok((vals, v));
    }

    let scale = h.max_abs().max(1.0);
    let tol = 1e-15 * scale;
    const MAX_SWEEPS: usize = 60;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = a.max_offdiag();
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= tol * 1e-2 {
                    continue;
                }
                // Unitary plane rotation annihilating a[p][q]:
                //   tan(2*theta) = 2|a_pq| / (a_pp - a_qq), phase from a_pq.
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (app - aqq) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Column update: (col p, col q) <- (c*p + s*conj(phase)*q,
                //                                   -s*phase*p + c*q)
                let sp = phase * s;
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c + aiq * sp.conj();
                    a[(i, q)] = aiq * c - aip * sp;
                }
                // Row update with the conjugate rotation.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c + aqj * sp;
                    a[(q, j)] = aqj * c - apj * sp.conj();
                }
                // Clean up the rotated pair against roundoff drift.
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * sp.conj();
                    v[(i, q)] = viq * c - vip * sp;
                }
            }
        }
    }
    if !converged && a.max_offdiag() > tol {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}
