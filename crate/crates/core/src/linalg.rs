//! Dense complex linear algebra for the 2-, 4- and 8-dimensional matrices used
//! throughout the crate.
//!
//! Everything here is a pure function of its inputs. The Hermitian eigensolver
//! is a cyclic complex Jacobi iteration, which is more than fast enough at these
//! sizes and reproduces bit-identical output for identical input.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::tolerances::Tolerances;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Off-diagonal Frobenius mass (relative to the input norm) at which Jacobi stops.
const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("matrix is not Hermitian (||A - A^dag||_F = {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("entries length {len} is not a perfect square")]
    NotSquare { len: usize },
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; the length must be a square.
    pub fn from_entries(entries: Vec<C64>) -> Result<Self, LinalgError> {
        let len = entries.len();
        let dim = (len as f64).sqrt().round() as usize;
        if dim * dim != len || dim == 0 {
            return Err(LinalgError::NotSquare { len });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
                .collect(),
        }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// `|v><w|`
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        assert_eq!(v.len(), w.len(), "outer product of unequal lengths");
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|a| a * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|a| a * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `||self - other||_F`
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64, LinalgError> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product; `self` is the left (first-site) factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (d1, d2) = (self.dim, rhs.dim);
        let n = d1 * d2;
        let mut out = Self::zeros(n);
        for i in 0..d1 {
            for j in 0..d1 {
                let a = self.data[i * d1 + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..d2 {
                    for l in 0..d2 {
                        out.data[(i * d2 + k) * n + (j * d2 + l)] = a * rhs.data[k * d2 + l];
                    }
                }
            }
        }
        out
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `||U^dag U - I||_F`
    pub fn unitarity_residual(&self) -> f64 {
        let prod = &self.adjoint() * self;
        prod.frobenius_distance(&Self::identity(self.dim))
            .expect("same dimension")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Hermitian, unit trace and no eigenvalue below `-tol`.
    pub fn is_density(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) || (self.trace() - ONE).norm() > tol {
            return false;
        }
        match eigh(self) {
            Ok(d) => d.eigenvalues.iter().all(|&l| l >= -tol),
            Err(_) => false,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &(self * rhs) + &(rhs * self)
    }

    /// `<v| self |w>`
    pub fn sandwich(&self, v: &[C64], w: &[C64]) -> C64 {
        let mw = self.apply(w);
        inner(v, &mw)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }

    /// Hermitian part `(A + A^dag)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

// The operator impls panic on mismatched dimensions; use the `try_*`/`compose`
// methods where the dimensions are not known statically.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.compose(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `<v|w>` (conjugate-linear in the first argument).
pub fn inner(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix.
///
/// Each eigenvector is gauge-fixed so that its largest-magnitude component is
/// real and non-negative; magnitudes equal to within a relative 1e-12 count as
/// a tie and the lowest index wins.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    /// `V diag(f(lambda)) V^dag`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            for i in 0..n {
                let a = v[(i, k)] * fk;
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| C64::new(l, 0.0))
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// `1e-14 * max(1, ||H||_F)` or after 100 sweeps.
pub fn eigh(h: &ComplexMatrix) -> Result<SpectralDecomposition, LinalgError> {
    let residual = h.hermiticity_residual();
    if residual > Tolerances::default().eigen * h.frobenius_norm().max(1.0) {
        return Err(LinalgError::NotHermitian { residual });
    }
    let n = h.dim();
    let mut a = h.hermitian_part();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let stop = JACOBI_OFF_DIAGONAL_TOL * h.frobenius_norm().max(1.0);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps index order among equal eigenvalues
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let mut vk = v.column(k);
        fix_gauge(&mut vk);
        eigenvectors.set_column(col, &vk);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `V = diag(1, e^{-i alpha}) * Q(theta)`
/// acting on the (p, q) plane, where `a[p][q] = |a[p][q]| e^{i alpha}`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // V = [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]]
    let v00 = C64::new(c, 0.0);
    let v01 = C64::new(s, 0.0);
    let v10 = -phase.conj() * s;
    let v11 = phase.conj() * c;

    let n = a.dim();
    // A <- A V
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * v00 + akq * v10;
        a[(k, q)] = akp * v01 + akq * v11;
    }
    // A <- V^dag A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = v00.conj() * apk + v10.conj() * aqk;
        a[(q, k)] = v01.conj() * apk + v11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * v00 + vkq * v10;
        v[(k, q)] = vkp * v01 + vkq * v11;
    }
}

fn fix_gauge(vec: &mut [C64]) {
    let max_mag = vec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_mag == 0.0 {
        return;
    }
    let pivot = vec
        .iter()
        .position(|z| z.norm() >= max_mag * (1.0 - 1e-12))
        .expect("non-empty vector");
    let phase = vec[pivot].conj() / vec[pivot].norm();
    for z in vec.iter_mut() {
        *z *= phase;
    }
    vec[pivot] = C64::new(vec[pivot].re, 0.0);
}

/// `exp(-i t H)` via the spectral decomposition of `H`.
pub fn unitary_exp(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, LinalgError> {
    let d = eigh(h)?;
    Ok(d.reconstruct_with(|l| C64::from_polar(1.0, -t * l)))
}

/// Traces out the second qubit of a two-qubit operator.
pub fn partial_trace_b(rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if rho.dim() != 4 {
        return Err(LinalgError::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2).map(|k| rho[(2 * i + k, 2 * j + k)]).sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-scale..scale), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let entries = (0..n * n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::from_entries(entries).unwrap()
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    #[test]
    fn compose_with_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_matrix(&mut rng, 4);
        let id = ComplexMatrix::identity(4);
        assert_eq!(id.compose(&x).unwrap(), x);
        assert_eq!(x.compose(&id).unwrap(), x);
    }

    #[test]
    fn adjoint_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_matrix(&mut rng, 4);
        assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn mismatched_dimensions_are_errors() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(LinalgError::DimensionMismatch { left: 2, right: 4 })
        );
        assert!(a.frobenius_distance(&b).is_err());
        assert!(a.try_add(&b).is_err());
        assert!(ComplexMatrix::from_entries(vec![ONE; 5]).is_err());
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));

        let sz = ComplexMatrix::from_real_diag(&[0.5, -0.5]);
        assert_eq!(
            sz.kron(&i2),
            ComplexMatrix::from_real_diag(&[0.5, 0.5, -0.5, -0.5])
        );

        let xx = sigma_x().kron(&sigma_x());
        let anti = ComplexMatrix::from_real_rows([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(xx, anti);
    }

    #[test]
    fn kron_index_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 4);
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..4 {
                    for s in 0..4 {
                        assert_eq!(k[(i * 4 + r, j * 4 + s)], a[(i, j)] * b[(r, s)]);
                    }
                }
            }
        }
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let d = eigh(&ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.eigenvectors, ComplexMatrix::identity(4));
    }

    #[test]
    fn eigh_unsorted_diagonal_is_sorted() {
        let d = eigh(&ComplexMatrix::from_real_diag(&[3.0, -1.0, 2.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![-1.0, 2.0, 3.0]);
        assert_eq!(d.vector(0), vec![ZERO, ONE, ZERO]);
    }

    #[test]
    fn eigh_pauli_x() {
        let d = eigh(&sigma_x()).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.eigenvalues[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eigh_hamiltonian_block() {
        // {|00>,|11>} block of H1 at theta = pi/2: eigenvalues g/4 -+ B
        let (b, g, phi) = (0.8_f64, 0.3_f64, 0.9_f64);
        let m = ComplexMatrix::from_rows([
            [c(g / 4.0, 0.0), I * b * C64::from_polar(1.0, phi)],
            [-I * b * C64::from_polar(1.0, -phi), c(g / 4.0, 0.0)],
        ]);
        let d = eigh(&m).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], g / 4.0 - b, epsilon = 1e-14);
        assert_abs_diff_eq!(d.eigenvalues[1], g / 4.0 + b, epsilon = 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(eigh(&m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn eigh_gauge_is_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let h = random_hermitian(&mut rng, 4, 3.0);
            let d = eigh(&h).unwrap();
            for k in 0..4 {
                let v = d.vector(k);
                let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let pivot = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-12)).unwrap();
                assert_eq!(v[pivot].im, 0.0);
                assert!(v[pivot].re >= 0.0);
            }
        }
    }

    #[test]
    fn eigh_reconstruction_on_random_hermitian_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let h = random_hermitian(&mut rng, 4, 10.0);
            let d = eigh(&h).unwrap();
            worst = worst.max(h.frobenius_distance(&d.reconstruct()).unwrap());
            assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            assert!(d.eigenvectors.is_unitary(1e-12));
            for k in 0..4 {
                let v = d.vector(k);
                let hv = h.apply(&v);
                let r: f64 = hv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * d.eigenvalues[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(r < 1e-10);
            }
        }
        assert!(worst <= 1e-10, "worst reconstruction {worst:e}");
    }

    #[test]
    fn eigh_eight_dimensional() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = random_hermitian(&mut rng, 8, 2.0);
        let d = eigh(&h).unwrap();
        assert!(h.frobenius_distance(&d.reconstruct()).unwrap() < 1e-12);
    }

    #[test]
    fn eigh_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random_hermitian(&mut rng, 4, 5.0);
        assert_eq!(eigh(&h).unwrap(), eigh(&h).unwrap());
        // degenerate spectrum as well
        let id = ComplexMatrix::identity(4).scale_real(0.25);
        assert_eq!(eigh(&id).unwrap(), eigh(&id).unwrap());
    }

    #[test]
    fn unitary_exp_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_hermitian(&mut rng, 4, 2.0);
        let u0 = unitary_exp(&h, 0.0).unwrap();
        assert!(u0.frobenius_distance(&ComplexMatrix::identity(4)).unwrap() < 1e-12);

        let (a, b, t) = (0.7, -1.3, 2.1);
        let u = unitary_exp(&ComplexMatrix::from_real_diag(&[a, b]), t).unwrap();
        let expected = ComplexMatrix::from_diag(&[
            C64::from_polar(1.0, -t * a),
            C64::from_polar(1.0, -t * b),
        ]);
        assert!(u.frobenius_distance(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn unitary_exp_of_hamiltonian_block() {
        // M^2 = I so exp(-itH) = e^{-igt/4}[cos(Bt) I - i sin(Bt) M]
        let (b, g, phi, t) = (0.8_f64, 0.3_f64, 0.9_f64, 1.7_f64);
        let m = ComplexMatrix::from_rows([
            [ZERO, I * C64::from_polar(1.0, phi)],
            [-I * C64::from_polar(1.0, -phi), ZERO],
        ]);
        let h = &ComplexMatrix::identity(2).scale_real(g / 4.0) + &m.scale_real(b);
        let u = unitary_exp(&h, t).unwrap();
        let expected = (&ComplexMatrix::identity(2).scale_real((b * t).cos())
            - &m.scale(I * (b * t).sin()))
            .scale(C64::from_polar(1.0, -g * t / 4.0));
        assert!(u.frobenius_distance(&expected).unwrap() < 1e-13);
    }

    #[test]
    fn unitary_exp_group_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let h = random_hermitian(&mut rng, 4, 3.0);
            let s = rng.gen_range(-3.0..3.0);
            let t = rng.gen_range(-3.0..3.0);
            let us = unitary_exp(&h, s).unwrap();
            let ut = unitary_exp(&h, t).unwrap();
            let inv = &ut * &unitary_exp(&h, -t).unwrap();
            assert!(inv.frobenius_distance(&ComplexMatrix::identity(4)).unwrap() < 1e-10);
            let sum = unitary_exp(&h, s + t).unwrap();
            assert!(sum.frobenius_distance(&(&us * &ut)).unwrap() < 1e-10);
            assert!(ut.is_unitary(1e-10));
        }
    }

    #[test]
    fn partial_trace_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let a = random_hermitian(&mut rng, 2, 1.0);
        let b = random_hermitian(&mut rng, 2, 1.0);
        let pt = partial_trace_b(&a.kron(&b)).unwrap();
        assert!(pt.frobenius_distance(&a.scale(b.trace())).unwrap() < 1e-14);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(s, 0.0), ZERO, ZERO, c(s, 0.0)];
        let pt = partial_trace_b(&ComplexMatrix::projector(&bell)).unwrap();
        assert!(
            pt.frobenius_distance(&ComplexMatrix::identity(2).scale_real(0.5))
                .unwrap()
                < 1e-15
        );

        assert_eq!(
            partial_trace_b(&ComplexMatrix::identity(2)),
            Err(LinalgError::WrongDimension { expected: 4, got: 2 })
        );
    }

    #[test]
    fn partial_trace_is_linear_and_trace_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_matrix(&mut rng, 4);
            let y = random_matrix(&mut rng, 4);
            let alpha = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = partial_trace_b(&(&x.scale(alpha) + &y)).unwrap();
            let rhs = &partial_trace_b(&x).unwrap().scale(alpha) + &partial_trace_b(&y).unwrap();
            assert!(lhs.frobenius_distance(&rhs).unwrap() < 1e-13);
            assert!((partial_trace_b(&x).unwrap().trace() - x.trace()).norm() < 1e-14);
        }
    }

    #[test]
    fn density_predicate() {
        let rho = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(rho.is_density(1e-12));
        assert!(!ComplexMatrix::identity(4).is_density(1e-12));
        let neg = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(!neg.is_density(1e-12));
    }
}
