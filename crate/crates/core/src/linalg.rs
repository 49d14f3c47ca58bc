//! Small dense complex linear-algebra helpers shared by the physics modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest absolute entry, `‖m‖_max`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `‖m − m†‖_max`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// `‖u†u − I‖_max`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let prod = u.adjoint() * u;
    max_abs(&(prod - CMatrix::identity(u.nrows(), u.ncols())))
}

/// `tr(a·b)` in O(n²) without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for r in 0..n {
        for c in 0..n {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Eigendecomposition `h = V·diag(λ)·V†` of a Hermitian matrix, kept for
/// repeated exponentials.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(h: &CMatrix) -> Self {
        let eig = h.clone().symmetric_eigen();
        HermitianEigen {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        }
    }

    /// `exp(−i·t·h) = V·diag(e^{−itλ})·V†`, unitary to machine precision.
    pub fn exp(&self, t: f64) -> CMatrix {
        let v = &self.vectors;
        let mut scaled = v.clone();
        for (c, &lambda) in self.values.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -t * lambda);
            for z in scaled.column_mut(c).iter_mut() {
                *z *= phase;
            }
        }
        scaled * v.adjoint()
    }
}

/// `exp(−i·t·h)` for Hermitian `h`, through its eigendecomposition.
pub fn hermitian_exp(h: &CMatrix, t: f64) -> CMatrix {
    HermitianEigen::new(h).exp(t)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Outer product `|a⟩⟨b|`.
pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

/// Sorted real eigenvalues of a Hermitian matrix.
pub fn hermitian_spectrum(h: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// `|⟨a|b⟩|²`.
pub fn overlap_sq(a: &CVector, b: &CVector) -> f64 {
    a.dotc(b).norm_sqr()
}
