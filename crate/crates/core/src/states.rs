//! Spin coherent states, pseudo-pure states and deviation matrices.

use nalgebra::DVector;

use crate::angmom::{self, AngularMomentumOps, Spin};
use crate::classical::SphericalCoord;
use crate::error::{QktError, Result};
use crate::linalg::{self, CMatrix, CVector, ONE, ZERO};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_FLOOR: f64 = -1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    /// Wraps `mat` after checking Hermiticity and trace. Positivity is not
    /// checked here (it needs an eigendecomposition); see [`Self::min_eigenvalue`].
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(QktError::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let herm = linalg::hermiticity_residual(&mat);
        if herm > HERMITIAN_TOL {
            return Err(QktError::NumericalIntegrity(format!(
                "density matrix not Hermitian (residual {herm:e})"
            )));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(QktError::NumericalIntegrity(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        Ok(DensityMatrix { mat })
    }

    pub(crate) fn from_raw(mat: CMatrix) -> Self {
        DensityMatrix { mat }
    }

    /// `|ψ⟩⟨ψ|` for a normalized `psi`.
    pub fn pure(psi: &CVector) -> Result<Self> {
        check_unit(psi)?;
        Ok(DensityMatrix::from_raw(linalg::outer(psi, psi)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix::from_raw(CMatrix::identity(dim, dim) * (ONE / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        linalg::trace_of_product(&self.mat, &self.mat).re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_spectrum(&self.mat)[0]
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.min_eigenvalue() >= PSD_FLOOR
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_in(&self, psi: &CVector) -> f64 {
        psi.dotc(&(&self.mat * psi)).re
    }
}

/// Traceless Hermitian part of a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationMatrix {
    mat: CMatrix,
}

impl DeviationMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Hilbert–Schmidt norm squared, `tr(Δ²)`.
    pub fn norm_sqr(&self) -> f64 {
        linalg::trace_of_product(&self.mat, &self.mat).re
    }

    /// Density matrix `I/d + Δ/scale`, i.e. the pure-state-equivalent
    /// state when `scale` is the pseudo-pure purity factor.
    pub fn rescaled_state(&self, scale: f64) -> DensityMatrix {
        let d = self.dim();
        DensityMatrix::from_raw(
            CMatrix::identity(d, d) * (ONE / d as f64) + &self.mat * (ONE / scale),
        )
    }
}

impl std::ops::Neg for DeviationMatrix {
    type Output = DeviationMatrix;
    fn neg(self) -> DeviationMatrix {
        DeviationMatrix { mat: -self.mat }
    }
}

/// Parameters of `(1−ε)·I/d + ε·|ψ⟩⟨ψ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoPureSpec {
    epsilon: f64,
    psi: CVector,
}

impl PseudoPureSpec {
    pub fn new(epsilon: f64, psi: CVector) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(QktError::InvalidInput(format!(
                "purity factor epsilon = {epsilon} must lie in (0, 1]"
            )));
        }
        check_unit(&psi)?;
        Ok(PseudoPureSpec { epsilon, psi })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn psi(&self) -> &CVector {
        &self.psi
    }
}

fn check_unit(psi: &CVector) -> Result<()> {
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(QktError::InvalidInput(format!(
            "state vector norm is {n}, expected 1"
        )));
    }
    Ok(())
}

fn basis_vector(dim: usize, idx: usize) -> CVector {
    let mut v = CVector::from_element(dim, ZERO);
    v[idx] = ONE;
    v
}

/// `exp(−iφJ_z)·exp(−iθJ_y)` applied to the first basis vector of `ops`.
///
/// Works in either representation; for qubits prefer
/// [`coherent_state_multiqubit`], which never forms a dense matrix.
pub fn coherent_state(ops: &AngularMomentumOps, c: SphericalCoord) -> CVector {
    let ry = ops.rotation_y(c.theta);
    let mut v = ry.column(0).into_owned();
    for (amp, phase) in v.iter_mut().zip(ops.rotation_z_diagonal(c.phi)) {
        *amp *= phase;
    }
    v
}

/// Spin-j coherent state |θ, φ⟩ in the J_z basis (m = j first).
pub fn coherent_state_spin_j(spin: Spin, c: SphericalCoord) -> CVector {
    coherent_state(&angmom::build_spin_ops(spin), c)
}

/// Product coherent state `(exp(−iφσ_z/2)·exp(−iθσ_y/2)|0⟩)^{⊗n}`.
pub fn coherent_state_multiqubit(n_qubits: usize, c: SphericalCoord, cap: usize) -> Result<CVector> {
    if n_qubits == 0 {
        return Err(QktError::InvalidInput("need at least one qubit".into()));
    }
    if n_qubits > cap {
        return Err(QktError::ResourceCap { requested: n_qubits, cap });
    }
    let single = coherent_state_spin_j(Spin::from_two_j(1), c);
    Ok((1..n_qubits).fold(single.clone(), |acc, _| linalg::kron_vec(&acc, &single)))
}

/// `(1−ε)·I/d + ε·|ψ⟩⟨ψ|`.
pub fn make_pseudo_pure(spec: &PseudoPureSpec) -> DensityMatrix {
    let d = spec.psi.len();
    let eps = spec.epsilon;
    let mat = CMatrix::identity(d, d) * (ONE * ((1.0 - eps) / d as f64))
        + linalg::outer(&spec.psi, &spec.psi) * (ONE * eps);
    DensityMatrix::from_raw(mat)
}

/// `ρ − tr(ρ)/d·I`.
pub fn deviation(rho: &DensityMatrix) -> DeviationMatrix {
    deviation_of(rho.matrix())
}

pub(crate) fn deviation_of(mat: &CMatrix) -> DeviationMatrix {
    let d = mat.nrows();
    let shift = mat.trace() / d as f64;
    let mut out = mat.clone();
    for i in 0..d {
        out[(i, i)] -= shift;
    }
    DeviationMatrix { mat: out }
}

/// Deviation of a pure state without materializing `|ψ⟩⟨ψ|` twice.
pub fn pure_deviation(psi: &CVector) -> DeviationMatrix {
    deviation_of(&linalg::outer(psi, psi))
}

/// Unit vector from a plain list of amplitudes.
pub fn state_from_amplitudes(amps: Vec<num_complex::Complex64>) -> CVector {
    DVector::from_vec(amps)
}

/// The highest-weight state |j, j⟩ (or |0…0⟩).
pub fn highest_weight(dim: usize) -> CVector {
    basis_vector(dim, 0)
}
