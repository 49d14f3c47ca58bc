//! Spin-j angular momentum operators and their collective 2j-qubit counterparts.
//!
//! Both representations share one type, [`AngularMomentumOps`]. The spin-j
//! form works in the J_z eigenbasis ordered m = j, j−1, …, −j, so the
//! highest-weight state |j, j⟩ is the first basis vector. The multi-qubit
//! form works in the computational basis with |0⟩ = spin up, so |0…0⟩ is
//! likewise the first basis vector.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QktError, Result};
use crate::linalg::{self, CMatrix, I, ONE, ZERO};

/// Default cap on the number of qubits for dense multi-qubit objects.
pub const DEFAULT_MAX_QUBITS: usize = 12;

/// Spin quantum number stored as `2j` so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub const fn from_two_j(two_j: u32) -> Self {
        Spin { two_j }
    }

    pub const fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Hilbert-space dimension `2j + 1`.
    pub const fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    /// Magnetic quantum numbers in basis order, `j, j−1, …, −j`.
    pub fn m_values(self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.j() - i as f64).collect()
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

/// Which Hilbert space the operators act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// A single spin-j, dimension 2j+1.
    SpinJ,
    /// 2j spin-1/2 qubits, dimension 2^(2j).
    MultiQubit,
}

/// Dense J_x, J_y, J_z for one representation of a spin-j system.
#[derive(Debug, Clone)]
pub struct AngularMomentumOps {
    spin: Spin,
    representation: Representation,
    jx: CMatrix,
    jy: CMatrix,
    jz: CMatrix,
    jy_eigen: OnceLock<linalg::HermitianEigen>,
}

impl AngularMomentumOps {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn j(&self) -> f64 {
        self.spin.j()
    }

    pub fn dim(&self) -> usize {
        self.jz.nrows()
    }

    /// Number of qubits for the multi-qubit representation.
    pub fn n_qubits(&self) -> Option<usize> {
        match self.representation {
            Representation::MultiQubit => Some(self.spin.two_j() as usize),
            Representation::SpinJ => None,
        }
    }

    /// Diagonal of J_z (the operator is diagonal in both representations).
    pub fn jz_diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.jz[(i, i)].re).collect()
    }

    pub fn jx(&self) -> &CMatrix {
        &self.jx
    }

    pub fn jy(&self) -> &CMatrix {
        &self.jy
    }

    pub fn jz(&self) -> &CMatrix {
        &self.jz
    }

    /// `[J_x, J_y, J_z]`.
    pub fn components(&self) -> [&CMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    /// `exp(−i·angle·J_y)`.
    ///
    /// For qubits this is the tensor power of the single-qubit rotation,
    /// since the site terms of the collective J_y commute.
    pub fn rotation_y(&self, angle: f64) -> CMatrix {
        match self.representation {
            Representation::SpinJ => self
                .jy_eigen
                .get_or_init(|| linalg::HermitianEigen::new(&self.jy))
                .exp(angle),
            Representation::MultiQubit => {
                let single = linalg::hermitian_exp(&pauli_half()[1], angle);
                tensor_power(&single, self.spin.two_j() as usize)
            }
        }
    }

    /// Diagonal of `exp(−i·angle·J_z)`.
    pub fn rotation_z_diagonal(&self, angle: f64) -> Vec<Complex64> {
        self.jz_diagonal()
            .into_iter()
            .map(|m| Complex64::from_polar(1.0, -angle * m))
            .collect()
    }

    /// `J_x² + J_y² + J_z²`.
    pub fn casimir(&self) -> CMatrix {
        &self.jx * &self.jx + &self.jy * &self.jy + &self.jz * &self.jz
    }
}

/// Spin-1/2 matrices `σ_α/2` in the order x, y, z.
pub fn pauli_half() -> [CMatrix; 3] {
    let h = 0.5;
    [
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE * h, ONE * h, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, -I * h, I * h, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE * h, ZERO, ZERO, -ONE * h]),
    ]
}

/// Ladder-operator construction of the spin-j matrices.
pub fn build_spin_ops(spin: Spin) -> AngularMomentumOps {
    let dim = spin.dim();
    let j = spin.j();
    let m = spin.m_values();

    // J+ |j, m⟩ = √(j(j+1) − m(m+1)) |j, m+1⟩; row r holds m_r = j − r.
    let mut jplus = CMatrix::zeros(dim, dim);
    for col in 1..dim {
        let mc = m[col];
        jplus[(col - 1, col)] = ONE * (j * (j + 1.0) - mc * (mc + 1.0)).sqrt();
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus) * Complex64::new(0.5, 0.0);
    let jy = (&jplus - &jminus) * Complex64::new(0.0, -0.5);
    let jz = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        m.iter().map(|&v| ONE * v),
    ));

    AngularMomentumOps {
        spin,
        representation: Representation::SpinJ,
        jx,
        jy,
        jz,
        jy_eigen: OnceLock::new(),
    }
}

fn check_qubit_cap(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(QktError::InvalidInput("need at least one qubit".into()));
    }
    if n_qubits > cap {
        return Err(QktError::ResourceCap { requested: n_qubits, cap });
    }
    Ok(())
}

/// `op` acting on qubit `site` (0 = leftmost tensor factor) of `n_qubits`.
pub fn site_operator(op: &CMatrix, site: usize, n_qubits: usize) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    (0..n_qubits).fold(CMatrix::identity(1, 1), |acc, s| {
        linalg::kron(&acc, if s == site { op } else { &id })
    })
}

fn tensor_power(op: &CMatrix, n: usize) -> CMatrix {
    (0..n).fold(CMatrix::identity(1, 1), |acc, _| linalg::kron(&acc, op))
}

/// Collective operators `J_α = Σᵢ I_{αi}` on `n_qubits` spin-1/2 sites.
pub fn build_collective_ops(n_qubits: usize, cap: usize) -> Result<AngularMomentumOps> {
    check_qubit_cap(n_qubits, cap)?;
    let [sx, sy, sz] = pauli_half();
    let dim = 1usize << n_qubits;
    let mut jx = CMatrix::zeros(dim, dim);
    let mut jy = CMatrix::zeros(dim, dim);
    let mut jz = CMatrix::zeros(dim, dim);
    for site in 0..n_qubits {
        jx += site_operator(&sx, site, n_qubits);
        jy += site_operator(&sy, site, n_qubits);
        jz += site_operator(&sz, site, n_qubits);
    }
    Ok(AngularMomentumOps {
        spin: Spin::from_two_j(n_qubits as u32),
        representation: Representation::MultiQubit,
        jx,
        jy,
        jz,
        jy_eigen: OnceLock::new(),
    })
}

/// Isometry from spin-(n/2) onto the symmetric subspace of n qubits.
///
/// Column `c` is the Dicke state with `c` qubits flipped down, i.e. the image
/// of |n/2, n/2 − c⟩. Returns a `2ⁿ × (n+1)` real matrix.
pub fn symmetric_embedding(n_qubits: usize) -> CMatrix {
    let dim = 1usize << n_qubits;
    let mut counts = vec![0usize; n_qubits + 1];
    for x in 0..dim {
        counts[x.count_ones() as usize] += 1;
    }
    DMatrix::from_fn(dim, n_qubits + 1, |x, c| {
        if x.count_ones() as usize == c {
            ONE / (counts[c] as f64).sqrt()
        } else {
            ZERO
        }
    })
}

/// `‖J² − j(j+1)·I‖_max`, evaluated on the symmetric subspace for qubits.
pub fn casimir_check(ops: &AngularMomentumOps) -> f64 {
    let j = ops.j();
    let casimir = ops.casimir();
    let projected = match ops.representation() {
        Representation::SpinJ => casimir,
        Representation::MultiQubit => {
            let p = symmetric_embedding(ops.spin().two_j() as usize);
            p.adjoint() * casimir * p
        }
    };
    let n = projected.nrows();
    linalg::max_abs(&(projected - CMatrix::identity(n, n) * (ONE * (j * (j + 1.0)))))
}

/// Largest residual of `[J_x, J_y] = iJ_z` and its cyclic permutations.
pub fn commutator_residual(ops: &AngularMomentumOps) -> f64 {
    let comm = |a: &CMatrix, b: &CMatrix| a * b - b * a;
    let r1 = comm(ops.jx(), ops.jy()) - ops.jz() * I;
    let r2 = comm(ops.jy(), ops.jz()) - ops.jx() * I;
    let r3 = comm(ops.jz(), ops.jx()) - ops.jy() * I;
    linalg::max_abs(&r1)
        .max(linalg::max_abs(&r2))
        .max(linalg::max_abs(&r3))
}

/// Largest Hermiticity residual over the three components.
pub fn hermiticity_residual(ops: &AngularMomentumOps) -> f64 {
    ops.components()
        .iter()
        .map(|m| linalg::hermiticity_residual(m))
        .fold(0.0, f64::max)
}
