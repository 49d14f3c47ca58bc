//! Floquet operator of the kicked top, kick-by-kick evolution and dephasing.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angmom::{AngularMomentumOps, Representation};
use crate::error::{QktError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::states::DensityMatrix;

/// Torsion strength and kick angle of one Floquet period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QktParams {
    pub k: f64,
    #[serde(default = "default_kick_angle")]
    pub kick_angle: f64,
}

fn default_kick_angle() -> f64 {
    FRAC_PI_2
}

impl QktParams {
    /// Chaoticity `k` with the standard π/2 kick.
    pub fn new(k: f64) -> Self {
        QktParams { k, kick_angle: FRAC_PI_2 }
    }

    pub fn with_kick_angle(mut self, angle: f64) -> Self {
        self.kick_angle = angle;
        self
    }
}

/// `U = U_nl·U_kick` with `U_kick = exp(−i·angle·J_y)` and
/// `U_nl = exp(−i·(k/2j)·J_z²)`.
#[derive(Debug, Clone)]
pub struct FloquetOperator {
    params: QktParams,
    u: CMatrix,
    u_dag: CMatrix,
    u_kick: CMatrix,
    /// Diagonal of U_nl.
    u_nl: Vec<Complex64>,
}

impl FloquetOperator {
    pub fn params(&self) -> QktParams {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn adjoint(&self) -> &CMatrix {
        &self.u_dag
    }

    pub fn kick(&self) -> &CMatrix {
        &self.u_kick
    }

    pub fn torsion_diagonal(&self) -> &[Complex64] {
        &self.u_nl
    }

    /// `U_nl` as a dense diagonal matrix.
    pub fn torsion(&self) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_column_slice(&self.u_nl))
    }

    /// `U·ρ·U†`.
    pub fn conjugate(&self, rho: &CMatrix) -> CMatrix {
        &self.u * rho * &self.u_dag
    }

    /// `U·ψ`.
    pub fn apply(&self, psi: &CVector) -> CVector {
        &self.u * psi
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(QktError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

/// Builds the Floquet operator for the representation carried by `ops`.
pub fn build_floquet(ops: &AngularMomentumOps, params: QktParams) -> FloquetOperator {
    let u_kick = ops.rotation_y(params.kick_angle);
    let scale = params.k / (2.0 * ops.j());
    let u_nl: Vec<Complex64> = ops
        .jz_diagonal()
        .into_iter()
        .map(|m| Complex64::from_polar(1.0, -scale * m * m))
        .collect();

    // Row r of U_nl·U_kick is row r of U_kick scaled by the r-th phase.
    let mut u = u_kick.clone();
    for (r, phase) in u_nl.iter().enumerate() {
        for c in 0..u.ncols() {
            u[(r, c)] *= phase;
        }
    }
    let u_dag = u.adjoint();
    FloquetOperator {
        params,
        u,
        u_dag,
        u_kick,
        u_nl,
    }
}

/// Form of the per-kick dephasing channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DephasingModel {
    /// Element (m, m′) multiplied by `exp(−λ(m − m′)²)`.
    CoherenceOrder,
    /// Independent phase flip with probability p on every qubit.
    PerQubit,
}

impl DephasingModel {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "coherence_order" => Some(DephasingModel::CoherenceOrder),
            "per_qubit" => Some(DephasingModel::PerQubit),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DephasingModel::CoherenceOrder => "coherence_order",
            DephasingModel::PerQubit => "per_qubit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DephasingSpec {
    pub model: DephasingModel,
    /// λ for the coherence-order model, p ∈ [0, 1/2] for the per-qubit model.
    pub strength: f64,
}

impl DephasingSpec {
    pub fn coherence_order(lambda: f64) -> Self {
        DephasingSpec {
            model: DephasingModel::CoherenceOrder,
            strength: lambda,
        }
    }

    pub fn per_qubit(p: f64) -> Self {
        DephasingSpec {
            model: DephasingModel::PerQubit,
            strength: p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.strength;
        let ok = match self.model {
            DephasingModel::CoherenceOrder => s >= 0.0,
            DephasingModel::PerQubit => (0.0..=0.5).contains(&s),
        };
        if ok {
            Ok(())
        } else {
            Err(QktError::InvalidInput(format!(
                "dephasing strength {s} out of range for {}",
                self.model.name()
            )))
        }
    }
}

/// Dephasing channel materialized as an elementwise (Schur) multiplier in
/// the J_z / computational basis. Both models leave the diagonal untouched.
#[derive(Debug, Clone)]
pub struct DephasingChannel {
    spec: DephasingSpec,
    factors: nalgebra::DMatrix<f64>,
}

impl DephasingChannel {
    pub fn new(spec: DephasingSpec, ops: &AngularMomentumOps) -> Result<Self> {
        spec.validate()?;
        let d = ops.dim();
        let factors = match spec.model {
            DephasingModel::CoherenceOrder => {
                let m = ops.jz_diagonal();
                let lambda = spec.strength;
                nalgebra::DMatrix::from_fn(d, d, |r, c| {
                    let dm = m[r] - m[c];
                    if dm == 0.0 {
                        1.0
                    } else {
                        (-lambda * dm * dm).exp()
                    }
                })
            }
            DephasingModel::PerQubit => {
                if ops.representation() != Representation::MultiQubit {
                    return Err(QktError::InvalidInput(
                        "per_qubit dephasing needs the multiqubit representation".into(),
                    ));
                }
                let keep = 1.0 - 2.0 * spec.strength;
                nalgebra::DMatrix::from_fn(d, d, |r, c| keep.powi((r ^ c).count_ones() as i32))
            }
        };
        Ok(DephasingChannel { spec, factors })
    }

    pub fn spec(&self) -> DephasingSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.factors.nrows()
    }

    pub fn apply_in_place(&self, rho: &mut CMatrix) {
        for (z, f) in rho.iter_mut().zip(self.factors.iter()) {
            *z *= *f;
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(QktError::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        let mut m = rho.matrix().clone();
        self.apply_in_place(&mut m);
        Ok(DensityMatrix::from_raw(m))
    }
}

/// One-shot dephasing of `rho`.
pub fn apply_dephasing(
    rho: &DensityMatrix,
    spec: DephasingSpec,
    ops: &AngularMomentumOps,
) -> Result<DensityMatrix> {
    DephasingChannel::new(spec, ops)?.apply(rho)
}

/// `ρ_{n+1} = D(U ρ_n U†)`; returns `n_kicks + 1` states including `rho`.
pub fn evolve_schrodinger(
    rho: &DensityMatrix,
    floquet: &FloquetOperator,
    n_kicks: usize,
    noise: Option<&DephasingChannel>,
) -> Result<Vec<DensityMatrix>> {
    floquet.check_dim(rho.dim())?;
    if let Some(ch) = noise {
        floquet.check_dim(ch.dim())?;
    }
    let mut out = Vec::with_capacity(n_kicks + 1);
    out.push(rho.clone());
    let mut current = rho.matrix().clone();
    for _ in 0..n_kicks {
        current = floquet.conjugate(&current);
        if let Some(ch) = noise {
            ch.apply_in_place(&mut current);
        }
        out.push(DensityMatrix::from_raw(current.clone()));
    }
    Ok(out)
}

/// Noise-free evolution of a state vector; `n_kicks + 1` vectors.
pub fn evolve_pure(psi: &CVector, floquet: &FloquetOperator, n_kicks: usize) -> Result<Vec<CVector>> {
    floquet.check_dim(psi.len())?;
    let mut out = Vec::with_capacity(n_kicks + 1);
    out.push(psi.clone());
    for n in 0..n_kicks {
        let next = floquet.apply(&out[n]);
        out.push(next);
    }
    Ok(out)
}

/// Heisenberg-picture operators `(J_x, J_y, J_z)` after each kick.
#[derive(Debug, Clone)]
pub struct OperatorTriple {
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
}

impl OperatorTriple {
    pub fn components(&self) -> [&CMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }
}

/// `J_α(n+1) = U† J_α(n) U`, `n_kicks + 1` triples.
pub fn evolve_heisenberg(
    ops: &AngularMomentumOps,
    floquet: &FloquetOperator,
    n_kicks: usize,
) -> Result<Vec<OperatorTriple>> {
    floquet.check_dim(ops.dim())?;
    let mut out = Vec::with_capacity(n_kicks + 1);
    out.push(OperatorTriple {
        jx: ops.jx().clone(),
        jy: ops.jy().clone(),
        jz: ops.jz().clone(),
    });
    let step = |m: &CMatrix| floquet.adjoint() * m * floquet.matrix();
    for n in 0..n_kicks {
        let prev = &out[n];
        let next = OperatorTriple {
            jx: step(&prev.jx),
            jy: step(&prev.jy),
            jz: step(&prev.jz),
        };
        out.push(next);
    }
    Ok(out)
}

/// `exp(−iπJ_y)`, the y-parity operator that maps A to A′.
pub fn y_parity(ops: &AngularMomentumOps) -> CMatrix {
    ops.rotation_y(std::f64::consts::PI)
}

/// `U^power`.
pub fn floquet_power(floquet: &FloquetOperator, power: u32) -> CMatrix {
    let d = floquet.dim();
    (0..power).fold(CMatrix::identity(d, d), |acc, _| acc * floquet.matrix())
}
