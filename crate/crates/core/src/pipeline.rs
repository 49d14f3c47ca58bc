//! Prepare → evolve → observe, for either representation.

use serde::{Deserialize, Serialize};

use crate::angmom::{self, AngularMomentumOps, Representation, Spin, DEFAULT_MAX_QUBITS};
use crate::classical::{NamedPoint, PointTable, SphericalCoord};
use crate::error::{QktError, Result};
use crate::evolution::{self, DephasingChannel, DephasingSpec, QktParams};
use crate::linalg::{self, CVector};
use crate::observables::{CorrelationMode, Observer, TrajectoryRecord};
use crate::states::{self, DensityMatrix, PseudoPureSpec};

/// Initial condition: a named point or explicit angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Named(NamedPoint),
    Coord(SphericalCoord),
}

impl InitialState {
    pub fn resolve(&self, table: &PointTable) -> SphericalCoord {
        match *self {
            InitialState::Named(p) => table.coord(p),
            InitialState::Coord(c) => c,
        }
    }
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::Named(NamedPoint::A)
    }
}

/// Everything one trajectory needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub representation: Representation,
    pub spin: Spin,
    pub params: QktParams,
    pub initial: InitialState,
    pub n_kicks: usize,
    pub noise: Option<DephasingSpec>,
    pub epsilon: f64,
    pub points: PointTable,
    pub correlation: CorrelationMode,
    pub max_qubits: usize,
}

impl Simulation {
    pub fn new(spin: Spin, k: f64, initial: InitialState, n_kicks: usize) -> Self {
        Simulation {
            representation: Representation::SpinJ,
            spin,
            params: QktParams::new(k),
            initial,
            n_kicks,
            noise: None,
            epsilon: 1.0,
            points: PointTable::default(),
            correlation: CorrelationMode::default(),
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    pub fn with_representation(mut self, representation: Representation) -> Self {
        self.representation = representation;
        self
    }

    pub fn with_noise(mut self, noise: Option<DephasingSpec>) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.spin.two_j() == 0 {
            return Err(QktError::InvalidInput("two_j must be at least 1".into()));
        }
        if !self.params.k.is_finite() || self.params.k < 0.0 {
            return Err(QktError::InvalidInput(format!(
                "k = {} must be finite and non-negative",
                self.params.k
            )));
        }
        if !self.params.kick_angle.is_finite() {
            return Err(QktError::InvalidInput("kick angle must be finite".into()));
        }
        if let InitialState::Coord(c) = self.initial {
            SphericalCoord::checked(c.theta, c.phi)?;
        }
        if let Some(spec) = self.noise {
            spec.validate()?;
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(QktError::InvalidInput(format!(
                "epsilon = {} must lie in (0, 1]",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn build_ops(&self) -> Result<AngularMomentumOps> {
        build_ops(self.representation, self.spin, self.max_qubits)
    }

    /// Initial coherent state vector in the chosen representation.
    pub fn initial_vector(&self, ops: &AngularMomentumOps) -> Result<CVector> {
        let c = self.initial.resolve(&self.points);
        match self.representation {
            Representation::SpinJ => Ok(states::coherent_state(ops, c)),
            Representation::MultiQubit => {
                states::coherent_state_multiqubit(self.spin.two_j() as usize, c, self.max_qubits)
            }
        }
    }

    /// Deviation-normalized states `I/d + Δ_n/ε`, one per kick.
    pub fn states(&self, ops: &AngularMomentumOps) -> Result<Vec<DensityMatrix>> {
        self.validate()?;
        let psi = self.initial_vector(ops)?;
        let floquet = evolution::build_floquet(ops, self.params);
        match self.noise.filter(|s| s.strength > 0.0) {
            None => evolution::evolve_pure(&psi, &floquet, self.n_kicks)?
                .iter()
                .map(DensityMatrix::pure)
                .collect(),
            Some(spec) => {
                let channel = DephasingChannel::new(spec, ops)?;
                let rho0 = states::make_pseudo_pure(&PseudoPureSpec::new(self.epsilon, psi)?);
                let raw = evolution::evolve_schrodinger(&rho0, &floquet, self.n_kicks, Some(&channel))?;
                Ok(raw
                    .iter()
                    .map(|rho| states::deviation(rho).rescaled_state(self.epsilon))
                    .collect())
            }
        }
    }

    /// Full per-kick observable table.
    pub fn run(&self) -> Result<Vec<TrajectoryRecord>> {
        let ops = self.build_ops()?;
        let states = self.states(&ops)?;
        Observer::new(&ops, &self.points, self.correlation).observe_all(&states)
    }
}

/// Operators for `spin` in the requested representation.
pub fn build_ops(representation: Representation, spin: Spin, max_qubits: usize) -> Result<AngularMomentumOps> {
    match representation {
        Representation::SpinJ => Ok(angmom::build_spin_ops(spin)),
        Representation::MultiQubit => angmom::build_collective_ops(spin.two_j() as usize, max_qubits),
    }
}

/// Distinguishability of the coherent states at A and A′ for one spin size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapPoint {
    pub two_j: u32,
    /// `|F|` between the deviation matrices of |A⟩ and |A′⟩.
    pub overlap_aap: f64,
    /// `|⟨A|A′⟩|²`.
    pub state_overlap: f64,
}

impl OverlapPoint {
    /// `overlap_aap < threshold`, evaluated as `d·|⟨A|A′⟩|² > 1 − t(d − 1)`
    /// so that a state overlap far below f64 resolution still decides ties.
    pub fn below(&self, threshold: f64) -> bool {
        let d = self.two_j as f64 + 1.0;
        let lhs = d * self.state_overlap;
        lhs > 1.0 - threshold * (d - 1.0) && lhs < 1.0 + threshold * (d - 1.0)
    }
}

/// Coherent states are spin-1/2 coherent states raised to the 2j-th tensor
/// power, so `|⟨A|A′⟩|² = |⟨a|a′⟩|^{4j}` exactly; for pure states
/// `F = (d·|⟨A|A′⟩|² − 1)/(d − 1)`.
pub fn overlap_point(spin: Spin, table: &PointTable) -> Result<OverlapPoint> {
    if spin.two_j() == 0 {
        return Err(QktError::InvalidInput("two_j must be at least 1".into()));
    }
    let half = Spin::from_two_j(1);
    let a = states::coherent_state_spin_j(half, table.coord(NamedPoint::A));
    let ap = states::coherent_state_spin_j(half, table.coord(NamedPoint::APrime));
    let state_overlap = linalg::overlap_sq(&a, &ap).powi(spin.two_j() as i32);
    let d = spin.dim() as f64;
    Ok(OverlapPoint {
        two_j: spin.two_j(),
        overlap_aap: ((d * state_overlap - 1.0) / (d - 1.0)).abs(),
        state_overlap,
    })
}

/// [`overlap_point`] for every `two_j` in `values`.
pub fn overlap_scan(values: &[u32], table: &PointTable) -> Result<Vec<OverlapPoint>> {
    values
        .iter()
        .map(|&t| overlap_point(Spin::from_two_j(t), table))
        .collect()
}
