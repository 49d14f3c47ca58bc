//! Quantum kicked top: spin-j operators, classical map, coherent and
//! pseudo-pure states, Floquet evolution with dephasing, and tunneling
//! diagnostics.
//!
//! ```
//! use qkt_core::{InitialState, NamedPoint, Simulation, Spin};
//!
//! let sim = Simulation::new(Spin::from_two_j(2), 3.0, InitialState::Named(NamedPoint::A), 25);
//! let traj = sim.run().unwrap();
//! assert_eq!(traj.len(), 26);
//! ```

pub mod angmom;
pub mod classical;
pub mod error;
pub mod evolution;
pub mod linalg;
pub mod observables;
pub mod pipeline;
pub mod states;

pub use angmom::{AngularMomentumOps, Representation, Spin, DEFAULT_MAX_QUBITS};
pub use classical::{ClassicalState, NamedPoint, PhasePortrait, PointTable, PortraitPoint, SphericalCoord};
pub use error::{QktError, Result};
pub use evolution::{DephasingChannel, DephasingModel, DephasingSpec, FloquetOperator, QktParams};
pub use linalg::{CMatrix, CVector};
pub use observables::{
    Component, CorrelationMode, SpectrumResult, TrajectoryRecord, TunnelingPeriod, Window,
};
pub use pipeline::{InitialState, OverlapPoint, Simulation};
pub use states::{DensityMatrix, DeviationMatrix, PseudoPureSpec};
