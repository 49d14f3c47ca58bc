//! Tunneling diagnostics: normalized ⟨J_α⟩, trace fidelity, localization
//! correlations, reduced-density readout and spectral period extraction.

use rustfft::{num_complex::Complex64, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::angmom::AngularMomentumOps;
use crate::classical::{NamedPoint, PointTable};
use crate::error::{QktError, Result};
use crate::linalg::{self, CMatrix, CVector, ZERO};
use crate::states::{self, DensityMatrix, DeviationMatrix};

/// Imaginary residue of `tr(ρJ)/j` tolerated before reporting an error.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Peak-to-median ratio below which a spectrum counts as aperiodic.
pub const APERIODIC_RATIO: f64 = 3.0;
/// F_A′ level a trajectory must exceed to count as having tunneled.
pub const REVIVAL_THRESHOLD: f64 = 0.5;
pub const DEFAULT_PAD: usize = 256;
pub const MIN_SERIES_LEN: usize = 8;
/// `tr(Δ²)` below which a state is treated as fully mixed.
pub const MIXED_FLOOR: f64 = 1e-24;

/// Per-kick observables of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub kick: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub fid_a: f64,
    pub fid_ap: f64,
    pub corr_a: f64,
    pub corr_ap: f64,
    pub corr_e: f64,
    pub corr_ep: f64,
    pub purity: f64,
}

impl TrajectoryRecord {
    pub const COLUMNS: [&'static str; 11] = [
        "kick", "jx", "jy", "jz", "fid_A", "fid_Ap", "corr_A", "corr_Ap", "corr_E", "corr_Ep",
        "purity",
    ];

    /// Value of a named CSV column (`kick` included).
    pub fn column(&self, name: &str) -> Option<f64> {
        Some(match name {
            "kick" => self.kick as f64,
            "jx" => self.jx,
            "jy" => self.jy,
            "jz" => self.jz,
            "fid_A" => self.fid_a,
            "fid_Ap" => self.fid_ap,
            "corr_A" => self.corr_a,
            "corr_Ap" => self.corr_ap,
            "corr_E" => self.corr_e,
            "corr_Ep" => self.corr_ep,
            "purity" => self.purity,
            _ => return None,
        })
    }

    pub fn expectation_vector(&self) -> [f64; 3] {
        [self.jx, self.jy, self.jz]
    }

    /// Correlation with a named reference point.
    pub fn corr(&self, point: NamedPoint) -> Option<f64> {
        match point {
            NamedPoint::A => Some(self.corr_a),
            NamedPoint::APrime => Some(self.corr_ap),
            NamedPoint::E => Some(self.corr_e),
            NamedPoint::EPrime => Some(self.corr_ep),
            _ => None,
        }
    }

    pub fn fid(&self, point: NamedPoint) -> Option<f64> {
        match point {
            NamedPoint::A => Some(self.fid_a),
            NamedPoint::APrime => Some(self.fid_ap),
            _ => None,
        }
    }
}

/// `tr(ρ J_α)/j` for α = x, y, z.
pub fn expectations(rho: &DensityMatrix, ops: &AngularMomentumOps) -> Result<[f64; 3]> {
    if rho.dim() != ops.dim() {
        return Err(QktError::DimensionMismatch {
            expected: ops.dim(),
            found: rho.dim(),
        });
    }
    let j = ops.j();
    let mut out = [0.0; 3];
    for (slot, op) in out.iter_mut().zip(ops.components()) {
        let v = linalg::trace_of_product(rho.matrix(), op) / j;
        if v.im.abs() > IMAG_RESIDUE_TOL {
            return Err(QktError::NumericalIntegrity(format!(
                "expectation value has imaginary part {:e}",
                v.im
            )));
        }
        *slot = v.re;
    }
    Ok(out)
}

/// `⟨ψ|J_α|ψ⟩/j` for a pure state.
pub fn pure_expectations(psi: &CVector, ops: &AngularMomentumOps) -> [f64; 3] {
    let j = ops.j();
    let comps = ops.components();
    std::array::from_fn(|a| psi.dotc(&(comps[a] * psi)).re / j)
}

/// Single-qubit reduced density matrix of qubit `site` (0 = leftmost factor).
pub fn reduced_qubit(rho: &CMatrix, site: usize, n_qubits: usize) -> CMatrix {
    let shift = n_qubits - 1 - site;
    let mut out = CMatrix::from_element(2, 2, ZERO);
    let dim = rho.nrows();
    for x in 0..dim {
        let bx = (x >> shift) & 1;
        let rest = x & !(1 << shift);
        for b in 0..2 {
            let y = rest | (b << shift);
            out[(bx, b)] += rho[(x, y)];
        }
    }
    out
}

/// `Σᵢ tr(ρᵢ I_{αi})/j` from the single-qubit marginals of an n-qubit state.
pub fn expectations_from_reduced(rho: &DensityMatrix, n_qubits: usize) -> Result<[f64; 3]> {
    let dim = 1usize << n_qubits;
    if rho.dim() != dim {
        return Err(QktError::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    let paulis = crate::angmom::pauli_half();
    let j = n_qubits as f64 / 2.0;
    let mut out = [0.0; 3];
    for site in 0..n_qubits {
        let reduced = reduced_qubit(rho.matrix(), site, n_qubits);
        for (slot, p) in out.iter_mut().zip(paulis.iter()) {
            *slot += linalg::trace_of_product(&reduced, p).re;
        }
    }
    Ok(out.map(|v| v / j))
}

/// Normalized Hilbert–Schmidt overlap of two deviation matrices, in [−1, 1].
pub fn trace_fidelity(dev_t: &DeviationMatrix, dev_s: &DeviationMatrix) -> Result<f64> {
    if dev_t.dim() != dev_s.dim() {
        return Err(QktError::DimensionMismatch {
            expected: dev_s.dim(),
            found: dev_t.dim(),
        });
    }
    let nt = dev_t.norm_sqr();
    let ns = dev_s.norm_sqr();
    if nt <= f64::MIN_POSITIVE || ns <= f64::MIN_POSITIVE {
        return Err(QktError::Degenerate(
            "trace fidelity of a zero deviation matrix".into(),
        ));
    }
    let num = linalg::trace_of_product(dev_t.matrix(), dev_s.matrix()).re;
    Ok((num / (nt * ns).sqrt()).clamp(-1.0, 1.0))
}

/// How C_S is evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMode {
    /// `⟨S|ρ|S⟩`, the population of the coherent state at S.
    #[default]
    StateOverlap,
    /// Squared cosine between the ⟨J⟩/j vectors of ρ and of |S⟩.
    Vector,
}

impl CorrelationMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "state_overlap" | "state" => Some(CorrelationMode::StateOverlap),
            "vector" => Some(CorrelationMode::Vector),
            _ => None,
        }
    }
}

/// Coherent state at a named point plus its normalized expectation vector.
#[derive(Debug, Clone)]
pub struct LocalizationProbe {
    pub point: NamedPoint,
    pub state: CVector,
    pub direction: [f64; 3],
}

impl LocalizationProbe {
    pub fn new(ops: &AngularMomentumOps, point: NamedPoint, table: &PointTable) -> Self {
        let state = states::coherent_state(ops, table.coord(point));
        let direction = pure_expectations(&state, ops);
        LocalizationProbe {
            point,
            state,
            direction,
        }
    }
}

fn squared_cosine(a: [f64; 3], b: [f64; 3]) -> Result<f64> {
    let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum();
    let nb: f64 = b.iter().map(|x| x * x).sum();
    if na <= 1e-24 || nb <= 1e-24 {
        return Err(QktError::Degenerate(
            "zero-length expectation vector in vector correlation".into(),
        ));
    }
    Ok(dot * dot / (na * nb))
}

/// C_S(t) of `rho` with respect to the probe's coherent state.
pub fn correlation(
    rho: &DensityMatrix,
    probe: &LocalizationProbe,
    mode: CorrelationMode,
    ops: &AngularMomentumOps,
) -> Result<f64> {
    match mode {
        CorrelationMode::StateOverlap => {
            if rho.dim() != probe.state.len() {
                return Err(QktError::DimensionMismatch {
                    expected: probe.state.len(),
                    found: rho.dim(),
                });
            }
            Ok(rho.expectation_in(&probe.state))
        }
        CorrelationMode::Vector => squared_cosine(expectations(rho, ops)?, probe.direction),
    }
}

/// Computes [`TrajectoryRecord`]s for states of one representation.
#[derive(Debug, Clone)]
pub struct Observer<'a> {
    ops: &'a AngularMomentumOps,
    mode: CorrelationMode,
    fid_refs: [DeviationMatrix; 2],
    probes: [LocalizationProbe; 4],
}

impl<'a> Observer<'a> {
    pub fn new(ops: &'a AngularMomentumOps, table: &PointTable, mode: CorrelationMode) -> Self {
        let probes = [
            NamedPoint::A,
            NamedPoint::APrime,
            NamedPoint::E,
            NamedPoint::EPrime,
        ]
        .map(|p| LocalizationProbe::new(ops, p, table));
        let fid_refs = [
            states::pure_deviation(&probes[0].state),
            states::pure_deviation(&probes[1].state),
        ];
        Observer {
            ops,
            mode,
            fid_refs,
            probes,
        }
    }

    pub fn ops(&self) -> &AngularMomentumOps {
        self.ops
    }

    pub fn observe(&self, kick: usize, rho: &DensityMatrix) -> Result<TrajectoryRecord> {
        let [jx, jy, jz] = expectations(rho, self.ops)?;
        let dev = states::deviation(rho);
        // A fully mixed state carries no overlap with either reference.
        let (fid_a, fid_ap) = if dev.norm_sqr() < MIXED_FLOOR {
            (0.0, 0.0)
        } else {
            (
                trace_fidelity(&dev, &self.fid_refs[0])?,
                trace_fidelity(&dev, &self.fid_refs[1])?,
            )
        };
        let corr = |i: usize| correlation(rho, &self.probes[i], self.mode, self.ops);
        Ok(TrajectoryRecord {
            kick,
            jx,
            jy,
            jz,
            fid_a,
            fid_ap,
            corr_a: corr(0)?,
            corr_ap: corr(1)?,
            corr_e: corr(2)?,
            corr_ep: corr(3)?,
            purity: rho.purity(),
        })
    }

    pub fn observe_all(&self, states: &[DensityMatrix]) -> Result<Vec<TrajectoryRecord>> {
        states
            .iter()
            .enumerate()
            .map(|(n, rho)| self.observe(n, rho))
            .collect()
    }
}

/// Optional taper applied before the transform.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    #[default]
    None,
    Hann,
}

impl Window {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Some(Window::None),
            "hann" => Some(Window::Hann),
            _ => None,
        }
    }
}

/// One-sided magnitude spectrum of a mean-subtracted series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Cycles per kick, `k/pad` for `k = 0..=pad/2`.
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub peak_frequency: f64,
    pub period_kicks: f64,
    /// Largest non-DC amplitude.
    pub peak_amplitude: f64,
    /// Median of the non-DC amplitudes.
    pub median_amplitude: f64,
    pub aperiodic: bool,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Mean-subtracted, optionally windowed, zero-padded DFT magnitude.
///
/// `pad_to` below the series length is raised to the series length. The
/// peak ignores the DC bin; the result is flagged aperiodic when the peak is
/// under [`APERIODIC_RATIO`] times the median amplitude or at the round-off
/// floor.
pub fn spectrum(series: &[f64], pad_to: usize, window: Window) -> Result<SpectrumResult> {
    let n = series.len();
    if n < MIN_SERIES_LEN {
        return Err(QktError::SeriesTooShort {
            len: n,
            min: MIN_SERIES_LEN,
        });
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(QktError::InvalidInput("series contains non-finite values".into()));
    }
    let pad = pad_to.max(n);
    let mean = series.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); pad];
    for (i, (slot, &v)) in buf.iter_mut().zip(series).enumerate() {
        let w = match window {
            Window::None => 1.0,
            Window::Hann => {
                0.5 * (1.0 - (std::f64::consts::TAU * i as f64 / (n - 1) as f64).cos())
            }
        };
        *slot = Complex64::new((v - mean) * w, 0.0);
    }
    FftPlanner::new().plan_fft_forward(pad).process(&mut buf);

    let bins = pad / 2 + 1;
    let frequencies: Vec<f64> = (0..bins).map(|k| k as f64 / pad as f64).collect();
    let amplitudes: Vec<f64> = buf[..bins].iter().map(|z| z.norm() / n as f64).collect();

    let (peak_idx, peak_amplitude) = amplitudes
        .iter()
        .enumerate()
        .skip(1)
        .fold((1, f64::NEG_INFINITY), |best, (i, &a)| if a > best.1 { (i, a) } else { best });
    let median_amplitude = median(&amplitudes[1..]);
    let scale = series.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-10 * scale;
    let aperiodic = peak_amplitude <= floor || peak_amplitude < APERIODIC_RATIO * median_amplitude;
    let peak_frequency = frequencies[peak_idx];

    Ok(SpectrumResult {
        frequencies,
        amplitudes,
        peak_frequency,
        period_kicks: 1.0 / peak_frequency,
        peak_amplitude,
        median_amplitude,
        aperiodic,
    })
}

/// Component of ⟨J⟩ used for period extraction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    X,
    #[default]
    Z,
}

impl Component {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" | "jx" => Some(Component::X),
            "z" | "jz" => Some(Component::Z),
            _ => None,
        }
    }

    pub fn select(self, r: &TrajectoryRecord) -> f64 {
        match self {
            Component::X => r.jx,
            Component::Z => r.jz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TunnelingPeriod {
    pub period_kicks: f64,
    pub peak_frequency: f64,
    /// Largest F_A′ over kicks ≥ 1.
    pub max_fid_ap: f64,
    /// The spectral test alone found no peak.
    pub spectral_aperiodic: bool,
    /// No spectral peak, or the state never revisited A′.
    pub aperiodic: bool,
}

/// Tunneling period in kicks from the spectrum of ⟨J_x⟩ or ⟨J_z⟩.
///
/// A trajectory that never brings F_A′ above [`REVIVAL_THRESHOLD`] has not
/// tunneled, whatever oscillation its spectrum shows, and is flagged
/// aperiodic.
pub fn tunneling_period(traj: &[TrajectoryRecord], component: Component) -> Result<TunnelingPeriod> {
    tunneling_period_padded(traj, component, DEFAULT_PAD)
}

pub fn tunneling_period_padded(
    traj: &[TrajectoryRecord],
    component: Component,
    pad_to: usize,
) -> Result<TunnelingPeriod> {
    let series: Vec<f64> = traj.iter().map(|r| component.select(r)).collect();
    let spec = spectrum(&series, pad_to, Window::None)?;
    let max_fid_ap = traj
        .iter()
        .skip(1)
        .map(|r| r.fid_ap)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(TunnelingPeriod {
        period_kicks: spec.period_kicks,
        peak_frequency: spec.peak_frequency,
        max_fid_ap,
        spectral_aperiodic: spec.aperiodic,
        aperiodic: spec.aperiodic || max_fid_ap <= REVIVAL_THRESHOLD,
    })
}

/// Σ (a − ā)(b − b̄), the zero-lag cross-correlation of two series.
pub fn zero_lag_correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    if n == 0 {
        return 0.0;
    }
    let ma = a[..n].iter().sum::<f64>() / n as f64;
    let mb = b[..n].iter().sum::<f64>() / n as f64;
    a[..n].iter().zip(&b[..n]).map(|(x, y)| (x - ma) * (y - mb)).sum()
}

/// `max − min`.
pub fn peak_to_peak(series: &[f64]) -> f64 {
    let (lo, hi) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if series.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angmom::{build_collective_ops, build_spin_ops, Spin};
    use crate::classical::to_cartesian;
    use crate::linalg::ONE;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn coherent_state_expectations_match_classical_vector() {
        for two_j in [1u32, 2, 3, 10, 40] {
            let ops = build_spin_ops(Spin::from_two_j(two_j));
            for p in NamedPoint::ALL {
                let c = p.coord();
                let rho = DensityMatrix::pure(&states::coherent_state(&ops, c)).unwrap();
                let e = expectations(&rho, &ops).unwrap();
                let v = to_cartesian(c).as_array();
                for a in 0..3 {
                    assert!((e[a] - v[a]).abs() < 1e-10, "two_j={two_j} {p}");
                }
            }
        }
    }

    #[test]
    fn mixed_state_has_zero_expectation() {
        let ops = build_spin_ops(Spin::from_two_j(5));
        let e = expectations(&DensityMatrix::maximally_mixed(6), &ops).unwrap();
        assert!(e.iter().all(|v| v.abs() < 1e-15));
        assert!(expectations(&DensityMatrix::maximally_mixed(4), &ops).is_err());
    }

    #[test]
    fn non_hermitian_input_trips_integrity_check() {
        let ops = build_spin_ops(Spin::from_two_j(1));
        let mut m = CMatrix::identity(2, 2) * (ONE * 0.5);
        m[(0, 1)] = crate::linalg::I * 0.3;
        let rho = DensityMatrix::from_raw(m);
        assert!(matches!(expectations(&rho, &ops), Err(QktError::NumericalIntegrity(_))));
    }

    #[test]
    fn reduced_readout_on_product_and_bell_states() {
        let n = 3;
        let c = NamedPoint::B.coord();
        let psi = states::coherent_state_multiqubit(n, c, 12).unwrap();
        let rho = DensityMatrix::pure(&psi).unwrap();
        let single = pure_expectations(
            &states::coherent_state_spin_j(Spin::from_two_j(1), c),
            &build_spin_ops(Spin::from_two_j(1)),
        );
        // sum over sites of j=1/2 values, renormalized by j = n/2
        let e = expectations_from_reduced(&rho, n).unwrap();
        for a in 0..3 {
            assert!((e[a] - single[a]).abs() < 1e-12);
        }
        let full = expectations(&rho, &build_collective_ops(n, 12).unwrap()).unwrap();
        for a in 0..3 {
            assert!((e[a] - full[a]).abs() < 1e-12);
        }

        let bell = states::state_from_amplitudes(vec![ONE * FRAC_1_SQRT_2, ZERO, ZERO, ONE * FRAC_1_SQRT_2]);
        let rho = DensityMatrix::pure(&bell).unwrap();
        let e = expectations_from_reduced(&rho, 2).unwrap();
        assert!(e.iter().all(|v| v.abs() < 1e-15));
        let marginal = reduced_qubit(rho.matrix(), 1, 2);
        assert!(linalg::max_abs(&(marginal - CMatrix::identity(2, 2) * (ONE * 0.5))) < 1e-15);
    }

    #[test]
    fn trace_fidelity_limits() {
        let ops = build_spin_ops(Spin::from_two_j(2));
        let psi = states::coherent_state(&ops, NamedPoint::A.coord());
        let dev = states::pure_deviation(&psi);
        assert!((trace_fidelity(&dev, &dev).unwrap() - 1.0).abs() < 1e-14);
        assert!((trace_fidelity(&dev, &-dev.clone()).unwrap() + 1.0).abs() < 1e-14);
        let zero = states::deviation(&DensityMatrix::maximally_mixed(3));
        assert!(matches!(trace_fidelity(&dev, &zero), Err(QktError::Degenerate(_))));
    }

    #[test]
    fn trace_fidelity_of_pure_states_closed_form() {
        // For pure states F = (|⟨a|b⟩|² − 1/d)/(1 − 1/d).
        let ops = build_spin_ops(Spin::from_two_j(2));
        let a = states::coherent_state(&ops, NamedPoint::A.coord());
        let ap = states::coherent_state(&ops, NamedPoint::APrime.coord());
        let ov = linalg::overlap_sq(&a, &ap);
        let d = 3.0;
        let f = trace_fidelity(&states::pure_deviation(&a), &states::pure_deviation(&ap)).unwrap();
        assert!((f - (ov - 1.0 / d) / (1.0 - 1.0 / d)).abs() < 1e-14);
    }

    #[test]
    fn observer_reports_zero_fidelity_for_fully_mixed_state() {
        let ops = build_spin_ops(Spin::from_two_j(2));
        let obs = Observer::new(&ops, &PointTable::default(), CorrelationMode::StateOverlap);
        let r = obs.observe(3, &DensityMatrix::maximally_mixed(3)).unwrap();
        assert_eq!((r.kick, r.fid_a, r.fid_ap), (3, 0.0, 0.0));
        assert!((r.corr_a - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn correlation_limits() {
        let ops = build_spin_ops(Spin::from_two_j(3));
        let table = PointTable::default();
        let probe = LocalizationProbe::new(&ops, NamedPoint::A, &table);
        let rho = DensityMatrix::pure(&probe.state).unwrap();
        let c = correlation(&rho, &probe, CorrelationMode::StateOverlap, &ops).unwrap();
        assert!((c - 1.0).abs() < 1e-14);
        let v = correlation(&rho, &probe, CorrelationMode::Vector, &ops).unwrap();
        assert!((v - 1.0).abs() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(4);
        let c = correlation(&mixed, &probe, CorrelationMode::StateOverlap, &ops).unwrap();
        assert!((c - 0.25).abs() < 1e-15);
        assert!(matches!(
            correlation(&mixed, &probe, CorrelationMode::Vector, &ops),
            Err(QktError::Degenerate(_))
        ));
    }

    #[test]
    fn period_four_tone() {
        let series: Vec<f64> = (0..25)
            .map(|n| (std::f64::consts::FRAC_PI_2 * n as f64).cos())
            .collect();
        let s = spectrum(&series, 256, Window::None).unwrap();
        assert!((s.peak_frequency - 0.25).abs() <= 1.0 / 256.0);
        assert!(!s.aperiodic);
        assert_eq!(s.frequencies.len(), 129);
        assert!(s.amplitudes.iter().all(|a| *a >= 0.0));
        let hann = spectrum(&series, 256, Window::Hann).unwrap();
        assert!((hann.peak_frequency - 0.25).abs() <= 1.0 / 256.0);
    }

    #[test]
    fn constant_series_is_aperiodic() {
        let s = spectrum(&[0.37; 25], 256, Window::None).unwrap();
        assert!(s.aperiodic);
    }

    #[test]
    fn short_series_rejected() {
        assert_eq!(
            spectrum(&[1.0; 5], 256, Window::None).unwrap_err(),
            QktError::SeriesTooShort { len: 5, min: 8 }
        );
    }

    #[test]
    fn pad_is_raised_to_series_length() {
        let series: Vec<f64> = (0..300).map(|n| (0.3 * n as f64).sin()).collect();
        let s = spectrum(&series, 16, Window::None).unwrap();
        assert_eq!(s.frequencies.len(), 151);
    }

    #[test]
    fn helpers() {
        assert_eq!(peak_to_peak(&[1.0, -2.0, 0.5]), 3.0);
        assert!(zero_lag_correlation(&[1.0, 0.0, 1.0, 0.0], &[0.0, 1.0, 0.0, 1.0]) < 0.0);
        assert!(zero_lag_correlation(&[1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]) > 0.0);
    }
}
