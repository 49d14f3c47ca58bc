//! Run and sweep configuration: flags, optional JSON file, resolution.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use qkt_core::observables::Component;
use qkt_core::{
    CorrelationMode, DephasingModel, DephasingSpec, InitialState, NamedPoint, QktParams,
    Representation, Simulation, Spin, SphericalCoord, DEFAULT_MAX_QUBITS,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const MAX_QUBITS_ENV: &str = "QKT_MAX_QUBITS";

/// Field-gradient labels (G/cm) and their default dephasing strengths.
pub const DEFAULT_PFG_TABLE: [(&str, f64); 3] = [("0", 0.0), ("0.005", 0.02), ("0.05", 0.2)];

/// Run options as given on the command line or in a config file. Every
/// field is optional so that flags can be layered over a file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    /// spin_j or multiqubit
    #[arg(long)]
    pub representation: Option<String>,
    /// Twice the spin quantum number
    #[arg(long)]
    pub two_j: Option<u32>,
    /// Chaoticity parameter
    #[arg(long)]
    pub k: Option<f64>,
    /// Kick rotation angle in radians
    #[arg(long)]
    pub kick_angle: Option<f64>,
    /// Named point (A, A', B, C, E, E') or "theta,phi"
    #[arg(long)]
    pub initial: Option<String>,
    /// Number of kicks
    #[arg(long)]
    #[serde(alias = "n_kicks")]
    pub kicks: Option<usize>,
    /// coherence_order or per_qubit
    #[arg(long)]
    pub noise_model: Option<String>,
    /// Dephasing strength (lambda or p)
    #[arg(long)]
    pub noise: Option<f64>,
    /// Field-gradient label looked up in the gradient table
    #[arg(long, conflicts_with = "noise")]
    pub pfg: Option<String>,
    /// Gradient label to strength table
    #[arg(skip)]
    pub pfg_table: Option<BTreeMap<String, f64>>,
    /// Pseudo-pure purity factor in (0, 1]
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// state_overlap or vector
    #[arg(long)]
    pub correlation: Option<String>,
    /// Override for point B as "theta,phi"
    #[arg(long)]
    pub point_b: Option<String>,
    /// Override for point C as "theta,phi"
    #[arg(long)]
    pub point_c: Option<String>,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
}

macro_rules! layer {
    ($top:expr, $base:expr, $($f:ident),*) => {
        RunOptions { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunOptions {
    /// `self` with unset fields taken from `base`.
    pub fn over(self, base: RunOptions) -> RunOptions {
        layer!(
            self, base, representation, two_j, k, kick_angle, initial, kicks, noise_model,
            noise, pfg, pfg_table, epsilon, correlation, point_b, point_c, format
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Fully resolved single-run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub simulation: Simulation,
    pub noise_model: DephasingModel,
    pub format: OutputFormat,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
}

/// Qubit cap from the environment, or the default.
pub fn max_qubits_from_env() -> Result<usize> {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::usage(format!("{MAX_QUBITS_ENV}={v:?} is not a non-negative integer"))
        }),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn parse_coord(s: &str, what: &str) -> Result<SphericalCoord> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::usage(format!("{what}: expected \"theta,phi\" in radians, got {s:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let theta: f64 = parts[0].parse().map_err(|_| bad())?;
    let phi: f64 = parts[1].parse().map_err(|_| bad())?;
    SphericalCoord::checked(theta, phi).map_err(|e| CliError::usage(format!("{what}: {e}")))
}

fn parse_initial(s: &str) -> Result<InitialState> {
    match NamedPoint::parse(s) {
        Some(p) => Ok(InitialState::Named(p)),
        None if s.contains(',') => Ok(InitialState::Coord(parse_coord(s, "--initial")?)),
        None => Err(CliError::usage(format!(
            "--initial: unknown point {s:?}; use A, A', B, C, E, E' or \"theta,phi\""
        ))),
    }
}

impl RunOptions {
    pub fn resolve(&self, max_qubits: usize) -> Result<RunConfig> {
        let representation = match self.representation.as_deref().map(str::trim) {
            None | Some("spin_j") | Some("spin-j") => Representation::SpinJ,
            Some("multiqubit") | Some("multi_qubit") => Representation::MultiQubit,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "--representation: expected spin_j or multiqubit, got {other:?}"
                )))
            }
        };
        let two_j = self.two_j.unwrap_or(2);
        if two_j == 0 {
            return Err(CliError::usage("--two-j must be at least 1"));
        }
        let k = self.k.unwrap_or(3.0);
        let initial = match &self.initial {
            Some(s) => parse_initial(s)?,
            None => InitialState::default(),
        };
        let kicks = self.kicks.unwrap_or(25);
        if kicks < 1 {
            return Err(CliError::usage("--kicks must be at least 1"));
        }
        let noise_model = match &self.noise_model {
            Some(s) => DephasingModel::parse(s).ok_or_else(|| {
                CliError::usage(format!(
                    "--noise-model: expected coherence_order or per_qubit, got {s:?}"
                ))
            })?,
            None => DephasingModel::CoherenceOrder,
        };
        let strength = match (&self.noise, &self.pfg) {
            (Some(_), Some(_)) => return Err(CliError::usage("give either --noise or --pfg, not both")),
            (Some(v), None) => *v,
            (None, Some(label)) => pfg_strength(label, self.pfg_table.as_ref())?,
            (None, None) => 0.0,
        };
        let noise = (strength != 0.0).then_some(DephasingSpec {
            model: noise_model,
            strength,
        });
        if let Some(spec) = noise {
            spec.validate().map_err(|e| CliError::usage(format!("--noise: {e}")))?;
            if spec.model == DephasingModel::PerQubit && representation != Representation::MultiQubit {
                return Err(CliError::usage(
                    "--noise-model per_qubit needs --representation multiqubit",
                ));
            }
        }
        let correlation = match &self.correlation {
            Some(s) => CorrelationMode::parse(s).ok_or_else(|| {
                CliError::usage(format!(
                    "--correlation: expected state_overlap or vector, got {s:?}"
                ))
            })?,
            None => CorrelationMode::default(),
        };
        let format = match self.format.as_deref() {
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                return Err(CliError::usage(format!("--format: expected csv or json, got {other:?}")))
            }
        };

        let mut params = QktParams::new(k);
        if let Some(a) = self.kick_angle {
            params = params.with_kick_angle(a);
        }
        let mut simulation = Simulation::new(Spin::from_two_j(two_j), k, initial, kicks)
            .with_representation(representation)
            .with_noise(noise)
            .with_epsilon(self.epsilon.unwrap_or(1.0));
        simulation.params = params;
        simulation.correlation = correlation;
        simulation.max_qubits = max_qubits;
        if let Some(b) = &self.point_b {
            simulation.points.b = parse_coord(b, "--point-b")?;
        }
        if let Some(c) = &self.point_c {
            simulation.points.c = parse_coord(c, "--point-c")?;
        }
        if representation == Representation::MultiQubit && two_j as usize > max_qubits {
            return Err(CliError::Core(qkt_core::QktError::ResourceCap {
                requested: two_j as usize,
                cap: max_qubits,
            }));
        }
        simulation
            .validate()
            .map_err(|e| CliError::usage(e.to_string()))?;
        Ok(RunConfig {
            simulation,
            noise_model,
            format,
        })
    }
}

fn pfg_strength(label: &str, table: Option<&BTreeMap<String, f64>>) -> Result<f64> {
    let found = match table {
        Some(t) => t.get(label.trim()).copied(),
        None => DEFAULT_PFG_TABLE
            .iter()
            .find(|(l, _)| *l == label.trim())
            .map(|(_, v)| *v),
    };
    found.ok_or_else(|| {
        let known: Vec<String> = match table {
            Some(t) => t.keys().cloned().collect(),
            None => DEFAULT_PFG_TABLE.iter().map(|(l, _)| l.to_string()).collect(),
        };
        CliError::usage(format!("--pfg: unknown gradient label {label:?}; known: {}", known.join(", ")))
    })
}

/// Parameter scanned by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    TwoJ,
    K,
    NoiseStrength,
}

impl SweepAxis {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "two_j" | "two-j" => Some(SweepAxis::TwoJ),
            "k" => Some(SweepAxis::K),
            "noise_strength" | "noise-strength" | "noise" => Some(SweepAxis::NoiseStrength),
            _ => None,
        }
    }
}

/// Sweep options; run options are flattened in and serve as the base.
#[derive(Debug, Clone, Default, Args)]
pub struct SweepOptions {
    /// two_j, k or noise_strength
    #[arg(long)]
    pub axis: Option<String>,
    /// Sorted values: "a,b,c" or an inclusive range "start:stop[:step]"
    #[arg(long)]
    pub values: Option<String>,
    /// Worker threads
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// Write the A/A' distinguishability summary instead of trajectories
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub overlap: Option<bool>,
    /// x or z, the component used for the tunneling period
    #[arg(long)]
    pub component: Option<String>,
    #[command(flatten)]
    pub base: RunOptions,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValuesField {
    Text(String),
    List(Vec<f64>),
}

// Sweep keys sit next to run keys in one flat object; whatever is not a
// sweep key must be a valid run option.
impl<'de> Deserialize<'de> for SweepOptions {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Keys {
            axis: Option<String>,
            values: Option<ValuesField>,
            parallelism: Option<usize>,
            overlap: Option<bool>,
            component: Option<String>,
            #[serde(flatten)]
            rest: serde_json::Map<String, serde_json::Value>,
        }
        let k = Keys::deserialize(d)?;
        let base = RunOptions::deserialize(serde_json::Value::Object(k.rest)).map_err(serde::de::Error::custom)?;
        let values = k.values.map(|v| match v {
            ValuesField::Text(s) => s,
            ValuesField::List(xs) => xs.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
        });
        Ok(SweepOptions {
            axis: k.axis,
            values,
            parallelism: k.parallelism,
            overlap: k.overlap,
            component: k.component,
            base,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub base: RunConfig,
    pub parallelism: usize,
    pub overlap: bool,
    pub component: Component,
}

/// Parses `"a,b,c"` or `"start:stop[:step]"`.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    let bad = || CliError::usage(format!("--values: cannot parse {s:?}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, stop, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1.0),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor();
        if !(0.0..=1e6).contains(&n) {
            return Err(bad());
        }
        (0..=n as usize).map(|i| start + i as f64 * step).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(CliError::usage("--values is empty"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::usage("--values must be strictly increasing"));
    }
    Ok(values)
}

impl SweepOptions {
    pub fn over(self, file: SweepOptions) -> SweepOptions {
        SweepOptions {
            axis: self.axis.or(file.axis),
            values: self.values.or(file.values),
            parallelism: self.parallelism.or(file.parallelism),
            overlap: self.overlap.or(file.overlap),
            component: self.component.or(file.component),
            base: self.base.over(file.base),
        }
    }

    pub fn resolve(&self, max_qubits: usize) -> Result<SweepConfig> {
        let axis = match &self.axis {
            Some(s) => SweepAxis::parse(s).ok_or_else(|| {
                CliError::usage(format!("--axis: expected two_j, k or noise_strength, got {s:?}"))
            })?,
            None => return Err(CliError::usage("--axis is required")),
        };
        let values = parse_values(
            self.values
                .as_deref()
                .ok_or_else(|| CliError::usage("--values is required"))?,
        )?;
        if axis == SweepAxis::TwoJ && values.iter().any(|v| v.fract() != 0.0 || *v < 1.0 || *v > u32::MAX as f64) {
            return Err(CliError::usage("--values: two_j values must be positive integers"));
        }
        let parallelism = self.parallelism.unwrap_or(1);
        if parallelism < 1 {
            return Err(CliError::usage("--parallelism must be at least 1"));
        }
        let overlap = self.overlap.unwrap_or(false);
        if overlap && axis != SweepAxis::TwoJ {
            return Err(CliError::usage("--overlap scans need --axis two_j"));
        }
        let component = match &self.component {
            Some(s) => Component::parse(s)
                .ok_or_else(|| CliError::usage(format!("--component: expected x or z, got {s:?}")))?,
            None => Component::Z,
        };
        Ok(SweepConfig {
            axis,
            values,
            base: self.base.resolve(max_qubits)?,
            parallelism,
            overlap,
            component,
        })
    }
}

/// Loads an optional config file and layers `flags` on top.
pub fn layered<T>(flags: T, config: Option<&PathBuf>, over: impl FnOnce(T, T) -> T) -> Result<T>
where
    T: Default + for<'de> Deserialize<'de>,
{
    match config {
        Some(path) => Ok(over(flags, read_json(path)?)),
        None => Ok(flags),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let cfg = RunOptions::default().resolve(12).unwrap();
        assert_eq!(cfg.simulation.spin.two_j(), 2);
        assert_eq!(cfg.simulation.n_kicks, 25);
        assert_eq!(cfg.simulation.noise, None);
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn flags_override_file() {
        let file: RunOptions = serde_json::from_str(r#"{"two_j": 3, "k": 1.5, "n_kicks": 9}"#).unwrap();
        let flags = RunOptions {
            k: Some(4.0),
            ..Default::default()
        };
        let merged = flags.over(file);
        assert_eq!((merged.two_j, merged.k, merged.kicks), (Some(3), Some(4.0), Some(9)));
    }

    #[test]
    fn unknown_file_keys_rejected() {
        assert!(serde_json::from_str::<RunOptions>(r#"{"twoj": 3}"#).is_err());
    }

    #[test]
    fn sweep_file_is_flat_and_strict() {
        let s: SweepOptions =
            serde_json::from_str(r#"{"axis": "k", "values": [0, 1.5, 3], "two_j": 3, "kicks": 9}"#).unwrap();
        assert_eq!(s.values.as_deref(), Some("0,1.5,3"));
        assert_eq!(s.base.two_j, Some(3));
        assert_eq!(s.resolve(12).unwrap().values, vec![0.0, 1.5, 3.0]);
        let s: SweepOptions = serde_json::from_str(r#"{"values": "1:4"}"#).unwrap();
        assert_eq!(s.values.as_deref(), Some("1:4"));
        assert!(serde_json::from_str::<SweepOptions>(r#"{"axis": "k", "kiks": 3}"#).is_err());
    }

    #[test]
    fn gradient_labels() {
        let opts = RunOptions {
            pfg: Some("0.005".into()),
            ..Default::default()
        };
        let cfg = opts.resolve(12).unwrap();
        assert_eq!(cfg.simulation.noise, Some(DephasingSpec::coherence_order(0.02)));
        let opts = RunOptions {
            pfg: Some("1".into()),
            ..Default::default()
        };
        assert!(matches!(opts.resolve(12), Err(CliError::Usage(_))));
    }

    #[test]
    fn initial_state_forms() {
        assert_eq!(parse_initial("A'").unwrap(), InitialState::Named(NamedPoint::APrime));
        assert_eq!(
            parse_initial("1.0, 2.0").unwrap(),
            InitialState::Coord(SphericalCoord::new(1.0, 2.0))
        );
        assert!(parse_initial("Q").is_err());
        assert!(parse_initial("4.0,0").is_err());
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1:4").unwrap(), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(parse_values("0,0.02,0.2").unwrap(), vec![0.0, 0.02, 0.2]);
        assert_eq!(parse_values("0:1:0.25").unwrap().len(), 5);
        assert!(parse_values("3,1").is_err());
        assert!(parse_values("").is_err());
        assert!(parse_values("1:2:0").is_err());
    }

    #[test]
    fn qubit_cap_is_a_resource_error() {
        let opts = RunOptions {
            representation: Some("multiqubit".into()),
            two_j: Some(6),
            ..Default::default()
        };
        let err = opts.resolve(4).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_RESOURCE);
    }

    #[test]
    fn per_qubit_noise_needs_qubits() {
        let opts = RunOptions {
            noise_model: Some("per_qubit".into()),
            noise: Some(0.1),
            ..Default::default()
        };
        assert!(matches!(opts.resolve(12), Err(CliError::Usage(_))));
    }
}
