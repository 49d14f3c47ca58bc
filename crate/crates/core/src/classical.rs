//! Classical kicked-top map on the unit sphere and phase-portrait generation.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QktError, Result};

/// Unit angular-momentum vector `(X, Y, Z) = J/j` in the classical limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ClassicalState {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        ClassicalState { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        ClassicalState::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn dot(&self, other: &ClassicalState) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn distance(&self, other: &ClassicalState) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Rotation by π about the y axis: `(X, Y, Z) → (−X, Y, −Z)`.
    pub fn rotate_y_pi(&self) -> Self {
        ClassicalState::new(-self.x, self.y, -self.z)
    }

    pub fn to_spherical(&self) -> SphericalCoord {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        SphericalCoord::new(theta, self.y.atan2(self.x))
    }
}

/// Polar angle θ ∈ [0, π] and azimuth φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoord {
    pub theta: f64,
    pub phi: f64,
}

impl SphericalCoord {
    /// Builds a coordinate, wrapping φ into [0, 2π). θ is clamped to [0, π].
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        SphericalCoord {
            theta: theta.clamp(0.0, PI),
            phi,
        }
    }

    /// Like [`SphericalCoord::new`] but rejects θ outside [0, π] or non-finite input.
    pub fn checked(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(QktError::InvalidInput("coordinates must be finite".into()));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(QktError::InvalidInput(format!(
                "theta = {theta} is outside [0, pi]"
            )));
        }
        Ok(SphericalCoord::new(theta, phi))
    }
}

fn snapped_sin_cos(x: f64) -> (f64, f64) {
    let snap = |v: f64| if v.abs() < 4.0 * f64::EPSILON { 0.0 } else { v };
    let (s, c) = x.sin_cos();
    (snap(s), snap(c))
}

/// `X = sinθ cosφ, Y = sinθ sinφ, Z = cosθ`.
///
/// Round-off residues of sin/cos are snapped to zero so the poles and the
/// equator land exactly on the axes.
pub fn to_cartesian(c: SphericalCoord) -> ClassicalState {
    let (st, ct) = snapped_sin_cos(c.theta);
    let (sp, cp) = snapped_sin_cos(c.phi);
    ClassicalState::new(st * cp, st * sp, ct)
}

/// Labelled phase-space points used as initial states and references.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedPoint {
    A,
    #[serde(rename = "A'")]
    APrime,
    B,
    C,
    E,
    #[serde(rename = "E'")]
    EPrime,
}

impl NamedPoint {
    pub const ALL: [NamedPoint; 6] = [
        NamedPoint::A,
        NamedPoint::APrime,
        NamedPoint::B,
        NamedPoint::C,
        NamedPoint::E,
        NamedPoint::EPrime,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NamedPoint::A => "A",
            NamedPoint::APrime => "A'",
            NamedPoint::B => "B",
            NamedPoint::C => "C",
            NamedPoint::E => "E",
            NamedPoint::EPrime => "E'",
        }
    }

    /// Parses `A`, `A'`, `Ap`, `E'`, `Ep` and so on (case-insensitive).
    pub fn parse(s: &str) -> Option<NamedPoint> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(NamedPoint::A),
            "A'" | "AP" | "A_PRIME" => Some(NamedPoint::APrime),
            "B" => Some(NamedPoint::B),
            "C" => Some(NamedPoint::C),
            "E" => Some(NamedPoint::E),
            "E'" | "EP" | "E_PRIME" => Some(NamedPoint::EPrime),
            _ => None,
        }
    }

    /// Coordinate from the default table.
    pub fn coord(self) -> SphericalCoord {
        PointTable::default().coord(self)
    }
}

impl std::fmt::Display for NamedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Coordinates of the named points. A, A′, E, E′ are fixed; B and C are
/// configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointTable {
    /// Just inside the border of the A island at k = 3.
    pub b: SphericalCoord,
    /// In the connected chaotic sea at k = 3.
    pub c: SphericalCoord,
}

const A_THETA: f64 = 2.25;
const A_PHI: f64 = 0.63;

impl Default for PointTable {
    fn default() -> Self {
        PointTable {
            b: SphericalCoord::new(2.06, 0.63),
            c: SphericalCoord::new(0.70, 5.65),
        }
    }
}

impl PointTable {
    pub fn coord(&self, point: NamedPoint) -> SphericalCoord {
        match point {
            NamedPoint::A => SphericalCoord::new(A_THETA, A_PHI),
            NamedPoint::APrime => SphericalCoord::new(PI - A_THETA, PI - A_PHI),
            NamedPoint::E => SphericalCoord::new(A_THETA, A_PHI + PI),
            NamedPoint::EPrime => SphericalCoord::new(PI - A_THETA, TAU - A_PHI),
            NamedPoint::B => self.b,
            NamedPoint::C => self.c,
        }
    }
}

/// One application of the map without renormalization.
pub fn classical_step_raw(s: ClassicalState, k: f64) -> ClassicalState {
    let (sin_kx, cos_kx) = (k * s.x).sin_cos();
    ClassicalState::new(
        s.z * cos_kx + s.y * sin_kx,
        -s.z * sin_kx + s.y * cos_kx,
        -s.x,
    )
}

/// One kick of the classical top, renormalized to the unit sphere.
pub fn classical_step(s: ClassicalState, k: f64) -> ClassicalState {
    classical_step_raw(s, k).normalized()
}

/// `n_steps + 1` points starting with `c0`.
pub fn classical_trajectory(c0: SphericalCoord, k: f64, n_steps: usize) -> Vec<SphericalCoord> {
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(c0);
    let mut s = to_cartesian(c0);
    for _ in 0..n_steps {
        s = classical_step(s, k);
        out.push(s.to_spherical());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PortraitPoint {
    pub traj_id: usize,
    pub iter: usize,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePortrait {
    pub k: f64,
    pub points: Vec<PortraitPoint>,
}

/// Seeds of a portrait: a `grid × grid` lattice of cell midpoints, uniform
/// in (cosθ, φ).
pub fn portrait_seeds(grid: usize) -> Vec<SphericalCoord> {
    let g = grid as f64;
    (0..grid)
        .flat_map(|i| {
            let cos_theta = 1.0 - (2.0 * i as f64 + 1.0) / g;
            (0..grid).map(move |jdx| {
                SphericalCoord::new(cos_theta.acos(), TAU * (jdx as f64 + 0.5) / g)
            })
        })
        .collect()
}

/// Stroboscopic portrait: every visited (θ, φ) of every seeded trajectory,
/// the seed included as iterate 0.
pub fn generate_portrait(k: f64, grid: usize, n_iter: usize) -> Result<PhasePortrait> {
    if grid < 2 {
        return Err(QktError::InvalidInput(format!("grid must be >= 2, got {grid}")));
    }
    if n_iter < 1 {
        return Err(QktError::InvalidInput("n_iter must be >= 1".into()));
    }
    let seeds = portrait_seeds(grid);
    let points = seeds
        .par_iter()
        .enumerate()
        .map(|(traj_id, &c0)| {
            classical_trajectory(c0, k, n_iter)
                .into_iter()
                .enumerate()
                .map(|(iter, c)| PortraitPoint {
                    traj_id,
                    iter,
                    theta: c.theta,
                    phi: c.phi,
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    Ok(PhasePortrait { k, points })
}

/// Octant index 0..8 from the signs of (X, Y, Z).
pub fn octant(s: &ClassicalState) -> usize {
    usize::from(s.x > 0.0) | usize::from(s.y > 0.0) << 1 | usize::from(s.z > 0.0) << 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_examples() {
        let n = to_cartesian(SphericalCoord::new(0.0, 1.234));
        assert!(n.distance(&ClassicalState::new(0.0, 0.0, 1.0)) < 1e-15);
        let e = to_cartesian(SphericalCoord::new(PI / 2.0, 0.0));
        assert!(e.distance(&ClassicalState::new(1.0, 0.0, 0.0)) < 1e-15);

        // sin/cos of 2.25 and 0.63 evaluated independently
        let a = to_cartesian(NamedPoint::A.coord());
        let (st, ct) = (2.25f64.sin(), 2.25f64.cos());
        let (sp, cp) = (0.63f64.sin(), 0.63f64.cos());
        assert!((a.x - st * cp).abs() < 1e-15);
        assert!((a.x - 0.6287).abs() < 5e-5);
        assert!((a.y - 0.4584).abs() < 5e-5);
        assert!((a.z - (-0.6282)).abs() < 5e-5);
        assert!((a.y - st * sp).abs() < 1e-15 && (a.z - ct).abs() < 1e-15);
    }

    #[test]
    fn y_pole_is_fixed() {
        for k in [0.0, 1.0, 3.0, 6.0] {
            let p = ClassicalState::new(0.0, 1.0, 0.0);
            assert_eq!(classical_step(p, k), p);
            let m = ClassicalState::new(0.0, -1.0, 0.0);
            assert_eq!(classical_step(m, k), m);
        }
    }

    #[test]
    fn k_zero_is_quarter_turn() {
        let s = classical_step(ClassicalState::new(1.0, 0.0, 0.0), 0.0);
        assert!(s.distance(&ClassicalState::new(0.0, 0.0, -1.0)) < 1e-15);
    }

    #[test]
    fn a_is_nearly_fixed_and_e_is_period_two() {
        let a = to_cartesian(NamedPoint::A.coord());
        assert!(classical_step(a, 3.0).distance(&a) < 0.01);
        let ap = to_cartesian(NamedPoint::APrime.coord());
        assert!(classical_step(ap, 3.0).distance(&ap) < 0.01);

        let e = to_cartesian(NamedPoint::E.coord());
        let ep = to_cartesian(NamedPoint::EPrime.coord());
        let once = classical_step(e, 3.0);
        assert!(once.distance(&ep) < 0.01);
        assert!(classical_step(once, 3.0).distance(&e) < 0.01);
    }

    #[test]
    fn a_prime_is_y_pi_image_of_a() {
        let a = to_cartesian(NamedPoint::A.coord());
        let ap = to_cartesian(NamedPoint::APrime.coord());
        assert!(a.rotate_y_pi().distance(&ap) < 1e-15);
        let e = to_cartesian(NamedPoint::E.coord());
        let ep = to_cartesian(NamedPoint::EPrime.coord());
        assert!(e.rotate_y_pi().distance(&ep) < 1e-15);
    }

    #[test]
    fn trajectory_lengths_and_fixed_point() {
        let c0 = NamedPoint::A.coord();
        assert_eq!(classical_trajectory(c0, 3.0, 0), vec![c0]);

        let pole = SphericalCoord::new(PI / 2.0, PI / 2.0);
        let traj = classical_trajectory(pole, 3.0, 100);
        assert_eq!(traj.len(), 101);
        for c in traj {
            assert!((c.theta - pole.theta).abs() < 1e-10 && (c.phi - pole.phi).abs() < 1e-10);
        }
    }

    #[test]
    fn k_zero_trajectory_is_period_four_circle() {
        let traj = classical_trajectory(NamedPoint::A.coord(), 0.0, 8);
        let pts: Vec<ClassicalState> = traj.iter().map(|&c| to_cartesian(c)).collect();
        for n in 0..pts.len() {
            assert!((pts[n].y - pts[0].y).abs() < 1e-12);
            if n + 4 < pts.len() {
                assert!(pts[n + 4].distance(&pts[n]) < 1e-12);
            }
            if n + 1 < pts.len() {
                // X(N+1) = Z(N), Z(N+1) = −X(N)
                assert!((pts[n + 1].x - pts[n].z).abs() < 1e-12);
                assert!((pts[n + 1].z + pts[n].x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn k_zero_portrait_is_four_cycles() {
        let p = generate_portrait(0.0, 4, 8).unwrap();
        assert_eq!(p.points.len(), 16 * 9);
        for chunk in p.points.chunks(9) {
            let first = to_cartesian(SphericalCoord::new(chunk[0].theta, chunk[0].phi));
            let fourth = to_cartesian(SphericalCoord::new(chunk[4].theta, chunk[4].phi));
            let eighth = to_cartesian(SphericalCoord::new(chunk[8].theta, chunk[8].phi));
            assert!(first.distance(&fourth) < 1e-12);
            assert!(first.distance(&eighth) < 1e-12);
        }
    }

    #[test]
    fn portrait_rejects_bad_sizes() {
        assert!(generate_portrait(3.0, 1, 5).is_err());
        assert!(generate_portrait(3.0, 3, 0).is_err());
    }

    #[test]
    fn phi_wraps() {
        let c = SphericalCoord::new(1.0, -0.5);
        assert!((c.phi - (TAU - 0.5)).abs() < 1e-15);
        assert!(SphericalCoord::checked(4.0, 0.0).is_err());
        assert!(SphericalCoord::checked(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn named_point_parsing() {
        assert_eq!(NamedPoint::parse("ap"), Some(NamedPoint::APrime));
        assert_eq!(NamedPoint::parse("E'"), Some(NamedPoint::EPrime));
        assert_eq!(NamedPoint::parse("c"), Some(NamedPoint::C));
        assert_eq!(NamedPoint::parse("Z"), None);
    }
}
