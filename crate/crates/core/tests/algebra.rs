use proptest::prelude::*;
use qkt_core::angmom::{self, build_collective_ops, build_spin_ops};
use qkt_core::evolution::build_floquet;
use qkt_core::linalg::{self, CMatrix, ONE};
use qkt_core::{QktParams, Spin};

fn tol(two_j: u32) -> f64 {
    if two_j >= 200 {
        1e-10
    } else {
        1e-12
    }
}

#[test]
fn algebra_residuals_for_reference_spins() {
    for two_j in [1u32, 2, 3, 10, 40, 200] {
        let ops = build_spin_ops(Spin::from_two_j(two_j));
        assert!(angmom::commutator_residual(&ops) < tol(two_j), "two_j={two_j}");
        assert!(angmom::hermiticity_residual(&ops) < tol(two_j), "two_j={two_j}");
        assert!(angmom::casimir_check(&ops) < tol(two_j), "two_j={two_j}");
    }
}

#[test]
fn spectrum_of_jz_and_rotated_jx() {
    // J_x shares the spectrum m = −j..j with J_z.
    for two_j in [1u32, 2, 5, 12] {
        let spin = Spin::from_two_j(two_j);
        let ops = build_spin_ops(spin);
        let mut expected = spin.m_values();
        expected.sort_by(f64::total_cmp);
        for op in [ops.jx(), ops.jy(), ops.jz()] {
            let got = linalg::hermitian_spectrum(op);
            for (g, e) in got.iter().zip(&expected) {
                assert!((g - e).abs() < 1e-10, "two_j={two_j}");
            }
        }
    }
}

#[test]
fn collective_ops_restricted_to_symmetric_subspace_match_spin_j() {
    for n in 1..=5usize {
        let coll = build_collective_ops(n, 12).unwrap();
        let spin = build_spin_ops(Spin::from_two_j(n as u32));
        let w = angmom::symmetric_embedding(n);
        for (c, s) in coll.components().iter().zip(spin.components()) {
            let restricted: CMatrix = w.adjoint() * *c * &w;
            assert!(linalg::max_abs(&(restricted - s)) < 1e-12, "n={n}");
        }
    }
}

#[test]
fn floquet_unitarity_reference_grid() {
    for two_j in [1u32, 2, 3, 10, 40, 200] {
        let ops = build_spin_ops(Spin::from_two_j(two_j));
        for k in [0.0, 3.0, 6.0] {
            let f = build_floquet(&ops, QktParams::new(k));
            assert!(linalg::unitarity_residual(f.matrix()) < 1e-10, "two_j={two_j} k={k}");
        }
    }
}

#[test]
fn floquet_factorization_is_exact() {
    let ops = build_spin_ops(Spin::from_two_j(7));
    let f = build_floquet(&ops, QktParams::new(2.3));
    let rebuilt = f.torsion() * f.kick();
    assert!(linalg::max_abs(&(rebuilt - f.matrix())) < 1e-14);
    let t = f.torsion();
    for r in 0..t.nrows() {
        for c in 0..t.ncols() {
            if r != c {
                assert_eq!(t[(r, c)], 0.0 * ONE);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn commutators_hold_for_any_spin(two_j in 1u32..=60) {
        let ops = build_spin_ops(Spin::from_two_j(two_j));
        prop_assert!(angmom::commutator_residual(&ops) < 1e-11);
        prop_assert!(angmom::casimir_check(&ops) < 1e-11);
    }

    #[test]
    fn floquet_is_unitary(two_j in 1u32..=200, k in 0.0f64..=10.0) {
        let ops = build_spin_ops(Spin::from_two_j(two_j));
        let f = build_floquet(&ops, QktParams::new(k));
        prop_assert!(linalg::unitarity_residual(f.matrix()) < 1e-10);
    }

    #[test]
    fn kick_is_unitary_at_any_angle(two_j in 1u32..=30, angle in -7.0f64..7.0) {
        let ops = build_spin_ops(Spin::from_two_j(two_j));
        let f = build_floquet(&ops, QktParams::new(1.0).with_kick_angle(angle));
        prop_assert!(linalg::unitarity_residual(f.kick()) < 1e-11);
    }
}
