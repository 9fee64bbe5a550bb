use std::f64::consts::PI;

use proptest::prelude::*;
use zrp_core::angular::{orthonormality_matrix, AngularBasis};
use zrp_core::model::{Direction, SPhaseModel, TwoCenterTarget};
use zrp_core::phase_solver::solve_phases;
use zrp_core::scattering::{integrated_sigma, optical_sigma};

fn model() -> impl Strategy<Value = SPhaseModel> {
    (0i32..4, -8.0..8.0f64, -4.0..4.0f64).prop_map(|(n, c1, c2)| SPhaseModel { offset_half_turns: n, c1, c2 })
}

fn target() -> impl Strategy<Value = TwoCenterTarget> {
    (model(), model(), 0.5..6.0f64).prop_map(|(a, b, r)| TwoCenterTarget::new("p", a, b, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kcot_times_tan_is_k(m in model(), k in 1e-3..3.0f64) {
        if let Ok(kc) = m.kcot_delta(k) {
            let t = m.reduced_phase(k).tan();
            if t.is_finite() && kc.is_finite() && t.abs() < 1e8 {
                prop_assert!((kc * t / k - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn json_round_trip(t in target()) {
        let back = TwoCenterTarget::from_json_str(&t.to_json_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn swapping_centers_keeps_phase_set(t in target(), k in 1e-2..3.0f64) {
        let a = solve_phases(&t, k).unwrap();
        let b = solve_phases(&t.swapped(), k).unwrap();
        let gap = |x: f64, y: f64| {
            let d = (x - y).rem_euclid(PI);
            d.min(PI - d)
        };
        let same = gap(a.eta0, b.eta0) + gap(a.eta1, b.eta1);
        let crossed = gap(a.eta0, b.eta1) + gap(a.eta1, b.eta0);
        prop_assert!(same.min(crossed) < 1e-11);
    }

    #[test]
    fn roots_certified(t in target(), k in 1e-2..3.0f64) {
        let p = solve_phases(&t, k).unwrap();
        prop_assert!(p.residual0 < 1e-10 && p.residual1 < 1e-10, "{:?}", p);
        prop_assert!(p.eta0 > -PI / 2.0 && p.eta0 <= PI / 2.0);
    }

    #[test]
    fn gram_is_identity(z in 1e-3..8.0f64) {
        let g = orthonormality_matrix(&AngularBasis::at_z(z).unwrap(), 64).unwrap();
        prop_assert!((g[0][0] - 1.0).abs() < 1e-12);
        prop_assert!((g[1][1] - 1.0).abs() < 1e-12);
        prop_assert!(g[0][1].abs() < 1e-14);
    }

    #[test]
    fn optical_theorem(t in target(), k in 0.05..2.0f64, u in -1.0..1.0f64) {
        let d = Direction::from_cos(u).unwrap();
        let lhs = integrated_sigma(&t, k, d, 96).unwrap();
        let rhs = optical_sigma(&t, k, d).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs().max(1e-12));
    }
}
