use hypres::cli::fmt12;
use hypres::modes::{boundary_function, mode_basis, s_extended, s_funnel, s_plane, s_truncated, Funnel, ModeContext};
use hypres::resonances::{background_lattice, Background};
use hypres::scatdet::{log_tau, ModeSumPolicy};
use hypres::specfun::{log_gamma, rgamma};
use hypres::Complex64 as C;
use hypres::modes::Model;
use proptest::prelude::*;
use std::f64::consts::PI;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn gamma_recurrence(re in -20.0f64..20.0, im in 0.2f64..40.0) {
        let z = C::new(re, im);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        let turns = d.im / (2.0 * PI);
        prop_assert!(d.re.abs() < 1e-11);
        prop_assert!((turns - turns.round()).abs() < 1e-11);
    }

    #[test]
    fn gamma_reflection(re in -6.0f64..6.0, im in 0.05f64..6.0) {
        let z = C::new(re, im);
        let lhs = rgamma(z) * rgamma(1.0 - z) * PI;
        let rhs = (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn fmt12_round_trips(x in -1e9f64..1e9, e in -30i32..30) {
        let v = x * 10f64.powi(e);
        let back: f64 = fmt12(v).parse().unwrap();
        prop_assert!((back - v).abs() <= 5e-12 * v.abs());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn wronskian_is_two_over_pi(k in 0u32..4, omega in 0.5f64..1.0, re in 0.0f64..1.0, im in -12.0f64..12.0, r in 0.0f64..5.0) {
        let fun = Funnel::new(2.0 * PI / omega, 0.0).unwrap();
        let b = mode_basis(&ModeContext::new(k, C::new(re, im)), &fun, r).unwrap();
        prop_assert!((b.scaled_wronskian(r) - 2.0 / PI).norm() < 1e-9);
    }

    #[test]
    fn reciprocity_all_models(k in 0u32..8, re in -1.5f64..2.5, im in 0.3f64..10.0) {
        let s = C::new(re, im);
        let tr = Funnel::new(2.0 * PI, 1.0).unwrap();
        let ex = Funnel::new(2.0 * PI, -1.0).unwrap();
        let pairs = [
            s_funnel(s, k, 1.0).unwrap().value * s_funnel(1.0 - s, k, 1.0).unwrap().value,
            s_plane(s, k).unwrap().value * s_plane(1.0 - s, k).unwrap().value,
            s_truncated(s, k, &tr).unwrap().value * s_truncated(1.0 - s, k, &tr).unwrap().value,
            s_extended(s, k, &ex).unwrap().value * s_extended(1.0 - s, k, &ex).unwrap().value,
        ];
        for p in pairs {
            prop_assert!((p - 1.0).norm() < 1e-9, "{p}");
        }
    }

    #[test]
    fn unimodular_on_critical_line(k in 0u32..10, t in 0.1f64..30.0) {
        let s = C::new(0.5, t);
        let tr = Funnel::new(2.0 * PI, 1.0).unwrap();
        let ex = Funnel::new(2.0 * PI, -1.0).unwrap();
        for v in [
            s_funnel(s, k, 1.0).unwrap().value,
            s_plane(s, k).unwrap().value,
            s_truncated(s, k, &tr).unwrap().value,
            s_extended(s, k, &ex).unwrap().value,
        ] {
            prop_assert!((v.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_function_is_real_on_real_axis(k in 0u32..10, re in -20.0f64..0.4, im in 0.01f64..20.0, r in prop_oneof![Just(1.0), Just(-1.0), Just(0.5)]) {
        let s = C::new(re, im);
        let a = boundary_function(k, 1.0, s, r).unwrap().value();
        let b = boundary_function(k, 1.0, s.conj(), r).unwrap().value();
        prop_assert!((a - b.conj()).norm() <= 1e-9 * a.norm());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn log_tau_vanishes_on_critical_line(t in 0.5f64..12.0, extended in any::<bool>()) {
        let (model, fun) = if extended {
            (Model::ExtendedFunnel, Funnel::new(2.0 * PI, -1.0).unwrap())
        } else {
            (Model::TruncatedFunnel, Funnel::new(2.0 * PI, 1.0).unwrap())
        };
        let v = log_tau(C::new(0.5, t), model, &fun, &ModeSumPolicy::default()).unwrap();
        prop_assert!(v.abs() < 1e-8, "{v}");
    }

    #[test]
    fn lattice_counts_are_monotone(ell in 1.0f64..12.0, t1 in 1.0f64..30.0, dt in 0.0f64..10.0) {
        let set = background_lattice(Background::StandardFunnel { ell }, 40.0).unwrap();
        let n = set.counting();
        prop_assert!(n.n(t1).unwrap() <= n.n(t1 + dt).unwrap());
        prop_assert!(n.n_tilde(t1).unwrap() <= n.n_tilde(t1 + dt).unwrap());
    }
}
