use attoqs_core::constants::{au_to_as, AU_TIME_AS, SPEED_OF_LIGHT};
use attoqs_core::superluminal::{self as qs, QsMode, ZetaMode, ROOT_CERTIFICATE_TOL};
use attoqs_core::AtomicSystem;
use proptest::prelude::*;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn system() -> impl Strategy<Value = AtomicSystem> {
    (1.0f64..130.0, 0.3f64..1.0, any::<bool>()).prop_map(|(z, ze_frac, rel)| {
        let z_eff = if ze_frac > 0.7 { z } else { z * ze_frac };
        AtomicSystem::new(z, z_eff, rel).unwrap()
    })
}

/// System plus a field in (0, F_a].
fn system_and_field() -> impl Strategy<Value = (AtomicSystem, f64)> {
    (system(), -8.0f64..0.0).prop_map(|(s, log_frac)| {
        let f = s.atomic_field() * 10f64.powf(log_frac);
        (s, f)
    })
}

proptest! {
    #[test]
    fn delay_decomposition((s, f) in system_and_field()) {
        let d = s.delay_set(f).unwrap();
        prop_assert!((d.tau_ad - d.tau_dion - d.tau_db).abs() <= 1e-12 * d.tau_ad);
    }

    #[test]
    fn delay_product_identity((s, f) in system_and_field()) {
        let d = s.delay_set(f).unwrap();
        prop_assert!(rel_err(d.tau_ti * d.tau_ad * 16.0 * s.z_eff() * f, 1.0) <= 1e-12);
        prop_assert!(rel_err(d.tau_ti, d.tau_backr) <= 1e-12);
    }

    #[test]
    fn barrier_root_identities((s, f) in system_and_field()) {
        let g = s.barrier_geometry(f).unwrap();
        let x_m2 = s.z_eff() / f;
        prop_assert!(rel_err(g.x_entry * g.x_exit, x_m2) <= 1e-12);
        prop_assert!(rel_err(g.x_top * g.x_top, x_m2) <= 1e-12);
        prop_assert!(g.width <= g.classical_width);
        if g.width > 0.0 {
            prop_assert!(rel_err(g.x_exit - g.x_entry, g.width) <= 1e-9 * (g.x_exit / g.width).max(1.0));
        }
    }

    #[test]
    fn width_exceeds_top_iff_below_four_fifths(s in system(), frac in 0.01f64..1.0) {
        prop_assume!((frac - 0.8).abs() > 1e-9);
        let g = s.barrier_geometry(frac * s.atomic_field()).unwrap();
        prop_assert_eq!(g.width_below_top(), frac > 0.8);
    }

    #[test]
    fn delays_decrease_with_field(s in system(), a in 1e-6f64..1.0, b in 1e-6f64..1.0) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let f_a = s.atomic_field();
        let (d1, d2) = (s.delay_set(lo * f_a).unwrap(), s.delay_set(hi * f_a).unwrap());
        prop_assert!(d2.tau_dion < d1.tau_dion);
        prop_assert!(d2.tau_db < d1.tau_db);
        let (g1, g2) = (s.barrier_geometry(lo * f_a).unwrap(), s.barrier_geometry(hi * f_a).unwrap());
        prop_assert!(g2.delta_z < g1.delta_z);
        prop_assert!(g2.width < g1.width);
    }

    #[test]
    fn thick_barrier_bound(s in system(), frac in 1e-8f64..0.01) {
        let d = s.delay_set(frac * s.atomic_field()).unwrap();
        let lhs = (d.tau_db - d.tau_dion).abs() / d.tau_dion;
        prop_assert!(lhs <= 1.0 - (1.0 - frac).sqrt() + 1e-12);
    }

    #[test]
    fn attosecond_mirror_uses_one_constant((s, f) in system_and_field()) {
        let d = s.delay_set(f).unwrap();
        let a = d.attoseconds();
        for (x, y) in [(d.tau_a, a.tau_a), (d.tau_ti, a.tau_ti), (d.tau_ad, a.tau_ad),
                       (d.tau_dion, a.tau_dion), (d.tau_db, a.tau_db), (d.tau_backr, a.tau_backr)] {
            prop_assert_eq!(y, x * AU_TIME_AS);
            prop_assert_eq!(y, au_to_as(x));
        }
    }

    #[test]
    fn boundary_collapse((s, f) in system_and_field()) {
        let qn = qs::q_nad(&s, f).unwrap();
        prop_assert!(rel_err(qs::q_imed_b(&s, f, 0.0, QsMode::Exact).unwrap(), qn) <= 1e-12);
        prop_assert!(rel_err(qs::q_imed_b(&s, f, 0.0, QsMode::Thick).unwrap(), qn) <= 1e-12);
        let d = s.delay_set(f).unwrap();
        let g = s.barrier_geometry(f).unwrap();
        let s0 = qs::intermediate(&s, f, 0.0).unwrap();
        prop_assert!(rel_err(s0.tau_imed, d.tau_dion) <= 1e-12);
        prop_assert!(rel_err(s0.d_imed, g.x_top) <= 1e-12);
        let s1 = qs::intermediate(&s, f, 1.0).unwrap();
        prop_assert!(rel_err(s1.tau_imed, d.tau_ad) <= 1e-12);
        prop_assert!((s1.d_imed - g.width).abs() <= 1e-12 * g.x_top);
        prop_assert_eq!(s1.x_exit_imed, s1.d_imed);
    }

    #[test]
    fn thick_zeta_one_is_constant((s, f) in system_and_field()) {
        let q = qs::q_imed_b(&s, f, 1.0, QsMode::Thick).unwrap();
        prop_assert!(rel_err(q, SPEED_OF_LIGHT / (4.0 * s.z_eff())) <= 1e-12);
    }

    #[test]
    fn intermediate_is_affine((s, f) in system_and_field(), zeta in 0.0f64..=1.0) {
        let st = qs::intermediate(&s, f, zeta).unwrap();
        let d = s.delay_set(f).unwrap();
        let g = s.barrier_geometry(f).unwrap();
        prop_assert!(rel_err(st.tau_imed, d.tau_dion + zeta * d.tau_db) <= 1e-12);
        let expect = (1.0 - zeta) * g.x_top + zeta * g.width;
        prop_assert!((st.d_imed - expect).abs() <= 1e-12 * g.x_top);
        prop_assert!(rel_err(st.light_time(), st.d_imed / SPEED_OF_LIGHT) <= 1e-12);
    }

    #[test]
    fn root_certificate((s, f) in system_and_field(), thick in any::<bool>()) {
        let (zm, qm) = if thick { (ZetaMode::Thick, QsMode::Thick) } else { (ZetaMode::Exact, QsMode::Exact) };
        if let Some(root) = qs::zeta_qs(&s, f, zm).unwrap() {
            prop_assert!((0.0..=1.0).contains(&root.zeta));
            let q = qs::q_imed_b(&s, f, root.zeta, qm).unwrap();
            prop_assert!((q - 1.0).abs() <= ROOT_CERTIFICATE_TOL, "q = {}", q);
        }
    }

    #[test]
    fn thick_root_decreases_with_z_at_fixed_relative_field(z1 in 18.0f64..120.0, dz in 0.5f64..15.0, frac in 1e-4f64..1.0) {
        let s1 = AtomicSystem::hydrogenic(z1, false).unwrap();
        let s2 = AtomicSystem::hydrogenic(z1 + dz, false).unwrap();
        let r1 = qs::zeta_qs(&s1, frac * s1.atomic_field(), ZetaMode::Thick).unwrap();
        let r2 = qs::zeta_qs(&s2, frac * s2.atomic_field(), ZetaMode::Thick).unwrap();
        if let (Some(r1), Some(r2)) = (r1, r2) {
            prop_assert!(r2.zeta < r1.zeta);
        }
    }

    #[test]
    fn thick_root_decreases_with_z_at_weak_shared_field(z1 in 18.0f64..120.0, dz in 0.5f64..15.0, frac in 1e-6f64..0.01) {
        let s1 = AtomicSystem::hydrogenic(z1, false).unwrap();
        let s2 = AtomicSystem::hydrogenic(z1 + dz, false).unwrap();
        let f = frac * s1.atomic_field();
        let r1 = qs::zeta_qs(&s1, f, ZetaMode::Thick).unwrap();
        let r2 = qs::zeta_qs(&s2, f, ZetaMode::Thick).unwrap();
        if let (Some(r1), Some(r2)) = (r1, r2) {
            prop_assert!(r2.zeta < r1.zeta);
        }
    }

    #[test]
    fn window_iff_z_above_quarter_c(z in 1.0f64..136.0) {
        prop_assume!((z - SPEED_OF_LIGHT / 4.0).abs() > 1e-6);
        let s = AtomicSystem::hydrogenic(z, false).unwrap();
        let cf = qs::critical_fields(&s).unwrap();
        prop_assert_eq!(cf.window_open(), z > SPEED_OF_LIGHT / 4.0);
        prop_assert!(rel_err(cf.f_c, (SPEED_OF_LIGHT / 16.0).powi(2) * z) <= 1e-14);
        if let Some(f1) = cf.f_zeta1 {
            prop_assert!(f1 > 0.0 && f1 <= cf.f_a);
            let q = qs::q_imed_b(&s, f1, 1.0, QsMode::Exact).unwrap();
            prop_assert!((q - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn light_times_positive((s, f) in system_and_field(), zeta in 0.0f64..=1.0) {
        prop_assume!(f < s.atomic_field());
        let r = qs::qs_report(&s, f, zeta, QsMode::Exact).unwrap();
        prop_assert!(r.tau_c_ad > 0.0 && r.tau_c_nad > 0.0 && r.tau_c_imed > 0.0);
        let g = s.barrier_geometry(f).unwrap();
        prop_assert!(rel_err(r.tau_c_ad, g.width / SPEED_OF_LIGHT) <= 1e-12);
        prop_assert!(rel_err(r.tau_c_nad, g.x_top / SPEED_OF_LIGHT) <= 1e-12);
    }
}

#[test]
fn light_time_vanishes_at_atomic_field() {
    let s = AtomicSystem::hydrogenic(40.0, false).unwrap();
    let r = qs::qs_report(&s, s.atomic_field(), 1.0, QsMode::Exact).unwrap();
    assert_eq!(r.tau_c_ad, 0.0);
    let d = s.delay_set(s.atomic_field()).unwrap();
    assert_eq!(d.tau_db, 0.0);
}

#[test]
fn delay_diverges_at_vanishing_field() {
    let s = AtomicSystem::hydrogenic(1.0, false).unwrap();
    let mut last = 0.0;
    for k in 2..12 {
        let t = s.delay_set(10f64.powi(-k)).unwrap().tau_ad;
        assert!(t > 9.0 * last);
        last = t;
    }
    assert!(last > 1e10);
}
