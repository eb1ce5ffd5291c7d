//! One desk-scale pulse, shared by every check in this file.

use std::f64::consts::PI;
use std::sync::OnceLock;

use attoqs_core::AtomicSystem;
use attoqs_tdse::grid::RadialGrid;
use attoqs_tdse::propagate::{run_pulse, RunOptions, RunReport};
use attoqs_tdse::pulse::Pulse;
use attoqs_tdse::spectra::*;

struct Smoke {
    pulse: Pulse,
    report: RunReport,
    table: AmplitudeTable,
    angular: AngularDistribution,
}

fn smoke() -> &'static Smoke {
    static CELL: OnceLock<Smoke> = OnceLock::new();
    CELL.get_or_init(|| {
        let system = AtomicSystem::new(1.0, 1.0, false).unwrap();
        let grid = RadialGrid::new(0.1, 60.0).unwrap();
        let pulse = Pulse::new(0.5, 0.8, 1.0).unwrap();
        let report = run_pulse(&system, grid, &pulse, 8, RunOptions { dt: Some(0.04), ..Default::default() }).unwrap();
        let table = project_scattering_states(&report.state, 1.0, &momentum_grid(4.0, 200).unwrap()).unwrap();
        let angular = radial_integrate(&momentum_distribution(&table, &angle_grid(720)).unwrap());
        Smoke { pulse, report, table, angular }
    })
}

#[test]
fn run_is_converged_and_unitary() {
    let s = smoke();
    assert!(s.report.max_norm_drift <= 1e-6, "{}", s.report.max_norm_drift);
    assert!(s.report.desk_scale);
    assert!(s.report.warnings.is_empty(), "{:?}", s.report.warnings);
    let bound = s.table.bound_population();
    assert!(bound > 0.0 && bound < 1.0);
}

#[test]
fn continuum_and_bound_populations_are_complete() {
    let s = smoke();
    let ionized = s.table.ionized_probability();
    let expected = s.report.state.norm_sqr() - s.table.bound_population();
    assert!(ionized > 0.0 && ionized < 1.0);
    assert!((ionized - expected).abs() <= 0.02 * expected, "{ionized} vs {expected}");
}

#[test]
fn three_dimensional_density_integrates_to_ionized_probability() {
    let s = smoke();
    let table = &s.table;
    let momenta = table.momenta();
    let (nt, np) = (24, 24);
    let mut shells = Vec::with_capacity(momenta.len());
    for k in (0..momenta.len()).step_by(2) {
        let mut shell = 0.0;
        for i in 0..nt {
            let x = -1.0 + (i as f64 + 0.5) * 2.0 / nt as f64;
            for j in 0..np {
                let phi = 2.0 * PI * j as f64 / np as f64;
                shell += table.density_at(k, x.acos(), phi) * (2.0 / nt as f64) * (2.0 * PI / np as f64);
            }
        }
        shells.push((momenta[k], momenta[k] * momenta[k] * shell));
    }
    let mut total = 0.5 * shells[0].0 * shells[0].1;
    for w in shells.windows(2) {
        total += 0.5 * (w[1].0 - w[0].0) * (w[1].1 + w[0].1);
    }
    let expect = table.ionized_probability();
    assert!((total - expect).abs() <= 0.01 * expect, "{total} vs {expect}");
}

#[test]
fn angular_distribution_has_one_dominant_lobe() {
    let s = smoke();
    assert!(s.angular.values.iter().all(|&v| v >= 0.0));
    let off = offset_angle_and_delay(&s.angular, &s.pulse).unwrap();
    assert!(!off.multimodal);
    let floor = s.angular.values.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(off.peak_value > 2.0 * floor, "peak {} floor {floor}", off.peak_value);
    assert!(off.theta > -PI && off.theta <= PI);
    assert!((off.tau_au - off.theta / s.pulse.omega()).abs() < 1e-15);
}
