//! Photoelectron spectra from a final wavefunction: projection onto
//! ingoing Coulomb waves, the polarization-plane momentum density, its
//! radial integral `P(phi)`, and the attoclock offset angle.
//!
//! Conventions:
//! - Partial-wave amplitudes `a_lm(p) = <u_{E,l}|u_lm>` use energy-normalized
//!   continuum waves, so `int dE sum |a|^2` is the ionized probability. The
//!   momentum-normalized amplitude is `sqrt(p) a`.
//! - The momentum-space density is
//!   `|psi(p)|^2 = (1/p) |sum (-i)^l e^{i sigma_l} a_lm(p) Y_lm(p_hat)|^2`,
//!   normalized so that `int |psi|^2 d^3p` is the ionized probability.
//! - `phi` is the polar angle in the polarization plane, from `+x`.
//! - The offset angle `theta` is measured from `-y`, positive toward `+x`,
//!   and the delay is `theta / omega`.

pub mod coulomb;
pub mod harmonics;

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use attoqs_core::constants::au_to_as;

use crate::bound::bound_states;
use crate::channels::Channels;
use crate::error::TdseError;
use crate::pulse::Pulse;
use crate::radial::RadialOperators;
use crate::state::WavefunctionState;

pub use coulomb::{continuum_wave, coulomb_phases};
pub use harmonics::{normalized_legendre, spherical_harmonic};

/// Ionized probability below which no offset angle is reported.
pub const NO_IONIZATION_THRESHOLD: f64 = 1e-8;
/// A secondary maximum at or above this fraction of the global one marks
/// the angular distribution as multimodal.
pub const MULTIMODAL_FRACTION: f64 = 0.95;

/// Uniform momentum grid `p_k = p_max (k + 1) / n`, excluding `p = 0`.
pub fn momentum_grid(p_max: f64, n: usize) -> Result<Vec<f64>, TdseError> {
    if !(p_max.is_finite() && p_max > 0.0) || n == 0 {
        return Err(TdseError::InvalidParameter(format!("momentum grid needs p_max > 0 and n > 0, got {p_max}, {n}")));
    }
    Ok((1..=n).map(|k| p_max * k as f64 / n as f64).collect())
}

/// Uniform angle grid `phi_k = 2 pi k / n` on `[0, 2 pi)`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Default momentum cutoff: well past the classical drift `F0 / omega`
/// and past the four-photon line `sqrt(8 omega)`.
pub fn default_p_max(pulse: &Pulse) -> f64 {
    (2.5 * pulse.f0() / pulse.omega()).max((8.0 * pulse.omega()).sqrt()).max(1.5)
}

/// Partial-wave ionization amplitudes `a_lm(p)` (energy normalization).
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTable {
    momenta: Vec<f64>,
    channels: Channels,
    z_eff: f64,
    /// `amplitudes[k][c]`: momentum `k`, channel index `c`.
    amplitudes: Vec<Vec<Complex64>>,
    /// Population of the removed bound states.
    bound_population: f64,
}

impl AmplitudeTable {
    pub fn new(
        momenta: Vec<f64>,
        channels: Channels,
        z_eff: f64,
        amplitudes: Vec<Vec<Complex64>>,
        bound_population: f64,
    ) -> Result<Self, TdseError> {
        check_momenta(&momenta)?;
        if amplitudes.len() != momenta.len() {
            return Err(TdseError::Mismatch(format!(
                "{} amplitude rows for {} momenta",
                amplitudes.len(),
                momenta.len()
            )));
        }
        if let Some(row) = amplitudes.iter().find(|r| r.len() != channels.len()) {
            return Err(TdseError::Mismatch(format!(
                "amplitude row of length {} for {} channels",
                row.len(),
                channels.len()
            )));
        }
        Ok(Self { momenta, channels, z_eff, amplitudes, bound_population })
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn channels(&self) -> &Channels {
        &self.channels
    }

    pub fn z_eff(&self) -> f64 {
        self.z_eff
    }

    pub fn amplitudes(&self) -> &[Vec<Complex64>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize, l: usize, m: i64) -> Option<Complex64> {
        self.channels.index(l, m).and_then(|c| self.amplitudes.get(k).map(|row| row[c]))
    }

    pub fn bound_population(&self) -> f64 {
        self.bound_population
    }

    /// `dP/dE = sum_lm |a_lm|^2` on the momentum grid.
    pub fn energy_spectrum(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|row| row.iter().map(|a| a.norm_sqr()).sum()).collect()
    }

    /// `int dE sum |a|^2 = int p dp sum |a|^2`, trapezoidal on the grid
    /// and linear to zero below the first momentum.
    pub fn ionized_probability(&self) -> f64 {
        let f: Vec<f64> = self.energy_spectrum().iter().zip(&self.momenta).map(|(s, p)| s * p).collect();
        let mut total = 0.5 * self.momenta[0] * f[0];
        for k in 1..f.len() {
            total += 0.5 * (self.momenta[k] - self.momenta[k - 1]) * (f[k] + f[k - 1]);
        }
        total
    }

    /// `(-i)^l e^{i sigma_l} a_lm(p_k)` for every channel at momentum `k`.
    fn coherent_coefficients(&self, k: usize) -> Vec<Complex64> {
        let p = self.momenta[k];
        let l_max = self.channels.l_max();
        let sigma = if self.z_eff == 0.0 { vec![0.0; l_max + 1] } else { coulomb_phases(l_max, -self.z_eff / p) };
        let phase: Vec<Complex64> = (0..=l_max)
            .map(|l| {
                let il = [
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, -1.0),
                    Complex64::new(-1.0, 0.0),
                    Complex64::new(0.0, 1.0),
                ][l % 4];
                il * Complex64::from_polar(1.0, sigma[l])
            })
            .collect();
        self.amplitudes[k].iter().enumerate().map(|(c, a)| phase[self.channels.lm(c).0] * a).collect()
    }

    /// `|psi(p)|^2` at momentum index `k` and direction `(theta, phi)`.
    pub fn density_at(&self, k: usize, theta: f64, phi: f64) -> f64 {
        let coeff = self.coherent_coefficients(k);
        let mut sum = Complex64::new(0.0, 0.0);
        for (c, (l, m)) in self.channels.iter().enumerate() {
            sum += coeff[c] * spherical_harmonic(l, m, theta, phi);
        }
        sum.norm_sqr() / self.momenta[k]
    }
}

fn check_momenta(momenta: &[f64]) -> Result<(), TdseError> {
    if momenta.is_empty() {
        return Err(TdseError::InvalidParameter("empty momentum grid".into()));
    }
    if momenta.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
        return Err(TdseError::InvalidParameter("momenta must be finite and > 0 (p = 0 is excluded)".into()));
    }
    if momenta.windows(2).any(|w| w[1] <= w[0]) {
        return Err(TdseError::InvalidParameter("momenta must be strictly increasing".into()));
    }
    Ok(())
}

/// Projects `state` onto ingoing Coulomb waves of charge `z_eff` after
/// removing every negative-energy eigenstate of the grid.
pub fn project_scattering_states(
    state: &WavefunctionState,
    z_eff: f64,
    momenta: &[f64],
) -> Result<AmplitudeTable, TdseError> {
    check_momenta(momenta)?;
    let grid = *state.grid();
    let channels = *state.channels();
    let ops = RadialOperators::new(grid, z_eff);
    let h = grid.dr();

    let mut radial: Vec<Vec<Complex64>> = state.data().to_vec();
    let mut bound_population = 0.0;
    if z_eff > 0.0 {
        let bound = bound_states(&ops, usize::MAX, channels.l_max())?;
        for (c, (l, _)) in channels.iter().enumerate() {
            for b in bound.iter().filter(|b| b.l == l) {
                let proj: Complex64 = h * b.u.iter().zip(&radial[c]).map(|(x, z)| x * z).sum::<Complex64>();
                bound_population += proj.norm_sqr();
                radial[c].iter_mut().zip(&b.u).for_each(|(z, x)| *z -= proj * x);
            }
        }
    }

    let l_max = channels.l_max();
    let rows: Result<Vec<Vec<Complex64>>, TdseError> = momenta
        .par_iter()
        .map(|&p| {
            let mut row = vec![Complex64::new(0.0, 0.0); channels.len()];
            for l in 0..=l_max {
                let u = continuum_wave(&ops, l, p)?;
                for m in -(l as i64)..=l as i64 {
                    let c = channels.index(l, m).expect("channel in range");
                    row[c] = h * u.iter().zip(&radial[c]).map(|(x, z)| x * z).sum::<Complex64>();
                }
            }
            Ok(row)
        })
        .collect();
    AmplitudeTable::new(momenta.to_vec(), channels, z_eff, rows?, bound_population)
}

/// `P(p_x, p_y, 0)` on a polar grid; `density[k][j]` at `(p_k, phi_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumDistribution {
    pub momenta: Vec<f64>,
    pub angles: Vec<f64>,
    pub density: Vec<Vec<f64>>,
}

/// Coherent partial-wave sum in the plane `theta = pi/2`. Channels are
/// summed in index order, so the result is reproducible bit for bit.
pub fn momentum_distribution(table: &AmplitudeTable, angles: &[f64]) -> Result<MomentumDistribution, TdseError> {
    if angles.is_empty() || angles.iter().any(|a| !a.is_finite()) {
        return Err(TdseError::InvalidParameter("angle grid must be non-empty and finite".into()));
    }
    let channels = table.channels();
    let plm0 = normalized_legendre(channels.l_max(), 0.0);
    let lm: Vec<(usize, i64)> = channels.iter().collect();
    let density = (0..table.momenta().len())
        .into_par_iter()
        .map(|k| {
            let coeff: Vec<Complex64> = table
                .coherent_coefficients(k)
                .iter()
                .zip(&lm)
                .map(|(c, &(l, m))| {
                    let n = plm0[l][m.unsigned_abs() as usize];
                    let n = if m < 0 && m % 2 != 0 { -n } else { n };
                    c * n
                })
                .collect();
            let p = table.momenta()[k];
            angles
                .iter()
                .map(|&phi| {
                    let mut sum = Complex64::new(0.0, 0.0);
                    for (c, &(_, m)) in coeff.iter().zip(&lm) {
                        sum += c * Complex64::from_polar(1.0, m as f64 * phi);
                    }
                    sum.norm_sqr() / p
                })
                .collect()
        })
        .collect();
    Ok(MomentumDistribution { momenta: table.momenta().to_vec(), angles: angles.to_vec(), density })
}

/// `P(phi)` on its angle grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularDistribution {
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
}

/// `P(phi) = int P(p, phi) p dp`, trapezoidal over the momentum grid.
pub fn radial_integrate(dist: &MomentumDistribution) -> AngularDistribution {
    let p = &dist.momenta;
    let mut values = vec![0.0; dist.angles.len()];
    for k in 1..p.len() {
        let w = 0.5 * (p[k] - p[k - 1]);
        for (j, v) in values.iter_mut().enumerate() {
            *v += w * (dist.density[k][j] * p[k] + dist.density[k - 1][j] * p[k - 1]);
        }
    }
    AngularDistribution { angles: dist.angles.clone(), values }
}

/// Location of the angular maximum and the derived delays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetAngle {
    /// Interpolated direction of the maximum, polar angle from `+x`, in
    /// `(-pi, pi]`.
    pub phi_max: f64,
    /// Largest grid value of `P(phi)`.
    pub peak_value: f64,
    /// Offset from `-y`, positive toward `+x`, in `(-pi, pi]`.
    pub theta: f64,
    /// `theta / omega`.
    pub tau_au: f64,
    pub tau_as: f64,
    /// Angle of the maximum beyond the zero-delay drift direction, counted
    /// along the sense of rotation of the field, over `omega`.
    pub streaking_delay_au: f64,
    /// A second local maximum reaches at least 95% of the global one.
    pub multimodal: bool,
}

fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// Offset angle by parabolic interpolation through the discrete maximum
/// and its two neighbours on a uniform periodic angle grid.
pub fn offset_angle_and_delay(ang: &AngularDistribution, pulse: &Pulse) -> Result<OffsetAngle, TdseError> {
    offset_angle_with_omega(ang, pulse.omega(), pulse.epsilon().signum(), pulse.zero_delay_direction())
}

/// As [`offset_angle_and_delay`] with explicit carrier frequency, sense of
/// rotation (`+1` or `-1`) and zero-delay direction.
pub fn offset_angle_with_omega(
    ang: &AngularDistribution,
    omega: f64,
    rotation: f64,
    zero_delay_direction: f64,
) -> Result<OffsetAngle, TdseError> {
    let n = ang.values.len();
    if n < 3 || ang.angles.len() != n {
        return Err(TdseError::Mismatch(format!("{} angles for {} values; need at least 3", ang.angles.len(), n)));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(TdseError::InvalidParameter(format!("omega must be positive, got {omega}")));
    }
    let step = 2.0 * PI / n as f64;
    for (j, a) in ang.angles.iter().enumerate() {
        if (wrap_angle(a - ang.angles[0] - j as f64 * step)).abs() > 1e-9 {
            return Err(TdseError::InvalidParameter("angle grid must be uniform and cover the full circle".into()));
        }
    }
    let v = &ang.values;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(TdseError::NoSignal("angular distribution has non-finite values".into()));
    }
    let mut imax = 0;
    for (j, &x) in v.iter().enumerate() {
        if x > v[imax] {
            imax = j;
        }
    }
    let peak = v[imax];
    if !(peak > 0.0) {
        return Err(TdseError::NoSignal("angular distribution is zero everywhere".into()));
    }
    let (ym, y0, yp) = (v[(imax + n - 1) % n], peak, v[(imax + 1) % n]);
    let curvature = ym - 2.0 * y0 + yp;
    let shift = if curvature < 0.0 { (0.5 * (ym - yp) / curvature).clamp(-0.5, 0.5) } else { 0.0 };
    let phi_max = wrap_angle(ang.angles[imax] + shift * step);
    let multimodal = (0..n).any(|j| {
        j != imax && v[j] > v[(j + n - 1) % n] && v[j] >= v[(j + 1) % n] && v[j] >= MULTIMODAL_FRACTION * peak
    });
    let theta = wrap_angle(phi_max + 0.5 * PI);
    let tau_au = theta / omega;
    let streaking_delay_au = rotation * wrap_angle(zero_delay_direction - phi_max) / omega;
    Ok(OffsetAngle {
        phi_max,
        peak_value: peak,
        theta,
        tau_au,
        tau_as: au_to_as(tau_au),
        streaking_delay_au,
        multimodal,
    })
}

/// Writes `# key = value` lines.
fn write_metadata(out: &mut dyn Write, metadata: &[(String, String)]) -> std::io::Result<()> {
    for (k, v) in metadata {
        writeln!(out, "# {k} = {v}")?;
    }
    Ok(())
}

/// Convention lines shared by every spectrum dump.
pub fn convention_metadata() -> Vec<(String, String)> {
    [
        (
            "normalization",
            "energy-normalized continuum; density = (1/p)|sum (-i)^l e^{i sigma_l} a_lm Y_lm|^2 per d^3p",
        ),
        ("angle_origin", "phi from +x in the polarization plane; theta from -y, positive toward +x"),
        ("delay", "tau = theta / omega"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

/// CSV with columns `p,phi,density`.
pub fn write_momentum_csv(
    dist: &MomentumDistribution,
    metadata: &[(String, String)],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    write_metadata(out, metadata)?;
    writeln!(out, "p,phi,density")?;
    for (k, p) in dist.momenta.iter().enumerate() {
        for (j, phi) in dist.angles.iter().enumerate() {
            writeln!(out, "{p:e},{phi:e},{:e}", dist.density[k][j])?;
        }
    }
    Ok(())
}

/// CSV with columns `phi,P`.
pub fn write_angular_csv(
    ang: &AngularDistribution,
    metadata: &[(String, String)],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    write_metadata(out, metadata)?;
    writeln!(out, "phi,P")?;
    for (phi, v) in ang.angles.iter().zip(&ang.values) {
        writeln!(out, "{phi:e},{v:e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;

    fn planted(n: usize, phi0: f64, kappa: f64) -> AngularDistribution {
        let angles = angle_grid(n);
        let values = angles.iter().map(|a| (kappa * (a - phi0).cos()).exp()).collect();
        AngularDistribution { angles, values }
    }

    fn omega_only(ang: &AngularDistribution, omega: f64) -> OffsetAngle {
        offset_angle_with_omega(ang, omega, 1.0, 0.0).unwrap()
    }

    #[test]
    fn gaussian_fourier_bessel_oracle() {
        // u = r exp(-r^2/2) in s-wave with Z = 0 has a(p) = sqrt(p) exp(-p^2/2).
        let grid = RadialGrid::new(0.02, 30.0).unwrap();
        let u: Vec<f64> = grid.radii().iter().map(|r| r * (-0.5 * r * r).exp()).collect();
        let state = WavefunctionState::from_channel(grid, Channels::new(1), 0, 0, &u).unwrap();
        let momenta = momentum_grid(3.0, 30).unwrap();
        let table = project_scattering_states(&state, 0.0, &momenta).unwrap();
        for (k, &p) in momenta.iter().enumerate() {
            let a = table.amplitude(k, 0, 0).unwrap();
            let expect = p.sqrt() * (-0.5 * p * p).exp();
            assert!((a.re - expect).abs() < 2e-4 && a.im == 0.0, "p={p}: {a} vs {expect}");
            assert_eq!(table.amplitude(k, 1, 1).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn bound_state_projects_to_nothing() {
        let grid = RadialGrid::new(0.1, 60.0).unwrap();
        let ops = RadialOperators::new(grid, 1.0);
        let gs = crate::bound::bound_state(&ops, 1, 0).unwrap();
        let state = WavefunctionState::from_channel(grid, Channels::new(2), 0, 0, &gs.u).unwrap();
        let table = project_scattering_states(&state, 1.0, &momentum_grid(2.0, 20).unwrap()).unwrap();
        assert!((table.bound_population() - 1.0).abs() < 1e-10);
        for row in table.amplitudes() {
            assert!(row.iter().all(|a| a.norm() < 1e-8));
        }
    }

    #[test]
    fn zero_amplitudes_give_zero_density() {
        let momenta = momentum_grid(1.0, 5).unwrap();
        let table =
            AmplitudeTable::new(momenta, Channels::new(3), 1.0, vec![vec![Complex64::new(0.0, 0.0); 16]; 5], 0.0)
                .unwrap();
        let dist = momentum_distribution(&table, &angle_grid(36)).unwrap();
        assert!(dist.density.iter().flatten().all(|&x| x == 0.0));
        let ang = radial_integrate(&dist);
        assert!(matches!(offset_angle_with_omega(&ang, 1.0, 1.0, 0.0), Err(TdseError::NoSignal(_))));
    }

    #[test]
    fn table_shape_is_checked() {
        let ch = Channels::new(1);
        assert!(AmplitudeTable::new(vec![0.5, 1.0], ch, 1.0, vec![vec![Complex64::new(0.0, 0.0); 4]], 0.0).is_err());
        assert!(AmplitudeTable::new(vec![0.5], ch, 1.0, vec![vec![Complex64::new(0.0, 0.0); 3]], 0.0).is_err());
        assert!(AmplitudeTable::new(vec![0.0], ch, 1.0, vec![vec![Complex64::new(0.0, 0.0); 4]], 0.0).is_err());
    }

    #[test]
    fn single_channel_is_isotropic_and_two_channels_interfere() {
        let ch = Channels::new(2);
        let mut row = vec![Complex64::new(0.0, 0.0); ch.len()];
        row[ch.index(1, 1).unwrap()] = Complex64::new(0.7, 0.0);
        let table = AmplitudeTable::new(vec![1.0], ch, 0.0, vec![row.clone()], 0.0).unwrap();
        let angles = angle_grid(64);
        let d = momentum_distribution(&table, &angles).unwrap().density.remove(0);
        let expect = 0.49 * 3.0 / (8.0 * PI);
        assert!(d.iter().all(|x| (x - expect).abs() < 1e-14));

        row[ch.index(2, 2).unwrap()] = Complex64::new(0.0, 0.4);
        let table = AmplitudeTable::new(vec![1.0], ch, 0.0, vec![row], 0.0).unwrap();
        let d = momentum_distribution(&table, &angles).unwrap().density.remove(0);
        // (-i)^1 0.7 Y11 + (-i)^2 0.4i Y22 at theta = pi/2.
        let c1 = 0.7 * (3.0 / (8.0 * PI)).sqrt();
        let c2 = 0.4 * 0.25 * (15.0 / (2.0 * PI)).sqrt();
        for (phi, x) in angles.iter().zip(&d) {
            let expect = c1 * c1 + c2 * c2 - 2.0 * c1 * c2 * phi.cos();
            assert!((x - expect).abs() < 1e-13, "{phi}: {x} vs {expect}");
        }
    }

    #[test]
    fn plane_density_matches_general_evaluation() {
        let ch = Channels::new(3);
        let momenta = vec![0.4, 0.9];
        let amps: Vec<Vec<Complex64>> = (0..2)
            .map(|k| {
                (0..ch.len())
                    .map(|c| Complex64::new((c as f64 * 0.37 + k as f64).sin(), (c as f64 * 0.11).cos()))
                    .collect()
            })
            .collect();
        let table = AmplitudeTable::new(momenta, ch, 1.0, amps, 0.0).unwrap();
        let angles = angle_grid(17);
        let dist = momentum_distribution(&table, &angles).unwrap();
        for k in 0..2 {
            for (j, &phi) in angles.iter().enumerate() {
                let direct = table.density_at(k, 0.5 * PI, phi);
                assert!((dist.density[k][j] - direct).abs() < 1e-12 * direct.max(1.0));
            }
        }
    }

    #[test]
    fn density_integrates_to_ionized_probability() {
        // Full-sphere quadrature of |psi(p)|^2 reproduces int p sum|a|^2 dp.
        let ch = Channels::new(2);
        let momenta = momentum_grid(2.0, 40).unwrap();
        let amps: Vec<Vec<Complex64>> = momenta
            .iter()
            .map(|p| {
                (0..ch.len())
                    .map(|c| Complex64::new((-(p - 1.0) * (p - 1.0)).exp() / (1.0 + c as f64), 0.3 * c as f64 * p))
                    .collect()
            })
            .collect();
        let table = AmplitudeTable::new(momenta.clone(), ch, 1.0, amps, 0.0).unwrap();
        let (nt, np) = (40, 48);
        let mut shells = vec![0.0; momenta.len()];
        for (k, shell) in shells.iter_mut().enumerate() {
            for i in 0..nt {
                let x = -1.0 + (i as f64 + 0.5) * 2.0 / nt as f64;
                for j in 0..np {
                    let phi = 2.0 * PI * j as f64 / np as f64;
                    *shell += table.density_at(k, x.acos(), phi) * (2.0 / nt as f64) * (2.0 * PI / np as f64);
                }
            }
        }
        let mut total = 0.5 * momenta[0] * momenta[0] * shells[0];
        for k in 1..momenta.len() {
            let f = |k: usize| momenta[k] * momenta[k] * shells[k];
            total += 0.5 * (momenta[k] - momenta[k - 1]) * (f(k) + f(k - 1));
        }
        let expect = table.ionized_probability();
        assert!((total - expect).abs() < 0.01 * expect, "{total} vs {expect}");
    }

    #[test]
    fn separable_density_integrates_to_its_angular_factor() {
        let momenta = momentum_grid(3.0, 60).unwrap();
        let angles = angle_grid(90);
        let g: Vec<f64> = angles.iter().map(|a| 2.0 + a.sin()).collect();
        let density = momenta.iter().map(|p| g.iter().map(|x| x * (-p * p).exp()).collect()).collect();
        let ang = radial_integrate(&MomentumDistribution { momenta, angles, density });
        let ratio = ang.values[0] / g[0];
        for (v, x) in ang.values.iter().zip(&g) {
            assert!((v / x - ratio).abs() < 1e-12);
        }
    }

    #[test]
    fn planted_peaks_are_recovered() {
        for &phi0 in &[0.0, 1.0, -PI / 2.0 + 0.1, 3.0, -2.2, PI] {
            let off = omega_only(&planted(720, phi0, 8.0), 3.0);
            assert!(wrap_angle(off.phi_max - phi0).abs() < 1e-3, "{phi0}: {}", off.phi_max);
            assert!(!off.multimodal);
        }
    }

    #[test]
    fn offset_from_minus_y() {
        let off = omega_only(&planted(720, -PI / 2.0, 5.0), 3.0);
        assert!(off.theta.abs() < 1e-12 && off.tau_as.abs() < 1e-10);
        let off = omega_only(&planted(720, -PI / 2.0 + 0.1, 5.0), 3.0);
        assert!((off.theta - 0.1).abs() < 1e-4);
        assert!((off.tau_as - 0.806).abs() < 1e-3, "{}", off.tau_as);
    }

    #[test]
    fn bimodal_is_flagged() {
        let angles = angle_grid(360);
        let values =
            angles.iter().map(|a| (6.0 * (a - 1.0).cos()).exp() + 0.97 * (6.0 * (a - 4.0).cos()).exp()).collect();
        let off = omega_only(&AngularDistribution { angles, values }, 1.0);
        assert!(off.multimodal);
        assert!((off.phi_max - 1.0).abs() < 0.05);
    }

    #[test]
    fn rejects_irregular_grids() {
        let mut ang = planted(100, 0.3, 2.0);
        ang.angles[5] += 0.01;
        assert!(offset_angle_with_omega(&ang, 1.0, 1.0, 0.0).is_err());
        let short = AngularDistribution { angles: vec![0.0, 1.0], values: vec![1.0, 2.0] };
        assert!(offset_angle_with_omega(&short, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn streaking_delay_counts_along_rotation() {
        // Field rotating clockwise (rotation = +1 means phi decreasing).
        let ang = planted(720, -0.2, 6.0);
        let off = offset_angle_with_omega(&ang, 2.0, 1.0, 0.0).unwrap();
        assert!((off.streaking_delay_au - 0.1).abs() < 1e-3);
        let off = offset_angle_with_omega(&ang, 2.0, -1.0, 0.0).unwrap();
        assert!((off.streaking_delay_au + 0.1).abs() < 1e-3);
    }

    #[test]
    fn csv_has_metadata_block() {
        let ang = planted(4, 0.0, 1.0);
        let mut buf = Vec::new();
        write_angular_csv(&ang, &convention_metadata(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[..3].iter().all(|l| l.starts_with("# ")));
        assert_eq!(lines[3], "phi,P");
        assert_eq!(lines.len(), 8);
    }
}
