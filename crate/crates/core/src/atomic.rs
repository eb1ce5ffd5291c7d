//! System parameters, barrier geometry and closed-form delays.
//!
//! The barrier is the tilted Coulomb potential `V(x) = -Z_eff/x - F x`.
//! With `delta_z = sqrt(I_p^2 - 4 Z_eff F)` the classical turning points
//! are `x_{e,±} = (I_p ± delta_z) / (2F)` and the barrier top sits at
//! `x_m = sqrt(Z_eff / F)`. The barrier vanishes at the atomic field
//! strength `F_a = I_p^2 / (4 Z_eff)`.

use crate::constants::{au_to_as, SPEED_OF_LIGHT};
use crate::error::ModelError;

/// A single-active-electron system: nuclear charge, effective charge and
/// ionization potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicSystem {
    z: f64,
    z_eff: f64,
    ip: f64,
    relativistic: bool,
}

/// Dirac point-nucleus 1s binding energy `c^2 (1 - sqrt(1 - (Z/c)^2))`.
///
/// Evaluated as `Z^2 / (1 + sqrt(1 - (Z/c)^2))`, which is the same
/// expression without the cancellation at small `Z`.
pub fn dirac_1s_binding(z: f64) -> Result<f64, ModelError> {
    if !(z > 0.0) {
        return Err(ModelError::NonPositiveCharge(z));
    }
    let x = z / SPEED_OF_LIGHT;
    if x >= 1.0 {
        return Err(ModelError::ChargeExceedsLightSpeed { z, c: SPEED_OF_LIGHT });
    }
    Ok(z * z / (1.0 + (1.0 - x * x).sqrt()))
}

impl AtomicSystem {
    /// Builds an H-like system. `I_p` is `Z^2/2`, or the Dirac 1s binding
    /// energy when `relativistic` is set.
    pub fn new(z: f64, z_eff: f64, relativistic: bool) -> Result<Self, ModelError> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(ModelError::NonPositiveCharge(z));
        }
        if !(z_eff > 0.0) || !z_eff.is_finite() {
            return Err(ModelError::NonPositiveEffectiveCharge(z_eff));
        }
        let ip = if relativistic { dirac_1s_binding(z)? } else { 0.5 * z * z };
        Ok(Self { z, z_eff, ip, relativistic })
    }

    /// Ground-state hydrogen-like ion with `Z_eff = Z`.
    pub fn hydrogenic(z: f64, relativistic: bool) -> Result<Self, ModelError> {
        Self::new(z, z, relativistic)
    }

    /// A system with an externally supplied ionization potential, e.g. an
    /// SAE model atom (`Z_eff = 1.6875`, `I_p = 0.9` for helium).
    pub fn with_ionization_potential(z_eff: f64, ip: f64) -> Result<Self, ModelError> {
        if !(z_eff > 0.0) || !z_eff.is_finite() {
            return Err(ModelError::NonPositiveEffectiveCharge(z_eff));
        }
        if !(ip > 0.0) || !ip.is_finite() {
            return Err(ModelError::InvalidIonizationPotential(ip));
        }
        Ok(Self { z: z_eff, z_eff, ip, relativistic: false })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn z_eff(&self) -> f64 {
        self.z_eff
    }

    /// Ionization potential in hartree.
    pub fn ip(&self) -> f64 {
        self.ip
    }

    pub fn is_relativistic(&self) -> bool {
        self.relativistic
    }

    /// Atomic field strength `F_a = I_p^2 / (4 Z_eff)`.
    pub fn atomic_field(&self) -> f64 {
        self.ip * self.ip / (4.0 * self.z_eff)
    }

    /// Lower quantum limit of the delay, `tau_a = 1 / (2 I_p)`.
    pub fn tau_a(&self) -> f64 {
        0.5 / self.ip
    }

    /// Barrier height `delta_z`; zero at `F = F_a`, error above it.
    pub fn barrier_height(&self, field: f64) -> Result<f64, ModelError> {
        if !(field > 0.0) || !field.is_finite() {
            return Err(ModelError::NonPositiveField(field));
        }
        let f_a = self.atomic_field();
        if field > f_a {
            return Err(ModelError::BarrierSuppression { field, f_a });
        }
        let disc = self.ip * self.ip - 4.0 * self.z_eff * field;
        // F <= F_a can still round to a tiny negative discriminant.
        Ok(if field == f_a || disc <= 0.0 { 0.0 } else { disc.sqrt() })
    }

    /// Nonadiabatic exit point at the barrier top, `sqrt(Z_eff / F)`.
    /// Defined for every positive field, including above `F_a`.
    pub fn barrier_top(&self, field: f64) -> Result<f64, ModelError> {
        if !(field > 0.0) || !field.is_finite() {
            return Err(ModelError::NonPositiveField(field));
        }
        Ok((self.z_eff / field).sqrt())
    }

    pub fn barrier_geometry(&self, field: f64) -> Result<BarrierGeometry, ModelError> {
        let delta_z = self.barrier_height(field)?;
        let ip = self.ip;
        let x_top = (self.z_eff / field).sqrt();
        // (I_p - delta)/(2F) rewritten through the root product Z_eff/F.
        let x_entry = 2.0 * self.z_eff / (ip + delta_z);
        let x_exit = (ip + delta_z) / (2.0 * field);
        Ok(BarrierGeometry {
            field,
            delta_z,
            x_entry,
            x_exit,
            x_top,
            width: delta_z / field,
            classical_width: ip / field,
        })
    }

    pub fn delay_set(&self, field: f64) -> Result<DelaySet, ModelError> {
        let delta_z = self.barrier_height(field)?;
        let scale = 8.0 * self.z_eff * field;
        let ip = self.ip;
        let tau_dion = ip / scale;
        let tau_db = delta_z / scale;
        // 1/(2(I_p + delta)) equals (I_p - delta)/(8 Z_eff F) identically.
        let tau_ti = 0.5 / (ip + delta_z);
        Ok(DelaySet {
            tau_a: self.tau_a(),
            tau_ti,
            tau_ad: (ip + delta_z) / scale,
            tau_dion,
            tau_db,
            tau_backr: tau_ti,
        })
    }

    /// Multiphoton reading of the ionization delay, with `n = I_p / omega`
    /// kept real-valued so that `tau_nph == tau_dion`.
    pub fn photon_absorption_delay(&self, field: f64, omega: f64) -> Result<PhotonAbsorption, ModelError> {
        if !(field > 0.0) || !field.is_finite() {
            return Err(ModelError::NonPositiveField(field));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(ModelError::NonPositiveFrequency(omega));
        }
        let n = self.ip / omega;
        let tau_1ph = omega / (8.0 * self.z_eff * field);
        Ok(PhotonAbsorption { n, tau_1ph, tau_nph: n * tau_1ph })
    }

    /// Keldysh parameter `omega sqrt(2 I_p) / F`.
    pub fn keldysh_gamma(&self, field: f64, omega: f64) -> Result<f64, ModelError> {
        if !(field > 0.0) || !field.is_finite() {
            return Err(ModelError::NonPositiveField(field));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(ModelError::NonPositiveFrequency(omega));
        }
        Ok(omega * (2.0 * self.ip).sqrt() / field)
    }
}

/// Barrier shape at one field strength. Lengths in bohr, height in hartree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierGeometry {
    pub field: f64,
    pub delta_z: f64,
    /// Entrance point `x_{e,-}`.
    pub x_entry: f64,
    /// Adiabatic exit point `x_{e,+}`.
    pub x_exit: f64,
    /// Barrier-top position `x_m`.
    pub x_top: f64,
    /// Barrier width `d_B = delta_z / F`.
    pub width: f64,
    /// Classical width `d_C = I_p / F`.
    pub classical_width: f64,
}

impl BarrierGeometry {
    /// `d_B >= x_m` holds only for `F <= 4/5 F_a`; the intermediate-regime
    /// width interpolation is flagged outside that band.
    pub fn width_below_top(&self) -> bool {
        self.width < self.x_top
    }
}

/// Model delays in atomic units of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySet {
    /// `1/(2 I_p)`.
    pub tau_a: f64,
    /// `tau_{T,i} = 1/(2(I_p + delta_z))`, time to reach the entrance.
    pub tau_ti: f64,
    /// Adiabatic delay `tau_{T,d} = 1/(2(I_p - delta_z))`.
    pub tau_ad: f64,
    /// Nonadiabatic ionization delay `I_p / (8 Z_eff F)`.
    pub tau_dion: f64,
    /// Barrier delay `delta_z / (8 Z_eff F)`.
    pub tau_db: f64,
    /// Back-reaction time `(I_p - delta_z) / (8 Z_eff F)`.
    pub tau_backr: f64,
}

impl DelaySet {
    /// The same delays expressed in attoseconds.
    pub fn attoseconds(&self) -> DelaySet {
        DelaySet {
            tau_a: au_to_as(self.tau_a),
            tau_ti: au_to_as(self.tau_ti),
            tau_ad: au_to_as(self.tau_ad),
            tau_dion: au_to_as(self.tau_dion),
            tau_db: au_to_as(self.tau_db),
            tau_backr: au_to_as(self.tau_backr),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonAbsorption {
    /// Photon count `I_p / omega` (not rounded).
    pub n: f64,
    pub tau_1ph: f64,
    pub tau_nph: f64,
}
