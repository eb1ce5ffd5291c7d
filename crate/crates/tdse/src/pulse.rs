//! Two-cycle elliptically polarized pulse with a `sin^16` envelope.
//!
//! ```text
//! A_x(t) = -f(t) F0 / (w sqrt(1+e^2)) cos(w t + cep)
//! A_y(t) =  e f(t) F0 / (w sqrt(1+e^2)) sin(w t + cep)
//! f(t)   = sin^16(pi t / T1),  T1 = 2 (2 pi / w)
//! ```

use std::f64::consts::PI;

use crate::error::TdseError;

pub const ENVELOPE_EXPONENT: i32 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    f0: f64,
    omega: f64,
    epsilon: f64,
    cep: f64,
}

impl Pulse {
    pub fn new(f0: f64, omega: f64, epsilon: f64) -> Result<Self, TdseError> {
        if !(f0.is_finite() && f0 >= 0.0) {
            return Err(TdseError::InvalidPulse(format!("F0 must be finite and >= 0, got {f0}")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(TdseError::InvalidPulse(format!("omega must be positive, got {omega}")));
        }
        if !epsilon.is_finite() {
            return Err(TdseError::InvalidPulse(format!("ellipticity must be finite, got {epsilon}")));
        }
        Ok(Self { f0, omega, epsilon, cep: 0.0 })
    }

    /// Carrier phase offset added to `w t`.
    pub fn with_cep(mut self, cep: f64) -> Self {
        self.cep = cep;
        self
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn cep(&self) -> f64 {
        self.cep
    }

    /// `T1`, two optical cycles.
    pub fn duration(&self) -> f64 {
        4.0 * PI / self.omega
    }

    /// Peak field magnitude `F0 / sqrt(1 + e^2)`.
    pub fn peak_field(&self) -> f64 {
        self.f0 / (1.0 + self.epsilon * self.epsilon).sqrt()
    }

    fn a0(&self) -> f64 {
        self.f0 / (self.omega * (1.0 + self.epsilon * self.epsilon).sqrt())
    }

    pub fn envelope(&self, t: f64) -> f64 {
        if !(0.0..=self.duration()).contains(&t) {
            return 0.0;
        }
        (PI * t / self.duration()).sin().powi(ENVELOPE_EXPONENT)
    }

    /// `(A_x, A_y)`; zero outside `[0, T1]`.
    pub fn vector_potential(&self, t: f64) -> (f64, f64) {
        if !(0.0..=self.duration()).contains(&t) {
            return (0.0, 0.0);
        }
        let amp = self.a0() * self.envelope(t);
        let phase = self.omega * t + self.cep;
        (-amp * phase.cos(), self.epsilon * amp * phase.sin())
    }

    /// `E = -dA/dt`.
    pub fn electric_field(&self, t: f64) -> (f64, f64) {
        let t1 = self.duration();
        if !(0.0..=t1).contains(&t) {
            return (0.0, 0.0);
        }
        let x = PI * t / t1;
        let f = x.sin().powi(ENVELOPE_EXPONENT);
        let df = ENVELOPE_EXPONENT as f64 * x.sin().powi(ENVELOPE_EXPONENT - 1) * x.cos() * PI / t1;
        let phase = self.omega * t + self.cep;
        let (s, c) = phase.sin_cos();
        let a0 = self.a0();
        let dax = -a0 * (df * c - f * self.omega * s);
        let day = self.epsilon * a0 * (df * s + f * self.omega * c);
        (-dax, -day)
    }

    /// Polar angle of `-A` at the envelope maximum: the drift direction of
    /// an electron released there with zero velocity and no Coulomb pull.
    pub fn zero_delay_direction(&self) -> f64 {
        let (ax, ay) = self.vector_potential(0.5 * self.duration());
        (-ay).atan2(-ax)
    }
}
