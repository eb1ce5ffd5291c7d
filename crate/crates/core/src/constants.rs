//! Physical constants in atomic units.

/// Speed of light in atomic units (CODATA 2018).
///
/// Every threshold of the model (`c/8 = 17.13`, `c/4 = 34.26`,
/// `(c/16)^2 = 73.36`) is expressed in terms of this value.
pub const SPEED_OF_LIGHT: f64 = 137.035_999_084;

/// Fine-structure constant, exactly `1 / SPEED_OF_LIGHT`.
pub const FINE_STRUCTURE: f64 = 1.0 / SPEED_OF_LIGHT;

/// One atomic unit of time expressed in attoseconds.
pub const AU_TIME_AS: f64 = 24.188_843_265_857;

/// Cycle-averaged intensity (W/cm^2) of a linearly polarized field whose
/// peak amplitude is one atomic unit of electric field.
pub const AU_INTENSITY_W_CM2: f64 = 3.509_447_58e16;

/// Converts a time in atomic units to attoseconds.
#[inline]
pub fn au_to_as(t: f64) -> f64 {
    t * AU_TIME_AS
}

/// Converts a time in attoseconds to atomic units.
#[inline]
pub fn as_to_au(t: f64) -> f64 {
    t / AU_TIME_AS
}

/// Informational laser intensity (W/cm^2) for a peak field `f` in a.u.
#[inline]
pub fn intensity_w_cm2(f: f64) -> f64 {
    AU_INTENSITY_W_CM2 * f * f
}
