use thiserror::Error;

/// Domain errors of the closed-form model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("nuclear charge must be positive, got Z = {0}")]
    NonPositiveCharge(f64),
    #[error("effective charge must be positive, got Z_eff = {0}")]
    NonPositiveEffectiveCharge(f64),
    #[error("ionization potential must be positive and finite, got I_p = {0}")]
    InvalidIonizationPotential(f64),
    #[error("Dirac 1s energy undefined for Z = {z} >= c = {c}")]
    ChargeExceedsLightSpeed { z: f64, c: f64 },
    #[error("field strength must be positive, got F = {0}")]
    NonPositiveField(f64),
    #[error("angular frequency must be positive, got omega = {0}")]
    NonPositiveFrequency(f64),
    #[error(
        "barrier-suppression regime: F = {field} exceeds the atomic field strength F_a = {f_a} \
         (tunneling requires 0 < F <= F_a)"
    )]
    BarrierSuppression { field: f64, f_a: f64 },
    #[error("switching parameter zeta = {0} outside [0, 1]")]
    ZetaOutOfRange(f64),
    #[error("root solver failed: {0}")]
    Root(#[from] crate::roots::RootError),
}
