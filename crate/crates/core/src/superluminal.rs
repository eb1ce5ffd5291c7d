//! Superluminality quotients: model delay divided by the time light needs
//! for the corresponding horizontal distance. A quotient below one marks
//! quantum-superluminal tunnel-ionization.
//!
//! Three channels are compared:
//!
//! * adiabatic (horizontal): distance `d_B`, delays `tau_dB` and `tau_Ad`;
//! * nonadiabatic (vertical): distance `x_m`, delay `tau_dion`;
//! * intermediate: a switching parameter `zeta in [0, 1]` interpolates
//!   `tau_imed = tau_dion + zeta tau_dB` and
//!   `d_imed = (1 - zeta) x_m + zeta d_B`.
//!
//! The thick-barrier mode replaces `delta_z -> I_p` and `d_B -> d_C`,
//! which keeps the formulas finite above `F_a`.

use crate::atomic::AtomicSystem;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::ModelError;
use crate::roots::bisect;

const C: f64 = SPEED_OF_LIGHT;

/// Tolerance for certifying a `zeta_QS` root: `|Q(zeta*) - 1|`.
pub const ROOT_CERTIFICATE_TOL: f64 = 1e-9;

/// Barrier treatment for the intermediate-regime quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QsMode {
    /// Exact barrier height and width; requires `F <= F_a`.
    Exact,
    /// Thick-barrier limit `delta_z -> I_p`, `d_B -> d_C`; any `F > 0`.
    Thick,
}

impl QsMode {
    pub fn name(self) -> &'static str {
        match self {
            QsMode::Exact => "exact",
            QsMode::Thick => "thick",
        }
    }
}

impl std::str::FromStr for QsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(QsMode::Exact),
            "thick" => Ok(QsMode::Thick),
            other => Err(format!("unknown mode '{other}' (expected exact|thick)")),
        }
    }
}

/// How `zeta_QS` is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMode {
    Exact,
    Thick,
    /// Analytic `F -> 0` limit, `zeta = c / (8 Z_eff - c)`.
    SmallField,
}

impl ZetaMode {
    pub fn name(self) -> &'static str {
        match self {
            ZetaMode::Exact => "exact",
            ZetaMode::Thick => "thick",
            ZetaMode::SmallField => "small-field",
        }
    }
}

/// Time for light to cover `distance` bohr.
#[inline]
pub fn light_time(distance: f64) -> f64 {
    distance / C
}

/// Barrier-delay quotient `tau_dB / tau_c^Ad = c / (8 Z_eff)`, independent
/// of the field.
pub fn q_db(system: &AtomicSystem) -> f64 {
    C / (8.0 * system.z_eff())
}

/// Adiabatic quotient in the thick-barrier limit, `c / (4 Z_eff)`.
pub fn q_ad_thick(system: &AtomicSystem) -> f64 {
    C / (4.0 * system.z_eff())
}

/// Nonadiabatic quotient `tau_dion / (x_m / c) = I_p c / (8 Z_eff F x_m)`.
pub fn q_nad(system: &AtomicSystem, field: f64) -> Result<f64, ModelError> {
    // Validates the tunneling range even though delta_z itself is unused.
    system.barrier_height(field)?;
    let x_m = system.barrier_top(field)?;
    Ok(system.ip() * C / (8.0 * system.z_eff() * field * x_m))
}

/// `Q_Nad` with `I_p = Z^2/2`, i.e. `(c/16) sqrt(Z/F)`.
pub fn q_nad_hydrogenic(z: f64, field: f64) -> f64 {
    C / 16.0 * (z / field).sqrt()
}

/// Intermediate-regime delay and traversed width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateState {
    pub zeta: f64,
    pub mode: QsMode,
    pub tau_imed: f64,
    pub d_imed: f64,
    /// Exit point; identified with `d_imed` (entrance offset neglected).
    pub x_exit_imed: f64,
    /// Set when `F > 4/5 F_a`, where `d_B < x_m` and the width
    /// interpolation no longer runs from `x_m` outward.
    pub outside_width_band: bool,
}

impl IntermediateState {
    pub fn light_time(&self) -> f64 {
        light_time(self.d_imed)
    }
}

fn check_zeta(zeta: f64) -> Result<(), ModelError> {
    if (0.0..=1.0).contains(&zeta) {
        Ok(())
    } else {
        Err(ModelError::ZetaOutOfRange(zeta))
    }
}

/// Barrier height and width used by `mode` at `field`.
fn barrier_for_mode(system: &AtomicSystem, field: f64, mode: QsMode) -> Result<(f64, f64), ModelError> {
    match mode {
        QsMode::Exact => {
            let delta = system.barrier_height(field)?;
            Ok((delta, delta / field))
        }
        QsMode::Thick => {
            if !(field > 0.0) || !field.is_finite() {
                return Err(ModelError::NonPositiveField(field));
            }
            Ok((system.ip(), system.ip() / field))
        }
    }
}

/// Exact intermediate state; see [`intermediate_with`] for the thick limit.
pub fn intermediate(system: &AtomicSystem, field: f64, zeta: f64) -> Result<IntermediateState, ModelError> {
    intermediate_with(system, field, zeta, QsMode::Exact)
}

pub fn intermediate_with(
    system: &AtomicSystem,
    field: f64,
    zeta: f64,
    mode: QsMode,
) -> Result<IntermediateState, ModelError> {
    check_zeta(zeta)?;
    let (delta, width) = barrier_for_mode(system, field, mode)?;
    let x_m = system.barrier_top(field)?;
    let scale = 8.0 * system.z_eff() * field;
    let tau_imed = system.ip() / scale + zeta * (delta / scale);
    let d_imed = (1.0 - zeta) * x_m + zeta * width;
    Ok(IntermediateState {
        zeta,
        mode,
        tau_imed,
        d_imed,
        x_exit_imed: d_imed,
        outside_width_band: field > 0.8 * system.atomic_field(),
    })
}

/// Intermediate quotient against the adiabatic light time,
/// `c (1 + zeta) / (8 Z_eff)`. Accepts any `zeta`; the physical range is
/// `[0, 1]`.
pub fn q_imed_a(system: &AtomicSystem, zeta: f64) -> f64 {
    C * (1.0 + zeta) / (8.0 * system.z_eff())
}

/// `zeta_i = 8 Z_eff / c - 1`: the switching value at which `Q_imed^a`
/// reaches one. `None` when it lies outside `[0, 1]`.
pub fn zeta_threshold_a(system: &AtomicSystem) -> Option<f64> {
    let zeta = 8.0 * system.z_eff() / C - 1.0;
    (0.0..=1.0).contains(&zeta).then_some(zeta)
}

/// Coefficients of `Q_imed^b(zeta) = c (I_p + zeta delta) / (A (1 - zeta) + B zeta)`.
#[derive(Debug, Clone, Copy)]
struct AffineRatio {
    ip: f64,
    delta: f64,
    a: f64,
    b: f64,
}

impl AffineRatio {
    fn new(system: &AtomicSystem, field: f64, mode: QsMode) -> Result<Self, ModelError> {
        let (delta, _) = barrier_for_mode(system, field, mode)?;
        let x_m = system.barrier_top(field)?;
        let z = system.z_eff();
        Ok(Self { ip: system.ip(), delta, a: 8.0 * z * field * x_m, b: 8.0 * z * delta })
    }

    fn eval(&self, zeta: f64) -> f64 {
        C * (self.ip + zeta * self.delta) / (self.a * (1.0 - zeta) + self.b * zeta)
    }
}

/// Intermediate quotient against the light time over `d_imed`.
///
/// Exact mode: `c (I_p + zeta delta_z) / (8 Z F (1 - zeta) x_m + 8 zeta Z delta_z)`.
/// Thick mode: `c (1 + zeta) / ((8 Z F / I_p)(1 - zeta) x_m + 8 zeta Z)`.
pub fn q_imed_b(system: &AtomicSystem, field: f64, zeta: f64, mode: QsMode) -> Result<f64, ModelError> {
    check_zeta(zeta)?;
    Ok(AffineRatio::new(system, field, mode)?.eval(zeta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    ClosedForm,
    Bisection,
}

/// A certified solution of `Q_imed^b(zeta) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaRoot {
    pub zeta: f64,
    /// `|Q_imed^b(zeta) - 1|` at the returned root.
    pub residual: f64,
    pub method: RootMethod,
}

/// Switching value `zeta_QS` at which `Q_imed^b` crosses one.
///
/// `Ok(None)` means no crossing inside `[0, 1]`. `field` is ignored in
/// [`ZetaMode::SmallField`].
pub fn zeta_qs(system: &AtomicSystem, field: f64, mode: ZetaMode) -> Result<Option<ZetaRoot>, ModelError> {
    let qmode = match mode {
        ZetaMode::SmallField => {
            let z = system.z_eff();
            let zeta = C / (8.0 * z - C);
            if !(0.0..=1.0).contains(&zeta) {
                return Ok(None);
            }
            // F -> 0 limit of the affine ratio: c (1 + zeta) / (8 Z zeta).
            let q = C * (1.0 + zeta) / (8.0 * z * zeta);
            return Ok(Some(ZetaRoot { zeta, residual: (q - 1.0).abs(), method: RootMethod::ClosedForm }));
        }
        ZetaMode::Exact => QsMode::Exact,
        ZetaMode::Thick => QsMode::Thick,
    };
    let ratio = AffineRatio::new(system, field, qmode)?;
    let numer = ratio.a - C * ratio.ip;
    let denom = C * ratio.delta - ratio.b + ratio.a;
    let scale = ratio.a.abs() + ratio.b.abs() + (C * ratio.delta).abs() + C * ratio.ip;

    if denom.abs() > 1e-12 * scale {
        let mut zeta = numer / denom;
        // Roots at the interval ends may land a rounding error outside.
        if zeta < 0.0 && zeta > -1e-12 {
            zeta = 0.0;
        } else if zeta > 1.0 && zeta < 1.0 + 1e-12 {
            zeta = 1.0;
        }
        if !(0.0..=1.0).contains(&zeta) {
            return Ok(None);
        }
        let residual = (ratio.eval(zeta) - 1.0).abs();
        if residual <= ROOT_CERTIFICATE_TOL {
            return Ok(Some(ZetaRoot { zeta, residual, method: RootMethod::ClosedForm }));
        }
    }

    let g = |zeta: f64| ratio.eval(zeta) - 1.0;
    let (g0, g1) = (g(0.0), g(1.0));
    if !(g0.is_finite() && g1.is_finite()) || g0.signum() == g1.signum() {
        return Ok(None);
    }
    let zeta = bisect(g, 0.0, 1.0, 1e-10, 200)?;
    let residual = g(zeta).abs();
    if residual > ROOT_CERTIFICATE_TOL {
        // The ratio is monotone in zeta, so a bracketed root that fails the
        // certificate can only come from a near-singular denominator.
        return Ok(None);
    }
    Ok(Some(ZetaRoot { zeta, residual, method: RootMethod::Bisection }))
}

/// Field strengths bounding the superluminal window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalFields {
    pub f_a: f64,
    /// Onset of nonadiabatic superluminality, `(c/16)^2 Z_eff`.
    pub f_c: f64,
    /// Solution of `Q_imed^b(zeta = 1, F) = 1` in `(0, F_a)`, when it exists.
    pub f_zeta1: Option<f64>,
}

impl CriticalFields {
    /// `F_c < F_a`: some tunneling field makes the vertical channel
    /// superluminal.
    pub fn window_open(&self) -> bool {
        self.f_c < self.f_a
    }
}

pub fn critical_fields(system: &AtomicSystem) -> Result<CriticalFields, ModelError> {
    let f_a = system.atomic_field();
    let f_c = (C / 16.0).powi(2) * system.z_eff();
    // Q(zeta=1) rises monotonically from c/(4 Z_eff) at F -> 0 to infinity
    // at F_a, so a crossing exists iff c/(4 Z_eff) < 1.
    let f_zeta1 = if q_ad_thick(system) < 1.0 {
        let g = |f: f64| match q_imed_b(system, f, 1.0, QsMode::Exact) {
            Ok(q) => q - 1.0,
            Err(_) => f64::NAN,
        };
        Some(bisect(g, f_a * 1e-12, f_a, f_a * 1e-14, 400)?)
    } else {
        None
    };
    Ok(CriticalFields { f_a, f_c, f_zeta1 })
}

/// All quotients and light times at one `(F, zeta)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsReport {
    pub mode: QsMode,
    pub q_db: f64,
    pub q_ad: f64,
    pub q_nad: f64,
    pub q_imed_a: f64,
    pub q_imed_b: f64,
    /// `d_B / c`.
    pub tau_c_ad: f64,
    /// `x_m / c`.
    pub tau_c_nad: f64,
    /// `d_imed / c`.
    pub tau_c_imed: f64,
}

impl QsReport {
    /// `(name, quotient, superluminal)` for every quotient.
    pub fn flags(&self) -> [(&'static str, f64, bool); 5] {
        [
            ("Q_dB", self.q_db, self.q_db < 1.0),
            ("Q_ad", self.q_ad, self.q_ad < 1.0),
            ("Q_Nad", self.q_nad, self.q_nad < 1.0),
            ("Q_imed_a", self.q_imed_a, self.q_imed_a < 1.0),
            ("Q_imed_b", self.q_imed_b, self.q_imed_b < 1.0),
        ]
    }
}

pub fn qs_report(system: &AtomicSystem, field: f64, zeta: f64, mode: QsMode) -> Result<QsReport, ModelError> {
    let geometry = system.barrier_geometry(field)?;
    let imed = intermediate_with(system, field, zeta, mode)?;
    Ok(QsReport {
        mode,
        q_db: q_db(system),
        q_ad: q_ad_thick(system),
        q_nad: q_nad(system, field)?,
        q_imed_a: q_imed_a(system, zeta),
        q_imed_b: q_imed_b(system, field, zeta, mode)?,
        tau_c_ad: light_time(geometry.width),
        tau_c_nad: light_time(geometry.x_top),
        tau_c_imed: imed.light_time(),
    })
}
