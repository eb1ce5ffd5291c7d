//! Parameter sweeps over `(Z, F, zeta)` and the figure-dataset presets.
//!
//! A [`ScanGrid`] is a list of axes plus fixed parameters. Points are
//! enumerated in row-major order (first axis outermost), evaluated
//! independently (in parallel) and collected in that order. Domain errors
//! at a point never abort a scan: the affected quantities become `NaN` and
//! the record carries validity flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::atomic::AtomicSystem;
use crate::constants::{au_to_as, intensity_w_cm2};
use crate::error::ModelError;
use crate::superluminal::{self as qs, QsMode, ZetaMode};

/// Points per swept axis when a figure does not specify a density.
pub const DEFAULT_POINTS: usize = 400;

/// Offset added to the small-field `zeta_QS` in the `fig7` preset.
pub const FIG7_ZETA_OFFSET: f64 = 0.005;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid axis '{axis}': {reason}")]
    InvalidAxis { axis: String, reason: String },
    #[error("unknown preset '{name}'; available presets: {}", available.join(", "))]
    UnknownPreset { name: String, available: Vec<&'static str> },
    #[error("cannot emit an empty table")]
    EmptyTable,
    #[error("failed to write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AxisValues {
    Range { start: f64, stop: f64, count: usize, spacing: Spacing },
    List(Vec<f64>),
}

/// Swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// Nuclear charge; `Z_eff` follows `Z` unless fixed.
    Z,
    /// Field strength in a.u.
    Field,
    /// Field strength as a fraction of `F_a(Z)`.
    FieldFraction,
    Zeta,
}

impl AxisKind {
    pub fn name(self) -> &'static str {
        match self {
            AxisKind::Z => "Z",
            AxisKind::Field => "F",
            AxisKind::FieldFraction => "F_over_Fa",
            AxisKind::Zeta => "zeta",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub kind: AxisKind,
    pub values: AxisValues,
}

impl Axis {
    pub fn linear(kind: AxisKind, start: f64, stop: f64, count: usize) -> Self {
        Self { kind, values: AxisValues::Range { start, stop, count, spacing: Spacing::Linear } }
    }

    pub fn log(kind: AxisKind, start: f64, stop: f64, count: usize) -> Self {
        Self { kind, values: AxisValues::Range { start, stop, count, spacing: Spacing::Log } }
    }

    pub fn list(kind: AxisKind, values: Vec<f64>) -> Self {
        Self { kind, values: AxisValues::List(values) }
    }

    fn invalid(&self, reason: impl Into<String>) -> ScanError {
        ScanError::InvalidAxis { axis: self.kind.name().to_string(), reason: reason.into() }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        match &self.values {
            AxisValues::Range { start, stop, count, spacing } => {
                if !start.is_finite() || !stop.is_finite() {
                    return Err(self.invalid("bounds must be finite"));
                }
                if *count < 2 {
                    return Err(self.invalid(format!("count must be >= 2, got {count}")));
                }
                if start >= stop {
                    return Err(self.invalid(format!("start {start} must be below stop {stop}")));
                }
                if *spacing == Spacing::Log && *start <= 0.0 {
                    return Err(self.invalid("log spacing requires start > 0"));
                }
                Ok(())
            }
            AxisValues::List(values) => {
                if values.is_empty() {
                    return Err(self.invalid("value list is empty"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(self.invalid("value list contains non-finite entries"));
                }
                Ok(())
            }
        }
    }

    pub fn points(&self) -> Vec<f64> {
        match &self.values {
            AxisValues::List(values) => values.clone(),
            AxisValues::Range { start, stop, count, spacing } => {
                let n = (*count - 1) as f64;
                (0..*count)
                    .map(|i| {
                        let t = i as f64 / n;
                        let v = match spacing {
                            Spacing::Linear => start + (stop - start) * t,
                            Spacing::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
                        };
                        // Pin the end point exactly.
                        if i + 1 == *count {
                            *stop
                        } else {
                            v
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Switching parameter when `zeta` is not swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaSpec {
    Value(f64),
    /// `zeta_QS(F -> 0) + offset` evaluated per `Z`, clamped to 1.
    AboveSmallFieldRoot(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedParams {
    pub z: f64,
    /// `None`: `Z_eff = Z` (H-like ground state).
    pub z_eff: Option<f64>,
    pub relativistic: bool,
    pub field: f64,
    pub zeta: ZetaSpec,
    /// Laser frequency for the Keldysh column.
    pub omega: Option<f64>,
    pub mode: QsMode,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            z: 1.0,
            z_eff: None,
            relativistic: false,
            field: 0.05,
            zeta: ZetaSpec::Value(0.5),
            omega: None,
            mode: QsMode::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub preset: Option<String>,
    pub axes: Vec<Axis>,
    pub fixed: FixedParams,
    /// Columns to emit; the full set when built from scratch.
    pub columns: Vec<Column>,
}

impl ScanGrid {
    pub fn new(axes: Vec<Axis>, fixed: FixedParams) -> Self {
        Self { preset: None, axes, fixed, columns: Column::ALL.to_vec() }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        for (i, axis) in self.axes.iter().enumerate() {
            axis.validate()?;
            if self.axes[..i].iter().any(|a| a.kind == axis.kind) {
                return Err(axis.invalid("axis listed twice"));
            }
        }
        let has = |k| self.axes.iter().any(|a| a.kind == k);
        if has(AxisKind::Field) && has(AxisKind::FieldFraction) {
            return Err(ScanError::InvalidAxis {
                axis: "F".into(),
                reason: "F and F_over_Fa cannot both be swept".into(),
            });
        }
        Ok(())
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points().len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates in row-major order.
    fn coordinates(&self) -> Vec<Vec<(AxisKind, f64)>> {
        let mut out: Vec<Vec<(AxisKind, f64)>> = vec![Vec::new()];
        for axis in &self.axes {
            let pts = axis.points();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    pts.iter().map(move |&v| {
                        let mut c = prefix.clone();
                        c.push((axis.kind, v));
                        c
                    })
                })
                .collect();
        }
        out
    }
}

/// One evaluated grid point. Unavailable quantities are `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub z: f64,
    pub z_eff: f64,
    pub relativistic: bool,
    pub mode: QsMode,
    pub field: f64,
    pub zeta: f64,
    pub ip: f64,
    pub f_a: f64,
    pub f_c: f64,
    pub delta_z: f64,
    pub x_entry: f64,
    pub x_exit: f64,
    pub x_top: f64,
    pub d_b: f64,
    pub d_c: f64,
    pub d_imed: f64,
    pub tau_a: f64,
    pub tau_ti: f64,
    pub tau_ad: f64,
    pub tau_dion: f64,
    pub tau_db: f64,
    pub tau_backr: f64,
    pub tau_imed: f64,
    pub tau_c_ad: f64,
    pub tau_c_nad: f64,
    pub tau_c_imed: f64,
    pub q_db: f64,
    pub q_ad: f64,
    pub q_nad: f64,
    pub q_imed_a: f64,
    pub q_imed_b: f64,
    pub zeta_qs: f64,
    pub keldysh: f64,
    /// `F > F_a`.
    pub bsi: bool,
    /// `F > 4/5 F_a`.
    pub width_band: bool,
    /// No `zeta_QS` in `[0, 1]` at this field.
    pub root_absent: bool,
    /// Invalid system parameters (record is all `NaN`).
    pub invalid: bool,
}

impl ScanRecord {
    fn empty(z: f64, z_eff: f64, relativistic: bool, mode: QsMode, field: f64, zeta: f64) -> Self {
        let nan = f64::NAN;
        Self {
            z,
            z_eff,
            relativistic,
            mode,
            field,
            zeta,
            ip: nan,
            f_a: nan,
            f_c: nan,
            delta_z: nan,
            x_entry: nan,
            x_exit: nan,
            x_top: nan,
            d_b: nan,
            d_c: nan,
            d_imed: nan,
            tau_a: nan,
            tau_ti: nan,
            tau_ad: nan,
            tau_dion: nan,
            tau_db: nan,
            tau_backr: nan,
            tau_imed: nan,
            tau_c_ad: nan,
            tau_c_nad: nan,
            tau_c_imed: nan,
            q_db: nan,
            q_ad: nan,
            q_nad: nan,
            q_imed_a: nan,
            q_imed_b: nan,
            zeta_qs: nan,
            keldysh: nan,
            bsi: false,
            width_band: false,
            root_absent: true,
            invalid: true,
        }
    }

    /// Evaluates the model at one point.
    pub fn evaluate(fixed: &FixedParams, coords: &[(AxisKind, f64)]) -> Self {
        let get = |k: AxisKind| coords.iter().find(|(kind, _)| *kind == k).map(|(_, v)| *v);
        let z = get(AxisKind::Z).unwrap_or(fixed.z);
        let z_eff = match (get(AxisKind::Z), fixed.z_eff) {
            (Some(z), _) => z,
            (None, Some(ze)) => ze,
            (None, None) => z,
        };
        let system = AtomicSystem::new(z, z_eff, fixed.relativistic);
        let zeta_for = |sys: Option<&AtomicSystem>| match get(AxisKind::Zeta) {
            Some(v) => v,
            None => match fixed.zeta {
                ZetaSpec::Value(v) => v,
                ZetaSpec::AboveSmallFieldRoot(offset) => sys
                    .and_then(|s| qs::zeta_qs(s, 0.0, ZetaMode::SmallField).ok().flatten())
                    .map_or(f64::NAN, |r| (r.zeta + offset).min(1.0)),
            },
        };
        let system = match system {
            Ok(s) => s,
            Err(_) => {
                let field = get(AxisKind::Field).unwrap_or(fixed.field);
                return Self::empty(z, z_eff, fixed.relativistic, fixed.mode, field, zeta_for(None));
            }
        };
        let zeta = zeta_for(Some(&system));
        let f_a = system.atomic_field();
        let field = match get(AxisKind::FieldFraction) {
            Some(frac) => frac * f_a,
            None => get(AxisKind::Field).unwrap_or(fixed.field),
        };
        let mode = fixed.mode;
        let mut r = Self::empty(z, z_eff, fixed.relativistic, mode, field, zeta);
        r.invalid = false;
        r.ip = system.ip();
        r.f_a = f_a;
        r.bsi = field > f_a;
        r.width_band = field > 0.8 * f_a;
        r.tau_a = system.tau_a();
        r.q_db = qs::q_db(&system);
        r.q_ad = qs::q_ad_thick(&system);
        r.q_imed_a = qs::q_imed_a(&system, zeta);
        if let Ok(cf) = qs::critical_fields(&system) {
            r.f_c = cf.f_c;
        }
        if let Ok(x_m) = system.barrier_top(field) {
            r.x_top = x_m;
            r.d_c = system.ip() / field;
            r.tau_c_nad = qs::light_time(x_m);
            r.tau_dion = system.ip() / (8.0 * z_eff * field);
        }
        if let Ok(g) = system.barrier_geometry(field) {
            r.delta_z = g.delta_z;
            r.x_entry = g.x_entry;
            r.x_exit = g.x_exit;
            r.d_b = g.width;
            r.tau_c_ad = qs::light_time(g.width);
        }
        if let Ok(d) = system.delay_set(field) {
            r.tau_ti = d.tau_ti;
            r.tau_ad = d.tau_ad;
            r.tau_db = d.tau_db;
            r.tau_backr = d.tau_backr;
        }
        if let Ok(q) = qs::q_nad(&system, field) {
            r.q_nad = q;
        }
        if let Ok(st) = qs::intermediate_with(&system, field, zeta, mode) {
            r.tau_imed = st.tau_imed;
            r.d_imed = st.d_imed;
            r.tau_c_imed = st.light_time();
        }
        if let Ok(q) = qs::q_imed_b(&system, field, zeta, mode) {
            r.q_imed_b = q;
        }
        let zmode = match mode {
            QsMode::Exact => ZetaMode::Exact,
            QsMode::Thick => ZetaMode::Thick,
        };
        if let Ok(Some(root)) = qs::zeta_qs(&system, field, zmode) {
            r.zeta_qs = root.zeta;
            r.root_absent = false;
        }
        if let Some(omega) = fixed.omega {
            if let Ok(g) = system.keldysh_gamma(field, omega) {
                r.keldysh = g;
            }
        }
        r
    }
}

/// Evaluates every grid point, in parallel, in row-major order.
pub fn run_scan(grid: &ScanGrid) -> Result<Vec<ScanRecord>, ScanError> {
    grid.validate()?;
    Ok(grid.coordinates().par_iter().map(|c| ScanRecord::evaluate(&grid.fixed, c)).collect())
}

/// Single-threaded reference path for [`run_scan`].
pub fn run_scan_serial(grid: &ScanGrid) -> Result<Vec<ScanRecord>, ScanError> {
    grid.validate()?;
    Ok(grid.coordinates().iter().map(|c| ScanRecord::evaluate(&grid.fixed, c)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeUnit {
    Au,
    As,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeQty {
    A,
    Ti,
    Ad,
    Dion,
    DB,
    Backr,
    Imed,
    LightAd,
    LightNad,
    LightImed,
}

/// An output column. Names carry their unit as a suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Z,
    ZEff,
    Relativistic,
    Mode,
    Field,
    FieldAtomic,
    FieldFraction,
    FieldCritical,
    Zeta,
    Ip,
    DeltaZ,
    XEntry,
    XExit,
    XTop,
    WidthB,
    WidthC,
    WidthImed,
    Time(TimeQty, TimeUnit),
    QdB,
    QAd,
    QNad,
    QImedA,
    QImedB,
    ZetaQs,
    Keldysh,
    Intensity,
    Bsi,
    WidthBand,
    RootAbsent,
}

enum Cell<'a> {
    Num(f64),
    Flag(bool),
    Text(&'a str),
}

impl Column {
    pub const ALL: [Column; 48] = {
        use Column::*;
        use TimeQty::*;
        use TimeUnit::*;
        [
            Z,
            ZEff,
            Relativistic,
            Mode,
            Field,
            FieldAtomic,
            FieldFraction,
            FieldCritical,
            Zeta,
            Ip,
            DeltaZ,
            XEntry,
            XExit,
            XTop,
            WidthB,
            WidthC,
            WidthImed,
            Time(A, Au),
            Time(Ti, Au),
            Time(Ad, Au),
            Time(Dion, Au),
            Time(DB, Au),
            Time(Backr, Au),
            Time(Imed, Au),
            Time(LightAd, Au),
            Time(LightNad, Au),
            Time(LightImed, Au),
            Time(A, As),
            Time(Ti, As),
            Time(Ad, As),
            Time(Dion, As),
            Time(DB, As),
            Time(Backr, As),
            Time(Imed, As),
            Time(LightAd, As),
            Time(LightNad, As),
            Time(LightImed, As),
            QdB,
            QAd,
            QNad,
            QImedA,
            QImedB,
            ZetaQs,
            Keldysh,
            Intensity,
            Bsi,
            WidthBand,
            RootAbsent,
        ]
    };

    pub fn name(self) -> &'static str {
        use TimeQty::*;
        use TimeUnit::*;
        match self {
            Column::Z => "Z",
            Column::ZEff => "Z_eff",
            Column::Relativistic => "relativistic",
            Column::Mode => "mode",
            Column::Field => "F_au",
            Column::FieldAtomic => "F_a_au",
            Column::FieldFraction => "F_over_Fa",
            Column::FieldCritical => "F_c_au",
            Column::Zeta => "zeta",
            Column::Ip => "I_p_hartree",
            Column::DeltaZ => "delta_z_hartree",
            Column::XEntry => "x_entry_bohr",
            Column::XExit => "x_exit_bohr",
            Column::XTop => "x_m_bohr",
            Column::WidthB => "d_B_bohr",
            Column::WidthC => "d_C_bohr",
            Column::WidthImed => "d_imed_bohr",
            Column::Time(q, u) => match (q, u) {
                (A, Au) => "tau_a_au",
                (Ti, Au) => "tau_Ti_au",
                (Ad, Au) => "tau_Ad_au",
                (Dion, Au) => "tau_dion_au",
                (DB, Au) => "tau_dB_au",
                (Backr, Au) => "tau_backr_au",
                (Imed, Au) => "tau_imed_au",
                (LightAd, Au) => "tau_c_ad_au",
                (LightNad, Au) => "tau_c_nad_au",
                (LightImed, Au) => "tau_c_imed_au",
                (A, As) => "tau_a_as",
                (Ti, As) => "tau_Ti_as",
                (Ad, As) => "tau_Ad_as",
                (Dion, As) => "tau_dion_as",
                (DB, As) => "tau_dB_as",
                (Backr, As) => "tau_backr_as",
                (Imed, As) => "tau_imed_as",
                (LightAd, As) => "tau_c_ad_as",
                (LightNad, As) => "tau_c_nad_as",
                (LightImed, As) => "tau_c_imed_as",
            },
            Column::QdB => "q_dB",
            Column::QAd => "q_ad",
            Column::QNad => "q_Nad",
            Column::QImedA => "q_imed_a",
            Column::QImedB => "q_imed_b",
            Column::ZetaQs => "zeta_qs",
            Column::Keldysh => "gamma_K",
            Column::Intensity => "intensity_W_cm2",
            Column::Bsi => "flag_bsi",
            Column::WidthBand => "flag_width_band",
            Column::RootAbsent => "flag_root_absent",
        }
    }

    pub fn from_name(name: &str) -> Option<Column> {
        Column::ALL.iter().copied().find(|c| c.name() == name)
    }

    fn cell(self, r: &ScanRecord) -> Cell<'static> {
        use Cell::*;
        let time = |q: TimeQty| match q {
            TimeQty::A => r.tau_a,
            TimeQty::Ti => r.tau_ti,
            TimeQty::Ad => r.tau_ad,
            TimeQty::Dion => r.tau_dion,
            TimeQty::DB => r.tau_db,
            TimeQty::Backr => r.tau_backr,
            TimeQty::Imed => r.tau_imed,
            TimeQty::LightAd => r.tau_c_ad,
            TimeQty::LightNad => r.tau_c_nad,
            TimeQty::LightImed => r.tau_c_imed,
        };
        match self {
            Column::Z => Num(r.z),
            Column::ZEff => Num(r.z_eff),
            Column::Relativistic => Flag(r.relativistic),
            Column::Mode => Text(r.mode.name()),
            Column::Field => Num(r.field),
            Column::FieldAtomic => Num(r.f_a),
            Column::FieldFraction => Num(r.field / r.f_a),
            Column::FieldCritical => Num(r.f_c),
            Column::Zeta => Num(r.zeta),
            Column::Ip => Num(r.ip),
            Column::DeltaZ => Num(r.delta_z),
            Column::XEntry => Num(r.x_entry),
            Column::XExit => Num(r.x_exit),
            Column::XTop => Num(r.x_top),
            Column::WidthB => Num(r.d_b),
            Column::WidthC => Num(r.d_c),
            Column::WidthImed => Num(r.d_imed),
            Column::Time(q, TimeUnit::Au) => Num(time(q)),
            Column::Time(q, TimeUnit::As) => Num(au_to_as(time(q))),
            Column::QdB => Num(r.q_db),
            Column::QAd => Num(r.q_ad),
            Column::QNad => Num(r.q_nad),
            Column::QImedA => Num(r.q_imed_a),
            Column::QImedB => Num(r.q_imed_b),
            Column::ZetaQs => Num(r.zeta_qs),
            Column::Keldysh => Num(r.keldysh),
            Column::Intensity => Num(intensity_w_cm2(r.field)),
            Column::Bsi => Flag(r.bsi),
            Column::WidthBand => Flag(r.width_band),
            Column::RootAbsent => Flag(r.root_absent),
        }
    }

    pub fn value(self, r: &ScanRecord) -> f64 {
        match self.cell(r) {
            Cell::Num(v) => v,
            Cell::Flag(b) => f64::from(u8::from(b)),
            Cell::Text(_) => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv|json)")),
        }
    }
}

/// Serializes records. CSV: header line, `,` separator, LF endings,
/// shortest round-trip float formatting. JSON: array of flat objects,
/// non-finite numbers become `null`.
pub fn render_table(records: &[ScanRecord], columns: &[Column], format: TableFormat) -> Result<String, ScanError> {
    if records.is_empty() {
        return Err(ScanError::EmptyTable);
    }
    match format {
        TableFormat::Csv => {
            let mut out = String::new();
            let header: Vec<&str> = columns.iter().map(|c| c.name()).collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for r in records {
                for (i, col) in columns.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    match col.cell(r) {
                        Cell::Num(v) => write!(out, "{v}").unwrap(),
                        Cell::Flag(b) => out.push(if b { '1' } else { '0' }),
                        Cell::Text(t) => out.push_str(t),
                    }
                }
                out.push('\n');
            }
            Ok(out)
        }
        TableFormat::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let mut obj = Map::new();
                    for col in columns {
                        let v = match col.cell(r) {
                            Cell::Num(v) => Value::from(v),
                            Cell::Flag(b) => Value::from(b),
                            Cell::Text(t) => Value::from(t),
                        };
                        obj.insert(col.name().to_string(), v);
                    }
                    Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json values serialize");
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn emit_table(
    records: &[ScanRecord],
    columns: &[Column],
    format: TableFormat,
    destination: &Path,
) -> Result<(), ScanError> {
    let text = render_table(records, columns, format)?;
    std::fs::write(destination, text).map_err(|source| ScanError::Io { path: destination.to_path_buf(), source })
}

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 12] =
    ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5a", "fig5b", "fig6a", "fig6b", "fig6c", "fig6d", "fig7"];

fn h_like(z: f64, relativistic: bool, field: f64, zeta: ZetaSpec, mode: QsMode) -> FixedParams {
    FixedParams { z, z_eff: None, relativistic, field, zeta, omega: None, mode }
}

/// Field list for the `zeta` sweeps: near zero, quarter, half, `F_c`,
/// `F_{zeta=1}` and `F_a`, whichever lie in the tunneling range.
fn fig6_field_list(system: &AtomicSystem) -> Result<Vec<f64>, ScanError> {
    let cf = qs::critical_fields(system)?;
    let mut fields = vec![1e-4 * cf.f_a, 0.25 * cf.f_a, 0.5 * cf.f_a, cf.f_a];
    if cf.window_open() {
        fields.push(cf.f_c);
    }
    fields.extend(cf.f_zeta1);
    fields.sort_by(f64::total_cmp);
    fields.dedup();
    Ok(fields)
}

fn fig6_zeta_sweep(z: f64) -> Result<ScanGrid, ScanError> {
    use Column::*;
    let system = AtomicSystem::hydrogenic(z, true)?;
    Ok(ScanGrid {
        preset: None,
        axes: vec![
            Axis::list(AxisKind::Field, fig6_field_list(&system)?),
            Axis::linear(AxisKind::Zeta, 0.0, 1.0, DEFAULT_POINTS),
        ],
        fixed: h_like(z, true, 1.0, ZetaSpec::Value(0.0), QsMode::Exact),
        columns: vec![Z, Field, FieldFraction, Zeta, QImedB, ZetaQs],
    })
}

fn fig6_field_sweep(z: f64) -> Result<ScanGrid, ScanError> {
    use Column::*;
    let system = AtomicSystem::hydrogenic(z, true)?;
    let f_a = system.atomic_field();
    let mut zetas = vec![0.0, 0.25, 0.5, 0.75, 1.0];
    if let Some(root) = qs::zeta_qs(&system, 0.0, ZetaMode::SmallField)? {
        zetas.push(root.zeta);
    }
    zetas.sort_by(f64::total_cmp);
    Ok(ScanGrid {
        preset: None,
        axes: vec![
            Axis::list(AxisKind::Zeta, zetas),
            Axis::linear(AxisKind::Field, f_a / DEFAULT_POINTS as f64, 1.25 * f_a, DEFAULT_POINTS),
        ],
        fixed: h_like(z, true, 1.0, ZetaSpec::Value(0.0), QsMode::Thick),
        columns: vec![Z, Zeta, Field, FieldFraction, QImedB, Bsi],
    })
}

/// Builds a figure preset.
///
/// | preset | content |
/// |--------|---------|
/// | fig2a  | `tau_Ad`, `tau_dion` vs F, Z = 18 |
/// | fig2b  | `tau_dB`, `tau_c^Ad` vs F, Z = 18 |
/// | fig3a  | `tau_dB`, `tau_c^Ad` vs Z in [3, 40] at F = 1 |
/// | fig3b  | `tau_dB` vs `d_B` for several Z |
/// | fig4   | `Q_Nad` vs F up to F_a for Z = 15, 30, 35, 40, 50 |
/// | fig5a  | hydrogen exit points `x_{e,+}`, `x_m`, `d_imed(zeta = 0.5)` (thick) |
/// | fig5b  | `Q_imed^a` vs zeta for selected Z |
/// | fig6a/c| exact `Q_imed^b` vs zeta, Z = 35/50 (relativistic I_p) |
/// | fig6b/d| thick `Q_imed^b` vs F, Z = 35/50 (relativistic I_p) |
/// | fig7   | `tau_imed`, `tau_c^imed` vs F for Z = 35, 50, 100 at zeta = zeta_QS + 0.005 |
pub fn preset(name: &str) -> Result<ScanGrid, ScanError> {
    use Column::*;
    use TimeQty::*;
    use TimeUnit::*;
    let n = DEFAULT_POINTS;
    let z18_fields = Axis::linear(AxisKind::Field, 0.5, 360.0, n);
    let mut grid = match name {
        "fig2a" => ScanGrid {
            preset: None,
            axes: vec![z18_fields],
            fixed: h_like(18.0, false, 1.0, ZetaSpec::Value(1.0), QsMode::Exact),
            columns: vec![Field, Time(Ad, As), Time(Dion, As)],
        },
        "fig2b" => ScanGrid {
            preset: None,
            axes: vec![z18_fields],
            fixed: h_like(18.0, false, 1.0, ZetaSpec::Value(1.0), QsMode::Exact),
            columns: vec![Field, Time(DB, As), Time(LightAd, As)],
        },
        "fig3a" => ScanGrid {
            preset: None,
            axes: vec![Axis::linear(AxisKind::Z, 3.0, 40.0, n)],
            fixed: h_like(1.0, false, 1.0, ZetaSpec::Value(1.0), QsMode::Exact),
            columns: vec![Z, Time(DB, As), Time(LightAd, As), QdB],
        },
        "fig3b" => ScanGrid {
            preset: None,
            axes: vec![
                Axis::list(AxisKind::Z, vec![10.0, 15.0, 17.0, 18.0, 20.0, 25.0, 30.0]),
                Axis::linear(AxisKind::FieldFraction, 0.01, 1.0, n),
            ],
            fixed: h_like(1.0, false, 1.0, ZetaSpec::Value(1.0), QsMode::Exact),
            columns: vec![Z, Field, WidthB, Time(DB, As), Time(LightAd, As)],
        },
        "fig4" => ScanGrid {
            preset: None,
            axes: vec![
                Axis::list(AxisKind::Z, vec![15.0, 30.0, 35.0, 40.0, 50.0]),
                Axis::linear(AxisKind::FieldFraction, 1.0 / n as f64, 1.0, n),
            ],
            fixed: h_like(1.0, false, 1.0, ZetaSpec::Value(0.0), QsMode::Exact),
            columns: vec![Z, Field, FieldFraction, FieldCritical, QNad],
        },
        "fig5a" => ScanGrid {
            preset: None,
            axes: vec![Axis::linear(AxisKind::Field, 0.01, 0.0625, n)],
            fixed: h_like(1.0, false, 0.05, ZetaSpec::Value(0.5), QsMode::Thick),
            columns: vec![Field, XExit, XTop, WidthImed],
        },
        "fig5b" => ScanGrid {
            preset: None,
            axes: vec![
                Axis::list(AxisKind::Z, vec![18.0, 20.0, 25.0, 30.0, 35.0, 50.0]),
                Axis::linear(AxisKind::Zeta, 0.0, 1.0, n),
            ],
            fixed: h_like(1.0, false, 1.0, ZetaSpec::Value(0.0), QsMode::Exact),
            columns: vec![Z, Zeta, QImedA],
        },
        "fig6a" => fig6_zeta_sweep(35.0)?,
        "fig6b" => fig6_field_sweep(35.0)?,
        "fig6c" => fig6_zeta_sweep(50.0)?,
        "fig6d" => fig6_field_sweep(50.0)?,
        "fig7" => ScanGrid {
            preset: None,
            axes: vec![Axis::list(AxisKind::Z, vec![35.0, 50.0, 100.0]), Axis::linear(AxisKind::Field, 0.5, 50.0, n)],
            fixed: h_like(1.0, false, 1.0, ZetaSpec::AboveSmallFieldRoot(FIG7_ZETA_OFFSET), QsMode::Exact),
            columns: vec![Z, Zeta, Field, Time(Imed, As), Time(LightImed, As), QImedB],
        },
        other => return Err(ScanError::UnknownPreset { name: other.to_string(), available: PRESETS.to_vec() }),
    };
    grid.preset = Some(name.to_string());
    Ok(grid)
}
