use attoqs_core::scan::ScanError;
use attoqs_core::ModelError;
use attoqs_tdse::error::TdseError;
use thiserror::Error;

/// CLI failure, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config file entries or unknown names.
    #[error("configuration error: {0}")]
    Config(String),
    /// Valid input outside the model's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Solver or propagation failure.
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_IO: i32 = 5;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::BarrierSuppression { field, f_a } => CliError::Domain(format!(
                "barrier-suppression regime: F = {} a.u. exceeds the atomic field F_a = {} a.u.; tunneling requires 0 < F <= {}",
                sig(field),
                sig(f_a),
                sig(f_a)
            )),
            ModelError::Root(r) => CliError::Numerical(r.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Model(m) => m.into(),
            ScanError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<TdseError> for CliError {
    fn from(e: TdseError) -> Self {
        match e {
            TdseError::InvalidGrid(_)
            | TdseError::InvalidPulse(_)
            | TdseError::InvalidParameter(_)
            | TdseError::MemoryGuard { .. } => CliError::Config(e.to_string()),
            TdseError::Io { .. } | TdseError::Checkpoint(_) => CliError::Io(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Six significant digits, trailing zeros kept so values read at a fixed
/// precision.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}
