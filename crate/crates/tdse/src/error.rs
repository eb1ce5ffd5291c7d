use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TdseError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid pulse: {0}")]
    InvalidPulse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigen-solve for (n={n}, l={l}) did not converge: residual {residual:.3e} after {iterations} iterations")]
    EigenNotConverged { n: usize, l: usize, residual: f64, iterations: usize },
    #[error("propagation failed at t = {time} (last good time {last_good}): defect {defect:.3e} after {iterations} iterations")]
    NotConverged { time: f64, last_good: f64, defect: f64, iterations: usize },
    #[error("non-finite amplitudes at t = {time} (last good time {last_good})")]
    NonFinite { time: f64, last_good: f64 },
    #[error("{channels} channels exceed the memory guard limit of {limit}; raise max_channels to proceed")]
    MemoryGuard { channels: usize, limit: usize },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("no signal: {0}")]
    NoSignal(String),
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl TdseError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        TdseError::Io { path: path.to_path_buf(), source }
    }
}
