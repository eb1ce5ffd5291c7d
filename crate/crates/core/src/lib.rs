//! Tunnel-ionization time-delay model for hydrogen-like atoms.
//!
//! All quantities are in atomic units (hbar = m_e = e = 1) unless a name
//! says otherwise; `*_as` values are attoseconds.
//!
//! * [`atomic`]: system parameters, barrier geometry and the closed-form
//!   delays (ionization, barrier, back-reaction, photon-absorption).
//! * [`superluminal`]: light-travel comparators, the superluminality
//!   quotients, the intermediate (mixed channel) model, `zeta_QS` roots and
//!   critical field strengths.
//! * [`scan`]: parameter sweeps over `(Z, F, zeta)` and the figure presets,
//!   with CSV/JSON emission.

pub mod atomic;
pub mod constants;
pub mod error;
pub mod roots;
pub mod scan;
pub mod superluminal;

pub use atomic::{AtomicSystem, BarrierGeometry, DelaySet, PhotonAbsorption};
pub use error::ModelError;
pub use superluminal::{CriticalFields, IntermediateState, QsMode, QsReport, ZetaMode, ZetaRoot};
