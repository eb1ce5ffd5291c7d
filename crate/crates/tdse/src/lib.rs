pub mod bound;
pub mod channels;
pub mod error;
pub mod grid;
pub mod propagate;
pub mod pulse;
pub mod radial;
pub mod spectra;
pub mod state;
pub mod tridiag;
