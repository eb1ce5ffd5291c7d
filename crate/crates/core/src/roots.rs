//! Bracketing root finder used for critical fields and degenerate
//! `zeta_QS` cases.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change on [{a}, {b}]: f(a) = {fa}, f(b) = {fb}")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("function returned a non-finite value {fx} at x = {x}")]
    NotFinite { x: f64, fx: f64 },
    #[error("no convergence after {iterations} iterations (bracket width {width})")]
    MaxIterations { iterations: usize, width: f64 },
}

/// Bisection on `[a, b]`, stopping when the bracket is narrower than
/// `xtol` (absolute) or an exact zero is hit.
pub fn bisect<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let fhi = f(hi);
    for (x, fx) in [(lo, flo), (hi, fhi)] {
        if fx.is_nan() {
            return Err(RootError::NotFinite { x, fx });
        }
        if fx == 0.0 {
            return Ok(x);
        }
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoSignChange { a: lo, b: hi, fa: flo, fb: fhi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(RootError::NotFinite { x: mid, fx: fm });
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(RootError::MaxIterations { iterations: max_iter, width: hi - lo })
}
