use crate::error::TdseError;

/// Uniform radial grid on `(0, r_max)`.
///
/// The reduced radial functions vanish at both ends, so only the interior
/// points `r_i = i*dr`, `i = 1..n_points-1`, are stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    dr: f64,
    r_max: f64,
    n_points: usize,
}

impl RadialGrid {
    /// `r_max` must be an integer multiple of `dr` (to 1e-9 relative).
    pub fn new(dr: f64, r_max: f64) -> Result<Self, TdseError> {
        if !(dr.is_finite() && dr > 0.0) {
            return Err(TdseError::InvalidGrid(format!("dr must be positive and finite, got {dr}")));
        }
        if !(r_max.is_finite() && r_max > dr) {
            return Err(TdseError::InvalidGrid(format!("r_max must exceed dr = {dr}, got {r_max}")));
        }
        let n = (r_max / dr).round();
        if (n * dr - r_max).abs() > 1e-9 * r_max {
            return Err(TdseError::InvalidGrid(format!("r_max = {r_max} is not a multiple of dr = {dr}")));
        }
        if n < 3.0 {
            return Err(TdseError::InvalidGrid("grid needs at least two interior points".into()));
        }
        Ok(Self { dr, r_max, n_points: n as usize })
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// `r_max / dr`.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of stored (interior) points.
    pub fn len(&self) -> usize {
        self.n_points - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Radius of stored point `i` (0-based), i.e. `(i + 1) * dr`.
    pub fn r(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.dr
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.r(i)).collect()
    }

    /// Whether the step resolves a 1s orbital of charge `z_eff`.
    pub fn resolves(&self, z_eff: f64) -> bool {
        self.dr <= 0.2 / z_eff
    }
}
