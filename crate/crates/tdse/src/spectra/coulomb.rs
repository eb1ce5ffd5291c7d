//! Coulomb phase shifts and energy-normalized continuum waves on the
//! Numerov grid.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::TdseError;
use crate::radial::RadialOperators;

/// `Im ln Gamma(w)` by Stirling's series; accurate for `Re w >= 10`.
fn ln_gamma_imag(w: Complex64) -> f64 {
    let w2 = w * w;
    let w3 = w2 * w;
    let w5 = w3 * w2;
    let w7 = w5 * w2;
    let series = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * w) - 1.0 / (360.0 * w3)
        + 1.0 / (1260.0 * w5)
        - 1.0 / (1680.0 * w7);
    series.im
}

/// `sigma_l = arg Gamma(l + 1 + i eta)` for `l = 0..=l_max` (continuous
/// branch, not reduced modulo `2 pi`).
pub fn coulomb_phases(l_max: usize, eta: f64) -> Vec<f64> {
    const SHIFT: usize = 10;
    let mut sigma0 = ln_gamma_imag(Complex64::new((SHIFT + 1) as f64, eta));
    for k in 1..=SHIFT {
        sigma0 -= (eta / k as f64).atan();
    }
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(sigma0);
    for l in 0..l_max {
        let next = out[l] + (eta / (l + 1) as f64).atan();
        out.push(next);
    }
    out
}

/// Outer radius for continuum normalization: `clamp(400/p, r_max, 5000)`.
pub fn normalization_radius(p: f64, r_max: f64) -> f64 {
    (400.0 / p).clamp(r_max, 5000.0_f64.max(r_max))
}

/// Energy-normalized regular continuum function `u_{E,l}(r)` of the same
/// discrete equation the propagator uses, sampled on the stored grid.
///
/// The discrete recurrence is continued past `r_max` to the normalization
/// radius, where the local amplitude follows from two consecutive values
/// and the Numerov dispersion relation, corrected to `r -> infinity` with
/// the WKB factor `sqrt(k(r)/p)`. Asymptotically
/// `u -> sqrt(2/(pi p)) sin(p r - l pi/2 + ...)`.
pub fn continuum_wave(ops: &RadialOperators, l: usize, p: f64) -> Result<Vec<f64>, TdseError> {
    if !(p.is_finite() && p > 0.0) {
        return Err(TdseError::InvalidParameter(format!("continuum momentum must be > 0, got {p}")));
    }
    let grid = ops.grid();
    let h = grid.dr();
    let n_grid = grid.len();
    let r_far = normalization_radius(p, grid.r_max());
    let n_far = ((r_far / h).ceil() as usize).max(n_grid + 2);
    let energy = 0.5 * p * p;
    let mut stored = vec![0.0; n_grid];
    // u at index i-1 (r = i h) and i (r = (i+1) h); u(0) = 0.
    let mut prev = 0.0;
    let mut cur = 1e-20;
    let mut g_prev = 0.0;
    let mut g_cur = (ops.potential_at(l, h) - energy) * cur;
    stored[0] = cur;
    let mut i = 0usize;
    loop {
        let (d, m) = ops.row(l, i);
        let r_next = (i + 2) as f64 * h;
        let w_next = ops.potential_at(l, r_next) - energy;
        let num = 0.5 * (d[0] * prev + d[1] * cur) - m[0] * g_prev - m[1] * g_cur;
        let den = -0.5 * d[2] + m[2] * w_next;
        let next = num / den;
        prev = cur;
        cur = next;
        g_prev = g_cur;
        g_cur = w_next * cur;
        i += 1;
        if i < n_grid {
            stored[i] = cur;
        }
        if cur.abs() > 1e150 {
            let s = 1e-150;
            prev *= s;
            cur *= s;
            g_prev *= s;
            g_cur *= s;
            let upto = (i + 1).min(n_grid);
            stored[..upto].iter_mut().for_each(|x| *x *= s);
        }
        if i + 1 >= n_far {
            break;
        }
    }
    // prev at r_a = i h, cur at r_a + h.
    let r_a = i as f64 * h + 0.5 * h;
    let k2 = 2.0 * (energy - ops.potential_at(l, r_a));
    if k2 <= 0.0 {
        return Err(TdseError::InvalidParameter(format!(
            "normalization radius {r_a} is inside the centrifugal barrier for l = {l}, p = {p}"
        )));
    }
    let x = h * h * k2 / 12.0;
    let cos_kh = (1.0 - 5.0 * x) / (1.0 + x);
    let sin2 = 1.0 - cos_kh * cos_kh;
    if !(sin2 > 0.0) {
        return Err(TdseError::InvalidParameter(format!("p = {p} is beyond the grid's Nyquist limit")));
    }
    let amp2 = (prev * prev + cur * cur - 2.0 * prev * cur * cos_kh) / sin2;
    let amp_inf = amp2.sqrt() * (k2.sqrt() / p).sqrt();
    let norm = (2.0 / (PI * p)).sqrt() / amp_inf;
    if !norm.is_finite() {
        return Err(TdseError::InvalidParameter(format!("continuum normalization failed for l = {l}, p = {p}")));
    }
    stored.iter_mut().for_each(|x| *x *= norm);
    Ok(stored)
}
