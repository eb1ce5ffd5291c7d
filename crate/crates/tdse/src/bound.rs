//! Bound eigenstates of the discrete radial Hamiltonian `K u = E M u`.

use crate::error::TdseError;
use crate::radial::RadialOperators;
use crate::tridiag::Tridiag;

const MAX_ITER: usize = 500;
const RESIDUAL_TOL: f64 = 1e-9;
#[derive(Debug, Clone)]
pub struct BoundState {
    pub n: usize,
    pub l: usize,
    pub energy: f64,
    /// Reduced radial function, normalized to `dr * sum u^2 = 1`, positive
    /// near the origin.
    pub u: Vec<f64>,
    /// `|| H u - E u ||`.
    pub residual: f64,
}

/// Number of eigenvalues of `H_l` below `e`: the inertia of the
/// congruent symmetric pentadiagonal matrix
/// `M (H_l - e) M = -1/2 D2 M + M (V_l - e) M`, read off its LDL^T pivots.
pub fn count_below(ops: &RadialOperators, l: usize, e: f64) -> usize {
    let d2 = ops.laplacian(l);
    let m = ops.mass(l);
    let n = d2.diag.len();
    let w: Vec<f64> = ops.potential(l).iter().map(|v| v - e).collect();
    let mw = Tridiag {
        lower: (0..n).map(|i| if i > 0 { m.lower[i] * w[i - 1] } else { 0.0 }).collect(),
        diag: (0..n).map(|i| m.diag[i] * w[i]).collect(),
        upper: (0..n).map(|i| if i + 1 < n { m.upper[i] * w[i + 1] } else { 0.0 }).collect(),
    };
    let (a0, a1, a2) = upper_bands(d2, m);
    let (c0, c1, c2) = upper_bands(&mw, m);
    let mut count = 0;
    let (mut d_1, mut d_2) = (0.0, 0.0);
    let (mut l1_1, mut l2_1, mut l2_2) = (0.0, 0.0, 0.0);
    for j in 0..n {
        let s0 = -0.5 * a0[j] + c0[j];
        let mut d = s0 - l1_1 * l1_1 * d_1 - l2_2 * l2_2 * d_2;
        if d == 0.0 {
            d = -f64::EPSILON * s0.abs().max(1.0);
        }
        if d < 0.0 {
            count += 1;
        }
        let s1 = -0.5 * a1[j] + c1[j];
        let s2 = -0.5 * a2[j] + c2[j];
        let l1 = (s1 - l2_1 * l1_1 * d_1) / d;
        let l2 = s2 / d;
        d_2 = d_1;
        d_1 = d;
        l1_1 = l1;
        l2_2 = l2_1;
        l2_1 = l2;
    }
    count
}

/// Diagonal, first and second superdiagonal of the product of two
/// tridiagonal matrices.
fn upper_bands(a: &Tridiag<f64>, b: &Tridiag<f64>) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = a.diag.len();
    let mut c0 = vec![0.0; n];
    let mut c1 = vec![0.0; n];
    let mut c2 = vec![0.0; n];
    for i in 0..n {
        c0[i] = a.diag[i] * b.diag[i];
        if i > 0 {
            c0[i] += a.lower[i] * b.upper[i - 1];
        }
        if i + 1 < n {
            c0[i] += a.upper[i] * b.lower[i + 1];
            c1[i] = a.diag[i] * b.upper[i] + a.upper[i] * b.diag[i + 1];
        }
        if i + 2 < n {
            c2[i] = a.upper[i] * b.upper[i + 1];
        }
    }
    (c0, c1, c2)
}

/// The lowest `max_states` negative-energy eigenstates of `H_l`, located
/// by bisection on the Sturm count and refined by inverse iteration.
pub fn bound_spectrum(ops: &RadialOperators, l: usize, max_states: usize) -> Result<Vec<BoundState>, TdseError> {
    let z = ops.charge();
    if z <= 0.0 {
        return Err(TdseError::InvalidParameter("bound states need a positive charge".into()));
    }
    let count = count_below(ops, l, 0.0).min(max_states);
    let mut floor = -z * z;
    while count_below(ops, l, floor) > 0 {
        floor *= 2.0;
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (mut lo, mut hi) = (floor, 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if count_below(ops, l, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-14 * lo.abs().max(1e-3) {
                break;
            }
        }
        let sigma = lo - 1e-9 * lo.abs().max(1e-3);
        out.push(refine(ops, l + 1 + k, l, sigma)?);
    }
    Ok(out)
}

fn refine(ops: &RadialOperators, n: usize, l: usize, sigma: f64) -> Result<BoundState, TdseError> {
    let k = ops.k_matrix(l);
    let m = ops.mass(l);
    let shifted = Tridiag {
        lower: k.lower.iter().zip(&m.lower).map(|(a, b)| a - sigma * b).collect(),
        diag: k.diag.iter().zip(&m.diag).map(|(a, b)| a - sigma * b).collect(),
        upper: k.upper.iter().zip(&m.upper).map(|(a, b)| a - sigma * b).collect(),
    };
    let lu = shifted.factor().ok_or(TdseError::EigenNotConverged { n, l, residual: f64::NAN, iterations: 0 })?;
    let mut u: Vec<f64> = ops.radii().iter().map(|&r| r.powi(l as i32 + 1) / (1.0 + r.powi(l as i32 + 1))).collect();
    normalize(ops, &mut u);
    let mut residual = f64::INFINITY;
    let mut tmp = vec![0.0; u.len()];
    for _ in 0..MAX_ITER {
        m.apply(&u, &mut tmp);
        lu.solve_in_place(&mut tmp);
        std::mem::swap(&mut u, &mut tmp);
        normalize(ops, &mut u);
        let hu = ops.apply_hamiltonian(l, &u);
        let energy = ops.dot(&u, &hu);
        let defect: Vec<f64> = hu.iter().zip(&u).map(|(h, x)| h - energy * x).collect();
        residual = ops.dot(&defect, &defect).sqrt();
        if residual <= RESIDUAL_TOL * energy.abs().max(1.0) {
            let sign = u.iter().find(|x| x.abs() > 1e-12).map_or(1.0, |x| x.signum());
            u.iter_mut().for_each(|x| *x *= sign);
            return Ok(BoundState { n, l, energy, u, residual });
        }
    }
    Err(TdseError::EigenNotConverged { n, l, residual, iterations: MAX_ITER })
}

/// The `(n, l)` eigenstate, counting `n - l - 1` radial nodes.
pub fn bound_state(ops: &RadialOperators, n: usize, l: usize) -> Result<BoundState, TdseError> {
    if n == 0 || l >= n {
        return Err(TdseError::InvalidParameter(format!("need 0 <= l < n, got n={n}, l={l}")));
    }
    bound_spectrum(ops, l, n - l)?
        .pop()
        .filter(|s| s.n == n)
        .ok_or_else(|| TdseError::InvalidParameter(format!("level (n={n}, l={l}) is not bound on this grid")))
}

fn normalize(ops: &RadialOperators, u: &mut [f64]) {
    let norm = ops.dot(u, u).sqrt();
    u.iter_mut().for_each(|x| *x /= norm);
}

/// All negative-energy states with `n <= n_max` and `l <= l_max`. Levels
/// pushed above threshold by the box are absent.
pub fn bound_states(ops: &RadialOperators, n_max: usize, l_max: usize) -> Result<Vec<BoundState>, TdseError> {
    let mut out = Vec::new();
    for l in 0..=l_max.min(n_max.saturating_sub(1)) {
        out.extend(bound_spectrum(ops, l, n_max - l)?);
    }
    Ok(out)
}
