//! Velocity-gauge time propagation.
//!
//! `H(t) = H_0 + A(t).p` with the `A^2` term dropped (it only contributes a
//! global phase). With `A_(+/-) = A_x +/- i A_y` the coupling is
//! `A.p = -(i/2) [A_- (d_x + i d_y) + A_+ (d_x - i d_y)]`, which links
//! `(l, m)` to `(l +/- 1, m +/- 1)` through the radial operators
//! `d/dr - (l+1)/r` and `d/dr + l/r` acting on the reduced functions.
//! The radial derivative is a central difference, so the discrete coupling
//! is exactly Hermitian.
//!
//! Each step is Crank-Nicolson on `H(t + dt/2)`,
//! `(1 + i tau H) psi' = (1 - i tau H) psi` with `tau = dt/2`, solved by a
//! fixed-point iteration preconditioned with the channel-diagonal part:
//!
//! ```text
//! (M + i tau K) x_{k+1} = (M - i tau K) psi - i tau M W (psi + x_k)
//! ```

use num_complex::Complex64;
use rayon::prelude::*;

use attoqs_core::AtomicSystem;

use crate::bound::{bound_state, BoundState};
use crate::channels::{coupling_a, Channels};
use crate::error::TdseError;
use crate::grid::RadialGrid;
use crate::pulse::Pulse;
use crate::radial::RadialOperators;
use crate::state::WavefunctionState;
use crate::tridiag::{TriLu, Tridiag};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 50;
/// `(100 + 1)^2`: the full channel set at `L_max = 100`.
pub const DEFAULT_MAX_CHANNELS: usize = 10_201;
/// Above this many stored amplitudes a run is flagged as not desk scale.
pub const DESK_SCALE_AMPLITUDES: usize = 4_000_000;
/// Population in the two highest `l` shells above which a run is flagged.
pub const TAIL_THRESHOLD: f64 = 1e-6;

/// `min(0.02, 0.02 / Z_eff^2)`.
pub fn default_dt(z_eff: f64) -> f64 {
    0.02f64.min(0.02 / (z_eff * z_eff))
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// `out += coef * (d/dr + k/r) u` with zero boundary values.
fn add_radial_derivative(out: &mut [Complex64], u: &[Complex64], coef: Complex64, k: f64, radii: &[f64], h: f64) {
    let n = u.len();
    let inv2h = 0.5 / h;
    for i in 0..n {
        let up = if i + 1 < n { u[i + 1] } else { C0 };
        let dn = if i > 0 { u[i - 1] } else { C0 };
        out[i] += coef * ((up - dn) * inv2h + u[i] * (k / radii[i]));
    }
}

/// `out = A.p src` over the full channel set.
pub fn apply_coupling(
    channels: &Channels,
    radii: &[f64],
    h: f64,
    a: (f64, f64),
    src: &[Vec<Complex64>],
    out: &mut [Vec<Complex64>],
) {
    let a_plus = Complex64::new(a.0, a.1);
    let a_minus = Complex64::new(a.0, -a.1);
    let half_i = Complex64::new(0.0, 0.5);
    let l_max = channels.l_max() as i64;
    out.par_iter_mut().enumerate().for_each(|(c, o)| {
        o.iter_mut().for_each(|z| *z = C0);
        let (l, m) = channels.lm(c);
        let l = l as i64;
        let idx = |l: i64, m: i64| channels.index(l as usize, m);
        if l >= 1 {
            let k = -(l as f64);
            if (m - 1).abs() < l {
                let coef = half_i * a_minus * coupling_a(l - 1, m - 1);
                add_radial_derivative(o, &src[idx(l - 1, m - 1).unwrap()], coef, k, radii, h);
            }
            if (m + 1).abs() < l {
                let coef = -half_i * a_plus * coupling_a(l - 1, -(m + 1));
                add_radial_derivative(o, &src[idx(l - 1, m + 1).unwrap()], coef, k, radii, h);
            }
        }
        if l < l_max {
            let k = (l + 1) as f64;
            let coef = half_i * a_plus * coupling_a(l, m);
            add_radial_derivative(o, &src[idx(l + 1, m + 1).unwrap()], coef, k, radii, h);
            let coef = -half_i * a_minus * coupling_a(l, -m);
            add_radial_derivative(o, &src[idx(l + 1, m - 1).unwrap()], coef, k, radii, h);
        }
    });
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats {
    pub iterations: usize,
    /// Relative size of the last fixed-point update.
    pub defect: f64,
}

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// One Crank-Nicolson stage; second order.
    CrankNicolson,
    /// Symmetric triple-jump composition of three Crank-Nicolson stages
    /// with weights `g1, g2, g1`, `g1 = 1/(2 - 2^(1/3))`,
    /// `g2 = 1 - 2 g1`; fourth order, still exactly unitary.
    TripleJump,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::CrankNicolson => "crank-nicolson",
            Scheme::TripleJump => "triple-jump",
        }
    }

    fn weights(self) -> Vec<f64> {
        match self {
            Scheme::CrankNicolson => vec![1.0],
            Scheme::TripleJump => {
                let g1 = 1.0 / (2.0 - 2f64.cbrt());
                vec![g1, 1.0 - 2.0 * g1, g1]
            }
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "crank-nicolson" | "cn" => Ok(Scheme::CrankNicolson),
            "triple-jump" => Ok(Scheme::TripleJump),
            other => Err(format!("unknown scheme '{other}' (expected crank-nicolson|triple-jump)")),
        }
    }
}

/// One Crank-Nicolson stage of length `h`, factored per `l`.
#[derive(Debug, Clone)]
struct Stage {
    h: f64,
    lhs: Vec<TriLu<Complex64>>,
    rhs: Vec<Tridiag<Complex64>>,
}

/// Implicit unitary stepper for one grid, charge, channel set and `dt`.
#[derive(Debug, Clone)]
pub struct Propagator {
    ops: RadialOperators,
    channels: Channels,
    dt: f64,
    scheme: Scheme,
    tol: f64,
    max_iter: usize,
    stages: Vec<Stage>,
}

impl Propagator {
    pub fn new(grid: RadialGrid, z_eff: f64, channels: Channels, dt: f64, scheme: Scheme) -> Result<Self, TdseError> {
        Self::with_tolerance(grid, z_eff, channels, dt, scheme, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
    }

    pub fn with_tolerance(
        grid: RadialGrid,
        z_eff: f64,
        channels: Channels,
        dt: f64,
        scheme: Scheme,
        tol: f64,
        max_iter: usize,
    ) -> Result<Self, TdseError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(TdseError::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        if !(tol > 0.0) || max_iter == 0 {
            return Err(TdseError::InvalidParameter("iteration tolerance and count must be positive".into()));
        }
        let ops = RadialOperators::new(grid, z_eff);
        let one = Complex64::new(1.0, 0.0);
        let mut stages = Vec::new();
        for w in scheme.weights() {
            let h = w * dt;
            let itau = Complex64::new(0.0, 0.5 * h);
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for l in 0..=channels.l_max() {
                let k = ops.k_matrix(l);
                let m = ops.mass(l);
                lhs.push(m.combine(one, &k, itau).factor().ok_or_else(|| {
                    TdseError::InvalidParameter(format!("singular Crank-Nicolson matrix for l = {l}"))
                })?);
                rhs.push(m.combine(one, &k, -itau));
            }
            stages.push(Stage { h, lhs, rhs });
        }
        Ok(Self { ops, channels, dt, scheme, tol, max_iter, stages })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn operators(&self) -> &RadialOperators {
        &self.ops
    }

    /// Advances `state` by one step in the field of `pulse`. On failure the
    /// state may hold a partially advanced stage and should be discarded.
    pub fn step(&self, state: &mut WavefunctionState, pulse: &Pulse) -> Result<StepStats, TdseError> {
        let t0 = state.time();
        let mut t = t0;
        let mut total = StepStats { iterations: 0, defect: 0.0 };
        for stage in &self.stages {
            let a = pulse.vector_potential(t + 0.5 * stage.h);
            let stats = self.stage_step(stage, state, a).map_err(|(defect, iterations)| TdseError::NotConverged {
                time: t0 + self.dt,
                last_good: t0,
                defect,
                iterations,
            })?;
            total.iterations = total.iterations.max(stats.iterations);
            total.defect = total.defect.max(stats.defect);
            t += stage.h;
        }
        state.set_time(t0 + self.dt);
        Ok(total)
    }

    /// One step with a constant vector potential; on failure returns
    /// `(defect, iterations)`.
    pub fn step_with_potential(&self, state: &mut WavefunctionState, a: (f64, f64)) -> Result<StepStats, (f64, usize)> {
        let mut total = StepStats { iterations: 0, defect: 0.0 };
        for stage in &self.stages {
            let stats = self.stage_step(stage, state, a)?;
            total.iterations = total.iterations.max(stats.iterations);
            total.defect = total.defect.max(stats.defect);
        }
        Ok(total)
    }

    fn stage_step(
        &self,
        stage: &Stage,
        state: &mut WavefunctionState,
        a: (f64, f64),
    ) -> Result<StepStats, (f64, usize)> {
        let ch = &self.channels;
        let psi = state.data();
        let rhs0: Vec<Vec<Complex64>> = psi
            .par_iter()
            .enumerate()
            .map(|(c, u)| {
                let mut y = vec![C0; u.len()];
                stage.rhs[ch.lm(c).0].apply(u, &mut y);
                y
            })
            .collect();
        if a == (0.0, 0.0) {
            let mut x = rhs0;
            x.par_iter_mut().enumerate().for_each(|(c, y)| stage.lhs[ch.lm(c).0].solve_in_place(y));
            state.data_mut().clone_from_slice(&x);
            return Ok(StepStats { iterations: 1, defect: 0.0 });
        }
        let radii = self.ops.radii();
        let h = self.ops.grid().dr();
        let itau = Complex64::new(0.0, 0.5 * stage.h);
        let mut x: Vec<Vec<Complex64>> = psi.to_vec();
        let mut sum = x.clone();
        let mut w = x.clone();
        let mut defect = f64::INFINITY;
        for iteration in 1..=self.max_iter {
            sum.par_iter_mut().zip(psi.par_iter().zip(&x)).for_each(|(s, (p, xk))| {
                for ((s, p), xk) in s.iter_mut().zip(p).zip(xk) {
                    *s = p + xk;
                }
            });
            apply_coupling(ch, radii, h, a, &sum, &mut w);
            let parts: Vec<(f64, f64)> = x
                .par_iter_mut()
                .zip(w.par_iter())
                .zip(rhs0.par_iter())
                .enumerate()
                .map(|(c, ((xc, wc), r0))| {
                    let l = ch.lm(c).0;
                    let mut y = vec![C0; wc.len()];
                    self.ops.mass(l).apply(wc, &mut y);
                    for (yi, ri) in y.iter_mut().zip(r0) {
                        *yi = ri - itau * *yi;
                    }
                    stage.lhs[l].solve_in_place(&mut y);
                    let mut d = 0.0;
                    let mut s = 0.0;
                    for (old, new) in xc.iter().zip(&y) {
                        d += (new - old).norm_sqr();
                        s += new.norm_sqr();
                    }
                    *xc = y;
                    (d, s)
                })
                .collect();
            // Sequential sum keeps the result independent of thread count.
            let (diff, size) = parts.iter().fold((0.0, 0.0), |p, q| (p.0 + q.0, p.1 + q.1));
            defect = (diff / size.max(f64::MIN_POSITIVE)).sqrt();
            if !defect.is_finite() {
                return Err((defect, iteration));
            }
            if defect <= self.tol {
                state.data_mut().clone_from_slice(&x);
                return Ok(StepStats { iterations: iteration, defect });
            }
        }
        Err((defect, self.max_iter))
    }
}

/// 1s state of `-Z_eff/r` on `grid`, placed in channel `(0, 0)`.
pub fn build_ground_state(
    system: &AtomicSystem,
    grid: RadialGrid,
    channels: Channels,
) -> Result<(WavefunctionState, BoundState), TdseError> {
    let ops = RadialOperators::new(grid, system.z_eff());
    let gs = bound_state(&ops, 1, 0)?;
    let state = WavefunctionState::from_channel(grid, channels, 0, 0, &gs.u)?;
    Ok((state, gs))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Requested step; `None` uses [`default_dt`]. The step actually used
    /// divides the pulse duration evenly and is never larger.
    pub dt: Option<f64>,
    pub scheme: Scheme,
    pub tol: f64,
    pub max_iter: usize,
    pub max_channels: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            dt: None,
            scheme: Scheme::TripleJump,
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
            max_channels: DEFAULT_MAX_CHANNELS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub state: WavefunctionState,
    pub ground_energy: f64,
    pub dt: f64,
    pub steps: usize,
    pub norm_initial: f64,
    pub norm_final: f64,
    /// Largest `|norm(t) - norm(0)|` seen during the run.
    pub max_norm_drift: f64,
    /// Population in the two highest `l` shells at the end.
    pub tail_population: f64,
    pub max_iterations: usize,
    pub desk_scale: bool,
    pub warnings: Vec<String>,
}

/// Memory-guard and desk-scale check for a configuration.
pub fn check_size(grid: &RadialGrid, l_max: usize, max_channels: usize) -> Result<bool, TdseError> {
    let channels = Channels::new(l_max).len();
    if channels > max_channels {
        return Err(TdseError::MemoryGuard { channels, limit: max_channels });
    }
    Ok(channels * grid.len() <= DESK_SCALE_AMPLITUDES)
}

/// Propagates the ground state through the whole pulse.
pub fn run_pulse(
    system: &AtomicSystem,
    grid: RadialGrid,
    pulse: &Pulse,
    l_max: usize,
    options: RunOptions,
) -> Result<RunReport, TdseError> {
    let desk_scale = check_size(&grid, l_max, options.max_channels)?;
    let z_eff = system.z_eff();
    let channels = Channels::new(l_max);
    let mut warnings = Vec::new();
    if !desk_scale {
        warnings.push(format!("not desk scale: {} channels x {} radial points", channels.len(), grid.len()));
    }
    if !grid.resolves(z_eff) {
        warnings.push(format!("dr = {} exceeds the recommended 0.2/Z_eff = {}", grid.dr(), 0.2 / z_eff));
    }
    let requested = options.dt.unwrap_or_else(|| default_dt(z_eff));
    if !(requested.is_finite() && requested > 0.0) {
        return Err(TdseError::InvalidParameter(format!("dt must be positive, got {requested}")));
    }
    let duration = pulse.duration();
    let steps = (duration / requested).ceil().max(1.0) as usize;
    let dt = duration / steps as f64;
    let prop = Propagator::with_tolerance(grid, z_eff, channels, dt, options.scheme, options.tol, options.max_iter)?;
    let (mut state, gs) = build_ground_state(system, grid, channels)?;
    let norm_initial = state.norm_sqr();
    let mut max_norm_drift: f64 = 0.0;
    let mut max_iterations = 0;
    for k in 0..steps {
        // Pin the clock to the step grid to avoid accumulated rounding.
        state.set_time(k as f64 * dt);
        let stats = prop.step(&mut state, pulse)?;
        max_iterations = max_iterations.max(stats.iterations);
        let norm = state.norm_sqr();
        if !norm.is_finite() {
            return Err(TdseError::NonFinite { time: state.time(), last_good: k as f64 * dt });
        }
        max_norm_drift = max_norm_drift.max((norm - norm_initial).abs());
    }
    state.set_time(duration);
    let lp = state.l_populations();
    let tail_population: f64 = lp.iter().rev().take(2).sum();
    if tail_population >= TAIL_THRESHOLD {
        warnings.push(format!(
            "partial-wave expansion not converged: population {tail_population:.3e} in l >= {} (threshold {TAIL_THRESHOLD:e})",
            l_max.saturating_sub(1)
        ));
    }
    let norm_final = state.norm_sqr();
    Ok(RunReport {
        state,
        ground_energy: gs.energy,
        dt,
        steps,
        norm_initial,
        norm_final,
        max_norm_drift,
        tail_population,
        max_iterations,
        desk_scale,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_state(grid: RadialGrid, channels: Channels, seed: u64) -> WavefunctionState {
        let mut s = WavefunctionState::zeros(grid, channels);
        let mut x = seed;
        for row in s.data_mut() {
            for z in row.iter_mut() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                *z = Complex64::new(a, b);
            }
        }
        s
    }

    #[test]
    fn coupling_is_hermitian() {
        let grid = RadialGrid::new(0.2, 6.0).unwrap();
        let ch = Channels::new(3);
        let x = random_state(grid, ch, 1);
        let y = random_state(grid, ch, 2);
        let radii = grid.radii();
        let a = (0.7, -0.4);
        let mut wx = x.clone();
        let mut wy = y.clone();
        apply_coupling(&ch, &radii, grid.dr(), a, x.data(), wx.data_mut());
        apply_coupling(&ch, &radii, grid.dr(), a, y.data(), wy.data_mut());
        let lhs = y.overlap(&wx).unwrap();
        let rhs = wy.overlap(&x).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn parity_of_l_plus_m_is_preserved() {
        // Every coupling changes l and m by one each, so channels with odd
        // l + m stay exactly empty when starting from (0, 0).
        let grid = RadialGrid::new(0.1, 20.0).unwrap();
        let ch = Channels::new(4);
        let sys = AtomicSystem::hydrogenic(1.0, false).unwrap();
        let (mut s, _) = build_ground_state(&sys, grid, ch).unwrap();
        let prop = Propagator::new(grid, 1.0, ch, 0.02, Scheme::CrankNicolson).unwrap();
        for _ in 0..20 {
            prop.step_with_potential(&mut s, (0.3, 0.2)).unwrap();
        }
        for (c, (l, m)) in ch.iter().enumerate() {
            let p = s.channel_population(c);
            if (l as i64 + m) % 2 != 0 {
                assert_eq!(p, 0.0, "({l},{m})");
            }
        }
    }

    #[test]
    fn step_is_unitary() {
        let grid = RadialGrid::new(0.1, 15.0).unwrap();
        let ch = Channels::new(3);
        let mut s = random_state(grid, ch, 7);
        let n0 = s.norm_sqr();
        let prop = Propagator::new(grid, 1.0, ch, 0.01, Scheme::TripleJump).unwrap();
        for _ in 0..10 {
            prop.step_with_potential(&mut s, (0.5, 0.5)).unwrap();
        }
        assert!(((s.norm_sqr() - n0) / n0).abs() < 1e-8);
    }

    #[test]
    fn memory_guard() {
        let grid = RadialGrid::new(0.1, 400.0).unwrap();
        assert!(matches!(check_size(&grid, 100, DEFAULT_MAX_CHANNELS), Ok(false)));
        let err = check_size(&grid, 101, DEFAULT_MAX_CHANNELS).unwrap_err();
        assert!(err.to_string().contains("10404") && err.to_string().contains("10201"));
        assert!(matches!(check_size(&RadialGrid::new(0.1, 60.0).unwrap(), 8, 100), Ok(true)));
    }

    #[test]
    fn default_step_scales_with_charge() {
        assert_eq!(default_dt(1.0), 0.02);
        assert!((default_dt(18.0) - 0.02 / 324.0).abs() < 1e-18);
    }
}
