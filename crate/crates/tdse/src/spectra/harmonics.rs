//! Spherical harmonics with the Condon-Shortley phase.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Orthonormalized associated Legendre values `N_lm P_l^m(x)` for
/// `0 <= m <= l <= l_max`, indexed `[l][m]`.
pub fn normalized_legendre(l_max: usize, x: f64) -> Vec<Vec<f64>> {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut out: Vec<Vec<f64>> = (0..=l_max).map(|l| vec![0.0; l + 1]).collect();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for m in 0..=l_max {
        if m > 0 {
            pmm *= -s * ((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
        }
        out[m][m] = pmm;
        if m < l_max {
            out[m + 1][m] = x * ((2 * m + 3) as f64).sqrt() * pmm;
        }
        for l in m + 2..=l_max {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
            out[l][m] = a * (x * out[l - 1][m] - b * out[l - 2][m]);
        }
    }
    out
}

/// `Y_lm(theta, phi)`.
pub fn spherical_harmonic(l: usize, m: i64, theta: f64, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs() as usize;
    if ma > l {
        return Complex64::new(0.0, 0.0);
    }
    let p = normalized_legendre(l, theta.cos())[l][ma];
    let y = Complex64::from_polar(p, ma as f64 * phi);
    if m < 0 {
        let sign = if ma.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * y.conj()
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let (t, p) = (0.7, 1.9);
        let y00 = spherical_harmonic(0, 0, t, p);
        assert!((y00.re - 0.5 / PI.sqrt()).abs() < 1e-15);
        let y11 = spherical_harmonic(1, 1, t, p);
        let expect = -(3.0 / (8.0 * PI)).sqrt() * t.sin() * Complex64::from_polar(1.0, p);
        assert!((y11 - expect).norm() < 1e-15);
        let y1m1 = spherical_harmonic(1, -1, t, p);
        let expect = (3.0 / (8.0 * PI)).sqrt() * t.sin() * Complex64::from_polar(1.0, -p);
        assert!((y1m1 - expect).norm() < 1e-15);
        let y20 = spherical_harmonic(2, 0, t, p);
        let expect = (5.0 / (16.0 * PI)).sqrt() * (3.0 * t.cos().powi(2) - 1.0);
        assert!((y20.re - expect).abs() < 1e-15);
        let y22 = spherical_harmonic(2, 2, t, p);
        let expect = 0.25 * (15.0 / (2.0 * PI)).sqrt() * t.sin().powi(2) * Complex64::from_polar(1.0, 2.0 * p);
        assert!((y22 - expect).norm() < 1e-15);
        let y32 = spherical_harmonic(3, 2, t, p);
        let expect =
            0.25 * (105.0 / (2.0 * PI)).sqrt() * t.sin().powi(2) * t.cos() * Complex64::from_polar(1.0, 2.0 * p);
        assert!((y32 - expect).norm() < 1e-14);
    }

    #[test]
    fn orthonormal_on_sphere() {
        // Gauss-Legendre-free check: midpoint rule in cos(theta), fine grid.
        let n = 400;
        let l_max = 4;
        let mut gram = vec![vec![Complex64::new(0.0, 0.0); 25]; 25];
        let lm: Vec<(usize, i64)> = (0..=l_max).flat_map(|l| (-(l as i64)..=l as i64).map(move |m| (l, m))).collect();
        for i in 0..n {
            let x = -1.0 + (i as f64 + 0.5) * 2.0 / n as f64;
            let theta = x.acos();
            for j in 0..2 * n {
                let phi = (j as f64 + 0.5) * PI / n as f64;
                let w = (2.0 / n as f64) * (PI / n as f64);
                let ys: Vec<Complex64> = lm.iter().map(|&(l, m)| spherical_harmonic(l, m, theta, phi)).collect();
                for a in 0..lm.len() {
                    for b in 0..lm.len() {
                        gram[a][b] += w * ys[a].conj() * ys[b];
                    }
                }
            }
        }
        for a in 0..lm.len() {
            for b in 0..lm.len() {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((gram[a][b] - expect).norm() < 1e-3, "{:?} {:?}: {}", lm[a], lm[b], gram[a][b]);
            }
        }
    }
}
