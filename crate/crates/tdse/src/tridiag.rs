//! Tridiagonal matrices and pivot-free LU (Thomas) solves.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// `n x n` tridiagonal matrix. `lower[0]` and `upper[n-1]` are unused.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiag<T> {
    pub lower: Vec<T>,
    pub diag: Vec<T>,
    pub upper: Vec<T>,
}

impl<T: Scalar> Tridiag<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `y = self * x` for any scalar vector type compatible with `T`.
    pub fn apply<U>(&self, x: &[U], y: &mut [U])
    where
        U: Scalar + Mul<T, Output = U>,
    {
        let n = self.len();
        debug_assert_eq!(x.len(), n);
        if n == 1 {
            y[0] = x[0] * self.diag[0];
            return;
        }
        y[0] = x[0] * self.diag[0] + x[1] * self.upper[0];
        for i in 1..n - 1 {
            y[i] = x[i - 1] * self.lower[i] + x[i] * self.diag[i] + x[i + 1] * self.upper[i];
        }
        y[n - 1] = x[n - 2] * self.lower[n - 1] + x[n - 1] * self.diag[n - 1];
    }

    /// `a * self + b * other` with scalar coefficients in `S`.
    pub fn combine<S: Scalar + Mul<T, Output = S>>(&self, a: S, other: &Tridiag<T>, b: S) -> Tridiag<S> {
        let mix = |p: &[T], q: &[T]| p.iter().zip(q).map(|(&x, &y)| a * x + b * y).collect();
        Tridiag {
            lower: mix(&self.lower, &other.lower),
            diag: mix(&self.diag, &other.diag),
            upper: mix(&self.upper, &other.upper),
        }
    }

    pub fn factor(&self) -> Option<TriLu<T>> {
        TriLu::new(self)
    }
}

/// Stored forward-elimination factors of a tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TriLu<T> {
    lower: Vec<T>,
    inv_pivot: Vec<T>,
    upper_mod: Vec<T>,
}

impl<T: Scalar> TriLu<T> {
    /// Returns `None` on a (near-)zero pivot.
    pub fn new(m: &Tridiag<T>) -> Option<Self> {
        let n = m.len();
        let mut inv_pivot = Vec::with_capacity(n);
        let mut upper_mod = Vec::with_capacity(n);
        let scale = m.diag.iter().map(|d| d.modulus()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let mut prev_c = T::zero();
        for i in 0..n {
            let pivot = if i == 0 { m.diag[0] } else { m.diag[i] - m.lower[i] * prev_c };
            if !(pivot.modulus() > 1e-300 * scale) || !pivot.modulus().is_finite() {
                return None;
            }
            let ip = T::one() / pivot;
            inv_pivot.push(ip);
            prev_c = if i + 1 < n { m.upper[i] * ip } else { T::zero() };
            upper_mod.push(prev_c);
        }
        Some(Self { lower: m.lower.clone(), inv_pivot, upper_mod })
    }

    /// Solves in place: `x <- M^{-1} x`.
    pub fn solve_in_place<U>(&self, x: &mut [U])
    where
        U: Scalar + Mul<T, Output = U>,
    {
        let n = self.inv_pivot.len();
        x[0] = x[0] * self.inv_pivot[0];
        for i in 1..n {
            x[i] = (x[i] - x[i - 1] * self.lower[i]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            x[i] = x[i] - x[i + 1] * self.upper_mod[i];
        }
    }
}
