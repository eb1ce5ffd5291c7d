//! Partial-wave channel set `(l, m)`, `0 <= l <= L_max`, `|m| <= l`.

/// Full channel set up to `l_max`. Channel `(l, m)` has index `l^2 + l + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channels {
    l_max: usize,
}

impl Channels {
    pub fn new(l_max: usize) -> Self {
        Self { l_max }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn len(&self) -> usize {
        (self.l_max + 1) * (self.l_max + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, l: usize, m: i64) -> Option<usize> {
        if l > self.l_max || m.unsigned_abs() as usize > l {
            return None;
        }
        Some(((l * l + l) as i64 + m) as usize)
    }

    pub fn lm(&self, index: usize) -> (usize, i64) {
        let l = index.isqrt();
        (l, index as i64 - (l * l + l) as i64)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> {
        let l_max = self.l_max;
        (0..=l_max).flat_map(|l| (-(l as i64)..=l as i64).map(move |m| (l, m)))
    }
}

/// `a(l, m) = sqrt((l+m+1)(l+m+2) / ((2l+1)(2l+3)))`: coefficient of the
/// `Y_{l+1, m+1}` term produced by `x + i y` acting on `Y_lm`.
pub fn coupling_a(l: i64, m: i64) -> f64 {
    let num = ((l + m + 1) * (l + m + 2)) as f64;
    let den = ((2 * l + 1) * (2 * l + 3)) as f64;
    (num / den).sqrt()
}
