//! Partial-wave wavefunction and its binary checkpoint format.
//!
//! Layout (all little-endian):
//!
//! ```text
//! magic      8 bytes  "ATQSWF\0\0"
//! version    u32
//! dr, r_max  f64, f64
//! time       f64
//! n_channels u32, then (l: u32, m: i32) per channel
//! n_radial   u32
//! amplitudes (re, im) f64 pairs, channel-major
//! ```

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::channels::Channels;
use crate::error::TdseError;
use crate::grid::RadialGrid;

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"ATQSWF\0\0";
pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionState {
    grid: RadialGrid,
    channels: Channels,
    time: f64,
    /// `data[c][i]`: reduced radial amplitude of channel `c` at grid point `i`.
    data: Vec<Vec<Complex64>>,
}

impl WavefunctionState {
    pub fn zeros(grid: RadialGrid, channels: Channels) -> Self {
        let data = vec![vec![Complex64::new(0.0, 0.0); grid.len()]; channels.len()];
        Self { grid, channels, time: 0.0, data }
    }

    /// State with a single real radial function in channel `(l, m)`.
    pub fn from_channel(grid: RadialGrid, channels: Channels, l: usize, m: i64, u: &[f64]) -> Result<Self, TdseError> {
        let idx = channels
            .index(l, m)
            .ok_or_else(|| TdseError::Mismatch(format!("channel ({l},{m}) outside L_max = {}", channels.l_max())))?;
        if u.len() != grid.len() {
            return Err(TdseError::Mismatch(format!("radial length {} vs grid {}", u.len(), grid.len())));
        }
        let mut s = Self::zeros(grid, channels);
        s.data[idx] = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(s)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn channels(&self) -> &Channels {
        &self.channels
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    pub fn data(&self) -> &[Vec<Complex64>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.data
    }

    pub fn channel(&self, l: usize, m: i64) -> Option<&[Complex64]> {
        self.channels.index(l, m).map(|i| self.data[i].as_slice())
    }

    pub fn channel_population(&self, index: usize) -> f64 {
        self.grid.dr() * self.data[index].iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Populations per channel, in channel-index order.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.channels.len()).map(|c| self.channel_population(c)).collect()
    }

    /// Population summed over `m` for each `l`.
    pub fn l_populations(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.channels.l_max() + 1];
        for (c, p) in self.populations().into_iter().enumerate() {
            out[self.channels.lm(c).0] += p;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.populations().iter().sum()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64, TdseError> {
        self.check_compatible(other)?;
        let s: Complex64 = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>())
            .sum();
        Ok(s * self.grid.dr())
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), TdseError> {
        if self.grid != other.grid {
            return Err(TdseError::Mismatch("states live on different grids".into()));
        }
        if self.channels != other.channels {
            return Err(TdseError::Mismatch("states have different channel sets".into()));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.grid.len();
        let mut out = Vec::with_capacity(64 + self.channels.len() * (8 + 16 * n));
        out.extend_from_slice(CHECKPOINT_MAGIC);
        out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.grid.dr().to_le_bytes());
        out.extend_from_slice(&self.grid.r_max().to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        out.extend_from_slice(&(self.channels.len() as u32).to_le_bytes());
        for (l, m) in self.channels.iter() {
            out.extend_from_slice(&(l as u32).to_le_bytes());
            out.extend_from_slice(&(m as i32).to_le_bytes());
        }
        out.extend_from_slice(&(n as u32).to_le_bytes());
        for z in self.data.iter().flatten() {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, TdseError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(8)? != CHECKPOINT_MAGIC {
            return Err(TdseError::Checkpoint("bad magic".into()));
        }
        let version = r.u32()?;
        if version != CHECKPOINT_VERSION {
            return Err(TdseError::Checkpoint(format!("unsupported version {version}")));
        }
        let grid = RadialGrid::new(r.f64()?, r.f64()?)?;
        let time = r.f64()?;
        let n_channels = r.u32()? as usize;
        let side = n_channels.isqrt();
        if side == 0 || side * side != n_channels {
            return Err(TdseError::Checkpoint(format!("{n_channels} is not a full channel set")));
        }
        let channels = Channels::new(side - 1);
        for (l, m) in channels.iter() {
            let (fl, fm) = (r.u32()? as usize, r.i32()? as i64);
            if (fl, fm) != (l, m) {
                return Err(TdseError::Checkpoint(format!("channel ({fl},{fm}) out of order, expected ({l},{m})")));
            }
        }
        let n = r.u32()? as usize;
        if n != grid.len() {
            return Err(TdseError::Checkpoint(format!("{n} radial points, grid has {}", grid.len())));
        }
        let mut state = Self::zeros(grid, channels);
        state.time = time;
        for row in state.data.iter_mut() {
            for z in row.iter_mut() {
                *z = Complex64::new(r.f64()?, r.f64()?);
            }
        }
        if r.pos != bytes.len() {
            return Err(TdseError::Checkpoint(format!("{} trailing bytes", bytes.len() - r.pos)));
        }
        Ok(state)
    }

    pub fn write_checkpoint(&self, path: &Path) -> Result<(), TdseError> {
        let mut f = std::fs::File::create(path).map_err(|e| TdseError::io(path, e))?;
        f.write_all(&self.to_bytes()).map_err(|e| TdseError::io(path, e))
    }

    pub fn read_checkpoint(path: &Path) -> Result<Self, TdseError> {
        let mut bytes = Vec::new();
        std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut bytes)).map_err(|e| TdseError::io(path, e))?;
        Self::from_bytes(&bytes)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], TdseError> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(TdseError::Checkpoint(format!("truncated at byte {}", self.pos)));
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, TdseError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i32, TdseError> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, TdseError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
