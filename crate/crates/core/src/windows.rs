//! Built-in windows: the indicator, the truncated counterexample families and
//! two smooth-ish profiles, all as exact step functions where possible.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Complex, GridSpec, SampledFunction};

#[derive(Clone, Debug, PartialEq)]
pub enum WindowKind {
    /// `1_{[0,1)}`
    Box,
    /// `Σ_{k=0}^{K} 1_{[k + 2^{-(k+1)}, k + 2^{-k})}`
    DyadicLadder(u32),
    /// `Σ_{k=1}^{K} 1_{[k, k + 1/k²)}`, widths rounded up to whole cells
    Spikes(u32),
    /// `Σ_{n=1}^{K} 1_{[n, n+1)} / n`
    HarmonicComb(u32),
    /// `x^{-1/3} 1_{[0,1)}`, cell averages
    Cusp,
    /// `exp(-x²/(2σ²))` at cell midpoints on `[-half_width, half_width)`
    Gaussian { sigma: f64, half_width: u32 },
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowKind::Box => write!(f, "box"),
            WindowKind::DyadicLadder(k) => write!(f, "dyadic:{k}"),
            WindowKind::Spikes(k) => write!(f, "spikes:{k}"),
            WindowKind::HarmonicComb(k) => write!(f, "harmonic:{k}"),
            WindowKind::Cusp => write!(f, "cusp"),
            WindowKind::Gaussian { sigma, half_width } => write!(f, "gauss:{sigma},{half_width}"),
        }
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let count = |arg: Option<&str>| -> Result<u32> {
            let raw = arg.ok_or_else(|| Error::Parse(format!("{name} needs a count, e.g. {name}:4")))?;
            let k: u32 = raw.parse().map_err(|_| Error::Parse(format!("bad count {raw:?}")))?;
            if k == 0 {
                return Err(Error::Parse(format!("{name} count must be at least 1")));
            }
            Ok(k)
        };
        match name {
            "box" if arg.is_none() => Ok(WindowKind::Box),
            "cusp" if arg.is_none() => Ok(WindowKind::Cusp),
            "dyadic" => Ok(WindowKind::DyadicLadder(count(arg)?)),
            "spikes" => Ok(WindowKind::Spikes(count(arg)?)),
            "harmonic" => Ok(WindowKind::HarmonicComb(count(arg)?)),
            "gauss" => {
                let raw = arg.ok_or_else(|| Error::Parse("gauss needs sigma,halfwidth".into()))?;
                let (s, h) = raw
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad gauss parameters {raw:?}")))?;
                let sigma: f64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad sigma {s:?}")))?;
                let half_width: u32 =
                    h.trim().parse().map_err(|_| Error::Parse(format!("bad half width {h:?}")))?;
                if !(sigma > 0.0 && sigma.is_finite()) || half_width == 0 {
                    return Err(Error::Parse(format!("gauss parameters out of range: {raw:?}")));
                }
                Ok(WindowKind::Gaussian { sigma, half_width })
            }
            _ => Err(Error::Parse(format!("unknown window {spec:?}"))),
        }
    }
}

fn real(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Builds `kind` at `n` cells per unit.
pub fn make_window(kind: &WindowKind, n: usize) -> Result<SampledFunction> {
    let n_i = n as i64;
    match *kind {
        WindowKind::Box => SampledFunction::indicator(n, 0, 1),
        WindowKind::DyadicLadder(k) => {
            if k >= 62 || n < 1usize << (k + 1) || !n.is_multiple_of(1usize << (k + 1)) {
                return Err(Error::ResolutionTooCoarse(format!(
                    "dyadic:{k} needs a multiple of 2^{} samples per unit, got {n}",
                    k + 1
                )));
            }
            let grid = GridSpec::new(n, 0, k as i64 + 1)?;
            Ok(SampledFunction::from_cells(grid, |c| {
                let (tile, offset) = (c.div_euclid(n_i), c.rem_euclid(n_i));
                // block of tile m covers [n/2^{m+1}, n/2^m) within the tile
                let start = n_i >> (tile + 1);
                let end = n_i >> tile;
                real(if offset >= start && offset < end { 1.0 } else { 0.0 })
            }))
        }
        WindowKind::Spikes(k) => {
            let grid = GridSpec::new(n, 1, k as i64 + 1)?;
            Ok(SampledFunction::from_cells(grid, |c| {
                let (tile, offset) = (c.div_euclid(n_i), c.rem_euclid(n_i));
                let width_cells = (n_i + tile * tile - 1) / (tile * tile);
                real(if offset < width_cells { 1.0 } else { 0.0 })
            }))
        }
        WindowKind::HarmonicComb(k) => {
            let grid = GridSpec::new(n, 1, k as i64 + 1)?;
            Ok(SampledFunction::from_cells(grid, |c| real(1.0 / c.div_euclid(n_i) as f64)))
        }
        WindowKind::Cusp => {
            let grid = GridSpec::new(n, 0, 1)?;
            // n ∫_{c/n}^{(c+1)/n} x^{-1/3} dx = 1.5 n ((c+1)^{2/3} - c^{2/3}) n^{-2/3}
            let scale = 1.5 * (n as f64).powf(1.0 / 3.0);
            Ok(SampledFunction::from_cells(grid, |c| {
                let c = c as f64;
                real(scale * ((c + 1.0).powf(2.0 / 3.0) - c.powf(2.0 / 3.0)))
            }))
        }
        WindowKind::Gaussian { sigma, half_width } => {
            let h = half_width as i64;
            let grid = GridSpec::new(n, -h, h)?;
            Ok(SampledFunction::from_cells(grid, |c| {
                let x = (c as f64 + 0.5) / n as f64;
                real((-x * x / (2.0 * sigma * sigma)).exp())
            }))
        }
    }
}
