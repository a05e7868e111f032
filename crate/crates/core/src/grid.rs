//! Piecewise-constant functions on uniform rational grids.
//!
//! A [`SampledFunction`] holds `n` cells per unit over an integer support
//! `[lo, hi)`. Cell `j` covers `[lo + j/n, lo + (j+1)/n)` and the function is
//! zero outside the support. Cells are also addressed by their *absolute*
//! index `c = lo*n + j`, whose left endpoint is `c/n` regardless of the
//! support; most kernels in this crate work in absolute indices.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number used for lattice steps, shifts and periods.
pub type Rational = Ratio<i64>;

/// Complex sample value.
pub type Complex = Complex64;

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ratio::new(p, q)
        }
        None => Ratio::from_integer(
            s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Formats a rational as `"p/q"` (always with a denominator).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `r * n` as an integer, if it is one.
pub(crate) fn cells_of(r: Rational, n: usize) -> Option<i64> {
    let scaled = r * Ratio::from_integer(n as i64);
    scaled.is_integer().then(|| scaled.to_integer())
}

/// Fractional part of `c * cell / n`, computed exactly.
pub(crate) fn phase_fraction(c: Rational, cell: i64, n: usize) -> f64 {
    let num = *c.numer() as i128 * cell as i128;
    let den = *c.denom() as i128 * n as i128;
    let rem = num.rem_euclid(den);
    rem as f64 / den as f64
}

/// `e^{2 pi i frac}`, exact at the quarter turns.
pub(crate) fn unit_phase(frac: f64) -> Complex {
    let frac = frac.rem_euclid(1.0);
    if frac == 0.0 {
        Complex::new(1.0, 0.0)
    } else if frac == 0.25 {
        Complex::new(0.0, 1.0)
    } else if frac == 0.5 {
        Complex::new(-1.0, 0.0)
    } else if frac == 0.75 {
        Complex::new(0.0, -1.0)
    } else {
        Complex::from_polar(1.0, 2.0 * PI * frac)
    }
}

/// `∫_{x0}^{x0+width} e^{-2 pi i x v} dx` in closed form.
pub(crate) fn cell_exp_integral(x0: f64, width: f64, v: f64) -> Complex {
    let arg = PI * width * v;
    let sinc = if arg.abs() < 1e-8 { 1.0 - arg * arg / 6.0 } else { arg.sin() / arg };
    Complex::from_polar(width * sinc, -PI * v * (2.0 * x0 + width))
}

/// Uniform grid: `n` cells per unit over the integer interval `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    n: usize,
    lo: i64,
    hi: i64,
}

/// Builds a grid, rejecting empty supports and zero resolution.
pub fn make_grid(n: usize, lo: i64, hi: i64) -> Result<GridSpec> {
    GridSpec::new(n, lo, hi)
}

impl GridSpec {
    pub fn new(n: usize, lo: i64, hi: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBounds("samples per unit must be positive".into()));
        }
        if hi <= lo {
            return Err(Error::InvalidBounds(format!("empty support [{lo}, {hi})")));
        }
        Ok(Self { n, lo, hi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Support length in units.
    pub fn units(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    /// Total number of cells, `n * (hi - lo)`.
    pub fn cells(&self) -> usize {
        self.n * self.units()
    }

    /// Cell width `1/n`.
    pub fn width(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Absolute indices of the cells in the support.
    pub fn cell_range(&self) -> Range<i64> {
        self.lo * self.n as i64..self.hi * self.n as i64
    }

    /// Left endpoint of the `j`-th stored cell.
    pub fn left_endpoint(&self, j: usize) -> f64 {
        (self.lo * self.n as i64 + j as i64) as f64 / self.n as f64
    }

    /// Smallest grid containing both, at the lcm resolution.
    pub fn common_refinement(&self, other: &GridSpec) -> GridSpec {
        GridSpec {
            n: self.n.lcm(&other.n),
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// A compactly supported piecewise-constant function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionJson", into = "FunctionJson")]
pub struct SampledFunction {
    grid: GridSpec,
    values: Vec<Complex>,
}

#[derive(Serialize, Deserialize)]
struct FunctionJson {
    n: usize,
    lo: i64,
    hi: i64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<FunctionJson> for SampledFunction {
    type Error = Error;

    fn try_from(raw: FunctionJson) -> Result<Self> {
        let grid = GridSpec::new(raw.n, raw.lo, raw.hi)?;
        if raw.re.len() != grid.cells() || raw.im.len() != grid.cells() {
            return Err(Error::Malformed(format!(
                "expected {} values, got re: {}, im: {}",
                grid.cells(),
                raw.re.len(),
                raw.im.len()
            )));
        }
        let values = raw.re.iter().zip(&raw.im).map(|(&re, &im)| Complex::new(re, im)).collect();
        SampledFunction::new(grid, values)
    }
}

impl From<SampledFunction> for FunctionJson {
    fn from(f: SampledFunction) -> Self {
        FunctionJson {
            n: f.grid.n,
            lo: f.grid.lo,
            hi: f.grid.hi,
            re: f.values.iter().map(|z| z.re).collect(),
            im: f.values.iter().map(|z| z.im).collect(),
        }
    }
}

impl SampledFunction {
    pub fn new(grid: GridSpec, values: Vec<Complex>) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(Error::Malformed(format!(
                "grid has {} cells but {} values were given",
                grid.cells(),
                values.len()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Malformed("non-finite sample value".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![Complex::new(0.0, 0.0); grid.cells()] }
    }

    /// Builds values from a function of the absolute cell index.
    pub fn from_cells(grid: GridSpec, mut value: impl FnMut(i64) -> Complex) -> Self {
        let values = grid.cell_range().map(&mut value).collect();
        Self { grid, values }
    }

    /// Real-valued convenience constructor.
    pub fn from_real(grid: GridSpec, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// The indicator of `[lo, hi)` at `n` cells per unit.
    pub fn indicator(n: usize, lo: i64, hi: i64) -> Result<Self> {
        let grid = GridSpec::new(n, lo, hi)?;
        Ok(Self { grid, values: vec![Complex::new(1.0, 0.0); grid.cells()] })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn lo(&self) -> i64 {
        self.grid.lo
    }

    pub fn hi(&self) -> i64 {
        self.grid.hi
    }

    /// Value on the absolute cell `c` (zero outside the support).
    pub fn at_cell(&self, c: i64) -> Complex {
        let j = c - self.grid.lo * self.grid.n as i64;
        if j < 0 || j >= self.values.len() as i64 {
            Complex::new(0.0, 0.0)
        } else {
            self.values[j as usize]
        }
    }

    /// Re-expresses the same step function on a finer, wider grid.
    pub fn regrid(&self, n: usize, lo: i64, hi: i64) -> Result<Self> {
        if !n.is_multiple_of(self.grid.n) {
            return Err(Error::InvalidBounds(format!(
                "{n} samples per unit does not refine {}",
                self.grid.n
            )));
        }
        if lo > self.grid.lo || hi < self.grid.hi {
            return Err(Error::InvalidBounds(format!(
                "[{lo}, {hi}) does not cover [{}, {})",
                self.grid.lo, self.grid.hi
            )));
        }
        let grid = GridSpec::new(n, lo, hi)?;
        Ok(self.resample_onto(grid))
    }

    pub(crate) fn resample_onto(&self, grid: GridSpec) -> Self {
        debug_assert_eq!(grid.n % self.grid.n, 0);
        let ratio = (grid.n / self.grid.n) as i64;
        Self::from_cells(grid, |c| self.at_cell(c.div_euclid(ratio)))
    }

    /// Refines to `n` cells per unit (a multiple of the current rate).
    pub fn refine_to(&self, n: usize) -> Result<Self> {
        self.regrid(n, self.grid.lo, self.grid.hi)
    }

    /// Both functions on their common refinement.
    pub fn align(&self, other: &Self) -> (Self, Self) {
        let grid = self.grid.common_refinement(&other.grid);
        (self.resample_onto(grid), other.resample_onto(grid))
    }

    /// Shrinks the support to the smallest integer interval holding every
    /// nonzero cell. An identically zero function keeps one unit at `lo`.
    pub fn trim(&self) -> Self {
        let first = self.values.iter().position(|z| z.norm_sqr() != 0.0);
        let last = self.values.iter().rposition(|z| z.norm_sqr() != 0.0);
        let n = self.grid.n as i64;
        let (lo, hi) = match (first, last) {
            (Some(a), Some(b)) => {
                let start = self.grid.lo * n + a as i64;
                let end = self.grid.lo * n + b as i64 + 1;
                (start.div_euclid(n), (end + n - 1).div_euclid(n))
            }
            _ => (self.grid.lo, self.grid.lo + 1),
        };
        let grid = GridSpec { n: self.grid.n, lo, hi };
        Self::from_cells(grid, |c| self.at_cell(c))
    }

    /// `T_s f(x) = f(x - s)`; `s*n` must be an integer.
    pub fn translate(&self, s: Rational) -> Result<Self> {
        let n = self.grid.n;
        let shift = cells_of(s, n).ok_or(Error::IncompatibleShift { shift: s, n })?;
        let lo = (Ratio::from_integer(self.grid.lo) + s).floor().to_integer();
        let hi = (Ratio::from_integer(self.grid.hi) + s).ceil().to_integer();
        let grid = GridSpec { n, lo, hi };
        Ok(Self::from_cells(grid, |c| self.at_cell(c - shift)))
    }

    /// `E_c f(x) = e^{2 pi i c x} f(x)`, with `x` the left endpoint of each cell.
    pub fn modulate(&self, c: Rational) -> Self {
        let n = self.grid.n;
        let values = self
            .grid
            .cell_range()
            .zip(&self.values)
            .map(|(cell, &z)| z * unit_phase(phase_fraction(c, cell, n)))
            .collect();
        Self { grid: self.grid, values }
    }

    /// `Δ Σ_j f_j conj(g_j)`, exact for the step model.
    pub fn l2_inner(&self, other: &Self) -> Complex {
        let (f, g) = self.align(other);
        let sum: Complex = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
        sum * f.grid.width()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.width()).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn conjugate(&self) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|z| z.conj()).collect() }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex, Complex) -> Complex) -> Self {
        let (f, g) = self.align(other);
        let values = f.values.iter().zip(&g.values).map(|(&a, &b)| op(a, b)).collect();
        Self { grid: f.grid, values }
    }

    /// Largest cellwise difference on the common refinement.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let (f, g) = self.align(other);
        f.values.iter().zip(&g.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `‖f - g‖ / ‖f‖` (absolute when `f` vanishes).
    pub fn relative_l2_diff(&self, other: &Self) -> f64 {
        let diff = self.sub(other).l2_norm();
        let base = self.l2_norm();
        if base > 0.0 {
            diff / base
        } else {
            diff
        }
    }

    /// `f̂(v) = ∫ f(t) e^{-2 pi i t v} dt`, integrating the exponential
    /// exactly over every cell.
    pub fn fourier_quadrature(&self, freqs: &[f64]) -> Vec<Complex> {
        let width = self.grid.width();
        freqs
            .iter()
            .map(|&v| {
                self.values
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm_sqr() != 0.0)
                    .map(|(j, z)| z * cell_exp_integral(self.grid.left_endpoint(j), width, v))
                    .sum()
            })
            .collect()
    }
}
