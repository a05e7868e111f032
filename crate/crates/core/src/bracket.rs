//! The bracket product `⟨f,g⟩_a(x) = Σ_k f(x - ka) conj(g(x - ka))` and the
//! norms built from it.
//!
//! Everything here is an exact finite computation on step functions: the fold
//! over `k` runs over the compact support, and essential suprema become grid
//! maxima because step functions attain them on cells.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{cells_of, format_rational, Complex, Rational, SampledFunction};

/// One period `[0, a)` of an `a`-periodic step function, `a*n` cells long.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSample {
    period: Rational,
    n: usize,
    values: Vec<Complex>,
}

impl PeriodicSample {
    pub fn new(period: Rational, n: usize, values: Vec<Complex>) -> Result<Self> {
        let cells = period_cells(period, n)?;
        if values.len() != cells {
            return Err(Error::Malformed(format!(
                "period {period} at {n} samples per unit needs {cells} values, got {}",
                values.len()
            )));
        }
        Ok(Self { period, n, values })
    }

    /// The constant function `value`.
    pub fn constant(period: Rational, n: usize, value: Complex) -> Result<Self> {
        let cells = period_cells(period, n)?;
        Ok(Self { period, n, values: vec![value; cells] })
    }

    pub fn period(&self) -> Rational {
        self.period
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at absolute cell `c` of the periodic extension.
    pub fn at_cell(&self, c: i64) -> Complex {
        self.values[c.rem_euclid(self.values.len() as i64) as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_re(&self) -> f64 {
        self.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `∫_0^a` of the sample.
    pub fn integral(&self) -> Complex {
        self.values.iter().sum::<Complex>() / self.n as f64
    }

    pub fn map(&self, op: impl Fn(Complex) -> Complex) -> Self {
        Self { period: self.period, n: self.n, values: self.values.iter().map(|&z| op(z)).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Same function at a finer rate (`n` a multiple of the current one).
    pub fn refine_to(&self, n: usize) -> Result<Self> {
        if !n.is_multiple_of(self.n) {
            return Err(Error::InvalidBounds(format!("{n} does not refine {}", self.n)));
        }
        let ratio = n / self.n;
        let values = self.values.iter().flat_map(|&z| std::iter::repeat_n(z, ratio)).collect();
        Ok(Self { period: self.period, n, values })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex, Complex) -> Complex) -> Result<Self> {
        if self.period != other.period {
            return Err(Error::IncompatiblePeriod { period: other.period, n: other.n });
        }
        let n = self.n.lcm(&other.n);
        let (a, b) = (self.refine_to(n)?, other.refine_to(n)?);
        let values = a.values.iter().zip(&b.values).map(|(&x, &y)| op(x, y)).collect();
        Ok(Self { period: self.period, n, values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    /// Largest pointwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.zip_with(other, |x, y| x - y)?.max_abs())
    }

    /// Module action: the pointwise product of `f` with the periodic
    /// extension of `self`, kept on `f`'s support.
    pub fn act_on(&self, f: &SampledFunction) -> Result<SampledFunction> {
        let n = self.n.lcm(&f.n());
        let phi = self.refine_to(n)?;
        let f = f.refine_to(n)?;
        Ok(SampledFunction::from_cells(f.grid(), |c| phi.at_cell(c) * f.at_cell(c)))
    }
}

#[derive(Serialize)]
struct PeriodicJson {
    period: String,
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for PeriodicSample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PeriodicJson {
            period: format_rational(&self.period),
            n: self.n,
            re: self.values.iter().map(|z| z.re).collect(),
            im: self.values.iter().map(|z| z.im).collect(),
        }
        .serialize(s)
    }
}

fn period_cells(period: Rational, n: usize) -> Result<usize> {
    if period <= Rational::from_integer(0) {
        return Err(Error::InvalidBounds(format!("period {period} must be positive")));
    }
    match cells_of(period, n) {
        Some(c) => Ok(c as usize),
        None => Err(Error::IncompatiblePeriod { period, n }),
    }
}

/// `⟨f,g⟩_a` sampled over one period.
pub fn bracket(f: &SampledFunction, g: &SampledFunction, a: Rational) -> Result<PeriodicSample> {
    let (f, g) = f.align(g);
    let n = f.n();
    let cells = period_cells(a, n)?;
    let mut values = vec![Complex::new(0.0, 0.0); cells];
    for (c, (x, y)) in f.grid().cell_range().zip(f.values().iter().zip(g.values())) {
        values[c.rem_euclid(cells as i64) as usize] += x * y.conj();
    }
    Ok(PeriodicSample { period: a, n, values })
}

/// `‖f‖_a(x) = sqrt(⟨f,f⟩_a(x))`.
pub fn bracket_norm(f: &SampledFunction, a: Rational) -> Result<PeriodicSample> {
    let n = f.n();
    let cells = period_cells(a, n)?;
    let mut values = vec![0.0; cells];
    for (c, x) in f.grid().cell_range().zip(f.values()) {
        values[c.rem_euclid(cells as i64) as usize] += x.norm_sqr();
    }
    let values = values.into_iter().map(|s| Complex::new(s.sqrt(), 0.0)).collect();
    Ok(PeriodicSample { period: a, n, values })
}

/// Norm of `L∞_{period}(ℓ2)`: `sqrt(max_x Σ_k |f(x - k·period)|²)`.
pub fn hcm_norm(f: &SampledFunction, period: Rational) -> Result<f64> {
    Ok(bracket_norm(f, period)?.max_abs())
}

/// Global exponent of the Wiener amalgam `W(L∞, ℓq)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmalgamExponent {
    One,
    Two,
    Inf,
}

/// Sup norm of `f` on every integer tile `[k, k+1)` of its support.
pub fn tile_sups(f: &SampledFunction) -> Vec<f64> {
    f.values().chunks(f.n()).map(|tile| tile.iter().map(|z| z.norm()).fold(0.0, f64::max)).collect()
}

/// `‖f‖_{W(L∞, ℓq)} = (Σ_k ‖f·1_{[k,k+1)}‖_∞^q)^{1/q}`.
pub fn amalgam_norm(f: &SampledFunction, q: AmalgamExponent) -> f64 {
    let sups = tile_sups(f);
    match q {
        AmalgamExponent::One => sups.iter().sum(),
        AmalgamExponent::Two => sups.iter().map(|s| s * s).sum::<f64>().sqrt(),
        AmalgamExponent::Inf => sups.iter().copied().fold(0.0, f64::max),
    }
}

/// Pointwise product; the Banach-algebra inequality
/// `hcm(fg) <= hcm(f)·hcm(g)` always holds for it.
pub fn algebra_mul(f: &SampledFunction, g: &SampledFunction) -> SampledFunction {
    f.pointwise_mul(g)
}

/// `hcm_norm(g_{K+1} - g_K)` for consecutive members of a truncation family.
pub fn tail_norms(family: &[SampledFunction], period: Rational) -> Result<Vec<f64>> {
    family.windows(2).map(|w| hcm_norm(&w[1].sub(&w[0]), period)).collect()
}

/// The norms of one function side by side.
#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub hcm_norm: f64,
    pub l2_norm: f64,
    pub sup_norm: f64,
    pub amalgam_1: f64,
    pub amalgam_2: f64,
    pub amalgam_inf: f64,
}

impl NormReport {
    pub fn of(f: &SampledFunction, period: Rational) -> Result<Self> {
        Ok(Self {
            hcm_norm: hcm_norm(f, period)?,
            l2_norm: f.l2_norm(),
            sup_norm: f.sup_norm(),
            amalgam_1: amalgam_norm(f, AmalgamExponent::One),
            amalgam_2: amalgam_norm(f, AmalgamExponent::Two),
            amalgam_inf: amalgam_norm(f, AmalgamExponent::Inf),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct NormJson {
    hcm: f64,
    l2: f64,
    sup: f64,
    amalgam: AmalgamJson,
}

#[derive(Serialize, Deserialize)]
struct AmalgamJson {
    #[serde(rename = "1")]
    one: f64,
    #[serde(rename = "2")]
    two: f64,
    #[serde(rename = "inf")]
    inf: f64,
}

impl Serialize for NormReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NormJson {
            hcm: self.hcm_norm,
            l2: self.l2_norm,
            sup: self.sup_norm,
            amalgam: AmalgamJson { one: self.amalgam_1, two: self.amalgam_2, inf: self.amalgam_inf },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = NormJson::deserialize(d)?;
        Ok(Self {
            hcm_norm: raw.hcm,
            l2_norm: raw.l2,
            sup_norm: raw.sup,
            amalgam_1: raw.amalgam.one,
            amalgam_2: raw.amalgam.two,
            amalgam_inf: raw.amalgam.inf,
        })
    }
}

/// A periodic step function from a closure of the cell index within one period.
pub fn periodic_from_fn(
    period: Rational,
    n: usize,
    value: impl Fn(usize) -> Complex,
) -> Result<PeriodicSample> {
    let cells = period_cells(period, n)?;
    Ok(PeriodicSample { period, n, values: (0..cells).map(value).collect() })
}
