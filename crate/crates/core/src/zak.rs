//! Discrete Zak transform of step functions.
//!
//! The primary convention is `Z(f)(t,v) = Σ_k f(t+k) e^{-2πikv}`. For a step
//! function with `n` cells per unit, `Z(f)` is constant in `t` across each
//! cell, so sampling `t` at the `n` left endpoints of `[0,1)` loses nothing;
//! in `v` it is a trigonometric polynomial whose degree is the number of
//! integer translates in the support. Frequency samples `v_j = j/n_v` are
//! evaluated exactly; `n_v` below the support length only matters for
//! inversion, which is why [`zak`] rejects it.
//!
//! The scaled form `Z_λ(f)(t,v) = λ^{1/2} Σ_k f(λ(t-k)) e^{2πikv}` is
//! available through [`zak_lambda`]. At `λ = 1` the two agree identically
//! (substitute `k -> -k`).

use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{
    cell_exp_integral, cells_of, format_rational, unit_phase, Complex, GridSpec, Rational,
    SampledFunction,
};

/// Sign and scale convention of a [`ZakImage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZakConvention {
    /// `Σ_k f(t+k) e^{-2πikv}`
    Standard,
    /// `λ^{1/2} Σ_k f(λ(t-k)) e^{2πikv}`
    Scaled,
}

/// Samples `Z(f)(i/n_t, j/n_v)` stored row-major, rows indexed by `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZakImage {
    n_t: usize,
    n_v: usize,
    lambda: Rational,
    origin: i64,
    convention: ZakConvention,
    values: Vec<Complex>,
}

impl ZakImage {
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    /// First translate index used when inverting.
    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn convention(&self) -> ZakConvention {
        self.convention
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.values[i * self.n_v..(i + 1) * self.n_v]
    }

    /// Entry of the periodic extension in both variables.
    pub fn at(&self, i: i64, j: i64) -> Complex {
        let i = i.rem_euclid(self.n_t as i64) as usize;
        let j = j.rem_euclid(self.n_v as i64) as usize;
        self.values[i * self.n_v + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// `∫∫_{[0,1)²} |Z|²`, which equals `‖f‖²` for an alias-free image.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / (self.n_t * self.n_v) as f64
    }

    /// `max_t ∫_0^1 |Z(t,v)|² dv`.
    pub fn sup_t_mean_square(&self) -> f64 {
        self.values
            .chunks(self.n_v)
            .map(|row| row.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.n_v as f64)
            .fold(0.0, f64::max)
    }

    /// Entrywise product with another image of the same shape.
    pub fn mul(&self, other: &ZakImage) -> Result<ZakImage> {
        if (self.n_t, self.n_v) != (other.n_t, other.n_v) {
            return Err(Error::Malformed(format!(
                "image shapes differ: {}x{} vs {}x{}",
                self.n_t, self.n_v, other.n_t, other.n_v
            )));
        }
        Ok(ZakImage {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            origin: self.origin + other.origin,
            ..self.clone()
        })
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &ZakImage) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `|Z|` as CSV: `n_t` rows of `n_v` values, 17 significant digits.
    pub fn magnitude_csv(&self) -> String {
        let mut out = String::new();
        for row in self.values.chunks(self.n_v) {
            let line: Vec<String> = row.iter().map(|z| format!("{:.16e}", z.norm())).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
struct ZakJson {
    n_t: usize,
    n_v: usize,
    lambda: String,
    origin: i64,
    convention: ZakConvention,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for ZakImage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ZakJson {
            n_t: self.n_t,
            n_v: self.n_v,
            lambda: format_rational(&self.lambda),
            origin: self.origin,
            convention: self.convention,
            re: self.values.chunks(self.n_v).map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: self.values.chunks(self.n_v).map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
        .serialize(s)
    }
}

/// Smallest alias-free frequency count for `f`: its support length in units.
pub fn default_nv(f: &SampledFunction) -> usize {
    f.grid().units()
}

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// `Z(f)(i/n, j/n_v)` evaluated exactly, folding `k mod n_v`.
fn standard_values(f: &SampledFunction, n_v: usize, fft: &Arc<dyn Fft<f64>>) -> Vec<Complex> {
    let n = f.n() as i64;
    let mut out = vec![zero(); f.n() * n_v];
    out.par_chunks_mut(n_v).enumerate().for_each(|(i, row)| {
        for k in f.lo()..f.hi() {
            row[k.rem_euclid(n_v as i64) as usize] += f.at_cell(i as i64 + k * n);
        }
        fft.process(row);
    });
    out
}

/// Zak transform in the standard convention.
pub fn zak(f: &SampledFunction, n_v: usize) -> Result<ZakImage> {
    let needed = default_nv(f);
    if n_v < needed {
        return Err(Error::Aliasing { n_v, needed });
    }
    let fft = FftPlanner::new().plan_fft_forward(n_v);
    Ok(ZakImage {
        n_t: f.n(),
        n_v,
        lambda: Ratio::from_integer(1),
        origin: f.lo(),
        convention: ZakConvention::Standard,
        values: standard_values(f, n_v, &fft),
    })
}

/// Zak transform in the scaled convention. Requires `λ·n` to be an integer,
/// which becomes the number of `t` samples per unit.
pub fn zak_lambda(f: &SampledFunction, lambda: Rational, n_v: usize) -> Result<ZakImage> {
    let n = f.n();
    if lambda <= Ratio::from_integer(0) {
        return Err(Error::IncompatibleScale { scale: lambda, n });
    }
    let n_t = cells_of(lambda, n).ok_or(Error::IncompatibleScale { scale: lambda, n })? as usize;
    let (lo_cell, hi_cell) = (f.grid().cell_range().start, f.grid().cell_range().end);
    let step = n_t as i64;
    // cell = i - k*n_t with 0 <= i < n_t
    let k_min = -((hi_cell - 1).div_euclid(step));
    let k_max = -(lo_cell.div_euclid(step));
    let needed = (k_max - k_min + 1) as usize;
    if n_v < needed {
        return Err(Error::Aliasing { n_v, needed });
    }
    let fft = FftPlanner::new().plan_fft_inverse(n_v);
    let scale = (*lambda.numer() as f64 / *lambda.denom() as f64).sqrt();
    let mut values = vec![zero(); n_t * n_v];
    values.par_chunks_mut(n_v).enumerate().for_each(|(i, row)| {
        for k in k_min..=k_max {
            row[k.rem_euclid(n_v as i64) as usize] += f.at_cell(i as i64 - k * step);
        }
        fft.process(row);
        row.iter_mut().for_each(|z| *z *= scale);
    });
    Ok(ZakImage {
        n_t,
        n_v,
        lambda,
        origin: k_min,
        convention: ZakConvention::Scaled,
        values,
    })
}

/// Inverts either convention, recovering the step function on the support
/// spanned by the image's translate window.
pub fn inverse_zak(z: &ZakImage) -> SampledFunction {
    let n_v = z.n_v;
    let mut planner = FftPlanner::new();
    match z.convention {
        ZakConvention::Standard => {
            let n = z.n_t;
            let grid = GridSpec::new(n, z.origin, z.origin + n_v as i64)
                .expect("n_t and n_v are positive");
            let fft = planner.plan_fft_inverse(n_v);
            let rows: Vec<Vec<Complex>> = z
                .values
                .par_chunks(n_v)
                .map(|row| {
                    let mut buf = row.to_vec();
                    fft.process(&mut buf);
                    buf.iter_mut().for_each(|c| *c /= n_v as f64);
                    buf
                })
                .collect();
            let n_i = n as i64;
            SampledFunction::from_cells(grid, |c| {
                let (k, i) = (c.div_euclid(n_i), c.rem_euclid(n_i));
                rows[i as usize][k.rem_euclid(n_v as i64) as usize]
            })
        }
        ZakConvention::Scaled => {
            let lambda = z.lambda;
            let n_t = z.n_t as i64;
            // samples per unit of the original grid
            let n = (Ratio::from_integer(n_t) / lambda).to_integer();
            let fft = planner.plan_fft_forward(n_v);
            let inv_scale = 1.0 / (*lambda.numer() as f64 / *lambda.denom() as f64).sqrt();
            let rows: Vec<Vec<Complex>> = z
                .values
                .par_chunks(n_v)
                .map(|row| {
                    let mut buf = row.to_vec();
                    fft.process(&mut buf);
                    buf.iter_mut().for_each(|c| *c *= inv_scale / n_v as f64);
                    buf
                })
                .collect();
            let k_last = z.origin + n_v as i64 - 1;
            let c_min = -k_last * n_t;
            let c_max = n_t - 1 - z.origin * n_t;
            let lo = c_min.div_euclid(n);
            let hi = (c_max + 1 + n - 1).div_euclid(n);
            let grid = GridSpec::new(n as usize, lo, hi).expect("nonempty support");
            SampledFunction::from_cells(grid, |c| {
                // c = i - k*n_t
                let i = c.rem_euclid(n_t);
                let k = (i - c) / n_t;
                if k < z.origin || k > k_last {
                    zero()
                } else {
                    rows[i as usize][k.rem_euclid(n_v as i64) as usize]
                }
            })
        }
    }
}

/// Result of checking `Z(f)(t+1,v) = e^{2πiv} Z(f)(t,v)` and
/// `Z(f)(t,v+1) = Z(f)(t,v)` against the defining sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuasiPeriodicity {
    /// Largest of the two defects.
    pub defect: f64,
    pub t_defect: f64,
    pub v_defect: f64,
    /// Sign `s` in `Z(f)(t+1,v) = e^{s·2πiv} Z(f)(t,v)`; `+1` for the
    /// standard convention.
    pub t_phase_sign: i8,
}

/// Evaluates the defining sum at `t = (i + shift)/n`, arbitrary real `v`.
fn zak_direct(f: &SampledFunction, cell: i64, v: f64) -> Complex {
    let n = f.n() as i64;
    let lo_k = (f.grid().cell_range().start - cell).div_euclid(n) - 1;
    let hi_k = (f.grid().cell_range().end - cell).div_euclid(n) + 1;
    (lo_k..=hi_k)
        .map(|k| {
            let x = f.at_cell(cell + k * n);
            if x.norm_sqr() == 0.0 {
                zero()
            } else {
                x * Complex::from_polar(1.0, -2.0 * PI * k as f64 * v)
            }
        })
        .sum()
}

/// Quasi-periodicity defect of the standard Zak transform on the grid
/// `t ∈ [0,1)`, `v_j = j/n_v` with `n_v` the default size.
pub fn quasi_periodicity_defect(f: &SampledFunction) -> QuasiPeriodicity {
    let n_v = default_nv(f);
    let image = zak(f, n_v).expect("default n_v is alias free");
    let n = f.n() as i64;
    let mut t_defect: f64 = 0.0;
    let mut v_defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n_v as i64 {
            let v = j as f64 / n_v as f64;
            let here = image.at(i, j);
            let shifted_t = zak_direct(f, i + n, v);
            let phase = unit_phase(v);
            t_defect = t_defect.max((shifted_t - phase * here).norm());
            let shifted_v = zak_direct(f, i, v + 1.0);
            v_defect = v_defect.max((shifted_v - here).norm());
        }
    }
    QuasiPeriodicity { defect: t_defect.max(v_defect), t_defect, v_defect, t_phase_sign: 1 }
}

/// `f̂(v) = ∫_0^1 Z(f)(t,v) e^{-2πitv} dt` with exact per-cell integration.
pub fn fourier_via_zak(f: &SampledFunction, v: f64) -> Complex {
    let n = f.n();
    let width = 1.0 / n as f64;
    (0..n as i64)
        .map(|i| zak_direct(f, i, v) * cell_exp_integral(i as f64 * width, width, v))
        .sum()
}

/// Windowed Zak transform `Z(f·T_x g)(t,v) e^{-2πitv}` at one shift `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedZakImage {
    pub base: ZakImage,
    pub shift_x: Rational,
}

impl WindowedZakImage {
    pub fn sup_abs(&self) -> f64 {
        self.base.max_abs()
    }
}

/// Windowed Zak transform of `f` against `g` at shift `x`; `n_v` defaults to
/// the support length of the product.
pub fn windowed_zak(
    f: &SampledFunction,
    g: &SampledFunction,
    x: Rational,
    n_v: Option<usize>,
) -> Result<WindowedZakImage> {
    let (f, g) = f.align(g);
    let product = f.pointwise_mul(&g.translate(x)?);
    let n_v = n_v.unwrap_or_else(|| default_nv(&product));
    let mut base = zak(&product, n_v)?;
    let n = base.n_t;
    for (i, row) in base.values.chunks_mut(n_v).enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            // e^{-2πi t v} with t = i/n, v = j/n_v
            let frac = (i * j) as f64 / (n * n_v) as f64;
            *z *= unit_phase(-frac);
        }
    }
    Ok(WindowedZakImage { base, shift_x: x })
}

/// `g *₁ f`: inverse Zak transform of `Z(g)·Z(f)`. The default `n_v` is the
/// length of the translate convolution, the smallest alias-free choice.
pub fn zak_convolve(
    g: &SampledFunction,
    f: &SampledFunction,
    n_v: Option<usize>,
) -> Result<SampledFunction> {
    let n = num_integer::lcm(g.n(), f.n());
    let g = g.refine_to(n)?;
    let f = f.refine_to(n)?;
    let needed = default_nv(&g) + default_nv(&f) - 1;
    let n_v = n_v.unwrap_or(needed);
    if n_v < needed {
        return Err(Error::Aliasing { n_v, needed });
    }
    let product = zak(&g, n_v)?.mul(&zak(&f, n_v)?)?;
    Ok(inverse_zak(&product))
}

/// Translate coefficients `f(t_i + k)` of each `t` row, for the trigonometric
/// polynomial `v ↦ Σ_k c_k e^{-2πikv}` that row represents.
fn row_coefficients(f: &SampledFunction) -> Vec<Vec<Complex>> {
    let n = f.n() as i64;
    (0..n).map(|i| (f.lo()..f.hi()).map(|k| f.at_cell(i + k * n)).collect()).collect()
}

/// Evaluates `Σ_r |Σ_k c_{r,k} e^{-2πikv}|²`.
fn energy_at(sets: &[&[Complex]], v: f64) -> f64 {
    let step = Complex::from_polar(1.0, -2.0 * PI * v);
    sets.iter()
        .map(|coeffs| {
            let mut acc = zero();
            let mut phase = Complex::new(1.0, 0.0);
            for c in coeffs.iter() {
                acc += c * phase;
                phase *= step;
            }
            acc.norm_sqr()
        })
        .sum()
}

fn golden_section(
    sets: &[&[Complex]],
    mut a: f64,
    mut b: f64,
    maximize: bool,
) -> f64 {
    let sign = if maximize { -1.0 } else { 1.0 };
    let objective = |v: f64| sign * energy_at(sets, v);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    let mut best = fc.min(fd);
    while b - a > 1e-13 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = objective(c);
            best = best.min(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = objective(d);
            best = best.min(fd);
        }
    }
    sign * best
}

/// Minimum and maximum over `v ∈ [0,1)` of `Σ_r |P_r(v)|²` for the given
/// coefficient sets: dense FFT sampling, then golden-section polishing of
/// every sampled local extremum near the global one.
fn energy_extrema(sets: &[&[Complex]], planner_cache: &EnergyPlan) -> (f64, f64) {
    let len = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    if len <= 1 {
        let e: f64 = sets.iter().filter_map(|s| s.first()).map(|c| c.norm_sqr()).sum();
        return (e, e);
    }
    let m = planner_cache.size;
    let mut energy = vec![0.0; m];
    let mut buf = vec![zero(); m];
    for coeffs in sets {
        buf.iter_mut().for_each(|z| *z = zero());
        buf[..coeffs.len()].copy_from_slice(coeffs);
        planner_cache.fft.process(&mut buf);
        for (e, z) in energy.iter_mut().zip(&buf) {
            *e += z.norm_sqr();
        }
    }
    let (mut lo, mut hi) = energy
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &e| (a.min(e), b.max(e)));
    let range = hi - lo;
    if range <= 1e-15 * hi.abs().max(1e-300) {
        return (lo, hi);
    }
    let slack = 0.5 * range;
    let (sampled_lo, sampled_hi) = (lo, hi);
    let spacing = 1.0 / m as f64;
    for j in 0..m {
        let prev = energy[(j + m - 1) % m];
        let next = energy[(j + 1) % m];
        let e = energy[j];
        let v = j as f64 * spacing;
        if e < prev && e <= next && e <= sampled_lo + slack {
            lo = lo.min(golden_section(sets, v - spacing, v + spacing, false));
        }
        if e > prev && e >= next && e >= sampled_hi - slack {
            hi = hi.max(golden_section(sets, v - spacing, v + spacing, true));
        }
    }
    (lo, hi)
}

struct EnergyPlan {
    size: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl EnergyPlan {
    fn for_len(len: usize) -> Self {
        let size = (32 * len).max(64).next_power_of_two();
        Self { size, fft: FftPlanner::new().plan_fft_forward(size) }
    }
}

/// Range of the Zak energy `Σ_w |Z(w)(t,v)|²` over `t ∈ [0,1)` and
/// continuous `v ∈ [0,1)`.
///
/// Exact in `t` (the energy is a step function there) and polished to
/// near machine precision in `v`. With a single window this gives the
/// squared frame bounds of `(w, 1, 1)`; with the translates `T_{r/q} g` it
/// gives those of `(g, 1/q, 1)`.
pub fn zak_energy_range(windows: &[SampledFunction]) -> Result<(f64, f64)> {
    let aligned = align_all(windows)?;
    let rows: Vec<Vec<Vec<Complex>>> = aligned.iter().map(row_coefficients).collect();
    let len = aligned[0].grid().units();
    let plan = EnergyPlan::for_len(len);
    let n = aligned[0].n();
    let per_row: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let sets: Vec<&[Complex]> = rows.iter().map(|r| r[i].as_slice()).collect();
            energy_extrema(&sets, &plan)
        })
        .collect();
    Ok(per_row
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (lo, hi)| (a.min(lo), b.max(hi))))
}

/// `Σ_w |Z(w)(i/n, j/n_v)|²` on the sample grid, row-major `n × n_v`.
/// Evaluation is exact for every `n_v`.
pub fn zak_energy_grid(windows: &[SampledFunction], n_v: usize) -> Result<Vec<f64>> {
    let aligned = align_all(windows)?;
    let fft = FftPlanner::new().plan_fft_forward(n_v);
    let mut energy = vec![0.0; aligned[0].n() * n_v];
    for w in &aligned {
        for (e, z) in energy.iter_mut().zip(standard_values(w, n_v, &fft)) {
            *e += z.norm_sqr();
        }
    }
    Ok(energy)
}

/// `Z(f)` on the sample grid for any `n_v`, without the alias check.
pub fn zak_samples(f: &SampledFunction, n_v: usize) -> Vec<Complex> {
    let fft = FftPlanner::new().plan_fft_forward(n_v);
    standard_values(f, n_v, &fft)
}

/// `sup |Z(f)|` over `t` and continuous `v`: the `X_Z` norm.
pub fn sup_abs(f: &SampledFunction) -> f64 {
    zak_energy_range(std::slice::from_ref(f)).map(|(_, hi)| hi.sqrt()).unwrap_or(0.0)
}

fn align_all(windows: &[SampledFunction]) -> Result<Vec<SampledFunction>> {
    let first = windows
        .first()
        .ok_or_else(|| Error::Malformed("no windows given".into()))?;
    let grid = windows
        .iter()
        .skip(1)
        .fold(first.grid(), |acc, w| acc.common_refinement(&w.grid()));
    windows.iter().map(|w| w.regrid(grid.n(), grid.lo(), grid.hi())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::{make_window, WindowKind};

    fn boxf(n: usize) -> SampledFunction {
        SampledFunction::indicator(n, 0, 1).unwrap()
    }

    /// Brute-force Z(f)(i/n, j/n_v) straight from the defining sum.
    fn zak_oracle(f: &SampledFunction, i: i64, j: usize, n_v: usize) -> Complex {
        let n = f.n() as i64;
        (f.lo() - 1..=f.hi() + 1)
            .map(|k| {
                let ang = -2.0 * PI * (k as f64) * (j as f64) / n_v as f64;
                f.at_cell(i + k * n) * Complex::from_polar(1.0, ang)
            })
            .sum()
    }

    fn sample_fn() -> SampledFunction {
        let grid = GridSpec::new(4, -2, 3).unwrap();
        SampledFunction::from_cells(grid, |c| {
            Complex::new(((c * 7 + 3) % 11) as f64 / 5.0 - 1.0, ((c * 5 + 1) % 13) as f64 / 6.0 - 1.0)
        })
    }

    #[test]
    fn box_is_identically_one() {
        let z = zak(&boxf(4), 1).unwrap();
        assert!(z.values().iter().all(|&v| v == Complex::new(1.0, 0.0)));
        let z3 = zak(&boxf(2), 3).unwrap();
        assert!(z3.values().iter().all(|v| (v - Complex::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn matches_defining_sum() {
        let f = sample_fn();
        for n_v in [5, 8] {
            let z = zak(&f, n_v).unwrap();
            for i in 0..4 {
                for j in 0..n_v {
                    assert!((z.at(i, j as i64) - zak_oracle(&f, i, j, n_v)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn aliasing_rejected() {
        let err = zak(&sample_fn(), 4).unwrap_err();
        assert_eq!(err, Error::Aliasing { n_v: 4, needed: 5 });
    }

    #[test]
    fn translation_by_one_is_a_phase() {
        let f = sample_fn();
        let tf = f.translate(Ratio::from_integer(1)).unwrap();
        let n_v = 7;
        let (z, zt) = (zak(&f, n_v).unwrap(), zak(&tf, n_v).unwrap());
        for i in 0..4 {
            for j in 0..n_v as i64 {
                let phase = unit_phase(-(j as f64) / n_v as f64);
                assert!((zt.at(i, j) - phase * z.at(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip() {
        let f = sample_fn();
        let back = inverse_zak(&zak(&f, 5).unwrap());
        assert!(back.max_abs_diff(&f) < 1e-12);
        let back8 = inverse_zak(&zak(&f, 8).unwrap());
        assert!(back8.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn inverse_of_constant_is_box() {
        let ones = ZakImage {
            n_t: 4,
            n_v: 1,
            lambda: Ratio::from_integer(1),
            origin: 0,
            convention: ZakConvention::Standard,
            values: vec![Complex::new(1.0, 0.0); 4],
        };
        assert_eq!(inverse_zak(&ones), boxf(4));
    }

    #[test]
    fn scaled_convention() {
        let f = sample_fn();
        let one = zak_lambda(&f, Ratio::from_integer(1), 5).unwrap();
        let std = zak(&f, 5).unwrap();
        assert!(one.max_abs_diff(&std) < 1e-12);

        let boxed = zak_lambda(&boxf(4), Ratio::from_integer(1), 1).unwrap();
        assert!(boxed.values().iter().all(|v| (v - Complex::new(1.0, 0.0)).norm() < 1e-15));

        for lam in [Ratio::new(1, 2), Ratio::new(3, 4), Ratio::from_integer(2)] {
            let z = zak_lambda(&f, lam, 16).unwrap();
            assert!((z.l2_norm_sq() - f.l2_norm().powi(2)).abs() < 1e-12, "lambda {lam}");
            let back = inverse_zak(&z);
            assert!(back.max_abs_diff(&f) < 1e-12, "lambda {lam}");
        }
        assert!(matches!(
            zak_lambda(&f, Ratio::new(1, 3), 16),
            Err(Error::IncompatibleScale { .. })
        ));
    }

    #[test]
    fn quasi_periodicity() {
        let q = quasi_periodicity_defect(&boxf(4));
        assert_eq!(q.defect, 0.0);
        assert_eq!(q.t_phase_sign, 1);
        assert!(quasi_periodicity_defect(&sample_fn()).defect <= 1e-11);
    }

    #[test]
    fn fourier_routes_agree() {
        let f = sample_fn();
        for v in [-3.7, -1.0, 0.0, 0.25, 2.0, 15.9] {
            let a = fourier_via_zak(&f, v);
            let b = f.fourier_quadrature(&[v])[0];
            assert!((a - b).norm() < 1e-10, "v = {v}");
        }
        assert!((fourier_via_zak(&boxf(4), 0.0) - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn windowed_box() {
        let w = windowed_zak(&boxf(4), &boxf(4), Ratio::from_integer(0), None).unwrap();
        assert!(w.base.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn convolution_of_boxes() {
        let c = zak_convolve(&boxf(4), &boxf(4), None).unwrap();
        assert!(c.max_abs_diff(&boxf(4)) < 1e-15);
        let zero = SampledFunction::zeros(GridSpec::new(4, 0, 2).unwrap());
        assert_eq!(zak_convolve(&sample_fn(), &zero, None).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn energy_range_finds_interior_extrema() {
        // Z = 1 + c e^{-2πiv} with complex c: extrema |1 ± |c||² fall between
        // coarse grid frequencies.
        let c = Complex::from_polar(0.5, 1.0);
        let grid = GridSpec::new(1, 0, 2).unwrap();
        let g = SampledFunction::new(grid, vec![Complex::new(1.0, 0.0), c]).unwrap();
        let (lo, hi) = zak_energy_range(&[g]).unwrap();
        assert!((lo - 0.25).abs() < 1e-12, "{lo}");
        assert!((hi - 2.25).abs() < 1e-12, "{hi}");
    }

    #[test]
    fn dyadic_ladder_magnitudes() {
        let g = make_window(&WindowKind::DyadicLadder(3), 16).unwrap();
        let z = zak(&g, default_nv(&g)).unwrap();
        for i in 0..16 {
            for j in 0..z.n_v() as i64 {
                let expected = if i >= 1 { 1.0 } else { 0.0 };
                assert!((z.at(i, j).norm() - expected).abs() < 1e-12);
            }
        }
        assert!((sup_abs(&g) - 1.0).abs() < 1e-12);
    }
}
