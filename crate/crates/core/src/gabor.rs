//! Gabor systems `(g, a, b)` on rational lattices.
//!
//! In the grid model modulations are evaluated at cell left endpoints, so
//! `E_{mb}` and `E_{(m + N/b)b}` coincide and the modulation index runs over
//! the `N/b` classes `0..N/b`. With that, the compressed (bracket-product)
//! forms of the frame operators are exact finite identities rather than
//! truncations, which is what lets the direct and compressed routes be
//! compared at round-off level.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{bracket, bracket_norm, PeriodicSample};
use crate::error::{Error, Result};
use crate::grid::{cells_of, format_rational, Complex, GridSpec, Rational, SampledFunction};
use crate::random::{complex_gaussian_step, trial_rng};
use crate::zak::{sup_abs, zak_energy_range};

/// Ratios are only taken where `‖f‖_{1/b}(x)` exceeds this.
pub const BRACKET_NORM_FLOOR: f64 = 1e-9;

/// Time step `a`, frequency step `b` and grid rate `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaborLattice {
    a: Rational,
    b: Rational,
    n: usize,
}

impl GaborLattice {
    /// Checks that `a·n` and `n/b` are integers.
    pub fn new(a: Rational, b: Rational, n: usize) -> Result<Self> {
        let zero = Ratio::from_integer(0);
        if a <= zero || b <= zero {
            return Err(Error::IncompatibleLattice(format!("a = {a} and b = {b} must be positive")));
        }
        if n == 0 {
            return Err(Error::IncompatibleLattice("grid rate must be positive".into()));
        }
        if cells_of(a, n).is_none() {
            return Err(Error::IncompatibleLattice(format!("a = {a} is not a whole number of cells at n = {n}")));
        }
        if cells_of(b.recip(), n).is_none() {
            return Err(Error::IncompatibleLattice(format!("n/b = {n}/({b}) is not an integer")));
        }
        Ok(Self { a, b, n })
    }

    /// The unit lattice `(1, 1)`.
    pub fn unit(n: usize) -> Self {
        Self::new(Ratio::from_integer(1), Ratio::from_integer(1), n).expect("unit lattice is valid")
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bracket period `1/b`.
    pub fn period(&self) -> Rational {
        self.b.recip()
    }

    /// Same lattice at a finer rate.
    pub fn at_rate(&self, n: usize) -> Result<Self> {
        Self::new(self.a, self.b, n)
    }

    /// `Some(q)` when the lattice is `(1/q, 1)`.
    pub fn unit_fraction(&self) -> Option<u32> {
        (self.b == Ratio::from_integer(1) && *self.a.numer() == 1).then(|| *self.a.denom() as u32)
    }

    fn working_rate(&self, fns: &[&SampledFunction]) -> usize {
        fns.iter().fold(self.n, |acc, f| acc.lcm(&f.n()))
    }

    fn modulation_classes(&self, rate: usize) -> usize {
        cells_of(self.period(), rate).expect("lattice invariant") as usize
    }

    fn shift_cells(&self, rate: usize, n: i64) -> i64 {
        cells_of(self.a * Ratio::from_integer(n), rate).expect("lattice invariant")
    }
}

/// `⟨f, E_{mb} T_{na} g⟩` for `m` in `0..m_count` and `n` in `n_min..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientGrid {
    m_count: usize,
    n_min: i64,
    n_max: i64,
    rate: usize,
    values: Vec<Complex>,
}

impl CoefficientGrid {
    pub fn m_count(&self) -> usize {
        self.m_count
    }

    /// Translate indices covered, possibly empty.
    pub fn n_range(&self) -> std::ops::RangeInclusive<i64> {
        self.n_min..=self.n_max
    }

    /// Grid rate the coefficients were computed at.
    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn get(&self, m: usize, n: i64) -> Complex {
        self.values[self.index(m, n)]
    }

    pub fn set(&mut self, m: usize, n: i64, value: Complex) {
        let i = self.index(m, n);
        self.values[i] = value;
    }

    fn index(&self, m: usize, n: i64) -> usize {
        assert!(m < self.m_count && self.n_range().contains(&n), "coefficient ({m}, {n}) out of range");
        (n - self.n_min) as usize * self.m_count + m
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// `Σ |c_{m,n}|²`
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn zeros_like(&self) -> Self {
        Self { values: vec![Complex::new(0.0, 0.0); self.values.len()], ..self.clone() }
    }

    fn translates(&self) -> usize {
        (self.n_max - self.n_min + 1).max(0) as usize
    }
}

/// `E_{mb} T_{na} g`, with `m` reduced modulo the number of modulation classes.
pub fn atom(g: &SampledFunction, lat: &GaborLattice, m: i64, n: i64) -> Result<SampledFunction> {
    let rate = lat.working_rate(&[g]);
    let classes = lat.modulation_classes(rate) as i64;
    let g = g.refine_to(rate)?;
    let m = m.rem_euclid(classes);
    Ok(g.translate(lat.a * Ratio::from_integer(n))?.modulate(lat.b * Ratio::from_integer(m)))
}

/// Translate indices `n` for which `T_{na} g` meets the support of `f`.
fn translate_range(f: &SampledFunction, g: &SampledFunction, a: Rational) -> (i64, i64) {
    let lo = (Ratio::from_integer(f.lo() - g.hi()) / a).floor().to_integer() + 1;
    let hi = (Ratio::from_integer(f.hi() - g.lo()) / a).ceil().to_integer() - 1;
    (lo, hi)
}

/// Support of `⋃_{n_min ≤ n ≤ n_max} supp T_{na} g`.
fn union_grid(g: &SampledFunction, a: Rational, n_min: i64, n_max: i64, rate: usize) -> Result<GridSpec> {
    if n_min > n_max {
        return GridSpec::new(rate, g.lo(), g.hi());
    }
    let lo = (Ratio::from_integer(g.lo()) + a * Ratio::from_integer(n_min)).floor().to_integer();
    let hi = (Ratio::from_integer(g.hi()) + a * Ratio::from_integer(n_max)).ceil().to_integer();
    GridSpec::new(rate, lo, hi)
}

fn phase_table(classes: usize, sign: f64) -> Vec<Complex> {
    (0..classes)
        .map(|r| Complex::from_polar(1.0, sign * 2.0 * PI * r as f64 / classes as f64))
        .collect()
}

/// Analysis operator: every inner product `⟨f, g_{m,n}⟩` with an atom that
/// meets the support of `f`.
pub fn analysis(f: &SampledFunction, g: &SampledFunction, lat: &GaborLattice) -> Result<CoefficientGrid> {
    let rate = lat.working_rate(&[f, g]);
    let (f, g) = (f.refine_to(rate)?, g.refine_to(rate)?);
    let classes = lat.modulation_classes(rate);
    let (n_min, n_max) = translate_range(&f, &g, lat.a);
    let conj_phase = phase_table(classes, -1.0);
    let width = 1.0 / rate as f64;
    let rows: Vec<Vec<Complex>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let shift = lat.shift_cells(rate, n);
            let products: Vec<(i64, Complex)> = f
                .grid()
                .cell_range()
                .map(|c| (c, f.at_cell(c) * g.at_cell(c - shift).conj()))
                .filter(|(_, p)| p.norm_sqr() != 0.0)
                .collect();
            (0..classes)
                .map(|m| {
                    let sum: Complex = products
                        .iter()
                        .map(|&(c, p)| {
                            let r = (m as i64 * c).rem_euclid(classes as i64) as usize;
                            p * conj_phase[r]
                        })
                        .sum();
                    sum * width
                })
                .collect()
        })
        .collect();
    Ok(CoefficientGrid {
        m_count: classes,
        n_min,
        n_max,
        rate,
        values: rows.into_iter().flatten().collect(),
    })
}

/// Synthesis operator `Σ_{m,n} c_{m,n} g_{m,n}`.
pub fn synthesis(coeffs: &CoefficientGrid, g: &SampledFunction, lat: &GaborLattice) -> Result<SampledFunction> {
    let rate = coeffs.rate;
    if !rate.is_multiple_of(g.n()) || !rate.is_multiple_of(lat.n) || lat.modulation_classes(rate) != coeffs.m_count {
        return Err(Error::IncompatibleLattice(format!(
            "coefficients at rate {rate} do not match window rate {} and lattice rate {}",
            g.n(),
            lat.n
        )));
    }
    let g = g.refine_to(rate)?;
    let classes = coeffs.m_count;
    let phase = phase_table(classes, 1.0);
    let grid = union_grid(&g, lat.a, coeffs.n_min, coeffs.n_max, rate)?;
    let mut out = SampledFunction::zeros(grid);
    let mut acc = vec![Complex::new(0.0, 0.0); grid.cells()];
    let base = grid.cell_range().start;
    for (row, n) in (coeffs.n_min..=coeffs.n_max).enumerate() {
        let cs = &coeffs.values[row * classes..(row + 1) * classes];
        if cs.iter().all(|c| c.norm_sqr() == 0.0) {
            continue;
        }
        // Σ_m c_{m,n} e^{2πi m r / classes} for every residue r
        let folded: Vec<Complex> = (0..classes)
            .map(|r| {
                cs.iter()
                    .enumerate()
                    .map(|(m, c)| c * phase[(m * r) % classes])
                    .sum()
            })
            .collect();
        let shift = lat.shift_cells(rate, n);
        for c in g.grid().cell_range() {
            let target = c + shift;
            let value = g.at_cell(c);
            if value.norm_sqr() == 0.0 {
                continue;
            }
            let r = target.rem_euclid(classes as i64) as usize;
            acc[(target - base) as usize] += folded[r] * value;
        }
    }
    if coeffs.translates() > 0 {
        out = SampledFunction::new(grid, acc)?;
    }
    Ok(out)
}

/// `S f = Σ_{m,n} ⟨f, g_{m,n}⟩ g_{m,n}` computed literally.
pub fn frame_op_direct(f: &SampledFunction, g: &SampledFunction, lat: &GaborLattice) -> Result<SampledFunction> {
    synthesis(&analysis(f, g, lat)?, g, lat)
}

/// `S_g f = (1/b) Σ_k ⟨f, T_{ka} g⟩_{1/b} T_{ka} g`.
pub fn frame_op_compressed(f: &SampledFunction, g: &SampledFunction, lat: &GaborLattice) -> Result<SampledFunction> {
    let rate = lat.working_rate(&[f, g]);
    let (f, g) = (f.refine_to(rate)?, g.refine_to(rate)?);
    let (n_min, n_max) = translate_range(&f, &g, lat.a);
    let grid = union_grid(&g, lat.a, n_min, n_max, rate)?;
    let inv_b = ratio_f64(lat.period());
    let mut acc = vec![Complex::new(0.0, 0.0); grid.cells()];
    let base = grid.cell_range().start;
    for n in n_min..=n_max {
        let shift_r = lat.a * Ratio::from_integer(n);
        let gn = g.translate(shift_r)?;
        let coeff = bracket(&f, &gn, lat.period())?;
        for c in gn.grid().cell_range() {
            let value = gn.at_cell(c);
            if value.norm_sqr() != 0.0 {
                acc[(c - base) as usize] += coeff.at_cell(c) * value * inv_b;
            }
        }
    }
    SampledFunction::new(grid, acc)
}

/// Indicator of the tile `[k/b, (k+1)/b)` at the given rate.
fn tile_indicator(lat: &GaborLattice, k: i64, rate: usize) -> Result<SampledFunction> {
    let period = lat.period();
    let start = period * Ratio::from_integer(k);
    let end = start + period;
    let grid = GridSpec::new(rate, start.floor().to_integer(), end.ceil().to_integer())?;
    let (c0, c1) = (
        cells_of(start, rate).expect("lattice invariant"),
        cells_of(end, rate).expect("lattice invariant"),
    );
    Ok(SampledFunction::from_cells(grid, |c| {
        Complex::new(if c >= c0 && c < c1 { 1.0 } else { 0.0 }, 0.0)
    }))
}

/// Preframe operator `𝒯_g f = (1/b)^{1/2} Σ_k ⟨f, e_k⟩_{1/b} T_{ka} g` with
/// `e_k = 1_{[k/b, (k+1)/b)}`.
pub fn preframe_compressed(f: &SampledFunction, g: &SampledFunction, lat: &GaborLattice) -> Result<SampledFunction> {
    let rate = lat.working_rate(&[f, g]);
    let (f, g) = (f.refine_to(rate)?, g.refine_to(rate)?);
    let period = lat.period();
    let k_min = (Ratio::from_integer(f.lo()) / period).floor().to_integer();
    let k_max = (Ratio::from_integer(f.hi()) / period).ceil().to_integer() - 1;
    let grid = union_grid(&g, lat.a, k_min, k_max, rate)?;
    let scale = ratio_f64(period).sqrt();
    let mut acc = vec![Complex::new(0.0, 0.0); grid.cells()];
    let base = grid.cell_range().start;
    for k in k_min..=k_max {
        let coeff = bracket(&f, &tile_indicator(lat, k, rate)?, period)?;
        let gk = g.translate(lat.a * Ratio::from_integer(k))?;
        for c in gk.grid().cell_range() {
            let value = gk.at_cell(c);
            if value.norm_sqr() != 0.0 {
                acc[(c - base) as usize] += coeff.at_cell(c) * value * scale;
            }
        }
    }
    SampledFunction::new(grid, acc)
}

/// Frame transform `𝒯*_g f = (1/b)^{1/2} Σ_k ⟨f, T_{ka} g⟩_{1/b} e_k`: tile `k`
/// carries the bracket with the `k`-th translate.
pub fn frame_transform_compressed(
    f: &SampledFunction,
    g: &SampledFunction,
    lat: &GaborLattice,
) -> Result<SampledFunction> {
    let rate = lat.working_rate(&[f, g]);
    let (f, g) = (f.refine_to(rate)?, g.refine_to(rate)?);
    let period = lat.period();
    let (n_min, n_max) = translate_range(&f, &g, lat.a);
    let (n_min, n_max) = if n_min > n_max { (0, 0) } else { (n_min, n_max) };
    let lo = (period * Ratio::from_integer(n_min)).floor().to_integer();
    let hi = (period * Ratio::from_integer(n_max + 1)).ceil().to_integer();
    let grid = GridSpec::new(rate, lo, hi)?;
    let tile_cells = lat.modulation_classes(rate) as i64;
    let scale = ratio_f64(period).sqrt();
    let brackets: Vec<PeriodicSample> = (n_min..=n_max)
        .map(|n| bracket(&f, &g.translate(lat.a * Ratio::from_integer(n))?, period))
        .collect::<Result<_>>()?;
    Ok(SampledFunction::from_cells(grid, |c| {
        let k = c.div_euclid(tile_cells);
        if k < n_min || k > n_max {
            Complex::new(0.0, 0.0)
        } else {
            brackets[(k - n_min) as usize].at_cell(c) * scale
        }
    }))
}

/// How a [`FrameBoundsReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsMethod {
    ZakUnit,
    ZakMultiplierQ,
    AframeEmpirical,
    ModularEmpirical,
    DirectEigen,
}

impl BoundsMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundsMethod::ZakUnit => "zak_unit",
            BoundsMethod::ZakMultiplierQ => "zak_multiplier_q",
            BoundsMethod::AframeEmpirical => "aframe_empirical",
            BoundsMethod::ModularEmpirical => "modular_empirical",
            BoundsMethod::DirectEigen => "direct_eigen",
        }
    }

    /// Whether the bounds are inner estimates from sampling.
    pub fn is_empirical(&self) -> bool {
        !matches!(self, BoundsMethod::ZakUnit | BoundsMethod::ZakMultiplierQ)
    }
}

/// Lower and upper frame bound estimates.
///
/// Zak-based bounds are squared magnitudes: `(g,1,1)` has frame operator
/// `Z(Sf) = Z(f)|Z(g)|²`, so its bounds are the extremes of `|Z(g)|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameBoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundsMethod,
    pub grid: GridSpec,
    pub lattice: GaborLattice,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct BoundsJson {
    lower: f64,
    upper: f64,
    method: &'static str,
    n: usize,
    a: String,
    b: String,
    trials: Option<u64>,
    seed: Option<u64>,
}

impl Serialize for FrameBoundsReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundsJson {
            lower: self.lower,
            upper: self.upper,
            method: self.method.as_str(),
            n: self.lattice.n,
            a: format_rational(&self.lattice.a),
            b: format_rational(&self.lattice.b),
            trials: self.trials,
            seed: self.seed,
        }
        .serialize(s)
    }
}

/// Bounds of `(g, 1, 1)` from the extremes of `|Z(g)|²`.
pub fn frame_bounds_zak(g: &SampledFunction) -> FrameBoundsReport {
    let (lower, upper) =
        zak_energy_range(std::slice::from_ref(g)).expect("a single window always aligns");
    FrameBoundsReport {
        lower: lower.max(0.0),
        upper,
        method: BoundsMethod::ZakUnit,
        grid: g.grid(),
        lattice: GaborLattice::unit(g.n()),
        trials: None,
        seed: None,
    }
}

/// The translates `T_{r/q} g`, `r = 0..q`, whose Zak energies add up to the
/// frame multiplier of `(g, 1/q, 1)`.
pub fn multiplier_windows(g: &SampledFunction, q: u32) -> Result<Vec<SampledFunction>> {
    if q == 0 {
        return Err(Error::IncompatibleLattice("q must be positive".into()));
    }
    let rate = g.n().lcm(&(q as usize));
    let g = g.refine_to(rate)?;
    (0..q as i64).map(|r| g.translate(Ratio::new(r, q as i64))).collect()
}

/// Bounds of `(g, 1/q, 1)` from the extremes of `Σ_r |Z(T_{r/q} g)|²`.
/// The window is refined to a multiple of `q` cells per unit if needed.
pub fn frame_bounds_multiplier(g: &SampledFunction, q: u32) -> Result<FrameBoundsReport> {
    let windows = multiplier_windows(g, q)?;
    let (lower, upper) = zak_energy_range(&windows)?;
    let rate = windows[0].n();
    Ok(FrameBoundsReport {
        lower: lower.max(0.0),
        upper,
        method: BoundsMethod::ZakMultiplierQ,
        grid: g.grid(),
        lattice: GaborLattice::new(Ratio::new(1, q as i64), Ratio::from_integer(1), rate)?,
        trials: None,
        seed: None,
    })
}

/// Eigenvalue range of the frame operator compressed to functions on
/// `[lo, hi)`. Rayleigh quotients of `S`, so an inner estimate of `[A, B]`.
pub fn frame_bounds_direct_eigen(
    g: &SampledFunction,
    lat: &GaborLattice,
    lo: i64,
    hi: i64,
) -> Result<FrameBoundsReport> {
    let rate = lat.working_rate(&[g]);
    let grid = GridSpec::new(rate, lo, hi)?;
    let cells = grid.cells();
    let norm = (rate as f64).sqrt();
    let columns: Vec<Vec<Complex>> = (0..cells)
        .into_par_iter()
        .map(|j| {
            let e = SampledFunction::from_cells(grid, |c| {
                let on = c - grid.cell_range().start == j as i64;
                Complex::new(if on { norm } else { 0.0 }, 0.0)
            });
            let s = frame_op_direct(&e, g, lat)?;
            Ok(grid.cell_range().map(|c| s.at_cell(c) / norm).collect())
        })
        .collect::<Result<_>>()?;
    let matrix = DMatrix::from_fn(cells, cells, |i, j| columns[j][i]);
    let hermitian = (&matrix + matrix.adjoint()) * Complex::new(0.5, 0.0);
    let eig = hermitian.symmetric_eigen();
    let (lower, upper) = eig
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &e| (a.min(e), b.max(e)));
    Ok(FrameBoundsReport {
        lower,
        upper,
        method: BoundsMethod::DirectEigen,
        grid,
        lattice: lat.at_rate(rate)?,
        trials: None,
        seed: None,
    })
}

/// Pointwise ratios `(1/b) Σ_n |⟨f, T_{na} g⟩_{1/b}(x)|² / ‖f‖²_{1/b}(x)`.
///
/// With `normalize`, `f` is first divided by its bracket norm and the ratio
/// is taken without a denominator, following the modular-frame argument.
fn trial_ratio_range(
    f: &SampledFunction,
    g: &SampledFunction,
    lat: &GaborLattice,
    normalize: bool,
) -> Result<Option<(f64, f64)>> {
    let period = lat.period();
    let inv_b = ratio_f64(period);
    let norm = bracket_norm(f, period)?;
    let valid: Vec<bool> = norm.values().iter().map(|z| z.re > BRACKET_NORM_FLOOR).collect();
    let (f, denom) = if normalize {
        let (f0, _) = normalize_by_bracket_norm(f, period)?;
        (f0, None)
    } else {
        (f.clone(), Some(norm))
    };
    let (n_min, n_max) = translate_range(&f, g, lat.a);
    let mut energy = vec![0.0; valid.len()];
    for n in n_min..=n_max {
        let gn = g.translate(lat.a * Ratio::from_integer(n))?;
        for (e, z) in energy.iter_mut().zip(bracket(&f, &gn, period)?.values()) {
            *e += z.norm_sqr();
        }
    }
    let mut range: Option<(f64, f64)> = None;
    for (i, e) in energy.iter().enumerate() {
        if !valid[i] {
            continue;
        }
        let ratio = match &denom {
            Some(d) => inv_b * e / d.values()[i].re.powi(2),
            None => inv_b * e,
        };
        range = Some(match range {
            None => (ratio, ratio),
            Some((lo, hi)) => (lo.min(ratio), hi.max(ratio)),
        });
    }
    Ok(range)
}

/// `f / ‖f‖_{period}` where the bracket norm exceeds the floor, zero
/// elsewhere. Also returns the largest deviation of `‖f₀‖_{period}` from one
/// on that set.
pub fn normalize_by_bracket_norm(f: &SampledFunction, period: Rational) -> Result<(SampledFunction, f64)> {
    let norm = bracket_norm(f, period)?;
    let inverse = norm.map(|z| {
        if z.re > BRACKET_NORM_FLOOR {
            Complex::new(1.0 / z.re, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let f0 = inverse.act_on(f)?;
    let n0 = bracket_norm(&f0, period)?;
    let defect = norm
        .values()
        .iter()
        .zip(n0.values())
        .filter(|(z, _)| z.re > BRACKET_NORM_FLOOR)
        .map(|(_, w)| (w.re - 1.0).abs())
        .fold(0.0, f64::max);
    Ok((f0, defect))
}

/// Test function for one empirical trial: complex Gaussian cells on the
/// window's support widened by one unit each side.
pub fn trial_function(g: &SampledFunction, rate: usize, seed: u64, trial: u64) -> SampledFunction {
    let grid = GridSpec::new(rate, g.lo() - 1, g.hi() + 1).expect("widened support is nonempty");
    complex_gaussian_step(&mut trial_rng(seed, trial), grid)
}

fn empirical_bounds(
    g: &SampledFunction,
    lat: &GaborLattice,
    trials: u64,
    seed: u64,
    normalize: bool,
) -> Result<FrameBoundsReport> {
    if trials == 0 {
        return Err(Error::InvalidBounds("at least one trial is required".into()));
    }
    let rate = lat.working_rate(&[g]);
    let g = g.refine_to(rate)?;
    let ranges: Vec<Option<(f64, f64)>> = (0..trials)
        .into_par_iter()
        .map(|t| trial_ratio_range(&trial_function(&g, rate, seed, t), &g, lat, normalize))
        .collect::<Result<_>>()?;
    let (lower, upper) = ranges
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(f64, f64)>, (lo, hi)| match acc {
            None => Some((lo, hi)),
            Some((a, b)) => Some((a.min(lo), b.max(hi))),
        })
        .ok_or(Error::NoValidPoints)?;
    Ok(FrameBoundsReport {
        lower,
        upper,
        method: if normalize { BoundsMethod::ModularEmpirical } else { BoundsMethod::AframeEmpirical },
        grid: g.grid(),
        lattice: lat.at_rate(rate)?,
        trials: Some(trials),
        seed: Some(seed),
    })
}

/// Empirical range of the pointwise `1/b`-frame ratio over seeded random
/// test functions. Both ends are inner estimates of the true bounds.
pub fn aframe_bounds_empirical(
    g: &SampledFunction,
    lat: &GaborLattice,
    trials: u64,
    seed: u64,
) -> Result<FrameBoundsReport> {
    empirical_bounds(g, lat, trials, seed, false)
}

/// The same trials as [`aframe_bounds_empirical`], with each test function
/// normalized by its bracket norm before the ratio is taken.
pub fn modular_frame_check(
    g: &SampledFunction,
    lat: &GaborLattice,
    trials: u64,
    seed: u64,
) -> Result<FrameBoundsReport> {
    empirical_bounds(g, lat, trials, seed, true)
}

/// `‖g‖_{X_Z} = sup |Z(g)|`.
pub fn bessel_xz_norm(g: &SampledFunction) -> f64 {
    sup_abs(g)
}

/// `max_x |⟨g, T_k g⟩_1(x)|` for `k = 1..=terms`.
pub fn ccj_increments(g: &SampledFunction, terms: u32) -> Result<Vec<f64>> {
    let one = Ratio::from_integer(1);
    (1..=terms as i64)
        .map(|k| Ok(bracket(g, &g.translate(Ratio::from_integer(k))?, one)?.max_abs()))
        .collect()
}

/// `s_K = max_x Σ_{|k| ≤ K} |⟨g, T_k g⟩_1(x)|` for `K = 1..=terms`.
pub fn ccj_partial_sums(g: &SampledFunction, terms: u32) -> Result<Vec<f64>> {
    let one = Ratio::from_integer(1);
    let mut running: Vec<f64> = bracket(g, g, one)?.values().iter().map(|z| z.norm()).collect();
    let mut sums = Vec::with_capacity(terms as usize);
    for k in 1..=terms as i64 {
        for shift in [k, -k] {
            let b = bracket(g, &g.translate(Ratio::from_integer(shift))?, one)?;
            for (acc, z) in running.iter_mut().zip(b.values()) {
                *acc += z.norm();
            }
        }
        sums.push(running.iter().copied().fold(0.0, f64::max));
    }
    Ok(sums)
}

/// Whether `g` satisfies the nonnegative real hypothesis of the summability
/// criterion.
pub fn is_nonnegative_real(g: &SampledFunction) -> bool {
    g.values().iter().all(|z| z.im == 0.0 && z.re >= 0.0)
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Ratio::new(p, q)
    }

    fn boxf(n: usize) -> SampledFunction {
        SampledFunction::indicator(n, 0, 1).unwrap()
    }

    fn sample(n: usize, lo: i64, hi: i64, salt: i64) -> SampledFunction {
        let grid = GridSpec::new(n, lo, hi).unwrap();
        SampledFunction::from_cells(grid, |c| {
            Complex::new(((c * 7 + salt) % 11) as f64 / 5.0 - 1.0, ((c * 3 + 2 * salt) % 7) as f64 / 4.0 - 0.5)
        })
    }

    #[test]
    fn lattice_invariants() {
        assert!(GaborLattice::new(r(1, 2), r(1, 1), 4).is_ok());
        assert!(GaborLattice::new(r(1, 3), r(1, 1), 4).is_err());
        assert!(GaborLattice::new(r(1, 1), r(3, 1), 4).is_err());
        assert!(GaborLattice::new(r(1, 1), r(2, 1), 4).is_ok());
        assert!(GaborLattice::new(r(0, 1), r(1, 1), 4).is_err());
        assert_eq!(GaborLattice::new(r(1, 3), r(1, 1), 6).unwrap().unit_fraction(), Some(3));
        assert_eq!(GaborLattice::new(r(1, 1), r(2, 1), 4).unwrap().unit_fraction(), None);
    }

    #[test]
    fn atoms() {
        let lat = GaborLattice::unit(4);
        assert_eq!(atom(&boxf(4), &lat, 0, 0).unwrap(), boxf(4));
        let g = sample(4, 0, 2, 1);
        let lat2 = GaborLattice::new(r(1, 2), r(1, 2), 4).unwrap();
        // N/b = 8 classes
        for m in -3..3 {
            for n in -1..2 {
                let a = atom(&g, &lat2, m, n).unwrap();
                let b = atom(&g, &lat2, m + 8, n).unwrap();
                assert_eq!(a, b);
                let t = g.translate(r(n, 2)).unwrap();
                for (x, y) in a.values().iter().zip(t.values()) {
                    assert!((x.norm() - y.norm()).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn box_is_orthonormal_at_unit_lattice() {
        let lat = GaborLattice::unit(4);
        let c = analysis(&boxf(4), &boxf(4), &lat).unwrap();
        for n in c.n_range() {
            for m in 0..c.m_count() {
                let expected = if (m, n) == (0, 0) { 1.0 } else { 0.0 };
                assert!((c.get(m, n) - Complex::new(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unit_coefficient_synthesizes_window() {
        let lat = GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap();
        let g = sample(4, 0, 2, 3);
        let mut c = analysis(&g, &g, &lat).unwrap().zeros_like();
        c.set(0, 0, Complex::new(1.0, 0.0));
        assert!(synthesis(&c, &g, &lat).unwrap().max_abs_diff(&g) < 1e-14);
    }

    #[test]
    fn tight_frames_of_box() {
        let f = sample(4, 0, 1, 5);
        let s1 = frame_op_direct(&f, &boxf(4), &GaborLattice::unit(4)).unwrap();
        assert!(s1.max_abs_diff(&f) < 1e-13);
        let half = GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap();
        let f2 = sample(4, -1, 2, 2);
        let s2 = frame_op_direct(&f2, &boxf(4), &half).unwrap();
        assert!(s2.max_abs_diff(&f2.scale(Complex::new(2.0, 0.0))) < 1e-13);
    }

    #[test]
    fn compressed_matches_direct() {
        let f = sample(4, -1, 3, 1);
        let g = sample(2, 0, 2, 4);
        for lat in [
            GaborLattice::unit(4),
            GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap(),
            GaborLattice::new(r(3, 4), r(1, 2), 4).unwrap(),
            GaborLattice::new(r(1, 2), r(2, 1), 4).unwrap(),
        ] {
            let d = frame_op_direct(&f, &g, &lat).unwrap();
            let c = frame_op_compressed(&f, &g, &lat).unwrap();
            assert!(d.relative_l2_diff(&c) < 1e-12, "lattice {lat:?}");
        }
    }

    #[test]
    fn bounds_of_box() {
        let rep = frame_bounds_zak(&boxf(8));
        assert_eq!((rep.lower, rep.upper), (1.0, 1.0));
        let rep2 = frame_bounds_multiplier(&boxf(8), 2).unwrap();
        assert!((rep2.lower - 2.0).abs() < 1e-14 && (rep2.upper - 2.0).abs() < 1e-14);
        let rep1 = frame_bounds_multiplier(&boxf(8), 1).unwrap();
        assert_eq!((rep1.lower, rep1.upper), (rep.lower, rep.upper));
        let eps = 0.3;
        let scaled = frame_bounds_zak(&boxf(8).scale(Complex::new(1.0 + eps, 0.0)));
        assert!((scaled.lower - 1.69).abs() < 1e-14 && (scaled.upper - 1.69).abs() < 1e-14);
    }

    #[test]
    fn direct_eigen_for_box() {
        let lat = GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap();
        let rep = frame_bounds_direct_eigen(&boxf(4), &lat, 0, 3).unwrap();
        assert!((rep.lower - 2.0).abs() < 1e-12 && (rep.upper - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empirical_box() {
        let rep = aframe_bounds_empirical(&boxf(4), &GaborLattice::unit(4), 8, 1).unwrap();
        assert!((rep.lower - 1.0).abs() < 1e-12 && (rep.upper - 1.0).abs() < 1e-12);
        let half = GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap();
        let rep2 = aframe_bounds_empirical(&boxf(4), &half, 8, 1).unwrap();
        assert!((rep2.lower - 2.0).abs() < 1e-12 && (rep2.upper - 2.0).abs() < 1e-12);
        let m = modular_frame_check(&boxf(4), &GaborLattice::unit(4), 8, 1).unwrap();
        assert!((m.lower - 1.0).abs() < 1e-12 && (m.upper - 1.0).abs() < 1e-12);
        assert!(aframe_bounds_empirical(&boxf(4), &GaborLattice::unit(4), 0, 1).is_err());
    }

    #[test]
    fn normalized_test_functions_have_unit_bracket_norm() {
        let f = sample(4, -1, 2, 6);
        let (_, defect) = normalize_by_bracket_norm(&f, r(1, 1)).unwrap();
        assert!(defect < 1e-14);
    }

    #[test]
    fn ccj_for_box() {
        let sums = ccj_partial_sums(&boxf(4), 5).unwrap();
        assert!(sums.iter().all(|&s| s == 1.0));
        assert!(is_nonnegative_real(&boxf(4)));
    }

    #[test]
    fn report_json_shape() {
        let rep = frame_bounds_multiplier(&boxf(16), 2).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["method"], "zak_multiplier_q");
        assert_eq!(v["a"], "1/2");
        assert_eq!(v["b"], "1/1");
        assert_eq!(v["n"], 16);
        assert!(v["trials"].is_null() && v["seed"].is_null());
    }
}
