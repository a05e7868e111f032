#![allow(dead_code)]

use hcm_gabor::grid::{Complex, GridSpec, SampledFunction};
use hcm_gabor::random::{complex_gaussian_step, trial_rng, uniform_real_step};

/// Seeded complex Gaussian step function on `[lo, hi)`.
pub fn random_step(seed: u64, trial: u64, n: usize, lo: i64, hi: i64) -> SampledFunction {
    complex_gaussian_step(&mut trial_rng(seed, trial), GridSpec::new(n, lo, hi).unwrap())
}

/// Seeded real step function with values uniform on `[lo_v, hi_v)`.
pub fn random_real(seed: u64, trial: u64, n: usize, lo: i64, hi: i64, lo_v: f64, hi_v: f64) -> SampledFunction {
    uniform_real_step(&mut trial_rng(seed, trial), GridSpec::new(n, lo, hi).unwrap(), lo_v, hi_v)
}

pub fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// `Σ_{k} f(t + k) e^{-2πikv}` straight from the definition, at the cell
/// with absolute index `cell` (`0 ≤ cell < n`).
pub fn zak_oracle(f: &SampledFunction, cell: i64, v: f64) -> Complex {
    let n = f.n() as i64;
    let mut sum = Complex::new(0.0, 0.0);
    for k in f.lo() - 1..=f.hi() {
        let x = f.at_cell(cell + k * n);
        let angle = -2.0 * std::f64::consts::PI * k as f64 * v;
        sum += x * Complex::new(angle.cos(), angle.sin());
    }
    sum
}

/// `⟨f, g⟩_a(x)` at absolute cell `cell` by summing translates directly.
pub fn bracket_oracle(f: &SampledFunction, g: &SampledFunction, period_cells: i64, cell: i64) -> Complex {
    let mut sum = Complex::new(0.0, 0.0);
    let lo = f.lo().min(g.lo()) * f.n() as i64;
    let hi = f.hi().max(g.hi()) * f.n() as i64;
    let mut k = (lo - cell).div_euclid(period_cells) - 1;
    while cell + k * period_cells < hi + period_cells {
        let c = cell + k * period_cells;
        sum += f.at_cell(c) * g.at_cell(c).conj();
        k += 1;
    }
    sum
}
