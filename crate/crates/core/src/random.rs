//! Seeded pseudo-random step functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::grid::{Complex, GridSpec, SampledFunction};

/// Generator for trial `trial` of a run seeded with `seed`. Each trial gets
/// its own ChaCha stream, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Cell values drawn independently from the standard complex Gaussian
/// (real and imaginary parts `N(0, 1/2)`).
pub fn complex_gaussian_step<R: Rng + ?Sized>(rng: &mut R, grid: GridSpec) -> SampledFunction {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    SampledFunction::from_cells(grid, |_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(scale * re, scale * im)
    })
}

/// Real cell values uniform on `[lo, hi)`.
pub fn uniform_real_step<R: Rng + ?Sized>(
    rng: &mut R,
    grid: GridSpec,
    lo: f64,
    hi: f64,
) -> SampledFunction {
    SampledFunction::from_cells(grid, |_| Complex::new(rng.random_range(lo..hi), 0.0))
}
