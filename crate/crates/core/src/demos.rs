//! End-to-end reproductions of the worked examples, each returning a JSON
//! summary whose `pass` field says whether the expected behavior was seen.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::bracket::{bracket, tail_norms};
use crate::error::{Error, Result};
use crate::gabor::{
    ccj_increments, ccj_partial_sums, frame_bounds_direct_eigen, frame_bounds_multiplier, frame_bounds_zak,
    frame_op_direct, multiplier_windows, GaborLattice,
};
use crate::grid::{Complex, GridSpec, SampledFunction};
use crate::perturb::{multiplicative_certify, product_window};
use crate::random::{complex_gaussian_step, trial_rng};
use crate::windows::{make_window, WindowKind};
use crate::zak::{fourier_via_zak, sup_abs, zak, zak_energy_grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Demo {
    DyadicFrame,
    HarmonicNotBessel,
    SpikesUnbounded,
    CuspFourier,
    BoxHalfstep,
    MultPerturb,
}

impl Demo {
    pub const ALL: [Demo; 6] = [
        Demo::DyadicFrame,
        Demo::HarmonicNotBessel,
        Demo::SpikesUnbounded,
        Demo::CuspFourier,
        Demo::BoxHalfstep,
        Demo::MultPerturb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Demo::DyadicFrame => "dyadic-frame",
            Demo::HarmonicNotBessel => "harmonic-not-bessel",
            Demo::SpikesUnbounded => "spikes-unbounded",
            Demo::CuspFourier => "cusp-fourier",
            Demo::BoxHalfstep => "box-halfstep",
            Demo::MultPerturb => "mult-perturb",
        }
    }

    pub fn run(&self) -> Result<Value> {
        match self {
            Demo::DyadicFrame => dyadic_frame(),
            Demo::HarmonicNotBessel => harmonic_not_bessel(),
            Demo::SpikesUnbounded => spikes_unbounded(),
            Demo::CuspFourier => cusp_fourier(),
            Demo::BoxHalfstep => box_halfstep(),
            Demo::MultPerturb => mult_perturb(),
        }
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Demo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Demo::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown demo {s:?}")))
    }
}

/// Truncation of the harmonic comb used by the demo.
pub const HARMONIC_TRUNCATION: u32 = 200_000;

/// `H_k = Σ_{j ≤ k} 1/j`
pub fn harmonic_number(k: u64) -> f64 {
    (1..=k).rev().map(|j| 1.0 / j as f64).sum()
}

/// `Σ_{j ≤ k} 1/j²`
pub fn harmonic_number_2(k: u64) -> f64 {
    (1..=k).rev().map(|j| 1.0 / (j as f64 * j as f64)).sum()
}

/// Ladder with `K = 10` at `N = 2048`: `|Z| ∈ {0, 1}`, every truncation
/// step has bracket norm 1 and every truncation has `X_Z` norm 1.
pub fn dyadic_frame() -> Result<Value> {
    const K: u32 = 10;
    const N: usize = 2048;
    let g = make_window(&WindowKind::DyadicLadder(K), N)?;
    let image = zak(&g, g.grid().units())?;
    // rows i < N / 2^{K+1} have t < 2^{-(K+1)}
    let uncovered = N >> (K + 1);
    let (mut on_defect, mut off_max) = (0.0f64, 0.0f64);
    for i in 0..image.n_t() {
        for z in image.row(i) {
            if i < uncovered {
                off_max = off_max.max(z.norm());
            } else {
                on_defect = on_defect.max((z.norm() - 1.0).abs());
            }
        }
    }
    let family: Vec<SampledFunction> =
        (1..=K).map(|k| make_window(&WindowKind::DyadicLadder(k), N)).collect::<Result<_>>()?;
    let tails = tail_norms(&family, Ratio::from_integer(1))?;
    let xz: Vec<f64> = family.iter().map(sup_abs).collect();
    let bounds = frame_bounds_zak(&g);
    let tail_defect = tails.iter().map(|t| (t - 1.0).abs()).fold(0.0, f64::max);
    let xz_defect = xz.iter().map(|t| (t - 1.0).abs()).fold(0.0, f64::max);
    let pass = on_defect <= 1e-12 && off_max <= 1e-12 && tail_defect <= 1e-12 && xz_defect <= 1e-12;
    Ok(json!({
        "window": format!("dyadic:{K}"),
        "n": N,
        "unit_modulus_defect": on_defect,
        "uncovered_rows": uncovered,
        "uncovered_max_abs": off_max,
        "tail_norms": tails,
        "xz_norms": xz,
        "frame_bounds": bounds,
        "pass": pass,
    }))
}

/// Harmonic comb: the brackets `⟨g, T_k g⟩_1 ≈ H_k/k` are square summable
/// but their partial sums grow like `(log K)²/2`.
pub fn harmonic_not_bessel() -> Result<Value> {
    const TERMS: u32 = 10;
    let g = make_window(&WindowKind::HarmonicComb(HARMONIC_TRUNCATION), 1)?;
    let increments = ccj_increments(&g, TERMS)?;
    let one_sided: Vec<f64> = increments
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let squares: Vec<f64> = increments
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x * x;
            Some(*acc)
        })
        .collect();
    let two_sided = ccj_partial_sums(&g, TERMS)?;
    let k = TERMS as u64;
    let identity = (harmonic_number(k).powi(2) + harmonic_number_2(k)) / 2.0;
    let square_bound: f64 = (1..=k).map(|j| (harmonic_number(j) / j as f64).powi(2)).sum();
    let monotone = one_sided.windows(2).all(|w| w[1] > w[0]) && two_sided.windows(2).all(|w| w[1] > w[0]);
    let s_k = *one_sided.last().expect("at least one term");
    let pass = monotone && (s_k - identity).abs() < 1e-3 && *squares.last().unwrap() <= square_bound;
    Ok(json!({
        "window": format!("harmonic:{HARMONIC_TRUNCATION}"),
        "increments": increments,
        "one_sided_partial_sums": one_sided,
        "two_sided_partial_sums": two_sided,
        "s_k": s_k,
        "identity_value": identity,
        "square_partial_sums": squares,
        "square_bound": square_bound,
        "monotone_growth": monotone,
        "pass": pass,
    }))
}

/// Spikes `Σ_{k ≤ K} 1_{[k, k+1/k²)}`: bracket norm² equals `K` while the
/// sup norm stays 1 and the `L²` norm stays below `π²/6`.
pub fn spikes_unbounded() -> Result<Value> {
    const N: usize = 1024;
    let bound = std::f64::consts::PI.powi(2) / 6.0;
    let rows: Vec<Value> = (2..=12u32)
        .map(|k| {
            let g = make_window(&WindowKind::Spikes(k), N)?;
            let hcm_sq = bracket(&g, &g, Ratio::from_integer(1))?.max_re();
            let l2_sq = g.l2_norm().powi(2);
            Ok(json!({
                "k": k,
                "hcm_sq": hcm_sq,
                "sup": g.sup_norm(),
                "l2_sq": l2_sq,
                "pass": hcm_sq == k as f64 && g.sup_norm() == 1.0 && l2_sq <= bound,
            }))
        })
        .collect::<Result<_>>()?;
    let pass = rows.iter().all(|r| r["pass"] == true);
    Ok(json!({ "n": N, "l2_sq_bound": bound, "rows": rows, "pass": pass }))
}

/// Cusp `x^{-1/3} 1_{[0,1)}`: `|f̂(0)| = 3/2`, `|f̂| ≤ 2` on `[-1, 1]` and
/// `|f̂(v)| ≤ 2|v|^{-2/3}` beyond, plus the Zak route to `f̂` on step windows.
pub fn cusp_fourier() -> Result<Value> {
    const N: usize = 4096;
    let cusp = make_window(&WindowKind::Cusp, N)?;
    let near: Vec<f64> = (0..1024).map(|j| -1.0 + 2.0 * j as f64 / 1023.0).collect();
    let far: Vec<f64> = (1..=1024).map(|j| 1.0 + 19.0 * j as f64 / 1024.0).collect();
    let at_zero = cusp.fourier_quadrature(&[0.0])[0].norm();
    let near_max = cusp.fourier_quadrature(&near).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let far_ratio = cusp
        .fourier_quadrature(&far)
        .iter()
        .zip(&far)
        .map(|(z, v)| z.norm() * v.powf(2.0 / 3.0))
        .fold(0.0, f64::max);
    let zak_defect = fourier_zak_defect()?;
    let pass = (at_zero - 1.5).abs() <= 1e-6 && near_max <= 2.0 && far_ratio <= 2.0 && zak_defect <= 1e-8;
    Ok(json!({
        "n": N,
        "abs_fhat_at_zero": at_zero,
        "max_abs_fhat_on_unit_interval": near_max,
        "max_abs_fhat_times_v_pow_two_thirds": far_ratio,
        "fourier_via_zak_defect": zak_defect,
        "pass": pass,
    }))
}

/// Largest `|fourier_via_zak − fourier_quadrature|` over a few step windows.
pub fn fourier_zak_defect() -> Result<f64> {
    let windows = [
        make_window(&WindowKind::Box, 4)?,
        make_window(&WindowKind::HarmonicComb(5), 4)?,
        make_window(&WindowKind::DyadicLadder(3), 16)?,
        make_window(&WindowKind::Gaussian { sigma: 0.5, half_width: 3 }, 16)?,
    ];
    let freqs: Vec<f64> = (0..41).map(|j| -5.0 + 0.25 * j as f64 + 0.013).collect();
    let mut defect: f64 = 0.0;
    for w in &windows {
        for (v, q) in freqs.iter().zip(w.fourier_quadrature(&freqs)) {
            defect = defect.max((fourier_via_zak(w, *v) - q).norm());
        }
    }
    Ok(defect)
}

/// Box at `(1/2, 1)`: multiplier ≡ 2, `S f = 2f`, and `Z(Sf) = Z(f)·2`.
pub fn box_halfstep() -> Result<Value> {
    const N: usize = 16;
    let g = make_window(&WindowKind::Box, N)?;
    let lat = GaborLattice::new(Ratio::new(1, 2), Ratio::from_integer(1), N)?;
    let bounds = frame_bounds_multiplier(&g, 2)?;
    let eigen = frame_bounds_direct_eigen(&g, &lat, 0, 2)?;
    let mut op_defect: f64 = 0.0;
    let mut diag_defect: f64 = 0.0;
    for trial in 0..8 {
        let f = complex_gaussian_step(&mut trial_rng(7, trial), GridSpec::new(N, -1, 2)?);
        let s = frame_op_direct(&f, &g, &lat)?;
        op_defect = op_defect.max(s.max_abs_diff(&f.scale(Complex::new(2.0, 0.0))));
        diag_defect = diag_defect.max(diagonalization_defect(&f, &g, &s, 2)?);
    }
    let pass = (bounds.lower - 2.0).abs() <= 1e-12
        && (bounds.upper - 2.0).abs() <= 1e-12
        && (eigen.lower - 2.0).abs() <= 1e-10
        && (eigen.upper - 2.0).abs() <= 1e-10
        && op_defect <= 1e-12
        && diag_defect <= 1e-10;
    Ok(json!({
        "window": "box",
        "n": N,
        "a": "1/2",
        "b": "1/1",
        "multiplier_bounds": bounds,
        "direct_eigen_bounds": eigen,
        "frame_op_defect": op_defect,
        "zak_diagonalization_defect": diag_defect,
        "pass": pass,
    }))
}

/// `max |Z(Sf) − Z(f)·Σ_r |Z(T_{r/q} g)|²|` on a common alias-free grid.
pub fn diagonalization_defect(
    f: &SampledFunction,
    g: &SampledFunction,
    sf: &SampledFunction,
    q: u32,
) -> Result<f64> {
    let n_v = sf.grid().units().max(f.grid().units());
    let lhs = zak(sf, n_v)?;
    let rhs = zak(&f.refine_to(lhs.n_t())?, n_v)?;
    let windows = multiplier_windows(g, q)?;
    let windows: Vec<SampledFunction> =
        windows.iter().map(|w| w.refine_to(lhs.n_t())).collect::<Result<_>>()?;
    let energy = zak_energy_grid(&windows, n_v)?;
    Ok(lhs
        .values()
        .iter()
        .zip(rhs.values())
        .zip(&energy)
        .map(|((s, z), e)| (s - z * e).norm())
        .fold(0.0, f64::max))
}

/// `g = box`, `f = 1 + 0.2·box` at `(1, 1)`.
pub fn mult_perturb() -> Result<Value> {
    const N: usize = 16;
    let g = make_window(&WindowKind::Box, N)?;
    let deviation = g.scale(Complex::new(0.2, 0.0));
    let cert = multiplicative_certify(&g, &deviation, &GaborLattice::unit(N))?;
    let truth = frame_bounds_zak(&product_window(&g, &deviation));
    let pass = cert.valid
        && (cert.certified_lower - 0.64).abs() <= 1e-12
        && (truth.lower - 1.44).abs() <= 1e-12
        && (truth.upper - 1.44).abs() <= 1e-12
        && truth.lower >= cert.certified_lower;
    Ok(json!({
        "window": "box",
        "deviation": "0.2*box",
        "certificate": cert,
        "perturbed_bounds": truth,
        "pass": pass,
    }))
}
