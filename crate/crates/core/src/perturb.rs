//! Frame-preservation certificates for additive and multiplicative
//! perturbations of a window.

use serde::Serialize;

use crate::bracket::hcm_norm;
use crate::error::{Error, Result};
use crate::gabor::{
    aframe_bounds_empirical, frame_bounds_multiplier, frame_bounds_zak, FrameBoundsReport, GaborLattice,
};
use crate::grid::SampledFunction;

/// Outcome of the additive perturbation test `R < A`.
///
/// `certified_upper_paper` is `B(1 − √(R/A))²`, which is below `B` and so
/// cannot bound every perturbation; `certified_upper_conservative` is the
/// standard `(√B + √R)²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationCertificate {
    pub base_lower: f64,
    pub base_upper: f64,
    pub perturbation_bound: f64,
    pub certified_lower: f64,
    pub certified_upper_paper: f64,
    pub certified_upper_conservative: f64,
    pub valid: bool,
    /// How `R` was obtained.
    pub r_method: String,
    /// Set when `A`, `B` or `R` are sampled rather than computed.
    pub empirical: bool,
}

/// Certificate from base bounds `A ≤ B` and perturbation bound `R`.
/// When `R ≥ A` the certificate is returned with `valid = false` and zero
/// certified bounds.
pub fn ch_bounds(a: f64, b: f64, r: f64) -> Result<PerturbationCertificate> {
    let ordered = a > 0.0 && b >= a && b.is_finite();
    if !ordered {
        return Err(Error::InvalidBounds(format!("need 0 < A <= B, got A = {a}, B = {b}")));
    }
    if r.is_nan() || r < 0.0 || r.is_infinite() {
        return Err(Error::InvalidBounds(format!("need R >= 0, got {r}")));
    }
    let valid = r < a;
    let shrink = if valid { (1.0 - (r / a).sqrt()).powi(2) } else { 0.0 };
    Ok(PerturbationCertificate {
        base_lower: a,
        base_upper: b,
        perturbation_bound: r,
        certified_lower: a * shrink,
        certified_upper_paper: b * shrink,
        // (√B + √R)² expanded so that R = 0 returns B exactly
        certified_upper_conservative: if valid { b + r + 2.0 * (b * r).sqrt() } else { 0.0 },
        valid,
        r_method: "given".into(),
        empirical: false,
    })
}

/// Zak bounds for the lattices where they are available: `(1,1)` and `(1/q,1)`.
fn zak_bounds(g: &SampledFunction, lat: &GaborLattice) -> Result<FrameBoundsReport> {
    match lat.unit_fraction() {
        Some(1) => Ok(frame_bounds_zak(g)),
        Some(q) => frame_bounds_multiplier(g, q),
        None => Err(Error::UnsupportedLattice { a: lat.a(), b: lat.b() }),
    }
}

fn certify(base: &FrameBoundsReport, r: f64, r_method: &str) -> Result<PerturbationCertificate> {
    let mut cert = ch_bounds(base.lower, base.upper, r)?;
    cert.r_method = r_method.into();
    cert.empirical = base.method.is_empirical();
    Ok(cert)
}

/// Certificate for replacing `g` by `h`: `R` is the upper Zak bound of
/// `(h − g, lat)`.
pub fn additive_certify(
    g: &SampledFunction,
    h: &SampledFunction,
    lat: &GaborLattice,
) -> Result<PerturbationCertificate> {
    let base = zak_bounds(g, lat)?;
    let diff = zak_bounds(&h.sub(g), lat)?;
    certify(&base, diff.upper, diff.method.as_str())
}

/// Fallback for lattices without a Zak multiplier: `A`, `B` and `R` all come
/// from seeded empirical `1/b`-frame ratios, so the certificate is flagged
/// as empirical.
pub fn additive_certify_empirical(
    g: &SampledFunction,
    h: &SampledFunction,
    lat: &GaborLattice,
    trials: u64,
    seed: u64,
) -> Result<PerturbationCertificate> {
    let base = aframe_bounds_empirical(g, lat, trials, seed)?;
    let diff = aframe_bounds_empirical(&h.sub(g), lat, trials, seed)?;
    let mut cert = certify(&base, diff.upper, diff.method.as_str())?;
    cert.empirical = true;
    Ok(cert)
}

/// `f·g` where `f = 1 + deviation`, the constant part being implicit.
pub fn product_window(g: &SampledFunction, deviation: &SampledFunction) -> SampledFunction {
    g.add(&deviation.pointwise_mul(g))
}

/// Certificate for the product window `f·g` with `f = 1 + deviation`:
/// `R = hcm_norm(deviation, 1/b)²·B`.
pub fn multiplicative_certify(
    g: &SampledFunction,
    deviation: &SampledFunction,
    lat: &GaborLattice,
) -> Result<PerturbationCertificate> {
    let base = zak_bounds(g, lat)?;
    let d = hcm_norm(deviation, lat.period())?;
    certify(&base, d * d * base.upper, "hcm_product")
}
