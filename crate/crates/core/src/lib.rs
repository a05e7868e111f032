//! Bracket products, Zak transforms and frame-bound certificates for Gabor
//! systems `E_{mb} T_{na} g` on rational lattices.
//!
//! Functions are compactly supported step functions on a uniform grid of `n`
//! cells per unit (see [`grid::SampledFunction`]). On that model the
//! bracket-product (compressed) forms of the Gabor operators agree with the
//! direct double sums exactly, and the Zak transform is computed without
//! aliasing, so identities can be checked to round-off.

pub mod bracket;
pub mod cli;
pub mod demos;
pub mod error;
pub mod gabor;
pub mod grid;
pub mod perturb;
pub mod random;
pub mod windows;
pub mod zak;

pub use bracket::{bracket, bracket_norm, hcm_norm, NormReport, PeriodicSample};
pub use error::{Error, Result};
pub use gabor::{FrameBoundsReport, GaborLattice};
pub use grid::{parse_rational, Complex, GridSpec, Rational, SampledFunction};
pub use perturb::PerturbationCertificate;
pub use windows::{make_window, WindowKind};
pub use zak::{zak, ZakImage};
