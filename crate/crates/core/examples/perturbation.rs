//! Certificates that a perturbed window still generates a frame.

use hcm_gabor::gabor::{frame_bounds_multiplier, frame_bounds_zak, GaborLattice};
use hcm_gabor::grid::{Complex, GridSpec, Rational, SampledFunction};
use hcm_gabor::perturb::{additive_certify, ch_bounds, multiplicative_certify, product_window};
use hcm_gabor::windows::{make_window, WindowKind};

fn main() -> hcm_gabor::Result<()> {
    let n = 16;
    let boxf = make_window(&WindowKind::Box, n)?;
    let unit = GaborLattice::unit(n);

    let c = ch_bounds(1.0, 1.0, 0.04)?;
    println!("A = B = 1, R = 0.04: lower {:.4}, printed upper {:.4}, safe upper {:.4}", c.certified_lower, c.certified_upper_paper, c.certified_upper_conservative);

    // additive: h = 1.1 box
    let h = boxf.scale(Complex::new(1.1, 0.0));
    let add = additive_certify(&boxf, &h, &unit)?;
    println!("additive: R = {:.4}, certified lower {:.4}, true lower {:.4}", add.perturbation_bound, add.certified_lower, frame_bounds_zak(&h).lower);

    // multiplicative: f = 1 + d with a wiggly deviation on [0, 1)
    let d = SampledFunction::from_cells(GridSpec::new(n, 0, 1)?, |c| Complex::new(0.15 * (c as f64).sin(), 0.05));
    let cert = multiplicative_certify(&boxf, &d, &unit)?;
    let truth = frame_bounds_zak(&product_window(&boxf, &d));
    println!("multiplicative: valid {}, certified lower {:.4}, true bounds [{:.4}, {:.4}]", cert.valid, cert.certified_lower, truth.lower, truth.upper);

    // the same certificate at (1/2, 1)
    let half = GaborLattice::new(Rational::new(1, 2), Rational::from_integer(1), n)?;
    let cert2 = multiplicative_certify(&boxf, &d, &half)?;
    let truth2 = frame_bounds_multiplier(&product_window(&boxf, &d), 2)?;
    println!("at (1/2, 1): certified lower {:.4}, true lower {:.4}", cert2.certified_lower, truth2.lower);

    // too large a deviation voids the certificate
    let big = multiplicative_certify(&boxf, &boxf.scale(Complex::new(1.5, 0.0)), &unit)?;
    println!("deviation 1.5: valid = {}", big.valid);
    println!("{}", serde_json::to_string_pretty(&cert).unwrap());
    Ok(())
}
