//! Zak transform: unitarity, inversion, the scaled convention and the
//! Zak-domain convolution.

use hcm_gabor::gabor::{preframe_compressed, GaborLattice};
use hcm_gabor::grid::{Complex, GridSpec, Rational, SampledFunction};
use hcm_gabor::windows::{make_window, WindowKind};
use hcm_gabor::zak::{fourier_via_zak, inverse_zak, quasi_periodicity_defect, zak, zak_convolve, zak_lambda};

fn main() -> hcm_gabor::Result<()> {
    let grid = GridSpec::new(4, -1, 2)?;
    let f = SampledFunction::from_cells(grid, |c| Complex::new((c as f64 * 0.7).sin(), (c as f64 * 0.3).cos()));

    let image = zak(&f, 3)?;
    println!("||Z f||^2 = {:.12}, ||f||^2 = {:.12}", image.l2_norm_sq(), f.l2_norm().powi(2));
    println!("inversion error: {:.1e}", inverse_zak(&image).max_abs_diff(&f));
    println!("quasi-periodicity defect: {:.1e}", quasi_periodicity_defect(&f).defect);

    // too few frequency samples alias translates together
    if let Err(e) = zak(&f, 2) {
        println!("n_v = 2: {e}");
    }

    let scaled = zak_lambda(&f, Rational::from_integer(2), 8)?;
    println!("scaled image {}x{}, inversion error {:.1e}", scaled.n_t(), scaled.n_v(), inverse_zak(&scaled).max_abs_diff(&f));

    // Fourier transform recovered from the Zak transform
    let v = 0.37;
    println!("f^({v}) direct {:.6}, via Zak {:.6}", f.fourier_quadrature(&[v])[0], fourier_via_zak(&f, v));

    // |Z| of the dyadic ladder is 1 except on the uncovered strip
    let ladder = make_window(&WindowKind::DyadicLadder(4), 32)?;
    let lz = zak(&ladder, 5)?;
    println!("dyadic:4 row 0 max {:.3}, row 1 min {:.3}", lz.row(0).iter().map(|z| z.norm()).fold(0.0, f64::max), lz.row(1).iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min));

    // g *1 f is the preframe operator of (g, 1, 1) applied to f
    let g = make_window(&WindowKind::HarmonicComb(3), 4)?;
    let conv = zak_convolve(&g, &f, None)?;
    let pre = preframe_compressed(&f, &g, &GaborLattice::unit(4))?;
    println!("convolution vs preframe: {:.1e}", conv.max_abs_diff(&pre));
    Ok(())
}
