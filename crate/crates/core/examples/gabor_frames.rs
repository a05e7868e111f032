//! Gabor systems: coefficients, reconstruction and the compressed operators.

use hcm_gabor::gabor::{
    analysis, frame_op_compressed, frame_op_direct, frame_transform_compressed, synthesis, GaborLattice,
};
use hcm_gabor::grid::{Complex, GridSpec, Rational, SampledFunction};
use hcm_gabor::windows::{make_window, WindowKind};

fn main() -> hcm_gabor::Result<()> {
    let n = 8;
    let boxf = make_window(&WindowKind::Box, n)?;
    let f = SampledFunction::from_cells(GridSpec::new(n, 0, 1)?, |c| Complex::new(1.0 + c as f64, -(c as f64)));

    // box translates and modulations form an orthonormal basis at (1, 1)
    let unit = GaborLattice::unit(n);
    let coeffs = analysis(&f, &boxf, &unit)?;
    println!("{} modulations x {:?} translates", coeffs.m_count(), coeffs.n_range());
    println!("sum |c|^2 = {:.12}, ||f||^2 = {:.12}", coeffs.energy(), f.l2_norm().powi(2));
    println!("reconstruction error: {:.1e}", synthesis(&coeffs, &boxf, &unit)?.max_abs_diff(&f));

    // at (1/2, 1) the same window is a tight frame with bound 2
    let half = GaborLattice::new(Rational::new(1, 2), Rational::from_integer(1), n)?;
    let s = frame_op_direct(&f, &boxf, &half)?;
    println!("|S f - 2f| = {:.1e}", s.max_abs_diff(&f.scale(Complex::new(2.0, 0.0))));

    // bracket-product forms agree with the double sums on any valid lattice
    let g = make_window(&WindowKind::Gaussian { sigma: 0.6, half_width: 2 }, n)?;
    let wide = SampledFunction::from_cells(GridSpec::new(n, -2, 3)?, |c| Complex::new((c as f64 * 0.21).cos(), 0.0));
    for (a, b) in [(1, 1), (1, 2), (3, 4)] {
        let lat = GaborLattice::new(Rational::new(a, b), Rational::new(1, 2), n)?;
        let d = frame_op_direct(&wide, &g, &lat)?;
        let c = frame_op_compressed(&wide, &g, &lat)?;
        println!("a = {a}/{b}, b = 1/2: relative defect {:.1e}", d.relative_l2_diff(&c));
    }

    let t = frame_transform_compressed(&wide, &g, &half)?;
    println!("frame transform lives on [{}, {})", t.lo(), t.hi());

    // lattices that do not sit on the grid are refused
    if let Err(e) = GaborLattice::new(Rational::new(1, 3), Rational::from_integer(1), n) {
        println!("{e}");
    }
    Ok(())
}
