//! Step functions on rational grids: exact shifts, modulation and the
//! closed-form Fourier transform.

use hcm_gabor::grid::{parse_rational, Complex, GridSpec, SampledFunction};

fn main() -> hcm_gabor::Result<()> {
    // a ramp on [0, 2) at 4 cells per unit
    let grid = GridSpec::new(4, 0, 2)?;
    let ramp = SampledFunction::from_cells(grid, |c| Complex::new(c as f64 / 8.0, 0.0));
    println!("ramp: {} cells, L2 norm {:.6}", ramp.values().len(), ramp.l2_norm());

    let shifted = ramp.translate(parse_rational("3/4")?)?;
    println!("T_(3/4) ramp lives on [{}, {})", shifted.lo(), shifted.hi());
    let back = shifted.translate(parse_rational("-3/4")?)?;
    println!("round trip error: {}", back.max_abs_diff(&ramp));

    // shifts that are not whole cells are rejected rather than rounded
    match ramp.translate(parse_rational("1/3")?) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("T_(1/3): {e}"),
    }

    let modulated = ramp.modulate(parse_rational("1/2")?);
    println!("|E_(1/2) ramp| = |ramp|: {}", (modulated.l2_norm() - ramp.l2_norm()).abs() < 1e-15);

    // f^(v) integrates e^{-2πixv} exactly over each cell
    let boxf = SampledFunction::indicator(8, 0, 1)?;
    for (v, z) in [0.0, 0.5, 1.0, 1.5].iter().zip(boxf.fourier_quadrature(&[0.0, 0.5, 1.0, 1.5])) {
        println!("box^({v}) = {:.6} {:+.6}i", z.re, z.im);
    }

    // refinement onto a common grid
    let coarse = SampledFunction::indicator(2, -1, 1)?;
    let sum = coarse.add(&ramp);
    println!("sum lives on n = {}, [{}, {})", sum.n(), sum.lo(), sum.hi());
    Ok(())
}
