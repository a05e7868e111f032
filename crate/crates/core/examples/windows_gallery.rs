//! The built-in windows and what they look like on the grid.

use hcm_gabor::bracket::hcm_norm;
use hcm_gabor::gabor::bessel_xz_norm;
use hcm_gabor::grid::Rational;
use hcm_gabor::windows::{make_window, WindowKind};

fn main() -> hcm_gabor::Result<()> {
    let specs = ["box", "dyadic:3", "spikes:4", "harmonic:6", "cusp", "gauss:0.5,2"];
    println!("{:<12} {:>4} {:>8} {:>8} {:>8} {:>8}", "window", "n", "support", "l2", "hcm", "X_Z");
    for spec in specs {
        let kind: WindowKind = spec.parse()?;
        let g = make_window(&kind, 16)?;
        println!(
            "{:<12} {:>4} {:>8} {:>8.4} {:>8.4} {:>8.4}",
            kind.to_string(),
            g.n(),
            format!("[{},{})", g.lo(), g.hi()),
            g.l2_norm(),
            hcm_norm(&g, Rational::from_integer(1))?,
            bessel_xz_norm(&g)
        );
    }
    // the ladder needs 2^(K+1) cells per unit to place its endpoints
    if let Err(e) = make_window(&WindowKind::DyadicLadder(5), 16) {
        println!("{e}");
    }
    let cusp = make_window(&WindowKind::Cusp, 4)?;
    let cells: Vec<String> = cusp.values().iter().map(|z| format!("{:.4}", z.re)).collect();
    println!("cusp cell averages at n = 4: {}", cells.join(" "));
    Ok(())
}
