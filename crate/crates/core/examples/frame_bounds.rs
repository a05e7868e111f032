//! Frame bounds four ways: Zak extremes, the (1/q, 1) multiplier, sampled
//! bracket ratios and eigenvalues of the truncated frame operator.

use hcm_gabor::gabor::{
    aframe_bounds_empirical, bessel_xz_norm, frame_bounds_direct_eigen, frame_bounds_multiplier, frame_bounds_zak,
    modular_frame_check, GaborLattice,
};
use hcm_gabor::grid::Rational;
use hcm_gabor::windows::{make_window, WindowKind};

fn main() -> hcm_gabor::Result<()> {
    let n = 16;
    let g = make_window(&WindowKind::Gaussian { sigma: 0.5, half_width: 2 }, n)?;

    let zak = frame_bounds_zak(&g);
    println!("(g, 1, 1) zak:       [{:.6}, {:.6}]", zak.lower, zak.upper);
    let emp = aframe_bounds_empirical(&g, &GaborLattice::unit(n), 64, 1)?;
    println!("(g, 1, 1) sampled:   [{:.6}, {:.6}]", emp.lower, emp.upper);
    let modular = modular_frame_check(&g, &GaborLattice::unit(n), 64, 1)?;
    println!("(g, 1, 1) normalized [{:.6}, {:.6}]", modular.lower, modular.upper);

    for q in [2, 3, 4] {
        let m = frame_bounds_multiplier(&g, q)?;
        println!("(g, 1/{q}, 1) multiplier: [{:.6}, {:.6}]", m.lower, m.upper);
    }
    let lat = GaborLattice::new(Rational::new(1, 2), Rational::from_integer(1), n)?;
    let eig = frame_bounds_direct_eigen(&g, &lat, -3, 3)?;
    println!("(g, 1/2, 1) eigenvalues on [-3, 3): [{:.6}, {:.6}]", eig.lower, eig.upper);

    // the truncated ladder misses the strip t < 2^-(K+1)
    for k in [2, 4, 6] {
        let ladder = make_window(&WindowKind::DyadicLadder(k), 256)?;
        let b = frame_bounds_zak(&ladder);
        println!("dyadic:{k} bounds [{}, {:.3}], X_Z norm {:.3}", b.lower, b.upper, bessel_xz_norm(&ladder));
    }
    println!("{}", serde_json::to_string(&zak).unwrap());
    Ok(())
}
