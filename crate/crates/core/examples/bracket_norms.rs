//! Bracket products and the norms they induce, on the counterexample windows.

use hcm_gabor::bracket::{amalgam_norm, bracket, hcm_norm, tail_norms, AmalgamExponent, NormReport};
use hcm_gabor::grid::Rational;
use hcm_gabor::windows::{make_window, WindowKind};

fn main() -> hcm_gabor::Result<()> {
    let one = Rational::from_integer(1);

    // the harmonic comb correlates with its translates at H_k/k
    let comb = make_window(&WindowKind::HarmonicComb(5000), 1)?;
    for k in 1..=4 {
        let b = bracket(&comb, &comb.translate(Rational::from_integer(k))?, one)?;
        println!("<g, T_{k} g>_1 = {:.6}", b.values()[0].re);
    }

    // spikes: the bracket norm grows like sqrt(K) while sup and L2 stay put
    for k in [2, 4, 8, 12] {
        let s = make_window(&WindowKind::Spikes(k), 1024)?;
        println!(
            "spikes:{k:<2} hcm^2 = {:>4}  sup = {}  l2^2 = {:.4}",
            bracket(&s, &s, one)?.max_re(),
            s.sup_norm(),
            s.l2_norm().powi(2)
        );
    }

    // amalgam chain hcm <= W(L-inf, l2) <= W(L-inf, l1)
    let g = make_window(&WindowKind::Gaussian { sigma: 0.8, half_width: 3 }, 16)?;
    println!(
        "gauss: hcm {:.4} <= W2 {:.4} <= W1 {:.4}",
        hcm_norm(&g, one)?,
        amalgam_norm(&g, AmalgamExponent::Two),
        amalgam_norm(&g, AmalgamExponent::One)
    );
    println!("{}", serde_json::to_string_pretty(&NormReport::of(&g, one)?).unwrap());

    // consecutive dyadic truncations never get closer in norm
    let family: Vec<_> = (1..=6).map(|k| make_window(&WindowKind::DyadicLadder(k), 128)).collect::<Result<_, _>>()?;
    println!("dyadic tail norms: {:?}", tail_norms(&family, one)?);

    // brackets with period 1/2 fold twice as often
    let half = bracket(&g, &g, Rational::new(1, 2))?;
    println!("period 1/2 bracket: {} samples, max {:.4}", half.len(), half.max_abs());
    Ok(())
}
