//! Library results against values computed independently here: closed
//! forms, direct double sums and hand-derived identities.

mod common;

use hcm_gabor::bracket::{bracket, hcm_norm, NormReport};
use hcm_gabor::demos::{harmonic_number, harmonic_number_2};
use hcm_gabor::gabor::{
    analysis, atom, ccj_increments, ccj_partial_sums, frame_bounds_direct_eigen, frame_bounds_multiplier,
    frame_bounds_zak, frame_op_direct, frame_transform_compressed, normalize_by_bracket_norm, synthesis,
    GaborLattice,
};
use hcm_gabor::grid::{Complex, GridSpec, Rational, SampledFunction};
use hcm_gabor::windows::{make_window, WindowKind};
use hcm_gabor::zak::{fourier_via_zak, quasi_periodicity_defect, windowed_zak, zak};

use common::{bracket_oracle, random_step, zak_oracle};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

#[test]
fn harmonic_bracket_examples() {
    let g = make_window(&WindowKind::HarmonicComb(400), 1).unwrap();
    for (k, exact) in [(1i64, 1.0), (2, 0.75), (3, 11.0 / 18.0)] {
        let b = bracket(&g, &g.translate(Rational::from_integer(k)).unwrap(), Rational::from_integer(1)).unwrap();
        let tail = 1.0 / (400.0 - k as f64 + 1.0);
        assert!(exact - b.values()[0].re >= 0.0);
        assert!(exact - b.values()[0].re <= tail, "k = {k}");
    }
}

#[test]
fn harmonic_ccj_identity() {
    // Σ_{k ≤ 10} H_k/k = (H_10² + H_10^{(2)})/2, by direct summation
    let direct: f64 = (1..=10u64).map(|k| harmonic_number(k) / k as f64).sum();
    let identity = (harmonic_number(10).powi(2) + harmonic_number_2(10)) / 2.0;
    assert!((direct - identity).abs() < 1e-13);
    assert!((identity - 5.0643).abs() < 5e-5);

    let j = 100_000;
    let g = make_window(&WindowKind::HarmonicComb(j), 1).unwrap();
    let inc = ccj_increments(&g, 10).unwrap();
    let sum: f64 = inc.iter().sum();
    assert!((sum - identity).abs() <= 10.0 / (j as f64 - 9.0));
    // squares converge: bounded by Σ (H_k/k)²
    let squares: f64 = inc.iter().map(|x| x * x).sum();
    let bound: f64 = (1..=10u64).map(|k| (harmonic_number(k) / k as f64).powi(2)).sum();
    assert!(squares <= bound);
    let two_sided = ccj_partial_sums(&g, 10).unwrap();
    assert!(two_sided.windows(2).all(|w| w[1] > w[0]));
    // s_K = ‖g‖² + 2 Σ_{k ≤ K} increments
    let norm_sq = harmonic_number_2(j as u64);
    assert!((two_sided[9] - (norm_sq + 2.0 * sum)).abs() < 1e-9);
}

#[test]
fn box_ccj_is_flat() {
    let b = make_window(&WindowKind::Box, 8).unwrap();
    assert!(ccj_partial_sums(&b, 6).unwrap().iter().all(|&s| s == 1.0));
}

#[test]
fn bracket_matches_direct_translate_sum() {
    for trial in 0..10 {
        let f = random_step(21, 2 * trial, 4, -2, 3);
        let g = random_step(21, 2 * trial + 1, 4, -1, 2);
        for (p, q) in [(1, 1), (1, 2), (3, 4), (2, 1)] {
            let period = r(p, q);
            let cells = 4 * p / q;
            let b = bracket(&f, &g, period).unwrap();
            for (j, z) in b.values().iter().enumerate() {
                assert!((z - bracket_oracle(&f, &g, cells, j as i64)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn zak_matches_defining_sum() {
    let f = random_step(22, 0, 4, -2, 2);
    for n_v in [4usize, 5, 8] {
        let image = zak(&f, n_v).unwrap();
        for i in 0..4 {
            for j in 0..n_v {
                let v = j as f64 / n_v as f64;
                assert!((image.row(i)[j] - zak_oracle(&f, i as i64, v)).norm() < 1e-12);
            }
        }
    }
    assert!(quasi_periodicity_defect(&f).defect < 1e-12);
}

#[test]
fn gaussian_zak_fourier_relation() {
    // for x ↦ exp(-πx²) the transform is v ↦ exp(-πv²); the step
    // discretization costs O(1/n²)
    let sigma = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let g = make_window(&WindowKind::Gaussian { sigma, half_width: 6 }, 128).unwrap();
    for v in [0.0, 0.3, 0.75, 1.2, -0.6] {
        let exact = (-std::f64::consts::PI * v * v).exp();
        let via_zak = fourier_via_zak(&g, v);
        assert!((via_zak.norm() - exact).abs() < 1e-4, "v = {v}");
        assert!((via_zak - g.fourier_quadrature(&[v])[0]).norm() < 1e-12);
    }
}

#[test]
fn windowed_zak_of_box() {
    let b = make_window(&WindowKind::Box, 8).unwrap();
    let w = windowed_zak(&b, &b, Rational::from_integer(0), None).unwrap();
    assert!((w.sup_abs() - 1.0).abs() < 1e-15);
    // disjoint supports give a zero image
    let far = windowed_zak(&b, &b, Rational::from_integer(3), Some(4)).unwrap();
    assert_eq!(far.sup_abs(), 0.0);
}

#[test]
fn atoms_have_translate_modulus() {
    let g = random_step(23, 0, 4, 0, 2);
    let lat = GaborLattice::new(r(1, 2), r(1, 2), 4).unwrap();
    for m in -9..9 {
        for n in -3..3 {
            let a = atom(&g, &lat, m, n).unwrap();
            let t = g.translate(r(n, 2)).unwrap();
            assert!(a.values().iter().zip(t.values()).all(|(x, y)| (x.norm() - y.norm()).abs() < 1e-14));
        }
    }
}

/// `⟨f, E_{mb} T_{na} g⟩` from scratch: left-endpoint phases, Δ weighting.
fn coefficient_oracle(f: &SampledFunction, g: &SampledFunction, a: Rational, b: Rational, m: i64, n: i64) -> Complex {
    let rate = f.n() as i64;
    let shift = (a * Rational::from_integer(n * rate)).to_integer();
    let mut sum = Complex::new(0.0, 0.0);
    for c in f.grid().cell_range() {
        let x = c as f64 / rate as f64;
        let angle = 2.0 * std::f64::consts::PI * (m as f64 * (*b.numer() as f64 / *b.denom() as f64)) * x;
        let atom = g.at_cell(c - shift) * Complex::new(angle.cos(), angle.sin());
        sum += f.at_cell(c) * atom.conj();
    }
    sum / rate as f64
}

#[test]
fn analysis_matches_direct_double_sum() {
    let f = random_step(24, 0, 4, -1, 2);
    let g = random_step(24, 1, 4, 0, 2);
    for (a, b) in [(r(1, 1), r(1, 1)), (r(1, 2), r(1, 1)), (r(3, 4), r(1, 2))] {
        let lat = GaborLattice::new(a, b, 4).unwrap();
        let c = analysis(&f, &g, &lat).unwrap();
        let mut energy = 0.0;
        for n in c.n_range() {
            for m in 0..c.m_count() {
                let want = coefficient_oracle(&f, &g, a, b, m as i64, n);
                assert!((c.get(m, n) - want).norm() < 1e-12);
                energy += want.norm_sqr();
            }
        }
        assert!((c.energy() - energy).abs() < 1e-12);
    }
}

#[test]
fn orthonormal_box_reconstructs() {
    let b = make_window(&WindowKind::Box, 4).unwrap();
    let lat = GaborLattice::unit(4);
    let f = random_step(25, 0, 4, 0, 1);
    let back = synthesis(&analysis(&f, &b, &lat).unwrap(), &b, &lat).unwrap();
    assert!(back.max_abs_diff(&f) < 1e-13);
    let zero = SampledFunction::zeros(GridSpec::new(4, 3, 4).unwrap());
    assert_eq!(analysis(&zero, &b, &lat).unwrap().energy(), 0.0);
}

#[test]
fn frame_transform_reproduces_coefficients() {
    // ⟨𝒯*f, e_{m,n}⟩ with e_{m,n} = E_{mb} T_{n/b} (√b 1_{[0,1/b)})
    let f = random_step(26, 0, 4, -1, 2);
    let g = random_step(26, 1, 4, 0, 2);
    for (a, b) in [(r(1, 1), r(1, 1)), (r(1, 2), r(1, 1)), (r(3, 4), r(1, 2))] {
        let lat = GaborLattice::new(a, b, 4).unwrap();
        let coeffs = analysis(&f, &g, &lat).unwrap();
        let t = frame_transform_compressed(&f, &g, &lat).unwrap();
        let inv_b = b.recip();
        let cells = (inv_b * Rational::from_integer(4)).to_integer();
        let root_b = (*b.numer() as f64 / *b.denom() as f64).sqrt();
        let tile = SampledFunction::from_cells(GridSpec::new(4, 0, inv_b.ceil().to_integer()).unwrap(), |c| {
            Complex::new(if c < cells { root_b } else { 0.0 }, 0.0)
        });
        for n in coeffs.n_range() {
            for m in 0..coeffs.m_count() {
                let e = tile.translate(inv_b * Rational::from_integer(n)).unwrap().modulate(b * Rational::from_integer(m as i64));
                assert!((t.l2_inner(&e) - coeffs.get(m, n)).norm() < 1e-12, "a={a} b={b} m={m} n={n}");
            }
        }
    }
}

#[test]
fn scaled_box_bounds() {
    for eps in [0.1, 0.5, -0.3] {
        let g = make_window(&WindowKind::Box, 8).unwrap().scale(Complex::new(1.0 + eps, 0.0));
        let rep = frame_bounds_zak(&g);
        let want = (1.0 + eps) * (1.0 + eps);
        assert!((rep.lower - want).abs() < 1e-14 && (rep.upper - want).abs() < 1e-14);
    }
}

#[test]
fn dyadic_bounds_by_truncation() {
    for k in 1..6 {
        let g = make_window(&WindowKind::DyadicLadder(k), 64).unwrap();
        let rep = frame_bounds_zak(&g);
        assert_eq!(rep.lower, 0.0);
        assert!((rep.upper - 1.0).abs() < 1e-14);
    }
}

#[test]
fn multiplier_agrees_with_direct_eigen() {
    // two-cell window at (1/2, 1): the eigenvalues of S restricted to a
    // window approach the multiplier range from inside
    let g = random_step(27, 0, 4, 0, 1);
    let lat = GaborLattice::new(r(1, 2), r(1, 1), 4).unwrap();
    let mult = frame_bounds_multiplier(&g, 2).unwrap();
    let eig = frame_bounds_direct_eigen(&g, &lat, -1, 3).unwrap();
    assert!(eig.lower >= mult.lower - 1e-10 && eig.upper <= mult.upper + 1e-10);
    let boxf = make_window(&WindowKind::Box, 4).unwrap();
    let e = frame_bounds_direct_eigen(&boxf, &lat, 0, 2).unwrap();
    assert!((e.lower - 2.0).abs() < 1e-12 && (e.upper - 2.0).abs() < 1e-12);
}

#[test]
fn box_half_step_is_twice_identity() {
    let b = make_window(&WindowKind::Box, 8).unwrap();
    let lat = GaborLattice::new(r(1, 2), r(1, 1), 8).unwrap();
    let f = random_step(28, 0, 8, -2, 2);
    let s = frame_op_direct(&f, &b, &lat).unwrap();
    assert!(s.max_abs_diff(&f.scale(Complex::new(2.0, 0.0))) < 1e-12);
}

#[test]
fn normalization_gives_unit_bracket_norm() {
    let f = random_step(29, 0, 4, -1, 3);
    let (_, defect) = normalize_by_bracket_norm(&f, r(1, 2)).unwrap();
    assert!(defect < 1e-14);
}

#[test]
fn norm_report_json() {
    let f = make_window(&WindowKind::HarmonicComb(3), 2).unwrap();
    let rep = NormReport::of(&f, Rational::from_integer(1)).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    let hcm = (1.0f64 + 0.25 + 1.0 / 9.0).sqrt();
    assert!((v["hcm"].as_f64().unwrap() - hcm).abs() < 1e-15);
    assert_eq!(v["amalgam"]["inf"].as_f64().unwrap(), 1.0);
    assert!((v["amalgam"]["1"].as_f64().unwrap() - 11.0 / 6.0).abs() < 1e-15);
    let back: NormReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, rep);
    assert!((hcm_norm(&f, Rational::from_integer(1)).unwrap() - hcm).abs() < 1e-15);
}
