use std::f64::consts::PI;

use grasspoly_core::chen::path::PathSpec;
use grasspoly_core::chen::{homotopy_test, monodromy_probe, shuffle_test, QuadOptions};
use grasspoly_core::polylog::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn li_n_integral_agrees_with_series() {
    let o = QuadOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let z = Complex64::from_polar(rng.gen_range(0.05..0.8), rng.gen_range(-PI..PI));
        for n in 1..=3 {
            let got = li_n(n, z, &o).unwrap().value;
            let want = li_series(n, z).unwrap();
            assert!((got - want).norm() < 1e-9, "Li_{n}({z}): {got} vs {want}");
        }
    }
}

#[test]
fn li_n_beyond_the_unit_disc_follows_the_principal_branch() {
    let o = QuadOptions::default();
    let z = c(-3.0, 0.5);
    let got = li_n(2, z, &o).unwrap().value;
    assert!((got - li2(z).unwrap()).norm() < 1e-9);
}

#[test]
fn grassmannian_tate_is_homotopy_invariant() {
    let o = QuadOptions::default();
    for seed in 0..12 {
        let report = tate_homotopy(2, seed, 5, 0.1, 1e-7, &o).unwrap();
        assert!(report.passed, "seed {seed}: spread {}", report.spread);
        assert!(report.base[0].hypot(report.base[1]) > 1e-6);
    }
}

#[test]
fn non_integrable_word_depends_on_the_path() {
    let o = QuadOptions::default();
    let path = random_tate_path(2, 11).unwrap();
    let report = homotopy_test(&non_integrable_word(), &path, 5, 0.1, 11, 1e-7, &o).unwrap();
    assert!(report.spread > 1e-3, "spread {}", report.spread);
    let still = homotopy_test(&non_integrable_word(), &path, 3, 0.0, 11, 1e-7, &o).unwrap();
    assert_eq!(still.spread, 0.0);
}

#[test]
fn tate_on_constant_and_contractible_paths() {
    let o = QuadOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_complex_config(&mut rng, 4, 2);
    let constant = PathSpec::line(&a, &a).unwrap();
    assert_eq!(grassmannian_tate(2, &constant, &o).unwrap().value, c(0.0, 0.0));
    let b = random_complex_config(&mut rng, 4, 2);
    let d = random_complex_config(&mut rng, 4, 2);
    let mix = |x: &[Vec<Complex64>], y: &[Vec<Complex64>]| -> Vec<Vec<Complex64>> {
        x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(p, q)| p + (q - p) * 0.2).collect()).collect()
    };
    let loop_path = PathSpec::polyline(&[a.clone(), mix(&a, &b), mix(&a, &d), a.clone()]).unwrap();
    let v = grassmannian_tate(2, &loop_path, &o).unwrap().value;
    assert!(v.norm() < 1e-8, "{v}");
}

#[test]
fn grassmannian_tate_regression_value_is_stable_under_refinement() {
    let path = random_tate_path(2, 2024).unwrap();
    let coarse = grassmannian_tate(2, &path, &QuadOptions::with_tol(1e-10)).unwrap().value;
    let fine = grassmannian_tate(2, &path, &QuadOptions::with_tol(1e-13)).unwrap().value;
    assert!((coarse - fine).norm() < 1e-9, "{coarse} vs {fine}");
    let golden = c(GOLDEN_TATE[0], GOLDEN_TATE[1]);
    assert!((fine - golden).norm() < 1e-9, "{fine}");
}

const GOLDEN_TATE: [f64; 2] = [-3.8884364685234996, -7.288044616296466];

#[test]
fn bloch_wigner_five_term_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let v: [[Complex64; 2]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
        assert!(bloch_wigner_five_term(v).unwrap().abs() < 1e-10);
    }
}

#[test]
fn rogers_five_term_constant_under_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let (s, eps) = rogers_five_term(random_real_five(&mut rng)).unwrap();
        assert!((s + eps * PI * PI / 6.0).abs() < 1e-9);
    }
}

#[test]
fn l2g_five_term_is_constant_along_a_family() {
    let fam = l2g_family(31, 50).unwrap();
    assert!(fam.variation < 1e-7, "{}", fam.variation);
    assert_eq!(fam.values.len(), 51);
}

#[test]
fn shuffle_on_random_bracket_forms() {
    let o = QuadOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let b = |l: &[u8]| grasspoly_core::MultSymbol::bracket(l).unwrap();
    for _ in 0..10 {
        let path = PathSpec::line(&random_complex_config(&mut rng, 4, 2), &random_complex_config(&mut rng, 4, 2)).unwrap();
        let w1 = vec![(b(&[1, 2]), 1), (b(&[3, 4]), -1)];
        let w2 = vec![(b(&[1, 3]), 1), (b(&[2, 4]), 2)];
        assert!(shuffle_test(&w1, &w2, &path, &o).unwrap() < 1e-8);
    }
}

#[test]
fn li1_word_around_one() {
    let o = QuadOptions::default();
    // loop z = 1 + 0.5 e^{iθ} in the configuration [z], [1 − z]
    let n = 16;
    let pts: Vec<_> = (0..=n)
        .map(|k| {
            let z = 1.0 + Complex64::from_polar(0.5, 2.0 * PI * k as f64 / n as f64);
            vec![vec![z], vec![1.0 - z]]
        })
        .collect();
    let path = PathSpec::polyline(&pts).unwrap();
    let word = vec![vec![(grasspoly_core::MultSymbol::bracket(&[2]).unwrap(), -1)]];
    let v = monodromy_probe(&word, &path, &o).unwrap().value;
    assert!((v - c(0.0, -2.0 * PI)).norm() < 1e-10, "{v}");
}
