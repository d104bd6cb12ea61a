use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cesaro::func::Func;
use cesaro::geometry::{
    chain_explorer, close_to_convex_check, gegenbauer, gegenbauer_generating, gegenbauer_sequence, is_kakeya,
    kakeya_deltas, point_in_polygon, winding_number, zero_free_closed_disc, GegenbauerParams,
};
use cesaro::numeric::ratio;
use cesaro::series::PowerSeries;
use cesaro::special::stable_regime;
use cesaro::verdict::BoundaryGrid;

type C = Complex64;

fn roots_min_modulus(a: &[C]) -> f64 {
    let d = a.len() - 1;
    let mut m = DMatrix::<C>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -a[i] / a[d];
    }
    m.schur()
        .eigenvalues()
        .unwrap()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn zero_freeness_matches_companion_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..200 {
        let d = rng.gen_range(1..=15);
        let a: Vec<C> = (0..=d)
            .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let oracle = roots_min_modulus(&a);
        if (oracle - 1.0).abs() < 1e-3 {
            continue;
        }
        let v = zero_free_closed_disc(&PowerSeries::new(a.clone()));
        if oracle > 1.0 {
            assert!(v.is_holds(), "{a:?}: {v:?}");
        } else {
            assert!(v.is_fails(), "{a:?}: {v:?}");
            let w = v.witness.expect("witness");
            assert!(w.norm() <= 1.0 + 1e-9);
            let p: C = a.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * w + c);
            assert!(p.norm() < 1e-6, "witness is not a zero: |P| = {}", p.norm());
        }
        checked += 1;
    }
    assert!(checked > 180);
}

#[test]
fn winding_counts_zeros_inside() {
    // (z - 0.5)(z + 0.3i)(z - 2)
    let roots = [C::new(0.5, 0.0), C::new(0.0, -0.3), C::new(2.0, 0.0)];
    let mut a = vec![C::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![C::new(0.0, 0.0); a.len() + 1];
        for (k, &x) in a.iter().enumerate() {
            next[k + 1] += x;
            next[k] -= x * r;
        }
        a = next;
    }
    let w = winding_number(&a, 1e-12);
    assert_eq!(w.winding, Some(2));
    // a zero on the circle stops the tracker
    let w = winding_number(&[C::new(1.0, 0.0), C::new(1.0, 0.0)], 1e-12);
    assert_eq!(w.winding, None);
}

proptest! {
    #[test]
    fn recurrence_matches_generating_function(lambda in 0.01f64..2.0, x in -1.0f64..=1.0) {
        let r = gegenbauer_sequence(60, lambda, x);
        let g = gegenbauer_generating(60, lambda, x);
        for k in 0..=60usize {
            // exact zeros (odd k at x = 0) inherit rounding from their neighbours
            let scale = g[k.saturating_sub(1)..=(k + 1).min(60)].iter().fold(1.0f64, |m, v| m.max(v.abs()));
            prop_assert!((r[k] - g[k]).abs() <= 1e-11 * scale, "k={}", k);
        }
        prop_assert_eq!(gegenbauer(60, lambda, x), r[60]);
    }

    #[test]
    fn kakeya_iff_stable((b4, c4) in (1i64..24).prop_flat_map(|b| (Just(b), 1..(b + 4).min(24))), w in 1i64..8) {
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let weights = [ratio(w, 8), ratio(8 - w, 8)];
        let delta = kakeya_deltas(&weights, &[3, 9], &b, &c);
        prop_assert_eq!(is_kakeya::<BigRational>(&delta), stable_regime(b4 as f64 / 4.0, c4 as f64 / 4.0));
    }
}

#[test]
fn gegenbauer_special_values() {
    // C_k^1(1) = k + 1 and C_k^lambda(-x) = (-1)^k C_k^lambda(x)
    for k in 0..20 {
        assert!((gegenbauer(k, 1.0, 1.0) - (k as f64 + 1.0)).abs() < 1e-12);
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!((gegenbauer(k, 0.3, -0.4) - s * gegenbauer(k, 0.3, 0.4)).abs() < 1e-13);
    }
    assert!(GegenbauerParams::new(0.6, 0.0, 3).unwrap().exploratory());
    assert!(!GegenbauerParams::new(0.25, 0.0, 3).unwrap().exploratory());
    assert!(GegenbauerParams::new(0.25, 1.5, 3).is_err());
}

#[test]
fn close_to_convex_for_convex_input() {
    let grid = BoundaryGrid::geometric(16, 256);
    for n in 1..=6 {
        let r = close_to_convex_check(&Func::NegLog, 0.5, n, 2.0, 1.0, &grid).unwrap();
        assert!(r.close_to_convex.is_holds(), "n={n}: {:?}", r.close_to_convex);
        assert!(r.min_derivative_modulus > 0.0);
    }
    assert!(close_to_convex_check(&Func::NegLog, 0.5, 3, 2.0, 2.0, &grid).is_err());
    assert!(close_to_convex_check(&Func::z_pow(2.0), 0.5, 3, 2.0, 1.0, &grid).is_err());
}

#[test]
fn chain_curves_nest_for_convex_function() {
    let bundle = chain_explorer(&Func::NegLog, 2.0, 1.0, 0, 4, 256).unwrap();
    assert_eq!(bundle.curves.len(), 5);
    assert_eq!(bundle.curves.last().unwrap().n, None);
    assert_eq!(bundle.containment.len(), 4);
    assert!(bundle.containment.iter().all(|&s| (0.0..=1.0).contains(&s)));
    assert!(chain_explorer(&Func::Pow(0.5), 2.0, 1.0, 0, 4, 256).is_err());
}

#[test]
fn polygon_membership() {
    let square = [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 1.0), C::new(0.0, 1.0)];
    assert!(point_in_polygon(C::new(0.5, 0.5), &square));
    assert!(!point_in_polygon(C::new(1.5, 0.5), &square));
}
