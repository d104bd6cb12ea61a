use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use cesaro::numeric::ratio;
use cesaro::series::{
    binomial_series, cesaro_mean, cesaro_mean_recursive, cesaro_mean_recursive_literal, hadamard, normalized_mean,
    phi_rho_mu, scaled_normalized_mean, tilde_f_mu, triangular_mean, PowerSeries, TriangularScheme,
};

type Q = BigRational;

fn series(v: &[i64]) -> PowerSeries<Q> {
    PowerSeries::new(v.iter().map(|&x| ratio(x, 1 + x.abs() % 5)).collect())
}

/// `(b, c)` in quarters with `b + 1 > c > 0`.
fn bc4() -> impl Strategy<Value = (i64, i64)> {
    (4i64..20).prop_flat_map(|b| (Just(b), 2..(b + 4).min(16)))
}

/// `(b, c)` in quarters with `b >= max(c, 2c - 1)`.
fn stable_bc4() -> impl Strategy<Value = (i64, i64)> {
    (2i64..16).prop_flat_map(|c| (c.max(2 * c - 4)..c.max(2 * c - 4) + 12, Just(c)))
}

fn coeffs_strategy(min: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, min..min + 12)
}

proptest! {
    #[test]
    fn recursion_matches_direct(a in coeffs_strategy(1), (b4, c4) in bc4()) {
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let f = series(&a);
        for n in 0..a.len() {
            prop_assert_eq!(cesaro_mean(&f, n, &b, &c).unwrap(), cesaro_mean_recursive(&f, n, &b, &c).unwrap());
        }
    }

    #[test]
    fn derivative_identity(a in coeffs_strategy(3), (b4, c4) in bc4()) {
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let mut a = a;
        a[0] = 0;
        let f = series(&a);
        for n in 2..a.len() {
            let nq = Q::from_integer((n as i64 - 1).into());
            let lhs = normalized_mean(&f, n, &b, &c)
                .unwrap()
                .derivative()
                .scale(&((b.clone() + nq.clone()) / (c.clone() + nq)));
            let rhs = cesaro_mean(&f.derivative(), n - 1, &b, &c).unwrap();
            for k in 0..n {
                prop_assert_eq!(lhs.coeff(k), rhs.coeff(k), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn scheme_mean_equals_cesaro(a in coeffs_strategy(1), (b4, c4) in stable_bc4()) {
        // the Cesaro matrix is a valid scheme only in the stable regime
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let f = series(&a);
        let n = a.len() - 1;
        let h = TriangularScheme::cesaro(n, &b, &c, Q::from_integer(0.into())).unwrap();
        prop_assert_eq!(triangular_mean(&h, &f).unwrap(), cesaro_mean(&f, n, &b, &c).unwrap());
    }
}

#[test]
fn partial_sums_when_b_equals_c_one() {
    let f = series(&[3, -1, 4, 1, -5, 9]);
    for n in 0..=5 {
        let s = cesaro_mean(&f, n, &Q::one(), &Q::one()).unwrap();
        assert_eq!(s, f.truncate(n).unwrap());
    }
}

#[test]
fn literal_recursion_differs_only_when_c_is_not_one() {
    let f = series(&[1, 2, 3, 4]);
    let (b, c) = (ratio(5, 2), ratio(3, 2));
    assert_ne!(
        cesaro_mean_recursive_literal(&f, 3, &b, &c).unwrap(),
        cesaro_mean(&f, 3, &b, &c).unwrap()
    );
    let one = Q::one();
    assert_eq!(
        cesaro_mean_recursive_literal(&f, 3, &b, &one).unwrap(),
        cesaro_mean(&f, 3, &b, &one).unwrap()
    );
}

#[test]
fn scaled_mean_keeps_leading_coefficient() {
    let f = series(&[0, 3, 1, -2, 5]);
    let s = scaled_normalized_mean(&f, 4, &ratio(3, 1), &ratio(3, 2)).unwrap();
    assert_eq!(s.coeff(1), f.coeff(1));
    assert!(normalized_mean(&series(&[1, 1]), 1, &Q::one(), &Q::one()).is_err());
}

#[test]
fn tilde_inverts_binomial_series() {
    let mu = ratio(3, 7);
    let f: PowerSeries<Q> = binomial_series(&mu, 20);
    let t: PowerSeries<Q> = tilde_f_mu(&mu, 20).unwrap();
    assert_eq!(hadamard(&f, &t), PowerSeries::geometric(20));
    assert!(tilde_f_mu::<Q, Q>(&ratio(0, 1), 4).is_err());
}

#[test]
fn phi_reduces_to_z_over_one_minus_z_when_rho_equals_mu() {
    let p: PowerSeries<Q> = phi_rho_mu(&ratio(1, 2), &ratio(1, 2), 10).unwrap();
    assert_eq!(p, PowerSeries::geometric(10).shift_up().truncate(10).unwrap());
    assert!(phi_rho_mu::<Q, Q>(&ratio(1, 3), &ratio(1, 2), 5).is_err());
}

#[test]
fn truncation_is_reported() {
    let f = series(&[1, 2]);
    assert!(cesaro_mean(&f, 5, &Q::one(), &Q::one()).is_err());
}
