use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cesaro::numeric::ratio;
use cesaro::series::cesaro_rows_nonincreasing;
use cesaro::special::{
    big_b_table, binomial_coefficients, cesaro_weights, cesaro_weights_f64, coeff_table, coeff_table_f64, stable_regime,
    vietoris_gamma,
};

type Q = BigRational;

fn bc_strategy() -> impl Strategy<Value = (i64, i64)> {
    // b, c in quarters with b + 1 > c > 0
    (1i64..=24).prop_flat_map(|b| (Just(b), 1..(b + 4).min(25)))
}

proptest! {
    #[test]
    fn ratio_law_after_first_step((b4, c4) in bc_strategy(), n in 2usize..25) {
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let t = big_b_table(n, &b, &c);
        prop_assert_eq!(t[0].clone(), Q::one());
        prop_assert_eq!(t[1].clone(), (Q::one() + b.clone() - c.clone()) / c.clone());
        for k in 1..n {
            let k_q = Q::from_integer(k.into());
            prop_assert_eq!(t[k + 1].clone() / t[k].clone(), (b.clone() + k_q.clone()) / (c.clone() + k_q));
        }
    }

    #[test]
    fn c_sequence_pairs_d_sequence((b4, c4) in bc_strategy(), mu8 in -8i64..=8, n in 0usize..20) {
        let t = coeff_table(n, ratio(b4, 4), ratio(c4, 4), ratio(mu8, 8)).unwrap();
        prop_assert_eq!(t.c_seq.len(), 2 * n + 2);
        for k in 0..=n {
            prop_assert_eq!(&t.c_seq[2 * k], &t.d_seq[k]);
            prop_assert_eq!(&t.c_seq[2 * k + 1], &t.d_seq[k]);
        }
        prop_assert_eq!(t.d_seq[0].clone(), Q::one());
    }

    #[test]
    fn positive_coefficients_when_b_at_least_c(b in 1.0f64..6.0, frac in 0.05f64..=1.0, mu in 0.01f64..=1.0, n in 0usize..60) {
        let c = b * frac;
        let t = coeff_table_f64(n, b, c, mu).unwrap();
        prop_assert!(t.d_seq.iter().all(|&d| d > 0.0));
    }

    #[test]
    fn monotone_rows_iff_stable((b4, c4) in bc_strategy()) {
        let (b, c) = (ratio(b4, 4), ratio(c4, 4));
        let stable = stable_regime(b4 as f64 / 4.0, c4 as f64 / 4.0);
        prop_assert_eq!(cesaro_rows_nonincreasing(12, &b, &c), stable);
    }

    #[test]
    fn float_weights_track_exact(b in 1.0f64..5.0, frac in 0.1f64..1.2, n in 0usize..40) {
        let c = b * frac;
        let f = cesaro_weights_f64(n, b, c);
        let e = cesaro_weights(n, &b, &c);
        for (x, y) in f.iter().zip(&e) {
            prop_assert!((x - y).abs() <= 1e-13 * y.abs().max(1.0));
        }
    }
}

#[test]
fn vietoris_values_at_b_equal_c_one() {
    let t = coeff_table(30, Q::one(), Q::one(), ratio(1, 2)).unwrap();
    let gamma: Vec<Q> = vietoris_gamma(62);
    assert_eq!(t.c_seq, gamma);
    let d = binomial_coefficients(&ratio(1, 2), 30);
    assert_eq!(t.d_seq, d);
    assert_eq!(d[3], ratio(5, 16));
}

#[test]
fn log_space_weights_continue_across_threshold() {
    // exact rationals are the oracle
    let (b, c) = (ratio(5, 2), Q::one());
    for n in [150usize, 151, 200] {
        let e = cesaro_weights(n, &b, &c);
        let f = cesaro_weights_f64(n, 2.5, 1.0);
        for k in (0..=n).step_by(7) {
            let ek = cesaro::numeric::Real::to_f64(&e[k]);
            assert!((f[k] - ek).abs() <= 1e-10 * ek, "n={n} k={k}: {} vs {ek}", f[k]);
        }
    }
}

#[test]
fn mu_zero_leaves_only_constant_term() {
    let t = coeff_table(6, ratio(2, 1), Q::one(), Q::zero()).unwrap();
    assert!(t.d_seq[1..].iter().all(Zero::is_zero));
}

#[test]
fn rejects_out_of_domain() {
    assert!(coeff_table_f64(3, 1.0, 2.0, 0.5).is_err());
    assert!(coeff_table_f64(3, 2.0, 1.0, 1.5).is_err());
    assert!(coeff_table_f64(3, -1.0, 0.5, 0.5).is_err());
}
