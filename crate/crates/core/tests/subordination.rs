use num_complex::Complex64;
use proptest::prelude::*;

use cesaro::func::Func;
use cesaro::special::Params;
use cesaro::subordination::{
    check_argument_bound, check_halfplane, check_hypergeometric_stability, check_product_rule, check_stability,
    check_stable_wrt, check_starlike_ratio, hypergeometric_family, stability_schwarz, verify_starlike,
};
use cesaro::verdict::BoundaryGrid;

type C = Complex64;

fn grid() -> BoundaryGrid {
    BoundaryGrid::geometric(16, 256)
}

fn stable_params() -> impl Strategy<Value = (f64, f64, f64, usize)> {
    (0.5f64..3.0, 0.0f64..2.0, -1.0f64..=1.0, 0usize..25)
        .prop_map(|(c, extra, mu, n)| (c.max(2.0 * c - 1.0) + extra, c, mu, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schwarz_function_fixes_zero_and_contracts((b, c, mu, n) in stable_params(), r in 0.0f64..0.999, t in 0.0f64..6.283) {
        let p = Params::new(b, c, mu, n).unwrap();
        prop_assert!(stability_schwarz(&p, C::new(0.0, 0.0)).unwrap().norm() < 1e-14);
        let z = C::from_polar(r, t);
        let w = stability_schwarz(&p, z).unwrap();
        prop_assert!(w.norm() <= r * (1.0 + 1e-12) + 1e-14, "|w| = {} > |z| = {}", w.norm(), r);
    }

    #[test]
    fn maximum_modulus_grows_with_radius((b, c, mu, n) in stable_params()) {
        prop_assume!(mu != 0.0);
        let p = Params::new(b, c, mu, n).unwrap();
        let angles: Vec<f64> = (0..256).map(|i| (i as f64 + 0.5) * std::f64::consts::TAU / 256.0).collect();
        let max_at = |r: f64| angles
            .iter()
            .map(|&t| stability_schwarz(&p, C::from_polar(r, t)).unwrap().norm())
            .fold(0.0f64, f64::max);
        let radii = [0.2, 0.4, 0.6, 0.8, 0.95];
        let m: Vec<f64> = radii.iter().map(|&r| max_at(r)).collect();
        for i in 1..m.len() {
            prop_assert!(m[i] >= m[i - 1] * (1.0 - 1e-9));
            // h(z)/z is analytic too, so M(r)/r grows as well
            prop_assert!(m[i] / radii[i] >= m[i - 1] / radii[i - 1] * (1.0 - 1e-6));
        }
    }
}

#[test]
fn stable_wrt_power_agrees_with_stability() {
    for (b, c) in [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0)] {
        for mu in [0.25, 0.5, 1.0] {
            for n in [1, 3, 8] {
                let p = Params::new(b, c, mu, n).unwrap();
                let direct = check_stability(&p, &grid()).unwrap();
                let wrt = check_stable_wrt(&Func::f_mu(mu), &Func::f_mu(mu), n, b, c, &grid()).unwrap();
                assert_eq!(direct.status, wrt.status, "b={b} c={c} mu={mu} n={n}");
            }
        }
    }
    let v = check_stable_wrt(&Func::f_mu(0.5), &Func::NegLog, 3, 1.0, 1.0, &grid()).unwrap();
    assert_eq!(v.status, cesaro::verdict::Status::Inconclusive);
}

#[test]
fn stability_requires_stable_regime() {
    assert!(check_stability(&Params::new(2.0, 2.0, 0.5, 3).unwrap(), &grid()).is_err());
    assert!(check_stability(&Params::new(3.0, 2.0, 0.5, 3).unwrap(), &grid()).is_ok());
}

#[test]
fn product_of_subordinate_factors() {
    let v = check_product_rule(0.3, 0.5, 0.8, Some(6), 1.0, 1.0, &grid()).unwrap();
    assert!(v.is_holds(), "{v:?}");
    let v = check_product_rule(0.3, 0.5, 0.8, None, 1.0, 1.0, &grid()).unwrap();
    assert!(v.is_holds() && v.margin.abs() < 1e-6);
}

#[test]
fn halfplane_fails_beyond_critical_exponent() {
    // rho = 1/2 and mu = 1 exceed the critical exponent for b = c = 1
    let mut failing = 0;
    for n in 1..=12 {
        let p = Params::new(1.0, 1.0, 1.0, n).unwrap().with_rho(0.25).unwrap();
        if check_halfplane(&p, &grid()).unwrap().is_fails() {
            failing += 1;
        }
    }
    assert!(failing > 0);
    let p = Params::new(1.0, 1.0, 0.5, 10).unwrap().with_rho(0.5).unwrap();
    assert!(check_halfplane(&p, &grid()).unwrap().is_holds());
}

#[test]
fn starlike_inputs_are_checked() {
    assert!(verify_starlike(&Func::z_pow(1.0), 0.5, &grid()).is_ok());
    assert!(verify_starlike(&Func::z_pow(2.0), 0.5, &grid()).is_err());
    assert!(check_starlike_ratio(&Func::z_pow(2.0), 0.5, 3, 1.0, 1.0, &grid()).is_err());
    assert!(check_starlike_ratio(&Func::z_pow(1.0), 0.5, 6, 2.0, 1.0, &grid()).unwrap().is_holds());
}

#[test]
fn hypergeometric_family_holds() {
    for f in hypergeometric_family(0.4) {
        let v = check_hypergeometric_stability(0.8, 0.4, 6, 2.0, 1.0, &f, &grid()).unwrap();
        assert!(v.is_holds(), "{f:?}: {v:?}");
    }
    let odd = Func::NegLog.add(Func::Const(C::new(1.0, 0.0)));
    assert!(check_hypergeometric_stability(0.8, 0.4, 6, 2.0, 1.0, &Func::Pow(0.4).scale(2.0), &grid()).is_err());
    let v = check_hypergeometric_stability(0.8, 0.4, 6, 2.0, 1.0, &odd, &grid());
    assert!(v.map_or(true, |v| v.status == cesaro::verdict::Status::Inconclusive));
}

#[test]
fn argument_bound_for_convex_combination() {
    let a = check_argument_bound(&Func::Pow(1.0), 0.5, &[0.5, 0.5], &[3, 7], 2.0, 1.0, &grid()).unwrap();
    assert!(a.verdict.is_holds());
    assert!(a.max_abs_arg <= a.bound);
    assert!(a.zero_free.is_holds());
    // plain partial sums of 1/(1-z) vanish at z = -1
    let a = check_argument_bound(&Func::Pow(1.0), 0.5, &[0.5, 0.5], &[3, 7], 1.0, 1.0, &grid()).unwrap();
    assert!(!a.zero_free.is_holds());
    assert!(check_argument_bound(&Func::Pow(1.0), 0.5, &[0.4, 0.4], &[3, 7], 1.0, 1.0, &grid()).is_err());
}
