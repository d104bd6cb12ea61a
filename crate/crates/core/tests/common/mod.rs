//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Frozen root of `int_0^{3pi/2} cos t t^{mu-1} dt`, computed once with
/// 30-digit arithmetic and reproduced by [`mu0_oracle`].
pub const MU0_GOLDEN: f64 = 0.691_556_220_438_014_0;

/// `int_0^{3pi/2} cos t t^{mu-1} (1 - 2t/(3pi))^{b-c} dt` by composite
/// Simpson after `t = u^8`, which leaves a smooth integrand
/// `8 u^{8 mu - 1} cos(u^8) (...)`.
pub fn simpson_mu0_integral(mu: f64, e: f64, panels: usize) -> f64 {
    let upper = 1.5 * PI;
    let m = 8.0;
    let u_max = upper.powf(1.0 / m);
    let g = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let t = u.powf(m);
        let w = if e == 0.0 { 1.0 } else { (1.0 - t / upper).max(0.0).powf(e) };
        m * u.powf(m * mu - 1.0) * t.cos() * w
    };
    let n = 2 * panels;
    let h = u_max / n as f64;
    let mut s = g(0.0) + g(u_max);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
    }
    s * h / 3.0
}

/// Root of the Simpson integral by plain bisection on `[lo, hi]`.
pub fn mu0_oracle(e: f64, lo: f64, hi: f64) -> f64 {
    let f = |mu: f64| simpson_mu0_integral(mu, e, 200_000);
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    assert!(fa * f(b) < 0.0, "oracle bracket has no sign change");
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if f(m) * fa > 0.0 {
            a = m;
        } else {
            b = m;
        }
        if b - a < 1e-14 {
            break;
        }
    }
    0.5 * (a + b)
}
