//! Gegenbauer polynomials, zero counting on the closed disc,
//! close-to-convexity of normalized means and boundary-curve bundles.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::func::Func;
use crate::numeric::Real;
use crate::series::{scaled_normalized_mean, PowerSeries};
use crate::special::{binomial_coefficients, cesaro_weights, cesaro_weights_f64, stable_regime};
use crate::subordination::verify_starlike;
use crate::trig::{positivity_scan_poly, GridSpec, ScanReport, SumKind, TrigPoly};
use crate::verdict::{
    degree_budget, power_subordination_slack, reduce_samples, BoundaryGrid, GridPoint, Sample, Status,
    Verdict,
};

type C = Complex64;

/// Degree, order and argument of a Gegenbauer evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParams {
    pub lambda: f64,
    pub x: f64,
    pub degree: usize,
}

impl GegenbauerParams {
    pub fn new(lambda: f64, x: f64, degree: usize) -> Result<Self> {
        if !(lambda > 0.0) || !(-1.0..=1.0).contains(&x) {
            return Err(Error::Parameter(format!("lambda = {lambda}, x = {x}")));
        }
        Ok(GegenbauerParams { lambda, x, degree })
    }

    /// Outside `0 < lambda < 1/2` the results carry no claim.
    pub fn exploratory(&self) -> bool {
        !(self.lambda > 0.0 && self.lambda < 0.5)
    }
}

/// `C_0^lambda(x), ..., C_k^lambda(x)` by the three-term recurrence.
pub fn gegenbauer_sequence(k: usize, lambda: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(1.0);
    if k >= 1 {
        out.push(2.0 * lambda * x);
    }
    for m in 2..=k {
        let mf = m as f64;
        let v = (2.0 * x * (mf + lambda - 1.0) * out[m - 1] - (mf + 2.0 * lambda - 2.0) * out[m - 2]) / mf;
        out.push(v);
    }
    out
}

pub fn gegenbauer(k: usize, lambda: f64, x: f64) -> f64 {
    gegenbauer_sequence(k, lambda, x)[k]
}

/// Taylor coefficients of `(1 - 2xz + z^2)^{-lambda}` from the factorization
/// `(1 - e^{ia} z)^{-lambda} (1 - e^{-ia} z)^{-lambda}`, `x = cos a`.
pub fn gegenbauer_generating(k: usize, lambda: f64, x: f64) -> Vec<f64> {
    let a = x.clamp(-1.0, 1.0).acos();
    let p = binomial_coefficients(&lambda, k);
    (0..=k)
        .map(|m| {
            (0..=m)
                .map(|j| p[j] * p[m - j] * ((2.0 * j as f64 - m as f64) * a).cos())
                .sum()
        })
        .collect()
}

/// `sum_{k<=n} (B_{n-k}/B_n) C_k^lambda(x) z^k`.
pub fn gegenbauer_mean(lambda: f64, x: f64, n: usize, b: f64, c: f64) -> Result<PowerSeries<f64>> {
    crate::special::check_bc(b, c)?;
    let g = gegenbauer_sequence(n, lambda, x);
    let w = cesaro_weights_f64(n, b, c);
    Ok(PowerSeries::new(w.iter().zip(&g).map(|(w, g)| w * g).collect()))
}

/// Argument-principle data for a polynomial on `|z| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Winding {
    /// `None` when tracking stopped at a near-zero on the circle.
    pub winding: Option<i64>,
    pub min_modulus: f64,
    pub steps: usize,
}

fn horner(a: &[C], z: C) -> C {
    a.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Winding number of `P(e^{it})`, `0 <= t <= 2 pi`.
///
/// Each step `h` satisfies `M1 h <= |P(t)| / 2` with `M1 = sum k |a_k|`, so
/// `P` stays in a disc around `P(t)` that excludes the origin and every
/// argument increment is below `pi/6`.
pub fn winding_number(a: &[C], floor: f64) -> Winding {
    let m1: f64 = a.iter().enumerate().map(|(k, x)| k as f64 * x.norm()).sum();
    let deg = a.len().saturating_sub(1).max(1);
    let h_max = 2.0 * PI / (8.0 * deg as f64);
    let mut t = 0.0;
    let mut p = horner(a, C::new(1.0, 0.0));
    let mut min_modulus = p.norm();
    let mut total = 0.0;
    let mut steps = 0;
    while t < 2.0 * PI {
        if p.norm() <= floor {
            return Winding {
                winding: None,
                min_modulus,
                steps,
            };
        }
        let h = if m1 > 0.0 { (0.5 * p.norm() / m1).min(h_max) } else { h_max };
        if h < 1e-12 {
            return Winding {
                winding: None,
                min_modulus,
                steps,
            };
        }
        let next_t = (t + h).min(2.0 * PI);
        let q = horner(a, C::from_polar(1.0, next_t));
        let d = (q / p).arg();
        debug_assert!(d.abs() < PI / 2.0);
        total += d;
        min_modulus = min_modulus.min(q.norm());
        p = q;
        t = next_t;
        steps += 1;
    }
    if min_modulus <= floor {
        return Winding {
            winding: None,
            min_modulus,
            steps,
        };
    }
    Winding {
        winding: Some((total / (2.0 * PI)).round() as i64),
        min_modulus,
        steps,
    }
}

/// Does `P` have no zeros in `|z| <= 1`?
pub fn zero_free_closed_disc(p: &PowerSeries<C>) -> Verdict {
    let a = p.coeffs();
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let budget = degree_budget(p.degree()) * scale.max(f64::MIN_POSITIVE);
    let w = winding_number(a, budget);
    let note = |s: String| Some(s);
    match w.winding {
        None => Verdict {
            status: Status::Inconclusive,
            margin: w.min_modulus,
            witness: None,
            samples: w.steps,
            budget,
            note: note("near-zero on the unit circle".into()),
        },
        Some(0) => Verdict {
            status: Status::HoldsSampled,
            margin: w.min_modulus,
            witness: None,
            samples: w.steps,
            budget,
            note: None,
        },
        Some(k) => Verdict {
            status: Status::Fails,
            margin: w.min_modulus,
            witness: locate_zero(a),
            samples: w.steps,
            budget,
            note: note(format!("{k} zeros inside the unit disc")),
        },
    }
}

/// A zero inside the disc, by Newton from a ring of starts.
fn locate_zero(a: &[C]) -> Option<C> {
    let da: Vec<C> = a.iter().enumerate().skip(1).map(|(k, &x)| x * k as f64).collect();
    for s in 0..32 {
        let mut z = C::from_polar(0.5, 2.0 * PI * s as f64 / 32.0 + 0.1);
        for _ in 0..100 {
            let d = horner(&da, z);
            if d.norm() == 0.0 {
                break;
            }
            z -= horner(a, z) / d;
        }
        if z.norm() <= 1.0 && horner(a, z).norm() < 1e-10 {
            return Some(z);
        }
    }
    None
}

/// `sum_k (B_{n-k}/B_n) C_k^lambda(x) cos k theta > 0` on `(0, pi)` for each
/// `x`; one scan per `x`.
pub fn gegenbauer_cosine_scans(
    lambda: f64,
    x_grid: &[f64],
    n: usize,
    b: f64,
    c: f64,
    grid: &GridSpec,
) -> Result<Vec<(f64, ScanReport)>> {
    x_grid
        .iter()
        .map(|&x| {
            let p = gegenbauer_mean(lambda, x, n, b, c)?;
            Ok((x, positivity_scan_poly(&TrigPoly::new(p.into_coeffs(), SumKind::Cosine), grid)?))
        })
        .collect()
}

/// The scans above folded into one report (worst `x` wins).
pub fn gegenbauer_cosine_positivity(
    lambda: f64,
    x_grid: &[f64],
    n: usize,
    b: f64,
    c: f64,
    grid: &GridSpec,
) -> Result<ScanReport> {
    let scans = gegenbauer_cosine_scans(lambda, x_grid, n, b, c, grid)?;
    let verdict = Verdict::combine(scans.iter().map(|(_, s)| s.verdict.clone()));
    let (_, worst) = scans
        .iter()
        .min_by(|a, b| a.1.min_value.total_cmp(&b.1.min_value))
        .ok_or_else(|| Error::Parameter("empty x grid".into()))?;
    Ok(ScanReport {
        verdict,
        certified: scans.iter().all(|(_, s)| s.certified),
        evaluations: scans.iter().map(|(_, s)| s.evaluations).sum(),
        lipschitz_bound: scans.iter().map(|(_, s)| s.lipschitz_bound).fold(0.0, f64::max),
        ..worst.clone()
    })
}

/// Close-to-convexity outcome for a scaled normalized mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CtcReport {
    /// `(B_n/B_{n-1}) s_n(f)' / f' < (1 - z)^{2 - 2 lambda}`
    pub verdict: Verdict,
    /// `Re(z S'/g) > 0` with `g = z f'`
    pub close_to_convex: Verdict,
    pub min_derivative_modulus: f64,
}

/// Sampled `Re(1 + z f''/f') > alpha`.
pub fn verify_convex(f: &Func, alpha: f64, grid: &BoundaryGrid) -> Result<()> {
    verify_starlike(&Func::Z.mul(f.derivative()), alpha, grid)
}

pub fn close_to_convex_check(
    f: &Func,
    lambda: f64,
    n: usize,
    b: f64,
    c: f64,
    grid: &BoundaryGrid,
) -> Result<CtcReport> {
    if !(0.5..1.0).contains(&lambda) {
        return Err(Error::Parameter(format!("lambda = {lambda} outside [1/2, 1)")));
    }
    if !stable_regime(b, c) {
        return Err(Error::Precondition(format!("b = {b}, c = {c} violates b >= max(c, 2c - 1)")));
    }
    verify_convex(f, lambda, grid)?;
    let s = scaled_normalized_mean(&PowerSeries::new(f.taylor(n)), n, &b, &c)?;
    let ds = s.derivative();
    let ds = ds.coeffs();
    let df = f.derivative();
    let p = 2.0 - 2.0 * lambda;
    let points = grid.points(false);
    let budget = degree_budget(n);
    let ratio_at = |z: C| -> Option<C> {
        let d = df.eval(z);
        (d.norm() > 0.0).then(|| horner(ds, z) / d)
    };
    let verdict = reduce_samples(&points, budget, |g: &GridPoint| {
        let z = g.z();
        match ratio_at(z) {
            Some(r) => power_subordination_slack(z, r, p),
            None => Sample::Undefined,
        }
    });
    let close_to_convex = reduce_samples(&points, budget, |g: &GridPoint| match ratio_at(g.z()) {
        Some(r) => Sample::Slack(r.re),
        None => Sample::Undefined,
    });
    let min_derivative_modulus = points
        .par_iter()
        .map(|g| horner(ds, g.z()).norm())
        .reduce(|| f64::INFINITY, f64::min);
    Ok(CtcReport {
        verdict,
        close_to_convex,
        min_derivative_modulus,
    })
}

/// One closed boundary polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// `None` for the function itself.
    pub n: Option<usize>,
    pub points: Vec<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveBundle {
    pub b: f64,
    pub c: f64,
    pub shift: usize,
    pub curves: Vec<Curve>,
    /// Fraction of curve `i`'s vertices inside curve `i + 1`.
    pub containment: Vec<f64>,
}

/// Radius used for the image of `f` itself, which may be singular on the circle.
pub const FUNCTION_RADIUS: f64 = 1.0 - 1e-6;

/// Boundary images of `s_n^{(b-1+k, c)}(f)` for `n = 1..=n_max`, then `f`.
pub fn chain_explorer(f: &Func, b: f64, c: f64, k: usize, n_max: usize, theta_samples: usize) -> Result<CurveBundle> {
    if theta_samples < 3 || n_max == 0 {
        return Err(Error::Parameter("need n_max >= 1 and at least 3 samples".into()));
    }
    let bk = b + k as f64;
    crate::special::check_bc(bk, c)?;
    let a = f.taylor(n_max);
    if a[0].norm() != 0.0 {
        return Err(Error::Normalization(format!("{}", a[0])));
    }
    let circle: Vec<C> = (0..=theta_samples)
        .map(|i| C::from_polar(1.0, 2.0 * PI * (i % theta_samples) as f64 / theta_samples as f64))
        .collect();
    let mut curves: Vec<Curve> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut w = cesaro_weights_f64(n, bk, c);
            w[0] = 0.0;
            let s: Vec<C> = w.iter().zip(&a).map(|(w, x)| x * *w).collect();
            Curve {
                n: Some(n),
                points: circle.iter().map(|&z| horner(&s, z)).collect(),
            }
        })
        .collect();
    curves.push(Curve {
        n: None,
        points: circle.iter().map(|&z| f.eval(z * FUNCTION_RADIUS)).collect(),
    });
    let containment = curves
        .windows(2)
        .map(|w| containment_score(&w[0].points, &w[1].points))
        .collect();
    Ok(CurveBundle {
        b,
        c,
        shift: k,
        curves,
        containment,
    })
}

/// Fraction of `inner`'s vertices inside the closed polygon `outer`
/// (even-odd rule).
pub fn containment_score(inner: &[C], outer: &[C]) -> f64 {
    if inner.is_empty() {
        return 1.0;
    }
    let inside = inner.iter().filter(|&&p| point_in_polygon(p, outer)).count();
    inside as f64 / inner.len() as f64
}

pub fn point_in_polygon(p: C, poly: &[C]) -> bool {
    let mut inside = false;
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.im > p.im) != (b.im > p.im) && p.re < (b.re - a.re) * (p.im - a.im) / (b.im - a.im) + a.re {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// `delta_k = sum_j w_j B_{n_j - k}/B_{n_j}` (zero past `n_j`).
pub fn kakeya_deltas<R: Real>(weights: &[R], n_list: &[usize], b: &R, c: &R) -> Vec<R> {
    let top = n_list.iter().copied().max().unwrap_or(0);
    let mut delta = vec![R::zero(); top + 1];
    for (w, &n) in weights.iter().zip(n_list) {
        for (k, g) in cesaro_weights(n, b, c).into_iter().enumerate() {
            delta[k] = delta[k].clone() + w.clone() * g;
        }
    }
    delta
}

/// `1 = delta_0 >= delta_1 >= ... >= delta_n > 0`.
pub fn is_kakeya<R: Real>(delta: &[R]) -> bool {
    !delta.is_empty()
        && delta[0] == R::one()
        && delta.windows(2).all(|w| w[1] <= w[0])
        && delta.last().map_or(false, |d| *d > R::zero())
}
