//! Sampled subordination checks for generalized Cesàro means.
//!
//! `G < (1-z)^p` is tested through the Schwarz-function form
//! `|1 - G^{1/p}| <= |z|` with principal branches.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::func::Func;
use crate::geometry::zero_free_closed_disc;
use crate::series::{PowerSeries, TriangularScheme};
use crate::special::{binomial_coefficients, cesaro_weights_f64, coeff_table_f64, stable_regime, Params};
use crate::trig::conj2_boundary_sum;
use crate::verdict::{
    degree_budget, power_subordination_slack, reduce_samples, BoundaryGrid, GridPoint, Sample, Verdict,
};

type C = Complex64;

fn one() -> C {
    C::new(1.0, 0.0)
}

fn horner(a: &[C], z: C) -> C {
    a.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Coefficients of `sigma_n(f)` from those of `f`.
fn mean_coeffs(a: &[C], n: usize, b: f64, c: f64) -> Vec<C> {
    cesaro_weights_f64(n, b, c)
        .iter()
        .zip(a)
        .map(|(w, x)| x * *w)
        .collect()
}

fn require_stable(b: f64, c: f64) -> Result<()> {
    if stable_regime(b, c) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "b = {b}, c = {c} violates b >= max(c, 2c - 1)"
        )))
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&mu) {
        return Err(Error::Parameter(format!("mu = {mu} outside [-1, 1]")));
    }
    Ok(())
}

fn trivially_holds(reason: &str) -> Verdict {
    Verdict::holds(f64::INFINITY, 0, 0.0).with_note(reason)
}

/// `(1 - z)^p P(z) < (1 - z)^p` on the grid and on `|z| = 1`.
fn weighted_polynomial_check(poly: &[C], p: f64, grid: &BoundaryGrid) -> Verdict {
    let budget = degree_budget(poly.len().saturating_sub(1));
    let points = grid.points(true);
    reduce_samples(&points, budget, |g: &GridPoint| {
        let z = g.z();
        let value = (one() - z).powf(p) * horner(poly, z);
        power_subordination_slack(z, value, p)
    })
}

/// `(1 - z)^mu sigma_n(f_mu, z) < (1 - z)^mu`.
pub fn check_stability(params: &Params, grid: &BoundaryGrid) -> Result<Verdict> {
    check_mu(params.mu)?;
    require_stable(params.b, params.c)?;
    if params.mu == 0.0 {
        return Ok(trivially_holds("f_mu = 1"));
    }
    let t = coeff_table_f64(params.n, params.b, params.c, params.mu)?;
    let poly: Vec<C> = t.d_seq.iter().map(|&d| C::new(d, 0.0)).collect();
    Ok(weighted_polynomial_check(&poly, params.mu, grid))
}

/// `h(z) = 1 - [(1 - z)^mu sigma_n(f_mu, z)]^{1/mu}`, the Schwarz function
/// of the stability check.
pub fn stability_schwarz(params: &Params, z: C) -> Result<C> {
    check_mu(params.mu)?;
    if params.mu == 0.0 {
        return Ok(C::new(0.0, 0.0));
    }
    let t = coeff_table_f64(params.n, params.b, params.c, params.mu)?;
    let poly: Vec<C> = t.d_seq.iter().map(|&d| C::new(d, 0.0)).collect();
    let g = (one() - z).powf(params.mu) * horner(&poly, z);
    Ok(one() - g.powf(1.0 / params.mu))
}

/// `sigma_n(f)/f < 1/F` for a target `F = (1 - z)^{-p}`.
pub fn check_stable_wrt(f: &Func, target: &Func, n: usize, b: f64, c: f64, grid: &BoundaryGrid) -> Result<Verdict> {
    let Func::Pow(p) = *target else {
        return Ok(Verdict::inconclusive("target is not of the form (1 - z)^{-p}"));
    };
    crate::special::check_bc(b, c)?;
    let sigma = mean_coeffs(&f.taylor(n), n, b, c);
    let budget = degree_budget(n);
    let points = grid.points(false);
    Ok(reduce_samples(&points, budget, |g: &GridPoint| {
        let z = g.z();
        let fz = f.eval(z);
        if fz.norm() == 0.0 {
            return Sample::Undefined;
        }
        let ratio = horner(&sigma, z) / fz;
        if p == 0.0 {
            return Sample::Slack(-(ratio - one()).norm());
        }
        power_subordination_slack(z, ratio, p)
    }))
}

/// Sampled `Re(z f'/f) > alpha`; errors name the worst sample.
pub fn verify_starlike(f: &Func, alpha: f64, grid: &BoundaryGrid) -> Result<()> {
    let df = f.derivative();
    let budget = degree_budget(0);
    let v = reduce_samples(&grid.points(false), budget, |g: &GridPoint| {
        let z = g.z();
        let fz = f.eval(z);
        if fz.norm() == 0.0 {
            return Sample::Undefined;
        }
        Sample::Slack((z * df.eval(z) / fz).re - alpha)
    });
    membership_result(v, &format!("Re(z f'/f) > {alpha}"))
}

fn membership_result(v: Verdict, what: &str) -> Result<()> {
    if v.is_holds() {
        Ok(())
    } else {
        let at = v.witness.map(|w| format!(" at z = {w}")).unwrap_or_default();
        Err(Error::Precondition(format!(
            "{what} violated{at}: slack {}{}",
            v.margin,
            v.note.map(|s| format!(" ({s})")).unwrap_or_default()
        )))
    }
}

/// `z sigma_n(f/z, z) / f < (1 - z)^{2 - 2 lambda}` for `f` in `S*(lambda)`.
pub fn check_starlike_ratio(
    f: &Func,
    lambda: f64,
    n: usize,
    b: f64,
    c: f64,
    grid: &BoundaryGrid,
) -> Result<Verdict> {
    if !(0.5..1.0).contains(&lambda) {
        return Err(Error::Parameter(format!("lambda = {lambda} outside [1/2, 1)")));
    }
    crate::special::check_bc(b, c)?;
    verify_starlike(f, lambda, grid)?;
    let g = f.clone().div_z();
    let sigma = mean_coeffs(&g.taylor(n), n, b, c);
    let p = 2.0 - 2.0 * lambda;
    let points = grid.points(false);
    Ok(reduce_samples(&points, degree_budget(n), |q: &GridPoint| {
        let z = q.z();
        let gz = g.eval(z);
        if gz.norm() == 0.0 {
            return Sample::Undefined;
        }
        power_subordination_slack(z, horner(&sigma, z) / gz, p)
    }))
}

/// `Re[(1 - z)^{2 rho - 1} sigma_n(f_mu, z)] > 0`; the unit circle uses the
/// boundary sine sum.
pub fn check_halfplane(params: &Params, grid: &BoundaryGrid) -> Result<Verdict> {
    let (rho, mu) = (params.rho, params.mu);
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::Parameter(format!("rho = {rho} outside (0, 1]")));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Parameter(format!("mu = {mu} outside (0, 1]")));
    }
    let t = coeff_table_f64(params.n, params.b, params.c, mu)?;
    let poly: Vec<C> = t.d_seq.iter().map(|&d| C::new(d, 0.0)).collect();
    let e = 2.0 * rho - 1.0;
    let points = grid.points(true);
    Ok(reduce_samples(&points, degree_budget(params.n), |g: &GridPoint| {
        if g.r == 1.0 {
            Sample::Slack(halfplane_boundary_value(&t, rho, g.theta))
        } else {
            let z = g.z();
            Sample::Slack(((one() - z).powf(e) * horner(&poly, z)).re)
        }
    }))
}

/// `Re[(1 - z)^{2 rho - 1} sigma_n(f_mu, z)]` at `z = e^{i phi}`:
/// `-(2 sin(phi/2))^{2 rho - 1}` times the boundary sine sum.
pub fn halfplane_boundary_value(table: &crate::special::CoefficientTable<f64>, rho: f64, phi: f64) -> f64 {
    -(2.0 * (phi / 2.0).sin()).powf(2.0 * rho - 1.0) * conj2_boundary_sum(table, rho, phi)
}

/// Direct complex evaluation of the same real part.
pub fn halfplane_value(table: &crate::special::CoefficientTable<f64>, rho: f64, z: C) -> f64 {
    let poly: Vec<C> = table.d_seq.iter().map(|&d| C::new(d, 0.0)).collect();
    ((one() - z).powf(2.0 * rho - 1.0) * horner(&poly, z)).re
}

/// `F G < (1 - z)^{target}` for `F < (1-z)^alpha`, `G < (1-z)^beta`.
///
/// With `n = Some(m)` the factors are `(1 - z)^a sigma_m(f_a)`; with `None`
/// they are the targets `(1 - z)^a` themselves.
pub fn check_product_rule(
    alpha: f64,
    beta: f64,
    target: f64,
    n: Option<usize>,
    b: f64,
    c: f64,
    grid: &BoundaryGrid,
) -> Result<Verdict> {
    if !(alpha > 0.0 && beta > 0.0 && target > 0.0) {
        return Err(Error::Parameter("powers must be positive".into()));
    }
    let factor = |a: f64| -> Result<Vec<C>> {
        Ok(match n {
            None => vec![one()],
            Some(m) => {
                check_mu(a)?;
                coeff_table_f64(m, b, c, a)?
                    .d_seq
                    .iter()
                    .map(|&d| C::new(d, 0.0))
                    .collect()
            }
        })
    };
    let (pf, pg) = (factor(alpha)?, factor(beta)?);
    let budget = degree_budget(pf.len() + pg.len());
    Ok(reduce_samples(&grid.points(true), budget, |g: &GridPoint| {
        let z = g.z();
        let w = one() - z;
        let prod = w.powf(alpha) * horner(&pf, z) * w.powf(beta) * horner(&pg, z);
        power_subordination_slack(z, prod, target)
    }))
}

/// `F_mu` family for the hypergeometric check: dilations of `f_mu`.
pub fn hypergeometric_family(mu: f64) -> Vec<Func> {
    [1.0, 0.9, 0.5, -0.7]
        .iter()
        .map(|&r| if r == 1.0 { Func::Pow(mu) } else { Func::Pow(mu).dilate(r) })
        .collect()
}

/// `sigma_n(f) / (phi_{rho,mu} * f) < (1 - z)^rho` for `f` in `F_mu`
/// (`f(0) = 1`, `Re(z f'/f) > -mu/2`).
pub fn check_hypergeometric_stability(
    rho: f64,
    mu: f64,
    n: usize,
    b: f64,
    c: f64,
    f: &Func,
    grid: &BoundaryGrid,
) -> Result<Verdict> {
    if !(mu > 0.0 && mu <= rho && rho <= 1.0) {
        return Err(Error::Parameter(format!("need 0 < mu <= rho <= 1, got mu = {mu}, rho = {rho}")));
    }
    require_stable(b, c)?;
    let a0 = f.taylor(0)[0];
    if (a0 - one()).norm() > 1e-12 {
        return Err(Error::Normalization(format!("f(0) = {a0}")));
    }
    verify_starlike(f, -mu / 2.0, grid)?;
    let Some(phi_f) = f.hadamard_phi(rho, mu) else {
        return Ok(Verdict::inconclusive("phi * f has no closed form for this input"));
    };
    let sigma = mean_coeffs(&f.taylor(n), n, b, c);
    Ok(reduce_samples(&grid.points(false), degree_budget(n), |g: &GridPoint| {
        let z = g.z();
        let d = phi_f.eval(z);
        if d.norm() == 0.0 {
            return Sample::Undefined;
        }
        power_subordination_slack(z, horner(&sigma, z) / d, rho)
    }))
}

/// `(1 - z)^mu H_n(f_mu, z) < (1 - z)^mu` for a triangular scheme.
pub fn check_matrix_stability(h: &TriangularScheme<f64>, mu: f64, grid: &BoundaryGrid) -> Result<Verdict> {
    check_mu(mu)?;
    let h1 = h.last_h1();
    if h1 > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!("h_n1 = {h1} > 1")));
    }
    if mu == 0.0 || h.order() == 0 {
        return Ok(trivially_holds("constant evaluand"));
    }
    let n = h.order();
    let poch = binomial_coefficients(&mu, n);
    let poly: Vec<C> = h.row(n).iter().zip(&poch).map(|(w, p)| C::new(w * p, 0.0)).collect();
    Ok(weighted_polynomial_check(&poly, mu, grid))
}

/// Outcome of the argument bound together with the nonvanishing check.
#[derive(Debug, Clone, PartialEq)]
pub struct ArgumentBound {
    pub verdict: Verdict,
    /// `2 pi (1 - lambda)`
    pub bound: f64,
    pub max_abs_arg: f64,
    pub zero_free: Verdict,
}

/// `|arg sum_j w_j sigma_{n_j}(f, z)| <= 2 pi (1 - lambda)` for `z f` in
/// `S*(lambda)`.
pub fn check_argument_bound(
    f: &Func,
    lambda: f64,
    weights: &[f64],
    n_list: &[usize],
    b: f64,
    c: f64,
    grid: &BoundaryGrid,
) -> Result<ArgumentBound> {
    if weights.len() != n_list.len() || weights.is_empty() {
        return Err(Error::Parameter("weights and orders must have equal nonzero length".into()));
    }
    if weights.iter().any(|&w| !(w >= 0.0)) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::Parameter("weights must be nonnegative and sum to 1".into()));
    }
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::Parameter(format!("lambda = {lambda} outside [0, 1)")));
    }
    crate::special::check_bc(b, c)?;
    verify_starlike(&Func::Z.mul(f.clone()), lambda, grid)?;
    let top = *n_list.iter().max().expect("nonempty");
    let a = f.taylor(top);
    let mut q = vec![C::new(0.0, 0.0); top + 1];
    for (&w, &n) in weights.iter().zip(n_list) {
        for (k, s) in mean_coeffs(&a, n, b, c).into_iter().enumerate() {
            q[k] += s * w;
        }
    }
    let bound = 2.0 * PI * (1.0 - lambda);
    let verdict = reduce_samples(&grid.points(true), degree_budget(top), |g: &GridPoint| {
        let v = horner(&q, g.z());
        if v.norm() == 0.0 {
            Sample::Undefined
        } else {
            Sample::Slack(bound - v.arg().abs())
        }
    });
    let max_abs_arg = bound - verdict.margin;
    let zero_free = zero_free_closed_disc(&PowerSeries::new(q));
    Ok(ArgumentBound {
        verdict,
        bound,
        max_abs_arg,
        zero_free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn small() -> BoundaryGrid {
        BoundaryGrid::geometric(16, 256)
    }

    #[test]
    fn partial_sums_mu_one() {
        let p = Params::new(1.0, 1.0, 1.0, 6).unwrap();
        let v = check_stability(&p, &small()).unwrap();
        assert!(v.is_holds(), "{v:?}");
        let z = C::from_polar(0.8, 0.3);
        let h = stability_schwarz(&p, z).unwrap();
        assert!((h.norm() - 0.8f64.powi(7)).abs() < 1e-14);
    }

    #[test]
    fn mu_zero_and_negative_branch() {
        let p = Params::new(1.0, 1.0, 0.0, 3).unwrap();
        assert!(check_stability(&p, &small()).unwrap().is_holds());
        let p = Params::new(2.0, 1.0, -0.5, 5).unwrap();
        assert!(check_stability(&p, &BoundaryGrid::geometric(64, 512)).unwrap().is_holds());
    }

    #[test]
    fn starlike_ratio_examples() {
        let f = Func::z_pow(1.0);
        assert!(check_starlike_ratio(&f, 0.5, 3, 1.0, 1.0, &small()).unwrap().is_holds());
        let v = check_starlike_ratio(&Func::Z, 0.7, 3, 2.0, 1.0, &small()).unwrap();
        assert!(v.is_holds() && v.margin >= 0.0);
        // z/(1-z)^2 is not in S*(1/2)
        assert!(matches!(
            check_starlike_ratio(&Func::z_pow(2.0), 0.5, 3, 1.0, 1.0, &small()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn halfplane_small_case() {
        let p = Params::new(1.0, 1.0, 1.0, 1).unwrap().with_rho(1.0).unwrap();
        assert!(check_halfplane(&p, &small()).unwrap().is_holds());
    }

    #[test]
    fn product_rule_controls() {
        let g = small();
        assert!(check_product_rule(0.5, 0.5, 1.0, None, 1.0, 1.0, &g).unwrap().is_holds());
        assert!(check_product_rule(0.5, 0.25, 0.75, Some(6), 2.0, 1.0, &g).unwrap().is_holds());
        let v = check_product_rule(0.5, 0.5, 0.5, None, 1.0, 1.0, &g).unwrap();
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn hypergeometric_example() {
        let g = small();
        for f in hypergeometric_family(0.5) {
            let v = check_hypergeometric_stability(1.0, 0.5, 4, 2.0, 1.0, &f, &g).unwrap();
            assert!(v.is_holds(), "{f:?} {v:?}");
        }
        let v = check_hypergeometric_stability(1.0, 0.5, 4, 2.0, 1.0, &Func::Const(one()).add(Func::NegLog.scale(0.1)), &g);
        assert!(matches!(v, Ok(ref v) if v.status == Status::Inconclusive) || v.is_err());
    }

    #[test]
    fn matrix_precondition_and_identity() {
        let h = TriangularScheme::from_first_column(&[1.5, 1.0], 0.0);
        assert!(h.is_err() || check_matrix_stability(&h.unwrap(), 0.5, &small()).is_err());
        let id = TriangularScheme::<f64>::identity(5);
        assert!(check_matrix_stability(&id, 0.5, &small()).unwrap().is_holds());
        let single = TriangularScheme::<f64>::identity(0);
        assert!(check_matrix_stability(&single, 0.5, &small()).unwrap().is_holds());
    }

    #[test]
    fn argument_bound_example() {
        let f = Func::Pow(1.0);
        let r = check_argument_bound(&f, 0.5, &[0.25; 4], &[1, 2, 3, 4], 2.0, 1.0, &small()).unwrap();
        assert!(r.verdict.is_holds(), "{r:?}");
        assert!(r.max_abs_arg <= r.bound);
        assert!(check_argument_bound(&f, 0.5, &[0.5, 0.6], &[1, 2], 2.0, 1.0, &small()).is_err());
    }
}
