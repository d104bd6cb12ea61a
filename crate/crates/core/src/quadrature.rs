//! Singular integrals with a `t^{mu-1}` endpoint singularity and the
//! monotone root solves for the critical exponents.
//!
//! The singularity is removed by `t = s^{1/mu}`, which turns
//! `int_0^T g(t) t^{mu-1} dt` into `(1/mu) int_0^{T^mu} g(s^{1/mu}) ds`,
//! and the smooth result is integrated by globally adaptive
//! Gauss-Kronrod (7/15).

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Lower end of the root bracket in mu.
pub const MU_EPSILON: f64 = 1e-6;

/// Absolute tolerance requested from the quadrature.
pub const QUAD_ABS_TOL: f64 = 1e-12;

const QUAD_REL_TOL: f64 = 1e-14;
const MAX_SUBDIVISIONS: usize = 4000;
const PRESCAN_POINTS: usize = 64;
const MONOTONE_PROBES: usize = 8;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub segments: usize,
}

/// Globally adaptive G7/K15 over `[a, b]` with optional interior breakpoints.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, breakpoints: &[f64], abs_tol: f64) -> Quadrature {
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breakpoints.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut segs: Vec<Segment> = cuts.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        let target = abs_tol.max(QUAD_REL_TOL * value.abs());
        if error <= target || segs.len() >= MAX_SUBDIVISIONS {
            return Quadrature {
                value,
                error,
                segments: segs.len(),
            };
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // interval exhausted at machine resolution
            segs.push(Segment { error: 0.0, ..s });
            continue;
        }
        segs.push(gk15(&f, s.a, mid));
        segs.push(gk15(&f, mid, s.b));
    }
}

/// Which critical-exponent integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegralKind {
    /// `int_0^{3pi/2} cos t t^{mu-1} (1 - 2t/(3pi))^{b-c} dt`
    Mu0Prime,
    /// `int_0^{(rho+1)pi} sin(t - rho pi) t^{mu-1} (1 - t/((rho+1)pi))^{b-c} dt`
    MuStar { rho: f64 },
}

impl IntegralKind {
    pub fn validate(&self) -> Result<()> {
        if let IntegralKind::MuStar { rho } = *self {
            if !(rho > 0.0 && rho <= 1.0) {
                return Err(Error::Parameter(format!("rho = {rho} outside (0, 1]")));
            }
        }
        Ok(())
    }

    fn upper(&self) -> f64 {
        match *self {
            IntegralKind::Mu0Prime => 1.5 * PI,
            IntegralKind::MuStar { rho } => (rho + 1.0) * PI,
        }
    }

    /// Zeros of the oscillating factor inside `(0, T)`.
    fn nodes(&self) -> Vec<f64> {
        match *self {
            IntegralKind::Mu0Prime => vec![0.5 * PI],
            IntegralKind::MuStar { rho } => vec![rho * PI],
        }
    }

    /// Admissible mu keep the integral at or above zero (`Mu0Prime`) or at
    /// or below zero (`MuStar`).
    pub fn admissible(&self, value: f64) -> bool {
        match self {
            IntegralKind::Mu0Prime => value >= 0.0,
            IntegralKind::MuStar { .. } => value <= 0.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IntegralKind::Mu0Prime => "MU0_PRIME",
            IntegralKind::MuStar { .. } => "MUSTAR",
        }
    }
}

fn check_mu_bc(mu: f64, b: f64, c: f64) -> Result<()> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Parameter(format!("mu = {mu} outside (0, 1]")));
    }
    if b < c {
        return Err(Error::Parameter(format!(
            "b = {b} < c = {c}: negative endpoint exponent is out of scope"
        )));
    }
    Ok(())
}

/// `int_0^T g(t) t^{mu-1} dt` through `t = s^{1/mu}`.
pub fn weighted_singular_integral(g: impl Fn(f64) -> f64, upper: f64, mu: f64, t_breaks: &[f64]) -> Quadrature {
    let inv = 1.0 / mu;
    let s_upper = upper.powf(mu);
    let mut breaks: Vec<f64> = t_breaks.iter().map(|t| t.powf(mu)).collect();
    // geometric ladder toward t = 0 keeps the flat region resolved
    for j in 1..=12 {
        breaks.push((upper * 0.5f64.powi(j)).powf(mu));
    }
    let q = integrate(
        |s| if s <= 0.0 { g(0.0) } else { g(s.powf(inv)) },
        0.0,
        s_upper,
        &breaks,
        QUAD_ABS_TOL * mu,
    );
    Quadrature {
        value: q.value * inv,
        error: q.error * inv,
        ..q
    }
}

fn endpoint_factor(t: f64, upper: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else {
        (1.0 - t / upper).max(0.0).powf(exponent)
    }
}

fn integrand(kind: IntegralKind, b: f64, c: f64) -> impl Fn(f64) -> f64 {
    let upper = kind.upper();
    let e = b - c;
    move |t: f64| match kind {
        IntegralKind::Mu0Prime => t.cos() * endpoint_factor(t, upper, e),
        IntegralKind::MuStar { rho } => (t - rho * PI).sin() * endpoint_factor(t, upper, e),
    }
}

/// Value of the critical-exponent integral at `mu`.
pub fn integral_value(kind: IntegralKind, mu: f64, b: f64, c: f64) -> Result<f64> {
    kind.validate()?;
    check_mu_bc(mu, b, c)?;
    Ok(weighted_singular_integral(integrand(kind, b, c), kind.upper(), mu, &kind.nodes()).value)
}

/// Same integral without the substitution: adaptive quadrature on
/// `[delta, T]` plus the leading tail `g(0) delta^mu / mu`.
pub fn integral_value_raw(kind: IntegralKind, mu: f64, b: f64, c: f64, delta: f64) -> Result<f64> {
    kind.validate()?;
    check_mu_bc(mu, b, c)?;
    let g = integrand(kind, b, c);
    let upper = kind.upper();
    let mut breaks = kind.nodes();
    let mut x = delta;
    while x < upper {
        breaks.push(x);
        x *= 4.0;
    }
    let head = g(0.0) * delta.powf(mu) / mu;
    let q = integrate(|t| g(t) * t.powf(mu - 1.0), delta, upper, &breaks, QUAD_ABS_TOL);
    Ok(head + q.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    Found,
    NoSignChange,
    NotMonotoneWarning,
}

impl RootStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RootStatus::Found => "FOUND",
            RootStatus::NoSignChange => "NO_SIGN_CHANGE",
            RootStatus::NotMonotoneWarning => "NOT_MONOTONE_WARNING",
        }
    }
}

/// Bracketed root of a critical-exponent integral.
///
/// `root` always lies in the closed final bracket `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    pub kind: IntegralKind,
    pub root: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub evaluations: usize,
    pub status: RootStatus,
    /// Every bracket with a sign change seen on the pre-scan.
    pub sign_changes: Vec<(f64, f64)>,
    /// Integral values at `MU_EPSILON` and at 1.
    pub endpoint_values: (f64, f64),
    /// `(mu, value)` for every iteration after the pre-scan.
    pub trace: Vec<(f64, f64)>,
}

impl RootResult {
    /// Largest admissible mu in `(0, 1]`: the root when one exists, `1`
    /// when the whole range is admissible, `None` otherwise.
    pub fn critical_exponent(&self) -> Option<f64> {
        match self.status {
            RootStatus::Found | RootStatus::NotMonotoneWarning => Some(self.root),
            RootStatus::NoSignChange => {
                if self.kind.admissible(self.endpoint_values.1) {
                    Some(1.0)
                } else {
                    None
                }
            }
        }
    }
}

/// Solve `I(mu) = 0` on `(MU_EPSILON, 1]` by bisection with secant steps.
pub fn solve_root(kind: IntegralKind, b: f64, c: f64, tol: f64) -> Result<RootResult> {
    kind.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tol = {tol} must be positive")));
    }
    check_mu_bc(1.0, b, c)?;
    let f = |mu: f64| integral_value(kind, mu, b, c);

    let grid: Vec<f64> = (0..PRESCAN_POINTS)
        .map(|i| MU_EPSILON + (1.0 - MU_EPSILON) * i as f64 / (PRESCAN_POINTS - 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&m| f(m)).collect::<Result<_>>()?;
    let mut evaluations = grid.len();
    let endpoint_values = (values[0], values[PRESCAN_POINTS - 1]);

    let sign_changes: Vec<(f64, f64)> = (0..PRESCAN_POINTS - 1)
        .filter(|&i| values[i] * values[i + 1] < 0.0 || values[i + 1] == 0.0)
        .map(|i| (grid[i], grid[i + 1]))
        .collect();

    let probes: Vec<f64> = (1..=MONOTONE_PROBES)
        .map(|j| values[j * (PRESCAN_POINTS - 1) / (MONOTONE_PROBES + 1)])
        .collect();
    let rising = endpoint_values.1 >= endpoint_values.0;
    let monotone = probes
        .windows(2)
        .all(|w| if rising { w[1] > w[0] } else { w[1] < w[0] });

    let mut result = RootResult {
        kind,
        root: f64::NAN,
        bracket: (MU_EPSILON, 1.0),
        residual: f64::NAN,
        evaluations,
        status: RootStatus::NoSignChange,
        sign_changes: sign_changes.clone(),
        endpoint_values,
        trace: Vec::new(),
    };

    // A root at the closed end mu = 1.
    if endpoint_values.1.abs() <= tol {
        result.root = 1.0;
        result.bracket = (grid[PRESCAN_POINTS - 2], 1.0);
        result.residual = endpoint_values.1;
        result.status = if monotone && sign_changes.len() <= 1 {
            RootStatus::Found
        } else {
            RootStatus::NotMonotoneWarning
        };
        return Ok(result);
    }

    let Some(&(mut lo, mut hi)) = sign_changes.first() else {
        return Ok(result);
    };
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    evaluations += 2;
    let mut last_side = 0i8;
    let mut repeats = 0;
    let mut best = if flo.abs() < fhi.abs() { (lo, flo) } else { (hi, fhi) };
    let mut brackets = vec![(lo, hi)];
    for _ in 0..200 {
        let width = hi - lo;
        if width <= tol && best.1.abs() <= tol {
            break;
        }
        let secant = hi - fhi * (hi - lo) / (fhi - flo);
        let x = if repeats < 2 && secant > lo + 0.05 * width && secant < hi - 0.05 * width {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x)?;
        evaluations += 1;
        result.trace.push((x, fx));
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            lo = x;
            hi = x;
            break;
        }
        let side = if (fx < 0.0) == (flo < 0.0) { -1 } else { 1 };
        if side < 0 {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        repeats = if side == last_side { repeats + 1 } else { 0 };
        last_side = side;
        brackets.push((lo, hi));
    }
    result.root = best.0;
    result.residual = best.1;
    // tightest bracket that still has the estimate strictly inside
    result.bracket = brackets
        .iter()
        .rev()
        .find(|(l, h)| *l < best.0 && best.0 < *h)
        .copied()
        .unwrap_or((lo.min(best.0), hi.max(best.0)));
    result.evaluations = evaluations;
    result.status = if monotone && sign_changes.len() == 1 && best.1.abs() <= tol {
        RootStatus::Found
    } else if best.1.abs() <= tol {
        RootStatus::NotMonotoneWarning
    } else {
        RootStatus::NoSignChange
    };
    Ok(result)
}

/// `mu_0'(b, c)`.
pub fn solve_mu0(b: f64, c: f64, tol: f64) -> Result<RootResult> {
    solve_root(IntegralKind::Mu0Prime, b, c, tol)
}

/// `mu*(rho, b-1, c)`.
pub fn solve_mustar(rho: f64, b: f64, c: f64, tol: f64) -> Result<RootResult> {
    solve_root(IntegralKind::MuStar { rho }, b, c, tol)
}

/// One point of a `mu*` curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub rho: f64,
    pub result: RootResult,
}

impl CurvePoint {
    pub fn mustar(&self) -> Option<f64> {
        self.result.critical_exponent()
    }
}

/// `mu*(rho, b-1, c)` across a rho grid, evaluated in parallel.
pub fn mustar_curve(b: f64, c: f64, rho_grid: &[f64], tol: f64) -> Result<Vec<CurvePoint>> {
    rho_grid
        .par_iter()
        .map(|&rho| {
            Ok(CurvePoint {
                rho,
                result: solve_mustar(rho, b, c, tol)?,
            })
        })
        .collect()
}

/// `k` equally spaced points on `(0, 1]` ending at 1.
pub fn rho_grid(points: usize) -> Vec<f64> {
    (1..=points).map(|i| i as f64 / points as f64).collect()
}
