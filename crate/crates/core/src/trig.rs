//! Cosine and sine sums of the coefficient tables and certified
//! positivity scans on an open interval.
//!
//! A scan splits `(lo, hi)` into `N` cells sampled at their midpoints. A
//! cell `[m - h, m + h]` is certified when either
//!
//! * `f(m) > L h` with `L = sum k |a_k|` (Bernstein bound), or
//! * `f(m) - |f'(m)| h - M2 h^2 / 2 > 0` with `M2 = sum k^2 |a_k|`,
//!
//! both after subtracting the binary64 evaluation budget. Cells that fail
//! both tests are bisected. The endpoints, where the sums may vanish, are
//! covered by a Taylor certificate built from the first non-negligible
//! derivative there.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numeric::{compensated_csum, CompensatedSum};
use crate::quadrature::weighted_singular_integral;
use crate::special::{coeff_table_f64, CoefficientTable};
use crate::verdict::{Status, Verdict};

/// Safety factor on the rounding estimate `eps * sum (1 + k pi) |a_k|`.
const EVAL_SAFETY: f64 = 8.0;
/// Highest endpoint derivative tried by the Taylor certificate.
const MAX_ENDPOINT_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// `sum_{k>=0} a_k cos k theta`
    Cosine,
    /// `sum_{k>=1} a_k sin k theta`
    Sine,
}

impl SumKind {
    pub fn label(&self) -> &'static str {
        match self {
            SumKind::Cosine => "cosine",
            SumKind::Sine => "sine",
        }
    }
}

/// `sum_{k<=upper} c_k cos k theta` or `sum_{1<=k<=upper} c_k sin k theta`.
pub fn trig_sum(table: &CoefficientTable<f64>, kind: SumKind, upper: usize, theta: f64) -> Result<f64> {
    let c = upper_slice(table, upper)?;
    Ok(TrigPoly::new(c.to_vec(), kind).eval(theta))
}

fn upper_slice(table: &CoefficientTable<f64>, upper: usize) -> Result<&[f64]> {
    if upper > 2 * table.n + 1 {
        return Err(Error::Parameter(format!(
            "upper index {upper} exceeds 2n+1 = {}",
            2 * table.n + 1
        )));
    }
    Ok(&table.c_seq[..=upper])
}

/// A real trigonometric polynomial with cached bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<f64>,
    kind: SumKind,
}

impl TrigPoly {
    pub fn new(mut coeffs: Vec<f64>, kind: SumKind) -> Self {
        if kind == SumKind::Sine && !coeffs.is_empty() {
            coeffs[0] = 0.0;
        }
        TrigPoly { coeffs, kind }
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `sum k^j |a_k|`: bound on the j-th derivative.
    pub fn moment(&self, j: u32) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| (k as f64).powi(j as i32) * a.abs())
            .sum()
    }

    /// Rounding budget for the j-th derivative.
    pub fn error_budget(&self, j: u32) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| (k as f64).powi(j as i32) * (1.0 + k as f64 * PI) * a.abs())
            .sum();
        EVAL_SAFETY * f64::EPSILON * s
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_with_derivative(theta).0
    }

    /// `(f(theta), f'(theta))`.
    pub fn eval_with_derivative(&self, theta: f64) -> (f64, f64) {
        let mut f = CompensatedSum::new();
        let mut df = CompensatedSum::new();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let kf = k as f64;
            let (s, c) = (kf * theta).sin_cos();
            match self.kind {
                SumKind::Cosine => {
                    f.add(a * c);
                    df.add(-a * kf * s);
                }
                SumKind::Sine => {
                    f.add(a * s);
                    df.add(a * kf * c);
                }
            }
        }
        (f.value(), df.value())
    }

    /// `f^{(j)}(theta)`; exact trigonometric values at `0` and `pi`.
    pub fn derivative(&self, theta: f64, j: usize) -> f64 {
        let mut acc = CompensatedSum::new();
        let phase = j % 4;
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let kf = k as f64;
            let w = a * kf.powi(j as i32);
            // cos(x + j pi/2) and sin(x + j pi/2)
            let (s, c) = if theta == 0.0 {
                (0.0, 1.0)
            } else if theta == PI {
                (0.0, if k % 2 == 0 { 1.0 } else { -1.0 })
            } else {
                (kf * theta).sin_cos()
            };
            let (cs, sn) = match phase {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc.add(
                w * match self.kind {
                    SumKind::Cosine => cs,
                    SumKind::Sine => sn,
                },
            );
        }
        acc.value()
    }
}

/// Sampling and refinement parameters for a scan of `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub refinement: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: 0.0,
            hi: PI,
            points: 4096,
            refinement: 12,
        }
    }
}

impl GridSpec {
    pub fn with_points(self, points: usize) -> Self {
        GridSpec { points, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::Parameter(format!("empty interval ({}, {})", self.lo, self.hi)));
        }
        if self.points < 16 {
            return Err(Error::Parameter(format!("grid needs at least 16 points, got {}", self.points)));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.points as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub verdict: Verdict,
    /// Smallest sampled value (midpoints and refinement points).
    pub min_value: f64,
    pub argmin: f64,
    pub certified: bool,
    /// `L = sum k |a_k|`.
    pub lipschitz_bound: f64,
    pub step: f64,
    pub evaluations: usize,
    /// Half-widths near `lo` and `hi` covered by the endpoint certificates.
    pub endpoint_radii: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Endpoint {
    Certified(f64),
    Negative(f64, f64),
    Unknown,
}

fn endpoint_certificate(p: &TrigPoly, e: f64, dir: f64, width: f64) -> Endpoint {
    for j in 0..=MAX_ENDPOINT_ORDER {
        let dj = p.derivative(e, j);
        if dj.abs() <= p.error_budget(j as u32) {
            continue;
        }
        let next = p.moment(j as u32 + 1);
        let r = if next > 0.0 {
            (0.5 * (j as f64 + 1.0) * dj.abs() / next).min(0.5 * width)
        } else {
            0.5 * width
        };
        let sign = dj.signum() * dir.powi(j as i32);
        if sign > 0.0 {
            return Endpoint::Certified(r);
        }
        let t = e + dir * r;
        let v = p.eval(t);
        if v < -10.0 * p.error_budget(0) {
            return Endpoint::Negative(t, v);
        }
        return Endpoint::Unknown;
    }
    Endpoint::Unknown
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Cell {
    Certified,
    Negative(f64),
    Unresolved,
}

struct CellScan {
    outcome: Cell,
    min: f64,
    argmin: f64,
    evaluations: usize,
}

struct Bounds {
    l1: f64,
    m2: f64,
    err0: f64,
    err1: f64,
}

fn scan_cell(p: &TrigPoly, b: &Bounds, u: f64, v: f64, depth: usize, out: &mut CellScan) -> Cell {
    let m = 0.5 * (u + v);
    let h = 0.5 * (v - u);
    let (f, df) = p.eval_with_derivative(m);
    out.evaluations += 1;
    if f < out.min || (f == out.min && m < out.argmin) {
        out.min = f;
        out.argmin = m;
    }
    if f < -10.0 * b.err0 {
        return Cell::Negative(m);
    }
    let slack = f - b.err0;
    if slack > b.l1 * h || slack - (df.abs() + b.err1) * h - 0.5 * b.m2 * h * h > 0.0 {
        return Cell::Certified;
    }
    if depth == 0 || h <= f64::EPSILON * m.abs().max(1.0) {
        return Cell::Unresolved;
    }
    let left = scan_cell(p, b, u, m, depth - 1, out);
    if let Cell::Negative(_) = left {
        return left;
    }
    let right = scan_cell(p, b, m, v, depth - 1, out);
    match (left, right) {
        (_, Cell::Negative(t)) => Cell::Negative(t),
        (Cell::Certified, Cell::Certified) => Cell::Certified,
        _ => Cell::Unresolved,
    }
}

/// Certified positivity scan of a trigonometric polynomial on `(lo, hi)`.
pub fn positivity_scan_poly(p: &TrigPoly, grid: &GridSpec) -> Result<ScanReport> {
    grid.validate()?;
    let width = grid.hi - grid.lo;
    let step = grid.step();
    let bounds = Bounds {
        l1: p.moment(1),
        m2: p.moment(2),
        err0: p.error_budget(0),
        err1: p.error_budget(1),
    };
    let lo_cert = endpoint_certificate(p, grid.lo, 1.0, width);
    let hi_cert = endpoint_certificate(p, grid.hi, -1.0, width);
    let r_lo = if let Endpoint::Certified(r) = lo_cert { r } else { 0.0 };
    let r_hi = if let Endpoint::Certified(r) = hi_cert { r } else { 0.0 };
    let a = grid.lo + r_lo;
    let b = grid.hi - r_hi;

    let cells: Vec<(Cell, CellScan)> = (0..grid.points)
        .into_par_iter()
        .map(|i| {
            let u = grid.lo + i as f64 * step;
            let v = if i + 1 == grid.points { grid.hi } else { grid.lo + (i + 1) as f64 * step };
            let mut out = CellScan {
                outcome: Cell::Certified,
                min: f64::INFINITY,
                argmin: f64::NAN,
                evaluations: 0,
            };
            // the offset midpoint is always sampled for reporting
            let m = 0.5 * (u + v);
            let f = p.eval(m);
            out.evaluations += 1;
            out.min = f;
            out.argmin = m;
            let (cu, cv) = (u.max(a), v.min(b));
            let outcome = if f < -10.0 * bounds.err0 {
                Cell::Negative(m)
            } else if cu >= cv {
                Cell::Certified
            } else {
                scan_cell(p, &bounds, cu, cv, grid.refinement, &mut out)
            };
            out.outcome = outcome;
            (outcome, out)
        })
        .collect();

    let mut min_value = f64::INFINITY;
    let mut argmin = f64::NAN;
    let mut evaluations = 0;
    let mut negative = None;
    let mut unresolved = None;
    for (outcome, scan) in &cells {
        evaluations += scan.evaluations;
        if scan.min < min_value {
            min_value = scan.min;
            argmin = scan.argmin;
        }
        match *outcome {
            Cell::Negative(t) if negative.is_none() => negative = Some(t),
            Cell::Unresolved if unresolved.is_none() => unresolved = Some(scan.argmin),
            _ => {}
        }
    }
    for cert in [lo_cert, hi_cert] {
        if let Endpoint::Negative(t, v) = cert {
            evaluations += 1;
            if v < min_value {
                min_value = v;
                argmin = t;
            }
            negative = negative.or(Some(t));
        }
    }

    let budget = bounds.err0;
    let base = Verdict {
        status: Status::HoldsSampled,
        margin: min_value,
        witness: None,
        samples: evaluations,
        budget,
        note: None,
    };
    let (verdict, certified) = if negative.is_some() {
        (
            Verdict {
                status: Status::Fails,
                witness: Some(Complex64::from_polar(1.0, argmin)),
                ..base
            },
            false,
        )
    } else if let Some(t) = unresolved {
        (
            Verdict {
                status: Status::Inconclusive,
                note: Some(format!("unresolved near theta = {t}")),
                ..base
            },
            false,
        )
    } else if matches!(lo_cert, Endpoint::Unknown) || matches!(hi_cert, Endpoint::Unknown) {
        (
            Verdict {
                status: Status::Inconclusive,
                note: Some("no endpoint certificate".into()),
                ..base
            },
            false,
        )
    } else {
        (base, true)
    };
    Ok(ScanReport {
        verdict,
        min_value,
        argmin,
        certified,
        lipschitz_bound: bounds.l1,
        step,
        evaluations,
        endpoint_radii: (r_lo, r_hi),
    })
}

/// Positivity scan of `sum_{k<=upper} c_k cos k theta` or the sine sum.
pub fn positivity_scan(
    table: &CoefficientTable<f64>,
    kind: SumKind,
    upper: usize,
    grid: &GridSpec,
) -> Result<ScanReport> {
    let c = upper_slice(table, upper)?;
    positivity_scan_poly(&TrigPoly::new(c.to_vec(), kind), grid)
}

/// `sin(phi/2) sum_{k<=2n+1} c_k cos k phi - cos(phi/2) sum_{k<=2n+1} c_k sin k(pi-phi)`.
pub fn parity_identity_residual(table: &CoefficientTable<f64>, phi: f64) -> f64 {
    let upper = 2 * table.n + 1;
    let c = &table.c_seq[..=upper];
    let cos_sum = TrigPoly::new(c.to_vec(), SumKind::Cosine).eval(phi);
    let sin_sum = TrigPoly::new(c.to_vec(), SumKind::Sine).eval(PI - phi);
    (phi / 2.0).sin() * cos_sum - (phi / 2.0).cos() * sin_sum
}

/// `Re P_n(phi)` computed directly and through the factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RePn {
    pub direct: f64,
    pub factored: f64,
}

impl RePn {
    pub fn discrepancy(&self) -> f64 {
        (self.direct - self.factored).abs()
    }
}

/// `P_n(phi) = (1 - e^{2i phi}) (sum_k d_k e^{2ik phi})^2`.
///
/// The factored form is `(sum_k c_k e^{ik phi})(sum_k (-1)^k c_k e^{ik phi})`.
pub fn re_pn(table: &CoefficientTable<f64>, phi: f64) -> RePn {
    let one = Complex64::new(1.0, 0.0);
    let e2 = Complex64::from_polar(1.0, 2.0 * phi);
    let s = compensated_csum(
        table
            .d_seq
            .iter()
            .enumerate()
            .map(|(k, &d)| Complex64::from_polar(d, 2.0 * k as f64 * phi)),
    );
    let direct = ((one - e2) * s * s).re;
    let plus = compensated_csum(
        table
            .c_seq
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c, k as f64 * phi)),
    );
    let minus = compensated_csum(table.c_seq.iter().enumerate().map(|(k, &c)| {
        let sgn = if k % 2 == 0 { c } else { -c };
        Complex64::from_polar(sgn, k as f64 * phi)
    }));
    RePn {
        direct,
        factored: (plus * minus).re,
    }
}

/// `sum_k d_k sin[(k + rho - 1/2) phi - rho pi]`.
pub fn conj2_boundary_sum(table: &CoefficientTable<f64>, rho: f64, phi: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for (k, &d) in table.d_seq.iter().enumerate() {
        acc.add(d * ((k as f64 + rho - 0.5) * phi - rho * PI).sin());
    }
    acc.value()
}

/// Finite sum against its large-`n` integral limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRatio {
    /// `(phi/n)^mu sum_k d_k sin[(k + rho - 1/2) phi/n - rho pi]`
    pub scaled_sum: f64,
    /// `(1/Gamma(mu)) int_0^phi t^{mu-1} (1 - t/phi)^{b-c} sin(t - rho pi) dt`
    pub limit: f64,
    pub ratio: f64,
    /// Set when the limit is too close to zero for the ratio to mean anything.
    pub inconclusive: bool,
}

/// Compare the scaled boundary sum of order `n` with its integral limit.
pub fn asymptotic_ratio(b: f64, c: f64, mu: f64, rho: f64, phi: f64, n: usize) -> Result<AsymptoticRatio> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Parameter(format!("mu = {mu} outside (0, 1)")));
    }
    if b < c {
        return Err(Error::Parameter(format!("b = {b} < c = {c}")));
    }
    if !(phi > 0.0) {
        return Err(Error::Parameter(format!("phi = {phi} must be positive")));
    }
    let table = coeff_table_f64(n, b, c, mu)?;
    let nf = n as f64;
    let scaled_sum = (phi / nf).powf(mu) * conj2_boundary_sum(&table, rho, phi / nf);
    let e = b - c;
    let g = move |t: f64| {
        let w = if e == 0.0 { 1.0 } else { (1.0 - t / phi).max(0.0).powf(e) };
        (t - rho * PI).sin() * w
    };
    let breaks: Vec<f64> = (0..)
        .map(|j| rho * PI + j as f64 * PI)
        .take_while(|&t| t < phi)
        .collect();
    let q = weighted_singular_integral(g, phi, mu, &breaks);
    let limit = q.value / gamma(mu);
    let inconclusive = limit.abs() <= 1e3 * q.error.max(1e-12);
    Ok(AsymptoticRatio {
        scaled_sum,
        limit,
        ratio: scaled_sum / limit,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::coeff_table;

    fn table(n: usize, b: f64, c: f64, mu: f64) -> CoefficientTable<f64> {
        coeff_table(n, b, c, mu).unwrap()
    }

    #[test]
    fn spec_examples() {
        let t = table(0, 1.0, 1.0, 0.5);
        let th = 1.1;
        assert!((trig_sum(&t, SumKind::Cosine, 1, th).unwrap() - (1.0 + th.cos())).abs() < 1e-15);
        let t = table(1, 1.0, 1.0, 0.5);
        assert!((trig_sum(&t, SumKind::Cosine, 3, PI / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(trig_sum(&t, SumKind::Sine, 3, 0.0).unwrap(), 0.0);
        assert!(trig_sum(&t, SumKind::Cosine, 4, 0.3).is_err());
    }

    #[test]
    fn vietoris_small_orders_certify() {
        for n in 0..=20 {
            let t = table(n, 1.0, 1.0, 0.5);
            for (kind, upper) in [(SumKind::Cosine, 2 * n + 1), (SumKind::Sine, 2 * n + 1)] {
                let r = positivity_scan(&t, kind, upper, &GridSpec::default().with_points(512)).unwrap();
                assert!(r.certified, "n = {n} {kind:?}: {:?}", r.verdict);
            }
        }
    }

    #[test]
    fn mu_one_cosine_fails() {
        // 1 + cos t + cos 2t has minimum -1/8 at cos t = -1/4
        let t = table(1, 1.0, 1.0, 1.0);
        let r = positivity_scan(&t, SumKind::Cosine, 2, &GridSpec::default()).unwrap();
        assert_eq!(r.verdict.status, Status::Fails);
        let at = (-0.25f64).acos();
        assert!((trig_sum(&t, SumKind::Cosine, 2, at).unwrap() + 0.125).abs() < 1e-15);
        assert!((r.min_value + 0.125).abs() < 1e-6 && (r.argmin - at).abs() < 1e-3);
    }

    #[test]
    fn parity_and_pn() {
        let t = table(0, 1.0, 1.0, 0.5);
        assert!(parity_identity_residual(&t, PI / 2.0).abs() < 1e-15);
        let t = table(7, 2.0, 1.5, 0.4);
        for phi in [0.1, 1.0, 2.0, 3.1] {
            assert!(parity_identity_residual(&t, phi).abs() < 1e-12);
            let p = re_pn(&t, phi);
            assert!(p.discrepancy() < 1e-12, "{p:?}");
        }
        let t0 = table(0, 1.0, 1.0, 0.5);
        let p = re_pn(&t0, 0.7);
        assert!((p.direct - (1.0 - (1.4f64).cos())).abs() < 1e-15);
    }

    #[test]
    fn conj2_reductions() {
        let t = table(5, 2.0, 1.0, 0.6);
        let phi = 1.3;
        let cos_sum: f64 = t.d_seq.iter().enumerate().map(|(k, d)| d * (k as f64 * phi).cos()).sum();
        assert!((conj2_boundary_sum(&t, 0.5, phi) + cos_sum).abs() < 1e-13);
        let t0 = table(0, 1.0, 1.0, 0.6);
        assert!((conj2_boundary_sum(&t0, 1.0, phi) + (phi / 2.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_ratio_converges() {
        let r1 = asymptotic_ratio(1.0, 1.0, 0.3, 0.5, 1.5 * PI, 2048).unwrap();
        let r2 = asymptotic_ratio(1.0, 1.0, 0.3, 0.5, 1.5 * PI, 4096).unwrap();
        assert!(!r2.inconclusive);
        assert!((r2.ratio - 1.0).abs() < 0.02, "{r2:?}");
        assert!((r2.ratio - 1.0).abs() < (r1.ratio - 1.0).abs());
    }
}
