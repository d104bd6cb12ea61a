//! Truncated power series and the Cesàro-type means built on them.
//!
//! Truncation degree is always explicit: no operation extends a series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{compensated_csum, Field, Real};
use crate::special::{big_b_table, binomial_coefficients, cesaro_weights};

/// Coefficients `a_0..=a_m`, index = power of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

pub type ComplexSeries = PowerSeries<Complex64>;

impl<C: Field> PowerSeries<C> {
    /// Panics on an empty vector; a series always has a constant term.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least a_0");
        PowerSeries { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        PowerSeries::new(vec![C::zero(); m + 1])
    }

    /// Truncated `1/(1-z)`: all-ones coefficients, the Hadamard identity.
    pub fn geometric(m: usize) -> Self {
        PowerSeries::new(vec![C::one(); m + 1])
    }

    /// The series `z` padded to degree `m`.
    pub fn identity(m: usize) -> Self {
        let mut c = vec![C::zero(); m.max(1) + 1];
        c[1] = C::one();
        PowerSeries::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.degree() {
            return Err(Error::Truncation {
                have: self.degree(),
                need: m,
            });
        }
        Ok(PowerSeries::new(self.coeffs[..=m].to_vec()))
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> PowerSeries<D> {
        PowerSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| C::from_i64(k as i64) * a.clone())
                .collect(),
        )
    }

    /// `z f(z)`, degree grows by one.
    pub fn shift_up(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(C::zero());
        c.extend(self.coeffs.iter().cloned());
        PowerSeries::new(c)
    }

    /// `f(z)/z`; requires `a_0 = 0`.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != C::zero() {
            return Err(Error::Normalization(format!("{:?}", self.coeffs[0])));
        }
        if self.degree() == 0 {
            return Ok(PowerSeries::zero(0));
        }
        Ok(PowerSeries::new(self.coeffs[1..].to_vec()))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// Termwise sum on the common degree.
    pub fn add(&self, other: &Self) -> Self {
        let m = self.degree().min(other.degree());
        PowerSeries::new((0..=m).map(|k| self.coeffs[k].clone() + other.coeffs[k].clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    /// Cauchy product truncated to the common degree.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.degree().min(other.degree());
        let mut out = vec![C::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, a| acc * z.clone() + a.clone())
    }
}

impl<R: Real> PowerSeries<R> {
    pub fn to_complex(&self) -> ComplexSeries {
        self.map(|a| Complex64::new(a.to_f64(), 0.0))
    }
}

impl ComplexSeries {
    /// Compensated evaluation; used where the sum nearly cancels.
    pub fn eval_compensated(&self, z: Complex64) -> Complex64 {
        let mut zk = Complex64::new(1.0, 0.0);
        compensated_csum(self.coeffs.iter().map(|a| {
            let t = a * zk;
            zk *= z;
            t
        }))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let m = self.degree().max(other.degree());
        (0..=m)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// `(f * g)(z) = sum a_k b_k z^k` up to the smaller degree.
pub fn hadamard<C: Field>(f: &PowerSeries<C>, g: &PowerSeries<C>) -> PowerSeries<C> {
    let m = f.degree().min(g.degree());
    PowerSeries::new(
        (0..=m)
            .map(|k| f.coeffs[k].clone() * g.coeffs[k].clone())
            .collect(),
    )
}

/// `f_mu(z) = (1-z)^{-mu}` truncated at degree `m`: coefficients `(mu)_k/k!`.
pub fn binomial_series<R: Real, C: Field + From<R>>(mu: &R, m: usize) -> PowerSeries<C> {
    PowerSeries::new(binomial_coefficients(mu, m).into_iter().map(C::from).collect())
}

fn apply_weights<R: Real, C: Field + From<R>>(f: &PowerSeries<C>, w: &[R]) -> PowerSeries<C> {
    PowerSeries::new(
        w.iter()
            .zip(f.coeffs())
            .map(|(w, a)| C::from(w.clone()) * a.clone())
            .collect(),
    )
}

fn need_degree<C: Field>(f: &PowerSeries<C>, n: usize) -> Result<()> {
    if f.degree() < n {
        return Err(Error::Truncation {
            have: f.degree(),
            need: n,
        });
    }
    Ok(())
}

/// The kernel `sigma_n(z) = sum_{k<=n} (B_{n-k}/B_n) z^k`.
pub fn cesaro_kernel<R: Real, C: Field + From<R>>(n: usize, b: &R, c: &R) -> PowerSeries<C> {
    PowerSeries::new(cesaro_weights(n, b, c).into_iter().map(C::from).collect())
}

/// `sigma_n(f, z) = (1/B_n) sum_{k<=n} B_{n-k} a_k z^k`.
pub fn cesaro_mean<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
) -> Result<PowerSeries<C>> {
    need_degree(f, n)?;
    Ok(apply_weights(f, &cesaro_weights(n, b, c)))
}

/// Floating Cesàro mean with log-space weights, usable for large `n`.
pub fn cesaro_mean_f64(f: &ComplexSeries, n: usize, b: f64, c: f64) -> Result<ComplexSeries> {
    need_degree(f, n)?;
    let w = crate::special::cesaro_weights_f64(n, b, c);
    Ok(PowerSeries::new(
        w.iter().zip(f.coeffs()).map(|(w, a)| a * *w).collect(),
    ))
}

/// Builds `sigma_n` from `sigma_{n-1}` with the four-term recursion.
///
/// The step to order `m` is
/// `F_m sigma_{m-1} + (b-c)/B_m sum_{k<=m-2} B_{m-k-1}/(c+m-k-1) a_k z^k
///  + (1+b-2c)/(c B_m) a_{m-1} z^{m-1} + (B_0/B_m) a_m z^m`
/// with `F_m = (c+m-1)/(b+m-1)`. That factor equals `B_{m-1}/B_m` only for
/// `m >= 2`, so the first step uses `B_0/B_1`.
pub fn cesaro_mean_recursive<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
) -> Result<PowerSeries<C>> {
    recursive_impl(f, n, b, c, false)
}

/// Same recursion with the printed factor `(c+m-1)/(b+m-1)` at every step,
/// including `m = 1`. Correct only when `c = 1`.
pub fn cesaro_mean_recursive_literal<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
) -> Result<PowerSeries<C>> {
    recursive_impl(f, n, b, c, true)
}

fn recursive_impl<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
    literal: bool,
) -> Result<PowerSeries<C>> {
    need_degree(f, n)?;
    let bt = big_b_table(n, b, c);
    let a = f.coeffs();
    let mut sigma: Vec<C> = vec![a[0].clone()];
    for m in 1..=n {
        let mf = R::from_i64(m as i64);
        let lead = if m == 1 && !literal {
            bt[0].clone() / bt[1].clone()
        } else {
            (c.clone() + mf.clone() - R::one()) / (b.clone() + mf.clone() - R::one())
        };
        let bm = bt[m].clone();
        let mut next: Vec<C> = sigma.iter().map(|s| C::from(lead.clone()) * s.clone()).collect();
        next.push(C::zero());
        for k in 0..m.saturating_sub(1) {
            let idx = m - k - 1;
            let w = (b.clone() - c.clone()) / bm.clone() * bt[idx].clone()
                / (c.clone() + R::from_i64(idx as i64));
            next[k] = next[k].clone() + C::from(w) * a[k].clone();
        }
        let tail = (R::one() + b.clone() - R::from_i64(2) * c.clone()) / (c.clone() * bm.clone());
        next[m - 1] = next[m - 1].clone() + C::from(tail) * a[m - 1].clone();
        next[m] = next[m].clone() + C::from(bt[0].clone() / bm.clone()) * a[m].clone();
        sigma = next;
    }
    Ok(PowerSeries::new(sigma))
}

/// `s_n(f, z) = sum_{k=1}^{n} (B_{n-k}/B_n) a_k z^k` for `f` with `a_0 = 0`.
///
/// Satisfies `((b+n-1)/(c+n-1)) s_n(f)' = sigma_{n-1}(f')` for `n >= 2`.
pub fn normalized_mean<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
) -> Result<PowerSeries<C>> {
    if f.coeffs[0] != C::zero() {
        return Err(Error::Normalization(format!("{:?}", f.coeffs[0])));
    }
    if n == 0 {
        return Err(Error::Parameter("normalized mean needs n >= 1".into()));
    }
    need_degree(f, n)?;
    let mut w = cesaro_weights(n, b, c);
    w[0] = R::zero();
    Ok(apply_weights(f, &w))
}

/// `(B_n/B_{n-1}) s_n(f, z)`; the `z` coefficient is `a_1`.
pub fn scaled_normalized_mean<R: Real, C: Field + From<R>>(
    f: &PowerSeries<C>,
    n: usize,
    b: &R,
    c: &R,
) -> Result<PowerSeries<C>> {
    let s = normalized_mean(f, n, b, c)?;
    let bt = big_b_table(n, b, c);
    Ok(s.scale(&C::from(bt[n].clone() / bt[n - 1].clone())))
}

/// Hadamard inverse of `f_mu`: coefficients `k!/(mu)_k`.
pub fn tilde_f_mu<R: Real, C: Field + From<R>>(mu: &R, m: usize) -> Result<PowerSeries<C>> {
    if *mu == R::zero() {
        return Err(Error::ZeroMu);
    }
    if *mu < R::zero() {
        return Err(Error::Parameter(format!("mu = {:?} must be positive", mu)));
    }
    Ok(PowerSeries::new(
        binomial_coefficients(mu, m)
            .into_iter()
            .map(|p| C::from(R::one() / p))
            .collect(),
    ))
}

/// `phi_{rho,mu}(z) = z sum_{k>=0} (rho)_k/(mu)_k z^k`, truncated at degree `m`.
pub fn phi_rho_mu<R: Real, C: Field + From<R>>(rho: &R, mu: &R, m: usize) -> Result<PowerSeries<C>> {
    let zero = R::zero();
    if *mu == zero {
        return Err(Error::ZeroMu);
    }
    if !(*mu > zero && mu <= rho && *rho <= R::one()) {
        return Err(Error::Parameter(format!(
            "need 0 < mu <= rho <= 1, got rho = {:?}, mu = {:?}",
            rho, mu
        )));
    }
    let body = hypergeometric_ratio_coeffs(rho, mu, m.max(1) - 1);
    let mut c = vec![C::zero()];
    c.extend(body.into_iter().map(C::from));
    Ok(PowerSeries::new(c))
}

/// `(rho)_k/(mu)_k` for `k = 0..=m` via the ratio recursion.
pub fn hypergeometric_ratio_coeffs<R: Real>(rho: &R, mu: &R, m: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(m + 1);
    let mut p = R::one();
    for k in 0..=m {
        out.push(p.clone());
        let kk = R::from_i64(k as i64);
        p = p * (rho.clone() + kk.clone()) / (mu.clone() + kk);
    }
    out
}

/// Lower triangular summation matrix `(h_ij)`, `0 <= j <= i <= n`.
///
/// Construction enforces `h_i0 = 1`, `h_ij = h_i1 h_{i-1,j-1}`,
/// nonnegative entries and nonincreasing rows.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularScheme<R> {
    rows: Vec<Vec<R>>,
}

impl<R: Real> TriangularScheme<R> {
    /// Validates with absolute tolerance `tol` (zero on the exact path).
    pub fn new(rows: Vec<Vec<R>>, tol: R) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Scheme("no rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Scheme(format!("row {i} has {} entries", row.len())));
            }
            let d = row[0].clone() - R::one();
            if d > tol || -d > tol {
                return Err(Error::Scheme(format!("h[{i}][0] = {:?} != 1", row[0])));
            }
            for j in 0..=i {
                if row[j] < -tol.clone() {
                    return Err(Error::Scheme(format!("h[{i}][{j}] negative")));
                }
                if j >= 1 {
                    let prod = row[1].clone() * rows[i - 1][j - 1].clone();
                    let d = row[j].clone() - prod;
                    if d > tol || -d > tol {
                        return Err(Error::Scheme(format!(
                            "h[{i}][{j}] != h[{i}][1] h[{}][{}]",
                            i - 1,
                            j - 1
                        )));
                    }
                    if row[j] > row[j - 1].clone() + tol.clone() {
                        return Err(Error::Scheme(format!("row {i} increases at column {j}")));
                    }
                }
            }
        }
        Ok(TriangularScheme { rows })
    }

    /// Scheme generated by its first subdiagonal column `x_i = h_i1`:
    /// `h_ij = x_i x_{i-1} ... x_{i-j+1}`.
    pub fn from_first_column(x: &[R], tol: R) -> Result<Self> {
        let n = x.len();
        let mut rows: Vec<Vec<R>> = vec![vec![R::one()]];
        for i in 1..=n {
            let mut row = vec![R::one()];
            for j in 1..=i {
                let v = x[i - 1].clone() * rows[i - 1][j - 1].clone();
                row.push(v);
            }
            rows.push(row);
        }
        Self::new(rows, tol)
    }

    /// `g_ik = B_{i-k}/B_i`.
    pub fn cesaro(n: usize, b: &R, c: &R, tol: R) -> Result<Self> {
        let rows = (0..=n).map(|i| cesaro_weights(i, b, c)).collect();
        Self::new(rows, tol)
    }

    /// `h_ij = 1`: the partial-sum scheme.
    pub fn identity(n: usize) -> Self {
        TriangularScheme {
            rows: (0..=n).map(|i| vec![R::one(); i + 1]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.rows[i]
    }

    /// `h_n1`, or 0 for the single-row scheme.
    pub fn last_h1(&self) -> R {
        let n = self.order();
        if n == 0 {
            R::zero()
        } else {
            self.rows[n][1].clone()
        }
    }
}

/// Rows of the Cesàro matrix are nonincreasing; no validation of the other
/// conditions (they hold identically).
pub fn cesaro_rows_nonincreasing<R: Real>(n: usize, b: &R, c: &R) -> bool {
    (0..=n).all(|i| {
        let w = cesaro_weights(i, b, c);
        w.windows(2).all(|p| p[1] <= p[0])
    })
}

/// `H_n(f, z) = sum_k h_nk a_k z^k` from the last row.
pub fn triangular_mean<R: Real, C: Field + From<R>>(
    h: &TriangularScheme<R>,
    f: &PowerSeries<C>,
) -> Result<PowerSeries<C>> {
    let n = h.order();
    need_degree(f, n)?;
    Ok(apply_weights(f, h.row(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(p: i64, r: i64) -> Q {
        ratio(p, r)
    }

    fn qs(v: &[(i64, i64)]) -> PowerSeries<Q> {
        PowerSeries::new(v.iter().map(|&(p, r)| q(p, r)).collect())
    }

    #[test]
    fn hadamard_identity_and_zero() {
        let f = qs(&[(1, 1), (-2, 3), (5, 7), (1, 9)]);
        assert_eq!(hadamard(&f, &PowerSeries::geometric(3)), f);
        assert_eq!(hadamard(&f, &PowerSeries::zero(3)), PowerSeries::zero(3));
        let g: PowerSeries<Q> = PowerSeries::geometric(5);
        assert_eq!(hadamard(&g, &g), g);
    }

    #[test]
    fn binomial_series_examples() {
        let one: PowerSeries<Q> = binomial_series(&q(1, 1), 6);
        assert_eq!(one, PowerSeries::geometric(6));
        let zero: PowerSeries<Q> = binomial_series(&q(0, 1), 4);
        assert_eq!(zero, qs(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
        let half: PowerSeries<Q> = binomial_series(&q(1, 2), 2);
        assert_eq!(half.coeff(2), q(3, 8));
    }

    #[test]
    fn cesaro_mean_examples() {
        let f = qs(&[(3, 1), (1, 2), (-4, 5), (2, 1)]);
        assert_eq!(cesaro_mean(&f, 3, &q(1, 1), &q(1, 1)).unwrap(), f);
        let f1: PowerSeries<Q> = PowerSeries::geometric(4);
        assert_eq!(
            cesaro_mean(&f1, 2, &q(2, 1), &q(1, 1)).unwrap(),
            qs(&[(1, 1), (2, 3), (1, 3)])
        );
        assert_eq!(cesaro_mean(&f, 0, &q(2, 1), &q(1, 1)).unwrap(), qs(&[(3, 1)]));
        assert!(matches!(
            cesaro_mean(&f, 5, &q(2, 1), &q(1, 1)),
            Err(Error::Truncation { have: 3, need: 5 })
        ));
    }

    #[test]
    fn recursion_examples() {
        let f1: PowerSeries<Q> = PowerSeries::geometric(3);
        assert_eq!(
            cesaro_mean_recursive(&f1, 1, &q(2, 1), &q(1, 1)).unwrap(),
            qs(&[(1, 1), (1, 2)])
        );
        // b = c = 1: partial sums
        let f = qs(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        assert_eq!(cesaro_mean_recursive(&f, 4, &q(1, 1), &q(1, 1)).unwrap(), f);
    }

    #[test]
    fn literal_recursion_fails_at_first_step_when_c_is_not_one() {
        let f: PowerSeries<Q> = PowerSeries::geometric(3);
        let (b, c) = (q(3, 1), q(2, 1));
        let lit = cesaro_mean_recursive_literal(&f, 1, &b, &c).unwrap();
        let direct = cesaro_mean(&f, 1, &b, &c).unwrap();
        assert_ne!(lit, direct);
        // c = 1 makes both factors coincide
        let lit = cesaro_mean_recursive_literal(&f, 3, &q(5, 2), &q(1, 1)).unwrap();
        assert_eq!(lit, cesaro_mean(&f, 3, &q(5, 2), &q(1, 1)).unwrap());
    }

    #[test]
    fn normalized_mean_examples() {
        let zf: PowerSeries<Q> = PowerSeries::geometric(6).shift_up();
        let s = normalized_mean(&zf, 5, &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(s.coeffs()[..6], zf.coeffs()[..6]);
        let s1 = scaled_normalized_mean(&zf, 1, &q(2, 1), &q(1, 1)).unwrap();
        assert_eq!(s1, qs(&[(0, 1), (1, 1)]));
        let bad = qs(&[(1, 1), (1, 1)]);
        assert!(matches!(
            normalized_mean(&bad, 1, &q(1, 1), &q(1, 1)),
            Err(Error::Normalization(_))
        ));
    }

    #[test]
    fn normalized_mean_derivative_identity_231() {
        // ((b+n-1)/(c+n-1)) s_n(f)' = sigma_{n-1}(f') at (b, c, n) = (2, 1, 3)
        let f = qs(&[(0, 1), (1, 1), (-1, 2), (2, 3), (7, 5)]);
        let (b, c, n) = (q(2, 1), q(1, 1), 3usize);
        let lhs = normalized_mean(&f, n, &b, &c)
            .unwrap()
            .derivative()
            .scale(&q(4, 3));
        let rhs = cesaro_mean(&f.derivative(), n - 1, &b, &c).unwrap();
        assert_eq!(lhs.truncate(n - 1).unwrap(), rhs);
    }

    #[test]
    fn tilde_and_phi() {
        let t: PowerSeries<Q> = tilde_f_mu(&q(1, 1), 5).unwrap();
        assert_eq!(t, PowerSeries::geometric(5));
        let t: PowerSeries<Q> = tilde_f_mu(&q(1, 2), 4).unwrap();
        assert_eq!(t.coeff(2), q(8, 3));
        let f: PowerSeries<Q> = binomial_series(&q(1, 2), 4);
        assert_eq!(hadamard(&f, &t), PowerSeries::geometric(4));
        assert_eq!(tilde_f_mu::<Q, Q>(&q(0, 1), 3), Err(Error::ZeroMu));

        let p: PowerSeries<Q> = phi_rho_mu(&q(1, 2), &q(1, 2), 6).unwrap();
        assert_eq!(p, PowerSeries::geometric(5).shift_up());
        assert_eq!(p.coeff(1), q(1, 1));
        assert_eq!(phi_rho_mu::<Q, Q>(&q(1, 2), &q(0, 1), 3), Err(Error::ZeroMu));
        assert!(phi_rho_mu::<Q, Q>(&q(1, 3), &q(1, 2), 3).is_err());
    }

    #[test]
    fn phi_convolution_identity() {
        // z f_mu * phi_{rho,mu} = z f_rho, exactly
        let (rho, mu, m) = (q(1, 1), q(1, 2), 10);
        let zf_mu: PowerSeries<Q> = binomial_series(&mu, m - 1).shift_up();
        let zf_rho: PowerSeries<Q> = binomial_series(&rho, m - 1).shift_up();
        let phi: PowerSeries<Q> = phi_rho_mu(&rho, &mu, m).unwrap();
        assert_eq!(hadamard(&zf_mu, &phi), zf_rho);
    }

    #[test]
    fn triangular_schemes() {
        let f = qs(&[(2, 1), (3, 1), (-1, 1), (5, 1)]);
        let id: TriangularScheme<Q> = TriangularScheme::identity(3);
        assert_eq!(triangular_mean(&id, &f).unwrap(), f);
        let single: TriangularScheme<Q> = TriangularScheme::identity(0);
        assert_eq!(triangular_mean(&single, &f).unwrap(), qs(&[(2, 1)]));

        let (b, c) = (q(5, 2), q(3, 2));
        let h = TriangularScheme::cesaro(3, &b, &c, q(0, 1)).unwrap();
        assert_eq!(triangular_mean(&h, &f).unwrap(), cesaro_mean(&f, 3, &b, &c).unwrap());

        let bad = vec![vec![q(1, 1)], vec![q(1, 1), q(2, 1)]];
        assert!(TriangularScheme::new(bad, q(0, 1)).is_err());
        let bad = vec![
            vec![q(1, 1)],
            vec![q(1, 1), q(1, 2)],
            vec![q(1, 1), q(1, 2), q(1, 3)],
        ];
        assert!(matches!(TriangularScheme::new(bad, q(0, 1)), Err(Error::Scheme(_))));
    }

    #[test]
    fn float_scheme_tolerance() {
        let x = [0.9, 0.8, 0.95];
        let h = TriangularScheme::from_first_column(&x, 1e-12).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..=3).map(|i| h.row(i).to_vec()).collect();
        rows[3][2] += 1e-14;
        assert!(TriangularScheme::new(rows.clone(), 1e-12).is_ok());
        rows[3][2] += 1e-9;
        assert!(TriangularScheme::new(rows, 1e-12).is_err());
    }
}
