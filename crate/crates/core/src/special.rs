//! Pochhammer symbols, the `B_k` backbone and the paired coefficient
//! sequence `c_{2k} = c_{2k+1} = d_k = (B_{n-k}/B_n) (mu)_k / k!`.
//!
//! Everything generic over [`Real`] runs on both `f64` and `BigRational`;
//! the rational instantiation is the oracle path used by the tests.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Exact products are used up to this length, log-gamma beyond it.
pub const EXACT_PRODUCT_LIMIT: usize = 64;

/// Beyond this index `big_b` switches to log-gamma differences.
pub const LOG_GAMMA_THRESHOLD: usize = 150;

/// The parameter tuple shared by every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub b: f64,
    pub c: f64,
    pub mu: f64,
    pub rho: f64,
    pub lambda: f64,
    pub n: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            b: 1.0,
            c: 1.0,
            mu: 0.5,
            rho: 0.5,
            lambda: 0.5,
            n: 1,
        }
    }
}

impl Params {
    pub fn new(b: f64, c: f64, mu: f64, n: usize) -> Result<Self> {
        let p = Params {
            b,
            c,
            mu,
            n,
            ..Params::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_rho(mut self, rho: f64) -> Result<Self> {
        self.rho = rho;
        self.validate()?;
        Ok(self)
    }

    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        self.lambda = lambda;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_bc(self.b, self.c)?;
        if !(-1.0..=1.0).contains(&self.mu) {
            return Err(Error::Parameter(format!("mu = {} outside [-1, 1]", self.mu)));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::Parameter(format!("rho = {} outside (0, 1]", self.rho)));
        }
        if !(0.5..1.0).contains(&self.lambda) {
            return Err(Error::Parameter(format!(
                "lambda = {} outside [1/2, 1)",
                self.lambda
            )));
        }
        Ok(())
    }

    /// `b >= c`: the regime of the cosine and sine positivity results.
    pub fn vietoris_regime(&self) -> bool {
        vietoris_regime(self.b, self.c)
    }

    /// `b >= max{c, 2c - 1}`: the regime of the stability results.
    pub fn stable_regime(&self) -> bool {
        stable_regime(self.b, self.c)
    }
}

pub fn vietoris_regime(b: f64, c: f64) -> bool {
    b >= c
}

pub fn stable_regime(b: f64, c: f64) -> bool {
    b >= c.max(2.0 * c - 1.0) && b > 0.0
}

/// Standing hypothesis `b + 1 > c > 0` (and `b > 0`).
pub fn check_bc(b: f64, c: f64) -> Result<()> {
    if !(b.is_finite() && c.is_finite()) || b <= 0.0 || c <= 0.0 || b + 1.0 <= c {
        return Err(Error::Parameter(format!(
            "need b > 0 and b + 1 > c > 0, got b = {b}, c = {c}"
        )));
    }
    Ok(())
}

fn check_bc_exact<R: Real>(b: &R, c: &R) -> Result<()> {
    let zero = R::zero();
    if *b <= zero || *c <= zero || b.clone() + R::one() <= *c {
        return Err(Error::Parameter(format!(
            "need b > 0 and b + 1 > c > 0, got b = {:?}, c = {:?}",
            b, c
        )));
    }
    Ok(())
}

/// Exact Pochhammer product `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer_exact<R: Real>(x: &R, k: usize) -> R {
    let mut acc = R::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term + R::one();
    }
    acc
}

/// Floating Pochhammer value; `overflow` is set when the magnitude exceeds
/// `f64::MAX`, in which case `value` is a signed infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pochhammer {
    pub value: f64,
    pub overflow: bool,
}

/// `(x)_k` in binary64: exact product for `k <= 64`, log-gamma beyond.
pub fn pochhammer(x: f64, k: usize) -> Pochhammer {
    if k <= EXACT_PRODUCT_LIMIT {
        let mut v = 1.0;
        for j in 0..k {
            v *= x + j as f64;
        }
        return Pochhammer {
            value: v,
            overflow: v.is_infinite(),
        };
    }
    // Factors up to the first positive one are multiplied directly; a zero
    // factor ends everything.
    let mut sign = 1.0;
    let mut log_mag = 0.0;
    let mut start = 0usize;
    while start < k && x + (start as f64) <= 0.0 {
        let f = x + start as f64;
        if f == 0.0 {
            return Pochhammer {
                value: 0.0,
                overflow: false,
            };
        }
        sign = -sign;
        log_mag += f.abs().ln();
        start += 1;
    }
    if start < k {
        let x0 = x + start as f64;
        log_mag += ln_gamma(x0 + (k - start) as f64) - ln_gamma(x0);
    }
    if log_mag > f64::MAX.ln() {
        Pochhammer {
            value: sign * f64::INFINITY,
            overflow: true,
        }
    } else {
        Pochhammer {
            value: sign * log_mag.exp(),
            overflow: false,
        }
    }
}

/// `(mu)_k / k!` for `k = 0..=m` by the stable ratio recursion.
pub fn binomial_coefficients<R: Real>(mu: &R, m: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(m + 1);
    let mut p = R::one();
    for k in 0..=m {
        out.push(p.clone());
        let kk = R::from_i64(k as i64);
        p = p * (mu.clone() + kk.clone()) / (kk + R::one());
    }
    out
}

/// `B_k`, with `B_0 = 1` and `B_k = (b)_k/(c)_k (1+b-c)/b` for `k >= 1`.
///
/// Built from `B_1 = (1+b-c)/c` and `B_{k+1} = B_k (b+k)/(c+k)`.
pub fn big_b_exact<R: Real>(k: usize, b: &R, c: &R) -> R {
    big_b_table(k, b, c).pop().unwrap_or_else(R::one)
}

/// `B_0, ..., B_n` on any ordered field.
pub fn big_b_table<R: Real>(n: usize, b: &R, c: &R) -> Vec<R> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one());
    if n == 0 {
        return out;
    }
    let mut cur = (R::one() + b.clone() - c.clone()) / c.clone();
    out.push(cur.clone());
    for k in 1..n {
        let kk = R::from_i64(k as i64);
        cur = cur * (b.clone() + kk.clone()) / (c.clone() + kk);
        out.push(cur.clone());
    }
    out
}

/// Floating `B_k`. Uses log-gamma differences for `k > 150`.
pub fn big_b(k: usize, b: f64, c: f64) -> f64 {
    ln_big_b(k, b, c).exp()
}

/// `ln B_k`; finite for every `k` in the valid parameter range.
pub fn ln_big_b(k: usize, b: f64, c: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let pref = ((1.0 + b - c) / b).ln();
    if k <= LOG_GAMMA_THRESHOLD {
        let mut v = 1.0f64;
        for j in 0..k {
            v *= (b + j as f64) / (c + j as f64);
        }
        v.ln() + pref
    } else {
        let kf = k as f64;
        ln_gamma(b + kf) - ln_gamma(b) - ln_gamma(c + kf) + ln_gamma(c) + pref
    }
}

/// Weights `B_{n-k}/B_n` for `k = 0..=n`.
pub fn cesaro_weights<R: Real>(n: usize, b: &R, c: &R) -> Vec<R> {
    let table = big_b_table(n, b, c);
    let bn = table[n].clone();
    (0..=n).map(|k| table[n - k].clone() / bn.clone()).collect()
}

/// Floating weights `B_{n-k}/B_n`, overflow-free for large `n`.
pub fn cesaro_weights_f64(n: usize, b: f64, c: f64) -> Vec<f64> {
    if n <= LOG_GAMMA_THRESHOLD {
        return cesaro_weights(n, &b, &c);
    }
    // ln B_j accumulated from the ratio recursion; differences stay O(1).
    let mut ln_b = Vec::with_capacity(n + 1);
    ln_b.push(0.0);
    let mut acc = ((1.0 + b - c) / c).ln();
    ln_b.push(acc);
    for j in 1..n {
        acc += ((b + j as f64) / (c + j as f64)).ln();
        ln_b.push(acc);
    }
    let ln_bn = ln_b[n];
    (0..=n).map(|k| (ln_b[n - k] - ln_bn).exp()).collect()
}

/// The coefficient table of order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable<R> {
    pub n: usize,
    pub b: R,
    pub c: R,
    pub mu: R,
    /// `B_0..=B_n`
    pub big_b: Vec<R>,
    /// `c_0..=c_{2n+1}`
    pub c_seq: Vec<R>,
    /// `d_0..=d_n`
    pub d_seq: Vec<R>,
}

/// Build `c_k` and `d_k` for order `n`. `mu` may lie anywhere in `[-1, 1]`.
pub fn coeff_table<R: Real>(n: usize, b: R, c: R, mu: R) -> Result<CoefficientTable<R>> {
    check_bc_exact(&b, &c)?;
    if mu < -R::one() || mu > R::one() {
        return Err(Error::Parameter(format!("mu = {:?} outside [-1, 1]", mu)));
    }
    let big_b = big_b_table(n, &b, &c);
    let bn = big_b[n].clone();
    let poch = binomial_coefficients(&mu, n);
    let d_seq: Vec<R> = (0..=n)
        .map(|k| big_b[n - k].clone() / bn.clone() * poch[k].clone())
        .collect();
    let c_seq = d_seq.iter().flat_map(|d| [d.clone(), d.clone()]).collect();
    Ok(CoefficientTable {
        n,
        b,
        c,
        mu,
        big_b,
        c_seq,
        d_seq,
    })
}

/// Floating table suitable for large `n` (weights computed in log space).
pub fn coeff_table_f64(n: usize, b: f64, c: f64, mu: f64) -> Result<CoefficientTable<f64>> {
    if n <= LOG_GAMMA_THRESHOLD {
        return coeff_table(n, b, c, mu);
    }
    check_bc(b, c)?;
    if !(-1.0..=1.0).contains(&mu) {
        return Err(Error::Parameter(format!("mu = {mu} outside [-1, 1]")));
    }
    let big_b: Vec<f64> = (0..=n).map(|k| big_b(k, b, c)).collect();
    let w = cesaro_weights_f64(n, b, c);
    let poch = binomial_coefficients(&mu, n);
    let d_seq: Vec<f64> = w.iter().zip(&poch).map(|(w, p)| w * p).collect();
    let c_seq = d_seq.iter().flat_map(|&d| [d, d]).collect();
    Ok(CoefficientTable {
        n,
        b,
        c,
        mu,
        big_b,
        c_seq,
        d_seq,
    })
}

impl<R: Real> CoefficientTable<R> {
    pub fn to_f64(&self) -> CoefficientTable<f64> {
        let conv = |v: &Vec<R>| v.iter().map(Real::to_f64).collect::<Vec<_>>();
        CoefficientTable {
            n: self.n,
            b: self.b.to_f64(),
            c: self.c.to_f64(),
            mu: self.mu.to_f64(),
            big_b: conv(&self.big_b),
            c_seq: conv(&self.c_seq),
            d_seq: conv(&self.d_seq),
        }
    }
}

/// Vietoris' sequence: `gamma_{2k} = gamma_{2k+1} = (1/2)_k / k!`.
pub fn vietoris_gamma<R: Real>(len: usize) -> Vec<R> {
    let half = R::one() / R::from_i64(2);
    let d = binomial_coefficients(&half, len / 2 + 1);
    (0..len).map(|k| d[k / 2].clone()).collect()
}

/// Upper limit on mu for the even-index sine sums, `(1+b)/c - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuBound {
    pub raw: f64,
    pub clamped: f64,
}

pub fn even_sine_mu_bound(b: f64, c: f64) -> MuBound {
    let raw = (1.0 + b) / c - 0.5;
    MuBound {
        raw,
        clamped: raw.clamp(0.0, 1.0),
    }
}
