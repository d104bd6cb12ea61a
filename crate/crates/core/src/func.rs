//! Closed-form analytic functions on the unit disc with their Taylor
//! coefficients, used as inputs to the subordination checks.

use num_complex::Complex64;

use crate::special::binomial_coefficients;

type C = Complex64;

fn one() -> C {
    C::new(1.0, 0.0)
}

/// An analytic function given by a formula.
#[derive(Debug, Clone, PartialEq)]
pub enum Func {
    Const(C),
    /// `z`
    Z,
    /// `(1 - z)^{-p}`
    Pow(f64),
    /// `-log(1 - z)`
    NegLog,
    Poly(Vec<C>),
    Add(Box<Func>, Box<Func>),
    Mul(Box<Func>, Box<Func>),
    Scale(C, Box<Func>),
    /// `f(r z)`
    Dilate(f64, Box<Func>),
    /// `f(z) / z` for `f(0) = 0`
    DivZ(Box<Func>),
}

impl Func {
    /// `f_mu = (1 - z)^{-mu}`.
    pub fn f_mu(mu: f64) -> Func {
        Func::Pow(mu)
    }

    /// `z / (1 - z)^p`.
    pub fn z_pow(p: f64) -> Func {
        Func::Z.mul(Func::Pow(p))
    }

    pub fn add(self, g: Func) -> Func {
        Func::Add(Box::new(self), Box::new(g))
    }

    pub fn mul(self, g: Func) -> Func {
        Func::Mul(Box::new(self), Box::new(g))
    }

    pub fn scale(self, s: f64) -> Func {
        Func::Scale(C::new(s, 0.0), Box::new(self))
    }

    pub fn dilate(self, r: f64) -> Func {
        Func::Dilate(r, Box::new(self))
    }

    pub fn div_z(self) -> Func {
        Func::DivZ(Box::new(self))
    }

    pub fn eval(&self, z: C) -> C {
        match self {
            Func::Const(c) => *c,
            Func::Z => z,
            Func::Pow(p) => (one() - z).powf(-p),
            Func::NegLog => -(one() - z).ln(),
            Func::Poly(a) => a.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c),
            Func::Add(f, g) => f.eval(z) + g.eval(z),
            Func::Mul(f, g) => f.eval(z) * g.eval(z),
            Func::Scale(s, f) => s * f.eval(z),
            Func::Dilate(r, f) => f.eval(z * r),
            Func::DivZ(f) => {
                if z.norm() < 1e-6 {
                    let a = f.taylor(3);
                    a[1] + a[2] * z + a[3] * z * z
                } else {
                    f.eval(z) / z
                }
            }
        }
    }

    /// Coefficients `a_0..=a_m`.
    pub fn taylor(&self, m: usize) -> Vec<C> {
        let zero = C::new(0.0, 0.0);
        match self {
            Func::Const(c) => {
                let mut v = vec![zero; m + 1];
                v[0] = *c;
                v
            }
            Func::Z => (0..=m).map(|k| if k == 1 { one() } else { zero }).collect(),
            Func::Pow(p) => binomial_coefficients(p, m).into_iter().map(|x| C::new(x, 0.0)).collect(),
            Func::NegLog => (0..=m)
                .map(|k| if k == 0 { zero } else { C::new(1.0 / k as f64, 0.0) })
                .collect(),
            Func::Poly(a) => (0..=m).map(|k| a.get(k).copied().unwrap_or(zero)).collect(),
            Func::Add(f, g) => f.taylor(m).into_iter().zip(g.taylor(m)).map(|(x, y)| x + y).collect(),
            Func::Mul(f, g) => {
                let (a, b) = (f.taylor(m), g.taylor(m));
                (0..=m).map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum()).collect()
            }
            Func::Scale(s, f) => f.taylor(m).into_iter().map(|x| s * x).collect(),
            Func::Dilate(r, f) => f
                .taylor(m)
                .into_iter()
                .enumerate()
                .map(|(k, x)| x * r.powi(k as i32))
                .collect(),
            Func::DivZ(f) => f.taylor(m + 1).into_iter().skip(1).collect(),
        }
    }

    /// Symbolic derivative.
    pub fn derivative(&self) -> Func {
        match self {
            Func::Const(_) => Func::Const(C::new(0.0, 0.0)),
            Func::Z => Func::Const(one()),
            Func::Pow(p) => Func::Pow(p + 1.0).scale(*p),
            Func::NegLog => Func::Pow(1.0),
            Func::Poly(a) => Func::Poly(
                a.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &c)| c * k as f64)
                    .collect(),
            ),
            Func::Add(f, g) => f.derivative().add(g.derivative()),
            Func::Mul(f, g) => f
                .derivative()
                .mul((**g).clone())
                .add((**f).clone().mul(g.derivative())),
            Func::Scale(s, f) => Func::Scale(*s, Box::new(f.derivative())),
            Func::Dilate(r, f) => f.derivative().dilate(*r).scale(*r),
            // (f/z)' = (f' - f/z) / z
            Func::DivZ(f) => f
                .derivative()
                .add((**f).clone().div_z().scale(-1.0))
                .div_z(),
        }
    }

    /// `phi_{rho,mu} * f` with `phi_{rho,mu} = sum (rho)_k/(mu)_k z^k`, when
    /// it has a closed form in this family: `(1 - z)^{-mu}` maps to
    /// `(1 - z)^{-rho}`, and the map commutes with sums, scalings and
    /// dilations. Constants are fixed.
    pub fn hadamard_phi(&self, rho: f64, mu: f64) -> Option<Func> {
        match self {
            Func::Const(c) => Some(Func::Const(*c)),
            Func::Pow(p) if *p == mu => Some(Func::Pow(rho)),
            Func::Pow(_) if rho == mu => Some(self.clone()),
            Func::Add(f, g) => Some(f.hadamard_phi(rho, mu)?.add(g.hadamard_phi(rho, mu)?)),
            Func::Scale(s, f) => Some(Func::Scale(*s, Box::new(f.hadamard_phi(rho, mu)?))),
            Func::Dilate(r, f) => Some(f.hadamard_phi(rho, mu)?.dilate(*r)),
            _ if rho == mu => Some(self.clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn taylor_matches_eval_inside() {
        let fs = [
            Func::Pow(0.5),
            Func::NegLog,
            Func::z_pow(1.0),
            Func::z_pow(0.7).div_z(),
            Func::Pow(-0.5).dilate(0.8).add(Func::Const(C::new(0.5, 0.0))),
            Func::Poly(vec![one(), C::new(0.0, 2.0), C::new(-1.0, 0.0)]),
        ];
        let z = C::from_polar(0.3, 0.9);
        for f in &fs {
            let s: C = f.taylor(80).iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c);
            assert!(close(s, f.eval(z), 1e-14), "{f:?}");
        }
    }

    #[test]
    fn derivatives_by_difference() {
        let fs = [
            Func::z_pow(0.6),
            Func::NegLog.div_z(),
            Func::Pow(0.5).dilate(0.7).mul(Func::NegLog),
        ];
        let z = C::from_polar(0.5, 2.0);
        let h = 1e-6;
        for f in &fs {
            let fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
            assert!(close(f.derivative().eval(z), fd, 1e-8), "{f:?}");
        }
    }

    #[test]
    fn phi_convolution_closed_form() {
        let (rho, mu) = (0.9, 0.4);
        let f = Func::Pow(mu).dilate(0.8).scale(2.0);
        let g = f.hadamard_phi(rho, mu).unwrap();
        let a = f.taylor(30);
        let b = g.taylor(30);
        let ratios = crate::special::binomial_coefficients(&rho, 30);
        let denom = crate::special::binomial_coefficients(&mu, 30);
        for k in 0..=30 {
            assert!(close(b[k], a[k] * ratios[k] / denom[k], 1e-12));
        }
        assert!(Func::NegLog.hadamard_phi(rho, mu).is_none());
    }
}
