//! Critical exponents from the singular integrals.

use cesaro::quadrature::{solve_mu0, solve_mustar};

fn main() -> cesaro::Result<()> {
    for (b, c) in [(1.0, 1.0), (1.5, 1.0), (2.0, 1.0), (3.0, 2.0)] {
        let r = solve_mu0(b, c, 1e-12)?;
        println!(
            "mu0'({b}, {c}) = {:?}  [{}; {} evaluations, residual {:.1e}]",
            r.critical_exponent(),
            r.status.label(),
            r.evaluations,
            r.residual
        );
    }
    for rho in [0.25, 0.5, 0.75, 1.0] {
        let r = solve_mustar(rho, 1.0, 1.0, 1e-12)?;
        println!("mu*(rho = {rho}) = {:.15}", r.critical_exponent().unwrap_or(f64::NAN));
    }
    Ok(())
}
