//! The half-plane form and its boundary sine sum.

use std::f64::consts::PI;

use cesaro::quadrature::solve_mustar;
use cesaro::special::{coeff_table_f64, Params};
use cesaro::subordination::check_halfplane;
use cesaro::trig::{asymptotic_ratio, conj2_boundary_sum};
use cesaro::verdict::BoundaryGrid;

fn main() -> cesaro::Result<()> {
    let grid = BoundaryGrid::geometric(32, 512);
    for rho in [0.25, 0.5, 0.75] {
        let mu = solve_mustar(rho, 1.0, 1.0, 1e-12)?.critical_exponent().unwrap();
        for n in [1, 5, 20] {
            let below = check_halfplane(&Params::new(1.0, 1.0, 0.95 * mu, n)?.with_rho(rho)?, &grid)?;
            let above = check_halfplane(&Params::new(1.0, 1.0, (1.1 * mu).min(1.0), n)?.with_rho(rho)?, &grid)?;
            println!(
                "rho = {rho}, n = {n:>2}: 0.95 mu* -> {:<13} 1.1 mu* -> {}",
                below.status.label(),
                above.status.label()
            );
        }
    }

    let t = coeff_table_f64(8, 2.0, 1.0, 0.5)?;
    let worst = (1..400)
        .map(|i| conj2_boundary_sum(&t, 0.5, 2.0 * PI * i as f64 / 400.0))
        .fold(f64::NEG_INFINITY, f64::max);
    println!("largest boundary sum (n = 8, b = 2, c = 1): {worst:+.4e}");

    for n in [50, 500, 5000] {
        let a = asymptotic_ratio(2.0, 1.0, 0.5, 0.5, 2.0, n)?;
        println!("n = {n:>4}: scaled sum / limit = {:.6}", a.ratio);
    }
    Ok(())
}
