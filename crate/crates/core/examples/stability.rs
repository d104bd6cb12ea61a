//! Stability of f_mu under Cesaro means and under triangular schemes.

use cesaro::series::TriangularScheme;
use cesaro::special::Params;
use cesaro::subordination::{check_matrix_stability, check_stability};
use cesaro::verdict::BoundaryGrid;

fn main() -> cesaro::Result<()> {
    let grid = BoundaryGrid::geometric(32, 512);
    for (b, c) in [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0)] {
        for mu in [-1.0, -0.5, 0.5, 1.0] {
            let worst = (1..=20)
                .map(|n| check_stability(&Params::new(b, c, mu, n)?, &grid))
                .collect::<cesaro::Result<Vec<_>>>()?
                .into_iter()
                .min_by(|x, y| x.margin.total_cmp(&y.margin))
                .unwrap();
            println!("b = {b}, c = {c}, mu = {mu:>4}: {} (smallest margin {:.3e})", worst.status.label(), worst.margin);
        }
    }

    // a scheme built from its first column
    let h = TriangularScheme::from_first_column(&[0.9, 0.7, 0.95, 0.5, 0.8, 0.6], 1e-12)?;
    let v = check_matrix_stability(&h, 0.5, &grid)?;
    println!("custom scheme of order {}: {}", h.order(), v.status.label());

    // a Cesaro scheme outside b >= max(c, 2c - 1) is rejected
    match TriangularScheme::cesaro(5, &2.0, &2.0, 1e-12) {
        Ok(_) => println!("b = c = 2 accepted"),
        Err(e) => println!("b = c = 2 rejected: {e}"),
    }
    Ok(())
}
