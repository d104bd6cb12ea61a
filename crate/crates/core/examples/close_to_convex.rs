//! Scaled normalized means of convex functions.

use cesaro::func::Func;
use cesaro::geometry::close_to_convex_check;
use cesaro::verdict::BoundaryGrid;

fn main() -> cesaro::Result<()> {
    let grid = BoundaryGrid::geometric(32, 512);
    let inputs = [
        ("-log(1 - z)", Func::NegLog, 0.5),
        ("z", Func::Z, 0.9),
        ("2 - 2 (1 - z)^0.5", Func::Pow(-0.5).scale(-2.0).add(Func::Const(2.0.into())), 0.7),
        // not convex of order 1/2: rejected before any sampling
        ("2 (1 - z)^-0.5 - 2", Func::Pow(0.5).scale(2.0).add(Func::Const((-2.0).into())), 0.5),
    ];
    for (name, f, lambda) in &inputs {
        for (b, c) in [(1.0, 1.0), (2.0, 1.0), (3.0, 2.0)] {
            match close_to_convex_check(f, *lambda, 6, b, c, &grid) {
                Ok(r) => println!(
                    "{name:<20} b = {b}, c = {c}: ratio {}, close-to-convex {}, min |S'| {:.3e}",
                    r.verdict.status.label(),
                    r.close_to_convex.status.label(),
                    r.min_derivative_modulus
                ),
                Err(e) => println!("{name:<20} b = {b}, c = {c}: {e}"),
            }
        }
    }
    Ok(())
}
