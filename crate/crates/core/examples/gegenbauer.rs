//! Gegenbauer means: zero-freeness in the closed disc and cosine positivity.

use cesaro::geometry::{gegenbauer_cosine_positivity, gegenbauer_mean, zero_free_closed_disc};
use cesaro::trig::GridSpec;

fn main() -> cesaro::Result<()> {
    let xs = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let grid = GridSpec::default();
    for lambda in [0.1, 0.25] {
        let mut ok = true;
        for n in 0..=20 {
            for &x in &xs {
                ok &= zero_free_closed_disc(&gegenbauer_mean(lambda, x, n, 2.0, 1.0)?.to_complex()).is_holds();
            }
            ok &= gegenbauer_cosine_positivity(lambda, &xs, n, 2.0, 1.0, &grid)?.verdict.is_holds();
        }
        println!("lambda = {lambda}: zero-free and positive for n <= 20: {ok}");
    }

    // past the sharp constant the cosine sums turn negative
    for n in 1..=200 {
        let r = gegenbauer_cosine_positivity(0.4, &[1.0], n, 1.0, 1.0, &grid)?;
        if r.verdict.is_fails() {
            println!(
                "lambda = 0.4, x = 1: negative at n = {n}, theta = {:.6}, value {:.4e}",
                r.argmin, r.min_value
            );
            break;
        }
    }
    Ok(())
}
