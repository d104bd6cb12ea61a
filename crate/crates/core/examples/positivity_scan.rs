//! Certified positivity of the cosine and sine sums.
//!
//!     cargo run --example positivity_scan -- 1 1 0.5 20

use cesaro::special::coeff_table_f64;
use cesaro::trig::{positivity_scan, GridSpec, SumKind};

fn main() -> cesaro::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse().expect("number")).collect();
    let b = args.first().copied().unwrap_or(1.0);
    let c = args.get(1).copied().unwrap_or(1.0);
    let mu = args.get(2).copied().unwrap_or(0.5);
    let n_max = args.get(3).copied().unwrap_or(10.0) as usize;
    let grid = GridSpec::default();

    println!("b = {b}, c = {c}, mu = {mu}");
    for n in 0..=n_max {
        let t = coeff_table_f64(n, b, c, mu)?;
        let mut line = format!("n = {n:>3}");
        for (label, kind, upper) in [
            ("cos", SumKind::Cosine, 2 * n + 1),
            ("odd sin", SumKind::Sine, 2 * n + 1),
            ("even sin", SumKind::Sine, 2 * n),
        ] {
            if upper == 0 {
                continue;
            }
            let r = positivity_scan(&t, kind, upper, &grid)?;
            line += &format!(
                "  {label}: {:<13} min {:+.3e}{}",
                r.verdict.status.label(),
                r.min_value,
                if r.certified { " *" } else { "" }
            );
        }
        println!("{line}");
    }
    println!("(* = certified on the whole interval)");
    Ok(())
}
