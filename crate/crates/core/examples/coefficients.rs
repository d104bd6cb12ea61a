//! Exact and floating coefficient tables.
//!
//!     cargo run --example coefficients -- 3 2 1/2 6

use cesaro::numeric::parse_rational;
use cesaro::special::{coeff_table, coeff_table_f64};

fn main() -> cesaro::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let (b, c, mu) = (get(0, "2"), get(1, "1"), get(2, "1/2"));
    let n: usize = get(3, "5").parse().expect("n");

    let exact = coeff_table(
        n,
        parse_rational(&b).expect("b"),
        parse_rational(&c).expect("c"),
        parse_rational(&mu).expect("mu"),
    )?;
    let float = exact.to_f64();
    println!("b = {b}, c = {c}, mu = {mu}, n = {n}");
    println!("{:>3} {:>14} {:>22} {:>22}", "k", "B_k", "d_k", "d_k (f64)");
    for k in 0..=n {
        println!(
            "{k:>3} {:>14} {:>22} {:>22.17e}",
            exact.big_b[k].to_string(),
            exact.d_seq[k].to_string(),
            float.d_seq[k]
        );
    }

    // large orders go through log-gamma differences
    let big = coeff_table_f64(2000, 2.0, 1.0, 0.5)?;
    println!("n = 2000: d_1 = {:.6e}, d_2000 = {:.6e}", big.d_seq[1], big.d_seq[2000]);
    Ok(())
}
