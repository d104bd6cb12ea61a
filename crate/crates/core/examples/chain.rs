//! Boundary images of successive normalized means, as SVG.
//!
//!     cargo run --example chain -- chain.svg

use cesaro::func::Func;
use cesaro::geometry::chain_explorer;
use cesaro::report::{render_svg, Series};

fn main() -> cesaro::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "chain.svg".into());
    let bundle = chain_explorer(&Func::NegLog, 2.0, 1.0, 0, 5, 720)?;
    for (i, s) in bundle.containment.iter().enumerate() {
        println!("curve {} inside curve {}: {:.1}% of vertices", i + 1, i + 2, 100.0 * s);
    }
    let series: Vec<Series> = bundle
        .curves
        .iter()
        .map(|c| Series {
            label: c.n.map_or("f".into(), |n| format!("n = {n}")),
            points: c.points.iter().map(|z| Some((z.re, z.im))).collect(),
        })
        .collect();
    std::fs::write(&out, render_svg("images of |z| = 1", "Re", "Im", &series))
        .map_err(|e| cesaro::Error::Io(e.to_string()))?;
    println!("wrote {out}");
    Ok(())
}
