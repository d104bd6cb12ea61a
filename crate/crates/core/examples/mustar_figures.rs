//! mu*(rho) curves for b - 1 = 0, 1, 2, 3 with c = 1, written as CSV and SVG.
//!
//!     cargo run --example mustar_figures -- out_dir

use std::path::PathBuf;

use cesaro::quadrature::mustar_curve;
use cesaro::report::{render_csv, render_svg, Series};

fn main() -> cesaro::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir).map_err(|e| cesaro::Error::Io(e.to_string()))?;
    let grid: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
    let mut all = Vec::new();
    for beta in 0..4 {
        let b = 1.0 + beta as f64;
        let curve = mustar_curve(b, 1.0, &grid, 1e-10)?;
        let rows: Vec<Vec<String>> = curve
            .iter()
            .map(|p| {
                vec![
                    p.rho.to_string(),
                    p.mustar().map(|m| m.to_string()).unwrap_or_default(),
                    p.result.status.label().to_string(),
                ]
            })
            .collect();
        let path = dir.join(format!("mustar_beta{beta}.csv"));
        std::fs::write(&path, render_csv(&["rho", "mustar", "status"], &rows)?)
            .map_err(|e| cesaro::Error::Io(e.to_string()))?;
        println!("wrote {}", path.display());
        all.push(Series {
            label: format!("b - 1 = {beta}"),
            points: curve.iter().map(|p| p.mustar().map(|m| (p.rho, m))).collect(),
        });
    }
    let svg = render_svg("mu*(rho), c = 1", "rho", "mu*", &all);
    let path = dir.join("mustar.svg");
    std::fs::write(&path, svg).map_err(|e| cesaro::Error::Io(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}
