//! Pólya truncations against the exact path, with their error budget.
//!
//!     cargo run --example polya -- [p]

use legendre_paths::legendre_path::{build_path, PolyaApproximation};
use legendre_paths::number_theory::symbol_table;

fn main() -> legendre_paths::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(997);
    let table = symbol_table(p)?;
    let path = build_path(p)?;
    for z in [p as f64 / 10.0, p as f64, 4.0 * p as f64] {
        let approx = PolyaApproximation::new(path.prime(), z)?;
        let worst = (0..=200)
            .map(|i| i as f64 / 200.0)
            .map(|t| Ok((approx.eval(&table, t)? - path.eval(t)?).abs()))
            .collect::<legendre_paths::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("Z = {z:>7.0}: max error {worst:.4}, budget {:.4}", approx.error_budget());
    }
    Ok(())
}
