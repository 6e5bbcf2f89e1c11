//! Fourier coefficients of a path against their leading term.
//!
//!     cargo run --example fourier_coefficients -- [p]

use legendre_paths::legendre_path::build_path;
use legendre_paths::number_theory::symbol_table;

fn main() -> legendre_paths::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(997);
    let table = symbol_table(p)?;
    let path = build_path(p)?;
    println!("p = {p}");
    println!("{:>4} {:>24} {:>24} {:>10}", "h", "FT(h)", "leading term", "|diff|");
    for h in (-5..=5).filter(|&h| h != 0) {
        let ft = path.fourier_coefficient(h);
        let lead = path.fourier_leading_term(&table, h);
        println!(
            "{h:>4} {:>11.6} {:+.6}i {:>11.6} {:+.6}i {:>10.2e}",
            ft.re,
            ft.im,
            lead.re,
            lead.im,
            (ft - lead).norm()
        );
    }
    Ok(())
}
