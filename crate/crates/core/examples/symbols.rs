//! Prime counts, symbol tables and Gauss sums.
//!
//!     cargo run --example symbols

use legendre_paths::number_theory::{
    gauss_sum, gauss_sum_closed_form, legendre_symbol, sieve_primes, symbol_table, PrimeRecord,
};

fn main() -> legendre_paths::Result<()> {
    let primes = sieve_primes(1_000_000, 2_000_000)?;
    println!("{} primes in [10^6, 2*10^6]", primes.len());
    let table = symbol_table(13)?;
    println!("(j/13) for j = 1..12: {:?}", &table.as_slice()[1..]);
    println!("(-1/13) = {}, (2/13) = {}", legendre_symbol(-1, 13), legendre_symbol(2, 13));
    for p in [5, 7, 13, 1019] {
        let g = gauss_sum(&symbol_table(p)?)?;
        let closed = gauss_sum_closed_form(&PrimeRecord::new(p)?);
        println!("tau({p}) = {:.6} {:+.6}i, error {:.1e}", g.re, g.im, (g - closed).norm());
    }
    Ok(())
}
