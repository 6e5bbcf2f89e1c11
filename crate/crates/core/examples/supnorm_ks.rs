//! Distribution of the sup norm: primes in [Q, 2Q] against model draws.
//!
//!     cargo run --release --example supnorm_ks -- [Q] [n_terms] [draws]

use legendre_paths::distribution::{
    default_grid, ks_distance, supnorm_samples_model, supnorm_samples_primes,
};

fn quantiles(values: &[f64]) -> [f64; 3] {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    [0.1, 0.5, 0.9].map(|q| v[((v.len() - 1) as f64 * q) as usize])
}

fn main() -> legendre_paths::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let q = args.next().flatten().unwrap_or(20_000);
    let n_terms = args.next().flatten().unwrap_or(4000);
    let draws = args.next().flatten().unwrap_or(1000);

    let primes = supnorm_samples_primes(q)?;
    let model = supnorm_samples_model(n_terms, default_grid(n_terms), draws, 2024)?;
    for (name, s) in [("primes", &primes), ("model", &model)] {
        let [lo, mid, hi] = quantiles(s.values());
        println!(
            "{name:>6}: n = {:>5}, mean {:.4}, deciles {lo:.3} / {mid:.3} / {hi:.3}",
            s.len(),
            s.mean()
        );
    }
    println!("KS distance {:.4}", ks_distance(&primes, &model)?);
    Ok(())
}
