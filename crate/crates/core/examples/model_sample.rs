//! Samples of the random Fourier series on 10,000 points, one per branch.
//!
//!     cargo run --release --example model_sample -- [seed] [n_terms]

use legendre_paths::random_model::{sample_signs, PathSampler};

fn main() -> legendre_paths::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let n_terms: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4999);
    let grid = 10_000;

    let draw = sample_signs(seed, n_terms)?;
    let mut sampler = PathSampler::new(n_terms, grid)?;
    for sign in [1, -1] {
        let path = sampler.sample(&draw.clone().with_sign_minus_one(sign)?)?;
        let (imax, vmax) = path
            .values
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |best, (i, &v)| if v.abs() > best.1.abs() { (i, v) } else { best });
        println!(
            "X(-1) = {sign:+}: sup {:.4} at t = {:.4} (value {vmax:+.4}), F(1/2) = {:+.4}, fast transform: {}",
            path.sup_norm(),
            path.grid[imax],
            path.values[grid / 2],
            sampler.is_fast()
        );
    }
    let mut csv = Vec::new();
    sampler.sample(&draw)?.write_csv(&mut csv)?;
    println!("draw with sampled X(-1) = {:+}: {} CSV bytes", draw.sign_minus_one(), csv.len());
    Ok(())
}
