//! Fourth moments of increments: exact model values, Monte Carlo, and primes.
//!
//!     cargo run --release --example increments

use legendre_paths::distribution::prime_increment_moment;
use legendre_paths::moments::increment_fourth_moment_exact;
use legendre_paths::random_model::increment_fourth_moment_mc;

fn main() -> legendre_paths::Result<()> {
    let pairs = [(0.2, 0.21), (0.3, 0.35), (0.1, 0.3), (0.25, 0.75)];
    println!("{:>12} {:>12} {:>12} {:>12} {:>12}", "(s, t)", "exact N=256", "MC N=256", "primes Q=1e4", "|t-s|^1.5");
    for (s, t) in pairs {
        let exact = increment_fourth_moment_exact(256, s, t)?;
        let mc = increment_fourth_moment_mc(256, s, t, 4000, 5)?;
        let primes = prime_increment_moment(10_000, s, t, 4)?;
        println!(
            "{:>12} {exact:>12.3e} {:>12.3e} {primes:>12.3e} {:>12.3e}",
            format!("({s}, {t})"),
            mc.mean,
            f64::powf(t - s, 1.5)
        );
    }
    Ok(())
}
