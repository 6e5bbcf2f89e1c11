//! Limiting moments against prime averages and Monte Carlo.
//!
//!     cargo run --release --example moments

use legendre_paths::moments::{
    empirical_moment, theoretical_moment, theoretical_moment_matched, MomentRequest, PathMode,
};
use legendre_paths::random_model::joint_moment_mc;
use legendre_paths::Variant;

fn main() -> legendre_paths::Result<()> {
    let request = MomentRequest::single(0.3, 2, Variant::Combined)?;
    let limit = theoretical_moment(&request, 200_000)?;
    println!(
        "E F(0.3)^2 = {:.6} (tail <= {:.2e}, A = {})",
        limit.value, limit.tail_bound, limit.truncation
    );
    for q in [1_000, 10_000] {
        let e = empirical_moment(&request, q, PathMode::ExactPath)?;
        println!(
            "  Q = {q:>6}: average over {} primes {:.6}, gap {:.4}",
            e.primes,
            e.value,
            (e.value - limit.value).abs()
        );
    }

    let joint = MomentRequest::new(vec![0.2, 0.6], vec![1, 1], Variant::Plus)?;
    let n_terms = 2000;
    let exact = theoretical_moment_matched(&joint, u64::MAX, n_terms)?;
    let mc = joint_moment_mc(joint.points(), joint.exponents(), Variant::Plus, n_terms, 20_000, 7)?;
    println!(
        "E F+(0.2) F+(0.6), N = {n_terms}: series {:.6}, Monte Carlo {:.6} +- {:.6}",
        exact.value, mc.mean, mc.std_error
    );
    Ok(())
}
