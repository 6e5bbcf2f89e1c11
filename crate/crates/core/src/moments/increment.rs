//! Exact fourth moment of increments of the partial sums.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{check_unit_interval, Error, Result};
use crate::number_theory::SmallestPrimeFactor;
use crate::util::sin_cos_turns;

/// Largest `N` accepted by [`increment_fourth_moment_exact`].
pub const EXACT_INCREMENT_LIMIT: u64 = 512;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Squarefree kernel of each `1 <= n <= limit` (entry 0 unused).
fn squarefree_kernels(limit: u64) -> Result<Vec<u64>> {
    let spf = SmallestPrimeFactor::new(limit)?;
    let mut core = vec![1u64; limit as usize + 1];
    for n in 2..=limit as usize {
        let q = spf.as_slice()[n] as usize;
        let rest = n / q;
        core[n] = if core[rest] % q as u64 == 0 {
            core[rest] / q as u64
        } else {
            core[rest] * q as u64
        };
    }
    Ok(core)
}

/// `E |F_{X,N}(t) - F_{X,N}(s)|^4`, exactly.
///
/// With `w_n = (e(-ns) - e(-nt)) / n` for `0 < |n| <= N`, the increment is
/// `(2 pi)^-1 |sum X_n w_n|`. Squaring the inner sum groups pairs `(n1, n2)`
/// by the class of `n1 n2` modulo squares (sign and squarefree kernel); the
/// signs are orthonormal across classes, so the fourth moment is
/// `(2 pi)^-4 sum_classes |sum_{pairs in class} w_n1 w_n2|^2`.
pub fn increment_fourth_moment_exact(n_terms: u64, s: f64, t: f64) -> Result<f64> {
    check_unit_interval("s", s)?;
    check_unit_interval("t", t)?;
    if s > t {
        return Err(Error::Domain(format!("increment needs s <= t, got s = {s}, t = {t}")));
    }
    if n_terms > EXACT_INCREMENT_LIMIT {
        return Err(Error::capacity("exact increment length", n_terms, EXACT_INCREMENT_LIMIT));
    }
    if n_terms == 0 || s == t {
        return Ok(0.0);
    }
    let n = n_terms as usize;
    let core = squarefree_kernels(n_terms)?;
    // index (n - 1) for n > 0, (N + |n| - 1) for n < 0
    let mut weights = Vec::with_capacity(2 * n);
    let mut kernels = Vec::with_capacity(2 * n);
    let mut negative = Vec::with_capacity(2 * n);
    for sign in [1.0, -1.0] {
        for m in 1..=n_terms {
            let (ss, cs) = sin_cos_turns(m, s);
            let (st, ct) = sin_cos_turns(m, t);
            // e(-m s) - e(-m t) for m > 0; the conjugate for -m
            let c = Complex64::new(cs - ct, sign * (st - ss));
            weights.push(c / (sign * m as f64));
            kernels.push(core[m as usize]);
            negative.push(sign < 0.0);
        }
    }
    let square = (n_terms * n_terms) as usize;
    let mut classes = vec![Complex64::default(); 2 * (square + 1)];
    for i in 0..2 * n {
        for j in 0..2 * n {
            let g = gcd(kernels[i], kernels[j]);
            let kernel = (kernels[i] / g) * (kernels[j] / g);
            let slot = if negative[i] != negative[j] {
                square + 1 + kernel as usize
            } else {
                kernel as usize
            };
            classes[slot] += weights[i] * weights[j];
        }
    }
    let total: f64 = classes.iter().map(|z| z.norm_sqr()).sum();
    Ok(total / TAU.powi(4))
}
