//! Monte Carlo estimators over independent draws of the random model.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FactorLinks, RademacherSample};
use crate::error::{check_unit_interval, Error, Result};
use crate::number_theory::CompensatedSum;
use crate::util::sin_cos_turns;
use crate::Variant;

/// Trials per work unit. Reductions run in chunk order, so results are
/// identical for any thread count at a fixed chunk size.
pub const DEFAULT_CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Runs `trial(state, i)` for `i in 0..trials` in fixed-size chunks and
/// returns the sample mean with its standard error.
pub fn run_chunked<S, I, F>(trials: u64, chunk: usize, init: I, trial: F) -> McEstimate
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) -> f64 + Sync + Send,
{
    let chunk = chunk.max(1) as u64;
    let n_chunks = trials.div_ceil(chunk);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map_init(&init, |state, c| {
            let mut sum = CompensatedSum::default();
            let mut sq = CompensatedSum::default();
            for i in c * chunk..((c + 1) * chunk).min(trials) {
                let x = trial(state, i);
                sum.add(x);
                sq.add(x * x);
            }
            (sum.value(), sq.value())
        })
        .collect();
    let mut sum = CompensatedSum::default();
    let mut sq = CompensatedSum::default();
    for (s, q) in partials {
        sum.add(s);
        sq.add(q);
    }
    let n = trials as f64;
    let mean = sum.value() / n;
    let var = if trials > 1 {
        ((sq.value() - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    McEstimate {
        mean,
        std_error: (var / n).sqrt(),
        trials,
    }
}

/// Per-term weights `w_n` with `F_{X,N}(t) = (1/pi) sum X_n w_n` in one branch.
fn branch_weights(n_terms: u64, t: f64, odd: bool) -> Vec<f64> {
    let mut w = vec![0.0; n_terms as usize + 1];
    for n in 1..=n_terms {
        let (s, c) = sin_cos_turns(n, t);
        w[n as usize] = (if odd { s } else { 1.0 - c }) / n as f64;
    }
    w
}

#[inline]
fn dot(values: &[i8], weights: &[f64]) -> f64 {
    values
        .iter()
        .zip(weights)
        .skip(1)
        .map(|(&x, &w)| x as f64 * w)
        .sum::<f64>()
        / PI
}

/// Monte Carlo estimate of `E |F_{X,N}(t) - F_{X,N}(s)|^4`; draw `i` uses the
/// stream keyed by `(seed, i)`.
pub fn increment_fourth_moment_mc(
    n_terms: u64,
    s: f64,
    t: f64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_unit_interval("s", s)?;
    check_unit_interval("t", t)?;
    if s > t {
        return Err(Error::Domain(format!("increment needs s <= t, got s = {s}, t = {t}")));
    }
    if trials < 100 {
        return Err(Error::Invalid(format!("need at least 100 trials, got {trials}")));
    }
    if s == t {
        return Ok(McEstimate {
            mean: 0.0,
            std_error: 0.0,
            trials,
        });
    }
    let links = FactorLinks::new(n_terms)?;
    let diff = |odd: bool| {
        let a = branch_weights(n_terms, t, odd);
        let b = branch_weights(n_terms, s, odd);
        a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>()
    };
    let (plus, minus) = (diff(true), diff(false));
    Ok(run_chunked(
        trials,
        DEFAULT_CHUNK,
        || (),
        |_, i| {
            let sample = RademacherSample::from_links(seed, i, &links);
            let w = if sample.sign_minus_one() == 1 { &plus } else { &minus };
            dot(sample.values(), w).powi(4)
        },
    ))
}

/// Monte Carlo estimate of `E prod_i F_{X,N}(t_i)^{n_i}`.
///
/// `Plus` and `Minus` condition on `X_{-1} = +1` or `-1`; `Combined` uses the
/// sampled sign.
pub fn joint_moment_mc(
    points: &[f64],
    exponents: &[u32],
    variant: Variant,
    n_terms: u64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if points.len() != exponents.len() || points.is_empty() {
        return Err(Error::Invalid("points and exponents must be non-empty and equal length".into()));
    }
    for &t in points {
        check_unit_interval("t", t)?;
    }
    if trials < 100 {
        return Err(Error::Invalid(format!("need at least 100 trials, got {trials}")));
    }
    let links = FactorLinks::new(n_terms)?;
    let weights = |odd: bool| -> Vec<Vec<f64>> {
        points.iter().map(|&t| branch_weights(n_terms, t, odd)).collect()
    };
    let (plus, minus) = (weights(true), weights(false));
    Ok(run_chunked(
        trials,
        DEFAULT_CHUNK,
        || (),
        |_, i| {
            let sample = RademacherSample::from_links(seed, i, &links);
            let odd = match variant {
                Variant::Plus => true,
                Variant::Minus => false,
                Variant::Combined => sample.sign_minus_one() == 1,
            };
            let w = if odd { &plus } else { &minus };
            w.iter()
                .zip(exponents)
                .map(|(wi, &k)| dot(sample.values(), wi).powi(k as i32))
                .product()
        },
    ))
}
