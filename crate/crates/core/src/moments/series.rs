//! The moment series `pi^-n sum_a B(a^2) / a^2` and its tail majorant.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::lattice::DivisorLattice;
use super::{MomentRequest, MomentValue};
use crate::error::{Error, Result};
use crate::number_theory::{factorize_trial, sieve_primes, CompensatedSum, SmallestPrimeFactor};
use crate::util::sin_cos_turns;
use crate::Variant;

/// Largest argument accepted by [`b_coefficient`].
pub const SERIES_LIMIT: u64 = 1_000_000_000;
/// Largest truncation accepted by [`theoretical_moment`].
pub const TRUNCATION_LIMIT: u64 = 100_000_000;

/// Terms per work unit of the moment series.
pub const SERIES_CHUNK: u64 = 4096;
const RANKIN_PRIME_BOUND: u64 = 100_000;

/// Per-divisor factor tables and convolution scratch for one integer.
#[derive(Debug, Default)]
struct Workspace {
    lattice: DivisorLattice,
    factors: Vec<(u64, u32)>,
    plus: Vec<Vec<f64>>,
    minus: Vec<Vec<f64>>,
    acc: Vec<f64>,
    tmp: Vec<f64>,
}

/// Active points of a request: `(t, exponent)` with exponent at least 1.
fn active_slots(request: &MomentRequest) -> Vec<(f64, u32)> {
    request
        .points()
        .iter()
        .zip(request.exponents())
        .filter(|(_, &n)| n > 0)
        .map(|(&t, &n)| (t, n))
        .collect()
}

/// Whether every coefficient of the branch is zero: `sin(2 pi b t)` vanishes
/// for `t` in `{0, 1/2, 1}`, `1 - cos(2 pi b t)` for `t` in `{0, 1}`.
fn branch_vanishes(slots: &[(f64, u32)], odd: bool) -> bool {
    slots.iter().any(|&(t, _)| t == 0.0 || t == 1.0 || (odd && t == 0.5))
}

impl Workspace {
    /// `(B_+(m), B_-(m))` for `m` factored in `self.factors`; factors `b > cap` count as 0.
    fn eval(&mut self, slots: &[(f64, u32)], cap: u64, want: (bool, bool)) -> Result<(f64, f64)> {
        self.lattice.rebuild(&self.factors)?;
        let k = slots.len();
        self.plus.resize_with(k, Vec::new);
        self.minus.resize_with(k, Vec::new);
        for (i, &(t, _)) in slots.iter().enumerate() {
            let (plus, minus) = (&mut self.plus[i], &mut self.minus[i]);
            plus.clear();
            minus.clear();
            for &d in self.lattice.divisors() {
                let (s, c) = if d > cap { (0.0, 1.0) } else { sin_cos_turns(d, t) };
                plus.push(s);
                minus.push(1.0 - c);
            }
        }
        let order: Vec<usize> = slots
            .iter()
            .enumerate()
            .flat_map(|(i, &(_, n))| std::iter::repeat_n(i, n as usize))
            .collect();
        let plus = if want.0 { self.chain(&order, true) } else { 0.0 };
        let minus = if want.1 { self.chain(&order, false) } else { 0.0 };
        Ok((plus, minus))
    }

    fn chain(&mut self, order: &[usize], odd: bool) -> f64 {
        let tables = if odd { &self.plus } else { &self.minus };
        let last = self.lattice.len() - 1;
        match order {
            [] => 0.0,
            [only] => tables[*only][last],
            [first, middle @ .., final_slot] => {
                self.acc.clear();
                self.acc.extend_from_slice(&tables[*first]);
                for &i in middle {
                    self.lattice.convolve(&self.acc, &tables[i], &mut self.tmp);
                    std::mem::swap(&mut self.acc, &mut self.tmp);
                }
                self.lattice.convolve_top(&self.acc, &tables[*final_slot])
            }
        }
    }
}

/// `B(a)`: the sum over ordered factorizations `a = prod_{i,j} b_{i,j}` (with
/// `n_i` factors attached to `t_i`) of `prod sin(2 pi b_{i,j} t_i)` for `Plus`
/// or `prod (1 - cos(2 pi b_{i,j} t_i))` for `Minus`.
pub fn b_coefficient(variant: Variant, request: &MomentRequest, a: u64) -> Result<f64> {
    if a == 0 {
        return Err(Error::Domain("B(a) needs a >= 1".into()));
    }
    if a > SERIES_LIMIT {
        return Err(Error::capacity("coefficient argument", a, SERIES_LIMIT));
    }
    let odd = match variant {
        Variant::Plus => true,
        Variant::Minus => false,
        Variant::Combined => {
            return Err(Error::Invalid("B(a) is defined for plus or minus only".into()))
        }
    };
    let slots = active_slots(request);
    let mut ws = Workspace {
        factors: factorize_trial(a),
        ..Workspace::default()
    };
    let (plus, minus) = ws.eval(&slots, u64::MAX, (odd, !odd))?;
    Ok(if odd { plus } else { minus })
}

/// `d_n(m)`: the number of ordered factorizations of `m` into `n` factors.
pub fn divisor_function(n: u32, m: u64) -> f64 {
    if n == 0 {
        return if m == 1 { 1.0 } else { 0.0 };
    }
    factorize_trial(m)
        .into_iter()
        .map(|(_, k)| binomial(k as u64 + n as u64 - 1, n as u64 - 1))
        .product()
}

fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn rankin_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_primes(2, RANKIN_PRIME_BOUND).expect("small sieve"))
}

/// `sum_{k >= 1} C(2k + n - 1, n - 1) x^k`, with `x < 1`.
fn local_factor_excess(n: u32, x: f64) -> f64 {
    let n = n as f64;
    let mut coeff = 1.0;
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 1u32.. {
        let k = k as f64;
        coeff *= (2.0 * k + n - 2.0) * (2.0 * k + n - 1.0) / ((2.0 * k - 1.0) * (2.0 * k));
        power *= x;
        let term = coeff * power;
        sum += term;
        let ratio = (2.0 * k + n) * (2.0 * k + n + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 2.0)) * x;
        if ratio < 0.5 && term <= 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Rigorous upper bound for `sum_{a > A} d_n(a^2) / a^2`.
///
/// For any `0 < delta < 1` the sum is at most `A^-delta` times the Euler
/// product of `sum_k d_n(p^2k) p^(-k(2 - delta))`; primes beyond a fixed bound
/// are bounded through `log(1 + y) <= y` and an integral comparison. The best
/// `delta` on a grid is kept.
pub fn tail_majorant(n: u32, truncation: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let primes = rankin_primes();
    let p0 = RANKIN_PRIME_BOUND as f64;
    let log_a = (truncation.max(1) as f64).ln();
    let mut best = f64::INFINITY;
    for step in 1..100 {
        let delta = step as f64 / 100.0;
        let s = 2.0 - delta;
        let head: f64 = primes
            .iter()
            .map(|&p| local_factor_excess(n, (p as f64).powf(-s)).ln_1p())
            .sum();
        let x0 = p0.powf(-s);
        let k_const = local_factor_excess(n, x0) / x0;
        let rest = k_const * p0.powf(-(1.0 - delta)) / (1.0 - delta);
        best = best.min((head + rest - delta * log_a).exp());
    }
    best * (1.0 + 1e-9)
}

/// Largest `a` with `a^2 <= cap^n`, or `None` when that exceeds `u64`.
fn matched_limit(cap: u64, n: u32) -> Option<u64> {
    let bound = (cap as u128).checked_pow(n).filter(|&b| b < 1 << 126)?;
    let mut a = (bound as f64).sqrt() as u128;
    while a * a > bound {
        a -= 1;
    }
    while (a + 1) * (a + 1) <= bound {
        a += 1;
    }
    u64::try_from(a).ok()
}

/// `(sum_{a <= A} B_+(a^2)/a^2, sum_{a <= A} B_-(a^2)/a^2)` for the requested branches.
fn series_sums(
    slots: &[(f64, u32)],
    truncation: u64,
    cap: u64,
    want: (bool, bool),
) -> Result<(f64, f64)> {
    if !want.0 && !want.1 {
        return Ok((0.0, 0.0));
    }
    let spf = SmallestPrimeFactor::new(truncation)?;
    let n_chunks = truncation.div_ceil(SERIES_CHUNK);
    let partials: Vec<Result<(f64, f64)>> = (0..n_chunks)
        .into_par_iter()
        .map_init(Workspace::default, |ws, c| {
            let mut plus = CompensatedSum::default();
            let mut minus = CompensatedSum::default();
            for a in (c * SERIES_CHUNK + 1)..=((c + 1) * SERIES_CHUNK).min(truncation) {
                ws.factors.clear();
                ws.factors.extend(
                    spf.factorize(a)
                        .expect("a within table")
                        .into_iter()
                        .map(|(q, k)| (q, 2 * k)),
                );
                let (bp, bm) = ws.eval(slots, cap, want)?;
                let a2 = (a as f64) * (a as f64);
                plus.add(bp / a2);
                minus.add(bm / a2);
            }
            Ok((plus.value(), minus.value()))
        })
        .collect();
    let mut plus = CompensatedSum::default();
    let mut minus = CompensatedSum::default();
    for r in partials {
        let (p, m) = r?;
        plus.add(p);
        minus.add(m);
    }
    Ok((plus.value(), minus.value()))
}

fn moment_with_cap(request: &MomentRequest, truncation: u64, cap: u64) -> Result<MomentValue> {
    if truncation == 0 {
        return Err(Error::Domain("truncation A must be >= 1".into()));
    }
    let n = request.total_degree();
    let slots = active_slots(request);
    let (needs_plus, needs_minus) = match request.variant() {
        Variant::Plus => (true, false),
        Variant::Minus => (false, true),
        Variant::Combined => (true, true),
    };
    let live_plus = needs_plus && !branch_vanishes(&slots, true);
    let live_minus = needs_minus && !branch_vanishes(&slots, false);

    let full = if cap == u64::MAX { None } else { matched_limit(cap, n) };
    let (summed, exact) = match full {
        Some(limit) if limit <= truncation => (limit.max(1), true),
        _ => (truncation, false),
    };
    if summed > TRUNCATION_LIMIT && (live_plus || live_minus) {
        return Err(Error::capacity("series truncation", summed, TRUNCATION_LIMIT));
    }
    let (sum_plus, sum_minus) = series_sums(&slots, summed, cap, (live_plus, live_minus))?;

    let scale = PI.powi(-(n as i32));
    let tail = if exact { 0.0 } else { tail_majorant(n, truncation) * scale };
    let tail_plus = if live_plus { tail } else { 0.0 };
    let tail_minus = if live_minus { tail * 2f64.powi(n as i32) } else { 0.0 };
    let (value, tail_bound) = match request.variant() {
        Variant::Plus => (sum_plus * scale, tail_plus),
        Variant::Minus => (sum_minus * scale, tail_minus),
        Variant::Combined => (
            (sum_plus * scale + sum_minus * scale) / 2.0,
            (tail_plus + tail_minus) / 2.0,
        ),
    };
    Ok(MomentValue {
        value,
        truncation: if exact { summed } else { truncation },
        tail_bound,
    })
}

/// `E prod F(t_i)^{n_i}` for the limiting model, summed over `a <= A`.
///
/// `Plus`/`Minus` condition on `X_{-1} = +1/-1`; `Combined` is their mean.
pub fn theoretical_moment(request: &MomentRequest, truncation: u64) -> Result<MomentValue> {
    moment_with_cap(request, truncation, u64::MAX)
}

/// The moment of the partial sums `F_{X,N}`: every factor `b` is capped at
/// `N`. Once `A^2 >= N^n` the series is finite and the tail bound is 0.
pub fn theoretical_moment_matched(
    request: &MomentRequest,
    truncation: u64,
    n_terms: u64,
) -> Result<MomentValue> {
    if n_terms == 0 {
        return Err(Error::Invalid("series needs at least one term".into()));
    }
    moment_with_cap(request, truncation, n_terms)
}
