//! Sharpening grid maxima of a trigonometric polynomial by Newton steps on
//! its exact derivative.

use std::f64::consts::{PI, TAU};

use crate::util::sin_cos_turns;

const RESYNC: u64 = 256;

/// `(F, F', F'')` at `t` for the series with coefficients `values[n] / n`.
pub(crate) fn derivatives(values: &[i8], n_terms: u64, odd: bool, t: f64) -> (f64, f64, f64) {
    let (s1, c1) = sin_cos_turns(1, t);
    let (mut s, mut c) = (s1, c1);
    let mut sums = [0.0f64; 5];
    for n in 1..=n_terms {
        if n % RESYNC == 0 {
            (s, c) = sin_cos_turns(n, t);
        }
        let x = values[n as usize] as f64;
        if x != 0.0 {
            let nf = n as f64;
            let (sw, cw) = if odd { (s, c) } else { (-c, s) };
            sums[0] += x * sw / nf;
            sums[1] += x * cw;
            sums[2] += x * nf * sw;
            sums[3] += x / nf;
        }
        (s, c) = (s * c1 + c * s1, c * c1 - s * s1);
    }
    let value = if odd { sums[0] } else { sums[3] + sums[0] } / PI;
    (value, 2.0 * sums[1], -2.0 * TAU * sums[2])
}

/// `max |F|` given its values on the uniform grid `j / (len - 1)`, refining
/// every local grid maximum that could hide the true maximum.
pub(crate) fn refined_sup(values: &[i8], n_terms: u64, odd: bool, grid: &[f64]) -> f64 {
    let len = grid.len();
    let grid_max = grid.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if len < 3 {
        return grid_max;
    }
    let h = 1.0 / (len - 1) as f64;
    let curvature = grid
        .windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]).abs())
        .fold(0.0, f64::max);
    let margin = curvature / 4.0 + 1e-12;
    let mut best = grid_max;
    for j in 1..len - 1 {
        let v = grid[j].abs();
        if v < grid_max - margin || v < grid[j - 1].abs() || v < grid[j + 1].abs() {
            continue;
        }
        let sign = grid[j].signum();
        let eval = |t: f64| {
            let (f, d1, d2) = derivatives(values, n_terms, odd, t);
            (sign * f, sign * d1, sign * d2)
        };
        best = best.max(climb(eval, (j as f64 - 1.0) * h, (j as f64 + 1.0) * h));
    }
    best
}

/// Maximum of a smooth `g` on `[a, b]` given `g' (a) > 0 > g'(b)`, by Newton
/// iteration on `g'` safeguarded with bisection.
fn climb<E: Fn(f64) -> (f64, f64, f64)>(eval: E, mut a: f64, mut b: f64) -> f64 {
    let (ga, da, _) = eval(a);
    let (gb, db, _) = eval(b);
    if !(da > 0.0 && db < 0.0) {
        return ga.max(gb);
    }
    let mut t = 0.5 * (a + b);
    let mut best = ga.max(gb);
    for _ in 0..100 {
        let (g, d1, d2) = eval(t);
        best = best.max(g);
        if d1 > 0.0 {
            a = t;
        } else {
            b = t;
        }
        if b - a <= 4.0 * f64::EPSILON * b.max(1e-300) {
            break;
        }
        let newton = t - d1 / d2;
        let next = if d2 < 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - t).abs() <= f64::EPSILON * t.abs() {
            break;
        }
        t = next;
    }
    best
}
