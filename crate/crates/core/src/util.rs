//! Small numeric and formatting helpers shared across modules.

/// Fractional part of `n * t` for `t >= 0`, computed exactly from the binary
/// expansion of `t` before the final rounding to `f64`.
///
/// Multiplying first and then taking `fract()` loses about `log2(n)` bits of
/// the phase; this keeps the full 53.
pub fn frac_mul(n: u64, t: f64) -> f64 {
    debug_assert!(t >= 0.0 && t.is_finite());
    if t == 0.0 || n == 0 {
        return 0.0;
    }
    let bits = t.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let (mantissa, exp_field) = if exp_field == 0 {
        (bits & ((1 << 52) - 1), 1)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), exp_field)
    };
    // t = mantissa * 2^-shift
    let shift = 1075 - exp_field;
    if shift <= 0 {
        return 0.0;
    }
    if shift >= 117 {
        // n * mantissa < 2^117 <= 2^shift, so n * t < 1 and has no integer part.
        return n as f64 * t;
    }
    let prod = n as u128 * mantissa as u128;
    let rem = prod & ((1u128 << shift) - 1);
    rem as f64 * (-(shift as f64)).exp2()
}

/// `sin(2 pi n t)` and `cos(2 pi n t)` with exact phase reduction.
#[inline]
pub fn sin_cos_turns(n: u64, t: f64) -> (f64, f64) {
    (std::f64::consts::TAU * frac_mul(n, t)).sin_cos()
}

/// Maps `f` over `items` in fixed-size chunks on the rayon pool, returning
/// results in input order. `init` creates per-worker scratch state.
pub fn ordered_par_map<T, S, R, I, F>(items: &[T], chunk: usize, init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items
        .par_chunks(chunk.max(1))
        .map_init(&init, |state, block| block.iter().map(|x| f(state, x)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Fixed 17-significant-digit rendering used in every CSV the crate writes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
