//! Prime enumeration and smallest-prime-factor tables.

use crate::error::{Error, Result};

/// Upper limit accepted by [`sieve_primes`].
pub const SIEVE_LIMIT: u64 = 1 << 40;
/// Upper limit accepted by [`SmallestPrimeFactor::new`].
pub const SPF_LIMIT: u64 = 1 << 31;

const SEGMENT_LEN: usize = 1 << 16;

/// Primes up to `n` inclusive with a plain sieve of Eratosthenes.
fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All primes in `[lo, hi]`, strictly increasing.
///
/// Segmented: memory is `O(sqrt(hi))` for the base primes plus one fixed
/// segment buffer.
pub fn sieve_primes(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if hi > SIEVE_LIMIT {
        return Err(Error::capacity("sieve upper bound", hi, SIEVE_LIMIT));
    }
    if lo > hi {
        return Err(Error::Invalid(format!("empty interval: lo = {lo} > hi = {hi}")));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    let base = small_primes(isqrt(hi));
    let mut out = Vec::new();
    let mut mark = vec![false; SEGMENT_LEN];

    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = hi.min(seg_lo + SEGMENT_LEN as u64 - 1);
        let len = (seg_hi - seg_lo + 1) as usize;
        mark[..len].fill(true);
        for &q in &base {
            if q * q > seg_hi {
                break;
            }
            let first = (q * q).max(seg_lo.div_ceil(q) * q);
            let mut m = first;
            while m <= seg_hi {
                mark[(m - seg_lo) as usize] = false;
                m += q;
            }
        }
        out.extend(
            mark[..len]
                .iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(i, _)| seg_lo + i as u64),
        );
        seg_lo = seg_hi + 1;
    }
    Ok(out)
}

/// Deterministic trial-division primality test, used for argument checking.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest-prime-factor table for `2 <= n <= limit`, built with a linear sieve.
#[derive(Debug, Clone)]
pub struct SmallestPrimeFactor {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SmallestPrimeFactor {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > SPF_LIMIT {
            return Err(Error::capacity("smallest-prime-factor table size", limit, SPF_LIMIT));
        }
        let n = limit.max(1) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &q in &primes {
                let m = i * q as usize;
                if q > si || m > n {
                    break;
                }
                spf[m] = q;
            }
        }
        Ok(Self { spf, primes })
    }

    /// Largest `n` covered by the table.
    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `n`; `None` for `n < 2` or `n` beyond the table.
    pub fn get(&self, n: u64) -> Option<u64> {
        if n < 2 {
            return None;
        }
        self.spf.get(n as usize).map(|&q| q as u64)
    }

    /// Raw table: entry `n` is the smallest prime factor of `n` (0 for n < 2).
    pub fn as_slice(&self) -> &[u32] {
        &self.spf
    }

    /// Primes up to the table limit, increasing.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Prime factorization `(q, k)` with `q` increasing.
    pub fn factorize(&self, mut n: u64) -> Option<Vec<(u64, u32)>> {
        if n == 0 || n > self.limit() {
            return None;
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let q = self.spf[n as usize] as u64;
            n /= q;
            match out.last_mut() {
                Some((last, k)) if *last == q => *k += 1,
                _ => out.push((q, 1)),
            }
        }
        Some(out)
    }
}

/// Factorization by trial division, for arguments beyond a table.
pub fn factorize_trial(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
