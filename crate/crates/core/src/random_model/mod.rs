//! Rademacher random completely multiplicative functions and the random
//! Fourier series built from them.

mod montecarlo;
mod series;
mod stream;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::number_theory::{factorize_trial, SmallestPrimeFactor};

pub use montecarlo::{
    increment_fourth_moment_mc, joint_moment_mc, run_chunked, McEstimate, DEFAULT_CHUNK,
};
pub use series::{eval_partial_series, sample_model_path, ModelPath, PathSampler};
pub use stream::StreamKey;

use stream::sign_from_words;

/// Largest prime cutoff accepted by [`sample_signs`].
pub const PRIME_CUTOFF_LIMIT: u64 = 100_000_000;
/// Largest `|n|` that [`RademacherSample::eval`] will factor by trial division.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// For each `2 <= n <= limit`: its smallest prime factor and the cofactor.
///
/// Lets every draw extend prime signs to all `n <= limit` with one
/// multiplication per entry and no division.
#[derive(Debug, Clone)]
pub struct FactorLinks {
    links: Vec<(u32, u32)>,
}

impl FactorLinks {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > PRIME_CUTOFF_LIMIT {
            return Err(Error::capacity("prime cutoff", limit, PRIME_CUTOFF_LIMIT));
        }
        let spf = SmallestPrimeFactor::new(limit.max(1))?;
        let links = spf
            .as_slice()
            .iter()
            .enumerate()
            .map(|(n, &q)| if q == 0 { (0, 0) } else { (q, n as u32 / q) })
            .collect();
        Ok(Self { links })
    }

    pub fn limit(&self) -> u64 {
        (self.links.len() - 1) as u64
    }

    /// Writes `X_n` for `0 <= n <= limit` (entry 0 is 0) given prime-sign words.
    fn fill(&self, words: &[u32], values: &mut Vec<i8>) {
        values.clear();
        values.resize(self.links.len(), 0);
        if values.len() > 1 {
            values[1] = 1;
        }
        for n in 2..self.links.len() {
            let (q, rest) = self.links[n];
            values[n] = if rest == 1 {
                sign_from_words(words, q as u64)
            } else {
                values[q as usize] * values[rest as usize]
            };
        }
    }
}

/// One draw of the signs `X_q` (primes `q <= P`) and `X_{-1}`, extended to all
/// `|n| <= P` by complete multiplicativity.
#[derive(Debug, Clone)]
pub struct RademacherSample {
    key: StreamKey,
    prime_cutoff: u64,
    values: Vec<i8>,
    sign_minus_one: i8,
}

impl RademacherSample {
    /// Draw `draw` of the family seeded by `seed`, using shared factor links.
    pub fn from_links(seed: u64, draw: u64, links: &FactorLinks) -> Self {
        let key = StreamKey::new(seed, draw);
        let mut values = Vec::new();
        let words = key.prime_words(links.limit());
        links.fill(&words, &mut values);
        Self {
            key,
            prime_cutoff: links.limit(),
            values,
            sign_minus_one: key.minus_one_sign(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.key.seed
    }

    pub fn draw(&self) -> u64 {
        self.key.draw
    }

    pub fn prime_cutoff(&self) -> u64 {
        self.prime_cutoff
    }

    pub fn sign_minus_one(&self) -> i8 {
        self.sign_minus_one
    }

    /// Replaces `X_{-1}`, conditioning the draw on one branch.
    pub fn with_sign_minus_one(mut self, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("X_(-1) must be +1 or -1, got {sign}")));
        }
        self.sign_minus_one = sign;
        Ok(self)
    }

    /// `X_q` for a prime `q <= P`.
    pub fn prime_sign(&self, q: u64) -> Option<i8> {
        if q > self.prime_cutoff || q < 2 || !crate::number_theory::is_prime(q) {
            return None;
        }
        Some(self.values[q as usize])
    }

    /// `X_1, ..., X_P` as a slice indexed by `n` (entry 0 is 0).
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// `X_n` for nonzero `n`.
    ///
    /// Beyond the cutoff, `|n|` is factored by trial division and prime signs
    /// are read straight from the keyed stream.
    pub fn eval(&self, n: i64) -> Result<i8> {
        if n == 0 {
            return Err(Error::Domain("X_0 is undefined".into()));
        }
        let m = n.unsigned_abs();
        let magnitude = if m <= self.prime_cutoff {
            self.values[m as usize]
        } else {
            if m > TRIAL_DIVISION_LIMIT {
                return Err(Error::capacity("factorization argument", m, TRIAL_DIVISION_LIMIT));
            }
            factorize_trial(m)
                .into_iter()
                .filter(|&(_, k)| k % 2 == 1)
                .map(|(q, _)| {
                    if q <= self.prime_cutoff {
                        self.values[q as usize]
                    } else {
                        self.key.prime_sign(q)
                    }
                })
                .product()
        };
        Ok(if n < 0 {
            self.sign_minus_one * magnitude
        } else {
            magnitude
        })
    }
}

/// Draws the signs for all primes `q <= prime_cutoff` and for -1 (draw 0).
pub fn sample_signs(seed: u64, prime_cutoff: u64) -> Result<RademacherSample> {
    let links = FactorLinks::new(prime_cutoff)?;
    Ok(RademacherSample::from_links(seed, 0, &links))
}

/// `X_n` for the given sample.
pub fn eval_multiplicative(sample: &RademacherSample, n: i64) -> Result<i8> {
    sample.eval(n)
}

/// Factor links shared by many draws with the same cutoff.
pub fn shared_links(limit: u64) -> Result<Arc<FactorLinks>> {
    FactorLinks::new(limit).map(Arc::new)
}
