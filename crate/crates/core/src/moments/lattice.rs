//! Divisors of a factored integer laid out in mixed-radix order, with
//! Dirichlet convolution carried out on the exponent lattice.

use crate::error::{Error, Result};

/// Largest divisor count handled in one lattice.
pub const LATTICE_LIMIT: u64 = 1 << 22;

/// Divisor `d` with exponent digits `(e_1, ..., e_r)` sits at index
/// `sum_j e_j * stride_j`. If `e | d` then `d / e` sits at `idx(d) - idx(e)`,
/// and the complement `m / d` sits at `len - 1 - idx(d)`.
#[derive(Debug, Clone, Default)]
pub(crate) struct DivisorLattice {
    exponents: Vec<u32>,
    strides: Vec<usize>,
    divisors: Vec<u64>,
    digits: Vec<u32>,
    sub_digits: Vec<u32>,
}

impl DivisorLattice {
    /// Rebuilds the lattice for `prod q^k` over `factors`, reusing buffers.
    pub fn rebuild(&mut self, factors: &[(u64, u32)]) -> Result<()> {
        let count = factors
            .iter()
            .try_fold(1u64, |acc, &(_, k)| acc.checked_mul(k as u64 + 1))
            .filter(|&c| c <= LATTICE_LIMIT)
            .ok_or_else(|| {
                Error::capacity(
                    "divisor count",
                    factors.iter().map(|&(_, k)| k as u64 + 1).fold(1, u64::saturating_mul),
                    LATTICE_LIMIT,
                )
            })?;
        self.exponents.clear();
        self.strides.clear();
        self.divisors.clear();
        self.divisors.reserve(count as usize);
        self.divisors.push(1);
        for &(q, k) in factors {
            let block = self.divisors.len();
            self.strides.push(block);
            self.exponents.push(k);
            let mut power = 1u64;
            for _ in 0..k {
                power = power
                    .checked_mul(q)
                    .ok_or_else(|| Error::Domain("divisor exceeds 64 bits".into()))?;
                for i in 0..block {
                    let d = self.divisors[i] * power;
                    self.divisors.push(d);
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// `out[d] = sum_{e | d} f[e] g[d / e]` for every divisor `d`.
    pub fn convolve(&mut self, f: &[f64], g: &[f64], out: &mut Vec<f64>) {
        let r = self.exponents.len();
        out.clear();
        out.resize(self.len(), 0.0);
        self.digits.clear();
        self.digits.resize(r, 0);
        for (di, slot) in out.iter_mut().enumerate() {
            self.sub_digits.clear();
            self.sub_digits.resize(r, 0);
            let mut ei = 0usize;
            let mut acc = 0.0;
            'sub: loop {
                acc += f[ei] * g[di - ei];
                let mut j = 0;
                loop {
                    if j == r {
                        break 'sub;
                    }
                    if self.sub_digits[j] < self.digits[j] {
                        self.sub_digits[j] += 1;
                        ei += self.strides[j];
                        break;
                    }
                    ei -= self.sub_digits[j] as usize * self.strides[j];
                    self.sub_digits[j] = 0;
                    j += 1;
                }
            }
            *slot = acc;
            for j in 0..r {
                if self.digits[j] < self.exponents[j] {
                    self.digits[j] += 1;
                    break;
                }
                self.digits[j] = 0;
            }
        }
    }

    /// `sum_{d | m} f[d] g[m / d]` for the full integer `m`.
    pub fn convolve_top(&self, f: &[f64], g: &[f64]) -> f64 {
        let last = self.len() - 1;
        f.iter()
            .enumerate()
            .map(|(i, &x)| x * g[last - i])
            .sum()
    }
}
