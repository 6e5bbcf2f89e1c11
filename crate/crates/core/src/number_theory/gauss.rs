use num_complex::Complex64;

use super::symbol::SymbolTable;
use super::PrimeRecord;
use crate::error::{Error, Result};

/// Largest prime for which [`gauss_sum`] sums directly.
pub const GAUSS_LIMIT: u64 = 1_000_000;

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `sum_{a=1}^{p} (a/p) e(a/p)` by direct, compensated summation.
pub fn gauss_sum(table: &SymbolTable) -> Result<Complex64> {
    let p = table.p();
    if p > GAUSS_LIMIT {
        return Err(Error::capacity("Gauss sum prime", p, GAUSS_LIMIT));
    }
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let step = std::f64::consts::TAU / p as f64;
    for a in 1..p {
        let chi = table.get(a) as f64;
        let (s, c) = (step * a as f64).sin_cos();
        re.add(chi * c);
        im.add(chi * s);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Closed form of the quadratic Gauss sum: `sqrt(p)` or `i sqrt(p)`.
pub fn gauss_sum_closed_form(prime: &PrimeRecord) -> Complex64 {
    prime.epsilon() * (prime.p() as f64).sqrt()
}
