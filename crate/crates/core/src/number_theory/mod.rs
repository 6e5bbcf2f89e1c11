//! Primes and quadratic-character primitives.

mod gauss;
mod sieve;
mod symbol;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gauss::{gauss_sum, gauss_sum_closed_form, GAUSS_LIMIT};
pub(crate) use gauss::CompensatedSum;
pub use sieve::{
    factorize_trial, is_prime, sieve_primes, SmallestPrimeFactor, SIEVE_LIMIT, SPF_LIMIT,
};
pub use symbol::{
    jacobi, legendre_symbol, minus_one_symbol, symbol_table, SymbolTable, SymbolTableBuilder,
    TABLE_LIMIT,
};

/// An odd prime together with its class modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeRecord {
    p: u64,
    residue_class: u8,
}

impl PrimeRecord {
    /// Checks that `p` is an odd prime.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self {
            p,
            residue_class: (p % 4) as u8,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `p mod 4`, either 1 or 3.
    pub fn residue_class(&self) -> u8 {
        self.residue_class
    }

    /// `(-1 / p)` as +1 or -1.
    pub fn sign(&self) -> i8 {
        if self.residue_class == 1 {
            1
        } else {
            -1
        }
    }

    /// 1 if `p = 1 (mod 4)`, `i` if `p = 3 (mod 4)`.
    pub fn epsilon(&self) -> Complex64 {
        if self.residue_class == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        }
    }
}
