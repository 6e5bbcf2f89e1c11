//! The Legendre symbol: single evaluations and full per-prime tables.

use super::sieve::{is_prime, SmallestPrimeFactor};
use crate::error::{Error, Result};

/// Largest prime accepted by [`symbol_table`].
pub const TABLE_LIMIT: u64 = 1 << 26;

/// Jacobi symbol `(a / n)` for odd `n`, by quadratic reciprocity.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = -1 exactly when n = 3, 5 (mod 8)
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(n / p)` for an odd prime `p`.
///
/// Negative `n` is reduced through `(-1 / p)`. Primality of `p` is only
/// checked in debug builds.
pub fn legendre_symbol(n: i64, p: u64) -> i8 {
    debug_assert!(p > 2 && p % 2 == 1, "modulus must be odd");
    debug_assert!(p >= 1 << 32 || is_prime(p), "modulus must be prime");
    let magnitude = jacobi(n.unsigned_abs() % p, p);
    if n < 0 {
        minus_one_symbol(p) * magnitude
    } else {
        magnitude
    }
}

/// `(-1 / p)`: +1 when `p = 1 (mod 4)`, -1 when `p = 3 (mod 4)`.
pub fn minus_one_symbol(p: u64) -> i8 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Modular multiplication for moduli below 2^26, where products fit exactly in an f64.
#[derive(Clone, Copy)]
struct SmallModulus {
    p: u64,
    inv: f64,
}

impl SmallModulus {
    fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 26);
        Self {
            p,
            inv: 1.0 / p as f64,
        }
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        let prod = a * b;
        let q = (prod as f64 * self.inv) as u64;
        let r = prod as i64 - (q * self.p) as i64;
        if r < 0 {
            (r + self.p as i64) as u64
        } else if r as u64 >= self.p {
            r as u64 - self.p
        } else {
            r as u64
        }
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// All values of the Legendre symbol modulo one prime.
///
/// Indexed by residue: `get(j)` is `(j / p)` for `0 <= j < p`, with entry 0
/// equal to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    p: u64,
    values: Vec<i8>,
}

impl SymbolTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `(j / p)` for any nonnegative `j`, reduced modulo `p`.
    #[inline]
    pub fn get(&self, j: u64) -> i8 {
        self.values[(j % self.p) as usize]
    }

    /// `(n / p)` for a signed argument.
    pub fn get_signed(&self, n: i64) -> i8 {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.values[r as usize]
    }

    /// Values for residues `1..p`, i.e. `(1/p), ..., ((p-1)/p)`.
    pub fn nonzero_values(&self) -> &[i8] {
        &self.values[1..]
    }

    /// Values indexed by residue `0..p`.
    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }
}

/// Builds symbol tables for many primes below a common bound, sharing one
/// smallest-prime-factor table.
///
/// Each table evaluates Euler's criterion on primes up to `(p-1)/2`, extends by
/// complete multiplicativity, and fills the upper half from
/// `(p - j / p) = (-1 / p) (j / p)`.
#[derive(Debug, Clone)]
pub struct SymbolTableBuilder {
    spf: SmallestPrimeFactor,
    max_p: u64,
}

impl SymbolTableBuilder {
    /// Builder for all odd primes `p <= max_p`.
    pub fn new(max_p: u64) -> Result<Self> {
        if max_p > TABLE_LIMIT {
            return Err(Error::capacity("symbol table prime", max_p, TABLE_LIMIT));
        }
        let spf = SmallestPrimeFactor::new(max_p / 2 + 1)?;
        Ok(Self { spf, max_p })
    }

    pub fn max_p(&self) -> u64 {
        self.max_p
    }

    pub fn build(&self, p: u64) -> Result<SymbolTable> {
        if p > self.max_p {
            return Err(Error::capacity("symbol table prime", p, self.max_p));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let half = ((p - 1) / 2) as usize;
        let mut values = vec![0i8; p as usize];
        values[1] = 1;
        let modulus = SmallModulus::new(p);
        let exponent = (p - 1) / 2;
        let spf = self.spf.as_slice();
        for j in 2..=half {
            let q = spf[j] as usize;
            values[j] = if q == j {
                if modulus.pow(j as u64, exponent) == 1 {
                    1
                } else {
                    -1
                }
            } else {
                values[q] * values[j / q]
            };
        }
        let reflect = minus_one_symbol(p);
        for j in 1..=half {
            values[p as usize - j] = reflect * values[j];
        }
        Ok(SymbolTable { p, values })
    }
}

/// The full table of Legendre symbols modulo `p`.
pub fn symbol_table(p: u64) -> Result<SymbolTable> {
    if p > TABLE_LIMIT {
        return Err(Error::capacity("symbol table prime", p, TABLE_LIMIT));
    }
    SymbolTableBuilder::new(p.max(3))?.build(p)
}
