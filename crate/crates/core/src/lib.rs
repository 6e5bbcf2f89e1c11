//! Legendre paths and their random-model counterpart.
//!
//! The path `f_p` of an odd prime `p` is the polygon through the points
//! `(j/p, S_p(j)/sqrt(p))`, where `S_p(j)` is the sum of the Legendre symbol
//! `(n/p)` over `n <= j`. As `p` ranges over `[Q, 2Q]` these paths behave like
//! the random Fourier series built from a Rademacher random completely
//! multiplicative function `X`:
//!
//! ```text
//! F_{X,+}(t) = (1/pi) sum_n X_n sin(2 pi n t) / n          (X_{-1} = +1)
//! F_{X,-}(t) = (1/pi) sum_n X_n (1 - cos(2 pi n t)) / n    (X_{-1} = -1)
//! ```
//!
//! The crate builds both sides and compares them:
//!
//! - [`number_theory`]: sieves, Legendre/Jacobi symbols, symbol tables, Gauss sums
//! - [`legendre_path`]: exact paths, Pólya truncations, Fourier coefficients
//! - [`random_model`]: keyed sign streams, partial sums, Monte Carlo estimators
//! - [`moments`]: divisor-convolution moment series and empirical moments
//! - [`distribution`]: sup-norm samples, finite-dimensional samples, KS distance
//! - [`cli`]: the reproducible experiment driver behind the `legendre` binary

pub mod cli;
pub mod distribution;
pub mod error;
pub mod legendre_path;
pub mod moments;
pub mod number_theory;
pub mod random_model;
pub mod util;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

/// Which branch of the family is averaged over.
///
/// `Plus` is `p = 1 (mod 4)` on the prime side and `X_{-1} = +1` on the model
/// side; `Minus` is `p = 3 (mod 4)` and `X_{-1} = -1`; `Combined` is everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
    Combined,
}

impl Variant {
    /// Whether a prime with the given class modulo 4 belongs to this branch.
    pub fn admits_prime(self, p: u64) -> bool {
        match self {
            Variant::Plus => p % 4 == 1,
            Variant::Minus => p % 4 == 3,
            Variant::Combined => true,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
            Variant::Combined => "combined",
        })
    }
}
