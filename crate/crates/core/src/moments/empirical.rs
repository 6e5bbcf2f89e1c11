//! Joint moments averaged over the primes in `[Q, 2Q]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{theoretical_moment, MomentRequest, MomentValue, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::legendre_path::{map_family, PolyaApproximation};
use crate::number_theory::CompensatedSum;

/// How `f_p(t)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathMode {
    /// The polygon itself.
    ExactPath,
    /// The Pólya expansion truncated at `z`.
    Polya { z: f64 },
}

impl fmt::Display for PathMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathMode::ExactPath => f.write_str("exact_path"),
            PathMode::Polya { z } => write!(f, "polya({z})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoment {
    pub value: f64,
    pub q: u64,
    /// Number of primes averaged over.
    pub primes: u64,
    /// Primes `p = 1 (mod 4)` among them.
    pub primes_plus: u64,
}

/// Average of `prod_i f_p(t_i)^{n_i}` over primes `p` in `[Q, 2Q]`:
/// `p = 1 (mod 4)` for `Plus`, `p = 3 (mod 4)` for `Minus`, all for `Combined`.
pub fn empirical_moment(request: &MomentRequest, q: u64, mode: PathMode) -> Result<EmpiricalMoment> {
    if q < 100 {
        return Err(Error::Invalid(format!("Q = {q} must be at least 100")));
    }
    let rows = map_family(q, request.variant(), |path, table| {
        let values = request
            .points()
            .iter()
            .map(|&t| match mode {
                PathMode::ExactPath => path.eval(t),
                PathMode::Polya { z } => PolyaApproximation::new(path.prime(), z)?.eval(table, t),
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok((request.monomial(&values), path.prime().residue_class() == 1))
    })?;
    let mut sum = CompensatedSum::default();
    let mut plus = 0;
    for &(x, is_plus) in &rows {
        sum.add(x);
        plus += is_plus as u64;
    }
    Ok(EmpiricalMoment {
        value: sum.value() / rows.len() as f64,
        q,
        primes: rows.len() as u64,
        primes_plus: plus,
    })
}

/// Empirical and limiting moments side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentGap {
    pub empirical: EmpiricalMoment,
    pub theoretical: MomentValue,
    pub gap: f64,
}

/// `|empirical - theoretical|` on exact paths with the default truncation.
pub fn moment_gap(request: &MomentRequest, q: u64) -> Result<MomentGap> {
    moment_gap_with(request, q, PathMode::ExactPath, DEFAULT_TRUNCATION)
}

pub fn moment_gap_with(
    request: &MomentRequest,
    q: u64,
    mode: PathMode,
    truncation: u64,
) -> Result<MomentGap> {
    let empirical = empirical_moment(request, q, mode)?;
    let theoretical = theoretical_moment(request, truncation)?;
    Ok(MomentGap {
        empirical,
        theoretical,
        gap: (empirical.value - theoretical.value).abs(),
    })
}
