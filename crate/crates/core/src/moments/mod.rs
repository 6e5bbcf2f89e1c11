//! Joint moments of the path values: the limiting series for the random
//! model, exact small-`N` increment moments, and empirical averages over primes.

mod empirical;
mod increment;
mod lattice;
mod series;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::random_model::joint_moment_mc;
use crate::Variant;

pub use empirical::{empirical_moment, moment_gap, moment_gap_with, EmpiricalMoment, MomentGap, PathMode};
pub use increment::{increment_fourth_moment_exact, EXACT_INCREMENT_LIMIT};
pub use series::{
    b_coefficient, divisor_function, tail_majorant, theoretical_moment,
    theoretical_moment_matched, SERIES_CHUNK, SERIES_LIMIT, TRUNCATION_LIMIT,
};

/// Default truncation `A` of the moment series.
pub const DEFAULT_TRUNCATION: u64 = 1_000_000;

/// `E prod_i F(t_i)^{n_i}` for strictly increasing `t_i` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRequest {
    points: Vec<f64>,
    exponents: Vec<u32>,
    variant: Variant,
}

impl MomentRequest {
    pub fn new(points: Vec<f64>, exponents: Vec<u32>, variant: Variant) -> Result<Self> {
        if points.is_empty() || points.len() != exponents.len() {
            return Err(Error::Invalid(format!(
                "{} points but {} exponents",
                points.len(),
                exponents.len()
            )));
        }
        for &t in &points {
            check_unit_interval("t", t)?;
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("points must be strictly increasing".into()));
        }
        if exponents.iter().all(|&n| n == 0) {
            return Err(Error::Invalid("total degree must be at least 1".into()));
        }
        Ok(Self {
            points,
            exponents,
            variant,
        })
    }

    /// Single-point request `E F(t)^n`.
    pub fn single(t: f64, n: u32, variant: Variant) -> Result<Self> {
        Self::new(vec![t], vec![n], variant)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Self {
            variant,
            ..self.clone()
        }
    }

    /// `n = sum_i n_i`.
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `prod_i x_i^{n_i}` for values `x_i` at the request's points.
    pub fn monomial(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .zip(&self.exponents)
            .map(|(x, &n)| x.powi(n as i32))
            .product()
    }
}

/// A series value with the number of terms summed and a bound on the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentValue {
    pub value: f64,
    pub truncation: u64,
    pub tail_bound: f64,
}

/// JSON record describing one moment computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub request: MomentRequest,
    pub variant: Variant,
    pub kind: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes_plus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_terms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theoretical: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

impl MomentReport {
    pub fn new(request: &MomentRequest, kind: &str, value: f64) -> Self {
        Self {
            request: request.clone(),
            variant: request.variant(),
            kind: kind.to_string(),
            value,
            q: None,
            primes: None,
            primes_plus: None,
            mode: None,
            truncation: None,
            n_terms: None,
            theoretical: None,
            tail_bound: None,
            gap: None,
            seed: None,
            trials: None,
            std_error: None,
        }
    }

    pub fn theoretical(request: &MomentRequest, value: &MomentValue) -> Self {
        Self {
            truncation: Some(value.truncation),
            tail_bound: Some(value.tail_bound),
            ..Self::new(request, "theoretical", value.value)
        }
    }

    pub fn empirical(request: &MomentRequest, value: &EmpiricalMoment, mode: PathMode) -> Self {
        Self {
            q: Some(value.q),
            primes: Some(value.primes),
            primes_plus: Some(value.primes_plus),
            mode: Some(mode.to_string()),
            ..Self::new(request, "empirical", value.value)
        }
    }

    pub fn gap(request: &MomentRequest, gap: &MomentGap, mode: PathMode) -> Self {
        Self {
            kind: "gap".into(),
            truncation: Some(gap.theoretical.truncation),
            theoretical: Some(gap.theoretical.value),
            tail_bound: Some(gap.theoretical.tail_bound),
            gap: Some(gap.gap),
            ..Self::empirical(request, &gap.empirical, mode)
        }
    }
}

/// Monte Carlo estimate of the model moment from `trials` draws of `F_{X,N}`.
pub fn joint_moment_report(
    request: &MomentRequest,
    n_terms: u64,
    trials: u64,
    seed: u64,
) -> Result<MomentReport> {
    let mc = joint_moment_mc(
        request.points(),
        request.exponents(),
        request.variant(),
        n_terms,
        trials,
        seed,
    )?;
    Ok(MomentReport {
        n_terms: Some(n_terms),
        seed: Some(seed),
        trials: Some(mc.trials),
        std_error: Some(mc.std_error),
        ..MomentReport::new(request, "mc", mc.mean)
    })
}
