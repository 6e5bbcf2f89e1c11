//! Legendre paths: the normalized polygon of partial sums of `(n / p)`.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;

use crate::error::{check_unit_interval, Error, Result};
use crate::number_theory::{
    sieve_primes, symbol_table, CompensatedSum, PrimeRecord, SymbolTable, SymbolTableBuilder,
};
use crate::util::{fmt_f64, ordered_par_map, sin_cos_turns};
use crate::Variant;

/// Primes handed to one worker at a time by [`map_family`].
pub const FAMILY_CHUNK: usize = 16;

/// Default constant in the Pólya error budget.
pub const POLYA_CONSTANT: f64 = 10.0;

/// The path `f_p` as its `p + 1` vertices `S_p(j) / sqrt(p)`, `j = 0..=p`.
///
/// The last segment is flat since `(p / p) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePath {
    prime: PrimeRecord,
    vertices: Vec<f64>,
}

impl LegendrePath {
    /// Builds the path from a precomputed table in one pass.
    pub fn from_table(table: &SymbolTable) -> Result<Self> {
        let prime = PrimeRecord::new(table.p())?;
        let p = table.p() as usize;
        let sqrt_p = (p as f64).sqrt();
        let mut vertices = Vec::with_capacity(p + 1);
        let mut sum: i64 = 0;
        vertices.push(0.0);
        for &chi in table.nonzero_values() {
            sum += chi as i64;
            vertices.push(sum as f64 / sqrt_p);
        }
        if sum != 0 {
            return Err(Error::Invariant(format!(
                "complete character sum modulo {p} is {sum}, not 0"
            )));
        }
        // S_p(p) = S_p(p - 1)
        vertices.push(0.0);
        Ok(Self { prime, vertices })
    }

    pub fn prime(&self) -> PrimeRecord {
        self.prime
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    pub fn vertices(&self) -> &[f64] {
        &self.vertices
    }

    /// `f_p(t)` by linear interpolation between vertices.
    pub fn eval(&self, t: f64) -> Result<f64> {
        check_unit_interval("t", t)?;
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        let p = self.p() as f64;
        let x = p * t;
        let nearest = x.round();
        // snap t = j/p to the vertex despite rounding in p * (j / p)
        if (x - nearest).abs() <= 4.0 * f64::EPSILON * x.max(1.0) {
            return self.vertices[nearest as usize];
        }
        let j = x.floor() as usize;
        if j >= self.vertices.len() - 1 {
            return self.vertices[self.vertices.len() - 1];
        }
        let frac = x - j as f64;
        self.vertices[j] + frac * (self.vertices[j + 1] - self.vertices[j])
    }

    /// `sup_t |f_p(t)|`, attained at a vertex.
    pub fn sup_norm(&self) -> f64 {
        self.vertices.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `max_j |v[p-1-j] - sigma v[j]|` over `0 <= j <= p-1`, where `sigma` is +1
    /// for `p = 3 (mod 4)` (even path) and -1 for `p = 1 (mod 4)` (odd path).
    pub fn symmetry_defect(&self) -> f64 {
        let p = self.p() as usize;
        let sigma = if self.prime.residue_class() == 3 { 1.0 } else { -1.0 };
        (0..p)
            .map(|j| (self.vertices[p - 1 - j] - sigma * self.vertices[j]).abs())
            .fold(0.0, f64::max)
    }

    /// Re-derives the integer partial sums and checks every structural invariant.
    pub fn check_invariants(&self) -> Result<()> {
        let p = self.p() as usize;
        let sqrt_p = (p as f64).sqrt();
        let sums: Vec<i64> = self
            .vertices
            .iter()
            .map(|v| (v * sqrt_p).round() as i64)
            .collect();
        let fail = |msg: String| Err(Error::Invariant(format!("p = {p}: {msg}")));
        if self.vertices.len() != p + 1 {
            return fail(format!("{} vertices", self.vertices.len()));
        }
        if self.vertices[0] != 0.0 || self.vertices[p - 1] != 0.0 || self.vertices[p] != 0.0 {
            return fail("path does not start and end at 0".into());
        }
        for j in 1..p {
            if (sums[j] - sums[j - 1]).abs() != 1 {
                return fail(format!("increment at j = {j} is not +-1/sqrt(p)"));
            }
        }
        if self.symmetry_defect() != 0.0 {
            return fail(format!("symmetry defect {}", self.symmetry_defect()));
        }
        Ok(())
    }

    /// `int_0^1 f_p(t) e(-h t) dt`, exact for the polygon; 0 for `h = 0`.
    ///
    /// Integrating by parts (f vanishes at both ends) leaves, on each segment,
    /// the constant slope times the integral of `e(-ht)`.
    pub fn fourier_coefficient(&self, h: i64) -> Complex64 {
        if h == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let p = self.p();
        let hm = h.rem_euclid(p as i64) as u64;
        // e(-h j / p) with exact reduction of h j mod p
        let expo = |j: u64| {
            let k = (hm * (j % p)) % p;
            let (s, c) = (TAU * (k as f64 / p as f64)).sin_cos();
            Complex64::new(c, -s)
        };
        let mut re = CompensatedSum::default();
        let mut im = CompensatedSum::default();
        let mut left = expo(0);
        for j in 0..p as usize {
            let right = expo(j as u64 + 1);
            let slope = (self.vertices[j + 1] - self.vertices[j]) * p as f64;
            if slope != 0.0 {
                let piece = (left - right) * slope;
                re.add(piece.re);
                im.add(piece.im);
            }
            left = right;
        }
        let two_pi_i_h = Complex64::new(0.0, TAU * h as f64);
        Complex64::new(re.value(), im.value()) / (two_pi_i_h * two_pi_i_h)
    }

    /// Predicted leading term `eps_p (-h / p) / (2 pi i h)`.
    pub fn fourier_leading_term(&self, table: &SymbolTable, h: i64) -> Complex64 {
        if h == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let chi = table.get_signed(-h) as f64;
        self.prime.epsilon() * chi / Complex64::new(0.0, TAU * h as f64)
    }

    /// Writes `j,t,value` rows for every vertex.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "j,t,value")?;
        let p = self.p() as f64;
        for (j, v) in self.vertices.iter().enumerate() {
            writeln!(out, "{},{},{}", j, fmt_f64(j as f64 / p), fmt_f64(*v))?;
        }
        Ok(())
    }
}

/// Builds `f_p` for an odd prime `p`.
pub fn build_path(p: u64) -> Result<LegendrePath> {
    LegendrePath::from_table(&symbol_table(p)?)
}

/// Odd primes `p` in `[Q, 2Q]` admitted by `variant`.
pub fn family_primes(q: u64, variant: Variant) -> Result<Vec<u64>> {
    let hi = q.checked_mul(2).ok_or_else(|| Error::Domain(format!("Q = {q} overflows")))?;
    let primes: Vec<u64> = sieve_primes(q, hi)?
        .into_iter()
        .filter(|&p| p > 2 && variant.admits_prime(p))
        .collect();
    if primes.is_empty() {
        return Err(Error::EmptyRange { lo: q, hi });
    }
    Ok(primes)
}

/// Applies `f` to the path and symbol table of every prime in
/// [`family_primes`], in parallel, returning results in increasing `p`.
/// Paths are dropped as soon as `f` returns.
pub fn map_family<R, F>(q: u64, variant: Variant, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(&LegendrePath, &SymbolTable) -> Result<R> + Sync + Send,
{
    let primes = family_primes(q, variant)?;
    let builder = SymbolTableBuilder::new(2 * q)?;
    ordered_par_map(&primes, FAMILY_CHUNK, || (), |_, &p| {
        let table = builder.build(p)?;
        let path = LegendrePath::from_table(&table)?;
        f(&path, &table)
    })
    .into_iter()
    .collect()
}

/// Truncated Pólya expansion of `f_p` with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyaApproximation {
    prime: PrimeRecord,
    truncation: f64,
    error_budget: f64,
}

impl PolyaApproximation {
    pub fn new(prime: PrimeRecord, truncation: f64) -> Result<Self> {
        Self::with_constant(prime, truncation, POLYA_CONSTANT)
    }

    pub fn with_constant(prime: PrimeRecord, truncation: f64, constant: f64) -> Result<Self> {
        if !(truncation >= 1.0) || !truncation.is_finite() {
            return Err(Error::Domain(format!("truncation Z = {truncation} must be >= 1")));
        }
        if !(constant > 0.0) {
            return Err(Error::Invalid(format!("Pólya constant {constant} must be positive")));
        }
        let p = prime.p() as f64;
        let error_budget = constant * (1.0 / p.sqrt() + p.sqrt() * p.ln() / truncation);
        Ok(Self {
            prime,
            truncation,
            error_budget,
        })
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn error_budget(&self) -> f64 {
        self.error_budget
    }

    /// `(1/pi) sum_{a <= Z} (a/p) sin(2 pi a t) / a` for `p = 1 (mod 4)`, and the
    /// `1 - cos` series for `p = 3 (mod 4)`.
    pub fn eval(&self, table: &SymbolTable, t: f64) -> Result<f64> {
        check_unit_interval("t", t)?;
        if table.p() != self.prime.p() {
            return Err(Error::Invalid(format!(
                "table for p = {} used with approximation for p = {}",
                table.p(),
                self.prime.p()
            )));
        }
        let z = self.truncation.floor() as u64;
        let odd = self.prime.residue_class() == 1;
        let mut acc = CompensatedSum::default();
        for a in 1..=z {
            let chi = table.get(a);
            if chi == 0 {
                continue;
            }
            let (s, c) = sin_cos_turns(a, t);
            let shape = if odd { s } else { 1.0 - c };
            acc.add(chi as f64 * shape / a as f64);
        }
        Ok(acc.value() / PI)
    }
}

/// Pólya approximation of `f_p(t)` truncated at `Z`.
pub fn polya_approx(table: &SymbolTable, t: f64, truncation: f64) -> Result<f64> {
    PolyaApproximation::new(PrimeRecord::new(table.p())?, truncation)?.eval(table, t)
}
