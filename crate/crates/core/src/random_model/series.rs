//! Partial sums `F_{X,N}(t)` of the random Fourier series.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::RademacherSample;
use crate::error::{check_unit_interval, Error, Result};
use crate::number_theory::CompensatedSum;
use crate::util::{fmt_f64, sin_cos_turns};

fn check_terms(sample: &RademacherSample, n_terms: u64) -> Result<()> {
    if n_terms > sample.prime_cutoff() {
        return Err(Error::capacity(
            "series length (exceeds the sample's prime cutoff)",
            n_terms,
            sample.prime_cutoff(),
        ));
    }
    Ok(())
}

/// `F_{X,N}(t)`: the sine series when `X_{-1} = +1`, the `1 - cos` series
/// when `X_{-1} = -1`, each scaled by `1/pi`.
pub fn eval_partial_series(sample: &RademacherSample, n_terms: u64, t: f64) -> Result<f64> {
    check_unit_interval("t", t)?;
    check_terms(sample, n_terms)?;
    Ok(direct_value(sample, n_terms, t))
}

fn direct_value(sample: &RademacherSample, n_terms: u64, t: f64) -> f64 {
    let values = sample.values();
    let odd = sample.sign_minus_one() == 1;
    let mut acc = CompensatedSum::default();
    for n in 1..=n_terms {
        let (s, c) = sin_cos_turns(n, t);
        let shape = if odd { s } else { 1.0 - c };
        acc.add(values[n as usize] as f64 * shape / n as f64);
    }
    acc.value() / PI
}

/// Values of `F_{X,N}` on the uniform grid `t_j = j / (grid_size - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPath {
    pub n_terms: u64,
    pub sign_minus_one: i8,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl ModelPath {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `t,value` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,value")?;
        for (t, v) in self.grid.iter().zip(&self.values) {
            writeln!(out, "{},{}", fmt_f64(*t), fmt_f64(*v))?;
        }
        Ok(())
    }
}

/// Evaluates many draws on one grid, reusing an FFT plan and buffers.
///
/// With `L = grid_size - 1 >= 2N + 1`, all frequencies `1..=N` fit below `L`
/// and one length-`L` inverse DFT of the coefficients `X_n / n` yields the
/// sine and cosine sums at every grid point.
pub struct PathSampler {
    n_terms: u64,
    grid_size: usize,
    fft: Option<Arc<dyn Fft<f64>>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl std::fmt::Debug for PathSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PathSampler")
            .field("n_terms", &self.n_terms)
            .field("grid_size", &self.grid_size)
            .field("fast", &self.fft.is_some())
            .finish()
    }
}

impl Clone for PathSampler {
    fn clone(&self) -> Self {
        Self {
            n_terms: self.n_terms,
            grid_size: self.grid_size,
            fft: self.fft.clone(),
            buffer: vec![Complex64::default(); self.buffer.len()],
            scratch: vec![Complex64::default(); self.scratch.len()],
        }
    }
}

impl PathSampler {
    pub fn new(n_terms: u64, grid_size: usize) -> Result<Self> {
        if grid_size < 2 {
            return Err(Error::Invalid(format!("grid size {grid_size} must be >= 2")));
        }
        if n_terms == 0 {
            return Err(Error::Invalid("series needs at least one term".into()));
        }
        let fast = grid_size as u64 >= 2 * n_terms + 2;
        Ok(Self::with_mode(n_terms, grid_size, fast))
    }

    /// Forces direct summation even on fine grids.
    pub fn direct(n_terms: u64, grid_size: usize) -> Result<Self> {
        let mut s = Self::new(n_terms, grid_size)?;
        s.fft = None;
        s.buffer.clear();
        s.scratch.clear();
        Ok(s)
    }

    fn with_mode(n_terms: u64, grid_size: usize, fast: bool) -> Self {
        if !fast {
            return Self {
                n_terms,
                grid_size,
                fft: None,
                buffer: Vec::new(),
                scratch: Vec::new(),
            };
        }
        let len = grid_size - 1;
        let fft = FftPlanner::new().plan_fft_inverse(len);
        let scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        Self {
            n_terms,
            grid_size,
            fft: Some(fft),
            buffer: vec![Complex64::default(); len],
            scratch,
        }
    }

    pub fn is_fast(&self) -> bool {
        self.fft.is_some()
    }

    pub fn n_terms(&self) -> u64 {
        self.n_terms
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn grid(&self) -> Vec<f64> {
        let last = (self.grid_size - 1) as f64;
        (0..self.grid_size).map(|j| j as f64 / last).collect()
    }

    /// Fills `out` (length `grid_size`) with `F_{X,N}(t_j)`.
    pub fn eval_into(&mut self, sample: &RademacherSample, out: &mut Vec<f64>) -> Result<()> {
        check_terms(sample, self.n_terms)?;
        out.clear();
        let odd = sample.sign_minus_one() == 1;
        let values = sample.values();
        match &self.fft {
            None => {
                let last = (self.grid_size - 1) as f64;
                out.extend(
                    (0..self.grid_size).map(|j| direct_value(sample, self.n_terms, j as f64 / last)),
                );
            }
            Some(fft) => {
                self.buffer.fill(Complex64::default());
                let mut total = CompensatedSum::default();
                for n in 1..=self.n_terms as usize {
                    let c = values[n] as f64 / n as f64;
                    self.buffer[n].re = c;
                    total.add(c);
                }
                fft.process_with_scratch(&mut self.buffer, &mut self.scratch);
                let total = total.value();
                out.extend(self.buffer.iter().map(|z| {
                    if odd {
                        z.im / PI
                    } else {
                        (total - z.re) / PI
                    }
                }));
                // t = 1 coincides with t = 0 modulo 1
                out.push(out[0]);
                out[0] = 0.0;
                let last = out.len() - 1;
                out[last] = 0.0;
            }
        }
        Ok(())
    }

    pub fn sample(&mut self, sample: &RademacherSample) -> Result<ModelPath> {
        let mut values = Vec::with_capacity(self.grid_size);
        self.eval_into(sample, &mut values)?;
        Ok(ModelPath {
            n_terms: self.n_terms,
            sign_minus_one: sample.sign_minus_one(),
            grid: self.grid(),
            values,
        })
    }
}

/// `F_{X,N}` on `grid_size` equispaced points of `[0, 1]`.
pub fn sample_model_path(
    sample: &RademacherSample,
    n_terms: u64,
    grid_size: usize,
) -> Result<ModelPath> {
    PathSampler::new(n_terms, grid_size)?.sample(sample)
}
