//! Samples of path statistics from the prime family and from the random
//! model, and the tools to compare them.

mod refine;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{check_unit_interval, Error, Result};
use crate::legendre_path::map_family;
use crate::number_theory::CompensatedSum;
use crate::random_model::{eval_partial_series, FactorLinks, PathSampler, RademacherSample};
use crate::util::{fmt_f64, ordered_par_map};
use crate::Variant;

/// Draws handed to one worker at a time.
pub const DRAW_CHUNK: usize = 16;

/// Where a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleSource {
    Primes {
        q: u64,
        variant: Variant,
    },
    Model {
        n_terms: u64,
        grid: usize,
        count: u64,
        seed: u64,
        variant: Variant,
    },
}

/// A non-empty list of finite statistics with everything needed to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    source: SampleSource,
    metadata: BTreeMap<String, Value>,
}

impl EmpiricalSample {
    pub fn new(
        values: Vec<f64>,
        source: SampleSource,
        metadata: BTreeMap<String, Value>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("sample is empty".into()));
        }
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::Invariant(format!("non-finite sample value {x}")));
        }
        Ok(Self {
            values,
            source,
            metadata,
        })
    }

    /// A bare sample, e.g. for comparing hand-made data.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(
            values,
            SampleSource::Primes {
                q: 0,
                variant: Variant::Combined,
            },
            BTreeMap::new(),
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> SampleSource {
        self.source
    }

    pub fn metadata(&self) -> &BTreeMap<String, Value> {
        &self.metadata
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        self.values.iter().for_each(|&x| acc.add(x));
        acc.value() / self.len() as f64
    }

    /// One `value` column.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "value")?;
        for &x in &self.values {
            writeln!(out, "{}", fmt_f64(x))?;
        }
        Ok(())
    }

    /// Source, metadata and size, as written next to the CSV.
    pub fn sidecar(&self) -> Value {
        json!({
            "source": self.source,
            "metadata": self.metadata,
            "count": self.len(),
        })
    }

    /// Writes `path` as CSV and the sidecar as `path` with a `.json` extension.
    pub fn write_files(&self, path: &Path) -> Result<()> {
        self.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))?;
        let mut side = serde_json::to_string_pretty(&self.sidecar())?;
        side.push('\n');
        std::fs::write(path.with_extension("json"), side)?;
        Ok(())
    }
}

/// `sup |f_p|` for every prime `p` in `[Q, 2Q]`.
pub fn supnorm_samples_primes(q: u64) -> Result<EmpiricalSample> {
    supnorm_samples_primes_in(q, Variant::Combined)
}

/// As [`supnorm_samples_primes`], restricted to one residue class modulo 4.
pub fn supnorm_samples_primes_in(q: u64, variant: Variant) -> Result<EmpiricalSample> {
    if q == 0 {
        return Err(Error::Domain("Q must be positive".into()));
    }
    let values = map_family(q, variant, |path, _| Ok(path.sup_norm()))?;
    let metadata = BTreeMap::from([
        ("statistic".to_string(), json!("sup_norm")),
        ("q".to_string(), json!(q)),
        ("variant".to_string(), json!(variant)),
        ("primes".to_string(), json!(values.len())),
    ]);
    EmpiricalSample::new(values, SampleSource::Primes { q, variant }, metadata)
}

/// Options for model sup-norm sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSupOptions {
    /// `Plus`/`Minus` fix `X_{-1}`; `Combined` keeps the sampled sign.
    pub variant: Variant,
    /// Polish grid maxima with Newton steps on the exact series.
    pub refine: bool,
}

impl Default for ModelSupOptions {
    fn default() -> Self {
        Self {
            variant: Variant::Combined,
            refine: true,
        }
    }
}

/// Grid size used when none is given: `4N + 1` points.
pub fn default_grid(n_terms: u64) -> usize {
    4 * n_terms as usize + 1
}

fn forced_sign(variant: Variant) -> Option<i8> {
    match variant {
        Variant::Plus => Some(1),
        Variant::Minus => Some(-1),
        Variant::Combined => None,
    }
}

/// Draw `draw` of the model, conditioned on the variant's branch.
fn model_draw(seed: u64, draw: u64, links: &FactorLinks, variant: Variant) -> Result<RademacherSample> {
    let sample = RademacherSample::from_links(seed, draw, links);
    match forced_sign(variant) {
        Some(sign) => sample.with_sign_minus_one(sign),
        None => Ok(sample),
    }
}

/// `sup |F_{X,N}|` for `count` independent draws, with default options.
pub fn supnorm_samples_model(
    n_terms: u64,
    grid: usize,
    count: u64,
    seed: u64,
) -> Result<EmpiricalSample> {
    supnorm_samples_model_with(n_terms, grid, count, seed, ModelSupOptions::default())
}

pub fn supnorm_samples_model_with(
    n_terms: u64,
    grid: usize,
    count: u64,
    seed: u64,
    options: ModelSupOptions,
) -> Result<EmpiricalSample> {
    if count < 100 {
        return Err(Error::Invalid(format!("need at least 100 draws, got {count}")));
    }
    if (grid as u64) < 2 * n_terms + 2 {
        return Err(Error::Invalid(format!(
            "grid of {grid} points is too coarse for {n_terms} terms (need >= {})",
            2 * n_terms + 2
        )));
    }
    let links = FactorLinks::new(n_terms)?;
    let sampler = PathSampler::new(n_terms, grid)?;
    let draws: Vec<u64> = (0..count).collect();
    let values = ordered_par_map(
        &draws,
        DRAW_CHUNK,
        || (sampler.clone(), Vec::with_capacity(grid)),
        |(sampler, buf), &i| -> Result<f64> {
            let sample = model_draw(seed, i, &links, options.variant)?;
            sampler.eval_into(&sample, buf)?;
            Ok(if options.refine {
                refine::refined_sup(sample.values(), n_terms, sample.sign_minus_one() == 1, buf)
            } else {
                buf.iter().fold(0.0f64, |m, v| m.max(v.abs()))
            })
        },
    )
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let metadata = BTreeMap::from([
        ("statistic".to_string(), json!("sup_norm")),
        ("n_terms".to_string(), json!(n_terms)),
        ("grid".to_string(), json!(grid)),
        ("count".to_string(), json!(count)),
        ("seed".to_string(), json!(seed)),
        ("variant".to_string(), json!(options.variant)),
        ("refine".to_string(), json!(options.refine)),
    ]);
    let source = SampleSource::Model {
        n_terms,
        grid,
        count,
        seed,
        variant: options.variant,
    };
    EmpiricalSample::new(values, source, metadata)
}

/// Two-sample Kolmogorov-Smirnov statistic `sup_x |F_a(x) - F_b(x)|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Invalid("KS distance needs two non-empty samples".into()));
    }
    let sorted = |x: &[f64]| {
        let mut v = x.to_vec();
        v.sort_by(f64::total_cmp);
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

pub fn ks_distance(a: &EmpiricalSample, b: &EmpiricalSample) -> Result<f64> {
    ks_statistic(a.values(), b.values())
}

/// Source of finite-dimensional samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FdSource {
    Primes {
        q: u64,
        variant: Variant,
    },
    Model {
        n_terms: u64,
        count: u64,
        seed: u64,
        variant: Variant,
    },
}

/// One row per prime or draw, one column per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMatrix {
    pub source: FdSource,
    pub points: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl SampleMatrix {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    /// Mean of `prod_k x_k^{n_k}` over rows.
    pub fn moment(&self, exponents: &[u32]) -> f64 {
        let mut acc = CompensatedSum::default();
        for row in &self.rows {
            acc.add(row.iter().zip(exponents).map(|(x, &n)| x.powi(n as i32)).product());
        }
        acc.value() / self.rows.len() as f64
    }

    /// Header `t_1,...,t_k`, then one line per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = (1..=self.points.len()).map(|k| format!("t_{k}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn sidecar(&self) -> Value {
        json!({ "source": self.source, "points": self.points, "rows": self.rows.len() })
    }
}

fn check_points(points: &[f64]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Invalid("no points given".into()));
    }
    for &t in points {
        check_unit_interval("t", t)?;
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("points must be strictly increasing".into()));
    }
    Ok(())
}

/// `(f_p(t_1), ..., f_p(t_k))` per prime, or `(F_{X,N}(t_1), ...)` per draw.
pub fn finite_dim_samples(source: FdSource, points: &[f64]) -> Result<SampleMatrix> {
    check_points(points)?;
    let rows = match source {
        FdSource::Primes { q, variant } => map_family(q, variant, |path, _| {
            points.iter().map(|&t| path.eval(t)).collect::<Result<Vec<f64>>>()
        })?,
        FdSource::Model {
            n_terms,
            count,
            seed,
            variant,
        } => {
            if count == 0 {
                return Err(Error::Invalid("need at least one draw".into()));
            }
            let links = FactorLinks::new(n_terms)?;
            let draws: Vec<u64> = (0..count).collect();
            ordered_par_map(&draws, DRAW_CHUNK, || (), |_, &i| {
                let sample = model_draw(seed, i, &links, variant)?;
                points
                    .iter()
                    .map(|&t| eval_partial_series(&sample, n_terms, t))
                    .collect::<Result<Vec<f64>>>()
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(SampleMatrix {
        source,
        points: points.to_vec(),
        rows,
    })
}

/// `(1/#primes) sum_p |f_p(t) - f_p(s)|^power` over all primes in `[Q, 2Q]`.
pub fn prime_increment_moment(q: u64, s: f64, t: f64, power: u32) -> Result<f64> {
    prime_increment_moment_in(q, s, t, power, Variant::Combined)
}

pub fn prime_increment_moment_in(
    q: u64,
    s: f64,
    t: f64,
    power: u32,
    variant: Variant,
) -> Result<f64> {
    check_unit_interval("s", s)?;
    check_unit_interval("t", t)?;
    if s > t {
        return Err(Error::Domain(format!("increment needs s <= t, got s = {s}, t = {t}")));
    }
    if power == 0 || power % 2 == 1 {
        return Err(Error::Invalid(format!("power must be a positive even integer, got {power}")));
    }
    if q == 0 {
        return Err(Error::Domain("Q must be positive".into()));
    }
    if s == t {
        return Ok(0.0);
    }
    let terms = map_family(q, variant, |path, _| {
        Ok((path.eval(t)? - path.eval(s)?).powi(power as i32))
    })?;
    let mut acc = CompensatedSum::default();
    terms.iter().for_each(|&x| acc.add(x));
    Ok(acc.value() / terms.len() as f64)
}
