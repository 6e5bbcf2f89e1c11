//! The `legendre` experiment driver.
//!
//! Every run writes its data file to `--out` and a manifest to
//! `<out>.manifest.json` echoing the full configuration, the artifact version,
//! the worker count and the chunk sizes. `legendre replay <manifest>` reruns a
//! recorded configuration.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::distribution::{
    default_grid, finite_dim_samples, ks_distance, ks_statistic, prime_increment_moment_in,
    supnorm_samples_model_with, supnorm_samples_primes_in, EmpiricalSample, FdSource,
    ModelSupOptions, DRAW_CHUNK,
};
use crate::error::{Error, Result};
use crate::legendre_path::{build_path, FAMILY_CHUNK};
use crate::moments::{
    empirical_moment, joint_moment_report, moment_gap_with, theoretical_moment,
    theoretical_moment_matched, MomentReport, MomentRequest, PathMode, DEFAULT_TRUNCATION,
    SERIES_CHUNK,
};
use crate::random_model::{sample_signs, PathSampler, DEFAULT_CHUNK};
use crate::util::fmt_f64;
use crate::Variant;

/// Environment variable selecting the worker count.
pub const THREADS_ENV: &str = "LEGENDRE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "legendre", version, about = "Legendre paths and random multiplicative Fourier series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Vertices of the Legendre path of one prime.
    Path(PathArgs),
    /// One sample path of the random model on a uniform grid.
    Sample(SampleArgs),
    /// Theoretical, empirical, gap or Monte Carlo joint moments.
    Moment(MomentArgs),
    /// Sup-norm samples, KS distances, finite-dimensional samples, increment moments.
    Dist(DistArgs),
    /// Rerun the configuration recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct Output {
    /// Data file; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PathArgs {
    #[arg(long)]
    pub p: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub n_terms: u64,
    #[arg(long, default_value_t = 10_000)]
    pub grid: usize,
    /// Override the sampled sign at -1 (+1 or -1).
    #[arg(long, allow_negative_numbers = true)]
    pub fix_sign_minus_one: Option<i8>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentKind {
    Theoretical,
    Empirical,
    Gap,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Polya,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MomentArgs {
    #[arg(value_enum)]
    pub kind: MomentKind,
    /// Strictly increasing points in [0, 1], comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub points: Vec<f64>,
    /// One nonnegative exponent per point, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    pub variant: Variant,
    /// Series truncation A.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: u64,
    /// Cap factors at N (theoretical) or series length (mc).
    #[arg(long)]
    pub n_terms: Option<u64>,
    /// One or more Q values, comma separated; several give a sweep.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Pólya truncation Z (polya mode).
    #[arg(long)]
    pub z: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DistArgs {
    #[command(subcommand)]
    pub command: DistCommand,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "statistic", rename_all = "snake_case")]
pub enum DistCommand {
    /// Sup norms over primes or model draws.
    Supnorm(SupnormArgs),
    /// KS distance between two `value` CSV files, or primes against the model.
    Ks(KsArgs),
    /// Values at fixed points, one row per prime or draw.
    Fdd(FddArgs),
    /// Mean of |f_p(t) - f_p(s)|^power over primes.
    Increment(IncrementArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceArg {
    Primes,
    Model,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1000)]
    pub n_terms: u64,
    /// Grid points; defaults to 4N + 1.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of model draws.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Keep raw grid maxima.
    #[arg(long)]
    pub no_refine: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SupnormArgs {
    #[arg(long, value_enum, default_value_t = SourceArg::Primes)]
    pub source: SourceArg,
    #[arg(long, default_value_t = 1000)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    pub variant: Variant,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct KsArgs {
    /// First sample (`value` CSV).
    #[arg(long, requires = "b")]
    pub a: Option<PathBuf>,
    /// Second sample (`value` CSV).
    #[arg(long, requires = "a")]
    pub b: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    pub variant: Variant,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FddArgs {
    #[arg(long, value_enum, default_value_t = SourceArg::Primes)]
    pub source: SourceArg,
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub points: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    pub variant: Variant,
    #[arg(long, default_value_t = 1000)]
    pub n_terms: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct IncrementArgs {
    #[arg(long, default_value_t = 1000)]
    pub q: u64,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 4)]
    pub power: u32,
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    pub variant: Variant,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Write to this path instead of the recorded one.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a run records about itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub artifact: String,
    pub version: String,
    pub config: Command,
    pub workers: usize,
    pub chunks: Value,
    pub outputs: Vec<PathBuf>,
    pub summary: Value,
}

impl Command {
    pub fn output(&self) -> Option<&Output> {
        Some(match self {
            Command::Path(a) => &a.output,
            Command::Sample(a) => &a.output,
            Command::Moment(a) => &a.output,
            Command::Dist(d) => match &d.command {
                DistCommand::Supnorm(a) => &a.output,
                DistCommand::Ks(a) => &a.output,
                DistCommand::Fdd(a) => &a.output,
                DistCommand::Increment(a) => &a.output,
            },
            Command::Replay(_) => return None,
        })
    }

    fn output_mut(&mut self) -> Option<&mut Output> {
        Some(match self {
            Command::Path(a) => &mut a.output,
            Command::Sample(a) => &mut a.output,
            Command::Moment(a) => &mut a.output,
            Command::Dist(d) => match &mut d.command {
                DistCommand::Supnorm(a) => &mut a.output,
                DistCommand::Ks(a) => &mut a.output,
                DistCommand::Fdd(a) => &mut a.output,
                DistCommand::Increment(a) => &mut a.output,
            },
            Command::Replay(_) => return None,
        })
    }
}

/// Sizes the global pool from `LEGENDRE_THREADS` (if set) and returns the worker count.
pub fn configure_threads() -> Result<usize> {
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Invalid(format!("{THREADS_ENV} = {raw:?} is not a positive integer")))?;
        // a pool that already exists keeps its size; the manifest reports the real one
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(rayon::current_num_threads())
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_rows(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "{header}")?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// Runs one command, writing its outputs and manifest.
pub fn run(command: &Command) -> Result<Manifest> {
    if let Command::Replay(args) = command {
        let text = std::fs::read_to_string(&args.manifest)?;
        let recorded: Manifest = serde_json::from_str(&text)?;
        let mut config = recorded.config;
        if let (Some(out), Some(slot)) = (&args.out, config.output_mut()) {
            slot.out = out.clone();
        }
        if matches!(config, Command::Replay(_)) {
            return Err(Error::Invalid("a manifest cannot record a replay".into()));
        }
        return run(&config);
    }
    let workers = configure_threads()?;
    let (outputs, summary) = match command {
        Command::Path(a) => cmd_path(a)?,
        Command::Sample(a) => cmd_sample(a)?,
        Command::Moment(a) => cmd_moment(a)?,
        Command::Dist(d) => match &d.command {
            DistCommand::Supnorm(a) => cmd_supnorm(a)?,
            DistCommand::Ks(a) => cmd_ks(a)?,
            DistCommand::Fdd(a) => cmd_fdd(a)?,
            DistCommand::Increment(a) => cmd_increment(a)?,
        },
        Command::Replay(_) => unreachable!(),
    };
    let manifest = Manifest {
        artifact: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: command.clone(),
        workers,
        chunks: json!({
            "monte_carlo": DEFAULT_CHUNK,
            "model_draws": DRAW_CHUNK,
            "primes": FAMILY_CHUNK,
            "series": SERIES_CHUNK,
        }),
        outputs,
        summary,
    };
    if let Some(output) = command.output() {
        write_json(&manifest_path(&output.out), &manifest)?;
    }
    Ok(manifest)
}

type Outcome = (Vec<PathBuf>, Value);

fn cmd_path(a: &PathArgs) -> Result<Outcome> {
    let path = build_path(a.p)?;
    let out = &a.output.out;
    match a.output.format {
        Format::Csv => {
            let mut w = create(out)?;
            path.write_csv(&mut w)?;
            w.flush()?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "p": a.p,
                "residue_class": path.prime().residue_class(),
                "vertices": path.vertices(),
            }),
        )?,
    }
    let summary = json!({
        "p": a.p,
        "residue_class": path.prime().residue_class(),
        "symmetry": if path.prime().residue_class() == 3 { "even" } else { "odd" },
        "symmetry_defect": path.symmetry_defect(),
        "sup_norm": path.sup_norm(),
    });
    Ok((vec![out.clone()], summary))
}

fn cmd_sample(a: &SampleArgs) -> Result<Outcome> {
    let mut sample = sample_signs(a.seed, a.n_terms)?;
    if let Some(sign) = a.fix_sign_minus_one {
        sample = sample.with_sign_minus_one(sign)?;
    }
    let path = PathSampler::new(a.n_terms, a.grid)?.sample(&sample)?;
    let meta = json!({
        "seed": a.seed,
        "n_terms": a.n_terms,
        "grid_size": a.grid,
        "sign_minus_one": path.sign_minus_one,
    });
    let out = &a.output.out;
    let mut outputs = vec![out.clone()];
    match a.output.format {
        Format::Csv => {
            let mut w = create(out)?;
            path.write_csv(&mut w)?;
            w.flush()?;
            let side = out.with_extension("json");
            write_json(&side, &meta)?;
            outputs.push(side);
        }
        Format::Json => {
            let mut body = meta.clone();
            body["t"] = json!(path.grid);
            body["values"] = json!(path.values);
            write_json(out, &body)?;
        }
    }
    let mut summary = meta;
    summary["sup_norm"] = json!(path.sup_norm());
    Ok((outputs, summary))
}

fn path_mode(a: &MomentArgs) -> Result<PathMode> {
    match a.mode {
        ModeArg::Exact => Ok(PathMode::ExactPath),
        ModeArg::Polya => a
            .z
            .map(|z| PathMode::Polya { z })
            .ok_or_else(|| Error::Invalid("polya mode needs --z".into())),
    }
}

fn cmd_moment(a: &MomentArgs) -> Result<Outcome> {
    let request = MomentRequest::new(a.points.clone(), a.exponents.clone(), a.variant)?;
    let needs_q = matches!(a.kind, MomentKind::Empirical | MomentKind::Gap);
    if needs_q && a.q.is_empty() {
        return Err(Error::Invalid("empirical moments need --q".into()));
    }
    let reports: Vec<MomentReport> = match a.kind {
        MomentKind::Theoretical => {
            let value = match a.n_terms {
                Some(n) => theoretical_moment_matched(&request, a.truncation, n)?,
                None => theoretical_moment(&request, a.truncation)?,
            };
            let mut r = MomentReport::theoretical(&request, &value);
            r.n_terms = a.n_terms;
            vec![r]
        }
        MomentKind::Empirical => {
            let mode = path_mode(a)?;
            a.q.iter()
                .map(|&q| Ok(MomentReport::empirical(&request, &empirical_moment(&request, q, mode)?, mode)))
                .collect::<Result<_>>()?
        }
        MomentKind::Gap => {
            let mode = path_mode(a)?;
            a.q.iter()
                .map(|&q| {
                    let gap = moment_gap_with(&request, q, mode, a.truncation)?;
                    Ok(MomentReport::gap(&request, &gap, mode))
                })
                .collect::<Result<_>>()?
        }
        MomentKind::Mc => {
            let n = a
                .n_terms
                .ok_or_else(|| Error::Invalid("Monte Carlo moments need --n-terms".into()))?;
            vec![joint_moment_report(&request, n, a.trials, a.seed)?]
        }
    };
    let out = &a.output.out;
    match a.output.format {
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
            let (header, rows): (&str, Vec<Vec<String>>) = match a.kind {
                MomentKind::Theoretical => (
                    "truncation,value,tail_bound",
                    reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.truncation.unwrap_or_default().to_string(),
                                fmt_f64(r.value),
                                opt(r.tail_bound),
                            ]
                        })
                        .collect(),
                ),
                MomentKind::Empirical => (
                    "q,primes,value",
                    reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.q.unwrap_or_default().to_string(),
                                r.primes.unwrap_or_default().to_string(),
                                fmt_f64(r.value),
                            ]
                        })
                        .collect(),
                ),
                MomentKind::Gap => (
                    "q,empirical,theoretical,tail_bound,gap",
                    reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.q.unwrap_or_default().to_string(),
                                fmt_f64(r.value),
                                opt(r.theoretical),
                                opt(r.tail_bound),
                                opt(r.gap),
                            ]
                        })
                        .collect(),
                ),
                MomentKind::Mc => (
                    "trials,mean,std_error",
                    reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.trials.unwrap_or_default().to_string(),
                                fmt_f64(r.value),
                                opt(r.std_error),
                            ]
                        })
                        .collect(),
                ),
            };
            write_rows(out, header, &rows)?;
        }
    }
    Ok((vec![out.clone()], json!({ "reports": reports })))
}

fn model_sample(m: &ModelArgs, variant: Variant) -> Result<EmpiricalSample> {
    let options = ModelSupOptions {
        variant,
        refine: !m.no_refine,
    };
    let grid = m.grid.unwrap_or_else(|| default_grid(m.n_terms));
    supnorm_samples_model_with(m.n_terms, grid, m.trials, m.seed, options)
}

fn write_sample(sample: &EmpiricalSample, output: &Output) -> Result<Vec<PathBuf>> {
    let out = &output.out;
    match output.format {
        Format::Csv => {
            let mut w = create(out)?;
            sample.write_csv(&mut w)?;
            w.flush()?;
            let side = out.with_extension("json");
            write_json(&side, &sample.sidecar())?;
            Ok(vec![out.clone(), side])
        }
        Format::Json => {
            let mut body = sample.sidecar();
            body["values"] = json!(sample.values());
            write_json(out, &body)?;
            Ok(vec![out.clone()])
        }
    }
}

fn sample_summary(sample: &EmpiricalSample) -> Value {
    json!({ "count": sample.len(), "mean": sample.mean() })
}

fn cmd_supnorm(a: &SupnormArgs) -> Result<Outcome> {
    let sample = match a.source {
        SourceArg::Primes => supnorm_samples_primes_in(a.q, a.variant)?,
        SourceArg::Model => model_sample(&a.model, a.variant)?,
    };
    Ok((write_sample(&sample, &a.output)?, sample_summary(&sample)))
}

/// Reads the `value` column written by [`EmpiricalSample::write_csv`].
pub fn read_value_csv(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some("value") => {}
        other => {
            return Err(Error::Invalid(format!(
                "{}: expected header \"value\", found {other:?}",
                path.display()
            )))
        }
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.trim()
                .parse::<f64>()
                .map_err(|e| Error::Invalid(format!("{}: {l:?}: {e}", path.display())))
        })
        .collect()
}

fn cmd_ks(a: &KsArgs) -> Result<Outcome> {
    let (statistic, na, nb, sources) = match (&a.a, &a.b) {
        (Some(pa), Some(pb)) => {
            let (x, y) = (read_value_csv(pa)?, read_value_csv(pb)?);
            (ks_statistic(&x, &y)?, x.len(), y.len(), json!({ "a": pa, "b": pb }))
        }
        _ => {
            let primes = supnorm_samples_primes_in(a.q, a.variant)?;
            let model = model_sample(&a.model, a.variant)?;
            (
                ks_distance(&primes, &model)?,
                primes.len(),
                model.len(),
                json!({ "a": primes.sidecar(), "b": model.sidecar() }),
            )
        }
    };
    let out = &a.output.out;
    let body = json!({ "statistic": statistic, "count_a": na, "count_b": nb, "samples": sources });
    match a.output.format {
        Format::Csv => write_rows(
            out,
            "statistic,count_a,count_b",
            &[vec![fmt_f64(statistic), na.to_string(), nb.to_string()]],
        )?,
        Format::Json => write_json(out, &body)?,
    }
    Ok((vec![out.clone()], body))
}

fn cmd_fdd(a: &FddArgs) -> Result<Outcome> {
    let source = match a.source {
        SourceArg::Primes => FdSource::Primes {
            q: a.q,
            variant: a.variant,
        },
        SourceArg::Model => FdSource::Model {
            n_terms: a.n_terms,
            count: a.trials,
            seed: a.seed,
            variant: a.variant,
        },
    };
    let matrix = finite_dim_samples(source, &a.points)?;
    let out = &a.output.out;
    let mut outputs = vec![out.clone()];
    match a.output.format {
        Format::Csv => {
            let mut w = create(out)?;
            matrix.write_csv(&mut w)?;
            w.flush()?;
            let side = out.with_extension("json");
            write_json(&side, &matrix.sidecar())?;
            outputs.push(side);
        }
        Format::Json => write_json(out, &matrix)?,
    }
    let second: Vec<f64> = (0..a.points.len())
        .map(|k| {
            let mut e = vec![0; a.points.len()];
            e[k] = 2;
            matrix.moment(&e)
        })
        .collect();
    Ok((outputs, json!({ "rows": matrix.rows.len(), "second_moments": second })))
}

fn cmd_increment(a: &IncrementArgs) -> Result<Outcome> {
    let value = prime_increment_moment_in(a.q, a.s, a.t, a.power, a.variant)?;
    let out = &a.output.out;
    let body = json!({
        "q": a.q, "s": a.s, "t": a.t, "power": a.power, "variant": a.variant, "value": value,
    });
    match a.output.format {
        Format::Csv => write_rows(
            out,
            "q,s,t,power,variant,value",
            &[vec![
                a.q.to_string(),
                fmt_f64(a.s),
                fmt_f64(a.t),
                a.power.to_string(),
                a.variant.to_string(),
                fmt_f64(value),
            ]],
        )?,
        Format::Json => write_json(out, &body)?,
    }
    Ok((vec![out.clone()], body))
}

/// Parses `args`, runs, and maps errors to exit codes; used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli.command) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
