//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::TAU;
use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use legendre_paths::cli::{self, Cli, Command};
use legendre_paths::distribution::{
    default_grid, ks_distance, prime_increment_moment, supnorm_samples_model,
    supnorm_samples_primes,
};
use legendre_paths::legendre_path::{build_path, PolyaApproximation};
use legendre_paths::moments::{
    empirical_moment, increment_fourth_moment_exact, theoretical_moment,
    theoretical_moment_matched, MomentRequest, PathMode,
};
use legendre_paths::number_theory::{gauss_sum, legendre_symbol, sieve_primes, symbol_table};
use legendre_paths::random_model::{increment_fourth_moment_mc, joint_moment_mc};
use legendre_paths::{Result, Variant};

struct Outcome {
    pass: bool,
    detail: String,
    limit: Option<Duration>,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail, limit: None })
}

fn within(limit: Duration, r: Result<Outcome>) -> Result<Outcome> {
    r.map(|o| Outcome { limit: Some(limit), ..o })
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn odd_primes_below(n: u64) -> Vec<u64> {
    sieve_primes(3, n - 1).unwrap()
}

fn gauss_identity() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for p in odd_primes_below(2000) {
        let direct = gauss_sum(&symbol_table(p)?)?;
        let root = (p as f64).sqrt();
        let closed = if p % 4 == 1 {
            Complex64::new(root, 0.0)
        } else {
            Complex64::new(0.0, root)
        };
        worst = worst.max((direct - closed).norm() / root);
    }
    outcome(worst <= 1e-6, format!("max |direct - closed| / sqrt(p) = {worst:.2e}"))
}

fn path_invariants() -> Result<Outcome> {
    let primes = odd_primes_below(10_000);
    let mut bad = Vec::new();
    for &p in &primes {
        let path = build_path(p)?;
        let v = path.vertices();
        let p = p as usize;
        let step = 1.0 / (p as f64).sqrt();
        let ends = v.len() == p + 1 && v[0] == 0.0 && v[p - 1] == 0.0 && v[p] == 0.0;
        let steps = (1..p).all(|j| ((v[j] - v[j - 1]).abs() - step).abs() <= 1e-12);
        if !(ends && steps && path.symmetry_defect() == 0.0 && path.check_invariants().is_ok()) {
            bad.push(p);
        }
    }
    outcome(bad.is_empty(), format!("{} primes checked, failures {bad:?}", primes.len()))
}

fn polya_accuracy() -> Result<Outcome> {
    let pool = sieve_primes(1000, 10_000)?;
    let primes: Vec<u64> = (0..20).map(|i| pool[i * (pool.len() - 1) / 19]).collect();
    let mut worst = 0.0f64;
    for &p in &primes {
        let table = symbol_table(p)?;
        let path = build_path(p)?;
        let pf = p as f64;
        for z in [pf, 4.0 * pf] {
            let approx = PolyaApproximation::new(path.prime(), z)?;
            let envelope = 10.0 * (1.0 / pf.sqrt() + pf.sqrt() * pf.ln() / z);
            for i in 0..100 {
                let t = (i as f64 + 0.5) / 100.0;
                let err = (approx.eval(&table, t)? - path.eval(t)?).abs();
                worst = worst.max(err / envelope);
            }
        }
    }
    outcome(worst <= 1.0, format!("max error / envelope = {worst:.4}"))
}

/// `E |F(t) - F(s)|^4` by averaging over every sign choice of `X_2, X_3, X_5, X_-1`.
fn exhaustive_fourth_moment(n_terms: i64, s: f64, t: f64) -> f64 {
    let mut total = 0.0;
    for mask in 0..16u32 {
        let sign = |bit: u32| if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
        let x = |n: i64| -> f64 {
            let mut m = n.abs();
            let mut v = if n < 0 { sign(3) } else { 1.0 };
            for (q, bit) in [(2, 0), (3, 1), (5, 2)] {
                while m % q == 0 {
                    v *= sign(bit);
                    m /= q;
                }
            }
            assert_eq!(m, 1);
            v
        };
        let mut inc = Complex64::new(0.0, 0.0);
        for n in (-n_terms..=n_terms).filter(|&n| n != 0) {
            let e = |u: f64| Complex64::from_polar(1.0, TAU * n as f64 * u);
            inc += x(n) * (e(t) - e(s)) / n as f64;
        }
        total += (inc / TAU).norm().powi(4);
    }
    total / 16.0
}

fn exact_vs_exhaustive() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (s, t) in [(0.1, 0.2), (0.3, 0.7), (0.0, 1.0)] {
        for n in 1..=6 {
            let exact = increment_fourth_moment_exact(n, s, t)?;
            worst = worst.max((exact - exhaustive_fourth_moment(n as i64, s, t)).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max difference {worst:.2e}"))
}

fn exact_vs_mc() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in [16, 64] {
        for (i, (s, t)) in [(0.1, 0.2), (0.3, 0.7), (0.05, 0.5)].into_iter().enumerate() {
            let exact = increment_fourth_moment_exact(n, s, t)?;
            let mc = increment_fourth_moment_mc(n, s, t, 5000, 100 + i as u64)?;
            worst = worst.max((exact - mc.mean).abs() / mc.std_error);
        }
    }
    outcome(worst <= 4.0, format!("max |exact - mc| = {worst:.2} standard errors"))
}

fn tightness_envelope() -> Result<Outcome> {
    let pairs = [
        (0.1, 0.11),
        (0.6, 0.62),
        (0.2, 0.25),
        (0.3, 0.4),
        (0.05, 0.25),
        (0.4, 0.7),
        (0.0, 0.5),
        (0.25, 0.75),
        (0.5, 0.9),
        (0.15, 0.85),
    ];
    let mut worst = 0.0f64;
    for (i, (s, t)) in pairs.into_iter().enumerate() {
        let mc = increment_fourth_moment_mc(10_000, s, t, 2000, 200 + i as u64)?;
        worst = worst.max(mc.mean / f64::powf(t - s, 1.5));
    }
    outcome(worst <= 50.0, format!("max E|dF|^4 / |t-s|^1.5 = {worst:.3} (limit 50)"))
}

fn second_moment_vs_mc() -> Result<Outcome> {
    let request = MomentRequest::single(0.25, 2, Variant::Plus)?;
    let series = theoretical_moment_matched(&request, 10_000, 10_000)?;
    let mc = joint_moment_mc(&[0.25], &[2], Variant::Plus, 10_000, 100_000, 7)?;
    let z = (series.value - mc.mean).abs() / mc.std_error;
    outcome(
        z <= 4.0 && series.tail_bound == 0.0,
        format!(
            "series {:.6} (tail {:.1e}), mc {:.6} +- {:.6}, {z:.2} standard errors",
            series.value, series.tail_bound, mc.mean, mc.std_error
        ),
    )
}

fn moment_convergence() -> Result<Outcome> {
    let request = MomentRequest::single(0.3, 2, Variant::Combined)?;
    let limit = theoretical_moment(&request, 1_000_000)?;
    let gaps = [1_000, 10_000, 100_000]
        .into_iter()
        .map(|q| Ok((empirical_moment(&request, q, PathMode::ExactPath)?.value - limit.value).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let rises = gaps.windows(2).filter(|w| w[1] > w[0]).count();
    outcome(
        gaps[2] <= 0.05 && rises <= 1,
        format!(
            "limit {:.6} (tail {:.1e}), gaps {:.4} / {:.4} / {:.4}",
            limit.value, limit.tail_bound, gaps[0], gaps[1], gaps[2]
        ),
    )
}

fn fourier_coefficients() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut zero = 0.0f64;
    for p in [991u64, 997] {
        let path = build_path(p)?;
        let eps = if p % 4 == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        zero = zero.max(path.fourier_coefficient(0).norm());
        for h in (-10i64..=10).filter(|&h| h != 0) {
            let lead = eps * legendre_symbol(-h, p) as f64 / Complex64::new(0.0, TAU * h as f64);
            let err = (path.fourier_coefficient(h) - lead).norm();
            worst = worst.max(err / (5.0 * h.abs() as f64 / (p as f64).sqrt()));
        }
    }
    outcome(
        worst <= 1.0 && zero <= 1e-12,
        format!("max error / (5|h|/sqrt(p)) = {worst:.2e}, |FT(0)| = {zero:.1e}"),
    )
}

fn prime_increments() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let q = 1000;
    let mut trivial = 0.0f64;
    for _ in 0..10 {
        let width = uniform(&mut rng) / (2.0 * q as f64);
        let s = uniform(&mut rng) * (1.0 - width);
        let t = s + width;
        let m = prime_increment_moment(q, s, t, 4)?;
        trivial = trivial.max(m / (t - s).powi(2));
    }
    let mut mid = 0.0f64;
    for _ in 0..5 {
        let width = 0.05 + 0.45 * uniform(&mut rng);
        let s = uniform(&mut rng) * (1.0 - width);
        let t = s + width;
        let m = prime_increment_moment(10_000, s, t, 4)?;
        mid = mid.max(m / (t - s).powf(1.001));
    }
    outcome(
        trivial <= 1.0 && mid <= 10.0,
        format!("trivial range ratio {trivial:.3e} (limit 1), mid range ratio {mid:.3} (limit 10)"),
    )
}

fn supnorm_distribution() -> Result<Outcome> {
    let primes = supnorm_samples_primes(100_000)?;
    let model = supnorm_samples_model(20_000, default_grid(20_000), 5000, 11)?;
    let ks = ks_distance(&primes, &model)?;
    outcome(
        ks <= 0.15,
        format!(
            "KS {ks:.4} ({} primes, mean {:.4}; {} draws, mean {:.4})",
            primes.len(),
            primes.mean(),
            model.len(),
            model.mean()
        ),
    )
}

fn parse(line: &str) -> Command {
    Cli::try_parse_from(std::iter::once("legendre").chain(line.split_whitespace()))
        .unwrap_or_else(|e| panic!("{line}: {e}"))
        .command
}

fn determinism() -> Result<Outcome> {
    let dir = tempfile::tempdir()?;
    let d = dir.path();
    let p = |name: &str| d.join(name).display().to_string();
    let model = "--n-terms 256 --grid 1025 --trials 120 --seed 3";
    let lines = [
        format!("path --p 991 --out {}", p("path.csv")),
        format!("path --p 997 --format json --out {}", p("path.json")),
        format!("sample --seed 5 --n-terms 500 --grid 2000 --out {}", p("sample.csv")),
        format!("sample --seed 5 --n-terms 500 --grid 2000 --fix-sign-minus-one -1 --out {}", p("sample_minus.csv")),
        format!("moment theoretical --points 0.2,0.6 --exponents 1,1 --truncation 20000 --out {}", p("th.csv")),
        format!("moment theoretical --points 0.3 --exponents 2 --variant plus --n-terms 300 --truncation 300 --out {}", p("matched.json")),
        format!("moment empirical --points 0.3 --exponents 2 --q 200,400 --out {}", p("emp.csv")),
        format!("moment empirical --points 0.3 --exponents 2 --q 200 --mode polya --z 2000 --out {}", p("polya.csv")),
        format!("moment gap --points 0.3 --exponents 2 --q 100,300 --truncation 20000 --out {}", p("gap.csv")),
        format!("moment mc --points 0.3 --exponents 2 --n-terms 300 --trials 500 --seed 9 --out {}", p("mc.csv")),
        format!("dist supnorm --q 300 --out {}", p("sup_primes.csv")),
        format!("dist supnorm --source model {model} --out {}", p("sup_model.csv")),
        format!("dist ks --q 300 {model} --out {}", p("ks.csv")),
        format!("dist ks --a {} --b {} --out {}", p("sup_primes.csv"), p("sup_model.csv"), p("ks_files.csv")),
        format!("dist fdd --points 0.25,0.5 --q 300 --out {}", p("fdd_primes.csv")),
        format!("dist fdd --source model --points 0.25,0.5 --n-terms 256 --trials 120 --out {}", p("fdd_model.csv")),
        format!("dist increment --q 300 --s 0.1 --t 0.3 --out {}", p("inc.csv")),
    ];
    let mut mismatched = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let first = cli::run(&parse(line))?;
        let out = first.config.output().unwrap().out.clone();
        let replay_out = d.join(format!("replay_{i}")).join(out.file_name().unwrap());
        let replay = parse(&format!(
            "replay {} --out {}",
            cli::manifest_path(&out).display(),
            replay_out.display()
        ));
        let second = cli::run(&replay)?;
        let same = first.outputs.len() == second.outputs.len()
            && first.outputs.iter().zip(&second.outputs).all(|(a, b)| same_bytes(a, b))
            && first.summary == second.summary;
        if !same {
            mismatched.push(line.split(" --out").next().unwrap().to_string());
        }
    }
    outcome(
        mismatched.is_empty(),
        format!("{} runs replayed, mismatches {mismatched:?}", lines.len()),
    )
}

fn same_bytes(a: &Path, b: &Path) -> bool {
    matches!((std::fs::read(a), std::fs::read(b)), (Ok(x), Ok(y)) if x == y)
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("gauss sum identity", Box::new(|| within(Duration::from_secs(5), gauss_identity()))),
        ("path invariants", Box::new(|| within(Duration::from_secs(30), path_invariants()))),
        ("polya accuracy", Box::new(|| within(Duration::from_secs(60), polya_accuracy()))),
        ("exact vs exhaustive fourth moment", Box::new(|| within(Duration::from_secs(1), exact_vs_exhaustive()))),
        ("exact vs monte carlo fourth moment", Box::new(|| within(Duration::from_secs(60), exact_vs_mc()))),
        ("tightness envelope", Box::new(tightness_envelope)),
        ("second moment vs monte carlo", Box::new(|| within(Duration::from_secs(120), second_moment_vs_mc()))),
        ("moment convergence", Box::new(|| within(Duration::from_secs(300), moment_convergence()))),
        ("fourier coefficients", Box::new(|| within(Duration::from_secs(5), fourier_coefficients()))),
        ("prime increment moments", Box::new(|| within(Duration::from_secs(120), prime_increments()))),
        ("sup-norm distribution", Box::new(|| within(Duration::from_secs(600), supnorm_distribution()))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => {
                let late = o.limit.is_some_and(|l| elapsed > l);
                let mut detail = o.detail;
                if late {
                    detail.push_str(&format!("; over the {:?} budget", o.limit.unwrap()));
                }
                (o.pass && !late, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        failures += !pass as usize;
        println!(
            "criterion {:>2} {}: {name}: {detail} [{:.1} s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

