use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use legendre_paths::moments::{
    b_coefficient, divisor_function, empirical_moment, moment_gap, tail_majorant,
    theoretical_moment, theoretical_moment_matched, MomentRequest, PathMode,
};
use legendre_paths::number_theory::factorize_trial;
use legendre_paths::{Error, Variant};

fn shape(variant: Variant, b: u64, t: f64) -> f64 {
    let x = TAU * (b as f64) * t;
    match variant {
        Variant::Plus => x.sin(),
        _ => 1.0 - x.cos(),
    }
}

/// Sum over ordered factorizations `a = b_1 ... b_n`, factor `j` evaluated at `slots[j]`.
fn enumerate(variant: Variant, a: u64, slots: &[f64]) -> f64 {
    match slots {
        [] => (a == 1) as u8 as f64,
        [t, rest @ ..] => (1..=a)
            .filter(|d| a % d == 0)
            .map(|d| shape(variant, d, *t) * enumerate(variant, a / d, rest))
            .sum(),
    }
}

fn slots(points: &[f64], exponents: &[u32]) -> Vec<f64> {
    points
        .iter()
        .zip(exponents)
        .flat_map(|(&t, &n)| std::iter::repeat(t).take(n as usize))
        .collect()
}

#[test]
fn coefficient_examples() {
    let r = MomentRequest::single(0.25, 2, Variant::Plus).unwrap();
    assert!((b_coefficient(Variant::Plus, &r, 9).unwrap() - 3.0).abs() < 1e-12);
    let r = MomentRequest::single(0.5, 1, Variant::Plus).unwrap();
    for a in 1..50 {
        assert!(b_coefficient(Variant::Plus, &r, a).unwrap().abs() < 1e-12);
    }
    assert!((b_coefficient(Variant::Minus, &r, 3).unwrap() - 2.0).abs() < 1e-12);
    assert!(matches!(b_coefficient(Variant::Combined, &r, 3), Err(Error::Invalid(_))));
}

#[test]
fn coefficients_match_enumeration_in_any_order() {
    let points = [0.13, 0.4, 0.77];
    let exponents = [2u32, 1, 1];
    let r = MomentRequest::new(points.to_vec(), exponents.to_vec(), Variant::Plus).unwrap();
    let orders = [[0, 1, 2], [2, 1, 0], [1, 0, 2], [1, 2, 0]];
    for variant in [Variant::Plus, Variant::Minus] {
        for a in [1u64, 2, 6, 12, 30, 64, 360, 1001, 2310] {
            let lib = b_coefficient(variant, &r, a).unwrap();
            for order in orders {
                let p: Vec<f64> = order.iter().map(|&i| points[i]).collect();
                let e: Vec<u32> = order.iter().map(|&i| exponents[i]).collect();
                let oracle = enumerate(variant, a, &slots(&p, &e));
                assert!((lib - oracle).abs() < 1e-9 * (1.0 + oracle.abs()), "{variant} a = {a}");
            }
        }
    }
}

#[test]
fn divisor_function_values() {
    assert_eq!(divisor_function(2, 12), 6.0);
    assert_eq!(divisor_function(3, 4), 6.0);
    assert_eq!(divisor_function(1, 97), 1.0);
    for m in 1..200u64 {
        let d3: usize = (1..=m).filter(|d| m % d == 0).map(|d| (1..=m / d).filter(|e| (m / d) % e == 0).count()).sum();
        assert_eq!(divisor_function(3, m), d3 as f64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn coefficient_bounds(
        a in 1u64..=10_000,
        t1 in 0.0f64..0.5,
        t2 in 0.5f64..1.0,
        n1 in 0u32..=2,
        n2 in 1u32..=2,
    ) {
        prop_assume!(t1 < t2);
        let r = MomentRequest::new(vec![t1, t2], vec![n1, n2], Variant::Plus).unwrap();
        let n = n1 + n2;
        let d = divisor_function(n, a);
        let plus = b_coefficient(Variant::Plus, &r, a).unwrap();
        let minus = b_coefficient(Variant::Minus, &r, a).unwrap();
        prop_assert!(plus.abs() <= d * (1.0 + 1e-12));
        prop_assert!(minus.abs() <= 2f64.powi(n as i32) * d * (1.0 + 1e-12));
    }
}

#[test]
fn vanishing_branches() {
    let r = MomentRequest::single(0.5, 1, Variant::Plus).unwrap();
    let v = theoretical_moment(&r, 100_000).unwrap();
    assert_eq!((v.value, v.tail_bound), (0.0, 0.0));
    let r = MomentRequest::single(1.0, 3, Variant::Minus).unwrap();
    assert_eq!(theoretical_moment(&r, 1000).unwrap().value, 0.0);
}

#[test]
fn combined_is_mean_of_branches() {
    let r = MomentRequest::new(vec![0.2, 0.45], vec![2, 1], Variant::Combined).unwrap();
    let c = theoretical_moment(&r, 50_000).unwrap();
    let p = theoretical_moment(&r.with_variant(Variant::Plus), 50_000).unwrap();
    let m = theoretical_moment(&r.with_variant(Variant::Minus), 50_000).unwrap();
    assert_eq!(c.value, (p.value + m.value) / 2.0);
    assert_eq!(c.tail_bound, (p.tail_bound + m.tail_bound) / 2.0);
    assert!(p.tail_bound >= 0.0 && m.tail_bound >= p.tail_bound);
}

#[test]
fn reflection_identities() {
    for n in 1..=4u32 {
        for t in [0.1, 0.3, 0.45] {
            let a = MomentRequest::single(t, n, Variant::Plus).unwrap();
            let b = MomentRequest::single(1.0 - t, n, Variant::Plus).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let (x, y) = (theoretical_moment(&a, 20_000).unwrap(), theoretical_moment(&b, 20_000).unwrap());
            assert!((x.value - sign * y.value).abs() < 1e-9, "plus n = {n}, t = {t}");
            let (x, y) = (
                theoretical_moment(&a.with_variant(Variant::Minus), 20_000).unwrap(),
                theoretical_moment(&b.with_variant(Variant::Minus), 20_000).unwrap(),
            );
            assert!((x.value - y.value).abs() < 1e-9, "minus n = {n}, t = {t}");
        }
    }
}

#[test]
fn even_moments_nonnegative() {
    for n in [2u32, 4, 6] {
        for t in [0.05, 0.2, 0.37, 0.5, 0.9] {
            let r = MomentRequest::single(t, n, Variant::Plus).unwrap();
            let v = theoretical_moment(&r, 20_000).unwrap();
            assert!(v.value >= -v.tail_bound, "n = {n}, t = {t}: {v:?}");
        }
    }
}

#[test]
fn moment_growth_envelope() {
    let a_max = 5000u64;
    for m in 1..=3u32 {
        let n = 2 * m;
        let partial: f64 = (1..=a_max)
            .map(|a| divisor_function(n, a * a) / (a * a) as f64)
            .sum::<f64>()
            / PI.powi(n as i32);
        for t in [0.1, 0.25, 0.4] {
            let r = MomentRequest::single(t, n, Variant::Combined).unwrap();
            let v = theoretical_moment(&r, a_max).unwrap();
            let envelope = (2f64.powi(m as i32) * 2.0 + 1.0) / 2.0 * partial + v.tail_bound;
            assert!(v.value <= envelope, "m = {m}, t = {t}: {} > {envelope}", v.value);
        }
    }
}

#[test]
fn tail_majorant_shrinks() {
    for n in 1..=4 {
        let mut last = f64::INFINITY;
        for a in [100u64, 1000, 10_000, 100_000] {
            let tail = tail_majorant(n, a);
            assert!(tail > 0.0 && tail < last, "n = {n}, A = {a}");
            last = tail;
        }
    }
}

#[test]
fn matched_truncation_is_exact() {
    let r = MomentRequest::single(0.25, 2, Variant::Plus).unwrap();
    let v = theoretical_moment_matched(&r, 10_000, 10_000).unwrap();
    assert_eq!(v.tail_bound, 0.0);
    // E X_b X_c = 1 exactly when b c is a square, i.e. b and c share a squarefree kernel
    let mut classes = vec![0.0; 10_001];
    for b in 1..=10_000u64 {
        let kernel: u64 = factorize_trial(b).into_iter().filter(|&(_, k)| k % 2 == 1).map(|(q, _)| q).product();
        classes[kernel as usize] += (TAU * b as f64 * 0.25).sin() / b as f64;
    }
    let direct = classes.iter().map(|x| x * x).sum::<f64>() / PI.powi(2);
    assert!((v.value - direct).abs() < 1e-12, "{} vs {direct}", v.value);
}

#[test]
fn request_validation() {
    assert!(matches!(MomentRequest::single(1.5, 2, Variant::Plus), Err(Error::Domain(_))));
    assert!(MomentRequest::new(vec![0.3, 0.2], vec![1, 1], Variant::Plus).is_err());
    assert!(MomentRequest::new(vec![0.3], vec![1, 1], Variant::Plus).is_err());
    assert!(MomentRequest::new(vec![0.3, 0.5], vec![0, 0], Variant::Plus).is_err());
    let r = MomentRequest::new(vec![0.3, 0.5], vec![0, 3], Variant::Plus).unwrap();
    assert_eq!(r.total_degree(), 3);
}

#[test]
fn empirical_endpoints_and_gap() {
    let r = MomentRequest::new(vec![0.0, 0.4], vec![1, 1], Variant::Combined).unwrap();
    assert_eq!(empirical_moment(&r, 500, PathMode::ExactPath).unwrap().value, 0.0);
    let r = MomentRequest::single(0.5, 1, Variant::Plus).unwrap();
    let g = moment_gap(&r, 1000).unwrap();
    assert_eq!(g.theoretical.value, 0.0);
    assert_eq!(g.gap, g.empirical.value.abs());
}

#[test]
fn finite_dimensional_second_moment() {
    use legendre_paths::distribution::{finite_dim_samples, FdSource};
    let m = finite_dim_samples(FdSource::Primes { q: 10_000, variant: Variant::Combined }, &[0.0, 0.25, 1.0]).unwrap();
    assert!(m.column(0).iter().all(|&x| x == 0.0));
    assert!(m.column(2).iter().all(|&x| x == 0.0));
    let r = MomentRequest::single(0.25, 2, Variant::Combined).unwrap();
    let limit = theoretical_moment(&r, 1_000_000).unwrap();
    let second = m.moment(&[0, 2, 0]);
    assert!((second - limit.value).abs() <= 0.05, "{second} vs {}", limit.value);
}
