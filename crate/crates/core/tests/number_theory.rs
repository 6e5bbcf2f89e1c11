use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use legendre_paths::number_theory::{
    gauss_sum, gauss_sum_closed_form, is_prime, jacobi, legendre_symbol, sieve_primes,
    symbol_table, PrimeRecord, SmallestPrimeFactor, SymbolTableBuilder,
};
use legendre_paths::Error;

fn plain_sieve(limit: usize) -> Vec<bool> {
    let mut prime = vec![true; limit + 1];
    prime[0] = false;
    prime[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if prime[i] {
            for j in (i * i..=limit).step_by(i) {
                prime[j] = false;
            }
        }
        i += 1;
    }
    prime
}

fn euler_criterion(a: u64, p: u64) -> i8 {
    let (mut base, mut e, mut acc) = (a % p, (p - 1) / 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    match acc {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[test]
fn prime_count_one_to_two_million() {
    let primes = sieve_primes(1_000_000, 2_000_000).unwrap();
    assert_eq!(primes.len(), 70435);
    let oracle = plain_sieve(2_000_000);
    let expected: Vec<u64> = (1_000_000..=2_000_000u64).filter(|&n| oracle[n as usize]).collect();
    assert_eq!(primes, expected);
}

#[test]
fn primality_and_spf_agree_with_sieve() {
    let oracle = plain_sieve(100_000);
    let spf = SmallestPrimeFactor::new(100_000).unwrap();
    for n in 2..=100_000u64 {
        assert_eq!(is_prime(n), oracle[n as usize], "{n}");
        let q = spf.get(n).unwrap();
        assert!(oracle[q as usize] && n % q == 0);
        assert!((2..q).all(|d| n % d != 0));
    }
}

#[test]
fn gauss_sums_below_ten_thousand() {
    for p in sieve_primes(3, 10_000).unwrap() {
        let table = symbol_table(p).unwrap();
        let direct = gauss_sum(&table).unwrap();
        let root = (p as f64).sqrt();
        let closed = if p % 4 == 1 {
            Complex64::new(root, 0.0)
        } else {
            Complex64::new(0.0, root)
        };
        assert!((direct - closed).norm() <= 1e-6 * root, "p = {p}: {direct}");
        assert!((gauss_sum_closed_form(&PrimeRecord::new(p).unwrap()) - closed).norm() < 1e-12);
    }
}

#[test]
fn gauss_sum_naive_summation_small() {
    for p in [3u64, 5, 7, 11, 13, 101] {
        let mut sum = Complex64::new(0.0, 0.0);
        for a in 1..p {
            sum += euler_criterion(a, p) as f64 * Complex64::from_polar(1.0, TAU * a as f64 / p as f64);
        }
        let lib = gauss_sum(&symbol_table(p).unwrap()).unwrap();
        assert!((sum - lib).norm() < 1e-12, "p = {p}");
    }
}

#[test]
fn tables_match_euler_and_reciprocity() {
    let builder = SymbolTableBuilder::new(5000).unwrap();
    for p in sieve_primes(3, 5000).unwrap() {
        let table = builder.build(p).unwrap();
        assert_eq!(table.p(), p);
        assert_eq!(table.as_slice().len(), p as usize);
        assert_eq!(table.get(0), 0);
        let sum: i64 = table.nonzero_values().iter().map(|&x| x as i64).sum();
        assert_eq!(sum, 0, "p = {p}");
        for j in 0..p {
            let expected = euler_criterion(j, p);
            assert_eq!(table.get(j), expected, "({j}/{p})");
            assert_eq!(legendre_symbol(j as i64, p), expected);
        }
        assert_eq!(legendre_symbol(-1, p), if p % 4 == 1 { 1 } else { -1 });
    }
    assert!(builder.build(5003).is_err());
}

#[test]
fn composite_and_even_moduli_rejected() {
    for n in [0u64, 1, 2, 4, 9, 15, 561] {
        assert!(matches!(symbol_table(n), Err(Error::NotOddPrime(m)) if m == n));
        assert!(matches!(PrimeRecord::new(n), Err(Error::NotOddPrime(_))));
    }
    assert_eq!(symbol_table(4).unwrap_err().to_string(), "4 is not an odd prime");
}

#[test]
fn classes_and_epsilon() {
    let r = PrimeRecord::new(13).unwrap();
    assert_eq!((r.residue_class(), r.sign()), (1, 1));
    assert_eq!(r.epsilon(), Complex64::new(1.0, 0.0));
    let r = PrimeRecord::new(7).unwrap();
    assert_eq!((r.residue_class(), r.sign()), (3, -1));
    assert_eq!(r.epsilon(), Complex64::new(0.0, 1.0));
}

proptest! {
    #[test]
    fn symbol_is_completely_multiplicative(a in -5000i64..5000, b in -5000i64..5000, k in 1usize..300) {
        let p = sieve_primes(3, 2000).unwrap()[k];
        prop_assert_eq!(
            legendre_symbol(a * b, p),
            legendre_symbol(a, p) * legendre_symbol(b, p)
        );
        let table = symbol_table(p).unwrap();
        prop_assert_eq!(table.get_signed(a), legendre_symbol(a, p));
    }

    #[test]
    fn jacobi_matches_euler_on_primes(a in 0u64..1_000_000, k in 1usize..1000) {
        let p = sieve_primes(3, 8000).unwrap()[k];
        prop_assert_eq!(jacobi(a, p), euler_criterion(a, p));
    }

    #[test]
    fn jacobi_is_multiplicative_in_modulus(a in 0u64..10_000, m in 0u64..500, n in 0u64..500) {
        let (m, n) = (2 * m + 1, 2 * n + 1);
        prop_assert_eq!(jacobi(a, m * n), jacobi(a, m) * jacobi(a, n));
    }
}
