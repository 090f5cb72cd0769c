//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p totient-cli --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use totient_core::arith::{gcd, is_prime};
use totient_core::classify::is_sophie_germain;
use totient_core::multiplicity::{
    build_sieve, carmichael_scan, ford_search, multiplicity, parity_balance_suite,
    required_sieve_limit,
};
use totient_core::power_two::{
    gupta_bound_power_two, odd_count_of_power_two, odd_preimage_of_power_two, FermatStatusTable,
};
use totient_core::preimage::{gupta_bound, preimage};
use totient_core::totient::{phi, phi_double, phi_prime_multiple};
use totient_core::Rational;

fn verdict(id: u32, title: &str, elapsed: Duration, limit: Option<Duration>, failures: &[String]) {
    let slow = limit.is_some_and(|l| elapsed >= l);
    let ok = failures.is_empty() && !slow;
    println!(
        "[{}] criterion {id:>2}: {title} ({:.2?}{})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit.map_or(String::new(), |l| format!(", limit {l:?}"))
    );
    for f in failures {
        println!("        {f}");
    }
    assert!(!slow, "criterion {id} exceeded its time limit: {elapsed:?}");
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn criterion_01_table_reproduction() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_totient"))
        .args(["table2", "--json"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();

    let want_m = [1u64, 2, 4, 6, 8, 10, 12, 14];
    let want_a = ["2", "6", "15", "21", "30", "33", "455/8", "42"];
    let want_phi = [Some(1u64), Some(2), Some(8), Some(12), Some(8), Some(20), None, Some(20)];

    let mut failures = Vec::new();
    check(&mut failures, rows.len() == 8, || format!("{} rows", rows.len()));
    for (i, row) in rows.iter().enumerate().take(8) {
        check(&mut failures, row["m"] == want_m[i], || format!("row {i}: m = {}", row["m"]));
        check(&mut failures, row["a"] == want_a[i], || {
            format!("m = {}: A = {}, expected {}", want_m[i], row["a"], want_a[i])
        });
        let got = row["phi_of_a"].as_u64();
        check(&mut failures, got == want_phi[i], || {
            format!("m = {}: φ(A) = {:?}, expected {:?}", want_m[i], got, want_phi[i])
        });
    }
    verdict(1, "table of A(m) and φ(A(m))", elapsed, secs(1), &failures);
}

#[test]
fn criterion_02_known_sets() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases: [(u64, &[u64]); 5] = [
        (1, &[1, 2]),
        (2, &[3, 4, 6]),
        (4, &[5, 8, 10, 12]),
        (6, &[7, 9, 14, 18]),
        (14, &[]),
    ];
    for (m, want) in cases {
        let got = preimage(m).unwrap().members;
        check(&mut failures, got == want, || format!("φ⁻¹({m}) = {got:?}"));
    }
    let odd8 = preimage(8).unwrap().odd_members;
    check(&mut failures, odd8 == [15], || format!("odd part of φ⁻¹(8) = {odd8:?}"));
    verdict(2, "explicit inverse images", start.elapsed(), secs(1), &failures);
}

#[test]
fn criterion_03_primes_to_fifty() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let primes: Vec<u64> = (1..=50).filter(|&p| is_prime(p)).collect();
    let sg: Vec<u64> = primes.iter().copied().filter(|&p| is_sophie_germain(p)).collect();
    check(&mut failures, sg == [2, 3, 5, 11, 23, 29, 41], || format!("SG = {sg:?}"));
    for m in [4u64, 6, 10, 22, 46, 58, 82] {
        check(&mut failures, !preimage(m).unwrap().is_empty(), || format!("φ⁻¹({m}) empty"));
    }
    for m in [14u64, 26, 34, 38, 62, 74, 86, 94] {
        let got = preimage(m).unwrap();
        check(&mut failures, got.is_empty(), || format!("φ⁻¹({m}) = {:?}", got.members));
    }
    verdict(3, "Sophie Germain primes below 50", start.elapsed(), secs(5), &failures);
}

#[test]
fn criterion_04_twice_prime_rule() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in (2..=2000u64).filter(|&p| is_prime(p)) {
        let scanned = !preimage(2 * p).unwrap().is_empty();
        let predicted = is_prime(2 * p + 1);
        check(&mut failures, scanned == predicted, || {
            format!("p = {p}: scan {scanned}, 2p+1 prime {predicted}")
        });
    }
    verdict(4, "2p ∈ Im φ ⇔ 2p+1 prime, p ≤ 2000", start.elapsed(), secs(60), &failures);
}

#[test]
fn criterion_05_parity_balance() {
    let start = Instant::now();
    let required = (3..=2001u64)
        .step_by(2)
        .map(|s| gupta_bound(2 * s).unwrap().floor)
        .max()
        .unwrap();
    let sieve = build_sieve(required).unwrap();
    let violations = parity_balance_suite(2001, &sieve).unwrap();
    let failures: Vec<String> = violations
        .iter()
        .map(|v| format!("s = {}: O = {}, E = {}", v.s, v.odd, v.even))
        .collect();
    verdict(5, "O(2s) = E(2s) for odd s in [3, 2001]", start.elapsed(), secs(60), &failures);
}

#[test]
fn criterion_06_safe_prime_pairs() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in (5..=1000u64).filter(|&p| is_sophie_germain(p)) {
        let got = preimage(2 * p).unwrap().members;
        check(&mut failures, got == [2 * p + 1, 4 * p + 2], || format!("φ⁻¹({}) = {got:?}", 2 * p));
        checked += 1;
    }
    check(&mut failures, checked > 0, || "no primes checked".into());
    verdict(6, "φ⁻¹(2p) = {2p+1, 4p+2}, SG p in [5, 1000]", start.elapsed(), None, &failures);
}

#[test]
fn criterion_07_powers_of_two() {
    let start = Instant::now();
    let table = FermatStatusTable::default();
    let mut failures = Vec::new();

    let limit = (0..=20u32)
        .map(|k| gupta_bound(1 << k).unwrap().floor)
        .max()
        .unwrap();
    let sieve = build_sieve(limit).unwrap();
    for k in 0..=20u32 {
        let odd: Vec<u64> = (1..=limit)
            .step_by(2)
            .filter(|&n| sieve.get(n) == Some(1 << k))
            .collect();
        let count = odd_count_of_power_two(k, &table).unwrap().as_count();
        check(&mut failures, count == Some(odd.len() as u64), || {
            format!("k = {k}: brute force {odd:?}, predicted {count:?}")
        });
        let witness = odd_preimage_of_power_two(k, &table).unwrap().witness;
        let fermat_product: u64 = (0..5)
            .filter(|i| k >> i & 1 == 1)
            .map(|i| (1u64 << (1 << i)) + 1)
            .product();
        check(&mut failures, witness == odd.first().copied(), || {
            format!("k = {k}: witness {witness:?}, brute force {odd:?}")
        });
        check(&mut failures, witness == Some(fermat_product), || {
            format!("k = {k}: witness {witness:?}, Fermat product {fermat_product}")
        });
    }

    let r = odd_preimage_of_power_two(32, &table).unwrap();
    check(&mut failures, !r.exists && r.blocking_index == Some(5), || format!("k = 32: {r:?}"));
    let a = gupta_bound_power_two(5, &table).unwrap();
    check(&mut failures, a == Rational::new(255, 2).unwrap(), || format!("A(32) = {a}"));
    verdict(7, "odd solutions of φ(n) = 2^k", start.elapsed(), None, &failures);
}

#[test]
fn criterion_08_carmichael_scan() {
    let start = Instant::now();
    let bound = 1_000_000u64;
    let required = required_sieve_limit(bound).unwrap();
    let mut failures = Vec::new();
    // the limit is the exact maximum of ⌊A(m)⌋, attained by some m
    let attained = (2..=bound)
        .step_by(2)
        .any(|m| gupta_bound(m).unwrap().floor == required);
    check(&mut failures, attained, || format!("required limit {required} not attained"));
    let sieve = build_sieve(required).unwrap();
    let singles = carmichael_scan(bound, &sieve).unwrap();
    check(&mut failures, singles.is_empty(), || format!("multiplicity 1 at {singles:?}"));
    println!("        sieve limit {required} (exact max ⌊A(m)⌋, m ≤ {bound})");
    verdict(8, "no m ≤ 10^6 with exactly one preimage", start.elapsed(), secs(600), &failures);
}

/// Multiplicity of `m` by direct count over `n ≤ 2m²`, which holds every
/// preimage because φ(n) ≥ √(n/2).
fn oracle_multiplicity(m: u64) -> usize {
    (1..=2 * m * m)
        .filter(|&n| (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64 == m)
        .count()
}

#[test]
fn criterion_09_ford_search() {
    let start = Instant::now();
    let bound = 10_000u64;
    let sieve = build_sieve(required_sieve_limit(bound).unwrap()).unwrap();
    let mut failures = Vec::new();
    for k in 2..=10u64 {
        match ford_search(k, bound, &sieve).unwrap() {
            Some(m) => {
                let r = multiplicity(m, &sieve).unwrap();
                check(&mut failures, r.valid && r.count == k, || format!("k = {k}: m = {m}, {r:?}"));
                println!("        k = {k:>2}: m = {m}");
            }
            None => failures.push(format!("k = {k}: nothing below {bound}")),
        }
    }

    let oracle_first = |k: usize| (2..=10u64).find(|&m| oracle_multiplicity(m) == k);
    for (k, registered) in [(2u64, 10u64), (5, 8)] {
        let found = ford_search(k, bound, &sieve).unwrap();
        let oracle = oracle_first(k as usize);
        check(&mut failures, found == Some(registered) && oracle == Some(registered), || {
            format!("k = {k}: search {found:?}, oracle {oracle:?}, registered {registered}")
        });
    }
    verdict(9, "every k in [2, 10] occurs below 10^4", start.elapsed(), None, &failures);
}

#[test]
fn criterion_10_totient_oracles() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=5000u64 {
        let count = (1..=n).filter(|&x| gcd(x, n) == 1).count() as u64;
        let v = phi(n).unwrap();
        check(&mut failures, v == count, || format!("φ({n}) = {v}, gcd count {count}"));
    }
    for a in 1..=300u64 {
        for b in (1..=300u64).filter(|&b| gcd(a, b) == 1) {
            let lhs = phi(a * b).unwrap();
            let rhs = phi(a).unwrap() * phi(b).unwrap();
            check(&mut failures, lhs == rhs, || format!("φ({a}·{b}) = {lhs} ≠ {rhs}"));
        }
    }
    for p in (2..=97u64).filter(|&p| is_prime(p)) {
        for m in 1..=1000u64 {
            let v = phi_prime_multiple(p, m).unwrap();
            let want = phi(p * m).unwrap();
            check(&mut failures, v == want, || format!("φ({p}·{m}): {v} ≠ {want}"));
        }
    }
    for m in 1..=10_000u64 {
        let same = phi(2 * m).unwrap() == phi(m).unwrap();
        check(&mut failures, same == (m % 2 == 1), || format!("φ(2·{m}) vs φ({m})"));
        let d = phi_double(m).unwrap();
        check(&mut failures, d == phi(2 * m).unwrap(), || format!("phi_double({m}) = {d}"));
    }
    verdict(10, "φ oracles, multiplicativity, φ(pm), φ(2m)", start.elapsed(), None, &failures);
}
