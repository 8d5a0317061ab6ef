//! Exit criteria. Each test writes one `criterion N: PASS|FAIL` line to
//! standard error (unbuffered, so it shows without `--nocapture`) and fails
//! when its criterion fails.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{inst, naive_det, shuffle_labels};
use kneser_det::bounds::ceil_log2;
use kneser_det::census::{brackets, f_count, f_lower_formula, f_upper_formula, Rational};
use kneser_det::constructions::{construct_triangular, det_set_odd, extend_n, reduce_n};
use kneser_det::{det_exact, Error, Family, SearchBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, started: Instant, limit: Duration, outcome: Result<String, String>) {
    let elapsed = started.elapsed();
    let outcome = match outcome {
        Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
        other => other,
    };
    let line = match &outcome {
        Ok(detail) => format!("criterion {id:>2}: PASS  {title} ({detail}; {elapsed:.2?})\n"),
        Err(detail) => format!("criterion {id:>2}: FAIL  {title} ({detail})\n"),
    };
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    if let Err(detail) = outcome {
        panic!("criterion {id} failed: {detail}");
    }
}

fn det(n: u32, k: u32) -> u32 {
    det_exact(&inst(n, k), &SearchBudget::default()).unwrap().value.expect("resolved within default budget")
}

fn failures_or(detail: String, failures: Vec<String>) -> Result<String, String> {
    if failures.is_empty() {
        Ok(detail)
    } else {
        let shown: Vec<&str> = failures.iter().take(8).map(String::as_str).collect();
        Err(format!("{} violation(s): {}", failures.len(), shown.join("; ")))
    }
}

#[test]
fn criterion_01_exact_values() {
    let start = Instant::now();
    let cases = [(5, 2, 3), (7, 3, 3), (6, 2, 4), (8, 3, 4), (15, 7, 4), (9, 2, 6), (13, 3, 6)];
    let failures = cases
        .iter()
        .filter_map(|&(n, k, want)| {
            let got = det(n, k);
            (got != want).then(|| format!("Det(K({n},{k})) = {got}, expected {want}"))
        })
        .collect();
    let outcome = failures_or(format!("{} values", cases.len()), failures);
    report(1, "exact determining numbers", start, Duration::from_secs(10), outcome);
}

#[test]
fn criterion_02_odd_graphs() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=20 {
        let f = det_set_odd(k).unwrap();
        let size = f.len() as u32;
        let want = ceil_log2(2 * u64::from(k) + 2);
        if *f.instance() != inst(2 * k + 1, k) || !f.is_determining() || size != want {
            failures.push(format!("k={k}: size {size}, expected {want}"));
        }
        if k <= 7 && det(2 * k + 1, k) != size {
            failures.push(format!("k={k}: search disagrees with size {size}"));
        }
    }
    let outcome = failures_or("k = 2..20".into(), failures);
    report(2, "minimum families for K(2k+1,k)", start, Duration::from_secs(60), outcome);
}

#[test]
fn criterion_03_census() {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let mut failures = Vec::new();
    let mut got = Vec::new();
    for (r, want) in [(2, 1), (3, 3), (4, 12), (5, 42)] {
        let rec = f_count(r, &budget).unwrap();
        if !rec.is_complete() {
            failures.push(format!("f({r}) partial, {} unresolved", rec.unresolved.len()));
        } else if rec.f != want {
            failures.push(format!("f({r}) = {}, expected {want}", rec.f));
        }
        got.push(rec.f.to_string());
    }
    let outcome = failures_or(format!("f(2..5) = {}", got.join(", ")), failures);
    report(3, "census f(2..5)", start, Duration::from_secs(30 * 60), outcome);
}

#[test]
fn criterion_04_triangular() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for r in 3..=8 {
        let f = construct_triangular(r).unwrap();
        if *f.instance() != inst(r * (r + 1) / 2 + 1, r) || !f.is_determining() {
            failures.push(format!("r={r}: not determining on K({},{r})", r * (r + 1) / 2 + 1));
        }
        let sets = f.sets();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                let common = sets[a].elements().iter().filter(|&&e| sets[b].contains(e)).count();
                if common != 1 {
                    failures.push(format!("r={r}: sets {} and {} share {common} points", a + 1, b + 1));
                }
            }
        }
    }
    let outcome = failures_or("r = 3..8".into(), failures);
    report(4, "triangular families", start, Duration::from_secs(5), outcome);
}

#[test]
fn criterion_05_recursion_sandwich() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 3..=12 {
        for k in 1..=(n - 1) / 2 {
            let here = det(n, k);
            let next = det(n + 1, k);
            if !(here <= next && next <= here + 1) {
                failures.push(format!("Det(K({n},{k})) = {here}, Det(K({},{k})) = {next}", n + 1));
            }
            if n + 1 >= 2 * k + 3 {
                let lifted = det(n + 1, k + 1);
                if lifted > here {
                    failures.push(format!("Det(K({},{})) = {lifted} > Det(K({n},{k})) = {here}", n + 1, k + 1));
                }
            }
            checked += 1;
        }
    }
    let outcome = failures_or(format!("{checked} pairs"), failures);
    report(5, "recursion sandwich for n <= 12", start, Duration::from_secs(600), outcome);
}

#[test]
fn criterion_06_construction_round_trips() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xdede);
    let pairs: Vec<(u32, u32)> = (3..=10).flat_map(|n| (1..=(n - 1) / 2).map(move |k| (n, k))).collect();
    let witnesses: Vec<Family> = pairs
        .iter()
        .map(|&(n, k)| det_exact(&inst(n, k), &SearchBudget::default()).unwrap().witness.unwrap())
        .collect();
    let mut failures = Vec::new();
    let (mut reduced, mut extended) = (0, 0);
    for i in 0..200 {
        let base = &witnesses[rng.gen_range(0..witnesses.len())];
        let (n, k) = (base.instance().n(), base.instance().k());
        // every other family is perturbed: relabeled, plus up to two random sets
        let f = if i % 2 == 0 {
            base.clone()
        } else {
            let mut f = shuffle_labels(&mut rng, base);
            for _ in 0..rng.gen_range(1..=2) {
                f = f.with_set(common::random_set(&mut rng, n, k)).unwrap();
            }
            f
        };
        match extend_n(&f) {
            Ok(g) if g.is_determining() && g.len() <= f.len() + 1 => extended += 1,
            Ok(g) => failures.push(format!("extend_n on {}: size {} -> {}", f.instance(), f.len(), g.len())),
            Err(e) => failures.push(format!("extend_n on {}: {e}", f.instance())),
        }
        if n > 2 * k + 1 {
            match reduce_n(&f) {
                Ok(g) if g.is_determining() && g.len() == f.len() => reduced += 1,
                Ok(g) => failures.push(format!("reduce_n on {}: size {} -> {}", f.instance(), f.len(), g.len())),
                Err(e @ Error::InternalInconsistency(_)) => failures.push(format!("reduce_n on {}: {e}", f.instance())),
                Err(e) => failures.push(format!("reduce_n on {}: unexpected {e}", f.instance())),
            }
        }
    }
    let outcome = failures_or(format!("200 families, {extended} extended, {reduced} reduced"), failures);
    report(6, "reduce/extend round trips", start, Duration::from_secs(600), outcome);
}

#[test]
fn criterion_07_bound_formulas() {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let mut failures = Vec::new();
    let lower6 = f_lower_formula(6).unwrap();
    if lower6 != Rational::new(549, 2) {
        failures.push(format!("F_lower(6) = {lower6}, expected 549/2"));
    }
    let mut f = [0u64; 6];
    let mut cumulative = 0i128;
    for r in 2..=5u32 {
        let rec = f_count(r, &budget).unwrap();
        assert!(rec.is_complete());
        f[r as usize] = rec.f;
        cumulative += i128::from(rec.f);
        let (lo, hi) = (f_lower_formula(r).unwrap(), f_upper_formula(r).unwrap());
        let actual = Rational::from_integer(cumulative);
        if !(lo <= actual && actual <= hi) {
            failures.push(format!("r={r}: F = {cumulative} outside [{lo}, {hi}]"));
        }
    }
    if f[5] < f[2] + f[3] + f[4] {
        failures.push(format!("f(5) = {} < {}", f[5], f[2] + f[3] + f[4]));
    }
    if f[5] + f[3] < 2 * f[4] {
        failures.push(format!("f(5) + f(3) = {} < {}", f[5] + f[3], 2 * f[4]));
    }
    let outcome = failures_or("F_lower(6) = 549/2, sandwich r = 2..5, growth at r = 4".into(), failures);
    report(7, "census bound formulas", start, Duration::from_secs(600), outcome);
}

#[test]
fn criterion_08_brackets() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut width_checks = 0;
    for r in 2..=8u32 {
        for t in 3..(1u32 << r) {
            let b = brackets(t, r).unwrap();
            let extra = b.necessary.difference_len(&b.sufficient);
            if extra > 3 {
                failures.push(format!("t={t} r={r}: |B \\ A| = {extra}"));
            }
            width_checks += 1;
        }
    }
    let mut det_checks = 0;
    for r in 2..=5u32 {
        for t in 3..(1u32 << r) {
            let b = brackets(t, r).unwrap();
            for k in b.sufficient.iter().filter(|&k| k >= 1 && 2 * k < i64::from(t)) {
                let d = det(t, k as u32);
                if d > r {
                    failures.push(format!("t={t} k={k} r={r}: k in A_t but Det = {d}"));
                }
                det_checks += 1;
            }
        }
    }
    let outcome = failures_or(format!("{width_checks} width checks, {det_checks} sufficiency checks"), failures);
    report(8, "bracket properties", start, Duration::from_secs(600), outcome);
}

#[test]
fn criterion_09_oracle_independence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 3..=11 {
        for k in 1..=(n - 1) / 2 {
            let (fast, naive) = (det(n, k), naive_det(n, k));
            if fast != naive {
                failures.push(format!("K({n},{k}): search {fast}, enumeration {naive}"));
            }
            checked += 1;
        }
    }
    let outcome = failures_or(format!("{checked} pairs with n <= 11"), failures);
    report(9, "search agrees with naive enumeration", start, Duration::from_secs(600), outcome);
}

#[test]
fn criterion_10_cli_stability() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_kneser");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let mut failures = Vec::new();
    for cmd in ["table", "diagram"] {
        let (a, b) = (run(&[cmd, "20"]), run(&[cmd, "20"]));
        if !a.status.success() || !b.status.success() {
            failures.push(format!("{cmd} 20 exited with {:?} / {:?}", a.status.code(), b.status.code()));
        } else if a.stdout != b.stdout || a.stdout.is_empty() {
            failures.push(format!("{cmd} 20 output differs between runs"));
        }
    }
    let bad = std::env::temp_dir().join(format!("kneser_bad_{}.jsonl", std::process::id()));
    std::fs::write(&bad, "{\"n\":5,\"k\":2,\"sets\":[[1,2],[3,4]]}\n").unwrap();
    let v = run(&["verify", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    if v.status.code() != Some(4) {
        failures.push(format!("verify on a non-determining family exited with {:?}", v.status.code()));
    }
    let outcome = failures_or("table/diagram byte-identical, verify exit 4".into(), failures);
    report(10, "CLI stability", start, Duration::from_secs(600), outcome);
}
