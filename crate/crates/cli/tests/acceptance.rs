//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any fails. Runs without the libtest harness so the lines always print.

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqerr_core::blekherman::{
    find_decomposition_deg2, pr_all_pairs_mixed, pr_all_pairs_mixed_bruteforce, projector_proportionality_check,
    verify_certificate,
};
use sqerr_core::lower_bound::{
    check_feasible, grid_falsify, line_case_bound, numeric_min_error_search, optimal_witness,
    theoretical_lower_bound, FeasibilityInstance,
};
use sqerr_core::query::{
    classical_reference, exact_first_outcome_probability, simulate_state, theoretical_err, worst_case_error_eq,
    BitInput,
};
use sqerr_core::rational::{frac, int, to_f64, Rational};
use sqerr_core::SignVector;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: sqerr_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn exact_table() -> Check {
    let start = Instant::now();
    for n in 1..=100u64 {
        let n_r = int(n as i64);
        let expected = frac(1, 2) - &n_r / (&n_r * &n_r + int(1));
        ensure(core(theoretical_err(n))? == expected, || format!("closed form differs at n = {n}"))?;
    }
    for n in 1..=15usize {
        let worst = core(worst_case_error_eq(n + 1))?;
        let err = core(theoretical_err(n as u64))?;
        ensure(worst == err, || format!("n = {n}: exhaustive {worst} vs closed form {err}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:.2?}"))?;
    Ok(format!("n = 1..100 closed form, n <= 15 exhaustive, {elapsed:.2?}"))
}

fn published_values() -> Check {
    let cases = [(2, frac(1, 10), frac(1, 10)), (3, frac(1, 5), frac(1, 4)), (5, frac(4, 13), frac(7, 16))];
    for (n, value, reference) in cases {
        let err = core(theoretical_err(n))?;
        ensure(err == value, || format!("err(AND_{n}) = {err}, expected {value}"))?;
        ensure(err <= reference, || format!("err(AND_{n}) = {err} exceeds {reference}"))?;
    }
    Ok("1/10 = 1/10, 1/5 <= 1/4, 4/13 <= 7/16".into())
}

fn classical_line() -> Check {
    for n in 2..=1000u64 {
        let errc = core(classical_reference(n))?.1;
        let n_r = int(n as i64);
        let closed = frac(1, 2) - int(1) / (int(4) * &n_r - int(2));
        ensure(errc == closed, || format!("errc formula differs at n = {n}"))?;
        let line = core(line_case_bound(n as usize))?;
        ensure(errc == line, || format!("n = {n}: errc {errc} vs line bound {line}"))?;
    }
    Ok("n = 2..1000".into())
}

fn float_consistency() -> Check {
    let mut worst = 0.0f64;
    let mut count = 0u64;
    for len in 2..=12usize {
        for mask in 0..1u64 << len {
            let x = core(BitInput::from_mask(len, mask))?;
            let exact = to_f64(&core(exact_first_outcome_probability(&x))?);
            let float = core(simulate_state(&x))?.probability(0);
            worst = worst.max((float - exact).abs());
            count += 1;
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("{count} inputs, max deviation {worst:.1e}"))
}

fn symmetrization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let (mut by_perm, mut by_class) = (0, 0);
    for case in 0..200 {
        let n = rng.gen_range(1..=8);
        let terms = rng.gen_range(1..=8);
        let p = oracles::random_poly(&mut rng, n, 4, terms);
        let q = core(p.symmetrize())?;
        for s in 0..=n {
            let fast = q.eval_int(s as i64);
            let slow = if n <= 6 {
                oracles::permutation_average(&p, &core(SignVector::with_weight(n, s))?)
            } else {
                oracles::weight_class_average(&p, s)
            };
            ensure(fast == slow, || format!("case {case}, n = {n}, s = {s}: {fast} vs {slow}"))?;
        }
        if n <= 6 {
            by_perm += 1;
        } else {
            by_class += 1;
        }
    }
    Ok(format!("200 polynomials: {by_perm} by permutations, {by_class} by weight classes"))
}

fn pairs_formula() -> Check {
    let mut count = 0;
    for n in 1..=8 {
        for s in 0..=n {
            for b in 0..=n / 2 {
                let formula = core(pr_all_pairs_mixed(n, s, b))?;
                let brute = core(pr_all_pairs_mixed_bruteforce(n, s, b))?;
                ensure(formula == brute, || format!("n = {n}, s = {s}, b = {b}: {formula} vs {brute}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n, s, b) triples"))
}

fn certificate_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for case in 0..100 {
        let n = rng.gen_range(4..=8);
        let p = oracles::random_affine(&mut rng, n);
        let q = core(core(p.multiply(&p))?.symmetrize())?;
        let cert = core(find_decomposition_deg2(&q, n))?.ok_or_else(|| format!("case {case}: no certificate for {q}"))?;
        ensure(core(verify_certificate(&cert, &q))?, || format!("case {case}: certificate rejected"))?;
    }
    Ok("100 affine polynomials, n in 4..8".into())
}

fn projector() -> Check {
    let alphas: [&[i64]; 4] = [&[1, 0, 0, 0, 0, 0, 0], &[1, 2, 3, 4, 5, 6, 7], &[-3, 1, 4, -1, 5, -9, 2], &[2, -7, 1, 8, -2, 8, 1]];
    let mut count = 0;
    for n in 1..=6usize {
        for b in 0..=2usize.min(n / 2) {
            let len = n - 2 * b + 1;
            let mut distinct = Vec::new();
            for a in alphas {
                let alpha: Vec<Rational> = a[..len].iter().map(|&v| frac(v, 1 + (v.abs() % 3))).collect();
                if distinct.contains(&alpha) {
                    continue;
                }
                let check = core(projector_proportionality_check(n, b, &alpha))?;
                ensure(check.ok, || format!("n = {n}, b = {b}, alpha = {alpha:?}: rho^2 != c rho"))?;
                distinct.push(alpha);
                count += 1;
            }
            ensure(distinct.len() >= 3, || format!("n = {n}, b = {b}: only {} alphas", distinct.len()))?;
        }
    }
    Ok(format!("{count} (n, b, alpha) cases"))
}

fn witness() -> Check {
    for n in 2..=50 {
        let w = core(optimal_witness(n))?;
        let star = core(theoretical_lower_bound(n))?;
        let at = core(FeasibilityInstance::new(n, star.clone()))?;
        ensure(check_feasible(&w, &at), || format!("n = {n}: infeasible at eps*"))?;
        let below = core(FeasibilityInstance::new(n, &star - frac(1, 1000)))?;
        ensure(!check_feasible(&w, &below), || format!("n = {n}: feasible below eps*"))?;
    }
    Ok("n = 2..50".into())
}

fn grid() -> Check {
    let start = Instant::now();
    for n in 2..=6 {
        let star = core(theoretical_lower_bound(n))?;
        let below = core(grid_falsify(n, &(&star - frac(1, 100)), 200))?;
        ensure(below.is_none(), || format!("n = {n}: witness {below:?} below eps*"))?;
        let above = core(grid_falsify(n, &(&star + frac(1, 100)), 400))?;
        let w = above.ok_or_else(|| format!("n = {n}: no witness above eps*"))?;
        let inst = core(FeasibilityInstance::new(n, &star + frac(1, 100)))?;
        ensure(check_feasible(&w, &inst), || format!("n = {n}: returned witness infeasible"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:.2?}"))?;
    Ok(format!("n = 2..6, {elapsed:.2?}"))
}

fn numeric() -> Check {
    let mut parts = Vec::new();
    for n in [2, 3, 5] {
        let best = core(numeric_min_error_search(n, 50, 2024))?;
        let star = to_f64(&core(theoretical_lower_bound(n))?);
        ensure(best >= star - 1e-6 && best <= star + 1e-4, || {
            format!("n = {n}: best {best} outside [{star} - 1e-6, {star} + 1e-4]")
        })?;
        parts.push(format!("n = {n}: {best:.9}"));
    }
    Ok(parts.join(", "))
}

fn sqerr(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sqerr"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn field(stdout: &str, key: &str) -> Option<String> {
    stdout.lines().find_map(|line| {
        let mut parts = line.split_whitespace();
        (parts.next() == Some(key)).then(|| parts.next().unwrap_or("").to_string())
    })
}

fn cli() -> Check {
    let table = ["table", "--n-min", "1", "--n-max", "20"];
    let (code, first) = sqerr(&table)?;
    let (_, second) = sqerr(&table)?;
    ensure(code == 0 && first == second, || "table output differs between runs".into())?;
    for (n, err) in [("2", "1/10"), ("3", "1/5"), ("5", "4/13")] {
        let row = first.lines().map(|l| l.split_whitespace().collect::<Vec<_>>()).find(|t| t.first() == Some(&n));
        let good = row.is_some_and(|t| t.get(1) == Some(&err) && t.last() == Some(&"OK"));
        ensure(good, || format!("row n = {n} missing, not {err}, or not OK"))?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, r#"{"n": 2, "t": 1, "terms": [{"j": 0, "squares": [["-1", "1"]]}]}"#).map_err(|e| e.to_string())?;
    let cert = cert.to_str().ok_or("temp path is not UTF-8")?;

    let examples: Vec<(Vec<&str>, &str, &str)> = vec![
        (vec!["simulate", "eq", "--n", "2", "--input", "000"], "accept", "9/10"),
        (vec!["simulate", "and", "--n", "2", "--exhaustive"], "worst_error", "1/10"),
        (vec!["simulate", "eq", "--n", "3", "--input", "1010"], "accept", "0"),
        (vec!["blekherman", "probability", "--n", "4", "--s", "2", "--b", "1"], "bruteforce", "2/3"),
        (vec!["blekherman", "verify", "--cert", cert, "--univariate", "1,-2,1"], "verified", "true"),
        (vec!["blekherman", "find", "--univariate=-1", "--n", "2"], "result", "infeasible"),
        (vec!["blekherman", "projector", "--n", "4", "--b", "1", "--alpha", "1,2,3"], "ok", "true"),
        (vec!["bound", "value", "--n", "3"], "case_a_bound", "4/13"),
        (vec!["bound", "witness", "--n", "2", "--epsilon", "1/10"], "feasible", "true"),
        (vec!["bound", "falsify", "--n", "2", "--epsilon", "9/100", "--resolution", "200"], "result", "none"),
        (vec!["bound", "search", "--n", "2"], "within_tolerance", "true"),
    ];
    for (args, key, value) in &examples {
        let (code, stdout) = sqerr(args)?;
        ensure(code == 0, || format!("{args:?} exited with {code}"))?;
        let got = field(&stdout, key);
        ensure(got.as_deref() == Some(*value), || format!("{args:?}: {key} = {got:?}, expected {value}"))?;
    }
    Ok(format!("table byte-identical, {} examples exit 0", examples.len() + 1))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("exact error table", exact_table),
        ("published upper bounds", published_values),
        ("classical AND equals line bound", classical_line),
        ("float simulation matches exact", float_consistency),
        ("symmetrization oracles", symmetrization),
        ("all-pairs-mixed formula", pairs_formula),
        ("certificate round trip", certificate_round_trip),
        ("projector proportionality", projector),
        ("optimal witness feasibility", witness),
        ("grid falsification", grid),
        ("numeric search", numeric),
        ("CLI determinism and examples", cli),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
