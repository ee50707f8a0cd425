//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, Sign};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use simpson_betti::catalog::{projective_poincare, Catalog};
use simpson_betti::identities::{blowup_delta, hilb_kron_difference, Suite};
use simpson_betti::quiver::brute::{brute_force_stable_count, predicted_stable_count};
use simpson_betti::quiver::{kron_degree, kron_poincare, ArrowCount};
use simpson_betti::series::hilb_poincare;
use simpson_betti::{emit_json, emit_plain, parse_json, parse_poly, IntPoly, Var};

const BIN: &str = env!("CARGO_BIN_EXE_simpson-betti");

fn p(s: &str) -> IntPoly {
    parse_poly(s).unwrap()
}

fn p2() -> IntPoly {
    projective_poincare(2)
}

/// `t^2 (1+t^2+t^4)^2`, the common factor of the differences.
fn divisor() -> IntPoly {
    (&p2() * &p2()).shift(2)
}

fn aux(name: &str) -> IntPoly {
    Catalog::builtin().auxiliary(name).unwrap().clone()
}

fn quotient(d: u32) -> IntPoly {
    Catalog::builtin()
        .quotient_transcription(d)
        .unwrap()
        .clone()
}

fn within(start: Instant, limit: Duration, what: &str) {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
}

fn quotient_reproduction() {
    let start = Instant::now();
    let cat = Catalog::builtin();
    for d in 1..=6 {
        let got = cat.simpson_quotient(d).unwrap();
        let want = quotient(d);
        assert_eq!(got, want, "d = {d}");
        assert_eq!(emit_plain(&got), emit_plain(&want), "d = {d}");
    }
    within(start, Duration::from_secs(1), "quotients");
}

fn divisibility() {
    let start = Instant::now();
    for d in 1..=6u32 {
        let pm = Catalog::builtin().simpson_poincare(d).unwrap();
        let proj = projective_poincare(3 * d as usize - 1);
        assert!(proj.divides(&pm).unwrap(), "d = {d}");
    }
    within(start, Duration::from_secs(1), "divisibility");
}

fn kronecker_ground_truth() {
    let start = Instant::now();
    assert_eq!(kron_poincare(1, 2).unwrap(), p("1+t^2+t^4"));
    let forced = [
        ((2, 3), &quotient(4) - &p2().shift(4)),
        ((3, 4), &quotient(5) - &(&p2() * &aux("obs5_kron")).shift(4)),
        ((4, 5), &quotient(6) - &(&p2() * &aux("f_obs6")).shift(4)),
    ];
    for ((a, b), want) in forced {
        assert_eq!(kron_poincare(a, b).unwrap(), want, "({a},{b})");
    }
    let stress = kron_poincare(7, 8).unwrap();
    assert_eq!(
        stress.degree(),
        Some(kron_degree(7, 8, ArrowCount::THREE) as usize)
    );
    assert!(stress.is_palindromic().unwrap() && stress.has_nonnegative_coeffs());
    within(start, Duration::from_secs(5), "Kronecker polynomials");
}

fn goettsche_ground_truth() {
    let start = Instant::now();
    assert_eq!(hilb_poincare(1).unwrap(), p("1+t^2+t^4"));
    let forced = [
        (3, &quotient(4) + &(&p("1+t^4") * &p2()).shift(2)),
        (
            6,
            &quotient(5) + &(&p("1+2*t^2+t^4") * &aux("obs5_hilb")).shift(2),
        ),
        (10, &quotient(6) + &(&p2() * &aux("g_obs6")).shift(2)),
    ];
    for (l, want) in forced {
        assert_eq!(hilb_poincare(l).unwrap(), want, "l = {l}");
    }
    within(
        start,
        Duration::from_secs(5),
        "Hilbert schemes up to 10 points",
    );
    for l in 11..=28 {
        hilb_poincare(l).unwrap();
    }
    within(
        start,
        Duration::from_secs(30),
        "Hilbert schemes up to 28 points",
    );
}

fn difference_equations() {
    let expected = [
        (4, &p2() * &(&projective_poincare(3) - &IntPoly::one())),
        (5, &divisor() * &aux("rem5")),
        (6, &divisor() * &aux("f_rem6")),
    ];
    for (d, want) in expected {
        assert_eq!(hilb_kron_difference(d).unwrap(), want, "d = {d}");
    }
    assert_eq!(divisor(), blowup_delta(&p2(), 4).unwrap());
    for d in [5, 6] {
        let diff = hilb_kron_difference(d).unwrap();
        assert!(divisor().divides(&diff).unwrap(), "d = {d}");
        diff.div_exact(&divisor()).unwrap();
    }
}

fn nondivisibility() {
    let start = Instant::now();
    for d in 7..=9 {
        let diff = hilb_kron_difference(d).unwrap();
        assert!(!divisor().divides(&diff).unwrap(), "d = {d}");
    }
    within(start, Duration::from_secs(30), "non-divisibility");
}

fn blowups() {
    assert_eq!(
        blowup_delta(&p2(), 4).unwrap(),
        hilb_kron_difference(4).unwrap()
    );
    let p5 = projective_poincare(5);
    assert_eq!(p5, &p2() * &p("1+t^6"));
    assert_eq!(
        blowup_delta(&p5, 7).unwrap(),
        &divisor() * &p("1+2*t^6+t^12")
    );
}

fn finite_field_oracle() {
    let start = Instant::now();
    for d in [(1, 1), (1, 2)] {
        for q in [2, 3] {
            let counted = brute_force_stable_count(d.into(), ArrowCount::THREE, q).unwrap();
            let predicted = predicted_stable_count(d.into(), ArrowCount::THREE, q).unwrap();
            assert_eq!(BigInt::from(counted), predicted, "{d:?} over F_{q}");
        }
    }
    within(start, Duration::from_secs(10), "brute force");
}

fn assert_poincare_shape(poly: &IntPoly, degree: usize, what: &str) {
    assert_eq!(poly.degree(), Some(degree), "{what}: degree");
    assert!(poly.is_palindromic().unwrap(), "{what}: palindromic");
    assert!(poly.has_nonnegative_coeffs(), "{what}: nonnegative");
    assert!(poly.is_even(), "{what}: even");
}

/// Partitions of `n` with parts at most `max`, enumerated one by one.
fn count_partitions(n: usize, max: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n))
        .map(|part| count_partitions(n - part, part))
        .sum()
}

fn triple_partitions(l: usize) -> u64 {
    let p: Vec<u64> = (0..=l).map(|n| count_partitions(n, n)).collect();
    let mut total = 0;
    for i in 0..=l {
        for j in 0..=l - i {
            total += p[i] * p[j] * p[l - i - j];
        }
    }
    total
}

fn property_suite() {
    for l in 0..=28 {
        assert_poincare_shape(&hilb_poincare(l).unwrap(), 4 * l, &format!("Hilb^{l}"));
    }
    for a in 1..=8usize {
        for b in a..=8usize {
            let dim = kron_degree(a, b, ArrowCount::THREE);
            if num_integer::gcd(a, b) != 1 || dim < 0 {
                continue;
            }
            let poly = kron_poincare(a, b).unwrap();
            // 2(3mn - m^2 - n^2 + 1), spelled out independently
            let law = 2 * (3 * a * b + 1) as i64 - 2 * (a * a + b * b) as i64;
            assert_poincare_shape(&poly, law as usize, &format!("N(3;{a},{b})"));
        }
    }
    for d in 1..=6usize {
        let poly = Catalog::builtin().simpson_poincare(d as u32).unwrap();
        assert_poincare_shape(&poly, 2 * (d * d + 1), &format!("M(d={d})"));
    }
    for l in 0..=15 {
        let chi = hilb_poincare(l).unwrap().eval_at_one();
        assert_eq!(
            chi,
            BigInt::from(triple_partitions(l)),
            "Euler characteristic, l = {l}"
        );
    }
}

fn random_poly(rng: &mut StdRng) -> IntPoly {
    let len = rng.gen_range(0..=40);
    let coeffs = (0..len)
        .map(|_| match rng.gen_range(0..4) {
            0 => BigInt::from(0),
            1 => BigInt::from(rng.gen_range(-1000i64..=1000)),
            _ => {
                let limbs: Vec<u32> = (0..rng.gen_range(1..5)).map(|_| rng.gen()).collect();
                let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
                BigInt::new(sign, limbs)
            }
        })
        .collect();
    let var = if rng.gen() { Var::T } else { Var::Q };
    IntPoly::from_coeffs(coeffs).with_var(var)
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn round_trip_and_determinism() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let poly = random_poly(&mut rng);
        let text = emit_plain(&poly);
        let back: IntPoly = parse_poly(&text).unwrap();
        assert_eq!(back, poly, "{text}");
        assert_eq!(emit_plain(&back), text);
        assert_eq!(parse_json::<BigInt>(&emit_json(&poly)).unwrap(), poly);
    }

    let first = run_bin(&["verify"]);
    let second = run_bin(&["verify"]);
    assert_eq!(first.0, 0, "{}", first.1);
    assert_eq!(first, second);
    let json = (
        run_bin(&["verify", "--format", "json"]),
        run_bin(&["verify", "--format", "json"]),
    );
    assert_eq!(json.0, json.1);

    assert_eq!(run_bin(&["kron", "1", "2"]), (0, "1+t^2+t^4\n".to_string()));
    assert_eq!(
        run_bin(&["divides", "1+t^2+t^4", "1+t^2"]),
        (0, "false\n".to_string())
    );
    assert_eq!(
        run_bin(&["verify", "--check", "nondiv_d9", "--max-hilb", "20"]).0,
        1
    );
    for bad in [
        &["simpson", "7"][..],
        &["kron", "2", "4"],
        &["divides", "t^"],
        &["nope"],
    ] {
        assert_eq!(run_bin(bad).0, 2, "{bad:?}");
    }
    // Any failing check makes verify exit 1.
    let corrupted = Catalog::builtin_fixture_text().replace("V 5 : t^24+t^22", "V 5 : t^24+2*t^22");
    let catalog = Catalog::parse(&corrupted).unwrap();
    let failed: Vec<_> = Suite::new(&catalog)
        .run_all()
        .into_iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    assert!(!failed.is_empty());
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("quotient reproduction for d = 1..6", quotient_reproduction),
        ("P(P_{3d-1}) divides P_M(d) for d = 1..6", divisibility),
        (
            "Kronecker polynomials against forced values and (7,8)",
            kronecker_ground_truth,
        ),
        (
            "Hilbert-scheme polynomials against forced values, l <= 28",
            goettsche_ground_truth,
        ),
        ("difference equations for d = 4, 5, 6", difference_equations),
        ("non-divisibility for d = 7, 8, 9", nondivisibility),
        ("blow-up deltas", blowups),
        (
            "finite-field brute force for (1,1), (1,2) over F_2, F_3",
            finite_field_oracle,
        ),
        ("shape laws and Euler characteristics", property_suite),
        (
            "round trip, determinism and exit codes",
            round_trip_and_determinism,
        ),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        failures += usize::from(outcome.is_err());
        println!(
            "criterion {:>2}: {status} {name} ({:.2?})",
            i + 1,
            start.elapsed()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
