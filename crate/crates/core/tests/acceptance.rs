//! Acceptance suite: one PASS/FAIL line per criterion, with the time taken
//! against its budget. Run with `cargo test -p esrook --test acceptance`.
//!
//! A criterion listed in `KNOWN_UNATTAINABLE` is still evaluated and
//! printed as FAIL; it only stops failing the process. If it ever passes,
//! the process fails so the list gets revisited.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use esrook::arith::{ExtendedInt, IntPolynomial};
use esrook::bounds::{
    check_equivalences, classify_density, existence_lower_bound, kappa,
    kappa_value, DensityClass,
};
use esrook::census::{
    ball_size, ball_size_polynomial, brute_force_census, census_polynomial, census_polynomials,
    recursive_degree,
};
use esrook::construct::{build_space, optimality_check, verify_space};
use esrook::counting::{chain_check, count_mds2, count_mds3_square, DEFAULT_MAX_DIAGRAMS};
use esrook::density::estimate_density;
use esrook::ferrers::{enumerate_all_up_to, enumerate_diagrams, FerrersDiagram};
use esrook::golden;
use esrook::rook::{
    inv, rook_polynomial, rook_polynomials_by_columns, tau_closed_form, tau_via_polynomial,
    RookPlacement,
};

/// Criteria whose stated value contradicts its own definition; see the
/// FAIL detail line for the computed value.
const KNOWN_UNATTAINABLE: &[u32] = &[7];

/// Monte-Carlo settings: trials, seed, and the field sizes used for the
/// dense and sparse configurations.
const MC_TRIALS: u64 = 2000;
const MC_SEED: u64 = 20_240_601;
const MC_DENSE_Q: u64 = 64;
const MC_SPARSE_Q: u64 = 5;
/// Estimates must land on the predicted side of this threshold.
const MC_THRESHOLD: f64 = 0.5;

fn d(s: &str) -> FerrersDiagram {
    s.parse().expect("valid diagram literal")
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(parts: Vec<(bool, String)>) -> Outcome {
    let failed: Vec<&str> = parts.iter().filter(|p| !p.0).map(|p| p.1.as_str()).collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join("; ")
        } else {
            failed.join("; ")
        },
    }
}

fn c1() -> Outcome {
    let f = d("[1,3,3,4,5]");
    let expected = IntPolynomial::from_i64s(&[0, 0, 0, 6, 18, 27, 28, 20, 11, 4, 1]);
    let enumerated = rook_polynomial(&f, 3);
    let transfer = rook_polynomials_by_columns(&f).swap_remove(3);
    let tau = tau_closed_form(&f, 3).ok();
    check(vec![
        (enumerated == expected, format!("R_q = {enumerated}")),
        (transfer == expected, "column transfer agrees".into()),
        (tau == Some(3), format!("tau = {tau:?}")),
        (tau_via_polynomial(&f, 3) == ExtendedInt::Finite(3), "trailing degree 3".into()),
    ])
}

fn c2() -> Outcome {
    let f = d("[1,3,3,4,5]");
    let placement = RookPlacement::new(vec![(2, 4), (3, 2), (4, 5)], &f).expect("valid rooks");
    let value = inv(&placement, &f).expect("valid rooks");
    check(vec![(value == 5, format!("inv = {value}"))])
}

fn c3() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for f in enumerate_all_up_to(5, 5) {
        for r in 1..=f.min_side() {
            if kappa_value(&f, r).expect("1 <= r <= min") == 0 {
                continue;
            }
            cases += 1;
            let closed = tau_closed_form(&f, r).expect("kappa >= 1");
            if tau_via_polynomial(&f, r) != ExtendedInt::Finite(closed as i64) {
                bad.push(format!("{f} r={r}"));
            }
        }
    }
    check(vec![(bad.is_empty(), format!("{cases} pairs, mismatches {bad:?}"))])
}

fn c4() -> Outcome {
    let boards: Vec<FerrersDiagram> = enumerate_all_up_to(10, 10).filter(|f| f.area() <= 10).collect();
    let mut comparisons = 0;
    let mut bad = Vec::new();
    for f in &boards {
        let polys = census_polynomials(f);
        for q in [2u64, 3] {
            let census = brute_force_census(f, q, 3u128.pow(10)).expect("within budget");
            for (r, count) in census.counts.iter().enumerate() {
                comparisons += 1;
                if polys[r].eval(&BigInt::from(q)) != *count {
                    bad.push(format!("{f} q={q} r={r}"));
                }
            }
        }
    }
    check(vec![(
        bad.is_empty(),
        format!("{} diagrams, {comparisons} rank counts, mismatches {bad:?}", boards.len()),
    )])
}

fn c5() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for f in enumerate_all_up_to(5, 5) {
        for r in 1..=f.min_side() {
            if kappa_value(&f, r).expect("1 <= r <= min") == 0 {
                continue;
            }
            cases += 1;
            let tau = tau_closed_form(&f, r).expect("kappa >= 1") as i64;
            let deg = census_polynomial(&f, r).degree();
            let ball = ball_size_polynomial(&f, r).degree();
            if deg != ExtendedInt::Finite(f.area() as i64 - tau)
                || ball != deg
                || recursive_degree(&f, r) != deg
            {
                bad.push(format!("{f} r={r}"));
            }
        }
    }
    check(vec![(
        bad.is_empty(),
        format!("{cases} pairs: deg P + tau = |F|, deg B = deg P, degree recursion; mismatches {bad:?}"),
    )])
}

fn c6() -> Outcome {
    let f = d("[2,3,3,3,4,5]");
    let ball = ball_size(&f, 3, &BigInt::from(3));
    let at3 = existence_lower_bound(&f, 4, 3, &BigInt::from(3)).expect("valid input");
    let at2 = existence_lower_bound(&f, 4, 3, &BigInt::from(2)).expect("valid input");
    let big = |s: &str| s.parse::<BigInt>().expect("literal");
    check(vec![
        (ball == big("243679185"), format!("B_3 = {ball}")),
        (at3 == big("345241120940998775695104"), format!("bound(q=3) = {at3}")),
        (at2 == big("-6510288900541266"), format!("bound(q=2) = {at2}")),
    ])
}

fn c7() -> Outcome {
    let first = kappa(&d("[1,3,3,4,5,5]"), 4).expect("valid input");
    let second = kappa_value(&d("[2,3,3,3,4,5]"), 4).expect("valid input");
    let mut singleton_bad = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            for dist in 1..=n.min(m) {
                let expected = n.max(m) * (n.min(m) - dist + 1);
                if kappa_value(&FerrersDiagram::full(n, m), dist).expect("valid") != expected {
                    singleton_bad.push(format!("{n}x{m} d={dist}"));
                }
            }
        }
    }
    check(vec![
        (
            first.minimum == 7,
            format!(
                "kappa([1,3,3,4,5,5],4) = {} (kappa_j = {:?}; removing the top 3 rows leaves 5 cells), expected 7",
                first.minimum, first.values
            ),
        ),
        (second == 3, format!("kappa([2,3,3,3,4,5],4) = {second}")),
        (singleton_bad.is_empty(), format!("full boards: mismatches {singleton_bad:?}")),
    ])
}

fn c8() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=5 {
        for m in n..=5 {
            for f in enumerate_diagrams(n, m) {
                for dist in 2..=n {
                    cases += 1;
                    let report = check_equivalences(&f, dist).expect("m >= n, 2 <= d <= n");
                    if !report.agree {
                        bad.push(format!("{f} d={dist}"));
                    }
                }
            }
        }
    }
    check(vec![(bad.is_empty(), format!("{cases} pairs, disagreements {bad:?}"))])
}

fn c9() -> Outcome {
    let space = build_space(&d("[2,3,3,3,4,5]"), 4, 4).expect("q large enough");
    let verdict = verify_space(&space, 1 << 20, None).expect("within budget");
    let optimal = optimality_check(&space).expect("valid space");
    check(vec![
        (space.dimension() == 3, format!("dimension {}", space.dimension())),
        (
            verdict.passed && verdict.mode == "exhaustive" && verdict.checked == 21,
            format!("{} {} combinations, passed {}", verdict.mode, verdict.checked, verdict.passed),
        ),
        (optimal, format!("optimal {optimal}")),
    ])
}

fn c10() -> Outcome {
    let mut parts = Vec::new();
    let mut bad2 = Vec::new();
    for n in 2..=7 {
        for m in n..=7 {
            let r = count_mds2(n, m, DEFAULT_MAX_DIAGRAMS).expect("m >= n >= 2");
            let catalan_ok = n != m || r.formula == esrook::arith::catalan((n - 1) as u64);
            if r.agree != Some(true) || !catalan_ok {
                bad2.push(format!("{n}x{m}"));
            }
        }
    }
    parts.push((bad2.is_empty(), format!("d=2 formula = enumeration on 21 boards, mismatches {bad2:?}")));
    let mut bad3 = Vec::new();
    for n in 3..=8 {
        let r = count_mds3_square(n, DEFAULT_MAX_DIAGRAMS).expect("n >= 3");
        if r.agree != Some(true) {
            bad3.push(n);
        }
    }
    parts.push((bad3.is_empty(), format!("d=3 square formula = enumeration for n=3..8, mismatches {bad3:?}")));
    let three = count_mds3_square(3, DEFAULT_MAX_DIAGRAMS).expect("n >= 3");
    let expected: Vec<FerrersDiagram> = ["[1,1,3]", "[1,2,3]", "[1,3,3]", "[2,2,3]"].iter().map(|s| d(s)).collect();
    parts.push((
        three.formula == BigInt::from(4) && three.members == expected,
        format!("n=3 members {:?}", three.members.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
    ));
    let mut chain_bad = Vec::new();
    let mut counterexamples_ok = true;
    for n in 3..=6 {
        let report = chain_check(n).expect("n >= 3");
        chain_bad.extend(report.violations.iter().map(|f| f.to_string()));
        counterexamples_ok &= report.counterexamples.iter().all(|c| c.behaves_as_stated);
    }
    parts.push((chain_bad.is_empty(), format!("chain d=2 => d=3 for n<=6, violations {chain_bad:?}")));
    parts.push((
        counterexamples_ok,
        "[1,1,3,3] (d=2 yes, d=3 no) and [1,1,3,3,5] (d=3 yes, d=4 no)".into(),
    ));
    check(parts)
}

fn c11() -> Outcome {
    let parts = golden::load()
        .existence_table
        .iter()
        .map(|row| {
            let r = golden::check_table_row(row).expect("valid row");
            (
                r.passed,
                format!("{} d={} q={}: kappa {} bound {}e{}", row.diagram, row.d, row.q, r.kappa, r.mantissa, r.exponent),
            )
        })
        .collect();
    check(parts)
}

fn c12() -> Outcome {
    let mut parts = Vec::new();
    let band = |m: usize| FerrersDiagram::full(2, m);
    let mut band_ok = true;
    for m in 2..=8 {
        // Distance 2 on a 2 x m band: tau(F, 1) = m - 1.
        let tau = tau_closed_form(&band(m), 1).expect("kappa >= 1");
        band_ok &= tau == m - 1
            && classify_density(&band(m), 2, m - 1) == Ok(DensityClass::Dense)
            && classify_density(&band(m), 2, m) == Ok(DensityClass::NotDenseAtMostHalf);
    }
    parts.push((band_ok, "tau([2,...,2],1) = m-1 for m=2..8".into()));
    let full = d("[5,5,5,5,5,5]");
    let class = classify_density(&full, 4, 12);
    parts.push((class == Ok(DensityClass::Sparse), format!("[5,5,5,5,5,5] d=4 k=12: {class:?}")));

    let dense_f = d("[2,3,3,3,4,5]");
    let dense_class = classify_density(&dense_f, 4, 3);
    let dense = estimate_density(&dense_f, 4, 3, MC_DENSE_Q, MC_TRIALS, MC_SEED, 1 << 24).expect("within budget");
    parts.push((
        dense_class == Ok(DensityClass::Dense) && dense.ci_low > MC_THRESHOLD,
        format!(
            "DENSE [2,3,3,3,4,5] d=4 k=3 q={MC_DENSE_Q}: {:.4} [{:.4}, {:.4}]",
            dense.estimate, dense.ci_low, dense.ci_high
        ),
    ));
    let sparse = estimate_density(&full, 4, 12, MC_SPARSE_Q, MC_TRIALS, MC_SEED, 1 << 27).expect("within budget");
    parts.push((
        sparse.ci_high < MC_THRESHOLD,
        format!(
            "SPARSE [5,5,5,5,5,5] d=4 k=12 q={MC_SPARSE_Q}: {:.4} [{:.4}, {:.4}] ({MC_TRIALS} trials, seed {MC_SEED}, {})",
            sparse.estimate, sparse.ci_low, sparse.ci_high, sparse.prng
        ),
    ));
    check(parts)
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "q-rook polynomial of [1,3,3,4,5] with 3 rooks, tau = 3", Duration::from_secs(1), c1),
        (2, "inv of a 3-rook placement on [1,3,3,4,5] is 5", Duration::from_secs(1), c2),
        (3, "diagonal formula = trailing degree, all boards up to 5x5", Duration::from_secs(120), c3),
        (4, "census polynomials = exhaustive census, |F| <= 10, q in {2,3}", Duration::from_secs(600), c4),
        (5, "deg P + tau = |F| and deg B = deg P, boards up to 5x5", Duration::from_secs(120), c5),
        (6, "ball size and existence bounds on [2,3,3,3,4,5]", Duration::from_secs(30), c6),
        (7, "kappa values and the Singleton-type bound on full boards", Duration::from_secs(1), c7),
        (8, "three MDS-constructibility tests agree, n <= m <= 5", Duration::from_secs(60), c8),
        (9, "Reed-Solomon diagonal space on [2,3,3,3,4,5], d = 4, q = 4", Duration::from_secs(5), c9),
        (10, "counting formulas, chain and counterexamples", Duration::from_secs(120), c10),
        (11, "existence table rows at printed precision", Duration::from_secs(300), c11),
        (12, "density classes and Monte-Carlo estimates", Duration::from_secs(600), c12),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.passed && elapsed <= budget;
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "{status}  criterion {id:>2}: {title} [{:.2}s / {}s]",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        println!("      {}", outcome.detail);
        if elapsed > budget {
            println!("      over the time budget");
        }
        let known = KNOWN_UNATTAINABLE.contains(&id);
        if ok {
            passed += 1;
            if known {
                println!("      listed as unattainable but passed; update KNOWN_UNATTAINABLE");
                unexpected.push(id);
            }
        } else if known {
            println!("      known unattainable: the stated value is inconsistent with the definition");
        } else {
            unexpected.push(id);
        }
    }
    println!("{passed}/12 criteria passed; unexpected results: {unexpected:?}");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
