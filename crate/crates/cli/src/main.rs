use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use esrook::arith::{bigint_to_json, ExtendedInt};
use esrook::bounds::{
    check_equivalences, classify_density, existence_lower_bound, kappa, mds_constructible,
    tau_for_distance, TauValue,
};
use esrook::census::{brute_force_census, census_polynomials, ball_size, DEFAULT_MAX_ENUM};
use esrook::construct::{
    build_space, export_space, import_space, optimality_check, verify_space, Sampling,
    SpaceExport,
};
use esrook::counting::{chain_check, count_mds2, count_mds3_square, DEFAULT_MAX_DIAGRAMS};
use esrook::density::{estimate_density, DEFAULT_MAX_COMBINATIONS};
use esrook::ferrers::FerrersDiagram;
use esrook::golden;
use esrook::rook::{rook_polynomial, rook_polynomials_by_columns, tau_diagonal_sum, tau_via_polynomial};
use esrook::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "esrook",
    version,
    about = "Rook polynomials, rank censuses and MDS constructions on Ferrers diagrams"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (defaults to all cores); results do not depend on it.
    #[arg(long, global = true, env = "ESROOK_JOBS")]
    jobs: Option<usize>,

    /// Largest q^|F| enumerated exhaustively.
    #[arg(long, global = true, env = "ESROOK_MAX_ENUM", default_value_t = DEFAULT_MAX_ENUM)]
    max_enum: u128,

    /// Largest number of projective combinations checked per space.
    #[arg(long, global = true, env = "ESROOK_MAX_COMBINATIONS", default_value_t = DEFAULT_MAX_COMBINATIONS)]
    max_combinations: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension bound kappa(F, d) and the per-j values it minimises.
    Kappa {
        diagram: FerrersDiagram,
        #[arg(short)]
        d: usize,
    },
    /// Trailing degree of R_q(F, r) by the diagonal formula and by enumeration.
    Tau {
        diagram: FerrersDiagram,
        #[arg(short)]
        r: usize,
        /// Report the diagonal sum even when kappa(F, r) = 0.
        #[arg(long)]
        force: bool,
    },
    /// q-rook polynomial R_q(F, r), or all of them without -r.
    Rookpoly {
        diagram: FerrersDiagram,
        #[arg(short)]
        r: Option<usize>,
    },
    /// Rank census: polynomials in q, or exhaustive counts with -q.
    Census {
        diagram: FerrersDiagram,
        #[arg(short)]
        q: Option<u64>,
        #[arg(short)]
        r: Option<usize>,
    },
    /// Number of matrices of rank at most r.
    Ball {
        diagram: FerrersDiagram,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        q: BigInt,
    },
    /// MDS-constructibility with every characterization.
    MdsCheck {
        diagram: FerrersDiagram,
        #[arg(short)]
        d: usize,
    },
    /// Density class of k-dimensional spaces; Monte-Carlo estimate with -q.
    Classify {
        diagram: FerrersDiagram,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        q: Option<u64>,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Counting lower bound for spaces of dimension k and minimum rank d.
    ExistBound {
        diagram: FerrersDiagram,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        q: BigInt,
    },
    /// Reed-Solomon diagonal construction.
    Construct {
        diagram: FerrersDiagram,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        q: u64,
        /// Check every nonzero combination (or sample, see --sample).
        #[arg(long)]
        verify: bool,
        /// Sample this many combinations when exhaustive checking is over budget.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the basis as JSON.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Verify a basis previously written by `construct --output`.
    VerifySpace {
        file: PathBuf,
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Constructible pairs: formula against enumeration.
    CountMds {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: Option<usize>,
        #[arg(short, value_parser = clap::value_parser!(u8).range(2..=3))]
        d: u8,
        /// Also check the distance-2 to distance-3 chain on n x n boards.
        #[arg(long)]
        chain: bool,
    },
    /// Recompute every bundled reference value; exit 4 on any mismatch.
    #[command(name = "verify-golden", visible_alias = "verify-paper")]
    VerifyGolden,
    /// Existence bounds for the bundled table of examples.
    #[command(name = "existence-table", visible_alias = "table1")]
    ExistenceTable,
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                ),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::InvalidArgument(_) => EXIT_USAGE,
                Error::HypothesisViolated(_) => EXIT_HYPOTHESIS,
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
            })
        }
    }
}

fn run(cli: &Cli) -> esrook::Result<Output> {
    match &cli.command {
        Command::Kappa { diagram, d } => {
            let report = kappa(diagram, *d)?;
            let text = format!(
                "kappa({diagram}, {d}) = {}\nkappa_j for j = 0..{}: {:?}\nattained at j = {:?}\n",
                report.minimum,
                d - 1,
                report.values,
                report.argmin
            );
            Ok(Output::ok(text, json!({ "diagram": diagram, "kappa": report })))
        }
        Command::Tau { diagram, r, force } => tau(diagram, *r, *force),
        Command::Rookpoly { diagram, r } => {
            let polys: Vec<(usize, _)> = match r {
                Some(r) => vec![(*r, rook_polynomial(diagram, *r))],
                None => rook_polynomials_by_columns(diagram).into_iter().enumerate().collect(),
            };
            let mut text = String::new();
            for (r, p) in &polys {
                writeln!(text, "R_q({diagram}, {r}) = {p}").unwrap();
            }
            let json = json!({
                "diagram": diagram,
                "polynomials": polys.iter().map(|(r, p)| json!({ "r": r, "coefficients": p.to_json(), "text": p.to_string() })).collect::<Vec<_>>(),
            });
            Ok(Output::ok(text, json))
        }
        Command::Census { diagram, q, r } => census(cli, diagram, *q, *r),
        Command::Ball { diagram, r, q } => {
            let value = ball_size(diagram, *r, q);
            Ok(Output::ok(
                format!("B_{q}({diagram}, {r}) = {value}\n"),
                json!({ "diagram": diagram, "r": r, "q": bigint_to_json(q), "value": bigint_to_json(&value) }),
            ))
        }
        Command::MdsCheck { diagram, d } => {
            let verdict = mds_constructible(diagram, *d)?;
            let equivalences = check_equivalences(diagram, *d).ok();
            let mut text = format!(
                "MDS-constructible: {}, kappa={}\nkappa_j: {:?}\ndiagonal sum (all): {}\n",
                verdict.mds_constructible, verdict.kappa, verdict.kappa_vector, verdict.diag_sum_all
            );
            if let Some(first) = verdict.diag_sum_first_m {
                writeln!(text, "diagonal sum (first m): {first}").unwrap();
            }
            match verdict.tau {
                TauValue::Value(t) => writeln!(text, "tau(F, d-1) = {t}").unwrap(),
                TauValue::HypothesisViolated => {
                    writeln!(text, "tau(F, d-1): formula does not apply").unwrap()
                }
            }
            if let Some(eq) = &equivalences {
                writeln!(
                    text,
                    "characterizations agree: {} (first m: {}, all: {}, rook trailing degree: {})",
                    eq.agree,
                    eq.first_m_sum,
                    eq.all_diagonals_sum,
                    eq.rook_trailing_degree.map_or("n/a".to_string(), |b| b.to_string())
                )
                .unwrap();
            }
            let json = json!({ "verdict": verdict, "equivalences": equivalences });
            Ok(Output::ok(text, json))
        }
        Command::Classify { diagram, d, k, q, trials, seed } => {
            let class = classify_density(diagram, *d, *k)?;
            let tau = tau_for_distance(diagram, *d)?;
            let mut text = format!("{class}\n");
            let mut json = json!({ "diagram": diagram, "d": d, "k": k, "class": class, "tau": tau });
            if let Some(q) = q {
                let report =
                    estimate_density(diagram, *d, *k, *q, *trials, *seed, cli.max_combinations)?;
                writeln!(
                    text,
                    "estimate at q={q}: {:.4} (95% CI {:.4}..{:.4}, {} trials, seed {}, {})",
                    report.estimate, report.ci_low, report.ci_high, report.trials, report.seed, report.prng
                )
                .unwrap();
                json["estimate"] = serde_json::to_value(report).expect("report serializes");
            }
            Ok(Output::ok(text, json))
        }
        Command::ExistBound { diagram, d, k, q } => {
            let value = existence_lower_bound(diagram, *d, *k, q)?;
            let positive = value > BigInt::from(0);
            Ok(Output::ok(
                format!("{value}\n"),
                json!({
                    "diagram": diagram, "d": d, "k": k, "q": bigint_to_json(q),
                    "value": bigint_to_json(&value), "certifies_existence": positive,
                }),
            ))
        }
        Command::Construct { diagram, d, q, verify, sample, seed, output } => {
            let space = build_space(diagram, *d, *q)?;
            for w in &space.warnings {
                eprintln!("warning: {w}");
            }
            let export = export_space(&space)?;
            let mut json = serde_json::to_value(&export).expect("export serializes");
            let mut text = format!(
                "dimension {} (kappa {}), optimal: {}\ndiagonals: {}\n",
                export.dimension,
                export.kappa.map_or("n/a".to_string(), |k| k.to_string()),
                export.optimal,
                space
                    .diagonals
                    .iter()
                    .map(|c| format!("D_{} [{}, {}]", c.index, c.length, c.dimension))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            for (t, b) in export.basis.iter().enumerate() {
                writeln!(text, "basis {t}: {}", serde_json::to_string(b).unwrap()).unwrap();
            }
            let mut code = 0;
            if *verify {
                let sampling = sample.map(|samples| Sampling { samples, seed: *seed });
                let verdict = verify_space(&space, cli.max_combinations, sampling)?;
                writeln!(
                    text,
                    "verification ({}): {} after {} combinations",
                    verdict.mode,
                    if verdict.passed { "PASS" } else { "FAIL" },
                    verdict.checked
                )
                .unwrap();
                if !verdict.passed {
                    code = EXIT_MISMATCH;
                }
                json["verification"] = serde_json::to_value(verdict).expect("verdict serializes");
            }
            if let Some(path) = output {
                let body = serde_json::to_string_pretty(&export).expect("export serializes");
                std::fs::write(path, body).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(Output { text, json, code })
        }
        Command::VerifySpace { file, sample, seed } => {
            let body = std::fs::read_to_string(file).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", file.display()))
            })?;
            let export: SpaceExport = serde_json::from_str(&body)
                .map_err(|e| Error::Parse { what: "space JSON", detail: e.to_string() })?;
            let space = import_space(&export)?;
            let sampling = sample.map(|samples| Sampling { samples, seed: *seed });
            let verdict = verify_space(&space, cli.max_combinations, sampling)?;
            let optimal = optimality_check(&space)?;
            let text = format!(
                "{} ({}, {} combinations), dimension {}, optimal: {optimal}\n",
                if verdict.passed { "PASS" } else { "FAIL" },
                verdict.mode,
                verdict.checked,
                space.dimension()
            );
            let code = if verdict.passed { 0 } else { EXIT_MISMATCH };
            Ok(Output {
                text,
                json: json!({ "verification": verdict, "optimal": optimal }),
                code,
            })
        }
        Command::CountMds { n, m, d, chain } => {
            let report = match d {
                2 => count_mds2(*n, m.unwrap_or(*n), DEFAULT_MAX_DIAGRAMS)?,
                _ => {
                    if m.is_some_and(|m| m != *n) {
                        return Err(Error::InvalidArgument(
                            "the distance-3 count is for square boards only".into(),
                        ));
                    }
                    count_mds3_square(*n, DEFAULT_MAX_DIAGRAMS)?
                }
            };
            let enumerated = report.enumerated.as_ref().map_or("skipped".into(), |e| e.to_string());
            let mut text = format!(
                "n\tm\td\tformula\tenumerated\tagree\n{}\t{}\t{}\t{}\t{}\t{}\n",
                report.n,
                report.m,
                report.d,
                report.formula,
                enumerated,
                report.agree.map_or("n/a".into(), |a| a.to_string())
            );
            let mut json = serde_json::to_value(&report).expect("report serializes");
            let mut code = if report.agree == Some(false) { EXIT_MISMATCH } else { 0 };
            if *chain {
                let chain = chain_check(*n)?;
                writeln!(
                    text,
                    "chain on {n} x {n}: {} diagrams, {} constructible at d=2, {} violations",
                    chain.diagrams,
                    chain.constructible_d2,
                    chain.violations.len()
                )
                .unwrap();
                for c in &chain.counterexamples {
                    writeln!(
                        text,
                        "{}: d={} constructible, d={} not: {}",
                        c.diagram, c.d_true, c.d_false, c.behaves_as_stated
                    )
                    .unwrap();
                }
                if !chain.violations.is_empty() {
                    code = EXIT_MISMATCH;
                }
                json["chain"] = serde_json::to_value(chain).expect("report serializes");
            }
            Ok(Output { text, json, code })
        }
        Command::VerifyGolden => {
            let checks = golden::run(&golden::load());
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(text, "{status}  {}", c.label).unwrap();
                if !c.passed {
                    writeln!(text, "      expected {}\n      actual   {}", c.expected, c.actual).unwrap();
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(text, "{} checks, {failed} mismatches", checks.len()).unwrap();
            Ok(Output {
                text,
                json: json!({ "checks": checks, "mismatches": failed }),
                code: if failed == 0 { 0 } else { EXIT_MISMATCH },
            })
        }
        Command::ExistenceTable => {
            let reports = golden::load()
                .existence_table
                .iter()
                .map(golden::check_table_row)
                .collect::<esrook::Result<Vec<_>>>()?;
            let mut text = String::from("diagram\td\tkappa\tconstructible\tq\tbound\tstatus\n");
            for r in &reports {
                writeln!(
                    text,
                    "{}\t{}\t{}\t{}\t{}\t{}e{}\t{}",
                    r.row.diagram,
                    r.row.d,
                    r.kappa,
                    r.mds_constructible,
                    r.row.q,
                    r.mantissa,
                    r.exponent,
                    if r.passed { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            let ok = reports.iter().all(|r| r.passed);
            Ok(Output {
                text,
                json: json!({ "rows": reports }),
                code: if ok { 0 } else { EXIT_MISMATCH },
            })
        }
    }
}

fn tau(diagram: &FerrersDiagram, r: usize, force: bool) -> esrook::Result<Output> {
    let polynomial = tau_via_polynomial(diagram, r);
    let closed = match esrook::rook::tau_closed_form(diagram, r) {
        Ok(t) => Some(t),
        Err(Error::HypothesisViolated(_)) if force => None,
        Err(e) => return Err(e),
    };
    let forced = closed.is_none().then(|| tau_diagonal_sum(diagram, r));
    let poly_text = match polynomial {
        ExtendedInt::NegInfinity => "none (R_q is zero)".to_string(),
        ExtendedInt::Finite(v) => v.to_string(),
    };
    let text = match (closed, forced) {
        (Some(t), _) => format!("closed form: {t}\nfrom R_q: {poly_text}\n"),
        (None, Some(s)) => format!(
            "diagonal sum (formula does not apply, kappa = 0): {s}\nfrom R_q: {poly_text}\n"
        ),
        (None, None) => unreachable!(),
    };
    Ok(Output::ok(
        text,
        json!({
            "diagram": diagram, "r": r,
            "closed_form": closed,
            "diagonal_sum_unchecked": forced,
            "polynomial": polynomial,
        }),
    ))
}

fn census(cli: &Cli, diagram: &FerrersDiagram, q: Option<u64>, r: Option<usize>) -> esrook::Result<Output> {
    let polys = census_polynomials(diagram);
    let ranks: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (0..polys.len()).collect(),
    };
    let poly = |r: usize| polys.get(r).cloned().unwrap_or_default();
    let mut text = String::new();
    let Some(q) = q else {
        for &r in &ranks {
            writeln!(text, "P_q({diagram}, {r}) = {}", poly(r)).unwrap();
        }
        let json = json!({
            "diagram": diagram,
            "polynomials": ranks.iter().map(|&r| json!({ "r": r, "coefficients": poly(r).to_json(), "text": poly(r).to_string() })).collect::<Vec<_>>(),
        });
        return Ok(Output::ok(text, json));
    };
    let census = brute_force_census(diagram, q, cli.max_enum)?;
    let qb = BigInt::from(q);
    let mut agree = true;
    for &r in &ranks {
        let counted = census.counts.get(r).cloned().unwrap_or_default();
        let predicted = poly(r).eval(&qb);
        agree &= counted == predicted;
        writeln!(text, "rank {r}: {counted} (polynomial gives {predicted})").unwrap();
    }
    let mut json = serde_json::to_value(&census).expect("census serializes");
    json["polynomial_agrees"] = json!(agree);
    Ok(Output {
        text,
        json,
        code: if agree { 0 } else { EXIT_MISMATCH },
    })
}
