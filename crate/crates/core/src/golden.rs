//! Published reference values shipped in `data/golden.json` and the runner
//! that recomputes each one.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_bigint, IntPolynomial};
use crate::bounds::{existence_lower_bound, is_mds_constructible, kappa_value};
use crate::census::ball_size;
use crate::construct::{build_space, optimality_check, verify_space};
use crate::error::Result;
use crate::ferrers::FerrersDiagram;
use crate::rook::{inv, rook_polynomial, tau_closed_form, RookPlacement};

pub const GOLDEN_JSON: &str = include_str!("../data/golden.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Golden {
    pub rook_polynomials: Vec<RookPolynomialCase>,
    pub trailing_degrees: Vec<TrailingDegreeCase>,
    pub inversions: Vec<InversionCase>,
    pub kappa: Vec<KappaCase>,
    pub mds_constructible: Vec<ConstructibleCase>,
    pub ball_sizes: Vec<BallCase>,
    pub existence_bounds: Vec<BoundCase>,
    pub constructions: Vec<ConstructionCase>,
    pub existence_table: Vec<TableRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RookPolynomialCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub r: usize,
    pub coefficients: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TrailingDegreeCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub r: usize,
    pub tau: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct InversionCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub rooks: Vec<(usize, usize)>,
    pub inv: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct KappaCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub kappa: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConstructibleCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub expected: bool,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BallCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub r: usize,
    pub q: u64,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BoundCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub k: usize,
    pub q: u64,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConstructionCase {
    pub label: String,
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub q: u64,
    pub dimension: usize,
    pub combinations: u128,
}

/// A row of the existence table: the bound at `k = kappa` is printed rounded
/// to `mantissa * 10^exponent`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct TableRow {
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub kappa: usize,
    pub q: u64,
    pub mantissa: String,
    pub exponent: usize,
}

pub fn load() -> Golden {
    serde_json::from_str(GOLDEN_JSON).expect("bundled golden data parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl GoldenCheck {
    fn new(label: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            label: label.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }

    fn from_result<T: ToString>(label: &str, expected: impl ToString, actual: Result<T>) -> Self {
        match actual {
            Ok(v) => Self::new(label, expected, v),
            Err(e) => Self::new(label, expected, format!("error: {e}")),
        }
    }
}

/// `v` rounded to `digits` significant digits as `(mantissa, exponent)`,
/// e.g. `("1.06", 33)`. Rounds half up on the decimal expansion.
pub fn leading_digits(v: &BigInt, digits: usize) -> (String, usize) {
    let text = v.magnitude().to_string();
    let exponent = text.len() - 1;
    let mut kept: Vec<u8> = text.bytes().take(digits).map(|b| b - b'0').collect();
    kept.resize(digits, 0);
    let round_up = text.as_bytes().get(digits).is_some_and(|&b| b >= b'5');
    let mut exponent = exponent;
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                // 9.99 -> 10.0: shift into the next decade.
                kept.insert(0, 1);
                kept.truncate(digits);
                exponent += 1;
                break;
            }
            i -= 1;
            kept[i] += 1;
            if kept[i] < 10 {
                break;
            }
            kept[i] = 0;
        }
    }
    let mut mantissa = kept[0].to_string();
    if digits > 1 {
        mantissa.push('.');
        mantissa.extend(kept[1..].iter().map(|d| char::from(b'0' + d)));
    }
    let sign = if v.sign() == num_bigint::Sign::Minus { "-" } else { "" };
    (format!("{sign}{mantissa}"), exponent)
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub row: TableRow,
    pub kappa: usize,
    pub mds_constructible: bool,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub bound: BigInt,
    pub mantissa: String,
    pub exponent: usize,
    pub passed: bool,
}

/// Recomputes one existence-table row at its printed precision.
pub fn check_table_row(row: &TableRow) -> Result<TableReport> {
    let kappa = kappa_value(&row.diagram, row.d)?;
    let constructible = is_mds_constructible(&row.diagram, row.d)?;
    let bound = existence_lower_bound(&row.diagram, row.d, kappa, &BigInt::from(row.q))?;
    let digits = row.mantissa.chars().filter(char::is_ascii_digit).count();
    let (mantissa, exponent) = leading_digits(&bound, digits);
    let positive = bound > BigInt::from(0);
    Ok(TableReport {
        passed: kappa == row.kappa
            && constructible
            && positive
            && mantissa == row.mantissa
            && exponent == row.exponent,
        row: row.clone(),
        kappa,
        mds_constructible: constructible,
        bound,
        mantissa,
        exponent,
    })
}

/// Recomputes every reference value.
pub fn run(golden: &Golden) -> Vec<GoldenCheck> {
    let mut checks = Vec::new();
    for c in &golden.rook_polynomials {
        checks.push(GoldenCheck::new(
            &c.label,
            IntPolynomial::from_i64s(&c.coefficients),
            rook_polynomial(&c.diagram, c.r),
        ));
    }
    for c in &golden.trailing_degrees {
        checks.push(GoldenCheck::from_result(&c.label, c.tau, tau_closed_form(&c.diagram, c.r)));
    }
    for c in &golden.inversions {
        let actual = RookPlacement::new(c.rooks.clone(), &c.diagram)
            .and_then(|p| inv(&p, &c.diagram));
        checks.push(GoldenCheck::from_result(&c.label, c.inv, actual));
    }
    for c in &golden.kappa {
        checks.push(GoldenCheck::from_result(&c.label, c.kappa, kappa_value(&c.diagram, c.d)));
    }
    for c in &golden.mds_constructible {
        checks.push(GoldenCheck::from_result(
            &c.label,
            c.expected,
            is_mds_constructible(&c.diagram, c.d),
        ));
    }
    for c in &golden.ball_sizes {
        checks.push(GoldenCheck::new(
            &c.label,
            &c.value,
            ball_size(&c.diagram, c.r, &BigInt::from(c.q)),
        ));
    }
    for c in &golden.existence_bounds {
        let expected = parse_bigint(&c.value).expect("golden integers parse");
        checks.push(GoldenCheck::from_result(
            &c.label,
            expected,
            existence_lower_bound(&c.diagram, c.d, c.k, &BigInt::from(c.q)),
        ));
    }
    for c in &golden.constructions {
        let actual = build_space(&c.diagram, c.d, c.q).and_then(|space| {
            let verdict = verify_space(&space, c.combinations, None)?;
            Ok(format!(
                "dimension {}, {} combinations checked, passed {}, optimal {}",
                space.dimension(),
                verdict.checked,
                verdict.passed,
                optimality_check(&space)?
            ))
        });
        let expected = format!(
            "dimension {}, {} combinations checked, passed true, optimal true",
            c.dimension, c.combinations
        );
        checks.push(GoldenCheck::from_result(&c.label, expected, actual));
    }
    for row in &golden.existence_table {
        let label = format!("existence table row {} d={} q={}", row.diagram, row.d, row.q);
        let expected = format!(
            "kappa {}, constructible true, bound {}e{}",
            row.kappa, row.mantissa, row.exponent
        );
        let actual = check_table_row(row).map(|r| {
            format!(
                "kappa {}, constructible {}, bound {}e{}",
                r.kappa, r.mds_constructible, r.mantissa, r.exponent
            )
        });
        checks.push(GoldenCheck::from_result(&label, expected, actual));
    }
    checks
}
