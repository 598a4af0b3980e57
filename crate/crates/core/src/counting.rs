//! Counting MDS-constructible pairs for `d = 2` and for `d = 3` on square
//! boards, by closed formula and by exhaustive enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::binomial;
use crate::bounds::is_mds_constructible;
use crate::error::{Error, Result};
use crate::ferrers::{enumerate_diagrams, FerrersDiagram};

/// Boards with at most this many diagrams are enumerated by default.
pub const DEFAULT_MAX_DIAGRAMS: u64 = 1 << 20;

/// `(F, 2)` is MDS-constructible exactly when no cell lies on a diagonal
/// `D_i` with `i > m`. Requires `m >= n >= 2`.
pub fn charmds2(diagram: &FerrersDiagram) -> Result<bool> {
    let (n, m) = (diagram.rows(), diagram.cols());
    if n < 2 || m < n {
        return Err(Error::hypothesis(format!(
            "the diagonal test needs m >= n >= 2, got {n} x {m}; transpose first"
        )));
    }
    let profile = diagram.diagonal_profile();
    Ok((m + 1..=profile.len()).all(|i| profile.count(i) == 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub formula: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_opt_bigint")]
    pub enumerated: Option<BigInt>,
    /// `None` when the board was too large to enumerate.
    pub agree: Option<bool>,
    /// The constructible diagrams, listed when there are at most 64.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<FerrersDiagram>,
}

/// `a * b / c`, asserting that `c` divides `a * b`.
fn exact_div(a: BigInt, b: BigInt, c: BigInt) -> BigInt {
    let (quot, rem) = (a * b).div_rem(&c);
    assert!(rem.is_zero(), "formula is not an integer");
    quot
}

fn enumerate_constructible(n: usize, m: usize, d: usize) -> Vec<FerrersDiagram> {
    let all: Vec<FerrersDiagram> = enumerate_diagrams(n, m).collect();
    all.into_par_iter()
        .filter(|f| is_mds_constructible(f, d).expect("2 <= d <= n"))
        .collect()
}

fn report(n: usize, m: usize, d: usize, formula: BigInt, max_diagrams: u64) -> CountReport {
    let total = binomial((m + n - 2) as u64, (n - 1) as u64);
    let members = (total <= BigInt::from(max_diagrams)).then(|| enumerate_constructible(n, m, d));
    let enumerated = members.as_ref().map(|v| BigInt::from(v.len()));
    CountReport {
        n,
        m,
        d,
        agree: enumerated.as_ref().map(|e| *e == formula),
        formula,
        enumerated,
        members: members.filter(|v| v.len() <= 64).unwrap_or_default(),
    }
}

/// `((m - n + 1) / m) * binomial(m + n - 2, n - 1)` MDS-constructible pairs
/// `(F, 2)` among `n x m` diagrams, the Catalan number `C_(n-1)` on square
/// boards. Enumerates when the board has at most `max_diagrams` diagrams.
pub fn count_mds2(n: usize, m: usize, max_diagrams: u64) -> Result<CountReport> {
    if n < 2 || m < n {
        return Err(Error::hypothesis(format!("needs m >= n >= 2, got {n} x {m}")));
    }
    let formula = exact_div(
        BigInt::from(m - n + 1),
        binomial((m + n - 2) as u64, (n - 1) as u64),
        BigInt::from(m),
    );
    Ok(report(n, m, 2, formula, max_diagrams))
}

/// `(1/n) binomial(2n-2, n-1) + (2/(n-1)) binomial(2n-4, n-2)`
/// MDS-constructible pairs `(F, 3)` among `n x n` diagrams.
pub fn count_mds3_square(n: usize, max_diagrams: u64) -> Result<CountReport> {
    if n < 3 {
        return Err(Error::hypothesis(format!("needs n >= 3, got {n}")));
    }
    let catalan = exact_div(
        BigInt::from(1),
        binomial((2 * n - 2) as u64, (n - 1) as u64),
        BigInt::from(n),
    );
    let extra = exact_div(
        BigInt::from(2),
        binomial((2 * n - 4) as u64, (n - 2) as u64),
        BigInt::from(n - 1),
    );
    Ok(report(n, n, 3, catalan + extra, max_diagrams))
}

/// A diagram whose distance-`d_true` pair is constructible while its
/// distance-`d_false` pair is not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub diagram: FerrersDiagram,
    pub d_true: usize,
    pub d_false: usize,
    pub behaves_as_stated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub diagrams: usize,
    /// Diagrams with `(F, 2)` constructible.
    pub constructible_d2: usize,
    /// Diagrams with `(F, 2)` constructible but `(F, 3)` not.
    pub violations: Vec<FerrersDiagram>,
    pub counterexamples: Vec<Counterexample>,
}

/// On `n x n` boards, `(F, 2)` constructible implies `(F, 3)` constructible.
/// The implication fails off the square and one step further; the report
/// includes the two known counterexamples.
pub fn chain_check(n: usize) -> Result<ChainReport> {
    if n < 3 {
        return Err(Error::hypothesis(format!("needs n >= 3, got {n}")));
    }
    let all: Vec<FerrersDiagram> = enumerate_diagrams(n, n).collect();
    let flagged: Vec<(bool, bool)> = all
        .par_iter()
        .map(|f| {
            let two = is_mds_constructible(f, 2).expect("n >= 3");
            (two, two && !is_mds_constructible(f, 3).expect("n >= 3"))
        })
        .collect();
    let counterexamples = [("[1,1,3,3]", 2, 3), ("[1,1,3,3,5]", 3, 4)]
        .into_iter()
        .map(|(text, d_true, d_false)| {
            let diagram: FerrersDiagram = text.parse().expect("valid literal");
            let behaves_as_stated = is_mds_constructible(&diagram, d_true)?
                && !is_mds_constructible(&diagram, d_false)?;
            Ok(Counterexample {
                diagram,
                d_true,
                d_false,
                behaves_as_stated,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainReport {
        n,
        diagrams: all.len(),
        constructible_d2: flagged.iter().filter(|f| f.0).count(),
        violations: all
            .iter()
            .zip(&flagged)
            .filter(|(_, f)| f.1)
            .map(|(d, _)| d.clone())
            .collect(),
        counterexamples,
    })
}
