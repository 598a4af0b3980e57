//! Rank censuses of `F_q[F]`: the exhaustive count over every supported
//! matrix, the polynomial count derived from rook placements, ball sizes and
//! the degree recursion.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{to_u128_saturating, ExtendedInt, IntPolynomial};
use crate::bounds::kappa_value;
use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::{Elem, FieldTable};
use crate::matrix::rank_dense;
use crate::rook::{rook_polynomials_by_columns, tau_closed_form};

/// Default cap on `q^|F|` for exhaustive enumeration.
pub const DEFAULT_MAX_ENUM: u128 = 531_441; // 3^12

/// Number of matrices of each rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCensus {
    pub q: u64,
    pub diagram: FerrersDiagram,
    /// `counts[r]` matrices of rank exactly `r`, for `r = 0..=min(n, m)`.
    #[serde(serialize_with = "crate::arith::serialize_bigints")]
    pub counts: Vec<BigInt>,
}

impl RankCensus {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }
}

/// Counts every matrix of `F_q[F]` by rank. Matrices are visited as base-`q`
/// counters over the cells in column-major order; shards of consecutive
/// counters run in parallel and their tallies are summed.
pub fn brute_force_census(diagram: &FerrersDiagram, q: u64, max_enum: u128) -> Result<RankCensus> {
    let field = FieldTable::new(q)?;
    let cells: Vec<(usize, usize)> = diagram.cells().collect();
    let total = (q as u128)
        .checked_pow(cells.len() as u32)
        .unwrap_or(u128::MAX);
    if total > max_enum {
        return Err(Error::BudgetExceeded {
            what: "exhaustive census",
            required: total,
            budget: max_enum,
        });
    }
    let total = total as u64;
    let (n, m) = (diagram.rows(), diagram.cols());
    let ranks = diagram.min_side() + 1;
    let offsets: Vec<usize> = cells.iter().map(|&(i, j)| (i - 1) * m + (j - 1)).collect();

    const SHARD: u64 = 4096;
    let shards = total.div_ceil(SHARD);
    let tallies = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let start = shard * SHARD;
            let end = (start + SHARD).min(total);
            let mut tally = vec![0u64; ranks];
            let mut digits: Vec<Elem> = Vec::with_capacity(cells.len());
            let mut rest = start;
            for _ in 0..cells.len() {
                digits.push((rest % q) as Elem);
                rest /= q;
            }
            let mut dense = vec![0; n * m];
            for _ in start..end {
                dense.iter_mut().for_each(|v| *v = 0);
                for (&off, &v) in offsets.iter().zip(&digits) {
                    dense[off] = v;
                }
                tally[rank_dense(&field, &mut dense, n, m)] += 1;
                // Increment the counter.
                for d in digits.iter_mut() {
                    *d += 1;
                    if u64::from(*d) < q {
                        break;
                    }
                    *d = 0;
                }
            }
            tally
        })
        .reduce(
            || vec![0u64; ranks],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(RankCensus {
        q,
        diagram: diagram.clone(),
        counts: tallies.into_iter().map(BigInt::from).collect(),
    })
}

/// `P_q(F, r)` for every `r = 0..=min(n, m)` as polynomials in `q`, from
/// `P_q(F, r) = sum_C (q - 1)^r q^(|F| - r - inv(C, F))` over placements
/// `C` of `r` rooks.
pub fn census_polynomials(diagram: &FerrersDiagram) -> Vec<IntPolynomial> {
    let area = diagram.area();
    rook_polynomials_by_columns(diagram)
        .into_iter()
        .enumerate()
        .map(|(r, rook)| {
            // Reverse the exponents: q^inv becomes q^(|F| - r - inv).
            let mut coeffs = vec![BigInt::zero(); area - r + 1];
            for (inv, c) in rook.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[area - r - inv] = c.clone();
                }
            }
            &IntPolynomial::from_coeffs(coeffs) * &IntPolynomial::q_minus_one_pow(r)
        })
        .collect()
}

/// `P_q(F, r)`; zero when `r > min(n, m)`.
pub fn census_polynomial(diagram: &FerrersDiagram, r: usize) -> IntPolynomial {
    census_polynomials(diagram)
        .into_iter()
        .nth(r)
        .unwrap_or_default()
}

/// `B_q(F, r) = sum_{i <= r} P_q(F, i)`; ranks above `min(n, m)` add nothing.
pub fn ball_size_polynomial(diagram: &FerrersDiagram, r: usize) -> IntPolynomial {
    census_polynomials(diagram).into_iter().take(r + 1).sum()
}

pub fn ball_size(diagram: &FerrersDiagram, r: usize, q: &BigInt) -> BigInt {
    ball_size_polynomial(diagram, r).eval(q)
}

/// Degree of `P_q(F, r)` from the column recursion
/// `deg P(F, r) = max(n + deg P(F', r-1), r + deg P(F', r))`, where `F'`
/// drops the rightmost column, starting from single columns. Ranks above
/// `min(n, m)` are cut off at `-inf`; without that guard the recursion
/// assigns `deg P([1,1], 2) = 2` to a zero polynomial.
pub fn recursive_degree(diagram: &FerrersDiagram, r: usize) -> ExtendedInt {
    if r == 0 {
        return ExtendedInt::Finite(0);
    }
    if r > diagram.min_side() {
        return ExtendedInt::NegInfinity;
    }
    let heights = diagram.heights();
    if heights.len() == 1 {
        return match r {
            1 => ExtendedInt::Finite(heights[0] as i64),
            _ => ExtendedInt::NegInfinity,
        };
    }
    let rest = FerrersDiagram::new(heights[..heights.len() - 1].to_vec())
        .expect("a prefix of a diagram is a diagram");
    let with_rook = recursive_degree(&rest, r - 1).plus(diagram.rows() as i64);
    let without = recursive_degree(&rest, r).plus(r as i64);
    with_rook.max(without)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecursionReport {
    pub diagram: FerrersDiagram,
    pub r: usize,
    pub census_degree: ExtendedInt,
    pub recursion_degree: ExtendedInt,
    pub recursion_holds: bool,
    /// `deg P_q(F, r) + tau(F, r) == |F|`, checked when `1 <= r <= min(n, m)`
    /// and `kappa(F, r) >= 1`.
    pub degree_plus_tau_is_area: Option<bool>,
    /// `deg B_q(F, r) == deg P_q(F, r)`, under the same conditions.
    pub ball_degree_matches: Option<bool>,
}

pub fn degree_recursion_check(diagram: &FerrersDiagram, r: usize) -> DegreeRecursionReport {
    let census_degree = census_polynomial(diagram, r).degree();
    let recursion_degree = recursive_degree(diagram, r);
    let in_range = r >= 1
        && r <= diagram.min_side()
        && kappa_value(diagram, r).is_ok_and(|k| k >= 1);
    let degree_plus_tau_is_area = in_range.then(|| {
        let tau = tau_closed_form(diagram, r).expect("hypothesis checked") as i64;
        census_degree == ExtendedInt::Finite(diagram.area() as i64 - tau)
    });
    let ball_degree_matches =
        in_range.then(|| ball_size_polynomial(diagram, r).degree() == census_degree);
    DegreeRecursionReport {
        diagram: diagram.clone(),
        r,
        census_degree,
        recursion_degree,
        recursion_holds: census_degree == recursion_degree,
        degree_plus_tau_is_area,
        ball_degree_matches,
    }
}

/// `q^e` for small `q`, used for budget estimates.
pub(crate) fn pow_u128(q: u64, e: usize) -> u128 {
    to_u128_saturating(&num_traits::pow(BigInt::from(q), e))
}

/// Number of points of the projective space over a `k`-dimensional space,
/// `(q^k - 1) / (q - 1)`, saturating.
pub fn projective_count(q: u64, k: usize) -> u128 {
    let qk = num_traits::pow(BigInt::from(q), k);
    to_u128_saturating(&((qk - BigInt::one()) / BigInt::from(q - 1)))
}
