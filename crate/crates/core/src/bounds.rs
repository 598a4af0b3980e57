//! The Ferrers-diagram dimension bound `kappa`, MDS-constructibility and the
//! bounds that follow from it: density regimes, the double-counting
//! existence bound and the size of the family of diagonal constructions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{bigint_to_json, q_binomial_eval, ExtendedInt};
use crate::census::ball_size;
use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::prime_power_decomposition;
use crate::rook::{tau_closed_form, tau_via_polynomial};

/// All deletion counts `kappa_j(F, d)` and their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    pub d: usize,
    /// `values[j]` counts the cells left after removing the top `j` rows and
    /// the rightmost `d - 1 - j` columns.
    pub values: Vec<usize>,
    pub minimum: usize,
    /// Every `j` attaining the minimum, increasing.
    pub argmin: Vec<usize>,
}

fn check_distance(diagram: &FerrersDiagram, d: usize) -> Result<()> {
    if d == 0 || d > diagram.min_side() {
        return Err(Error::invalid(format!(
            "d must lie in 1..={} for {diagram}, got {d}",
            diagram.min_side()
        )));
    }
    Ok(())
}

pub fn kappa(diagram: &FerrersDiagram, d: usize) -> Result<KappaReport> {
    check_distance(diagram, d)?;
    let m = diagram.cols();
    let values: Vec<usize> = (0..d)
        .map(|j| {
            diagram.heights()[..m - d + 1 + j]
                .iter()
                .map(|&c| c.saturating_sub(j))
                .sum()
        })
        .collect();
    let minimum = *values.iter().min().expect("d >= 1");
    let argmin = (0..d).filter(|&j| values[j] == minimum).collect();
    Ok(KappaReport {
        d,
        values,
        minimum,
        argmin,
    })
}

/// `kappa(F, d)` alone.
pub fn kappa_value(diagram: &FerrersDiagram, d: usize) -> Result<usize> {
    kappa(diagram, d).map(|k| k.minimum)
}

/// A trailing degree that is either known or outside the range where the
/// diagonal formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauValue {
    Value(usize),
    HypothesisViolated,
}

impl TauValue {
    pub fn value(self) -> Option<usize> {
        match self {
            TauValue::Value(v) => Some(v),
            TauValue::HypothesisViolated => None,
        }
    }
}

impl Serialize for TauValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TauValue::Value(v) => s.serialize_u64(*v as u64),
            TauValue::HypothesisViolated => s.serialize_str("hypothesis-violated"),
        }
    }
}

/// `tau(F, d - 1)` via the diagonal formula; `tau(F, 0) = |F|`.
pub fn tau_for_distance(diagram: &FerrersDiagram, d: usize) -> Result<TauValue> {
    check_distance(diagram, d)?;
    if d == 1 {
        return Ok(TauValue::Value(diagram.area()));
    }
    match tau_closed_form(diagram, d - 1) {
        Ok(v) => Ok(TauValue::Value(v)),
        Err(Error::HypothesisViolated(_)) => Ok(TauValue::HypothesisViolated),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdsVerdict {
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub kappa: usize,
    pub kappa_vector: Vec<usize>,
    /// `sum_{i=1}^{m+n-1} max(0, |D_i ∩ F| - d + 1)`.
    pub diag_sum_all: usize,
    /// Same sum over `i <= m`; only reported when `m >= n`.
    pub diag_sum_first_m: Option<usize>,
    /// `tau(F, d - 1)`.
    pub tau: TauValue,
    pub mds_constructible: bool,
}

/// MDS-constructibility: `kappa(F, d)` equals the diagonal sum over all
/// `m + n - 1` diagonals.
pub fn mds_constructible(diagram: &FerrersDiagram, d: usize) -> Result<MdsVerdict> {
    let report = kappa(diagram, d)?;
    let profile = diagram.diagonal_profile();
    let diag_sum_all = profile.excess_sum_all(d - 1);
    let diag_sum_first_m =
        (diagram.cols() >= diagram.rows()).then(|| profile.excess_sum(d - 1, diagram.cols()));
    Ok(MdsVerdict {
        diagram: diagram.clone(),
        d,
        kappa: report.minimum,
        kappa_vector: report.values,
        diag_sum_all,
        diag_sum_first_m,
        tau: tau_for_distance(diagram, d)?,
        mds_constructible: report.minimum == diag_sum_all,
    })
}

pub fn is_mds_constructible(diagram: &FerrersDiagram, d: usize) -> Result<bool> {
    let kappa = kappa_value(diagram, d)?;
    Ok(kappa == diagram.diagonal_profile().excess_sum_all(d - 1))
}

/// The three characterizations of MDS-constructibility side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    /// `kappa` equals the diagonal sum over the first `m` diagonals.
    pub first_m_sum: bool,
    /// `kappa` equals the diagonal sum over all diagonals.
    pub all_diagonals_sum: bool,
    /// `kappa` equals the trailing degree of the enumerated `R_q(F, d - 1)`;
    /// `None` when `kappa = 0`.
    pub rook_trailing_degree: Option<bool>,
    pub agree: bool,
}

/// Needs `m >= n` and `2 <= d <= n`; the rook characterization additionally
/// needs `kappa(F, d) >= 1` and is skipped (reported as `None`) otherwise.
pub fn check_equivalences(diagram: &FerrersDiagram, d: usize) -> Result<EquivalenceReport> {
    let (n, m) = (diagram.rows(), diagram.cols());
    if m < n {
        return Err(Error::hypothesis(format!(
            "{diagram} has m = {m} < n = {n}; transpose first"
        )));
    }
    if d < 2 || d > n {
        return Err(Error::hypothesis(format!("d must lie in 2..={n}, got {d}")));
    }
    let kappa = kappa_value(diagram, d)?;
    let profile = diagram.diagonal_profile();
    let first_m_sum = kappa == profile.excess_sum(d - 1, m);
    let all_diagonals_sum = kappa == profile.excess_sum_all(d - 1);
    let rook_trailing_degree = (kappa >= 1)
        .then(|| tau_via_polynomial(diagram, d - 1) == ExtendedInt::Finite(kappa as i64));
    let agree = first_m_sum == all_diagonals_sum
        && rook_trailing_degree.is_none_or(|b| b == all_diagonals_sum);
    Ok(EquivalenceReport {
        first_m_sum,
        all_diagonals_sum,
        rook_trailing_degree,
        agree,
    })
}

/// Asymptotic behaviour of the fraction of `k`-dimensional subspaces that
/// have minimum rank at least `d`, as `q` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DensityClass {
    /// Limit 1.
    Dense,
    /// Limit superior at most 1/2.
    NotDenseAtMostHalf,
    /// Limit 0.
    Sparse,
}

impl std::fmt::Display for DensityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DensityClass::Dense => "DENSE",
            DensityClass::NotDenseAtMostHalf => "NOT_DENSE_AT_MOST_HALF",
            DensityClass::Sparse => "SPARSE",
        })
    }
}

/// Threshold at `tau(F, d - 1)`: dense up to it, sparse from two above it.
pub fn classify_density(diagram: &FerrersDiagram, d: usize, k: usize) -> Result<DensityClass> {
    if d < 2 || d > diagram.min_side() {
        return Err(Error::hypothesis(format!(
            "d must lie in 2..={} for {diagram}, got {d}",
            diagram.min_side()
        )));
    }
    if k == 0 || k > diagram.area() {
        return Err(Error::hypothesis(format!(
            "k must lie in 1..={}, got {k}",
            diagram.area()
        )));
    }
    if kappa_value(diagram, d)? == 0 {
        return Err(Error::hypothesis(format!("kappa({diagram},{d}) = 0")));
    }
    let tau = tau_closed_form(diagram, d - 1)?;
    Ok(if k <= tau {
        DensityClass::Dense
    } else if k == tau + 1 {
        DensityClass::NotDenseAtMostHalf
    } else {
        DensityClass::Sparse
    })
}

/// Lower bound on the number of `k`-dimensional subspaces with minimum rank
/// at least `d`:
/// `qbin(|F|, k) - (B_q(F, d-1) - 1)/(q - 1) * qbin(|F| - 1, k - 1)`.
/// A positive value proves existence; the value may be negative.
pub fn existence_lower_bound(
    diagram: &FerrersDiagram,
    d: usize,
    k: usize,
    q: &BigInt,
) -> Result<BigInt> {
    if d < 2 || d > diagram.min_side() {
        return Err(Error::hypothesis(format!(
            "d must lie in 2..={} for {diagram}, got {d}",
            diagram.min_side()
        )));
    }
    let kappa = kappa_value(diagram, d)?;
    if k == 0 || k > kappa {
        return Err(Error::hypothesis(format!(
            "k must lie in 1..=kappa = {kappa}, got {k}"
        )));
    }
    require_prime_power(q)?;
    let area = diagram.area() as u64;
    let ball = ball_size(diagram, d - 1, q);
    let (projective, rem) = (ball - BigInt::one()).div_rem(&(q - BigInt::one()));
    debug_assert!(rem.is_zero());
    Ok(q_binomial_eval(area, k as u64, q)?
        - projective * q_binomial_eval(area - 1, k as u64 - 1, q)?)
}

fn require_prime_power(q: &BigInt) -> Result<()> {
    let ok = u64::try_from(q)
        .ok()
        .and_then(prime_power_decomposition)
        .is_some();
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("q = {q} is not a prime power")))
    }
}

/// Diagonals `i <= m` long enough to carry a code of minimum distance `d`,
/// with their lengths.
pub fn construction_diagonals(diagram: &FerrersDiagram, d: usize) -> Vec<(usize, usize)> {
    let profile = diagram.diagonal_profile();
    (1..=diagram.cols())
        .map(|i| (i, profile.count(i)))
        .filter(|&(_, len)| len >= d)
        .collect()
}

/// Upper bound on the number of diagonal constructions: the product over the
/// used diagonals of `qbin(n_i, n_i - d + 1)` at `q`.
pub fn mc_upper_bound(diagram: &FerrersDiagram, d: usize, q: &BigInt) -> Result<BigInt> {
    let (n, m) = (diagram.rows(), diagram.cols());
    if m < n {
        return Err(Error::hypothesis(format!(
            "{diagram} has m = {m} < n = {n}; transpose first"
        )));
    }
    if d < 2 || d > n {
        return Err(Error::hypothesis(format!("d must lie in 2..={n}, got {d}")));
    }
    if !is_mds_constructible(diagram, d)? {
        return Err(Error::hypothesis(format!(
            "({diagram},{d}) is not MDS-constructible"
        )));
    }
    require_prime_power(q)?;
    construction_diagonals(diagram, d)
        .into_iter()
        .try_fold(BigInt::one(), |acc, (_, len)| {
            Ok(acc * q_binomial_eval(len as u64, (len - d + 1) as u64, q)?)
        })
}

/// `kappa * (|F| - kappa - d + 1)`, the exponent of `1/q` bounding the share
/// of diagonal constructions among optimal spaces.
pub fn mc_density_exponent(diagram: &FerrersDiagram, d: usize) -> Result<i64> {
    let verdict = mds_constructible(diagram, d)?;
    if !verdict.mds_constructible {
        return Err(Error::hypothesis(format!(
            "({diagram},{d}) is not MDS-constructible"
        )));
    }
    let kappa = verdict.kappa as i64;
    Ok(kappa * (diagram.area() as i64 - kappa - d as i64 + 1))
}

/// Verdict JSON with the density class for each requested `k`.
pub fn verdict_json(verdict: &MdsVerdict, ks: &[usize]) -> serde_json::Value {
    let mut value = serde_json::to_value(verdict).expect("verdict serializes");
    let classes: BTreeMap<String, String> = ks
        .iter()
        .map(|&k| {
            let class = classify_density(&verdict.diagram, verdict.d, k)
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string());
            (k.to_string(), class)
        })
        .collect();
    value["density_class_at"] = serde_json::to_value(classes).expect("map serializes");
    value
}

/// Existence bound rendered for JSON output.
pub fn bound_json(value: &BigInt) -> serde_json::Value {
    bigint_to_json(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ferrers::enumerate_all_up_to;

    fn d(s: &str) -> FerrersDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn kappa_examples() {
        // Removing the top row and two rightmost columns leaves 7 cells, but
        // removing the top three rows leaves only 5.
        let r = kappa(&d("[1,3,3,4,5,5]"), 4).unwrap();
        assert_eq!(r.values, vec![7, 7, 7, 5]);
        assert_eq!(r.minimum, 5);
        assert_eq!(r.argmin, vec![3]);
        assert_eq!(kappa_value(&d("[2,3,3,3,4,5]"), 4).unwrap(), 3);
        let f = d("[1,3,3,4,5]");
        let r = kappa(&f, 1).unwrap();
        assert_eq!(r.values, vec![f.area()]);
        assert!(kappa(&f, 0).is_err());
        assert!(kappa(&f, 6).is_err());
    }

    #[test]
    fn kappa_on_full_boards_is_singleton_bound() {
        for n in 1..=6 {
            for m in 1..=6 {
                for dist in 1..=n.min(m) {
                    assert_eq!(
                        kappa_value(&FerrersDiagram::full(n, m), dist).unwrap(),
                        n.max(m) * (n.min(m) - dist + 1)
                    );
                }
            }
        }
    }

    /// `kappa_j` against a literal deletion of rows and columns.
    #[test]
    fn kappa_vector_matches_cell_deletion() {
        for f in enumerate_all_up_to(5, 5) {
            for dist in 1..=f.min_side() {
                let r = kappa(&f, dist).unwrap();
                for j in 0..dist {
                    let kept = f
                        .cells()
                        .filter(|&(i, c)| i > j && c <= f.cols() - (dist - 1 - j))
                        .count();
                    assert_eq!(r.values[j], kept);
                }
            }
        }
    }

    #[test]
    fn mds_examples() {
        let v = mds_constructible(&d("[2,3,3,3,4,5]"), 4).unwrap();
        assert!(v.mds_constructible);
        assert_eq!(v.kappa, 3);
        assert_eq!(v.tau, TauValue::Value(3));

        let v = mds_constructible(&FerrersDiagram::full(5, 6), 4).unwrap();
        assert!(!v.mds_constructible);
        assert_eq!((v.kappa, v.tau), (12, TauValue::Value(6)));

        assert!(is_mds_constructible(&d("[1,1,3,3]"), 2).unwrap());
        assert!(!is_mds_constructible(&d("[1,1,3,3]"), 3).unwrap());
        for f in enumerate_all_up_to(4, 4) {
            assert!(is_mds_constructible(&f, 1).unwrap());
        }
    }

    #[test]
    fn equivalence_examples() {
        let r = check_equivalences(&d("[1,1,3,3]"), 2).unwrap();
        assert!(r.first_m_sum && r.all_diagonals_sum && r.rook_trailing_degree == Some(true));
        let r = check_equivalences(&d("[1,1,3,3,5]"), 4).unwrap();
        assert_eq!(kappa_value(&d("[1,1,3,3,5]"), 4).unwrap(), 2);
        assert!(!r.first_m_sum && !r.all_diagonals_sum);
        assert_eq!(r.rook_trailing_degree, Some(false));
        assert!(r.agree);
        assert!(check_equivalences(&d("[2,2,4]"), 2).is_err());
        assert!(check_equivalences(&d("[1,1,3,3]"), 1).is_err());
    }

    #[test]
    fn diagonal_sums_never_exceed_kappa() {
        for f in enumerate_all_up_to(6, 6) {
            for dist in 1..=f.min_side() {
                let v = mds_constructible(&f, dist).unwrap();
                assert!(v.diag_sum_all <= v.kappa, "{f} d={dist}");
                if let Some(first) = v.diag_sum_first_m {
                    assert!(first <= v.diag_sum_all);
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        for m in 2..=6 {
            let band = FerrersDiagram::full(2, m);
            assert_eq!(tau_closed_form(&band, 1).unwrap(), m - 1);
            assert_eq!(kappa_value(&band, 2).unwrap(), m);
            assert_eq!(classify_density(&band, 2, m - 1).unwrap(), DensityClass::Dense);
            assert_eq!(
                classify_density(&band, 2, m).unwrap(),
                DensityClass::NotDenseAtMostHalf
            );
        }
        let full = FerrersDiagram::full(5, 6);
        assert_eq!(classify_density(&full, 4, 12).unwrap(), DensityClass::Sparse);
        assert_eq!(
            classify_density(&d("[2,3,3,3,4,5]"), 4, 3).unwrap(),
            DensityClass::Dense
        );
        assert!(classify_density(&full, 1, 3).is_err());
        assert!(classify_density(&full, 4, 0).is_err());
        assert!(classify_density(&full, 4, 31).is_err());
        assert!(classify_density(&d("[1,1,3]"), 3, 1).is_err());
    }

    #[test]
    fn density_class_is_monotone_in_k() {
        for f in enumerate_all_up_to(4, 4) {
            for dist in 2..=f.min_side() {
                if kappa_value(&f, dist).unwrap() == 0 {
                    continue;
                }
                let classes: Vec<_> = (1..=f.area())
                    .map(|k| classify_density(&f, dist, k).unwrap())
                    .collect();
                assert!(classes.windows(2).all(|w| w[0] <= w[1]), "{f} d={dist}");
            }
        }
    }

    #[test]
    fn existence_bound_examples() {
        let f = d("[2,3,3,3,4,5]");
        assert_eq!(
            existence_lower_bound(&f, 4, 3, &BigInt::from(3)).unwrap().to_string(),
            "345241120940998775695104"
        );
        assert_eq!(
            existence_lower_bound(&f, 4, 3, &BigInt::from(2)).unwrap().to_string(),
            "-6510288900541266"
        );
        assert!(existence_lower_bound(&f, 4, 4, &BigInt::from(3)).is_err());
        assert!(existence_lower_bound(&f, 4, 3, &BigInt::from(6)).is_err());
        assert!(existence_lower_bound(&f, 1, 3, &BigInt::from(3)).is_err());
    }

    #[test]
    fn mc_bound_examples() {
        let f = d("[2,3,3,3,4,5]");
        assert_eq!(construction_diagonals(&f, 4), vec![(4, 4), (5, 5)]);
        // qbin(4,1) * qbin(5,2) at q = 4 is 85 * 5797.
        assert_eq!(
            mc_upper_bound(&f, 4, &BigInt::from(4)).unwrap(),
            BigInt::from(85 * 5797)
        );
        assert!(mc_upper_bound(&FerrersDiagram::full(5, 6), 4, &BigInt::from(4)).is_err());
        // [1,2] has a single long diagonal of length 2: qbin(2,1) = q + 1.
        assert_eq!(
            mc_upper_bound(&d("[1,2]"), 2, &BigInt::from(5)).unwrap(),
            BigInt::from(6)
        );
    }

    #[test]
    fn mc_bound_exponent_tracks_kappa() {
        // log_q of the product tends to (d - 1) * kappa.
        let f = d("[2,3,3,3,4,5]");
        let kappa = kappa_value(&f, 4).unwrap() as u32;
        let q = BigInt::from(1u64 << 20);
        let bound = mc_upper_bound(&f, 4, &q).unwrap();
        let lower = num_traits::pow(q.clone(), (3 * kappa) as usize);
        assert!(bound >= lower);
        assert!(bound < lower * BigInt::from(2));
    }

    #[test]
    fn density_exponent_examples() {
        assert_eq!(mc_density_exponent(&d("[2,3,3,3,4,5]"), 4).unwrap(), 42);
        assert_eq!(mc_density_exponent(&d("[1,3,3,4,5]"), 1).unwrap(), 0);
        // A 2 x m band has kappa = m but its diagonals only reach m - 1.
        for m in 2..=6 {
            assert!(mc_density_exponent(&FerrersDiagram::full(2, m), 2).is_err());
        }
        assert!(mc_density_exponent(&FerrersDiagram::full(5, 6), 4).is_err());
    }
}
