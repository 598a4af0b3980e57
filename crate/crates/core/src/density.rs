//! Random subspaces of `F_q[F]`, their minimum rank, and Monte-Carlo
//! estimates of the fraction of `k`-dimensional subspaces whose nonzero
//! matrices all have rank at least `d`.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::projective_count;
use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::{Elem, FieldTable};
use crate::matrix::{rank_dense, SupportedMatrix};

/// Default cap on projective combinations examined per subspace.
pub const DEFAULT_MAX_COMBINATIONS: u128 = 1 << 24;

/// Identifier recorded with every stochastic result.
pub const PRNG_ID: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64(seed), stream = trial index";

/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random `k`-dimensional subspace of `F_q[F]`: the row space of
/// a uniformly random full-rank `k x |F|` matrix, drawn by rejection.
pub fn sample_subspace(
    field: &FieldTable,
    diagram: &FerrersDiagram,
    k: usize,
    rng: &mut impl Rng,
) -> Result<Vec<SupportedMatrix>> {
    let area = diagram.area();
    if k > area {
        return Err(Error::invalid(format!(
            "dimension {k} exceeds |F| = {area} for {diagram}"
        )));
    }
    let q = field.order();
    loop {
        let rows: Vec<Elem> = (0..k * area).map(|_| rng.gen_range(0..q)).collect();
        if rank_dense(field, &mut rows.clone(), k, area) == k {
            return rows
                .chunks(area.max(1))
                .take(k)
                .map(|row| SupportedMatrix::from_entries(diagram, row.to_vec()))
                .collect();
        }
    }
}

/// Visits every nonzero combination of `basis` whose first nonzero
/// coefficient is 1, in lexicographic order of the coefficient vector read
/// from the leading position outward. `visit` receives the coefficients and
/// the row-major dense matrix.
pub fn for_each_projective<B>(
    field: &FieldTable,
    basis: &[SupportedMatrix],
    max_combinations: u128,
    mut visit: impl FnMut(&[Elem], &[Elem]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let k = basis.len();
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let q = u64::from(field.order());
    let required = projective_count(q, k);
    if required > max_combinations {
        return Err(Error::BudgetExceeded {
            what: "projective combinations",
            required,
            budget: max_combinations,
        });
    }
    let dense: Vec<Vec<Elem>> = basis.iter().map(SupportedMatrix::to_dense).collect();
    let size = first.diagram().rows() * first.diagram().cols();
    let mut coeffs = vec![0 as Elem; k];
    let mut current = vec![0 as Elem; size];
    for lead in 0..k {
        coeffs.iter_mut().for_each(|c| *c = 0);
        coeffs[lead] = 1;
        current.copy_from_slice(&dense[lead]);
        loop {
            if let ControlFlow::Break(b) = visit(&coeffs, &current) {
                return Ok(Some(b));
            }
            // Odometer step over positions after `lead`, last position fastest.
            let mut pos = k;
            let advanced = loop {
                if pos == lead + 1 {
                    break false;
                }
                pos -= 1;
                let old = coeffs[pos];
                let new = if u64::from(old) + 1 == q { 0 } else { old + 1 };
                coeffs[pos] = new;
                let delta = field.sub(new, old);
                for (c, &b) in current.iter_mut().zip(&dense[pos]) {
                    if b != 0 {
                        *c = field.add(*c, field.mul(delta, b));
                    }
                }
                if new != 0 {
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(None)
}

/// Minimum rank over the nonzero matrices of the span of `basis`; `None`
/// for the zero space.
pub fn min_rank(
    field: &FieldTable,
    basis: &[SupportedMatrix],
    max_combinations: u128,
) -> Result<Option<usize>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let (n, m) = (first.diagram().rows(), first.diagram().cols());
    let mut best = usize::MAX;
    let mut scratch = vec![0; n * m];
    for_each_projective::<()>(field, basis, max_combinations, |_, matrix| {
        scratch.copy_from_slice(matrix);
        best = best.min(rank_dense(field, &mut scratch, n, m));
        if best == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Some(best))
}

/// A combination of rank below `d`, if any, as `(coefficients, rank)`.
pub fn find_low_rank(
    field: &FieldTable,
    basis: &[SupportedMatrix],
    d: usize,
    max_combinations: u128,
) -> Result<Option<(Vec<Elem>, usize)>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let (n, m) = (first.diagram().rows(), first.diagram().cols());
    let mut scratch = vec![0; n * m];
    for_each_projective(field, basis, max_combinations, |coeffs, matrix| {
        scratch.copy_from_slice(matrix);
        let rank = rank_dense(field, &mut scratch, n, m);
        if rank < d {
            ControlFlow::Break((coeffs.to_vec(), rank))
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// Wilson score interval for `successes` out of `trials` at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub k: usize,
    pub q: u64,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub prng: &'static str,
}

/// Fraction of sampled `k`-dimensional subspaces with minimum rank `>= d`.
/// Trial `t` draws from its own stream, so the result does not depend on
/// how trials are scheduled across threads.
pub fn estimate_density(
    diagram: &FerrersDiagram,
    d: usize,
    k: usize,
    q: u64,
    trials: u64,
    seed: u64,
    max_combinations: u128,
) -> Result<DensityReport> {
    let field = FieldTable::new(q)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if k == 0 || k > diagram.area() {
        return Err(Error::invalid(format!(
            "k must lie in 1..={}, got {k}",
            diagram.area()
        )));
    }
    let required = projective_count(q, k);
    if d > 1 && required > max_combinations {
        return Err(Error::BudgetExceeded {
            what: "projective combinations",
            required,
            budget: max_combinations,
        });
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<bool> {
            if d == 1 {
                return Ok(true);
            }
            let basis = sample_subspace(&field, diagram, k, &mut trial_rng(seed, t))?;
            Ok(find_low_rank(&field, &basis, d, max_combinations)?.is_none())
        })
        .collect::<Result<Vec<bool>>>()?;
    let successes = outcomes.iter().filter(|&&ok| ok).count() as u64;
    let (ci_low, ci_high) = wilson_interval(successes, trials);
    Ok(DensityReport {
        diagram: diagram.clone(),
        d,
        k,
        q,
        trials,
        successes,
        estimate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
        ci_low,
        ci_high,
        seed,
        prng: PRNG_ID,
    })
}
