//! Optimal spaces built by laying Reed-Solomon codes along the diagonals of
//! a Ferrers diagram, with an exhaustive or sampled rank verifier.

use std::ops::ControlFlow;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::kappa_value;
use crate::census::{pow_u128, projective_count};
use crate::density::{for_each_projective, trial_rng, PRNG_ID};
use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::{Elem, FieldTable};
use crate::matrix::{rank_dense, SparseMatrix, SupportedMatrix};

/// A linear `[length, dimension]` code over GF(q) given by a generator
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RsCode {
    pub q: u64,
    pub length: usize,
    pub dimension: usize,
    /// `dimension` rows of `length` entries.
    pub generator: Vec<Vec<Elem>>,
}

/// The `[length, length - min_dist + 1]` Reed-Solomon code evaluating
/// polynomials of degree `< k` at `0, 1, a, a^2, ...`, with the point at
/// infinity appended when `length = q + 1`. Full-dimension codes use the
/// identity generator.
pub fn rs_code(field: &FieldTable, length: usize, min_dist: usize) -> Result<RsCode> {
    let q = u64::from(field.order());
    if length as u64 > q + 1 {
        return Err(Error::invalid(format!(
            "no Reed-Solomon code of length {length} over GF({q}); lengths stop at q + 1 = {}",
            q + 1
        )));
    }
    if min_dist == 0 || min_dist > length {
        return Err(Error::invalid(format!(
            "minimum distance must lie in 1..={length}, got {min_dist}"
        )));
    }
    let k = length - min_dist + 1;
    let generator = if k == length {
        (0..k)
            .map(|r| (0..length).map(|c| Elem::from(r == c)).collect())
            .collect()
    } else {
        let finite = length.min(q as usize);
        let points: Vec<Elem> = std::iter::once(0)
            .chain((0..finite as u64 - 1).map(|i| field.pow_generator(i)))
            .take(finite)
            .collect();
        (0..k)
            .map(|t| {
                let mut row: Vec<Elem> = points
                    .iter()
                    .map(|&x| (0..t).fold(1, |acc, _| field.mul(acc, x)))
                    .collect();
                if length > finite {
                    row.push(Elem::from(t == k - 1));
                }
                row
            })
            .collect()
    };
    Ok(RsCode {
        q,
        length,
        dimension: k,
        generator,
    })
}

impl RsCode {
    /// Minimum Hamming weight over all nonzero codewords; refuses when
    /// `q^dimension` exceeds `budget`.
    pub fn minimum_distance(&self, field: &FieldTable, budget: u128) -> Result<usize> {
        let total = pow_u128(self.q, self.dimension);
        if total > budget {
            return Err(Error::BudgetExceeded {
                what: "codewords",
                required: total,
                budget,
            });
        }
        let q = field.order();
        let mut best = self.length;
        let mut coeffs = vec![0 as Elem; self.dimension];
        loop {
            // Odometer over all coefficient vectors.
            let mut pos = 0;
            while pos < coeffs.len() {
                coeffs[pos] = (coeffs[pos] + 1) % q;
                if coeffs[pos] != 0 {
                    break;
                }
                pos += 1;
            }
            if pos == coeffs.len() {
                return Ok(best);
            }
            let weight = (0..self.length)
                .filter(|&c| {
                    coeffs
                        .iter()
                        .zip(&self.generator)
                        .fold(0, |acc, (&a, row)| field.add(acc, field.mul(a, row[c])))
                        != 0
                })
                .count();
            best = best.min(weight);
        }
    }
}

/// One diagonal carrying a component code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCode {
    /// Diagonal index in the diagram the code was built on.
    pub index: usize,
    pub length: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedSpace {
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub q: u64,
    pub basis: Vec<SupportedMatrix>,
    /// Diagonals used, indexed in the diagram with at least as many columns
    /// as rows.
    pub diagonals: Vec<DiagonalCode>,
    /// Whether the construction ran on the transpose of `diagram`.
    pub transposed: bool,
    pub warnings: Vec<String>,
}

impl ConstructedSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Lays an MDS code of minimum distance `d` along every diagonal `D_i`,
/// `i <= m`, with at least `d` cells. Diagrams with more rows than columns
/// are transposed first and the basis transposed back.
pub fn build_space(diagram: &FerrersDiagram, d: usize, q: u64) -> Result<ConstructedSpace> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let field = FieldTable::new(q)?;
    let transposed = diagram.cols() < diagram.rows();
    let work = if transposed {
        diagram.transpose()
    } else {
        diagram.clone()
    };
    let m = work.cols();
    let profile = work.diagonal_profile();
    let diagonals: Vec<DiagonalCode> = (1..=m)
        .filter(|&i| profile.count(i) >= d)
        .map(|i| DiagonalCode {
            index: i,
            length: profile.count(i),
            dimension: profile.count(i) - d + 1,
        })
        .collect();
    if let Some(long) = diagonals.iter().find(|c| c.length as u64 > q + 1) {
        return Err(Error::hypothesis(format!(
            "diagonal D_{} has {} cells but q = {q} only supports MDS codes of length {}",
            long.index,
            long.length,
            q + 1
        )));
    }
    let mut basis = Vec::new();
    for code in &diagonals {
        let rs = rs_code(&field, code.length, d)?;
        // Cells of the diagonal from the top row down.
        let cells: Vec<(usize, usize)> = (1..=work.rows())
            .filter_map(|i| {
                let j = (m + i).checked_sub(code.index)?;
                (j >= 1 && work.contains(i, j)).then_some((i, j))
            })
            .collect();
        debug_assert_eq!(cells.len(), code.length);
        for row in &rs.generator {
            let placed = cells.iter().zip(row).map(|(&(i, j), &v)| {
                let cell = if transposed { (m + 1 - j, work.rows() + 1 - i) } else { (i, j) };
                (cell, v)
            });
            basis.push(SupportedMatrix::from_cells(diagram, placed)?);
        }
    }
    let warnings = if diagonals.is_empty() {
        vec![format!("no diagonal D_i with i <= {m} has {d} cells; the space is zero")]
    } else {
        Vec::new()
    };
    Ok(ConstructedSpace {
        diagram: diagram.clone(),
        d,
        q,
        basis,
        diagonals,
        transposed,
        warnings,
    })
}

/// Outcome of checking that every nonzero matrix of a space has rank `>= d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceVerdict {
    pub passed: bool,
    /// `"exhaustive"` or `"sampled"`.
    pub mode: &'static str,
    pub checked: u128,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prng: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coefficients: Vec<Elem>,
    pub rank: usize,
    pub matrix: SparseMatrix,
}

/// How to verify when exhaustive checking exceeds the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub samples: u64,
    pub seed: u64,
}

/// Checks every projective combination when `(q^dim - 1)/(q - 1)` fits in
/// `budget`, reporting the first low-rank combination in enumeration order.
/// Otherwise falls back to `sampling` if given, or refuses.
pub fn verify_space(
    space: &ConstructedSpace,
    budget: u128,
    sampling: Option<Sampling>,
) -> Result<SpaceVerdict> {
    let field = FieldTable::new(space.q)?;
    let (n, m) = (space.diagram.rows(), space.diagram.cols());
    let required = projective_count(space.q, space.dimension());
    let witness_for = |coefficients: Vec<Elem>, rank: usize| {
        let mut sum = SupportedMatrix::zero(&space.diagram);
        for (&c, b) in coefficients.iter().zip(&space.basis) {
            sum.add_scaled(&field, c, b);
        }
        Witness {
            coefficients,
            rank,
            matrix: sum.to_sparse(),
        }
    };
    if required <= budget {
        let mut scratch = vec![0; n * m];
        let mut checked = 0u128;
        let found = for_each_projective(&field, &space.basis, budget, |coeffs, matrix| {
            checked += 1;
            scratch.copy_from_slice(matrix);
            let rank = rank_dense(&field, &mut scratch, n, m);
            if rank < space.d {
                ControlFlow::Break((coeffs.to_vec(), rank))
            } else {
                ControlFlow::Continue(())
            }
        })?;
        return Ok(SpaceVerdict {
            passed: found.is_none(),
            mode: "exhaustive",
            checked,
            witness: found.map(|(c, r)| witness_for(c, r)),
            seed: None,
            prng: None,
        });
    }
    let Some(Sampling { samples, seed }) = sampling else {
        return Err(Error::BudgetExceeded {
            what: "projective combinations",
            required,
            budget,
        });
    };
    let q = field.order();
    let mut rng = trial_rng(seed, 0);
    let mut dense = vec![0; n * m];
    for s in 0..samples {
        let coeffs: Vec<Elem> = loop {
            let c: Vec<Elem> = (0..space.dimension()).map(|_| rng.gen_range(0..q)).collect();
            if c.iter().any(|&v| v != 0) {
                break c;
            }
        };
        let mut sum = SupportedMatrix::zero(&space.diagram);
        for (&c, b) in coeffs.iter().zip(&space.basis) {
            sum.add_scaled(&field, c, b);
        }
        dense.copy_from_slice(&sum.to_dense());
        let rank = rank_dense(&field, &mut dense, n, m);
        if rank < space.d {
            return Ok(SpaceVerdict {
                passed: false,
                mode: "sampled",
                checked: u128::from(s + 1),
                witness: Some(witness_for(coeffs, rank)),
                seed: Some(seed),
                prng: Some(PRNG_ID),
            });
        }
    }
    Ok(SpaceVerdict {
        passed: true,
        mode: "sampled",
        checked: u128::from(samples),
        witness: None,
        seed: Some(seed),
        prng: Some(PRNG_ID),
    })
}

/// Whether the space meets the dimension bound `kappa(F, d)`.
pub fn optimality_check(space: &ConstructedSpace) -> Result<bool> {
    if space.d > space.diagram.min_side() {
        return Ok(space.basis.is_empty());
    }
    Ok(space.dimension() == kappa_value(&space.diagram, space.d)?)
}

/// Portable JSON form of a constructed space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceExport {
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub q: u64,
    pub dimension: usize,
    pub kappa: Option<usize>,
    pub optimal: bool,
    #[serde(default)]
    pub diagonals: Vec<DiagonalCode>,
    pub basis: Vec<SparseMatrix>,
}

pub fn export_space(space: &ConstructedSpace) -> Result<SpaceExport> {
    let kappa = (space.d <= space.diagram.min_side())
        .then(|| kappa_value(&space.diagram, space.d))
        .transpose()?;
    Ok(SpaceExport {
        diagram: space.diagram.clone(),
        d: space.d,
        q: space.q,
        dimension: space.dimension(),
        kappa,
        optimal: optimality_check(space)?,
        diagonals: space.diagonals.clone(),
        basis: space.basis.iter().map(SupportedMatrix::to_sparse).collect(),
    })
}

pub fn import_space(export: &SpaceExport) -> Result<ConstructedSpace> {
    let field = FieldTable::new(export.q)?;
    let basis = export
        .basis
        .iter()
        .map(|s| SupportedMatrix::from_sparse(&export.diagram, s))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = basis
        .iter()
        .flat_map(|b| b.entries())
        .find(|&&v| v >= field.order())
    {
        return Err(Error::invalid(format!(
            "entry {bad} is not an element of GF({})",
            export.q
        )));
    }
    if basis.len() != export.dimension {
        return Err(Error::invalid(format!(
            "declared dimension {} but {} basis matrices",
            export.dimension,
            basis.len()
        )));
    }
    Ok(ConstructedSpace {
        diagram: export.diagram.clone(),
        d: export.d,
        q: export.q,
        basis,
        diagonals: export.diagonals.clone(),
        transposed: export.diagram.cols() < export.diagram.rows(),
        warnings: Vec::new(),
    })
}
