//! Non-attacking rook placements on Ferrers diagrams, the
//! `inv` statistic, q-rook polynomials and their trailing degree.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{ExtendedInt, IntPolynomial};
use crate::bounds::kappa_value;
use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;

/// A set of rooks inside a diagram, no two sharing a row or a column.
/// Rooks are kept sorted by column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RookPlacement {
    rooks: Vec<(usize, usize)>,
}

impl RookPlacement {
    pub fn new(mut rooks: Vec<(usize, usize)>, diagram: &FerrersDiagram) -> Result<Self> {
        rooks.sort_by_key(|&(i, j)| (j, i));
        for &(i, j) in &rooks {
            if !diagram.contains(i, j) {
                return Err(Error::invalid(format!("rook ({i},{j}) lies outside {diagram}")));
            }
        }
        for (a, &(i1, j1)) in rooks.iter().enumerate() {
            for &(i2, j2) in &rooks[a + 1..] {
                if i1 == i2 || j1 == j2 {
                    return Err(Error::invalid(format!(
                        "rooks ({i1},{j1}) and ({i2},{j2}) attack each other"
                    )));
                }
            }
        }
        Ok(Self { rooks })
    }

    pub fn empty() -> Self {
        Self { rooks: Vec::new() }
    }

    pub fn rooks(&self) -> &[(usize, usize)] {
        &self.rooks
    }

    pub fn len(&self) -> usize {
        self.rooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rooks.is_empty()
    }
}

impl fmt::Display for RookPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.rooks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// Cells of `F` left after crossing out every rook together with the cells
/// above it in its column and to its right in its row.
pub fn inv(placement: &RookPlacement, diagram: &FerrersDiagram) -> Result<usize> {
    // Re-validate: placements built elsewhere may belong to another diagram.
    let placement = RookPlacement::new(placement.rooks.clone(), diagram)?;
    Ok(inv_unchecked(placement.rooks(), diagram))
}

fn inv_unchecked(rooks: &[(usize, usize)], diagram: &FerrersDiagram) -> usize {
    let (n, m) = (diagram.rows(), diagram.cols());
    let mut crossed = vec![false; n * m];
    let idx = |i: usize, j: usize| (i - 1) * m + (j - 1);
    for &(ri, rj) in rooks {
        for i in 1..=ri {
            crossed[idx(i, rj)] = true;
        }
        for j in rj + 1..=m {
            crossed[idx(ri, j)] = true;
        }
    }
    diagram.cells().filter(|&(i, j)| !crossed[idx(i, j)]).count()
}

/// Lazily enumerates every placement of exactly `r` non-attacking rooks,
/// deciding column by column (left to right) between no rook and a free row.
pub fn enumerate_placements(diagram: &FerrersDiagram, r: usize) -> Placements<'_> {
    let m = diagram.cols();
    Placements {
        diagram,
        target: r,
        choice: vec![0; m],
        used: vec![false; diagram.rows() + 1],
        placed: 0,
        state: IterState::Fresh,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

#[derive(Debug, Clone)]
pub struct Placements<'a> {
    diagram: &'a FerrersDiagram,
    target: usize,
    /// Row of the rook in each column, 0 for none.
    choice: Vec<usize>,
    used: Vec<bool>,
    placed: usize,
    state: IterState,
}

impl Placements<'_> {
    fn set(&mut self, j: usize, row: usize) {
        self.choice[j] = row;
        if row > 0 {
            self.used[row] = true;
            self.placed += 1;
        }
    }

    fn clear(&mut self, j: usize) {
        let row = std::mem::take(&mut self.choice[j]);
        if row > 0 {
            self.used[row] = false;
            self.placed -= 1;
        }
    }

    /// Assigns column `j` a choice `>= start`, then completes columns after
    /// `j` with the smallest feasible choices. Leaves no trace on failure.
    fn fill(&mut self, j: usize, start: usize) -> bool {
        let m = self.choice.len();
        if j == m {
            return self.placed == self.target;
        }
        if self.placed > self.target || self.placed + (m - j) < self.target {
            return false;
        }
        for row in start..=self.diagram.heights()[j] {
            if row > 0 && self.used[row] {
                continue;
            }
            self.set(j, row);
            if self.fill(j + 1, 0) {
                return true;
            }
            self.clear(j);
        }
        false
    }

    fn current(&self) -> RookPlacement {
        RookPlacement {
            rooks: self
                .choice
                .iter()
                .enumerate()
                .filter(|(_, &row)| row > 0)
                .map(|(j, &row)| (row, j + 1))
                .collect(),
        }
    }
}

impl Iterator for Placements<'_> {
    type Item = RookPlacement;

    fn next(&mut self) -> Option<RookPlacement> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                if self.fill(0, 0) {
                    return Some(self.current());
                }
            }
            IterState::Running => {
                for j in (0..self.choice.len()).rev() {
                    let previous = self.choice[j];
                    self.clear(j);
                    if self.fill(j, previous + 1) {
                        return Some(self.current());
                    }
                }
            }
        }
        self.state = IterState::Done;
        None
    }
}

/// `R_q(F, r)` summed placement by placement.
pub fn rook_polynomial(diagram: &FerrersDiagram, r: usize) -> IntPolynomial {
    let mut counts = vec![0u64; diagram.area() + 1];
    for p in enumerate_placements(diagram, r) {
        counts[inv_unchecked(p.rooks(), diagram)] += 1;
    }
    IntPolynomial::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

/// All `R_q(F, r)` for `r = 0..=min(n, m)` by a column transfer: a column of
/// height `c` seen after `k` rooks has `c - k` free rows; leaving it empty
/// contributes `q^(c-k)`, and a rook in it contributes `1 + q + ... + q^(c-k-1)`
/// according to how many free rows lie below the rook.
pub fn rook_polynomials_by_columns(diagram: &FerrersDiagram) -> Vec<IntPolynomial> {
    let max_r = diagram.min_side();
    let mut by_count = vec![IntPolynomial::zero(); max_r + 1];
    by_count[0] = IntPolynomial::one();
    for &c in diagram.heights() {
        let mut next = vec![IntPolynomial::zero(); max_r + 1];
        for (k, poly) in by_count.iter().enumerate() {
            if poly.is_zero() || k > c {
                continue;
            }
            let free = c - k;
            next[k] = &next[k] + &poly.shift(free);
            if free >= 1 && k < max_r {
                next[k + 1] = &next[k + 1] + &(poly * &IntPolynomial::q_integer(free));
            }
        }
        by_count = next;
    }
    by_count
}

/// `sum_{i=1}^{m+n-1} max(0, |D_i ∩ F| - r)`, valid as the trailing degree
/// of `R_q(F, r)` whenever `kappa(F, r) >= 1`.
pub fn tau_closed_form(diagram: &FerrersDiagram, r: usize) -> Result<usize> {
    if r == 0 || r > diagram.min_side() {
        return Err(Error::invalid(format!(
            "r must lie in 1..={} for {diagram}, got {r}",
            diagram.min_side()
        )));
    }
    if kappa_value(diagram, r)? == 0 {
        return Err(Error::hypothesis(format!(
            "kappa({diagram},{r}) = 0, the diagonal formula for tau is not established"
        )));
    }
    Ok(tau_diagonal_sum(diagram, r))
}

/// The diagonal sum itself, with no hypothesis check.
pub fn tau_diagonal_sum(diagram: &FerrersDiagram, r: usize) -> usize {
    diagram.diagonal_profile().excess_sum_all(r)
}

/// Trailing degree of the enumerated `R_q(F, r)`.
pub fn tau_via_polynomial(diagram: &FerrersDiagram, r: usize) -> ExtendedInt {
    rook_polynomial(diagram, r).trailing_degree()
}
