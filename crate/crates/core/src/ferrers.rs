//! Ferrers diagrams inside an `n x m` board, their diagonals, the
//! transposition symmetry and the lattice-path encoding.
//!
//! Rows are numbered `1..=n` from the top and columns `1..=m` from the
//! left. A diagram is stored as its column heights `[c_1, ..., c_m]`:
//! column `j` holds the cells `(1, j), ..., (c_j, j)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FerrersDiagram {
    cols: Vec<usize>,
}

impl FerrersDiagram {
    /// Validates `1 <= c_1 <= ... <= c_m`; the row count is `c_m`.
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::parse("diagram", "no columns"));
        }
        if cols[0] == 0 {
            return Err(Error::parse("diagram", "column heights must be positive"));
        }
        if let Some(w) = cols.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::parse(
                "diagram",
                format!("column heights must be weakly increasing ({} > {})", w[0], w[1]),
            ));
        }
        Ok(Self { cols })
    }

    /// The full `n x m` board.
    pub fn full(n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1, "board needs at least one row and column");
        Self { cols: vec![n; m] }
    }

    /// Number of rows `n`.
    pub fn rows(&self) -> usize {
        *self.cols.last().expect("nonempty")
    }

    /// Number of columns `m`.
    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn heights(&self) -> &[usize] {
        &self.cols
    }

    /// Height of column `j` (1-based).
    pub fn height(&self, j: usize) -> usize {
        self.cols[j - 1]
    }

    pub fn area(&self) -> usize {
        self.cols.iter().sum()
    }

    pub fn min_side(&self) -> usize {
        self.rows().min(self.cols())
    }

    /// Membership of the 1-based cell `(i, j)`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        j >= 1 && j <= self.cols() && i >= 1 && i <= self.cols[j - 1]
    }

    /// Number of cells in row `i`.
    pub fn row_length(&self, i: usize) -> usize {
        self.cols.iter().filter(|&&c| c >= i).count()
    }

    /// All cells in column-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| (1..=c).map(move |i| (i, j + 1)))
    }

    /// Index `r` of the diagonal through `(i, j)`, i.e. `j - i = m - r`.
    pub fn diagonal_of(&self, i: usize, j: usize) -> usize {
        self.cols() + i - j
    }

    pub fn diagonal_profile(&self) -> DiagonalProfile {
        let mut counts = vec![0; self.rows() + self.cols() - 1];
        for (i, j) in self.cells() {
            counts[self.diagonal_of(i, j) - 1] += 1;
        }
        DiagonalProfile { counts }
    }

    /// The anti-transposition `(i, j) -> (m + 1 - j, n + 1 - i)`, giving an
    /// `m x n` diagram whose column `j'` has the length of row `n + 1 - j'`.
    pub fn transpose(&self) -> Self {
        let n = self.rows();
        let cols = (1..=n).map(|jp| self.row_length(n + 1 - jp)).collect();
        Self { cols }
    }

    /// Boundary path from the top-left corner of the `(n-1) x (m-1)` grid:
    /// column `j < m` has height `1 + #D` before the `j`-th `R`.
    pub fn to_path(&self) -> LatticePath {
        let mut steps = Vec::with_capacity(self.rows() + self.cols() - 2);
        let mut height = 1;
        for &c in &self.cols[..self.cols() - 1] {
            while height < c {
                steps.push(Step::D);
                height += 1;
            }
            steps.push(Step::R);
        }
        while height < self.rows() {
            steps.push(Step::D);
            height += 1;
        }
        LatticePath { steps }
    }

    /// Inverse of [`FerrersDiagram::to_path`] for an `n x m` board.
    pub fn from_path(path: &LatticePath, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::invalid("board dimensions must be positive"));
        }
        let rights = path.count(Step::R);
        let downs = path.count(Step::D);
        if rights != m - 1 || downs != n - 1 {
            return Err(Error::invalid(format!(
                "path {path} has {rights} R and {downs} D steps, a {n}x{m} board needs {} and {}",
                m - 1,
                n - 1
            )));
        }
        let mut cols = Vec::with_capacity(m);
        let mut height = 1;
        for step in &path.steps {
            match step {
                Step::D => height += 1,
                Step::R => cols.push(height),
            }
        }
        cols.push(n);
        Ok(Self { cols })
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.cols.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for FerrersDiagram {
    type Err = Error;

    /// Accepts `"[1,3,3,4,5]"` or `"1,3,3,4,5"`, whitespace ignored.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(Error::parse("diagram", format!("unbalanced brackets in {text:?}"))),
        };
        if inner.trim().is_empty() {
            return Err(Error::parse("diagram", "empty input"));
        }
        let cols = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| Error::parse("diagram", format!("bad column height {tok:?}")))
                    .and_then(|v| {
                        usize::try_from(v).ok().filter(|&v| v > 0).ok_or_else(|| {
                            Error::parse("diagram", format!("column height {v} is not positive"))
                        })
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cols)
    }
}

impl Serialize for FerrersDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FerrersDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of cells of a diagram on each of the `m + n - 1` diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalProfile {
    counts: Vec<usize>,
}

impl DiagonalProfile {
    /// `|D_r ∩ F|` for 1-based `r`; zero outside `1..=m+n-1`.
    pub fn count(&self, r: usize) -> usize {
        r.checked_sub(1)
            .and_then(|k| self.counts.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `sum_{r <= limit} max(0, |D_r ∩ F| - t)`.
    pub fn excess_sum(&self, t: usize, limit: usize) -> usize {
        self.counts
            .iter()
            .take(limit)
            .map(|&c| c.saturating_sub(t))
            .sum()
    }

    /// `sum_r max(0, |D_r ∩ F| - t)` over every diagonal.
    pub fn excess_sum_all(&self, t: usize) -> usize {
        self.excess_sum(t, self.counts.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    R,
    D,
}

/// A down-right path written as a string over `{R, D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Every prefix has at least as many `R` as `D` steps.
    pub fn is_generalized_dyck(&self) -> bool {
        let mut balance: i64 = 0;
        self.steps.iter().all(|s| {
            balance += match s {
                Step::R => 1,
                Step::D => -1,
            };
            balance >= 0
        })
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::R => "R",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'R' => Ok(Step::R),
                'D' => Ok(Step::D),
                other => Err(Error::parse("path", format!("unexpected step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

/// Lexicographic stream of every `n x m` Ferrers diagram.
pub fn enumerate_diagrams(n: usize, m: usize) -> DiagramIter {
    assert!(n >= 1 && m >= 1, "board needs at least one row and column");
    let mut first = vec![1; m];
    first[m - 1] = n;
    DiagramIter {
        next: Some(first),
        n,
    }
}

#[derive(Debug, Clone)]
pub struct DiagramIter {
    next: Option<Vec<usize>>,
    n: usize,
}

impl Iterator for DiagramIter {
    type Item = FerrersDiagram;

    fn next(&mut self) -> Option<FerrersDiagram> {
        let current = self.next.take()?;
        let m = current.len();
        // Bump the rightmost free column below n, then reset everything after it.
        if let Some(pos) = (0..m - 1).rev().find(|&j| current[j] < self.n) {
            let mut succ = current.clone();
            let v = succ[pos] + 1;
            succ[pos..m - 1].iter_mut().for_each(|c| *c = v);
            self.next = Some(succ);
        }
        Some(FerrersDiagram { cols: current })
    }
}

/// Every diagram with at most `max_n` rows and `max_m` columns.
pub fn enumerate_all_up_to(max_n: usize, max_m: usize) -> impl Iterator<Item = FerrersDiagram> {
    (1..=max_n).flat_map(move |n| (1..=max_m).flat_map(move |m| enumerate_diagrams(n, m)))
}
