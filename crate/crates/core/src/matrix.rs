//! Matrices supported on a Ferrers diagram and their rank over GF(q).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ferrers::FerrersDiagram;
use crate::gf::{Elem, FieldTable};

/// A matrix whose support lies inside `diagram`. Entries are stored in the
/// diagram's column-major cell order, so cells outside it are zero by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportedMatrix {
    diagram: FerrersDiagram,
    entries: Vec<Elem>,
}

impl SupportedMatrix {
    pub fn zero(diagram: &FerrersDiagram) -> Self {
        Self {
            diagram: diagram.clone(),
            entries: vec![0; diagram.area()],
        }
    }

    /// Entries listed in column-major cell order.
    pub fn from_entries(diagram: &FerrersDiagram, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != diagram.area() {
            return Err(Error::invalid(format!(
                "{diagram} has {} cells, got {} entries",
                diagram.area(),
                entries.len()
            )));
        }
        Ok(Self {
            diagram: diagram.clone(),
            entries,
        })
    }

    /// Builds a matrix from `(i, j) -> value`; every nonzero cell must lie in
    /// the diagram.
    pub fn from_cells(
        diagram: &FerrersDiagram,
        cells: impl IntoIterator<Item = ((usize, usize), Elem)>,
    ) -> Result<Self> {
        let mut m = Self::zero(diagram);
        for ((i, j), v) in cells {
            if v == 0 {
                continue;
            }
            let idx = m
                .index_of(i, j)
                .ok_or_else(|| Error::invalid(format!("cell ({i},{j}) is not in {diagram}")))?;
            m.entries[idx] = v;
        }
        Ok(m)
    }

    pub fn diagram(&self) -> &FerrersDiagram {
        &self.diagram
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.diagram.contains(i, j).then(|| {
            let before: usize = self.diagram.heights()[..j - 1].iter().sum();
            before + i - 1
        })
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.index_of(i, j).map_or(0, |idx| self.entries[idx])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) -> Result<()> {
        let idx = self
            .index_of(i, j)
            .ok_or_else(|| Error::invalid(format!("cell ({i},{j}) is not in {}", self.diagram)))?;
        self.entries[idx] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Nonzero cells.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.diagram
            .cells()
            .zip(&self.entries)
            .filter(|(_, &v)| v != 0)
            .map(|(c, _)| c)
            .collect()
    }

    /// Row-major dense `n x m` copy.
    pub fn to_dense(&self) -> Vec<Elem> {
        let (n, m) = (self.diagram.rows(), self.diagram.cols());
        let mut dense = vec![0; n * m];
        for ((i, j), &v) in self.diagram.cells().zip(&self.entries) {
            dense[(i - 1) * m + (j - 1)] = v;
        }
        dense
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, field: &FieldTable, c: Elem, other: &SupportedMatrix) {
        debug_assert_eq!(self.diagram, other.diagram);
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = field.add(*a, field.mul(c, b));
        }
    }

    pub fn rank(&self, field: &FieldTable) -> usize {
        let mut dense = self.to_dense();
        rank_dense(field, &mut dense, self.diagram.rows(), self.diagram.cols())
    }

    /// Sparse `{"i,j": value}` map of the nonzero cells.
    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix(
            self.diagram
                .cells()
                .zip(&self.entries)
                .filter(|(_, &v)| v != 0)
                .map(|((i, j), &v)| (format!("{i},{j}"), v))
                .collect(),
        )
    }

    pub fn from_sparse(diagram: &FerrersDiagram, sparse: &SparseMatrix) -> Result<Self> {
        let cells = sparse
            .0
            .iter()
            .map(|(key, &v)| {
                let (i, j) = key
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                    .ok_or_else(|| Error::parse("cell", format!("{key:?} is not \"i,j\"")))?;
                Ok(((i, j), v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cells(diagram, cells)
    }
}

/// JSON form of a supported matrix: cell `"i,j"` to field element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix(pub BTreeMap<String, Elem>);

/// Rank of the row-major `rows x cols` matrix in `data`, which is reduced
/// in place.
pub fn rank_dense(field: &FieldTable, data: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                data.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field.inv(data[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let v = data[r * cols + col];
            if v == 0 {
                continue;
            }
            let factor = field.neg(field.mul(v, inv));
            for c in col..cols {
                let p = data[rank * cols + c];
                if p != 0 {
                    data[r * cols + c] = field.add(data[r * cols + c], field.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> FerrersDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_of_ones_has_full_rank() {
        let f = d("[1,3,3,4,6,6,6]");
        let profile = f.diagonal_profile();
        let gf2 = FieldTable::new(2).unwrap();
        for r in 1..=6 {
            assert_eq!(profile.count(r), r);
            let cells = f
                .cells()
                .filter(|&(i, j)| f.diagonal_of(i, j) == r)
                .map(|c| (c, 1));
            let m = SupportedMatrix::from_cells(&f, cells).unwrap();
            assert_eq!(m.rank(&gf2), r);
        }
    }

    #[test]
    fn zero_and_staircase() {
        let gf3 = FieldTable::new(3).unwrap();
        let f = d("[1,2,3]");
        assert_eq!(SupportedMatrix::zero(&f).rank(&gf3), 0);
        let mut m = SupportedMatrix::zero(&f);
        for (c, v) in [((1, 1), 1), ((1, 2), 2), ((2, 2), 1), ((1, 3), 1), ((2, 3), 2), ((3, 3), 2)] {
            m.set(c.0, c.1, v).unwrap();
        }
        assert_eq!(m.rank(&gf3), 3);
        assert!(m.set(3, 1, 1).is_err());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let gf5 = FieldTable::new(5).unwrap();
        let f = FerrersDiagram::full(3, 3);
        let rows = [[1, 2, 3], [0, 1, 1], [1, 3, 4]];
        // Row 3 = row 1 + row 2.
        let cells = (0..3).flat_map(|i| (0..3).map(move |j| ((i + 1, j + 1), rows[i][j])));
        let m = SupportedMatrix::from_cells(&f, cells).unwrap();
        assert_eq!(m.rank(&gf5), 2);
    }

    #[test]
    fn sparse_round_trip() {
        let f = d("[2,3,3]");
        let m = SupportedMatrix::from_entries(&f, vec![1, 0, 2, 0, 1, 0, 0, 3]).unwrap();
        let s = m.to_sparse();
        assert_eq!(SupportedMatrix::from_sparse(&f, &s).unwrap(), m);
        assert_eq!(m.support(), vec![(1, 1), (1, 2), (3, 2), (3, 3)]);
        let bad = SparseMatrix([("3,1".to_string(), 1)].into_iter().collect());
        assert!(SupportedMatrix::from_sparse(&f, &bad).is_err());
        assert!(SupportedMatrix::from_entries(&f, vec![1]).is_err());
    }
}
