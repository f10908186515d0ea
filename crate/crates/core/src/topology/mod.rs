//! Chain complexes of Hom-complexes and discretized configuration spaces,
//! their integer homology, and Euler characteristics.

mod dconf;
mod gal;
mod hom;
mod homology;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dconf::{dconf_complex, dconf_complex_capped, DConfCell, DConfComplex, DConfCoordinate};
pub use gal::{
    calibrate_gal, gal_euler_series, gal_euler_series_with, GalCalibration, GalCheck, GalConvention,
};
pub use hom::{
    hom_complex, hom_complex_capped, hom_complex_cellular, multi_homomorphisms, HomComplex,
    MultiHom,
};
pub use homology::{betti_numbers, homology, homology_capped, HomologySummary};

/// Integer matrix stored by columns; column `j` lists `(row, value)` with
/// rows ascending and no zero values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let mut columns = columns;
        for col in columns.iter_mut() {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                if r >= rows {
                    return Err(Error::InvalidArgument(format!(
                        "row {r} out of range {rows}"
                    )));
                }
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => {
                        *lv = lv.checked_add(v).ok_or(Error::Overflow("matrix entry"))?
                    }
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
        Ok(SparseMatrix { rows, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Whether `self · other` is defined and vanishes.
    fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        if self.cols() != other.rows {
            return false;
        }
        let mut acc = vec![0i128; self.rows];
        for col in &other.columns {
            let mut touched = Vec::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] += a as i128 * b as i128;
                }
            }
            let nonzero = touched.iter().any(|&i| acc[i] != 0);
            for i in touched {
                acc[i] = 0;
            }
            if nonzero {
                return false;
            }
        }
        true
    }
}

/// A finite chain complex of free abelian groups: `counts[i]` cells in
/// dimension `i` and boundary maps `∂_i : C_i → C_{i−1}` for `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    counts: Vec<usize>,
    /// `boundaries[i - 1]` is `∂_i`.
    boundaries: Vec<SparseMatrix>,
}

impl CellComplex {
    /// Checks shapes and `∂_{i−1} ∘ ∂_i = 0`.
    pub fn new(counts: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        let mut boundaries = boundaries;
        boundaries.truncate(counts.len().saturating_sub(1));
        if boundaries.len() + 1 != counts.len().max(1) {
            return Err(Error::Contract(
                "one boundary map per positive dimension".into(),
            ));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != counts[i] || d.cols() != counts[i + 1] {
                return Err(Error::Contract(format!(
                    "boundary ∂_{} has the wrong shape",
                    i + 1
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].product_is_zero(&boundaries[i]) {
                return Err(Error::Contract(format!("∂_{} ∘ ∂_{} ≠ 0", i, i + 1)));
            }
        }
        Ok(CellComplex { counts, boundaries })
    }

    /// Builds a complex from cells grouped by dimension, given each cell's
    /// boundary as `(face index in dimension − 1, coefficient)`.
    pub fn from_faces(faces: Vec<Vec<Vec<(usize, i64)>>>) -> Result<Self> {
        let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for (d, cols) in faces.into_iter().enumerate().skip(1) {
            boundaries.push(SparseMatrix::new(counts[d - 1], cols)?);
        }
        CellComplex::new(counts, boundaries)
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `∂_i` for `1 ≤ i ≤ dimension`.
    pub fn boundary(&self, i: usize) -> Option<&SparseMatrix> {
        i.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

pub fn euler_characteristic(c: &CellComplex) -> i64 {
    c.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle_boundary() -> CellComplex {
        // vertices 0,1,2; edges 01, 02, 12
        CellComplex::from_faces(vec![
            vec![vec![], vec![], vec![]],
            vec![
                vec![(0, -1), (1, 1)],
                vec![(0, -1), (2, 1)],
                vec![(1, -1), (2, 1)],
            ],
        ])
        .unwrap()
    }

    #[test]
    fn boundary_checks() {
        let c = triangle_boundary();
        assert_eq!(c.cell_counts(), &[3, 3]);
        assert_eq!(c.euler_characteristic(), 0);
        let filled = CellComplex::from_faces(vec![
            vec![vec![], vec![], vec![]],
            vec![
                vec![(0, -1), (1, 1)],
                vec![(0, -1), (2, 1)],
                vec![(1, -1), (2, 1)],
            ],
            vec![vec![(0, 1), (1, -1), (2, 1)]],
        ]);
        assert!(filled.is_ok());
        let broken = CellComplex::from_faces(vec![
            vec![vec![], vec![], vec![]],
            vec![
                vec![(0, -1), (1, 1)],
                vec![(0, -1), (2, 1)],
                vec![(1, -1), (2, 1)],
            ],
            vec![vec![(0, 1), (1, 1), (2, 1)]],
        ]);
        assert!(matches!(broken, Err(Error::Contract(_))));
    }

    #[test]
    fn empty_and_point() {
        let empty = CellComplex::new(vec![], vec![]).unwrap();
        assert_eq!(empty.dimension(), None);
        let point = CellComplex::new(vec![1], vec![]).unwrap();
        assert_eq!(point.dimension(), Some(0));
        assert_eq!(point.euler_characteristic(), 1);
    }
}
