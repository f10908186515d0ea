//! Integer homology through Smith normal form of sparse boundary matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{CellComplex, SparseMatrix};
use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};

/// Betti numbers and torsion coefficients of a chain complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    /// `(degree, invariant factors > 1)`, for degrees with torsion only.
    pub torsion: Vec<(usize, Vec<u64>)>,
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

pub fn homology(c: &CellComplex) -> Result<HomologySummary> {
    homology_capped(c, &Caps::default())
}

/// `H_i ≅ Z^{b_i} ⊕ torsion_i` with `b_i = c_i − rank ∂_i − rank ∂_{i+1}`
/// and torsion given by the invariant factors of `∂_{i+1}`.
pub fn homology_capped(c: &CellComplex, caps: &Caps) -> Result<HomologySummary> {
    let forms = (1..=c.dimension().unwrap_or(0))
        .map(|i| {
            let d = c.boundary(i).expect("boundary in range");
            ensure_cap(
                "boundary nonzeros",
                d.nonzeros() as u64,
                caps.max_snf_nonzeros,
            )?;
            smith_form(d)
        })
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = forms.iter().map(|f| f.rank).collect();
    let betti = betti_from_ranks(c.cell_counts(), &ranks);
    let torsion = forms
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.torsion.is_empty())
        .map(|(i, f)| (i, f.torsion.clone()))
        .collect();
    Ok(HomologySummary { betti, torsion })
}

/// Betti numbers only, from ranks over the rationals.
pub fn betti_numbers(c: &CellComplex, caps: &Caps) -> Result<Vec<usize>> {
    let ranks = (1..=c.dimension().unwrap_or(0))
        .map(|i| {
            let d = c.boundary(i).expect("boundary in range");
            ensure_cap(
                "boundary nonzeros",
                d.nonzeros() as u64,
                caps.max_snf_nonzeros,
            )?;
            let mut e = Eliminator::new(d);
            let units = e.unit_phase()?;
            Ok(units + dense_rank(e.remainder()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(betti_from_ranks(c.cell_counts(), &ranks))
}

/// `ranks[i - 1]` is the rank of `∂_i`.
fn betti_from_ranks(counts: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..counts.len())
        .map(|i| {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let above = ranks.get(i).copied().unwrap_or(0);
            counts[i] - below - above
        })
        .collect()
}

struct SmithForm {
    rank: usize,
    torsion: Vec<u64>,
}

fn smith_form(d: &SparseMatrix) -> Result<SmithForm> {
    let mut e = Eliminator::new(d);
    let units = e.unit_phase()?;
    let rest = diagonalize(e.remainder());
    let rank = units + rest.len();
    let torsion = invariant_factors(rest)
        .into_iter()
        .filter(|f| !f.is_one())
        .map(|f| f.to_u64().ok_or(Error::Overflow("torsion coefficient")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmithForm { rank, torsion })
}

/// Sparse row elimination on unit pivots.
struct Eliminator {
    rows: Vec<BTreeMap<usize, i128>>,
    col_rows: Vec<BTreeSet<usize>>,
}

impl Eliminator {
    fn new(d: &SparseMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); d.rows()];
        let mut col_rows = vec![BTreeSet::new(); d.cols()];
        for j in 0..d.cols() {
            for &(i, v) in d.column(j) {
                rows[i].insert(j, v as i128);
                col_rows[j].insert(i);
            }
        }
        Eliminator { rows, col_rows }
    }

    /// Repeatedly pivots on entries `±1`, preferring short rows. Each pivot
    /// splits off a `[±1]` block of the Smith form. Returns the pivot count.
    fn unit_phase(&mut self) -> Result<usize> {
        let mut pivots = 0;
        loop {
            let mut progress = false;
            for c in 0..self.col_rows.len() {
                let best = self.col_rows[c]
                    .iter()
                    .copied()
                    .filter(|&r| self.rows[r][&c].abs() == 1)
                    .min_by_key(|&r| self.rows[r].len());
                if let Some(p) = best {
                    self.eliminate(p, c)?;
                    pivots += 1;
                    progress = true;
                }
            }
            if !progress {
                return Ok(pivots);
            }
        }
    }

    fn eliminate(&mut self, p: usize, c: usize) -> Result<()> {
        let pivot_row = std::mem::take(&mut self.rows[p]);
        let unit = pivot_row[&c];
        for &k in pivot_row.keys() {
            self.col_rows[k].remove(&p);
        }
        let others: Vec<usize> = self.col_rows[c].iter().copied().collect();
        for r in others {
            let f = self.rows[r][&c] * unit;
            for (&k, &v) in &pivot_row {
                let cur = self.rows[r].get(&k).copied().unwrap_or(0);
                let next = f
                    .checked_mul(v)
                    .and_then(|fv| cur.checked_sub(fv))
                    .ok_or(Error::Overflow("elimination entry"))?;
                if next == 0 {
                    self.rows[r].remove(&k);
                    self.col_rows[k].remove(&r);
                } else {
                    self.rows[r].insert(k, next);
                    self.col_rows[k].insert(r);
                }
            }
        }
        debug_assert!(self.col_rows[c].is_empty());
        Ok(())
    }

    /// Remaining nonzero block as a dense matrix.
    fn remainder(&self) -> Vec<Vec<BigInt>> {
        let cols: Vec<usize> = (0..self.col_rows.len())
            .filter(|&c| !self.col_rows[c].is_empty())
            .collect();
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut dense = vec![BigInt::zero(); cols.len()];
                for (k, v) in r {
                    dense[index[k]] = BigInt::from(*v);
                }
                dense
            })
            .collect()
    }
}

fn min_nonzero(
    a: &[Vec<BigInt>],
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
}

/// Diagonal entries (absolute values) of a diagonal form reached by
/// unimodular row and column operations, pivoting on the smallest entry.
fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    while let Some((mut i, mut j)) =
        min_nonzero(&a, (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))))
    {
        loop {
            let mut clean = true;
            for r in 0..rows {
                if r == i || a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[i][j]);
                for k in 0..cols {
                    let t = &q * &a[i][k];
                    a[r][k] -= t;
                }
                clean &= a[r][j].is_zero();
            }
            for k in 0..cols {
                if k == j || a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[i][j]);
                for r in 0..rows {
                    let t = &q * &a[r][j];
                    a[r][k] -= t;
                }
                clean &= a[i][k].is_zero();
            }
            if clean {
                break;
            }
            let line = (0..rows).map(|r| (r, j)).chain((0..cols).map(|k| (i, k)));
            (i, j) = min_nonzero(&a, line).expect("pivot itself is nonzero");
        }
        out.push(a[i][j].abs());
        a[i][j] = BigInt::zero();
    }
    out
}

/// Rewrites diagonal entries as invariant factors `d_1 | d_2 | …`.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank over the rationals by fraction-free elimination.
fn dense_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn triangle_and_point() {
        let c = super::super::tests::triangle_boundary();
        let h = homology(&c).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        assert!(h.is_torsion_free());
        let point = CellComplex::new(vec![1], vec![]).unwrap();
        assert_eq!(homology(&point).unwrap().betti, vec![1]);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Minimal CW structure: one cell per dimension, ∂_1 = 0, ∂_2 = 2.
        let c =
            CellComplex::from_faces(vec![vec![vec![]], vec![vec![]], vec![vec![(0, 2)]]]).unwrap();
        let h = homology(&c).unwrap();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion, vec![(1, vec![2])]);
        assert_eq!(betti_numbers(&c, &Caps::default()).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn dense_forms() {
        let d = diagonalize(dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        let mut f = invariant_factors(d);
        f.sort();
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(dense_rank(dense(&[&[2, 4], &[1, 2]])), 1);
        assert_eq!(
            dense_rank(dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            3
        );
    }

    #[test]
    fn json_shape() {
        let h = HomologySummary {
            betti: vec![1, 0, 0],
            torsion: vec![(1, vec![2])],
        };
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"betti":[1,0,0],"torsion":[[1,[2]]]}"#
        );
    }
}
