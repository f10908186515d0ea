//! Discretized configuration spaces of ordered points on a graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::CellComplex;
use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DConfCoordinate {
    Vertex(usize),
    /// Endpoints `(u, v)` with `u < v`; oriented from `u` to `v`.
    Edge(usize, usize),
}

impl DConfCoordinate {
    fn closure(self) -> [Option<usize>; 2] {
        match self {
            DConfCoordinate::Vertex(v) => [Some(v), None],
            DConfCoordinate::Edge(u, v) => [Some(u), Some(v)],
        }
    }
}

/// A product cell `σ_1 × … × σ_m` with pairwise disjoint closures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DConfCell {
    pub coordinates: Vec<DConfCoordinate>,
}

impl DConfCell {
    /// Number of edge coordinates.
    pub fn dimension(&self) -> usize {
        self.coordinates
            .iter()
            .filter(|c| matches!(c, DConfCoordinate::Edge(..)))
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct DConfComplex {
    /// The graph the cells live on: `g` with every edge subdivided into `m`.
    pub subdivided: Graph,
    pub cells: Vec<Vec<DConfCell>>,
    pub complex: CellComplex,
}

pub fn dconf_complex(g: &Graph, m: usize) -> Result<DConfComplex> {
    dconf_complex_capped(g, m, &Caps::default())
}

/// Cells of `DConf_m(G^{(m)})` with the cubical boundary
/// `∂(… × [u,v] × …) = Σ_j ±(… × v × …) ∓ (… × u × …)`, the sign over
/// edge coordinate `j` being `(−1)^{#edge coordinates before j}`.
pub fn dconf_complex_capped(g: &Graph, m: usize, caps: &Caps) -> Result<DConfComplex> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "number of points must be positive".into(),
        ));
    }
    ensure_cap(
        "configuration points",
        m as u64,
        caps.max_dconf_points as u64,
    )?;
    let subdivided = g.subdivide(m)?;
    let mut pieces: Vec<DConfCoordinate> = (0..subdivided.vertex_count())
        .map(DConfCoordinate::Vertex)
        .collect();
    pieces.extend(
        subdivided
            .edges()
            .iter()
            .map(|&(u, v)| DConfCoordinate::Edge(u, v)),
    );

    let mut cells: Vec<Vec<DConfCell>> = vec![Vec::new(); m + 1];
    let mut used = vec![false; subdivided.vertex_count()];
    let mut current = Vec::with_capacity(m);
    let mut total = 0u64;
    enumerate(
        &pieces,
        m,
        &mut used,
        &mut current,
        &mut cells,
        &mut total,
        caps.max_complex_cells,
    )?;
    while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }

    let index: Vec<HashMap<&DConfCell, usize>> = cells
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut faces = vec![vec![Vec::new(); cells[0].len()]];
    for d in 1..cells.len() {
        let cols = cells[d]
            .iter()
            .map(|cell| {
                let mut col = Vec::with_capacity(2 * d);
                let mut before = 0;
                for (j, coord) in cell.coordinates.iter().enumerate() {
                    if let DConfCoordinate::Edge(u, v) = *coord {
                        let sign = if before % 2 == 0 { 1 } else { -1 };
                        for (end, s) in [(v, sign), (u, -sign)] {
                            let mut face = cell.clone();
                            face.coordinates[j] = DConfCoordinate::Vertex(end);
                            col.push((index[d - 1][&face], s));
                        }
                        before += 1;
                    }
                }
                col
            })
            .collect();
        faces.push(cols);
    }
    let complex = CellComplex::from_faces(faces)?;
    Ok(DConfComplex {
        subdivided,
        cells,
        complex,
    })
}

fn enumerate(
    pieces: &[DConfCoordinate],
    m: usize,
    used: &mut [bool],
    current: &mut Vec<DConfCoordinate>,
    cells: &mut [Vec<DConfCell>],
    total: &mut u64,
    limit: u64,
) -> Result<()> {
    if current.len() == m {
        *total += 1;
        ensure_cap("complex cells", *total, limit)?;
        let cell = DConfCell {
            coordinates: current.clone(),
        };
        cells[cell.dimension()].push(cell);
        return Ok(());
    }
    for &piece in pieces {
        let closure = piece.closure();
        if closure.iter().flatten().any(|&v| used[v]) {
            continue;
        }
        for &v in closure.iter().flatten() {
            used[v] = true;
        }
        current.push(piece);
        enumerate(pieces, m, used, current, cells, total, limit)?;
        current.pop();
        for &v in closure.iter().flatten() {
            used[v] = false;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::homology;

    #[test]
    fn star_with_two_points() {
        let c = dconf_complex(&Graph::star(3), 2).unwrap();
        assert_eq!(c.complex.euler_characteristic(), 0);
        assert_eq!(homology(&c.complex).unwrap().betti, vec![1, 1, 0]);
    }

    #[test]
    fn interval_with_two_points() {
        let c = dconf_complex(&Graph::path(2), 2).unwrap();
        assert_eq!(homology(&c.complex).unwrap().betti[0], 2);
    }

    #[test]
    fn one_point_is_the_graph() {
        let g = Graph::cycle(4).unwrap();
        let c = dconf_complex(&g, 1).unwrap();
        assert_eq!(c.complex.cell_counts(), &[4, 4]);
        assert_eq!(homology(&c.complex).unwrap().betti, vec![1, 1]);
    }

    #[test]
    fn cells_are_closure_disjoint() {
        let c = dconf_complex(&Graph::complete(3), 2).unwrap();
        for cell in c.cells.iter().flatten() {
            let mut seen: Vec<usize> = cell
                .coordinates
                .iter()
                .flat_map(|p| p.closure())
                .flatten()
                .collect();
            let n = seen.len();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), n);
        }
    }

    #[test]
    fn point_cap() {
        assert!(matches!(
            dconf_complex(&Graph::path(2), 4),
            Err(Error::Capacity { .. })
        ));
        assert!(dconf_complex(&Graph::path(2), 0).is_err());
    }
}
