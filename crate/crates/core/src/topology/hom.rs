//! Hom-complexes: multi-homomorphisms `T → G` ordered by pointwise
//! containment.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::CellComplex;
use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};
use crate::graph::Graph;

/// Assigns each vertex of `T` a nonempty set of `G`-vertices (bitmask),
/// with every pair across a `T`-edge adjacent in `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiHom {
    pub assignment: Vec<u32>,
}

impl MultiHom {
    /// `Σ |α(x)| − |V(T)|`.
    pub fn dimension(&self) -> usize {
        self.assignment
            .iter()
            .map(|m| m.count_ones() as usize - 1)
            .sum()
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.assignment
            .iter()
            .map(|&m| (0..32).filter(|b| m >> b & 1 == 1).collect())
            .collect()
    }

    pub fn is_valid(&self, t: &Graph, g: &Graph) -> bool {
        if self.assignment.len() != t.vertex_count() || self.assignment.iter().any(|&m| m == 0) {
            return false;
        }
        let sets = self.sets();
        t.edges().iter().all(|&(x, y)| {
            sets[x]
                .iter()
                .all(|&v| sets[y].iter().all(|&w| g.has_edge(v, w)))
        })
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Nonempty submasks of `mask`, in increasing numeric order.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut s = 0u32;
    std::iter::from_fn(move || {
        s = s.wrapping_sub(mask) & mask;
        (s != 0).then_some(s)
    })
}

fn check_sizes(t: &Graph, g: &Graph, caps: &Caps) -> Result<()> {
    ensure_cap(
        "hom source vertices",
        t.vertex_count() as u64,
        caps.max_hom_source_vertices as u64,
    )?;
    ensure_cap(
        "hom target vertices",
        g.vertex_count() as u64,
        caps.max_hom_target_vertices.min(32) as u64,
    )
}

/// All multi-homomorphisms, sorted by dimension and then assignment.
pub fn multi_homomorphisms(t: &Graph, g: &Graph, caps: &Caps) -> Result<Vec<MultiHom>> {
    check_sizes(t, g, caps)?;
    let nbr = neighbor_masks(g);
    let full: u32 = if g.vertex_count() == 32 {
        u32::MAX
    } else {
        (1u32 << g.vertex_count()) - 1
    };
    let mut out = Vec::new();
    let mut current = vec![0u32; t.vertex_count()];
    extend(
        t,
        &nbr,
        full,
        0,
        &mut current,
        &mut out,
        caps.max_complex_cells,
    )?;
    out.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn extend(
    t: &Graph,
    nbr: &[u32],
    full: u32,
    x: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiHom>,
    limit: u64,
) -> Result<()> {
    if x == t.vertex_count() {
        ensure_cap("complex cells", out.len() as u64 + 1, limit)?;
        out.push(MultiHom {
            assignment: current.clone(),
        });
        return Ok(());
    }
    let mut allowed = full;
    for &y in t.neighbors(x) {
        if y < x {
            let mut common = full;
            for v in (0..32).filter(|b| current[y] >> b & 1 == 1) {
                common &= nbr[v];
            }
            allowed &= common;
        }
    }
    for s in submasks(allowed) {
        current[x] = s;
        extend(t, nbr, full, x + 1, current, out, limit)?;
    }
    current[x] = 0;
    Ok(())
}

/// The Hom-complex as the order complex of its face poset.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub multihoms: Vec<MultiHom>,
    /// Simplices of the order complex by dimension: chains of indices into
    /// `multihoms`, smallest element first.
    pub chains: Vec<Vec<Vec<usize>>>,
    pub complex: CellComplex,
}

pub fn hom_complex(t: &Graph, g: &Graph) -> Result<HomComplex> {
    hom_complex_capped(t, g, &Caps::default())
}

pub fn hom_complex_capped(t: &Graph, g: &Graph, caps: &Caps) -> Result<HomComplex> {
    let multihoms = multi_homomorphisms(t, g, caps)?;
    let index: HashMap<&MultiHom, usize> =
        multihoms.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // Chains are enumerated downward from their top element; every proper
    // face of a multi-homomorphism is one, so the down-set is a product of
    // nonempty-subset lattices.
    let below: Vec<Vec<usize>> = multihoms
        .iter()
        .map(|m| {
            let mut faces = vec![Vec::new()];
            for &mask in &m.assignment {
                faces = faces
                    .into_iter()
                    .flat_map(|prefix: Vec<u32>| {
                        submasks(mask).map(move |s| {
                            let mut p = prefix.clone();
                            p.push(s);
                            p
                        })
                    })
                    .collect();
            }
            faces
                .into_iter()
                .map(|a| index[&MultiHom { assignment: a }])
                .filter(|&j| multihoms[j] != *m)
                .collect()
        })
        .collect();

    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total = 0u64;
    for top in 0..multihoms.len() {
        let mut stack = vec![vec![top]];
        while let Some(chain) = stack.pop() {
            total += 1;
            ensure_cap("complex cells", total, caps.max_complex_cells)?;
            let low = *chain.last().expect("nonempty chain");
            for &b in &below[low] {
                let mut next = chain.clone();
                next.push(b);
                stack.push(next);
            }
            let mut simplex = chain;
            simplex.reverse();
            let d = simplex.len() - 1;
            if chains.len() <= d {
                chains.resize(d + 1, Vec::new());
            }
            chains[d].push(simplex);
        }
    }
    for level in chains.iter_mut() {
        level.sort();
    }
    let complex = simplicial(&chains)?;
    Ok(HomComplex {
        multihoms,
        chains,
        complex,
    })
}

/// Chain complex of an ordered simplicial complex: `∂[v_0…v_k] = Σ (−1)^i [… v̂_i …]`.
fn simplicial(simplices: &[Vec<Vec<usize>>]) -> Result<CellComplex> {
    let index: Vec<HashMap<&[usize], usize>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let mut faces = vec![vec![Vec::new(); simplices.first().map_or(0, Vec::len)]];
    for d in 1..simplices.len() {
        let cols = simplices[d]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        let row = *index[d - 1].get(f.as_slice()).ok_or_else(|| {
                            Error::Contract("order complex is not closed under faces".into())
                        })?;
                        Ok((row, if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(cols);
    }
    CellComplex::from_faces(faces)
}

/// The Hom-complex with its own cells: each multi-homomorphism `α` is the
/// product of simplices `Π_x Δ^{|α(x)|−1}`, with the product boundary
/// rule. Returns the complex and the cells by dimension.
pub fn hom_complex_cellular(
    t: &Graph,
    g: &Graph,
    caps: &Caps,
) -> Result<(CellComplex, Vec<Vec<MultiHom>>)> {
    let multihoms = multi_homomorphisms(t, g, caps)?;
    let top = multihoms.last().map_or(0, |m| m.dimension() + 1);
    let mut cells: Vec<Vec<MultiHom>> = vec![Vec::new(); top];
    for m in multihoms {
        cells[m.dimension()].push(m);
    }
    let index: Vec<HashMap<&MultiHom, usize>> = cells
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let mut faces = vec![vec![Vec::new(); cells.first().map_or(0, Vec::len)]];
    for d in 1..cells.len() {
        let cols = cells[d]
            .iter()
            .map(|m| {
                let mut col = Vec::new();
                let mut offset = 0usize;
                for (x, &mask) in m.assignment.iter().enumerate() {
                    if mask.count_ones() >= 2 {
                        for (pos, b) in (0..32).filter(|b| mask >> b & 1 == 1).enumerate() {
                            let mut face = m.clone();
                            face.assignment[x] &= !(1 << b);
                            let sign = if (offset + pos) % 2 == 0 { 1 } else { -1 };
                            col.push((index[d - 1][&face], sign));
                        }
                    }
                    offset += mask.count_ones() as usize - 1;
                }
                col
            })
            .collect();
        faces.push(cols);
    }
    Ok((CellComplex::from_faces(faces)?, cells))
}
