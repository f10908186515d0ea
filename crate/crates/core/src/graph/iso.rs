use std::collections::BTreeMap;

use super::Graph;
use crate::caps::Caps;
use crate::error::{ensure_cap, Result};

/// Isomorphism test for graphs with at most 64 vertices.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    are_isomorphic_capped(g, h, &Caps::default())
}

/// Joint colour refinement followed by a backtracking search for a
/// colour- and adjacency-preserving bijection.
pub fn are_isomorphic_capped(g: &Graph, h: &Graph, caps: &Caps) -> Result<bool> {
    let limit = caps.max_isomorphism_vertices.min(64) as u64;
    ensure_cap("isomorphism vertices", g.vertex_count() as u64, limit)?;
    ensure_cap("isomorphism vertices", h.vertex_count() as u64, limit)?;
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let n = g.vertex_count();
    let (cg, ch) = refine_jointly(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(false);
    }

    let bits = |x: &Graph| -> Vec<u64> {
        (0..n)
            .map(|v| x.neighbors(v).iter().fold(0u64, |acc, &w| acc | (1 << w)))
            .collect()
    };
    let search = Search {
        adj_g: bits(g),
        adj_h: bits(h),
        color_g: cg,
        color_h: ch,
        order: search_order(g),
    };
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    Ok(search.extend(0, &mut map, &mut used))
}

/// Iterated neighbourhood-multiset refinement over the disjoint union, so
/// colour ids are comparable between the two graphs.
fn refine_jointly(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.vertex_count()).map(|v| h.degree(v)).collect();
    let mut classes = count_classes(&cg, &ch);
    loop {
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sig = |x: &Graph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = x.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sg: Vec<_> = (0..g.vertex_count()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.vertex_count()).map(|v| sig(h, &ch, v)).collect();
        for s in sg.iter().chain(sh.iter()) {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        // Deterministic ids: rank signatures in sorted order.
        for (rank, id) in ids.values_mut().enumerate() {
            *id = rank;
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        let next_classes = count_classes(&cg, &ch);
        if next_classes == classes {
            return (cg, ch);
        }
        classes = next_classes;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Vertices of `g` ordered so each one has as many earlier neighbours as
/// possible, which lets adjacency checks prune early.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search {
    adj_g: Vec<u64>,
    adj_h: Vec<u64>,
    color_g: Vec<usize>,
    color_h: Vec<usize>,
    order: Vec<usize>,
}

impl Search {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.adj_h.len() {
            if *used & (1 << w) != 0 || self.color_h[w] != self.color_g[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let g_edge = self.adj_g[v] & (1 << u) != 0;
                let h_edge = self.adj_h[w] & (1 << map[u]) != 0;
                g_edge == h_edge
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            *used &= !(1 << w);
            map[v] = usize::MAX;
        }
        false
    }
}
