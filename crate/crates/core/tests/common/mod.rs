//! Brute-force oracles that share no code with the library engines.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use figraph::topology::CellComplex;
use figraph::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Calls `visit` on every injective map `[k] → [n]`.
pub fn for_each_injection(k: usize, n: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(
        k: usize,
        n: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, n, used, cur, visit);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(k, n, &mut vec![false; n], &mut Vec::new(), visit);
}

/// Calls `visit` on every map `[k] → [n]`.
pub fn for_each_map(k: usize, n: usize, visit: &mut impl FnMut(&[usize])) {
    if n == 0 {
        if k == 0 {
            visit(&[]);
        }
        return;
    }
    let mut cur = vec![0usize; k];
    loop {
        visit(&cur);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub fn hom_count(t: &Graph, g: &Graph) -> u64 {
    let a = adjacency(g);
    let mut count = 0;
    for_each_map(t.vertex_count(), g.vertex_count(), &mut |f| {
        if t.edges().iter().all(|&(x, y)| a[f[x]][f[y]]) {
            count += 1;
        }
    });
    count
}

pub fn injective_hom_count(h: &Graph, g: &Graph) -> u64 {
    let a = adjacency(g);
    let mut count = 0;
    for_each_injection(h.vertex_count(), g.vertex_count(), &mut |f| {
        if h.edges().iter().all(|&(x, y)| a[f[x]][f[y]]) {
            count += 1;
        }
    });
    count
}

pub fn induced_embedding_count(h: &Graph, g: &Graph) -> u64 {
    let a = adjacency(g);
    let b = adjacency(h);
    let k = h.vertex_count();
    let mut count = 0;
    for_each_injection(k, g.vertex_count(), &mut |f| {
        if (0..k).all(|x| (0..k).all(|y| x == y || a[f[x]][f[y]] == b[x][y])) {
            count += 1;
        }
    });
    count
}

pub fn automorphisms(h: &Graph) -> u64 {
    induced_embedding_count(h, h)
}

/// Copies of `h` in `g`: distinct edge sets that are images of `h`.
pub fn subgraph_copies(h: &Graph, g: &Graph) -> u64 {
    let a = adjacency(g);
    let mut copies: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for_each_injection(h.vertex_count(), g.vertex_count(), &mut |f| {
        if h.edges().iter().all(|&(x, y)| a[f[x]][f[y]]) {
            let mut image: Vec<(usize, usize)> = h
                .edges()
                .iter()
                .map(|&(x, y)| (f[x].min(f[y]), f[x].max(f[y])))
                .collect();
            image.sort_unstable();
            // Isolated pattern vertices are part of the copy's vertex set.
            let mut vertices: Vec<usize> = f.to_vec();
            vertices.sort_unstable();
            image.extend(vertices.into_iter().map(|v| (usize::MAX, v)));
            copies.insert(image);
        }
    });
    copies.len() as u64
}

pub fn proper_colorings(t: &Graph, q: usize) -> u64 {
    hom_count(t, &Graph::complete(q))
}

/// `trace(A^r)` and the sum of all entries of `A^r` by exact powers.
pub fn walk_counts(g: &Graph, r: usize) -> (u128, u128) {
    let n = g.vertex_count();
    let a: Vec<Vec<u128>> = adjacency(g)
        .iter()
        .map(|row| row.iter().map(|&b| b as u128).collect())
        .collect();
    let mut p: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u128).collect())
        .collect();
    for _ in 0..r {
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| p[i][k] * a[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    let trace = (0..n).map(|i| p[i][i]).sum();
    let total = p.iter().flatten().sum();
    (trace, total)
}

/// Closed walks of length `r` as explicit vertex tuples.
pub fn closed_walk_tuples(g: &Graph, r: usize) -> u64 {
    let a = adjacency(g);
    let mut count = 0;
    for_each_map(r, g.vertex_count(), &mut |w| {
        if (0..r).all(|i| a[w[i]][w[(i + 1) % r]]) {
            count += 1;
        }
    });
    count
}

/// All-pairs distances by Floyd-Warshall.
fn distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut d: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if a[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |z| x + y < z) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// `None` for a disconnected graph.
pub fn diameter(g: &Graph) -> Option<usize> {
    let d = distances(g);
    let mut best = 0;
    for row in &d {
        for x in row {
            best = best.max((*x)?);
        }
    }
    Some(best)
}

/// Shortest cycle, by removing each edge and measuring the detour.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let rest: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        let h = Graph::new(g.vertex_count(), rest).unwrap();
        if let Some(d) = distances(&h)[u][v] {
            best = Some(best.map_or(d + 1, |b: usize| b.min(d + 1)));
        }
    }
    best
}

/// `∂_{i−1} ∘ ∂_i` computed entry by entry, for every `i ≥ 2`.
pub fn boundary_squares_vanish(c: &CellComplex) -> bool {
    let top = match c.dimension() {
        Some(d) => d,
        None => return true,
    };
    for i in 2..=top {
        let outer = c.boundary(i - 1).unwrap();
        let inner = c.boundary(i).unwrap();
        for j in 0..inner.cols() {
            let mut acc: HashMap<usize, i128> = HashMap::new();
            for &(k, b) in inner.column(j) {
                for &(row, a) in outer.column(k) {
                    *acc.entry(row).or_default() += a as i128 * b as i128;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
    }
    true
}

/// Adjacency bitmask over the `n(n−1)/2` vertex pairs, in lexicographic pair order.
fn pair_code(a: &[Vec<bool>], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | a[order[i]][order[j]] as u64;
        }
    }
    code
}

/// Canonical code: the largest pair code over orderings that list
/// vertices by non-increasing degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let a = adjacency(g);
    let n = g.vertex_count();
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for v in by_degree {
        match classes.last_mut() {
            Some((d, members)) if *d == g.degree(v) => members.push(v),
            _ => classes.push((g.degree(v), vec![v])),
        }
    }
    let mut best = 0u64;
    let mut order = Vec::with_capacity(n);
    fn permute(
        classes: &[(usize, Vec<usize>)],
        idx: usize,
        order: &mut Vec<usize>,
        a: &[Vec<bool>],
        best: &mut u64,
    ) {
        if idx == classes.len() {
            *best = (*best).max(pair_code(a, order));
            return;
        }
        let members = &classes[idx].1;
        for_each_injection(members.len(), members.len(), &mut |p| {
            let start = order.len();
            order.extend(p.iter().map(|&i| members[i]));
            permute(classes, idx + 1, order, a, best);
            order.truncate(start);
        });
    }
    permute(&classes, 0, &mut order, &a, &mut best);
    best
}

/// One representative of every isomorphism class on `n ≤ n_max` vertices,
/// indexed by `n`, grown by adding a vertex with every neighbourhood.
pub fn graph_catalog(n_max: usize) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=n_max {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 1] {
            for mask in 0u32..1 << (n - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
                edges.extend(
                    (0..n - 1)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| (b, n - 1)),
                );
                let h = Graph::new(n, edges).unwrap();
                if seen.insert(canonical_code(&h)) {
                    level.push(h);
                }
            }
        }
        levels.push(level);
    }
    levels
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(
        g.vertex_count(),
        g.edges().iter().map(|&(u, v)| (perm[u], perm[v])),
    )
    .unwrap()
}

/// Proptest strategy: simple graphs on at most `max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            },
        )
    })
}

/// `det(tI − M)` by fraction-free elimination.
pub fn bareiss_char_value(m: &[Vec<i64>], t: i64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(if i == j { t } else { 0 } - m[i][j]))
                .collect()
        })
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        prev * sign
    }
}
