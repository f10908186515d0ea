//! Exact counting: subgraph copies, induced copies, homomorphisms, walks,
//! orbit degrees, and the chromatic polynomial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};
use crate::families::{symmetry_on, FamilySpec, Label};
use crate::graph::{Graph, Injection};
use crate::orbits::orbit_ids;
use crate::polyfit::RationalPolynomial;

/// A family quantity sampled along `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    /// Copies of `pattern`, counted up to its automorphisms.
    Subgraph {
        pattern: Graph,
    },
    InducedSubgraph {
        pattern: Graph,
    },
    /// Homomorphisms from `pattern`.
    Hom {
        pattern: Graph,
    },
    Walks {
        r: usize,
    },
    ClosedWalks {
        r: usize,
    },
    /// Zero for the graph without vertices.
    MinDegree,
    /// Zero for the graph without vertices.
    MaxDegree,
    VertexCount,
    EdgeCount,
    /// Degree of the vertex with this label; every member must contain it.
    OrbitDegree {
        label: Label,
    },
}

impl Quantity {
    pub fn name(&self) -> String {
        match self {
            Quantity::Subgraph { pattern } => format!(
                "subgraph({}v/{}e)",
                pattern.vertex_count(),
                pattern.edge_count()
            ),
            Quantity::InducedSubgraph { pattern } => {
                format!(
                    "induced_subgraph({}v/{}e)",
                    pattern.vertex_count(),
                    pattern.edge_count()
                )
            }
            Quantity::Hom { pattern } => {
                format!("hom({}v/{}e)", pattern.vertex_count(), pattern.edge_count())
            }
            Quantity::Walks { r } => format!("walks(r={r})"),
            Quantity::ClosedWalks { r } => format!("closed_walks(r={r})"),
            Quantity::MinDegree => "min_degree".into(),
            Quantity::MaxDegree => "max_degree".into(),
            Quantity::VertexCount => "vertex_count".into(),
            Quantity::EdgeCount => "edge_count".into(),
            Quantity::OrbitDegree { label } => format!("orbit_degree({label})"),
        }
    }
}

/// Exact values of a quantity for consecutive `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub family: FamilySpec,
    pub quantity: Quantity,
    #[serde(with = "decimal_values")]
    pub values: Vec<(usize, BigInt)>,
}

/// `[[n, "decimal"], …]`, so counts survive 64-bit JSON consumers.
pub mod decimal_values {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[(usize, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        let repr: Vec<(usize, String)> = values.iter().map(|(n, v)| (*n, v.to_string())).collect();
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, BigInt)>, D::Error> {
        let repr: Vec<(usize, String)> = Vec::deserialize(d)?;
        repr.into_iter()
            .map(|(n, v)| v.parse().map(|v| (n, v)).map_err(D::Error::custom))
            .collect()
    }
}

/// A single integer as a decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Homomorphism,
    Injective,
    Induced,
}

/// Backtracking over maps `pattern → target`, one pattern vertex at a time.
struct Embedder<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    mode: Mode,
    order: Vec<usize>,
    /// For each position in `order`, an earlier pattern neighbour, if any.
    anchor: Vec<Option<usize>>,
}

impl<'a> Embedder<'a> {
    fn new(pattern: &'a Graph, target: &'a Graph, mode: Mode) -> Self {
        let n = pattern.vertex_count();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
                .expect("vertex left to place");
            anchor.push(pattern.neighbors(v).iter().copied().find(|&u| placed[u]));
            placed[v] = true;
            order.push(v);
            for &w in pattern.neighbors(v) {
                links[w] += 1;
            }
        }
        Embedder {
            pattern,
            target,
            mode,
            order,
            anchor,
        }
    }

    fn count(&self) -> u128 {
        let mut map = vec![usize::MAX; self.pattern.vertex_count()];
        let mut used = vec![false; self.target.vertex_count()];
        self.extend(0, &mut map, &mut used)
    }

    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> u128 {
        if depth == self.order.len() {
            return 1;
        }
        let v = self.order[depth];
        let all: Vec<usize>;
        let candidates: &[usize] = match self.anchor[depth] {
            Some(u) => self.target.neighbors(map[u]),
            None => {
                all = (0..self.target.vertex_count()).collect();
                &all
            }
        };
        let mut total = 0u128;
        for &w in candidates {
            if self.mode != Mode::Homomorphism {
                if used[w] || self.target.degree(w) < self.pattern.degree(v) {
                    continue;
                }
            }
            let ok = self.order[..depth].iter().all(|&u| {
                let p_edge = self.pattern.has_edge(u, v);
                if p_edge {
                    self.target.has_edge(map[u], w)
                } else if self.mode == Mode::Induced {
                    !self.target.has_edge(map[u], w)
                } else {
                    true
                }
            });
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            total += self.extend(depth + 1, map, used);
            used[w] = false;
        }
        map[v] = usize::MAX;
        total
    }
}

fn check_pattern(h: &Graph, caps: &Caps) -> Result<()> {
    ensure_cap(
        "pattern vertices",
        h.vertex_count() as u64,
        caps.max_pattern_vertices as u64,
    )
}

/// Injective homomorphisms `h → g`.
pub fn count_injective_homomorphisms(h: &Graph, g: &Graph, caps: &Caps) -> Result<BigUint> {
    check_pattern(h, caps)?;
    Ok(BigUint::from(Embedder::new(h, g, Mode::Injective).count()))
}

/// Injective maps `h → g` sending edges to edges and non-edges to non-edges.
pub fn count_induced_embeddings(h: &Graph, g: &Graph, caps: &Caps) -> Result<BigUint> {
    check_pattern(h, caps)?;
    Ok(BigUint::from(Embedder::new(h, g, Mode::Induced).count()))
}

/// `|Aut(h)|`, via the same engine applied to `h → h`.
pub fn automorphism_count(h: &Graph, caps: &Caps) -> Result<BigUint> {
    count_injective_homomorphisms(h, h, caps)
}

fn divide_by_automorphisms(embeddings: BigUint, h: &Graph, caps: &Caps) -> Result<BigUint> {
    let aut = automorphism_count(h, caps)?;
    let (q, r) = embeddings.div_rem(&aut);
    if !r.is_zero() {
        return Err(Error::Contract(format!(
            "{embeddings} embeddings not divisible by |Aut| = {aut}"
        )));
    }
    Ok(q)
}

/// Subgraphs of `g` isomorphic to `h`.
pub fn count_subgraphs(g: &Graph, h: &Graph) -> Result<BigUint> {
    count_subgraphs_capped(g, h, &Caps::default())
}

pub fn count_subgraphs_capped(g: &Graph, h: &Graph, caps: &Caps) -> Result<BigUint> {
    divide_by_automorphisms(count_injective_homomorphisms(h, g, caps)?, h, caps)
}

/// Induced subgraphs of `g` isomorphic to `h`.
pub fn count_induced_subgraphs(g: &Graph, h: &Graph) -> Result<BigUint> {
    count_induced_subgraphs_capped(g, h, &Caps::default())
}

pub fn count_induced_subgraphs_capped(g: &Graph, h: &Graph, caps: &Caps) -> Result<BigUint> {
    divide_by_automorphisms(count_induced_embeddings(h, g, caps)?, h, caps)
}

/// Graph homomorphisms `t → g`.
pub fn count_homomorphisms(t: &Graph, g: &Graph) -> Result<BigUint> {
    count_homomorphisms_capped(t, g, &Caps::default())
}

/// Counts component by component: homomorphisms out of a disjoint union
/// are tuples of homomorphisms out of the parts.
pub fn count_homomorphisms_capped(t: &Graph, g: &Graph, caps: &Caps) -> Result<BigUint> {
    check_pattern(t, caps)?;
    let mut total = BigUint::one();
    for component in components(t) {
        if component.len() == 1 {
            total *= BigUint::from(g.vertex_count());
        } else {
            let part = t.induced_subgraph(&component);
            total *= BigUint::from(Embedder::new(&part, g, Mode::Homomorphism).count());
        }
    }
    Ok(total)
}

fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Chromatic polynomial by deletion-contraction.
pub fn chromatic_polynomial(t: &Graph) -> Result<RationalPolynomial> {
    chromatic_polynomial_capped(t, &Caps::default())
}

pub fn chromatic_polynomial_capped(t: &Graph, caps: &Caps) -> Result<RationalPolynomial> {
    ensure_cap(
        "chromatic vertices",
        t.vertex_count() as u64,
        caps.max_chromatic_vertices as u64,
    )?;
    ensure_cap(
        "chromatic edges",
        t.edge_count() as u64,
        caps.max_chromatic_edges as u64,
    )?;
    Ok(RationalPolynomial::from_integers(deletion_contraction(t)))
}

/// Integer coefficients, constant term first.
fn deletion_contraction(g: &Graph) -> Vec<BigInt> {
    let n = g.vertex_count();
    let c = g.component_count();
    if g.edge_count() + c == n {
        // Forest: x^c (x-1)^(n-c).
        let mut p = monomial(c);
        for _ in 0..n - c {
            p = mul_linear(&p, -1);
        }
        return p;
    }
    if g.edge_count() == n * (n - 1) / 2 {
        // Complete graph: falling factorial.
        let mut p = vec![BigInt::one()];
        for i in 0..n {
            p = mul_linear(&p, -(i as i64));
        }
        return p;
    }
    // Delete/contract an edge on a cycle so both branches shrink usefully.
    let (u, v) = g.edges()[g.edges().len() - 1];
    let deleted = Graph::from_canonical(
        n,
        g.edges().iter().copied().filter(|&e| e != (u, v)).collect(),
    );
    let contracted = contract(g, u, v);
    let a = deletion_contraction(&deleted);
    let b = deletion_contraction(&contracted);
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .skip_while(Zero::is_zero)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect()
}

/// Merges `v` into `u` (`u < v`), dropping the loop and parallel edges.
fn contract(g: &Graph, u: usize, v: usize) -> Graph {
    let relabel = |x: usize| match x.cmp(&v) {
        std::cmp::Ordering::Less => x,
        std::cmp::Ordering::Equal => u,
        std::cmp::Ordering::Greater => x - 1,
    };
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| (relabel(a), relabel(b)))
        .filter(|(a, b)| a != b);
    Graph::from_edges_dedup(g.vertex_count() - 1, edges)
}

fn monomial(k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); k + 1];
    p[k] = BigInt::one();
    p
}

/// `p · (x + c)`.
fn mul_linear(p: &[BigInt], c: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i + 1] += a;
        out[i] += a * c;
    }
    out
}

/// Walk counts of length `r`: all walks, and closed walks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCounts {
    pub walks: BigUint,
    pub closed_walks: BigUint,
}

pub fn count_walks(g: &Graph, r: usize) -> Result<WalkCounts> {
    count_walks_capped(g, r, &Caps::default())
}

/// `walks` is the sum of all entries of `A^r`, `closed_walks` its trace.
///
/// Rows of `A^r` are formed by repeated multiplication with the sparse
/// adjacency; the trace uses `(A^r)_{vv} = ⟨A^a e_v, A^b e_v⟩` with
/// `a + b = r`, which halves the work.
pub fn count_walks_capped(g: &Graph, r: usize, caps: &Caps) -> Result<WalkCounts> {
    ensure_cap("walk length", r as u64, caps.max_walk_length as u64)?;
    ensure_cap(
        "walk vertices",
        g.vertex_count() as u64,
        caps.max_walk_vertices,
    )?;
    let n = g.vertex_count();
    let step = |x: &[BigUint]| -> Vec<BigUint> {
        (0..n)
            .map(|v| g.neighbors(v).iter().map(|&w| &x[w]).sum())
            .collect()
    };
    let mut all = vec![BigUint::one(); n];
    for _ in 0..r {
        all = step(&all);
    }
    let walks = all.iter().sum();

    let (long, short) = (r - r / 2, r / 2);
    let mut closed = BigUint::zero();
    for v in 0..n {
        let mut x = vec![BigUint::zero(); n];
        x[v] = BigUint::one();
        let mut half = x.clone();
        for i in 0..long {
            if i == short {
                half = x.clone();
            }
            x = step(&x);
        }
        if short == long {
            half = x.clone();
        }
        closed += x.iter().zip(&half).map(|(a, b)| a * b).sum::<BigUint>();
    }
    Ok(WalkCounts {
        walks,
        closed_walks: closed,
    })
}

/// Common degree of the `S_n`-orbit containing the vertex labelled `label`.
pub fn orbit_degree(spec: &FamilySpec, n: usize, label: &Label) -> Result<usize> {
    let lg = spec.instantiate(n)?;
    let v = lg
        .index_of(label)
        .ok_or_else(|| Error::UnknownLabel(format!("{label} in G_{n}")))?;
    let generators = Injection::symmetric_generators(n)
        .iter()
        .map(|s| symmetry_on(&lg, s).map(|m| m.vertex_map().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let ids = orbit_ids(lg.graph.vertex_count(), &generators);
    let degree = lg.graph.degree(v);
    if let Some(w) = (0..ids.len()).find(|&w| ids[w] == ids[v] && lg.graph.degree(w) != degree) {
        return Err(Error::Contract(format!(
            "orbit of {label} mixes degrees {degree} and {}",
            lg.graph.degree(w)
        )));
    }
    Ok(degree)
}

/// Value of `quantity` on a single graph (orbit degree needs the family).
pub fn evaluate_quantity(
    spec: &FamilySpec,
    n: usize,
    quantity: &Quantity,
    caps: &Caps,
) -> Result<BigInt> {
    if let Quantity::OrbitDegree { label } = quantity {
        return Ok(orbit_degree(spec, n, label)?.into());
    }
    ensure_cap(
        "family member vertices",
        spec.vertex_count(n),
        caps.max_vertices,
    )?;
    let lg = spec.instantiate(n)?;
    let g = &lg.graph;
    let value: BigUint = match quantity {
        Quantity::Subgraph { pattern } => count_subgraphs_capped(g, pattern, caps)?,
        Quantity::InducedSubgraph { pattern } => count_induced_subgraphs_capped(g, pattern, caps)?,
        Quantity::Hom { pattern } => count_homomorphisms_capped(pattern, g, caps)?,
        Quantity::Walks { r } => count_walks_capped(g, *r, caps)?.walks,
        Quantity::ClosedWalks { r } => count_walks_capped(g, *r, caps)?.closed_walks,
        Quantity::MinDegree => g.degree_profile().min.unwrap_or(0).into(),
        Quantity::MaxDegree => g.degree_profile().max.unwrap_or(0).into(),
        Quantity::VertexCount => g.vertex_count().into(),
        Quantity::EdgeCount => g.edge_count().into(),
        Quantity::OrbitDegree { .. } => unreachable!("handled above"),
    };
    Ok(value.into())
}

/// Samples `quantity` on `G_n` for every `n` in `start..=end`.
pub fn sample_family(
    spec: &FamilySpec,
    quantity: &Quantity,
    start: usize,
    end: usize,
    caps: &Caps,
) -> Result<CountRecord> {
    use rayon::prelude::*;
    if start > end {
        return Err(Error::InvalidArgument(format!(
            "empty range {start}..{end}"
        )));
    }
    spec.validate()?;
    let values = (start..=end)
        .into_par_iter()
        .map(|n| evaluate_quantity(spec, n, quantity, caps).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountRecord {
        family: spec.clone(),
        quantity: quantity.clone(),
        values,
    })
}
