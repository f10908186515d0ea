//! Built-in FI-graph families.
//!
//! A family assigns to every `n` a graph `G_n` whose vertices carry
//! combinatorial labels built from the symbols `[n] = {0, …, n-1}`. An
//! injection `f: [n] ↪ [m]` acts on labels symbol by symbol, which yields the
//! transition morphism `G_n → G_m`; permutations give the symmetric-group
//! action.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMorphism, Injection};

/// A named family of graphs indexed by `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Complete graphs `K_n`.
    Complete,
    /// Kneser graphs `KG_{n,k}`: `k`-subsets, adjacent when disjoint.
    Kneser { k: usize },
    /// `k`-subsets adjacent when they share at most `r` symbols.
    GenKneser { k: usize, r: usize },
    /// Subsets of size at most `k` (the empty set included), adjacent when disjoint.
    KneserLe { k: usize },
    /// Johnson graphs `J_{n,k}`: `k`-subsets sharing exactly `k-1` symbols.
    Johnson { k: usize },
    /// `K_{n,k}`; the part of size `k` is fixed by every transition.
    CompleteBipartite { k: usize },
    /// Ordered `k`-tuples over `[n]` (repeats allowed), adjacent when they
    /// differ in exactly one coordinate.
    Lattice { k: usize },
    /// `core ∨ pendant^{∨n}`: `n` copies of `pendant` glued to `core` by
    /// identifying `pendant_base` with `core_base`.
    Wedge {
        core: Graph,
        pendant: Graph,
        core_base: usize,
        pendant_base: usize,
    },
    /// Line graphs of another family.
    LineOf { inner: Box<FamilySpec> },
}

/// Combinatorial name of a vertex of `G_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    /// Vertex `i` of `K_n`.
    Point(usize),
    /// A subset of `[n]`, sorted.
    Subset(Vec<usize>),
    Tuple(Vec<usize>),
    /// A vertex of the fixed part of a complete bipartite graph.
    Fixed(usize),
    /// A vertex of the growing part of a complete bipartite graph.
    Moving(usize),
    /// A vertex of the wedge core.
    Core(usize),
    /// Vertex `vertex` (never the basepoint) of pendant copy `copy`.
    Pendant {
        copy: usize,
        vertex: usize,
    },
    /// An edge of the inner family, endpoints in label order.
    Edge(Box<Label>, Box<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Label::Point(i) => write!(f, "{i}"),
            Label::Subset(s) => write!(f, "{{{}}}", list(s)),
            Label::Tuple(t) => write!(f, "({})", list(t)),
            Label::Fixed(i) => write!(f, "fixed{i}"),
            Label::Moving(i) => write!(f, "moving{i}"),
            Label::Core(v) => write!(f, "core{v}"),
            Label::Pendant { copy, vertex } => write!(f, "pendant{copy}.{vertex}"),
            Label::Edge(a, b) => write!(f, "[{a}|{b}]"),
        }
    }
}

impl Label {
    /// Applies an injection symbol by symbol.
    fn map(&self, f: &Injection) -> Label {
        match self {
            Label::Point(i) => Label::Point(f.apply(*i)),
            Label::Subset(s) => {
                let mut image: Vec<usize> = s.iter().map(|&x| f.apply(x)).collect();
                image.sort_unstable();
                Label::Subset(image)
            }
            Label::Tuple(t) => Label::Tuple(t.iter().map(|&x| f.apply(x)).collect()),
            Label::Fixed(i) => Label::Fixed(*i),
            Label::Moving(i) => Label::Moving(f.apply(*i)),
            Label::Core(v) => Label::Core(*v),
            Label::Pendant { copy, vertex } => Label::Pendant {
                copy: f.apply(*copy),
                vertex: *vertex,
            },
            Label::Edge(a, b) => {
                let (a, b) = (a.map(f), b.map(f));
                if a <= b {
                    Label::Edge(Box::new(a), Box::new(b))
                } else {
                    Label::Edge(Box::new(b), Box::new(a))
                }
            }
        }
    }
}

/// `G_n` together with the label of every vertex.
///
/// Labels are strictly increasing, so vertex indices are a deterministic
/// function of `(spec, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub n: usize,
    pub graph: Arc<Graph>,
    pub labels: Vec<Label>,
}

impl LabeledGraph {
    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |k: usize| {
            if k == 0 {
                Err(Error::InvalidSpec("k must be at least 1".into()))
            } else {
                Ok(())
            }
        };
        match self {
            FamilySpec::Complete => Ok(()),
            FamilySpec::Kneser { k }
            | FamilySpec::KneserLe { k }
            | FamilySpec::Johnson { k }
            | FamilySpec::CompleteBipartite { k }
            | FamilySpec::Lattice { k } => positive(*k),
            FamilySpec::GenKneser { k, r } => {
                positive(*k)?;
                if r >= k {
                    return Err(Error::InvalidSpec(format!(
                        "gen_kneser needs r < k, got r={r}, k={k}"
                    )));
                }
                Ok(())
            }
            FamilySpec::Wedge {
                core,
                pendant,
                core_base,
                pendant_base,
            } => {
                if *core_base >= core.vertex_count() {
                    return Err(Error::InvalidSpec(format!(
                        "core basepoint {core_base} is not a vertex"
                    )));
                }
                if *pendant_base >= pendant.vertex_count() {
                    return Err(Error::InvalidSpec(format!(
                        "pendant basepoint {pendant_base} is not a vertex"
                    )));
                }
                Ok(())
            }
            FamilySpec::LineOf { inner } => inner.validate(),
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            FamilySpec::Complete => "complete".into(),
            FamilySpec::Kneser { k } => format!("kneser(k={k})"),
            FamilySpec::GenKneser { k, r } => format!("gen_kneser(k={k},r={r})"),
            FamilySpec::KneserLe { k } => format!("kneser_le(k={k})"),
            FamilySpec::Johnson { k } => format!("johnson(k={k})"),
            FamilySpec::CompleteBipartite { k } => format!("complete_bipartite(k={k})"),
            FamilySpec::Lattice { k } => format!("lattice(k={k})"),
            FamilySpec::Wedge { core, pendant, .. } => format!(
                "wedge(core={}v/{}e,pendant={}v/{}e)",
                core.vertex_count(),
                core.edge_count(),
                pendant.vertex_count(),
                pendant.edge_count()
            ),
            FamilySpec::LineOf { inner } => format!("line_of({})", inner.name()),
        }
    }

    /// Number of vertices of `G_n`, without building it.
    pub fn vertex_count(&self, n: usize) -> u64 {
        use crate::orbits::binomial;
        let n64 = n as u64;
        match self {
            FamilySpec::Complete => n64,
            FamilySpec::Kneser { k }
            | FamilySpec::GenKneser { k, .. }
            | FamilySpec::Johnson { k } => binomial(n64, *k as u64),
            FamilySpec::KneserLe { k } => (0..=*k as u64)
                .map(|j| binomial(n64, j))
                .fold(0u64, |a, b| a.saturating_add(b)),
            FamilySpec::CompleteBipartite { k } => n64 + *k as u64,
            FamilySpec::Lattice { k } => n64.checked_pow(*k as u32).unwrap_or(u64::MAX),
            FamilySpec::Wedge { core, pendant, .. } => {
                core.vertex_count() as u64 + n64 * (pendant.vertex_count() as u64).saturating_sub(1)
            }
            FamilySpec::LineOf { inner } => {
                let g = inner.instantiate(n);
                g.map_or(u64::MAX, |g| g.graph.edge_count() as u64)
            }
        }
    }

    /// Builds `G_n` with its canonical labelling.
    pub fn instantiate(&self, n: usize) -> Result<LabeledGraph> {
        self.validate()?;
        if let FamilySpec::LineOf { inner } = self {
            let base = inner.instantiate(n)?;
            let labels = base
                .graph
                .edges()
                .iter()
                .map(|&(u, v)| {
                    Label::Edge(
                        Box::new(base.labels[u].clone()),
                        Box::new(base.labels[v].clone()),
                    )
                })
                .collect();
            return Ok(LabeledGraph {
                n,
                graph: Arc::new(base.graph.line_graph()),
                labels,
            });
        }
        if let FamilySpec::Wedge {
            core,
            pendant,
            core_base,
            pendant_base,
        } = self
        {
            return Ok(instantiate_wedge(
                n,
                core,
                pendant,
                *core_base,
                *pendant_base,
            ));
        }

        let labels = self.labels(n);
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut edges = Vec::new();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        let graph = Graph::from_canonical(labels.len(), edges);
        Ok(LabeledGraph {
            n,
            graph: Arc::new(graph),
            labels,
        })
    }

    fn labels(&self, n: usize) -> Vec<Label> {
        match self {
            FamilySpec::Complete => (0..n).map(Label::Point).collect(),
            FamilySpec::Kneser { k }
            | FamilySpec::GenKneser { k, .. }
            | FamilySpec::Johnson { k } => {
                lex_subsets(n, *k).into_iter().map(Label::Subset).collect()
            }
            FamilySpec::KneserLe { k } => {
                let mut all: Vec<Vec<usize>> = (0..=*k).flat_map(|j| lex_subsets(n, j)).collect();
                all.sort();
                all.into_iter().map(Label::Subset).collect()
            }
            FamilySpec::CompleteBipartite { k } => (0..*k)
                .map(Label::Fixed)
                .chain((0..n).map(Label::Moving))
                .collect(),
            FamilySpec::Lattice { k } => tuples(n, *k).into_iter().map(Label::Tuple).collect(),
            FamilySpec::Wedge { .. } | FamilySpec::LineOf { .. } => {
                unreachable!("built separately")
            }
        }
    }

    fn adjacent(&self, a: &Label, b: &Label) -> bool {
        match (self, a, b) {
            (FamilySpec::Complete, _, _) => true,
            (
                FamilySpec::Kneser { .. } | FamilySpec::KneserLe { .. },
                Label::Subset(x),
                Label::Subset(y),
            ) => intersection_size(x, y) == 0,
            (FamilySpec::GenKneser { r, .. }, Label::Subset(x), Label::Subset(y)) => {
                intersection_size(x, y) <= *r
            }
            (FamilySpec::Johnson { k }, Label::Subset(x), Label::Subset(y)) => {
                intersection_size(x, y) + 1 == *k
            }
            (FamilySpec::CompleteBipartite { .. }, Label::Fixed(_), Label::Moving(_))
            | (FamilySpec::CompleteBipartite { .. }, Label::Moving(_), Label::Fixed(_)) => true,
            (FamilySpec::Lattice { .. }, Label::Tuple(x), Label::Tuple(y)) => {
                x.iter().zip(y).filter(|(p, q)| p != q).count() == 1
            }
            _ => false,
        }
    }

    /// The transition morphism `G(f): G_n → G_m` for `f: [n] ↪ [m]`.
    pub fn transition(&self, f: &Injection) -> Result<GraphMorphism> {
        let source = self.instantiate(f.domain())?;
        let target = self.instantiate(f.codomain())?;
        transition_between(&source, &target, f)
    }

    /// The automorphism of `G_n` induced by a permutation of `[n]`.
    pub fn symmetry_action(&self, sigma: &Injection) -> Result<GraphMorphism> {
        if !sigma.is_permutation() {
            return Err(Error::InvalidInjection(
                "symmetry action needs a permutation".into(),
            ));
        }
        let g = self.instantiate(sigma.domain())?;
        symmetry_on(&g, sigma)
    }
}

/// The transition morphism between two already-instantiated members.
pub fn transition_between(
    source: &LabeledGraph,
    target: &LabeledGraph,
    f: &Injection,
) -> Result<GraphMorphism> {
    if source.n != f.domain() || target.n != f.codomain() {
        return Err(Error::InvalidInjection(format!(
            "injection [{}]↪[{}] does not match G_{} → G_{}",
            f.domain(),
            f.codomain(),
            source.n,
            target.n
        )));
    }
    let map = label_images(source, target, f)?;
    GraphMorphism::new(source.graph.clone(), target.graph.clone(), map)
}

/// The automorphism of an instantiated member induced by `sigma`.
pub fn symmetry_on(g: &LabeledGraph, sigma: &Injection) -> Result<GraphMorphism> {
    let m = transition_between(g, g, sigma)?;
    if !m.is_bijective() {
        return Err(Error::Contract(
            "symmetric group acted by a non-bijection".into(),
        ));
    }
    Ok(m)
}

/// Vertex images of `f` by label lookup, without the edge check.
pub(crate) fn label_images(
    source: &LabeledGraph,
    target: &LabeledGraph,
    f: &Injection,
) -> Result<Vec<usize>> {
    source
        .labels
        .iter()
        .map(|label| {
            let image = label.map(f);
            target.index_of(&image).ok_or_else(|| {
                Error::Contract(format!(
                    "label {label} maps to {image}, which is not a vertex of G_{}",
                    target.n
                ))
            })
        })
        .collect()
}

fn instantiate_wedge(
    n: usize,
    core: &Graph,
    pendant: &Graph,
    core_base: usize,
    pendant_base: usize,
) -> LabeledGraph {
    let mut labels: Vec<Label> = (0..core.vertex_count()).map(Label::Core).collect();
    let pendant_vertices: Vec<usize> = (0..pendant.vertex_count())
        .filter(|&w| w != pendant_base)
        .collect();
    for copy in 0..n {
        labels.extend(
            pendant_vertices
                .iter()
                .map(|&vertex| Label::Pendant { copy, vertex }),
        );
    }
    let per_copy = pendant_vertices.len();
    let index = |copy: usize, w: usize| -> usize {
        if w == pendant_base {
            core_base
        } else {
            let pos = if w < pendant_base { w } else { w - 1 };
            core.vertex_count() + copy * per_copy + pos
        }
    };
    let mut edges: Vec<(usize, usize)> = core.edges().to_vec();
    for copy in 0..n {
        edges.extend(
            pendant
                .edges()
                .iter()
                .map(|&(a, b)| (index(copy, a), index(copy, b))),
        );
    }
    let graph = Graph::new(labels.len(), edges).expect("wedge of simple graphs is simple");
    LabeledGraph {
        n,
        graph: Arc::new(graph),
        labels,
    }
}

fn intersection_size(x: &[usize], y: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// `k`-subsets of `[n]` in lexicographic order.
fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All `k`-tuples over `[n]` in lexicographic order.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}
