use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// An injection `[n] ↪ [m]`, with `[n] = {0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Injection {
    codomain: usize,
    images: Vec<usize>,
}

impl Injection {
    pub fn new(codomain: usize, images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; codomain];
        for &i in &images {
            if i >= codomain {
                return Err(Error::InvalidInjection(format!(
                    "image {i} outside 0..{codomain}"
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInjection(format!("image {i} repeated")));
            }
        }
        Ok(Injection { codomain, images })
    }

    pub fn identity(n: usize) -> Self {
        Injection {
            codomain: n,
            images: (0..n).collect(),
        }
    }

    /// The standard inclusion `[n] ↪ [m]`.
    pub fn inclusion(n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidInjection(format!(
                "no injection from [{n}] to [{m}]"
            )));
        }
        Ok(Injection {
            codomain: m,
            images: (0..n).collect(),
        })
    }

    /// The transposition of `a` and `b` in the symmetric group on `[n]`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::InvalidInjection(format!(
                "transposition ({a} {b}) outside [{n}]"
            )));
        }
        images.swap(a, b);
        Ok(Injection {
            codomain: n,
            images,
        })
    }

    /// The cycle `i ↦ i+1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Injection {
            codomain: n,
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// The two standard generators of the symmetric group on `[n]`:
    /// the transposition `(0 1)` and the full cycle. Empty for `n ≤ 1`.
    pub fn symmetric_generators(n: usize) -> Vec<Self> {
        match n {
            0 | 1 => Vec::new(),
            2 => vec![Self::rotation(2)],
            _ => vec![
                Self::transposition(n, 0, 1).expect("n ≥ 2"),
                Self::rotation(n),
            ],
        }
    }

    pub fn domain(&self) -> usize {
        self.images.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_permutation(&self) -> bool {
        self.images.len() == self.codomain
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &Injection) -> Result<Injection> {
        if outer.domain() != self.codomain {
            return Err(Error::InvalidInjection(format!(
                "cannot compose [{}]↪[{}] with [{}]↪[{}]",
                self.domain(),
                self.codomain,
                outer.domain(),
                outer.codomain
            )));
        }
        Ok(Injection {
            codomain: outer.codomain,
            images: self.images.iter().map(|&i| outer.images[i]).collect(),
        })
    }
}

/// A graph homomorphism: a vertex map sending edges to edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    map: Vec<usize>,
}

impl GraphMorphism {
    /// Validates that `map` is a total vertex map preserving every edge.
    pub fn new(source: Arc<Graph>, target: Arc<Graph>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.vertex_count() {
            return Err(Error::Contract(format!(
                "vertex map has {} entries for {} source vertices",
                map.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::Contract(format!(
                "vertex map hits missing target vertex {bad}"
            )));
        }
        for &(u, v) in source.edges() {
            if !target.has_edge(map[u], map[v]) {
                return Err(Error::Contract(format!(
                    "edge {{{u},{v}}} maps to non-edge {{{},{}}}",
                    map[u], map[v]
                )));
            }
        }
        Ok(GraphMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let map = (0..g.vertex_count()).collect();
        GraphMorphism {
            source: g.clone(),
            target: g,
            map,
        }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &GraphMorphism) -> Result<GraphMorphism> {
        if *outer.source != *self.target {
            return Err(Error::Contract(
                "composed morphisms do not share a middle graph".into(),
            ));
        }
        Ok(GraphMorphism {
            source: self.source.clone(),
            target: outer.target.clone(),
            map: self.map.iter().map(|&v| outer.map[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.vertex_count()];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.vertex_count() == self.target.vertex_count() && self.is_injective()
    }

    /// Whether the image is an induced subgraph of the target: any two image
    /// vertices adjacent in the target come from adjacent source vertices.
    pub fn image_is_induced(&self) -> bool {
        let n = self.source.vertex_count();
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (self.map[a], self.map[b]);
                if x != y && self.target.has_edge(x, y) && !self.source.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injection_validation() {
        assert!(Injection::new(3, vec![0, 0]).is_err());
        assert!(Injection::new(3, vec![3]).is_err());
        let f = Injection::new(3, vec![2, 0]).unwrap();
        let g = Injection::new(4, vec![1, 3, 0]).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.images(), &[0, 1]);
        assert_eq!(gf.codomain(), 4);
        assert!(g.then(&f).is_err());
    }

    #[test]
    fn generators() {
        assert!(Injection::symmetric_generators(1).is_empty());
        assert_eq!(Injection::symmetric_generators(2).len(), 1);
        let gens = Injection::symmetric_generators(4);
        assert_eq!(gens[0].images(), &[1, 0, 2, 3]);
        assert_eq!(gens[1].images(), &[1, 2, 3, 0]);
    }

    #[test]
    fn morphism_checks_edges() {
        let k3 = Arc::new(Graph::complete(3));
        let p3 = Arc::new(Graph::path(3));
        assert!(GraphMorphism::new(p3.clone(), k3.clone(), vec![0, 1, 2]).is_ok());
        assert!(matches!(
            GraphMorphism::new(k3.clone(), p3.clone(), vec![0, 1, 2]),
            Err(Error::Contract(_))
        ));
        // Folding the path onto one edge is a homomorphism, not injective.
        let fold = GraphMorphism::new(p3.clone(), p3.clone(), vec![0, 1, 0]).unwrap();
        assert!(!fold.is_injective());
        let incl = GraphMorphism::new(p3, k3, vec![0, 1, 2]).unwrap();
        assert!(incl.is_injective());
        assert!(!incl.image_is_induced());
    }
}
