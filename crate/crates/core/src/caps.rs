use serde::{Deserialize, Serialize};

/// Size limits that keep every computation at desk scale.
///
/// Each limit guards one computation; exceeding it yields
/// [`Error::Capacity`](crate::Error::Capacity) instead of a runaway job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Vertices of a single family member touched by a vertex scan.
    pub max_vertices: u64,
    /// Unordered vertex pairs (or r-subsets) enumerated by an orbit scan.
    pub max_pairs: u64,
    pub max_r: usize,
    /// Vertices of a pattern graph in the counting engines.
    pub max_pattern_vertices: usize,
    pub max_chromatic_vertices: usize,
    pub max_chromatic_edges: usize,
    pub max_walk_length: usize,
    pub max_walk_vertices: u64,
    pub max_spectral_vertices: usize,
    pub max_isomorphism_vertices: usize,
    pub max_hom_source_vertices: usize,
    pub max_hom_target_vertices: usize,
    /// Cells of a constructed complex, summed over all dimensions.
    pub max_complex_cells: u64,
    pub max_dconf_points: usize,
    /// Nonzero entries in one boundary matrix handed to Smith normal form.
    pub max_snf_nonzeros: u64,
    pub max_gal_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vertices: 5000,
            max_pairs: 2_000_000,
            max_r: 3,
            max_pattern_vertices: 8,
            max_chromatic_vertices: 10,
            max_chromatic_edges: 20,
            max_walk_length: 12,
            max_walk_vertices: 5000,
            max_spectral_vertices: 200,
            max_isomorphism_vertices: 64,
            max_hom_source_vertices: 4,
            max_hom_target_vertices: 20,
            max_complex_cells: 2_000_000,
            max_dconf_points: 3,
            max_snf_nonzeros: 20_000,
            max_gal_order: 6,
        }
    }
}
