use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use figraph::{Caps, FamilySpec, Graph};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    Complete,
    Kneser,
    GenKneser,
    KneserLe,
    Johnson,
    CompleteBipartite,
    Lattice,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Built-in family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Subset size, tuple length or fixed part size.
    #[arg(long)]
    pub k: Option<usize>,
    /// Overlap bound of `gen_kneser`.
    #[arg(long)]
    pub r: Option<usize>,
    /// Family spec as JSON, or `@path` to a JSON file (needed for wedge and line_of).
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<String>,
}

impl FamilyArgs {
    pub fn is_given(&self) -> bool {
        self.family.is_some() || self.spec.is_some()
    }

    pub fn resolve(&self) -> Result<FamilySpec, CliError> {
        let spec = if let Some(text) = &self.spec {
            let text = match text.strip_prefix('@') {
                Some(path) => read_text(Path::new(path))?,
                None => text.clone(),
            };
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad --spec: {e}")))?
        } else {
            let name = self.family.ok_or_else(|| CliError::Usage("--family or --spec is required".into()))?;
            let k = || self.k.ok_or_else(|| CliError::Usage(format!("--k is required for {name:?}")));
            match name {
                FamilyName::Complete => FamilySpec::Complete,
                FamilyName::Kneser => FamilySpec::Kneser { k: k()? },
                FamilyName::GenKneser => FamilySpec::GenKneser {
                    k: k()?,
                    r: self.r.ok_or_else(|| CliError::Usage("--r is required for gen_kneser".into()))?,
                },
                FamilyName::KneserLe => FamilySpec::KneserLe { k: k()? },
                FamilyName::Johnson => FamilySpec::Johnson { k: k()? },
                FamilyName::CompleteBipartite => FamilySpec::CompleteBipartite { k: k()? },
                FamilyName::Lattice => FamilySpec::Lattice { k: k()? },
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for cached per-member results.
    #[arg(long, env = "FIGRAPH_CACHE")]
    pub cache_dir: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

macro_rules! cap_args {
    ($($field:ident: $ty:ty => $flag:literal),* $(,)?) => {
        /// Overrides for the size caps.
        #[derive(Debug, Clone, Default, Args)]
        pub struct CapArgs {
            $(
                #[arg(long = $flag, value_parser = clap::value_parser!(u64).range(1..), hide_short_help = true)]
                pub $field: Option<u64>,
            )*
        }

        impl CapArgs {
            pub fn caps(&self) -> Result<Caps, CliError> {
                let mut caps = Caps::default();
                $(
                    if let Some(v) = self.$field {
                        caps.$field = <$ty>::try_from(v)
                            .map_err(|_| CliError::Usage(format!("--{} is too large", $flag)))?;
                    }
                )*
                Ok(caps)
            }
        }
    };
}

cap_args! {
    max_vertices: u64 => "cap-vertices",
    max_pairs: u64 => "cap-pairs",
    max_r: usize => "cap-r",
    max_pattern_vertices: usize => "cap-pattern-vertices",
    max_chromatic_vertices: usize => "cap-chromatic-vertices",
    max_chromatic_edges: usize => "cap-chromatic-edges",
    max_walk_length: usize => "cap-walk-length",
    max_walk_vertices: u64 => "cap-walk-vertices",
    max_spectral_vertices: usize => "cap-spectral-vertices",
    max_isomorphism_vertices: usize => "cap-isomorphism-vertices",
    max_hom_source_vertices: usize => "cap-hom-source-vertices",
    max_hom_target_vertices: usize => "cap-hom-target-vertices",
    max_complex_cells: u64 => "cap-complex-cells",
    max_dconf_points: usize => "cap-dconf-points",
    max_snf_nonzeros: u64 => "cap-snf-nonzeros",
    max_gal_order: usize => "cap-gal-order",
}

/// Inclusive range `a..b` (or `a..=b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

pub fn parse_range(text: &str) -> Result<NRange, String> {
    let (a, b) = text.split_once("..").ok_or_else(|| format!("expected a..b, got {text:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let start: usize = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let end: usize = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if start > end {
        return Err(format!("empty range {text:?}"));
    }
    Ok(NRange { start, end })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A graph from a JSON file, or a built-in name: `K<n>`, `K<a>,<b>`, `P<n>`
/// (path on `n` vertices), `C<n>`, `S<k>` (star with `k` leaves), `E<n>`.
pub fn load_graph(text: &str) -> Result<Graph, CliError> {
    let path = Path::new(text);
    if path.exists() {
        return Ok(Graph::from_json(&read_text(path)?)?);
    }
    builtin_graph(text).ok_or_else(|| {
        CliError::Usage(format!("{text}: no such file and not a built-in graph (K<n>, K<a>,<b>, P<n>, C<n>, S<k>, E<n>)"))
    })?
}

fn builtin_graph(name: &str) -> Option<Result<Graph, CliError>> {
    let mut chars = name.chars();
    let kind = chars.next()?;
    let rest = chars.as_str();
    if kind == 'K' {
        if let Some((a, b)) = rest.split_once(',') {
            return Some(Ok(Graph::complete_bipartite(a.parse().ok()?, b.parse().ok()?)));
        }
    }
    let n: usize = rest.parse().ok()?;
    let g = match kind {
        'K' => Ok(Graph::complete(n)),
        'P' => Ok(Graph::path(n)),
        'C' => Graph::cycle(n).map_err(CliError::from),
        'S' => Ok(Graph::star(n)),
        'E' => Ok(Graph::empty(n)),
        _ => return None,
    };
    Some(g)
}
