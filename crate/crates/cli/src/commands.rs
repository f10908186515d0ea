use clap::{Args, ValueEnum};
use figraph::enumeration::{CountRecord, Quantity};
use figraph::polyfit::EventualFit;
use figraph::spectra::{MatrixMode, SpectralScan};
use figraph::stability::StabilityReport;
use figraph::topology::{
    calibrate_gal, dconf_complex_capped, gal_euler_series_with, hom_complex_capped, homology_capped,
    GalCalibration, GalConvention, HomologySummary,
};
use figraph::{FamilySpec, Graph, Label, SCHEMA_VERSION};
use serde::Serialize;

use crate::args::{load_graph, parse_range, FamilyArgs, NRange, OutputArgs};
use crate::engine::{default_degree_bound, fit_record, Engine};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct InstantiateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn instantiate(args: &InstantiateArgs) -> Result<Graph, CliError> {
    let spec = args.family.resolve()?;
    Ok(spec.instantiate(args.n)?.graph.as_ref().clone())
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest member instantiated; records cover `n < n_max`.
    #[arg(long = "n", visible_alias = "n-max")]
    pub n_max: usize,
    /// Largest `r` for the r-vertex-stability certifier.
    #[arg(long, default_value_t = 2)]
    pub r_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn scan(args: &ScanArgs, engine: &Engine) -> Result<StabilityReport, CliError> {
    let spec = args.family.resolve()?;
    engine.scan(&spec, args.n_max, args.r_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum QuantityKind {
    Subgraph,
    InducedSubgraph,
    Hom,
    Walks,
    ClosedWalks,
    MinDegree,
    MaxDegree,
    VertexCount,
    EdgeCount,
    OrbitDegree,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum)]
    pub quantity: QuantityKind,
    /// Pattern graph (JSON file or built-in name) for subgraph, induced_subgraph and hom.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Walk length; `--r` also works when the family takes no `r`.
    #[arg(long)]
    pub walk_length: Option<usize>,
    /// Vertex label for orbit_degree, as JSON (e.g. `{"subset":[0,1]}`).
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long, value_parser = parse_range)]
    pub n_range: NRange,
    /// Defaults to the bound implied by the observed vertex-stability degree.
    #[arg(long)]
    pub degree_bound: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Flag,
    VertexStability,
}

#[derive(Debug, Serialize)]
pub struct FitArtifact {
    pub schema_version: u32,
    pub record: CountRecord,
    pub degree_bound: usize,
    pub degree_bound_source: BoundSource,
    /// Observed vertex-stability degree, when it was needed for the bound.
    pub vertex_stable_degree: Option<usize>,
    pub fit: Option<EventualFit>,
}

fn quantity(args: &FitArgs, spec: &FamilySpec) -> Result<Quantity, CliError> {
    let pattern = || -> Result<Graph, CliError> {
        let text = args.pattern.as_deref().ok_or_else(|| CliError::Usage("--pattern is required".into()))?;
        load_graph(text)
    };
    let length = || -> Result<usize, CliError> {
        let family_r = matches!(spec, FamilySpec::GenKneser { .. });
        args.walk_length
            .or(if family_r { None } else { args.family.r })
            .ok_or_else(|| CliError::Usage("--walk-length is required".into()))
    };
    Ok(match args.quantity {
        QuantityKind::Subgraph => Quantity::Subgraph { pattern: pattern()? },
        QuantityKind::InducedSubgraph => Quantity::InducedSubgraph { pattern: pattern()? },
        QuantityKind::Hom => Quantity::Hom { pattern: pattern()? },
        QuantityKind::Walks => Quantity::Walks { r: length()? },
        QuantityKind::ClosedWalks => Quantity::ClosedWalks { r: length()? },
        QuantityKind::MinDegree => Quantity::MinDegree,
        QuantityKind::MaxDegree => Quantity::MaxDegree,
        QuantityKind::VertexCount => Quantity::VertexCount,
        QuantityKind::EdgeCount => Quantity::EdgeCount,
        QuantityKind::OrbitDegree => {
            let text = args.label.as_deref().ok_or_else(|| CliError::Usage("--label is required".into()))?;
            let label: Label =
                serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad --label: {e}")))?;
            Quantity::OrbitDegree { label }
        }
    })
}

pub fn fit(args: &FitArgs, engine: &Engine) -> Result<FitArtifact, CliError> {
    let spec = args.family.resolve()?;
    let quantity = quantity(args, &spec)?;
    let (degree_bound, source, d) = match args.degree_bound {
        Some(b) => (b, BoundSource::Flag, None),
        None => {
            let d = engine.vertex_stable_degree(&spec, args.n_range.end)?.ok_or_else(|| {
                CliError::Usage(format!(
                    "vertex stability not observed for n < {}; pass --degree-bound",
                    args.n_range.end
                ))
            })?;
            (default_degree_bound(&quantity, d), BoundSource::VertexStability, Some(d))
        }
    };
    let needed = degree_bound + 3;
    if args.n_range.len() < needed {
        return Err(CliError::Usage(format!(
            "degree bound {degree_bound} needs at least {needed} samples; the range has {}",
            args.n_range.len()
        )));
    }
    let record = engine.sample(&spec, &quantity, args.n_range)?;
    let (fit, _) = fit_record(&record, degree_bound)?;
    Ok(FitArtifact {
        schema_version: SCHEMA_VERSION,
        record,
        degree_bound,
        degree_bound_source: source,
        vertex_stable_degree: d,
        fit,
    })
}

#[derive(Debug, Args)]
pub struct SpectraArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = parse_range)]
    pub n_range: NRange,
    #[arg(long, default_value = "adjacency")]
    pub mode: MatrixMode,
    /// Bound for the multiplicity fits.
    #[arg(long, default_value_t = 2)]
    pub degree_bound: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn spectra(args: &SpectraArgs, engine: &Engine) -> Result<SpectralScan, CliError> {
    let spec = args.family.resolve()?;
    engine.spectra(&spec, args.n_range, args.mode, args.degree_bound)
}

/// A single graph (`--graph`) or family members (`--family … --n` or `--n-range`).
#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Graph JSON file or built-in name.
    #[arg(long, conflicts_with_all = ["family", "spec"])]
    pub graph: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<NRange>,
}

impl TargetArgs {
    fn graphs(&self) -> Result<Vec<(Option<usize>, Graph)>, CliError> {
        if let Some(text) = &self.graph {
            return Ok(vec![(None, load_graph(text)?)]);
        }
        if !self.family.is_given() {
            return Err(CliError::Usage("--graph or --family is required".into()));
        }
        let spec = self.family.resolve()?;
        let range = match (self.n, self.n_range) {
            (Some(n), None) => NRange { start: n, end: n },
            (None, Some(r)) => r,
            _ => return Err(CliError::Usage("--n or --n-range is required with --family".into())),
        };
        (range.start..=range.end)
            .map(|n| Ok((Some(n), spec.instantiate(n)?.graph.as_ref().clone())))
            .collect()
    }

    fn single(&self) -> Result<Graph, CliError> {
        let mut graphs = self.graphs()?;
        if graphs.len() != 1 {
            return Err(CliError::Usage("expected a single graph; use --n rather than --n-range".into()));
        }
        Ok(graphs.remove(0).1)
    }
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// Source graph `T` of `Hom(T, G)`.
    #[arg(long)]
    pub pattern: String,
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct HomEntry {
    pub n: Option<usize>,
    pub target: Graph,
    pub multihom_count: usize,
    pub cell_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub homology: HomologySummary,
}

#[derive(Debug, Serialize)]
pub struct HomArtifact {
    pub schema_version: u32,
    pub source: Graph,
    pub entries: Vec<HomEntry>,
}

pub fn homology(args: &HomologyArgs, engine: &Engine) -> Result<HomArtifact, CliError> {
    let source = load_graph(&args.pattern)?;
    let entries = args
        .target
        .graphs()?
        .into_iter()
        .map(|(n, target)| {
            let c = hom_complex_capped(&source, &target, &engine.caps)?;
            Ok(HomEntry {
                n,
                multihom_count: c.multihoms.len(),
                cell_counts: c.complex.cell_counts().to_vec(),
                euler_characteristic: c.complex.euler_characteristic(),
                homology: homology_capped(&c.complex, &engine.caps)?,
                target,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(HomArtifact { schema_version: SCHEMA_VERSION, source, entries })
}

#[derive(Debug, Args)]
pub struct ConfArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Number of points.
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct ConfArtifact {
    pub schema_version: u32,
    pub graph: Graph,
    pub m: usize,
    pub cell_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub homology: HomologySummary,
    /// The calibrated generating-function value for comparison.
    pub series_euler_characteristic: String,
}

pub fn conf(args: &ConfArgs, engine: &Engine) -> Result<ConfArtifact, CliError> {
    let graph = args.target.single()?;
    let c = dconf_complex_capped(&graph, args.m, &engine.caps)?;
    let series = gal_euler_series_with(&graph, args.m, GalConvention::Calibrated, &engine.caps)?;
    Ok(ConfArtifact {
        schema_version: SCHEMA_VERSION,
        m: args.m,
        cell_counts: c.complex.cell_counts().to_vec(),
        euler_characteristic: c.complex.euler_characteristic(),
        homology: homology_capped(&c.complex, &engine.caps)?,
        series_euler_characteristic: series[args.m].to_string(),
        graph,
    })
}

#[derive(Debug, Args)]
pub struct GalArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub m_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct GalArtifact {
    pub schema_version: u32,
    pub graph: Graph,
    pub m_max: usize,
    /// `χ(Conf_m)` for `m = 0..=m_max` under each sign of the vertex factor.
    pub printed: Vec<String>,
    pub calibrated: Vec<String>,
    /// The convention that matched the cellular Euler characteristics.
    pub selected: Option<GalConvention>,
    pub series: Option<Vec<String>>,
    pub calibration: GalCalibration,
}

pub fn gal(args: &GalArgs, engine: &Engine) -> Result<GalArtifact, CliError> {
    let graph = args.target.single()?;
    let strings = |c| -> Result<Vec<String>, CliError> {
        Ok(gal_euler_series_with(&graph, args.m_max, c, &engine.caps)?.iter().map(|v| v.to_string()).collect())
    };
    let printed = strings(GalConvention::Printed)?;
    let calibrated = strings(GalConvention::Calibrated)?;
    let calibration = calibrate_gal(&engine.caps)?;
    let selected = if calibration.calibrated_matches {
        Some(GalConvention::Calibrated)
    } else if calibration.printed_matches {
        Some(GalConvention::Printed)
    } else {
        None
    };
    let series = selected.map(|c| match c {
        GalConvention::Calibrated => calibrated.clone(),
        GalConvention::Printed => printed.clone(),
    });
    Ok(GalArtifact {
        schema_version: SCHEMA_VERSION,
        graph,
        m_max: args.m_max,
        printed,
        calibrated,
        selected,
        series,
        calibration,
    })
}
