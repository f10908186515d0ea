//! The consolidated dossier for one family.

use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use figraph::enumeration::{chromatic_polynomial_capped, CountRecord, Quantity};
use figraph::polyfit::{EventualFit, RationalPolynomial};
use figraph::spectra::{MatrixMode, SpectralScan};
use figraph::stability::{ConstantFrom, StabilityReport};
use figraph::{FamilySpec, Graph, SCHEMA_VERSION};
use num_bigint::BigInt;
use serde::Serialize;

use crate::args::{FamilyArgs, NRange, OutputArgs};
use crate::engine::{default_degree_bound, fit_record, Engine};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Largest member; counts are sampled on `0..=n`.
    #[arg(long = "n", visible_alias = "n-max")]
    pub n_max: usize,
    #[arg(long, default_value_t = 2)]
    pub r_max: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct FitEntry {
    pub quantity: String,
    pub degree_bound: usize,
    pub record: CountRecord,
    pub fit: Option<EventualFit>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ChromaticCheck {
    pub pattern: String,
    pub graph: Graph,
    pub chromatic_polynomial: RationalPolynomial,
    pub hom_fit: Option<EventualFit>,
    /// Every sampled `hom(T, K_n)` equals `P_T(n)`.
    pub agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub family: FamilySpec,
    pub stability: StabilityReport,
    pub vertex_stable_degree: Option<usize>,
    pub fits: Vec<FitEntry>,
    pub spectra: Option<SpectralScan>,
    pub chromatic: Option<Vec<ChromaticCheck>>,
}

fn named_patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("K_3", Graph::complete(3)),
        ("P_3", Graph::path(3)),
        ("C_4", Graph::cycle(4).expect("cycle")),
        ("K_{1,3}", Graph::star(3)),
    ]
}

pub fn report(args: &ReportArgs, engine: &Engine) -> Result<Report, CliError> {
    let spec = args.family.resolve()?;
    let stability = engine.scan(&spec, args.n_max, args.r_max)?;
    let d = stability.onsets.vertex_stable;
    let samples = NRange { start: 0, end: args.n_max };

    let quantities = vec![
        Quantity::VertexCount,
        Quantity::EdgeCount,
        Quantity::MinDegree,
        Quantity::MaxDegree,
        Quantity::Subgraph { pattern: Graph::complete(3) },
        Quantity::ClosedWalks { r: 3 },
    ];
    let mut fits = Vec::new();
    for q in quantities {
        let record = engine.sample(&spec, &q, samples)?;
        let entry = match d {
            Some(d) => {
                let degree_bound = default_degree_bound(&q, d);
                let (fit, note) = fit_record(&record, degree_bound)?;
                FitEntry { quantity: q.name(), degree_bound, record, fit, note }
            }
            None => FitEntry {
                quantity: q.name(),
                degree_bound: 0,
                record,
                fit: None,
                note: Some("vertex stability not observed".into()),
            },
        };
        fits.push(entry);
    }

    // The longest initial range whose members fit the spectral cap.
    let spectral_end = (0..=args.n_max)
        .take_while(|&n| spec.vertex_count(n) <= engine.caps.max_spectral_vertices as u64)
        .last();
    let spectra = match spectral_end {
        Some(end) => Some(engine.spectra(&spec, NRange { start: 0, end }, MatrixMode::Adjacency, d.unwrap_or(2))?),
        None => None,
    };

    let chromatic = if spec == FamilySpec::Complete {
        let mut checks = Vec::new();
        for (name, t) in named_patterns() {
            let p = chromatic_polynomial_capped(&t, &engine.caps)?;
            let record = engine.sample(&spec, &Quantity::Hom { pattern: t.clone() }, samples)?;
            let agrees = record.values.iter().all(|(n, v)| p.evaluate_int(*n as i64) == BigInt::clone(v).into());
            let bound = t.vertex_count() * d.unwrap_or(1);
            let (hom_fit, _) = fit_record(&record, bound)?;
            checks.push(ChromaticCheck {
                pattern: name.to_string(),
                graph: t,
                chromatic_polynomial: p,
                hom_fit,
                agrees,
            });
        }
        Some(checks)
    } else {
        None
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        family: spec,
        stability,
        vertex_stable_degree: d,
        fits,
        spectra,
        chromatic,
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "not observed".to_string(), |v| v.to_string())
}

fn constant<T: std::fmt::Display>(c: &Option<ConstantFrom<T>>) -> String {
    c.as_ref().map_or_else(|| "not observed".to_string(), |c| format!("{} from n = {}", c.value, c.onset))
}

fn fit_cell(fit: &Option<EventualFit>) -> String {
    fit.as_ref().map_or_else(|| "no fit".to_string(), |f| format!("`{}` from n = {}", f.polynomial, f.onset))
}

pub fn markdown(r: &Report) -> String {
    let mut s = String::new();
    let o = &r.stability.onsets;
    let _ = writeln!(s, "# Dossier: {}\n", r.family.name());
    let _ = writeln!(s, "Schema version {}. Scan over n < {}.\n", r.schema_version, r.stability.n_max);
    let _ = writeln!(s, "## Onsets\n");
    let _ = writeln!(s, "| property | onset |\n|---|---|");
    let _ = writeln!(s, "| vertex-stable | {} |", opt(o.vertex_stable));
    let _ = writeln!(s, "| edge-stable | {} |", opt(o.edge_stable));
    for (k, v) in &o.r_vertex_stable {
        let _ = writeln!(s, "| {k}-vertex-stable | {} |", opt(*v));
    }
    let _ = writeln!(s, "| transitions injective | {} |", opt(o.transition_injective));
    let _ = writeln!(s, "| transitions induced | {} |", opt(o.transition_induced));
    let _ = writeln!(s, "| vertex orbits | {} |", constant(&o.vertex_orbit_count));
    let _ = writeln!(s, "| pair orbits | {} |", constant(&o.pair_orbit_count));
    let _ = writeln!(s, "| diameter | {} |", constant(&o.diameter));
    let _ = writeln!(s, "| girth | {} |", constant(&o.girth));

    let _ = writeln!(s, "\n## Counting fits\n");
    let _ = writeln!(s, "| quantity | bound | fit | values |\n|---|---|---|---|");
    for f in &r.fits {
        let values: Vec<String> = f.record.values.iter().map(|(_, v)| v.to_string()).collect();
        let fit = match &f.note {
            Some(note) => note.clone(),
            None => fit_cell(&f.fit),
        };
        let _ = writeln!(s, "| {} | {} | {} | {} |", f.quantity, f.degree_bound, fit, values.join(", "));
    }

    let _ = writeln!(s, "\n## Spectra\n");
    match &r.spectra {
        Some(sc) => {
            let _ = writeln!(
                s,
                "Distinct adjacency eigenvalues: {} from n = {}{}.\n",
                sc.distinct_count.value,
                sc.distinct_count.onset,
                if sc.stabilized { "" } else { " (not stabilized)" }
            );
            let _ = writeln!(s, "| slot | last value | multiplicity fit |\n|---|---|---|");
            for t in &sc.slots {
                let last = t.values.last().map_or("", |(_, v)| v.as_str());
                let _ = writeln!(s, "| {} | {} | {} |", t.slot, last, fit_cell(&t.fit));
            }
        }
        None => {
            let _ = writeln!(s, "No member within the spectral cap.");
        }
    }

    if let Some(checks) = &r.chromatic {
        let _ = writeln!(s, "\n## Chromatic cross-check\n");
        let _ = writeln!(s, "| T | chromatic polynomial | hom(T, K_n) fit | agrees |\n|---|---|---|---|");
        for c in checks {
            let _ = writeln!(
                s,
                "| {} | `{}` | {} | {} |",
                c.pattern,
                c.chromatic_polynomial,
                fit_cell(&c.hom_fit),
                if c.agrees { "yes" } else { "no" }
            );
        }
    }
    s
}
