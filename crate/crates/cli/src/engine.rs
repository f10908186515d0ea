//! Per-member computations, run in parallel over `n` and cached.

use figraph::enumeration::{evaluate_quantity, CountRecord, Quantity};
use figraph::polyfit::{fit_suffix, EventualFit};
use figraph::spectra::{scan_from_summaries, spectrum_summary_capped, MatrixMode, SpectralScan, SpectrumSummary};
use figraph::stability::{check_vertex_stability, report_from_records, stability_record, StabilityRecord, StabilityReport};
use figraph::{Caps, Error, FamilySpec};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::args::NRange;
use crate::cache::Cache;
use crate::error::CliError;

pub struct Engine {
    pub caps: Caps,
    pub cache: Cache,
}

impl Engine {
    pub fn new(caps: Caps, cache: Cache) -> Self {
        Engine { caps, cache }
    }

    pub fn scan(&self, spec: &FamilySpec, n_max: usize, r_max: usize) -> Result<StabilityReport, CliError> {
        if r_max > self.caps.max_r {
            return Err(Error::Capacity { what: "r", limit: self.caps.max_r as u64, actual: r_max as u64 }.into());
        }
        let records = (0..n_max)
            .into_par_iter()
            .map(|n| {
                self.cache.get_or_compute("stability_record", &(spec, n, r_max), || {
                    stability_record(spec, n, r_max, &self.caps)
                })
            })
            .collect::<Result<Vec<StabilityRecord>, _>>()?;
        Ok(report_from_records(spec, n_max, r_max, records))
    }

    /// First `n < n_max` from which `G_n → G_{n+1}` is vertex-stable
    /// through `n_max - 1`.
    pub fn vertex_stable_degree(&self, spec: &FamilySpec, n_max: usize) -> Result<Option<usize>, CliError> {
        let flags = (0..n_max)
            .into_par_iter()
            .map(|n| {
                self.cache.get_or_compute("vertex_stable", &(spec, n), || check_vertex_stability(spec, n))
            })
            .collect::<Result<Vec<bool>, _>>()?;
        let mut onset = None;
        for (n, ok) in flags.iter().enumerate().rev() {
            if !ok {
                break;
            }
            onset = Some(n);
        }
        Ok(onset)
    }

    pub fn sample(&self, spec: &FamilySpec, quantity: &Quantity, range: NRange) -> Result<CountRecord, CliError> {
        let values = (range.start..=range.end)
            .into_par_iter()
            .map(|n| {
                let v: BigInt = self.cache.get_or_compute("quantity", &(spec, n, quantity), || {
                    evaluate_quantity(spec, n, quantity, &self.caps)
                })?;
                Ok((n, v))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(CountRecord { family: spec.clone(), quantity: quantity.clone(), values })
    }

    pub fn spectra(
        &self,
        spec: &FamilySpec,
        range: NRange,
        mode: MatrixMode,
        degree_bound: usize,
    ) -> Result<SpectralScan, CliError> {
        let summaries = (range.start..=range.end)
            .into_par_iter()
            .map(|n| {
                let s: SpectrumSummary = self.cache.get_or_compute("spectrum", &(spec, n, mode), || {
                    let g = spec.instantiate(n)?;
                    spectrum_summary_capped(&g.graph, mode, &self.caps)
                })?;
                Ok((n, s))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(scan_from_summaries(spec, mode, summaries, degree_bound)?)
    }
}

/// The degree bound for `quantity` on a family vertex-stable in degree `d`.
pub fn default_degree_bound(quantity: &Quantity, d: usize) -> usize {
    match quantity {
        Quantity::Subgraph { pattern } | Quantity::InducedSubgraph { pattern } | Quantity::Hom { pattern } => {
            pattern.vertex_count() * d
        }
        Quantity::Walks { r } => (r + 1) * d,
        Quantity::ClosedWalks { r } => r * d,
        Quantity::EdgeCount => 2 * d,
        Quantity::MinDegree | Quantity::MaxDegree | Quantity::VertexCount | Quantity::OrbitDegree { .. } => d,
    }
}

/// Fit with the suffix rule, which needs `degree_bound + 3` samples; a
/// shorter record gives no fit and a note.
pub fn fit_record(record: &CountRecord, degree_bound: usize) -> Result<(Option<EventualFit>, Option<String>), CliError> {
    let needed = degree_bound + 3;
    if record.values.len() < needed {
        let note = format!("bound {degree_bound} needs at least {needed} samples, have {}", record.values.len());
        return Ok((None, Some(note)));
    }
    Ok((fit_suffix(&record.values, degree_bound)?, None))
}
