//! Empirical certificates for vertex, edge and `r`-vertex stability,
//! injectivity and inducedness of transition maps, and stabilization of
//! orbit counts, diameter and girth.
//!
//! Every injection `[n] ↪ [n+1]` factors as a permutation of `[n+1]` after
//! the standard inclusion `ι_n`, so each certifier only inspects the image
//! of `ι_n` and closes it under the `S_{n+1}`-orbits of the larger graph.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};
use crate::families::{label_images, symmetry_on, transition_between, FamilySpec, LabeledGraph};
use crate::graph::{Extent, Injection};
use crate::orbits::{binomial, for_each_subset, orbit_count, orbit_ids, BinomialTable};

/// One family member with its symmetric-group generators acting on vertices.
struct Member {
    lg: LabeledGraph,
    generators: Vec<Vec<usize>>,
}

impl Member {
    fn build(spec: &FamilySpec, n: usize, caps: &Caps) -> Result<Self> {
        ensure_cap(
            "family member vertices",
            spec.vertex_count(n),
            caps.max_vertices,
        )?;
        let lg = spec.instantiate(n)?;
        let generators = Injection::symmetric_generators(n)
            .iter()
            .map(|sigma| symmetry_on(&lg, sigma).map(|m| m.vertex_map().to_vec()))
            .collect::<Result<_>>()?;
        Ok(Member { lg, generators })
    }

    fn vertex_count(&self) -> usize {
        self.lg.graph.vertex_count()
    }

    fn vertex_orbits(&self) -> Vec<usize> {
        orbit_ids(self.vertex_count(), &self.generators)
    }

    fn edge_orbits(&self) -> Vec<usize> {
        let g = &self.lg.graph;
        let gens: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|p| {
                g.edges()
                    .iter()
                    .map(|&(u, v)| {
                        g.edge_index(p[u], p[v])
                            .expect("automorphism preserves edges")
                    })
                    .collect()
            })
            .collect();
        orbit_ids(g.edge_count(), &gens)
    }

    /// Orbits on `r`-subsets of vertices, indexed by colex rank.
    fn subset_orbits(&self, r: usize, table: &BinomialTable) -> Vec<usize> {
        let v = self.vertex_count();
        let total = table.get(v, r) as usize;
        let gens: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|p| {
                let mut image = vec![0usize; total];
                let mut buf = Vec::with_capacity(r);
                for_each_subset(v, r, |s| {
                    buf.clear();
                    buf.extend(s.iter().map(|&x| p[x]));
                    buf.sort_unstable();
                    image[table.rank(s)] = table.rank(&buf);
                });
                image
            })
            .collect();
        orbit_ids(total, &gens)
    }
}

/// `G_n`, `G_{n+1}` and the vertex map of `ι_n`.
struct Step<'a> {
    small: &'a Member,
    large: &'a Member,
    image: Vec<usize>,
}

impl<'a> Step<'a> {
    fn new(small: &'a Member, large: &'a Member) -> Result<Self> {
        let incl = Injection::inclusion(small.lg.n, large.lg.n)?;
        // Validates edge preservation once for the step.
        let image = transition_between(&small.lg, &large.lg, &incl)?
            .vertex_map()
            .to_vec();
        debug_assert_eq!(image, label_images(&small.lg, &large.lg, &incl)?);
        Ok(Step {
            small,
            large,
            image,
        })
    }

    fn vertex_stable(&self) -> bool {
        let orbits = self.large.vertex_orbits();
        covers(orbit_count(&orbits), self.image.iter().map(|&v| orbits[v]))
    }

    fn edge_stable(&self) -> bool {
        let orbits = self.large.edge_orbits();
        let lg = &self.large.lg.graph;
        let hits = self.small.lg.graph.edges().iter().map(|&(u, v)| {
            let e = lg
                .edge_index(self.image[u], self.image[v])
                .expect("transition preserves edges");
            orbits[e]
        });
        covers(orbit_count(&orbits), hits)
    }

    fn r_vertex_stable(&self, r: usize, caps: &Caps) -> Result<bool> {
        if r == 0 {
            return Err(Error::InvalidArgument(
                "r-vertex stability needs r ≥ 1".into(),
            ));
        }
        ensure_cap("r", r as u64, caps.max_r as u64)?;
        let big = self.large.vertex_count();
        ensure_cap(
            "vertex r-subsets",
            binomial(big as u64, r as u64),
            caps.max_pairs,
        )?;
        ensure_cap(
            "vertex r-subsets",
            binomial(self.small.vertex_count() as u64, r as u64),
            caps.max_pairs,
        )?;
        let table = BinomialTable::new(big, r);
        let orbits = self.large.subset_orbits(r, &table);
        let mut hit = vec![false; orbit_count(&orbits)];
        let mut buf = Vec::with_capacity(r);
        for_each_subset(self.small.vertex_count(), r, |s| {
            buf.clear();
            buf.extend(s.iter().map(|&x| self.image[x]));
            buf.sort_unstable();
            if buf.windows(2).all(|w| w[0] < w[1]) {
                hit[orbits[table.rank(&buf)]] = true;
            }
        });
        Ok(hit.into_iter().all(|h| h))
    }

    fn transition_check(&self) -> TransitionCheck {
        let mut seen = vec![false; self.large.vertex_count()];
        let injective = self
            .image
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true));
        let (small, large) = (&self.small.lg.graph, &self.large.lg.graph);
        let mut induced = true;
        'outer: for a in 0..small.vertex_count() {
            for b in a + 1..small.vertex_count() {
                let (x, y) = (self.image[a], self.image[b]);
                if x != y && large.has_edge(x, y) && !small.has_edge(a, b) {
                    induced = false;
                    break 'outer;
                }
            }
        }
        TransitionCheck { injective, induced }
    }
}

fn covers(orbit_total: usize, hits: impl Iterator<Item = usize>) -> bool {
    let mut hit = vec![false; orbit_total];
    for o in hits {
        hit[o] = true;
    }
    hit.into_iter().all(|h| h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCheck {
    pub injective: bool,
    pub induced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCounts {
    pub vertex_orbits: usize,
    pub pair_orbits: usize,
}

/// Every vertex of `G_{n+1}` is the image of a vertex of `G_n` under some
/// transition map.
pub fn check_vertex_stability(spec: &FamilySpec, n: usize) -> Result<bool> {
    let caps = Caps::default();
    let (small, large) = (
        Member::build(spec, n, &caps)?,
        Member::build(spec, n + 1, &caps)?,
    );
    Ok(Step::new(&small, &large)?.vertex_stable())
}

/// Every edge of `G_{n+1}` is the image of an edge of `G_n`.
pub fn check_edge_stability(spec: &FamilySpec, n: usize) -> Result<bool> {
    let caps = Caps::default();
    let (small, large) = (
        Member::build(spec, n, &caps)?,
        Member::build(spec, n + 1, &caps)?,
    );
    Ok(Step::new(&small, &large)?.edge_stable())
}

/// Every `r`-set of vertices of `G_{n+1}` is the injective image of an
/// `r`-set of `G_n` under one transition map.
pub fn check_r_vertex_stability(
    spec: &FamilySpec,
    n: usize,
    r: usize,
    caps: &Caps,
) -> Result<bool> {
    let (small, large) = (
        Member::build(spec, n, caps)?,
        Member::build(spec, n + 1, caps)?,
    );
    Step::new(&small, &large)?.r_vertex_stable(r, caps)
}

/// Injectivity and inducedness of the transition maps out of `G_n`.
pub fn check_transition_maps(spec: &FamilySpec, n: usize) -> Result<TransitionCheck> {
    let caps = Caps::default();
    let (small, large) = (
        Member::build(spec, n, &caps)?,
        Member::build(spec, n + 1, &caps)?,
    );
    Ok(Step::new(&small, &large)?.transition_check())
}

/// Numbers of `S_n`-orbits on vertices and on unordered pairs of distinct
/// vertices of `G_n`.
pub fn orbit_counts(spec: &FamilySpec, n: usize, caps: &Caps) -> Result<OrbitCounts> {
    member_orbit_counts(&Member::build(spec, n, caps)?, caps)
}

fn member_orbit_counts(m: &Member, caps: &Caps) -> Result<OrbitCounts> {
    let v = m.vertex_count();
    ensure_cap("vertex pairs", binomial(v as u64, 2), caps.max_pairs)?;
    let table = BinomialTable::new(v, 2);
    Ok(OrbitCounts {
        vertex_orbits: orbit_count(&m.vertex_orbits()),
        pair_orbits: orbit_count(&m.subset_orbits(2, &table)),
    })
}

/// Certifier outcomes at one `n` (comparing `G_n` with `G_{n+1}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub n: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub vertex_stable: bool,
    pub edge_stable: bool,
    /// Keyed by `r`.
    pub r_vertex_stable: BTreeMap<usize, bool>,
    pub transition_injective: bool,
    pub transition_induced: bool,
    pub vertex_orbit_count: usize,
    pub pair_orbit_count: usize,
    pub diameter: Extent,
    pub girth: Extent,
}

/// Eventual value of an integer-valued invariant over the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantFrom<T> {
    /// First scanned `n` from which the value stays fixed.
    pub onset: usize,
    pub value: T,
}

/// Observed onsets: the first `n` from which a property holds (or a value
/// stays constant) through the end of the scan. `None` means the property
/// fails at the last scanned `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Onsets {
    pub vertex_stable: Option<usize>,
    pub edge_stable: Option<usize>,
    pub r_vertex_stable: BTreeMap<usize, Option<usize>>,
    pub transition_injective: Option<usize>,
    pub transition_induced: Option<usize>,
    pub vertex_orbit_count: Option<ConstantFrom<usize>>,
    pub pair_orbit_count: Option<ConstantFrom<usize>>,
    pub diameter: Option<ConstantFrom<Extent>>,
    pub girth: Option<ConstantFrom<Extent>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub schema_version: u32,
    pub family: FamilySpec,
    /// Records cover `n = 0..n_max`; the scan instantiates up to `G_{n_max}`.
    pub n_max: usize,
    pub r_max: usize,
    pub records: Vec<StabilityRecord>,
    pub onsets: Onsets,
}

/// Computes the record for a single `n`.
pub fn stability_record(
    spec: &FamilySpec,
    n: usize,
    r_max: usize,
    caps: &Caps,
) -> Result<StabilityRecord> {
    let (small, large) = (
        Member::build(spec, n, caps)?,
        Member::build(spec, n + 1, caps)?,
    );
    record_for(&small, &large, r_max, caps)
}

fn record_for(
    small: &Member,
    large: &Member,
    r_max: usize,
    caps: &Caps,
) -> Result<StabilityRecord> {
    let step = Step::new(small, large)?;
    let r_vertex_stable = (1..=r_max)
        .map(|r| step.r_vertex_stable(r, caps).map(|ok| (r, ok)))
        .collect::<Result<_>>()?;
    let transitions = step.transition_check();
    let orbits = member_orbit_counts(small, caps)?;
    let metrics = small.lg.graph.metric_invariants();
    Ok(StabilityRecord {
        n: small.lg.n,
        vertex_count: small.vertex_count(),
        edge_count: small.lg.graph.edge_count(),
        vertex_stable: step.vertex_stable(),
        edge_stable: step.edge_stable(),
        r_vertex_stable,
        transition_injective: transitions.injective,
        transition_induced: transitions.induced,
        vertex_orbit_count: orbits.vertex_orbits,
        pair_orbit_count: orbits.pair_orbits,
        diameter: metrics.diameter,
        girth: metrics.girth,
    })
}

/// Runs every certifier for `n = 0..n_max` and derives the onsets.
pub fn stabilization_scan(
    spec: &FamilySpec,
    n_max: usize,
    r_max: usize,
    caps: &Caps,
) -> Result<StabilityReport> {
    spec.validate()?;
    ensure_cap("r", r_max as u64, caps.max_r as u64)?;
    let members: Vec<Member> = (0..=n_max)
        .into_par_iter()
        .map(|n| Member::build(spec, n, caps))
        .collect::<Result<_>>()?;
    let records: Vec<StabilityRecord> = (0..n_max)
        .into_par_iter()
        .map(|n| record_for(&members[n], &members[n + 1], r_max, caps))
        .collect::<Result<_>>()?;
    Ok(report_from_records(spec, n_max, r_max, records))
}

/// Assembles a report, deriving onsets from the per-`n` records.
pub fn report_from_records(
    spec: &FamilySpec,
    n_max: usize,
    r_max: usize,
    records: Vec<StabilityRecord>,
) -> StabilityReport {
    let onsets = Onsets {
        vertex_stable: flag_onset(&records, |r| r.vertex_stable),
        edge_stable: flag_onset(&records, |r| r.edge_stable),
        r_vertex_stable: (1..=r_max)
            .map(|k| {
                (
                    k,
                    flag_onset(&records, |r| {
                        r.r_vertex_stable.get(&k).copied().unwrap_or(false)
                    }),
                )
            })
            .collect(),
        transition_injective: flag_onset(&records, |r| r.transition_injective),
        transition_induced: flag_onset(&records, |r| r.transition_induced),
        vertex_orbit_count: constant_onset(&records, |r| r.vertex_orbit_count),
        pair_orbit_count: constant_onset(&records, |r| r.pair_orbit_count),
        diameter: constant_onset(&records, |r| r.diameter),
        girth: constant_onset(&records, |r| r.girth),
    };
    StabilityReport {
        schema_version: crate::SCHEMA_VERSION,
        family: spec.clone(),
        n_max,
        r_max,
        records,
        onsets,
    }
}

fn flag_onset(
    records: &[StabilityRecord],
    flag: impl Fn(&StabilityRecord) -> bool,
) -> Option<usize> {
    let mut onset = None;
    for r in records.iter().rev() {
        if !flag(r) {
            break;
        }
        onset = Some(r.n);
    }
    onset
}

fn constant_onset<T: PartialEq + Copy>(
    records: &[StabilityRecord],
    value: impl Fn(&StabilityRecord) -> T,
) -> Option<ConstantFrom<T>> {
    let last = value(records.last()?);
    let mut onset = records.last()?.n;
    for r in records.iter().rev() {
        if value(r) != last {
            break;
        }
        onset = r.n;
    }
    Some(ConstantFrom { onset, value: last })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KNESER2: FamilySpec = FamilySpec::Kneser { k: 2 };

    #[test]
    fn vertex_stability_examples() {
        assert!(check_vertex_stability(&KNESER2, 2).unwrap());
        assert!(!check_vertex_stability(&KNESER2, 1).unwrap());
        assert!(!check_vertex_stability(&FamilySpec::Complete, 0).unwrap());
        assert!(check_vertex_stability(&FamilySpec::Complete, 1).unwrap());
    }

    #[test]
    fn edge_stability_examples() {
        assert!(!check_edge_stability(&KNESER2, 3).unwrap());
        assert!(check_edge_stability(&KNESER2, 4).unwrap());
        assert!(check_edge_stability(&FamilySpec::Lattice { k: 2 }, 3).unwrap());
    }

    #[test]
    fn r_vertex_stability_examples() {
        let caps = Caps::default();
        assert!(check_r_vertex_stability(&KNESER2, 4, 2, &caps).unwrap());
        assert!(!check_r_vertex_stability(&KNESER2, 3, 2, &caps).unwrap());
        for n in 1..6 {
            assert!(check_r_vertex_stability(&FamilySpec::Complete, n, 1, &caps).unwrap());
        }
        assert!(matches!(
            check_r_vertex_stability(&KNESER2, 4, 4, &caps),
            Err(Error::Capacity { .. })
        ));
        let tight = Caps {
            max_pairs: 10,
            ..Caps::default()
        };
        assert!(matches!(
            check_r_vertex_stability(&KNESER2, 4, 2, &tight),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn transition_map_examples() {
        let t = check_transition_maps(&KNESER2, 4).unwrap();
        assert_eq!((t.injective, t.induced), (true, true));
        let t = check_transition_maps(&KNESER2, 3).unwrap();
        assert_eq!((t.injective, t.induced), (true, true));
        for n in 0..6 {
            let t = check_transition_maps(&FamilySpec::Complete, n).unwrap();
            assert_eq!((t.injective, t.induced), (true, true));
        }
    }

    #[test]
    fn orbit_count_examples() {
        let caps = Caps::default();
        let c = orbit_counts(&KNESER2, 5, &caps).unwrap();
        assert_eq!((c.vertex_orbits, c.pair_orbits), (1, 2));
        let c = orbit_counts(&FamilySpec::CompleteBipartite { k: 1 }, 4, &caps).unwrap();
        assert_eq!((c.vertex_orbits, c.pair_orbits), (2, 2));
        let c = orbit_counts(&FamilySpec::Complete, 3, &caps).unwrap();
        assert_eq!((c.vertex_orbits, c.pair_orbits), (1, 1));
    }

    #[test]
    fn kneser_scan() {
        let report = stabilization_scan(&KNESER2, 9, 2, &Caps::default()).unwrap();
        let o = &report.onsets;
        assert_eq!(o.vertex_stable, Some(2));
        assert_eq!(o.edge_stable, Some(4));
        assert_eq!(o.r_vertex_stable[&2], Some(4));
        assert!(o.transition_induced.unwrap() <= 4);
        assert_eq!(
            o.diameter,
            Some(ConstantFrom {
                onset: 5,
                value: Extent::Finite(2)
            })
        );
        assert_eq!(
            o.girth,
            Some(ConstantFrom {
                onset: 6,
                value: Extent::Finite(3)
            })
        );
        assert_eq!(report.records.len(), 9);
    }

    #[test]
    fn complete_and_lattice_scans() {
        let caps = Caps::default();
        let report = stabilization_scan(&FamilySpec::Complete, 5, 2, &caps).unwrap();
        let o = &report.onsets;
        assert!(o.vertex_stable.unwrap() <= 2);
        assert!(o.edge_stable.unwrap() <= 2);
        assert!(o.r_vertex_stable[&2].unwrap() <= 2);
        assert_eq!(
            o.diameter,
            Some(ConstantFrom {
                onset: 2,
                value: Extent::Finite(1)
            })
        );
        assert_eq!(
            o.girth,
            Some(ConstantFrom {
                onset: 3,
                value: Extent::Finite(3)
            })
        );

        let report = stabilization_scan(&FamilySpec::Lattice { k: 2 }, 6, 2, &caps).unwrap();
        assert_eq!(report.onsets.vertex_stable, Some(2));
        assert!(report.onsets.edge_stable.unwrap() <= 3);
    }

    #[test]
    fn onsets_absent_when_last_fails() {
        let records = vec![
            StabilityRecord {
                n: 0,
                vertex_count: 0,
                edge_count: 0,
                vertex_stable: true,
                edge_stable: false,
                r_vertex_stable: BTreeMap::new(),
                transition_injective: true,
                transition_induced: true,
                vertex_orbit_count: 0,
                pair_orbit_count: 0,
                diameter: Extent::Finite(0),
                girth: Extent::Infinite,
            };
            1
        ];
        let report = report_from_records(&KNESER2, 1, 1, records);
        assert_eq!(report.onsets.vertex_stable, Some(0));
        assert_eq!(report.onsets.edge_stable, None);
        assert_eq!(report.onsets.r_vertex_stable[&1], None);
    }
}
