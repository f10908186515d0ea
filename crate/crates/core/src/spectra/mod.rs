//! Characteristic polynomials and exact eigenvalue multiplicities of
//! adjacency and Laplacian matrices.

mod charpoly;
mod modp;
mod poly;
mod roots;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{ensure_cap, Error, Result};
use crate::families::FamilySpec;
use crate::graph::Graph;
use crate::polyfit::{fit_suffix, EventualFit};
use crate::stability::ConstantFrom;

pub use poly::IntPolynomial;

/// Decimal places in reported eigenvalue approximations.
pub const EIGENVALUE_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixMode {
    Adjacency,
    /// `D − A`.
    Laplacian,
}

impl std::str::FromStr for MatrixMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(MatrixMode::Adjacency),
            "laplacian" => Ok(MatrixMode::Laplacian),
            other => Err(Error::InvalidArgument(format!(
                "unknown matrix mode {other:?}"
            ))),
        }
    }
}

pub fn matrix(g: &Graph, mode: MatrixMode) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for &(u, v) in g.edges() {
        let a = match mode {
            MatrixMode::Adjacency => 1,
            MatrixMode::Laplacian => -1,
        };
        m[u][v] = a;
        m[v][u] = a;
    }
    if mode == MatrixMode::Laplacian {
        for (v, row) in m.iter_mut().enumerate() {
            row[v] = g.degree(v) as i64;
        }
    }
    m
}

/// `det(xI − M)`.
pub fn char_poly(g: &Graph, mode: MatrixMode) -> Result<IntPolynomial> {
    char_poly_capped(g, mode, &Caps::default())
}

pub fn char_poly_capped(g: &Graph, mode: MatrixMode, caps: &Caps) -> Result<IntPolynomial> {
    ensure_cap(
        "spectral vertices",
        g.vertex_count() as u64,
        caps.max_spectral_vertices as u64,
    )?;
    Ok(charpoly::char_poly_of_matrix(&matrix(g, mode)))
}

/// Number of distinct complex roots: `deg p − deg gcd(p, p′)`.
pub fn distinct_eigenvalue_count(p: &IntPolynomial) -> Result<usize> {
    let d = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    let g = p.gcd(&p.derivative());
    Ok(d - g.degree().unwrap_or(0))
}

/// `(k, q_k)` with `p = lc · Π q_k^k`, each `q_k` square-free, primitive,
/// pairwise coprime and of positive degree.
pub fn square_free_decomposition(p: &IntPolynomial) -> Result<Vec<(usize, IntPolynomial)>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    // g_k = gcd(g_{k-1}, g_{k-1}′); h_k = g_{k-1} / g_k collects roots of
    // multiplicity ≥ k, and h_k / h_{k+1} those of multiplicity exactly k.
    let mut prev = p.primitive_part();
    let mut hs = Vec::new();
    while prev.degree().unwrap_or(0) > 0 {
        let next = prev.gcd(&prev.derivative());
        hs.push(prev.exact_div(&next)?.primitive_part());
        prev = next;
    }
    let mut out = Vec::new();
    for k in 0..hs.len() {
        let q = match hs.get(k + 1) {
            Some(h) => hs[k].exact_div(h)?.primitive_part(),
            None => hs[k].clone(),
        };
        if q.degree().unwrap_or(0) > 0 {
            out.push((k + 1, q));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    /// Decimal approximation; see [`SpectrumSummary::decimal_places`].
    pub value: String,
    pub multiplicity: usize,
}

impl Eigenvalue {
    pub fn approx(&self) -> f64 {
        self.value.parse().expect("decimal string")
    }
}

/// Distinct eigenvalues and their exact multiplicities, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub distinct_count: usize,
    pub decimal_places: u32,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl SpectrumSummary {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.eigenvalues.iter().map(|e| e.multiplicity).collect()
    }
}

pub fn spectrum_summary(g: &Graph, mode: MatrixMode) -> Result<SpectrumSummary> {
    spectrum_summary_capped(g, mode, &Caps::default())
}

pub fn spectrum_summary_capped(
    g: &Graph,
    mode: MatrixMode,
    caps: &Caps,
) -> Result<SpectrumSummary> {
    let p = char_poly_capped(g, mode, caps)?;
    let m = matrix(g, mode);
    let n = m.len();
    if n == 0 {
        return summarize(&p);
    }
    let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
    let mut hints: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
    hints.sort_by(f64::total_cmp);
    summarize_with_hints(&p, &hints)
}

/// Summary of a polynomial whose roots are all real.
pub fn summarize(p: &IntPolynomial) -> Result<SpectrumSummary> {
    summarize_with_hints(p, &[])
}

/// As [`summarize`], trying floating-point root approximations first;
/// a factor whose roots the hints fail to certify falls back to Sturm
/// isolation.
pub fn summarize_with_hints(p: &IntPolynomial, hints: &[f64]) -> Result<SpectrumSummary> {
    let parts = square_free_decomposition(p)?;
    let factors: Vec<IntPolynomial> = parts.iter().map(|(_, q)| q.clone()).collect();
    let mut isolated = Vec::new();
    for (i, (k, q)) in parts.iter().enumerate() {
        let found = roots::isolate_near(q, hints).unwrap_or_else(|| roots::isolate_real_roots(q));
        if found.len() != q.degree().unwrap_or(0) {
            return Err(Error::Contract(format!(
                "factor of multiplicity {k} has {} real roots out of {}",
                found.len(),
                q.degree().unwrap_or(0)
            )));
        }
        isolated.extend(found.into_iter().map(|r| (r, i)));
    }
    let sorted = roots::sort_separated(&factors, isolated);
    let eigenvalues: Vec<Eigenvalue> = sorted
        .iter()
        .map(|(r, i)| Eigenvalue {
            value: roots::to_decimal(&r.midpoint(), EIGENVALUE_DIGITS),
            multiplicity: parts[*i].0,
        })
        .collect();
    Ok(SpectrumSummary {
        distinct_count: eigenvalues.len(),
        decimal_places: EIGENVALUE_DIGITS,
        eigenvalues,
    })
}

/// Multiplicities of one ascending eigenvalue slot across the terminal
/// segment of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotTrack {
    /// 0 is the smallest eigenvalue.
    pub slot: usize,
    pub values: Vec<(usize, String)>,
    pub multiplicities: Vec<(usize, usize)>,
    pub fit: Option<EventualFit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralScan {
    pub schema_version: u32,
    pub family: FamilySpec,
    pub mode: MatrixMode,
    pub summaries: Vec<(usize, SpectrumSummary)>,
    /// Distinct-eigenvalue count on the terminal constant segment.
    pub distinct_count: ConstantFrom<usize>,
    /// `false` when the count changes between the last two sampled `n`.
    pub stabilized: bool,
    /// Empty unless `stabilized`.
    pub slots: Vec<SlotTrack>,
}

/// Spectra of `G_n` for `n` in `start..=end`, slot alignment by ascending
/// order on the terminal segment where the distinct count is constant,
/// and a polynomial fit of each slot's multiplicities.
///
/// The fit bound is lowered to `len − 3` when the segment is short;
/// `degree_bound_used` records the bound applied.
pub fn spectral_scan(
    spec: &FamilySpec,
    start: usize,
    end: usize,
    mode: MatrixMode,
    degree_bound: usize,
    caps: &Caps,
) -> Result<SpectralScan> {
    if start > end {
        return Err(Error::InvalidArgument(format!(
            "empty range {start}..{end}"
        )));
    }
    spec.validate()?;
    for n in start..=end {
        ensure_cap(
            "spectral vertices",
            spec.vertex_count(n),
            caps.max_spectral_vertices as u64,
        )?;
    }
    let summaries = (start..=end)
        .into_par_iter()
        .map(|n| {
            let g = spec.instantiate(n)?;
            spectrum_summary_capped(&g.graph, mode, caps).map(|s| (n, s))
        })
        .collect::<Result<Vec<_>>>()?;
    scan_from_summaries(spec, mode, summaries, degree_bound)
}

/// Assembles a scan from per-`n` summaries at consecutive `n`.
pub fn scan_from_summaries(
    spec: &FamilySpec,
    mode: MatrixMode,
    summaries: Vec<(usize, SpectrumSummary)>,
    degree_bound: usize,
) -> Result<SpectralScan> {
    if summaries.is_empty() {
        return Err(Error::InvalidArgument("no spectra to scan".into()));
    }
    if summaries.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidArgument(
            "spectra must be at consecutive n".into(),
        ));
    }
    let last = summaries.last().expect("nonempty range").1.distinct_count;
    let tail = summaries
        .iter()
        .rev()
        .take_while(|(_, s)| s.distinct_count == last)
        .count();
    let segment = &summaries[summaries.len() - tail..];
    let distinct_count = ConstantFrom {
        onset: segment[0].0,
        value: last,
    };
    let stabilized = tail >= 2;

    let mut slots = Vec::new();
    if stabilized {
        for slot in 0..last {
            let multiplicities: Vec<(usize, usize)> = segment
                .iter()
                .map(|(n, s)| (*n, s.eigenvalues[slot].multiplicity))
                .collect();
            let values = segment
                .iter()
                .map(|(n, s)| (*n, s.eigenvalues[slot].value.clone()))
                .collect();
            let fit = if tail >= 3 {
                let bound = degree_bound.min(tail - 3);
                let samples: Vec<(usize, BigInt)> =
                    multiplicities.iter().map(|&(n, m)| (n, m.into())).collect();
                fit_suffix(&samples, bound)?
            } else {
                None
            };
            slots.push(SlotTrack {
                slot,
                values,
                multiplicities,
                fit,
            });
        }
    }
    Ok(SpectralScan {
        schema_version: crate::SCHEMA_VERSION,
        family: spec.clone(),
        mode,
        summaries,
        distinct_count,
        stabilized,
        slots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_integers(c.iter().copied())
    }

    fn pairs(s: &SpectrumSummary) -> Vec<(f64, usize)> {
        s.eigenvalues
            .iter()
            .map(|e| (e.approx(), e.multiplicity))
            .collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&Graph::complete(3), MatrixMode::Adjacency).unwrap(),
            p(&[-2, -3, 0, 1])
        );
        assert_eq!(
            char_poly(&Graph::empty(2), MatrixMode::Adjacency).unwrap(),
            p(&[0, 0, 1])
        );
        // x(x-3)^2
        assert_eq!(
            char_poly(&Graph::complete(3), MatrixMode::Laplacian).unwrap(),
            p(&[0, 9, -6, 1])
        );
        let caps = Caps {
            max_spectral_vertices: 4,
            ..Caps::default()
        };
        assert!(matches!(
            char_poly_capped(&Graph::empty(5), MatrixMode::Adjacency, &caps),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn distinct_count_examples() {
        assert_eq!(distinct_eigenvalue_count(&p(&[-2, -3, 0, 1])).unwrap(), 2);
        assert_eq!(
            distinct_eigenvalue_count(&IntPolynomial::monomial(7)).unwrap(),
            1
        );
        let star = char_poly(&Graph::star(3), MatrixMode::Adjacency).unwrap();
        assert_eq!(star, p(&[0, 0, -3, 0, 1]));
        assert_eq!(distinct_eigenvalue_count(&star).unwrap(), 3);
        assert!(distinct_eigenvalue_count(&IntPolynomial::default()).is_err());
    }

    #[test]
    fn square_free_parts() {
        // x^2 (x-1)^3 (x+2)
        let f = p(&[0, 0, 1])
            .mul(&p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1])))
            .mul(&p(&[2, 1]));
        let parts = square_free_decomposition(&f).unwrap();
        assert_eq!(
            parts,
            vec![(1, p(&[2, 1])), (2, p(&[0, 1])), (3, p(&[-1, 1]))]
        );
    }

    #[test]
    fn summary_examples() {
        let s = spectrum_summary(&Graph::complete(4), MatrixMode::Adjacency).unwrap();
        assert_eq!(pairs(&s), vec![(-1.0, 3), (3.0, 1)]);
        let s = spectrum_summary(&Graph::star(4), MatrixMode::Adjacency).unwrap();
        assert_eq!(pairs(&s), vec![(-2.0, 1), (0.0, 3), (2.0, 1)]);
        let s = spectrum_summary(&Graph::empty(1), MatrixMode::Adjacency).unwrap();
        assert_eq!(pairs(&s), vec![(0.0, 1)]);
        assert_eq!(s.eigenvalues[0].value, "0.000000000000");
        let s = spectrum_summary(&Graph::empty(0), MatrixMode::Adjacency).unwrap();
        assert_eq!(s.distinct_count, 0);
    }

    #[test]
    fn petersen_spectrum() {
        let g = FamilySpec::Kneser { k: 2 }.instantiate(5).unwrap();
        let s = spectrum_summary(&g.graph, MatrixMode::Adjacency).unwrap();
        assert_eq!(pairs(&s), vec![(-2.0, 4), (1.0, 5), (3.0, 1)]);
    }

    #[test]
    fn star_scan() {
        let scan = spectral_scan(
            &FamilySpec::CompleteBipartite { k: 1 },
            2,
            8,
            MatrixMode::Adjacency,
            2,
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(scan.distinct_count, ConstantFrom { onset: 2, value: 3 });
        let fits: Vec<String> = scan
            .slots
            .iter()
            .map(|s| s.fit.as_ref().unwrap().polynomial.to_string())
            .collect();
        assert_eq!(fits, vec!["1", "x - 1", "1"]);
        let top = &scan.slots[2].values;
        assert_eq!(top[0], (2, "1.414213562373".to_string()));
    }

    #[test]
    fn kneser_scan() {
        let scan = spectral_scan(
            &FamilySpec::Kneser { k: 2 },
            5,
            9,
            MatrixMode::Adjacency,
            2,
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(scan.distinct_count, ConstantFrom { onset: 5, value: 3 });
        let fits: Vec<String> = scan
            .slots
            .iter()
            .map(|s| s.fit.as_ref().unwrap().polynomial.to_string())
            .collect();
        assert_eq!(fits, vec!["x - 1", "1/2*x^2 - 3/2*x", "1"]);
    }

    #[test]
    fn laplacian_zero_multiplicity_counts_components() {
        let g = Graph::new(7, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let s = spectrum_summary(&g, MatrixMode::Laplacian).unwrap();
        assert_eq!(s.eigenvalues[0].value, "0.000000000000");
        assert_eq!(s.eigenvalues[0].multiplicity, g.component_count());
    }

    #[test]
    fn large_matrix_within_cap() {
        let mut edges: Vec<(usize, usize)> = (0..200usize)
            .flat_map(|i| [(i, (i + 1) % 200), (i, (i * 7 + 3) % 200)])
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Graph::new(200, edges).unwrap();
        let s = spectrum_summary(&g, MatrixMode::Laplacian).unwrap();
        assert_eq!(s.multiplicities().iter().sum::<usize>(), 200);
    }

    #[test]
    fn unstable_count_is_reported() {
        let scan = spectral_scan(
            &FamilySpec::Complete,
            0,
            1,
            MatrixMode::Adjacency,
            2,
            &Caps::default(),
        )
        .unwrap();
        assert!(!scan.stabilized);
        assert!(scan.slots.is_empty());
    }
}
