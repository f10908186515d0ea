mod common;

use figraph::enumeration::{
    automorphism_count, chromatic_polynomial, count_homomorphisms, count_induced_subgraphs,
    count_injective_homomorphisms, count_subgraphs, count_walks, sample_family, Quantity,
};
use figraph::polyfit::fit_sequence;
use figraph::spectra::{spectrum_summary, MatrixMode};
use figraph::stability::stabilization_scan;
use figraph::{Caps, FamilySpec, Graph, RationalPolynomial};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::Complete),
        (1usize..=3).prop_map(|k| FamilySpec::Kneser { k }),
        (2usize..=3).prop_map(|k| FamilySpec::GenKneser { k, r: 1 }),
        (1usize..=2).prop_map(|k| FamilySpec::KneserLe { k }),
        (1usize..=3).prop_map(|k| FamilySpec::Johnson { k }),
        (1usize..=3).prop_map(|k| FamilySpec::CompleteBipartite { k }),
        (1usize..=2).prop_map(|k| FamilySpec::Lattice { k }),
        Just(FamilySpec::LineOf {
            inner: Box::new(FamilySpec::Complete)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn copies_times_automorphisms_are_injective_homs(h in common::arb_graph(4), g in common::arb_graph(7)) {
        let caps = Caps::default();
        let copies = count_subgraphs(&g, &h).unwrap();
        let aut = automorphism_count(&h, &caps).unwrap();
        let inj = count_injective_homomorphisms(&h, &g, &caps).unwrap();
        prop_assert_eq!(&copies * &aut, inj.clone());
        prop_assert_eq!(inj, BigUint::from(common::injective_hom_count(&h, &g)));
        prop_assert_eq!(aut, BigUint::from(common::automorphisms(&h)));
        prop_assert_eq!(copies, BigUint::from(common::subgraph_copies(&h, &g)));
    }

    #[test]
    fn homomorphisms_match_brute_force(t in common::arb_graph(4), g in common::arb_graph(6)) {
        prop_assert_eq!(count_homomorphisms(&t, &g).unwrap(), BigUint::from(common::hom_count(&t, &g)));
    }

    #[test]
    fn induced_copies_match_brute_force(h in common::arb_graph(4), g in common::arb_graph(7)) {
        let aut = common::automorphisms(&h);
        let expected = common::induced_embedding_count(&h, &g) / aut;
        prop_assert_eq!(count_induced_subgraphs(&g, &h).unwrap(), BigUint::from(expected));
    }

    #[test]
    fn chromatic_polynomial_counts_colorings(t in common::arb_graph(6)) {
        let p = chromatic_polynomial(&t).unwrap();
        for q in 0..=8usize {
            let exact = count_homomorphisms(&t, &Graph::complete(q)).unwrap();
            prop_assert_eq!(p.evaluate_int(q as i64).to_integer(), BigInt::from(exact));
        }
        if t.vertex_count() <= 5 {
            prop_assert_eq!(p.evaluate_int(3).to_integer(), BigInt::from(common::proper_colorings(&t, 3)));
        }
    }

    #[test]
    fn closed_walks_are_power_sums_of_the_spectrum(g in common::arb_graph(9), r in 0usize..=6) {
        let w = count_walks(&g, r).unwrap();
        let (trace, total) = common::walk_counts(&g, r);
        prop_assert_eq!(w.closed_walks.clone(), BigUint::from(trace));
        prop_assert_eq!(w.walks, BigUint::from(total));
        let s = spectrum_summary(&g, MatrixMode::Adjacency).unwrap();
        let power_sum: f64 = s.eigenvalues.iter().map(|e| e.multiplicity as f64 * e.approx().powi(r as i32)).sum();
        let exact = trace as f64;
        prop_assert!((power_sum - exact).abs() <= 1e-6 * exact.max(1.0), "{} vs {}", power_sum, exact);
    }

    #[test]
    fn edge_pattern_counts_edges(spec in family(), n in 0usize..=8) {
        let g = spec.instantiate(n).unwrap();
        let copies = count_subgraphs(&g.graph, &Graph::complete(2)).unwrap();
        prop_assert_eq!(copies, BigUint::from(g.graph.edge_count()));
    }

    #[test]
    fn fits_ignore_a_garbage_prefix(
        coeffs in proptest::collection::vec(-20i64..=20, 1..=4),
        garbage in proptest::collection::vec(-1000i64..=1000, 0..=5),
    ) {
        let p = RationalPolynomial::from_integers(coeffs.iter().copied());
        let b = coeffs.len() - 1;
        let shift = garbage.len();
        let clean: Vec<(usize, BigInt)> =
            (shift..shift + b + 5).map(|n| (n, p.evaluate_int(n as i64).to_integer())).collect();
        let mut dirty: Vec<(usize, BigInt)> = garbage.iter().enumerate().map(|(n, &v)| (n, BigInt::from(v))).collect();
        dirty.extend(clean.iter().cloned());
        let fit = fit_sequence(&clean, b).unwrap().unwrap();
        prop_assert_eq!(&fit.polynomial, &p);
        prop_assert_eq!(fit.onset, shift);
        let fit = fit_sequence(&dirty, b).unwrap().unwrap();
        prop_assert_eq!(&fit.polynomial, &p);
        prop_assert!(fit.onset <= shift);
        // Samples before the onset are exactly those the polynomial misses at the boundary.
        if fit.onset > 0 {
            prop_assert!(p.evaluate_int(fit.onset as i64 - 1).to_integer() != dirty[fit.onset - 1].1);
        }
    }
}

/// Vertex-stability degree observed over `n < 10`.
fn stable_degree(spec: &FamilySpec) -> usize {
    stabilization_scan(spec, 10, 1, &Caps::default())
        .unwrap()
        .onsets
        .vertex_stable
        .unwrap()
}

#[test]
fn pattern_and_degree_counts_are_eventually_polynomial_of_bounded_degree() {
    let caps = Caps::default();
    let families = [
        FamilySpec::Complete,
        FamilySpec::Kneser { k: 2 },
        FamilySpec::Johnson { k: 2 },
        FamilySpec::Lattice { k: 2 },
        FamilySpec::CompleteBipartite { k: 2 },
    ];
    for spec in families {
        let d = stable_degree(&spec);
        for h in [Graph::complete(2), Graph::path(3), Graph::complete(3)] {
            let b = h.vertex_count() * d;
            let r = sample_family(
                &spec,
                &Quantity::Subgraph { pattern: h.clone() },
                0,
                b + 5,
                &caps,
            )
            .unwrap();
            let fit = fit_sequence(&r.values, b).unwrap();
            assert!(
                fit.is_some(),
                "{} with a {}-vertex pattern",
                spec.name(),
                h.vertex_count()
            );
        }
        for q in [Quantity::MinDegree, Quantity::MaxDegree] {
            let r = sample_family(&spec, &q, 0, d + 5, &caps).unwrap();
            assert!(
                fit_sequence(&r.values, d).unwrap().is_some(),
                "{} {}",
                spec.name(),
                q.name()
            );
        }
    }
}

#[test]
fn walk_counts_are_eventually_polynomial_of_bounded_degree() {
    let caps = Caps::default();
    for spec in [
        FamilySpec::Complete,
        FamilySpec::Kneser { k: 2 },
        FamilySpec::Lattice { k: 2 },
    ] {
        let d = stable_degree(&spec);
        for r in 1..=3 {
            let b = r * d;
            let closed =
                sample_family(&spec, &Quantity::ClosedWalks { r }, 0, b + 5, &caps).unwrap();
            assert!(
                fit_sequence(&closed.values, b).unwrap().is_some(),
                "{} closed walks r={r}",
                spec.name()
            );
            let b = (r + 1) * d;
            let all = sample_family(&spec, &Quantity::Walks { r }, 0, b + 5, &caps).unwrap();
            assert!(
                fit_sequence(&all.values, b).unwrap().is_some(),
                "{} walks r={r}",
                spec.name()
            );
        }
    }
}
