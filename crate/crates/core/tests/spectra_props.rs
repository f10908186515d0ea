mod common;

use figraph::enumeration::count_walks;
use figraph::spectra::{
    char_poly, distinct_eigenvalue_count, matrix, spectrum_summary, MatrixMode,
};
use figraph::Graph;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn components(g: &Graph) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Degree of the minimal polynomial: the first `k` with `A^k` in the span
/// of lower powers, by fraction-free elimination on flattened powers.
fn minimal_polynomial_degree(m: &[Vec<i64>]) -> usize {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for k in 0..=n {
        let mut row: Vec<BigInt> = power.iter().flatten().cloned().collect();
        for (pivot, b) in &basis {
            if !row[*pivot].is_zero() {
                let f = row[*pivot].clone();
                let p = b[*pivot].clone();
                row = row.iter().zip(b).map(|(x, y)| x * &p - y * &f).collect();
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(pivot) => basis.push((pivot, row)),
            None => return k,
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &power[i][l] * m[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

fn mode() -> impl Strategy<Value = MatrixMode> {
    prop_oneof![Just(MatrixMode::Adjacency), Just(MatrixMode::Laplacian)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn multiplicities_sum_to_order(g in common::arb_graph(10), mode in mode()) {
        let s = spectrum_summary(&g, mode).unwrap();
        prop_assert_eq!(s.multiplicities().iter().sum::<usize>(), g.vertex_count());
        prop_assert_eq!(s.distinct_count, s.eigenvalues.len());
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0].approx() < w[1].approx()));
    }

    #[test]
    fn char_poly_matches_determinant(g in common::arb_graph(8), mode in mode()) {
        let p = char_poly(&g, mode).unwrap();
        let m = matrix(&g, mode);
        let n = g.vertex_count() as i64;
        prop_assert_eq!(p.degree().unwrap_or(0), g.vertex_count());
        for t in -n - 1..=n + 1 {
            prop_assert_eq!(p.evaluate(&BigInt::from(t)), common::bareiss_char_value(&m, t), "t = {}", t);
        }
    }

    #[test]
    fn trace_identity(g in common::arb_graph(10), r in 0usize..=6) {
        let s = spectrum_summary(&g, MatrixMode::Adjacency).unwrap();
        let exact = count_walks(&g, r).unwrap().closed_walks.to_f64().unwrap();
        let approx: f64 = s.eigenvalues.iter().map(|e| e.multiplicity as f64 * e.approx().powi(r as i32)).sum();
        prop_assert!((approx - exact).abs() <= 1e-5 * exact.max(1.0), "{} vs {}", approx, exact);
    }

    #[test]
    fn laplacian_kernel_counts_components(g in common::arb_graph(10)) {
        let p = char_poly(&g, MatrixMode::Laplacian).unwrap();
        let zero_multiplicity = p.coeffs().iter().take_while(|c| c.is_zero()).count();
        prop_assert_eq!(zero_multiplicity, components(&g));
        let s = spectrum_summary(&g, MatrixMode::Laplacian).unwrap();
        if let Some(first) = s.eigenvalues.first() {
            prop_assert_eq!(first.approx(), 0.0);
            prop_assert_eq!(first.multiplicity, components(&g));
        }
    }

    #[test]
    fn distinct_counts_agree(g in common::arb_graph(8), mode in mode()) {
        let p = char_poly(&g, mode).unwrap();
        let s = spectrum_summary(&g, mode).unwrap();
        prop_assert_eq!(distinct_eigenvalue_count(&p).unwrap(), s.distinct_count);
        prop_assert_eq!(s.distinct_count, minimal_polynomial_degree(&matrix(&g, mode)));
    }

    #[test]
    fn spectrum_is_a_graph_invariant(g in common::arb_graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = common::relabel(&g, &perm);
        prop_assert_eq!(char_poly(&g, MatrixMode::Adjacency).unwrap(), char_poly(&h, MatrixMode::Adjacency).unwrap());
    }
}

#[test]
fn complete_graph_laplacian_has_eigenvalue_n() {
    for n in 2..=12usize {
        let s = spectrum_summary(&Graph::complete(n), MatrixMode::Laplacian).unwrap();
        let pairs: Vec<(f64, usize)> = s.eigenvalues.iter().map(|e| (e.approx(), e.multiplicity)).collect();
        assert_eq!(pairs, [(0.0, 1), (n as f64, n - 1)], "K_{n}");
    }
}
