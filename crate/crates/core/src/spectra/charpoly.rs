//! `det(xI − M)` for integer matrices: Hessenberg reduction modulo several
//! 62-bit primes, then Chinese remaindering.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::modp::{crt_symmetric, mul_mod, pow_mod, primes_exceeding};
use super::poly::IntPolynomial;

/// Characteristic polynomial modulo `p`, constant term first.
fn char_poly_mod(m: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut h: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&v| reduce(v)).collect())
        .collect();

    // Similarity transform to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let m1 = j + 1;
        let Some(piv) = (m1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != m1 {
            h.swap(piv, m1);
            for row in h.iter_mut() {
                row.swap(piv, m1);
            }
        }
        let inv = pow_mod(h[m1][j], p - 2, p);
        for i in m1 + 1..n {
            if h[i][j] == 0 {
                continue;
            }
            let u = mul_mod(h[i][j], inv, p);
            // row_i -= u * row_m1
            for k in 0..n {
                let t = mul_mod(u, h[m1][k], p);
                h[i][k] = (h[i][k] + p - t) % p;
            }
            // col_m1 += u * col_i
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[m1] = (row[m1] + t) % p;
            }
        }
    }

    // p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j−1}) p_i
    let mut chain: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &chain[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(h[k][k], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let f = mul_mod(h[i][k], prod, p);
            if f == 0 {
                continue;
            }
            for (d, &c) in chain[i].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(f, c, p)) % p;
            }
        }
        chain.push(next);
    }
    chain.pop().expect("chain has n+1 entries")
}

/// Exact `det(xI − m)` for a square integer matrix.
pub(crate) fn char_poly_of_matrix(m: &[Vec<i64>]) -> IntPolynomial {
    let n = m.len();
    // Coefficients are elementary symmetric functions of eigenvalues bounded
    // by the largest absolute row sum R, so |c_k| ≤ (1 + R)^n.
    let r = m
        .iter()
        .map(|row| row.iter().map(|v| v.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let bound = BigUint::from(1 + r).pow(n as u32) * 2u32;

    let ps = primes_exceeding(&bound);
    let residues: Vec<Vec<u64>> = ps.par_iter().map(|&p| char_poly_mod(m, p)).collect();
    IntPolynomial::new(crt_symmetric(&residues, &ps))
}
