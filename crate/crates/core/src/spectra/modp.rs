//! Word-size modular arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, largest first.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

/// Leading primes from [`primes`] whose product exceeds `bound`.
pub(crate) fn primes_exceeding(bound: &BigUint) -> Vec<u64> {
    let mut product = BigUint::one();
    let mut out = Vec::new();
    for p in primes() {
        if &product > bound {
            break;
        }
        product *= p;
        out.push(p);
    }
    out
}

fn residue(a: &BigUint, p: u64) -> u64 {
    (a % p).to_u64().expect("reduced")
}

/// Combines coefficient vectors known modulo each prime into integers in
/// the symmetric range around zero. Shorter vectors are zero-padded.
pub(crate) fn crt_symmetric(residues: &[Vec<u64>], primes: &[u64]) -> Vec<BigInt> {
    let len = residues.iter().map(Vec::len).max().unwrap_or(0);
    let mut modulus = BigUint::one();
    let mut acc = vec![BigUint::zero(); len];
    for (res, &p) in residues.iter().zip(primes) {
        let inv = pow_mod(residue(&modulus, p), p - 2, p);
        for (i, a) in acc.iter_mut().enumerate() {
            let r = res.get(i).copied().unwrap_or(0);
            let t = mul_mod((r + p - residue(a, p)) % p, inv, p);
            *a += &modulus * t;
        }
        modulus *= p;
    }
    let half = &modulus >> 1;
    acc.into_iter()
        .map(|a| {
            if a > half {
                BigInt::from(a) - BigInt::from(modulus.clone())
            } else {
                BigInt::from(a)
            }
        })
        .collect()
}

/// Reduces integer coefficients modulo `p`.
pub(crate) fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    c.iter()
        .map(|a| (((a % &m) + &m) % &m).to_u64().expect("reduced"))
        .collect()
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd in `F_p[x]`, constant first; empty for `gcd(0, 0)`.
pub(crate) fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonempty"), p - 2, p);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().expect("nonempty"), inv, p);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mul_mod(f, bc, p)) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = pow_mod(lead, p - 2, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}
