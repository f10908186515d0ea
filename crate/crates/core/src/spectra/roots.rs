//! Real-root isolation for square-free integer polynomials with Sturm
//! chains and dyadic bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;

/// Binary digits of the final isolating intervals.
const TARGET_BITS: u32 = 50;

/// A root of a square-free polynomial inside `[lo, hi] / 2^exp`.
#[derive(Debug, Clone)]
pub(crate) struct IsolatedRoot {
    pub lo: BigInt,
    pub hi: BigInt,
    pub exp: u32,
}

impl IsolatedRoot {
    fn scaled(&self, exp: u32) -> (BigInt, BigInt) {
        let s = exp - self.exp;
        (&self.lo << s, &self.hi << s)
    }

    pub(crate) fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.exp + 1))
    }

    fn cmp_lo(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled(e).0.cmp(&other.scaled(e).0)
    }

    fn overlaps(&self, other: &Self) -> bool {
        let e = self.exp.max(other.exp);
        let (a_lo, a_hi) = self.scaled(e);
        let (b_lo, b_hi) = other.scaled(e);
        a_lo <= b_hi && b_lo <= a_hi
    }
}

/// Sign of `q(num / 2^exp)`.
fn sign_at(q: &IntPolynomial, num: &BigInt, exp: u32) -> Ordering {
    let c = q.coeffs();
    if c.is_empty() {
        return Ordering::Equal;
    }
    let d = c.len() - 1;
    let mut acc = c[d].clone();
    for (k, ci) in c[..d].iter().rev().enumerate() {
        acc = acc * num + (ci << (exp as usize * (k + 1)));
    }
    acc.sign().cmp_zero()
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

fn variations(chain: &[IntPolynomial], num: &BigInt, exp: u32) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|q| sign_at(q, num, exp))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// All real roots of a square-free `q`, each in an interval of width at
/// most `2^-TARGET_BITS`, in ascending order.
pub(crate) fn isolate_real_roots(q: &IntPolynomial) -> Vec<IsolatedRoot> {
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let chain = q.sturm_sequence();
    // Cauchy: every root satisfies |x| < 1 + max|c_i| / |c_d|.
    let lead = q.leading().expect("nonzero").abs();
    let max = q.coeffs().iter().map(|c| c.abs()).max().expect("nonzero");
    let bound = BigInt::one() + (max + &lead - 1u32) / &lead;

    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound, 0u32)];
    // Each entry is an interval (lo, hi] / 2^exp with q(lo) ≠ 0.
    while let Some((lo, hi, exp)) = stack.pop() {
        let count = variations(&chain, &lo, exp) - variations(&chain, &hi, exp);
        match count {
            0 => {}
            1 => out.push(refine(q, lo, hi, exp)),
            _ => {
                let (lo2, hi2, exp2) = (&lo << 1, &hi << 1, exp + 1);
                let mid = split_point(q, &lo2, &hi2, exp2);
                let (mid, lo2, hi2, exp2) = mid;
                stack.push((mid.clone(), hi2, exp2));
                stack.push((lo2, mid, exp2));
            }
        }
    }
    out.sort_by(IsolatedRoot::cmp_lo);
    out
}

/// Grid for hint brackets.
const HINT_EXP: u32 = 64;

/// Isolates the roots of a square-free `q` near floating-point
/// approximations `hints` (sorted ascending), e.g. numerically computed
/// eigenvalues. Succeeds only if `deg q` disjoint brackets each show a sign
/// change, which certifies one root per bracket; `None` otherwise.
pub(crate) fn isolate_near(q: &IntPolynomial, hints: &[f64]) -> Option<Vec<IsolatedRoot>> {
    let deg = q.degree()?;
    let mut centers: Vec<f64> = Vec::new();
    for &h in hints {
        match centers.last() {
            Some(&c) if h - c <= 1e-8 * (1.0 + c.abs()) => {}
            _ => centers.push(h),
        }
    }
    let to_grid = |x: f64| -> Option<BigInt> {
        let r = BigRational::from_float(x)? * BigRational::from_integer(BigInt::one() << HINT_EXP);
        Some(r.floor().to_integer())
    };
    let mut found = Vec::new();
    for (i, &c) in centers.iter().enumerate() {
        let mut delta = 1e-6 * (1.0 + c.abs());
        if i > 0 {
            delta = delta.min((c - centers[i - 1]) / 3.0);
        }
        if i + 1 < centers.len() {
            delta = delta.min((centers[i + 1] - c) / 3.0);
        }
        let lo = to_grid(c - delta)?;
        let hi = to_grid(c + delta)? + 1;
        let (s_lo, s_hi) = (sign_at(q, &lo, HINT_EXP), sign_at(q, &hi, HINT_EXP));
        if s_lo == Ordering::Equal {
            found.push(IsolatedRoot {
                lo: lo.clone(),
                hi: lo,
                exp: HINT_EXP,
            });
        } else if s_hi == Ordering::Equal || s_lo != s_hi {
            found.push(refine(q, lo, hi, HINT_EXP));
        }
    }
    (found.len() == deg).then_some(found)
}

/// A point strictly inside `(lo, hi)` where `q` does not vanish, moving to
/// a finer grid when the midpoint is a root.
fn split_point(
    q: &IntPolynomial,
    lo: &BigInt,
    hi: &BigInt,
    exp: u32,
) -> (BigInt, BigInt, BigInt, u32) {
    let (mut lo, mut hi, mut exp) = (lo.clone(), hi.clone(), exp);
    let mut mid = (&lo + &hi) >> 1;
    let mut offset = BigInt::one();
    loop {
        if sign_at(q, &mid, exp) != Ordering::Equal && mid > lo && mid < hi {
            return (mid, lo, hi, exp);
        }
        lo <<= 1;
        hi <<= 1;
        mid <<= 1;
        exp += 1;
        mid += &offset;
        offset = -offset;
    }
}

/// Shrinks an interval `(lo, hi]` holding exactly one root.
fn refine(q: &IntPolynomial, mut lo: BigInt, mut hi: BigInt, mut exp: u32) -> IsolatedRoot {
    if sign_at(q, &hi, exp) == Ordering::Equal {
        return IsolatedRoot {
            lo: hi.clone(),
            hi,
            exp,
        };
    }
    let s_lo = sign_at(q, &lo, exp);
    loop {
        if exp >= TARGET_BITS && &hi - &lo <= BigInt::one() << (exp - TARGET_BITS) {
            return IsolatedRoot { lo, hi, exp };
        }
        lo <<= 1;
        hi <<= 1;
        exp += 1;
        let mid = (&lo + &hi) >> 1;
        match sign_at(q, &mid, exp) {
            Ordering::Equal => {
                return IsolatedRoot {
                    lo: mid.clone(),
                    hi: mid,
                    exp,
                }
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
}

/// Halves a root's interval, keeping the root inside.
fn bisect(q: &IntPolynomial, r: &IsolatedRoot) -> IsolatedRoot {
    if r.lo == r.hi {
        return r.clone();
    }
    let (lo, hi, exp) = (&r.lo << 1, &r.hi << 1, r.exp + 1);
    let mid = (&lo + &hi) >> 1;
    let s_lo = sign_at(q, &lo, exp);
    match sign_at(q, &mid, exp) {
        Ordering::Equal => IsolatedRoot {
            lo: mid.clone(),
            hi: mid,
            exp,
        },
        s if s == s_lo && s_lo != Ordering::Equal => IsolatedRoot { lo: mid, hi, exp },
        _ => IsolatedRoot { lo, hi: mid, exp },
    }
}

/// Sorts roots of pairwise coprime square-free factors, refining until
/// neighbouring intervals are disjoint. Items are `(root, factor index)`.
pub(crate) fn sort_separated(
    factors: &[IntPolynomial],
    mut roots: Vec<(IsolatedRoot, usize)>,
) -> Vec<(IsolatedRoot, usize)> {
    loop {
        roots.sort_by(|a, b| a.0.cmp_lo(&b.0));
        let clash = (1..roots.len()).find(|&i| roots[i - 1].0.overlaps(&roots[i].0));
        let Some(i) = clash else { return roots };
        for j in [i - 1, i] {
            let (r, f) = &roots[j];
            roots[j].0 = bisect(&factors[*f], r);
        }
    }
}

/// Decimal rendering of `x` rounded to `digits` places.
pub(crate) fn to_decimal(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let rounded = (x * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = rounded.is_negative();
    let a = rounded.abs();
    let int = &a / &scale;
    let frac = &a % &scale;
    let sign = if negative && !a.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_integers(c.iter().copied())
    }

    fn approx(r: &IsolatedRoot) -> f64 {
        to_decimal(&r.midpoint(), 15).parse().unwrap()
    }

    #[test]
    fn integer_and_irrational_roots() {
        let roots = isolate_real_roots(&p(&[0, -4, 0, 1]));
        let xs: Vec<f64> = roots.iter().map(approx).collect();
        assert_eq!(xs, vec![-2.0, 0.0, 2.0]);

        let roots = isolate_real_roots(&p(&[-2, 0, 1]));
        let xs: Vec<f64> = roots.iter().map(approx).collect();
        assert!((xs[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((xs[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000x - 1)(1001x - 1)
        let q = p(&[1, -2001, 1_001_000]);
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), 2);
        assert!((approx(&roots[0]) - 1.0 / 1001.0).abs() < 1e-13);
    }

    #[test]
    fn decimals() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(to_decimal(&third, 4), "0.3333");
        assert_eq!(to_decimal(&-third.clone(), 2), "-0.33");
        assert_eq!(
            to_decimal(&BigRational::new((-1).into(), 1000.into()), 2),
            "0.00"
        );
        assert_eq!(to_decimal(&BigRational::from_integer(3.into()), 3), "3.000");
    }
}
