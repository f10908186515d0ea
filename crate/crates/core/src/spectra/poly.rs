use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::modp::{crt_symmetric, gcd_mod, mul_mod, primes, reduce};
use crate::error::{Error, Result};

/// A polynomial with integer coefficients, constant term first. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn one() -> Self {
        Self::from_integers([1])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// `lc(b)^k · self − q · b` with `k` the number of reduction steps and
    /// the result of degree below `deg b`. Returns the remainder and `k`.
    fn pseudo_remainder(&self, b: &Self) -> (Self, usize) {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        let mut steps = 0;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().cloned().expect("nonempty");
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps += 1;
        }
        (Self::new(r), steps)
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    ///
    /// Computed modulo word-size primes and lifted; the candidate is
    /// accepted only after exact division of both inputs.
    pub fn gcd(&self, other: &Self) -> Self {
        let (a, b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() || b.is_zero() {
            return if a.is_zero() { b } else { a };
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Self::one();
        }
        let (la, lb) = (a.leading().expect("nonzero"), b.leading().expect("nonzero"));
        let lead = la.gcd(lb);
        // Mignotte: a factor of degree ≤ d has coefficients ≤ 2^d ‖a‖.
        let norm = |x: &Self| x.coeffs.iter().map(|c| c.abs()).sum::<BigInt>();
        let d = a.degree().min(b.degree()).expect("nonzero");
        let bound = (&lead * norm(&a).min(norm(&b)) << (d + 1))
            .magnitude()
            .clone();
        let lead_u = lead.magnitude().clone();

        let mut best: Option<usize> = None;
        let mut residues: Vec<Vec<u64>> = Vec::new();
        let mut used: Vec<u64> = Vec::new();
        let mut product = BigUint::one();
        for p in primes() {
            if (la % p).is_zero() || (lb % p).is_zero() {
                continue;
            }
            let g = gcd_mod(&reduce(&a.coeffs, p), &reduce(&b.coeffs, p), p);
            let e = g.len() - 1;
            if e == 0 {
                return Self::one();
            }
            match best {
                Some(prev) if e > prev => continue,
                Some(prev) if e == prev => {}
                _ => {
                    best = Some(e);
                    residues.clear();
                    used.clear();
                    product = BigUint::one();
                }
            }
            let scale = (&lead_u % p).to_u64().expect("reduced");
            residues.push(g.iter().map(|&c| mul_mod(c, scale, p)).collect());
            used.push(p);
            product *= p;
            if product > bound {
                let candidate = Self::new(crt_symmetric(&residues, &used)).primitive_part();
                if a.exact_div(&candidate).is_ok() && b.exact_div(&candidate).is_ok() {
                    return candidate;
                }
            }
        }
        unreachable!("prime supply is unbounded")
    }

    /// Exact quotient `self / divisor` in `Z[x]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let db = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by zero polynomial".into()))?;
        let lb = divisor.leading().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return if r.is_empty() {
                Ok(Self::default())
            } else {
                Err(Error::Contract(
                    "polynomial division leaves a remainder".into(),
                ))
            };
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + db];
            let (c, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return Err(Error::Contract(
                    "polynomial division leaves a remainder".into(),
                ));
            }
            for (i, bc) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
            q[shift] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::Contract(
                "polynomial division leaves a remainder".into(),
            ));
        }
        Ok(Self::new(q))
    }

    /// Sturm chain `p, p', −rem, …`, each term rescaled by a positive
    /// constant.
    pub(crate) fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (r, steps) = seq[n - 2].pseudo_remainder(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            let scale_negative =
                seq[n - 1].leading().expect("nonzero").is_negative() && steps % 2 == 1;
            let c = r.content();
            let next = Self::new(r.coeffs.iter().map(|a| a / &c).collect());
            seq.push(if scale_negative { next } else { -&next });
        }
        seq
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    coeffs: Vec<String>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}
