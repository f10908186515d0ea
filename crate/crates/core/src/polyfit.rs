//! Exact rational polynomials, interpolation, and detection of sequences
//! that eventually agree with a polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumeration::CountRecord;
use crate::error::{Error, Result};

/// A polynomial in one variable with exact rational coefficients, constant
/// term first. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_integers([0, 1])
    }

    /// `C(x - shift, k)` as a polynomial in `x`.
    pub fn binomial(shift: i64, k: usize) -> Self {
        let mut p = Self::from_integers([1]);
        let mut fact = BigInt::one();
        for i in 0..k {
            p = &p * &Self::from_integers([-(shift + i as i64), 1]);
            fact *= BigInt::from(i + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_int(&self, x: i64) -> BigRational {
        self.evaluate(&BigRational::from_integer(x.into()))
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RationalPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
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
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// `"num/den"` text form of a rational.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<String>,
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(RationalPolynomial::new(coeffs))
    }
}

/// The unique polynomial of degree below `points.len()` through `points`,
/// by Newton divided differences.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Result<RationalPolynomial> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(rational_to_string(x)));
        }
    }
    let k = points.len();
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    // After pass `j`, table[i] holds f[x_{i-j}, …, x_i] for i ≥ j.
    for j in 1..k {
        for i in (j..k).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            table[i] = num / den;
        }
    }
    let mut p = RationalPolynomial::zero();
    for i in (0..k).rev() {
        let shift = RationalPolynomial::new(vec![-points[i].0.clone(), BigRational::one()]);
        p = &(&p * &shift) + &RationalPolynomial::constant(table[i].clone());
    }
    Ok(p)
}

/// Interpolation for integer-valued samples at integer abscissas.
pub fn interpolate_counts(points: &[(i64, BigInt)]) -> Result<RationalPolynomial> {
    let points: Vec<_> = points
        .iter()
        .map(|(x, y)| {
            (
                BigRational::from_integer((*x).into()),
                BigRational::from_integer(y.clone()),
            )
        })
        .collect();
    interpolate(&points)
}

/// A polynomial matching a sequence from `onset` onward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventualFit {
    pub polynomial: RationalPolynomial,
    /// Least sampled `n` from which every sample matches.
    pub onset: usize,
    pub degree_bound_used: usize,
}

/// Fits the samples of a count record with a polynomial of degree at most
/// `degree_bound`. Returns `Ok(None)` when no qualifying suffix exists.
pub fn fit_eventual(record: &CountRecord, degree_bound: usize) -> Result<Option<EventualFit>> {
    fit_sequence(&record.values, degree_bound)
}

/// As [`fit_eventual`] on bare `(n, value)` samples with consecutive `n`.
/// Needs at least `degree_bound + 4` samples.
pub fn fit_sequence(
    samples: &[(usize, BigInt)],
    degree_bound: usize,
) -> Result<Option<EventualFit>> {
    let needed = degree_bound + 4;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: samples.len(),
        });
    }
    fit_suffix(samples, degree_bound)
}

/// As [`fit_sequence`], but accepts as few as `degree_bound + 3` samples,
/// the shortest range on which a qualifying suffix can exist.
pub fn fit_suffix(samples: &[(usize, BigInt)], degree_bound: usize) -> Result<Option<EventualFit>> {
    let min_suffix = degree_bound + 3;
    if samples.len() < min_suffix {
        return Err(Error::InsufficientSamples {
            needed: min_suffix,
            got: samples.len(),
        });
    }
    if samples.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidArgument(
            "samples must be at consecutive n".into(),
        ));
    }
    let order = degree_bound + 1;
    let values: Vec<BigInt> = samples.iter().map(|(_, v)| v.clone()).collect();
    let diffs = forward_differences(&values, order);
    // Smallest start whose every later difference vanishes.
    let mut start = diffs.len();
    while start > 0 && diffs[start - 1].is_zero() {
        start -= 1;
    }
    if samples.len() - start < min_suffix {
        return Ok(None);
    }
    let suffix = &samples[start..];
    let anchor: Vec<(i64, BigInt)> = suffix[..order]
        .iter()
        .map(|(n, v)| (*n as i64, v.clone()))
        .collect();
    let polynomial = interpolate_counts(&anchor)?;
    for (n, v) in suffix {
        if polynomial.evaluate_int(*n as i64) != BigRational::from_integer(v.clone()) {
            return Err(Error::Contract(format!(
                "fitted polynomial misses the sample at n={n}"
            )));
        }
    }
    Ok(Some(EventualFit {
        polynomial,
        onset: suffix[0].0,
        degree_bound_used: degree_bound,
    }))
}

/// `order`-th forward differences; entry `j` depends on `values[j..=j+order]`.
fn forward_differences(values: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut cur = values.to_vec();
    for _ in 0..order {
        if cur.len() < 2 {
            return Vec::new();
        }
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn samples(pairs: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
        pairs.iter().map(|&(n, v)| (n, BigInt::from(v))).collect()
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate_counts(&[(0, 1.into()), (1, 2.into()), (2, 5.into()), (3, 10.into())])
            .unwrap();
        assert_eq!(p, RationalPolynomial::from_integers([1, 0, 1]));

        let p = interpolate_counts(&[(0, 0.into()), (1, 0.into())]).unwrap();
        assert!(p.is_zero());

        let pts = [
            (6, 15),
            (7, 105),
            (8, 420),
            (9, 1260),
            (10, 3150),
            (11, 6930),
            (12, 13860),
        ];
        let pts: Vec<(i64, BigInt)> = pts.iter().map(|&(x, y)| (x, BigInt::from(y))).collect();
        let p = interpolate_counts(&pts).unwrap();
        assert_eq!(p, RationalPolynomial::binomial(0, 6).scale(&q(15)));

        assert!(matches!(
            interpolate_counts(&[(1, 0.into()), (1, 2.into())]),
            Err(Error::DuplicateAbscissa(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            RationalPolynomial::from_integers([1, 0, 1]).evaluate_int(3),
            q(10)
        );
        assert_eq!(RationalPolynomial::zero().evaluate_int(17), q(0));
        assert_eq!(
            RationalPolynomial::binomial(0, 6)
                .scale(&q(15))
                .evaluate_int(7),
            q(105)
        );
    }

    #[test]
    fn binomial_polynomial_matches_counts() {
        let p = RationalPolynomial::binomial(2, 2);
        for n in 4..12i64 {
            let m = n - 2;
            assert_eq!(p.evaluate_int(n), q(m * (m - 1) / 2));
        }
    }

    #[test]
    fn fit_constant() {
        let s = samples(&[(3, 7), (4, 7), (5, 7), (6, 7), (7, 7)]);
        let fit = fit_sequence(&s, 0).unwrap().unwrap();
        assert_eq!(fit.polynomial, RationalPolynomial::from_integers([7]));
        assert_eq!(fit.onset, 3);
    }

    #[test]
    fn fit_degree_with_junk_prefix() {
        // C(n-2, 2) from n = 4, garbage before.
        let mut s = samples(&[(0, 99), (1, -5), (2, 3)]);
        for n in 3..=10i64 {
            let m = n - 2;
            s.push((
                n as usize,
                BigInt::from(if n == 3 { 42 } else { m * (m - 1) / 2 }),
            ));
        }
        let fit = fit_sequence(&s, 2).unwrap().unwrap();
        assert_eq!(fit.polynomial, RationalPolynomial::binomial(2, 2));
        assert_eq!(fit.onset, 4);
    }

    #[test]
    fn fit_reports_no_fit_and_errors() {
        let s: Vec<(usize, BigInt)> = (0..8usize).map(|n| (n, BigInt::from(1u64 << n))).collect();
        assert_eq!(fit_sequence(&s, 2).unwrap(), None);
        assert!(matches!(
            fit_sequence(&s[..5], 2),
            Err(Error::InsufficientSamples { needed: 6, got: 5 })
        ));
        let gappy = samples(&[(0, 1), (1, 1), (3, 1), (4, 1), (5, 1)]);
        assert!(fit_sequence(&gappy, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let p = RationalPolynomial::new(vec![BigRational::new(1.into(), 2.into()), q(-3)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"coeffs":["1/2","-3/1"]}"#);
        let back: RationalPolynomial = serde_json::from_str(r#"{"coeffs":["1/2","-3"]}"#).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "-3*x + 1/2");
    }

    proptest! {
        #[test]
        fn interpolation_round_trips(ys in proptest::collection::vec(-1000i64..1000, 1..9), start in -20i64..20) {
            let pts: Vec<(i64, BigInt)> = ys.iter().enumerate().map(|(i, &y)| (start + 3 * i as i64, y.into())).collect();
            let p = interpolate_counts(&pts).unwrap();
            prop_assert!(p.degree().map_or(true, |d| d < pts.len()));
            for (x, y) in &pts {
                prop_assert_eq!(p.evaluate_int(*x), BigRational::from_integer(y.clone()));
            }
        }

        #[test]
        fn prefix_corruption_keeps_fit(
            coeffs in proptest::collection::vec(-50i64..50, 1..4),
            junk in proptest::collection::vec(-1000i64..1000, 0..5),
        ) {
            let p = RationalPolynomial::from_integers(coeffs.clone());
            let bound = coeffs.len() - 1;
            let clean: Vec<(usize, BigInt)> = (0..bound + 8)
                .map(|n| (n, p.evaluate_int(n as i64).to_integer()))
                .collect();
            let fit = fit_sequence(&clean, bound).unwrap().unwrap();
            prop_assert_eq!(&fit.polynomial, &p);
            let mut dirty = clean.clone();
            for (i, j) in junk.iter().enumerate().take(fit.onset.max(junk.len()).min(dirty.len() - bound - 3)) {
                dirty[i].1 = BigInt::from(*j);
            }
            let refit = fit_sequence(&dirty, bound).unwrap().unwrap();
            prop_assert_eq!(refit.polynomial, p);
        }
    }
}
