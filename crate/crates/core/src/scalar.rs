//! Exact coefficient rings.
//!
//! Everything in the engine is generic over [`Scalar`], a commutative unital
//! ℚ-algebra with decidable equality. Two instances ship: [`Rational`]
//! (arbitrary precision fractions) and [`UniPoly`] (polynomials in one
//! formal variable `l` with rational coefficients).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always normalised with a positive denominator.
pub type Rational = BigRational;

/// Exact commutative ℚ-algebra.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Action of ℚ on the algebra.
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// Parses the textual form produced by `Display`.
    fn parse(s: &str) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `p/q` (surrounding whitespace allowed) into a normalised rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// Univariate polynomial in `l` over ℚ; coefficient `i` multiplies `l^i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The formal variable `l`.
    pub fn var() -> Self {
        UniPoly::new(vec![int(0), int(1)])
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(<Rational as Zero>::zero(), |acc, c| acc * x + c)
    }
}

/// `l(l-1)...(l-i+1)/i!` as a polynomial in `l`.
pub fn binomial_poly(i: usize) -> UniPoly {
    let mut p = UniPoly::one();
    for j in 0..i {
        let factor = UniPoly::new(vec![int(-(j as i64)), int(1)]);
        p = Scalar::mul(&p, &factor);
    }
    let fact: BigInt = (1..=i as u64).map(BigInt::from).product();
    p.scale(&Rational::from_integer(fact).recip())
}

impl Scalar for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }
    fn one() -> Self {
        UniPoly::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = <Rational as Zero>::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        UniPoly::new(coeffs)
    }
    fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut coeffs =
            vec![<Rational as Zero>::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
    fn scale(&self, r: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
    fn from_rational(r: Rational) -> Self {
        UniPoly::constant(r)
    }
    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        for part in t.split(" + ") {
            let part = part.trim();
            let (c, power) = match part.split_once('*') {
                None if part == "l" => (int(1), 1),
                None => (parse_rational(part)?, 0),
                Some((c, var)) => {
                    let power = match var.trim() {
                        "l" => 1,
                        v => v
                            .strip_prefix("l^")
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad monomial {part:?}")))?,
                    };
                    (parse_rational(c)?, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, <Rational as Zero>::zero());
            }
            coeffs[power] += c;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*l")?,
                _ => write!(f, "{c}*l^{i}")?,
            }
        }
        Ok(())
    }
}

/// `n!` as a rational.
pub(crate) fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).map(BigInt::from).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalise() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r, frac(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(parse_rational(" 4 ").unwrap().to_string(), "4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn unipoly_strips_trailing_zeros() {
        let p = UniPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(UniPoly::new(vec![int(0)]).degree(), None);
        assert!(Scalar::is_zero(&UniPoly::var().sub(&UniPoly::var())));
    }

    #[test]
    fn binomial_polys() {
        assert_eq!(binomial_poly(0), UniPoly::one());
        assert_eq!(binomial_poly(1), UniPoly::var());
        assert_eq!(
            binomial_poly(2),
            UniPoly::new(vec![int(0), frac(-1, 2), frac(1, 2)])
        );
        // binomial(l, 3) at l = 5 is 10
        assert_eq!(binomial_poly(3).eval(&int(5)), int(10));
        assert_eq!(binomial_poly(4).eval(&int(2)), int(0));
    }

    #[test]
    fn unipoly_text_round_trip() {
        for p in [
            UniPoly::default(),
            UniPoly::var(),
            binomial_poly(3),
            UniPoly::new(vec![frac(-1, 3), int(0), int(2)]),
        ] {
            let s = p.to_string();
            assert_eq!(UniPoly::parse(&s).unwrap(), p, "{s}");
        }
        assert_eq!(binomial_poly(2).to_string(), "-1/2*l + 1/2*l^2");
    }
}
