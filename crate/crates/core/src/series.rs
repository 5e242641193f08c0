//! Truncated noncommutative power series.
//!
//! A [`TruncatedSeries`] is an element of the free associative algebra on `m`
//! generators modulo the two-sided ideal spanned by words of degree `> N`.
//! Terms are stored sparsely in graded-lex order and zero coefficients are
//! never kept, so structural equality is mathematical equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::word::Word;

/// Minimal degree in the support, `Infinite` for the zero series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<S: Scalar> {
    generators: usize,
    truncation: usize,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(generators: usize, truncation: usize) -> Self {
        TruncatedSeries {
            generators,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(generators: usize, truncation: usize) -> Self {
        Self::monomial(generators, truncation, Word::empty(), S::one())
    }

    /// The generator `X_i`.
    pub fn generator(generators: usize, truncation: usize, i: usize) -> Self {
        assert!(i < generators, "generator {i} out of range");
        Self::monomial(generators, truncation, Word::letter(i), S::one())
    }

    /// `c·X_w`, or zero when `w` lies beyond the truncation.
    pub fn monomial(generators: usize, truncation: usize, word: Word, coeff: S) -> Self {
        let mut s = Self::zero(generators, truncation);
        if word.degree() <= truncation && !coeff.is_zero() {
            s.terms.insert(word, coeff);
        }
        s
    }

    /// Builds a series from raw terms, validating letters and summing repeats.
    /// Words beyond the truncation are dropped.
    pub fn from_terms(
        generators: usize,
        truncation: usize,
        terms: impl IntoIterator<Item = (Word, S)>,
    ) -> Result<Self> {
        let mut s = Self::zero(generators, truncation);
        for (w, c) in terms {
            if let Some(&letter) = w.letters().iter().find(|&&l| l >= generators) {
                return Err(Error::LetterOutOfRange { letter, generators });
            }
            if w.degree() <= truncation {
                s.add_term(w, c);
            }
        }
        Ok(s)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.generators, self.truncation)
    }

    pub fn terms(&self) -> &BTreeMap<Word, S> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest support word in graded-lex order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    pub fn valuation(&self) -> Valuation {
        self.leading_word()
            .map_or(Valuation::Infinite, |w| Valuation::Finite(w.degree()))
    }

    /// Adds `c·X_w` in place (no truncation check).
    pub(crate) fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(
                self.generators,
                self.truncation,
                other.generators,
                other.truncation,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
            ..*self
        }
    }

    pub fn scale(&self, lambda: &S) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(w, c)| {
                let p = lambda.mul(c);
                (!p.is_zero()).then(|| (w.clone(), p))
            })
            .collect();
        TruncatedSeries { terms, ..*self }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&S::from_rational(r.clone()))
    }

    /// Cauchy product; products of degree above the truncation are discarded.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.generators, self.truncation);
        let n = self.truncation;
        for (u, a) in &self.terms {
            let room = n - u.degree();
            for (v, b) in other.terms.iter().take_while(|(v, _)| v.degree() <= room) {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &Self) -> Self {
        let mut out = self.mul_unchecked(other);
        let n = self.truncation;
        for (v, b) in &other.terms {
            let room = n - v.degree();
            for (u, a) in self.terms.iter().take_while(|(u, _)| u.degree() <= room) {
                out.add_term(v.concat(u), b.mul(a).neg());
            }
        }
        out
    }

    /// Nonnegative integer power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.generators, self.truncation);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Re-truncates at a lower order (or keeps everything at a higher one).
    pub fn truncate(&self, truncation: usize) -> Self {
        TruncatedSeries {
            generators: self.generators,
            truncation,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= truncation)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embeds into a larger alphabet (letters keep their indices).
    pub fn widen(&self, generators: usize) -> Self {
        assert!(generators >= self.generators);
        TruncatedSeries {
            generators,
            ..self.clone()
        }
    }

    /// Terms of degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        TruncatedSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            ..*self
        }
    }

    /// Coefficient-wise change of scalar ring.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        let mut out = TruncatedSeries::zero(self.generators, self.truncation);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Evaluates this series at `args`: every word `i₁…i_k` is replaced by
    /// `args[i₁]⋯args[i_k]`. The arguments must have no constant term, which
    /// keeps the sum finite below the truncation.
    pub fn substitute(&self, args: &[TruncatedSeries<S>]) -> Result<TruncatedSeries<S>> {
        if args.len() != self.generators {
            return Err(Error::ArityMismatch {
                expected: self.generators,
                got: args.len(),
            });
        }
        let Some(first) = args.first() else {
            // no generators: only the constant term survives
            return Ok(self.clone());
        };
        for (i, a) in args.iter().enumerate() {
            first.check_shape(a)?;
            if a.valuation() == Valuation::Finite(0) {
                return Err(Error::ValuationZeroArgument(i));
            }
        }
        let (m, n) = first.shape();
        let mut out = TruncatedSeries::zero(m, n);
        // products of prefixes, shared between words
        let mut prefix: HashMap<Vec<usize>, TruncatedSeries<S>> = HashMap::new();
        prefix.insert(Vec::new(), TruncatedSeries::one(m, n));
        for (w, c) in &self.terms {
            if w.degree() > n {
                continue;
            }
            let letters = w.letters();
            let mut start = letters.len();
            while !prefix.contains_key(&letters[..start]) {
                start -= 1;
            }
            for k in start..letters.len() {
                let next = prefix[&letters[..k]].mul_unchecked(&args[letters[k]]);
                prefix.insert(letters[..=k].to_vec(), next);
            }
            for (u, a) in &prefix[letters].terms {
                out.add_term(u.clone(), c.mul(a));
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    type Q = TruncatedSeries<Rational>;

    fn x(i: usize) -> Q {
        Q::generator(2, 3, i)
    }

    #[test]
    fn addition_and_cancellation() {
        let two_x0 = x(0).add(&x(0)).unwrap();
        assert_eq!(two_x0.coeff(&Word::letter(0)), int(2));
        assert_eq!(x(1).add(&Q::zero(2, 3)).unwrap(), x(1));
        assert!(x(0).sub(&x(0)).unwrap().terms().is_empty());
        assert!(matches!(
            x(0).add(&Q::zero(2, 4)),
            Err(Error::ShapeMismatch(2, 3, 2, 4))
        ));
    }

    #[test]
    fn scaling() {
        let p = x(0).add(&x(1).mul(&x(0)).unwrap()).unwrap();
        assert!(p.scale(&int(0)).is_zero());
        assert_eq!(p.scale(&int(1)), p);
        let two = Q::monomial(2, 3, Word::from([0, 1]), int(2));
        assert_eq!(
            two.scale(&frac(1, 2)),
            Q::monomial(2, 3, Word::from([0, 1]), int(1))
        );
    }

    #[test]
    fn cauchy_product_examples() {
        let p = x(0).mul(&x(1)).unwrap();
        assert_eq!(p, Q::monomial(2, 3, Word::from([0, 1]), int(1)));
        let one = Q::one(2, 3);
        let prod = one
            .add(&x(0))
            .unwrap()
            .mul(&one.add(&x(1)).unwrap())
            .unwrap();
        let expected = Q::from_terms(
            2,
            3,
            [
                (Word::empty(), int(1)),
                (Word::from([0]), int(1)),
                (Word::from([1]), int(1)),
                (Word::from([0, 1]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(prod, expected);
        let a = Q::generator(2, 1, 0);
        let b = Q::generator(2, 1, 1);
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        assert!(x(0).bracket(&x(0)).unwrap().is_zero());
        let b = x(0).bracket(&x(1)).unwrap();
        assert_eq!(b.coeff(&Word::from([0, 1])), int(1));
        assert_eq!(b.coeff(&Word::from([1, 0])), int(-1));
        assert_eq!(b.len(), 2);

        let y = |i| Q::generator(3, 3, i);
        let t1 = y(0).bracket(&y(1)).unwrap().bracket(&y(2)).unwrap();
        let t2 = y(1).bracket(&y(2)).unwrap().bracket(&y(0)).unwrap();
        let t3 = y(2).bracket(&y(0)).unwrap().bracket(&y(1)).unwrap();
        assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(Q::zero(2, 3).valuation(), Valuation::Infinite);
        assert_eq!(Q::one(2, 3).valuation(), Valuation::Finite(0));
        let p = x(0).add(&x(0).mul(&x(1)).unwrap()).unwrap();
        assert_eq!(p.valuation(), Valuation::Finite(1));
        assert!(Valuation::Finite(100) < Valuation::Infinite);
    }

    #[test]
    fn substitution_examples() {
        let q = x(1).add(&x(0).mul(&x(0)).unwrap()).unwrap();
        let single = Q::generator(1, 3, 0);
        assert_eq!(single.substitute(std::slice::from_ref(&q)).unwrap(), q);

        let w = Q::monomial(2, 3, Word::from([0, 1]), int(1));
        assert_eq!(
            w.substitute(&[x(1), x(0)]).unwrap(),
            Q::monomial(2, 3, Word::from([1, 0]), int(1))
        );
        assert!(matches!(
            w.substitute(&[x(1)]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
        let with_const = x(0).add(&Q::one(2, 3)).unwrap();
        assert!(matches!(
            w.substitute(&[x(1), with_const]),
            Err(Error::ValuationZeroArgument(1))
        ));
    }

    #[test]
    fn letters_are_validated() {
        assert!(matches!(
            Q::from_terms(2, 3, [(Word::from([2]), int(1))]),
            Err(Error::LetterOutOfRange {
                letter: 2,
                generators: 2
            })
        ));
    }
}
