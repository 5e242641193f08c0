//! Elements of the truncated free Lie algebra in Lyndon coordinates.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lyndon::{bracket_expansion, bracketing_unchecked, is_lyndon};
use crate::scalar::{Rational, Scalar};
use crate::series::{TruncatedSeries, Valuation};
use crate::word::Word;

/// `Σ coords(w)·b(w)` where `b(w)` is the standard bracketing of the Lyndon
/// word `w` evaluated at the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement<S: Scalar> {
    generators: usize,
    truncation: usize,
    coords: BTreeMap<Word, S>,
}

impl<S: Scalar> LieElement<S> {
    pub fn zero(generators: usize, truncation: usize) -> Self {
        LieElement {
            generators,
            truncation,
            coords: BTreeMap::new(),
        }
    }

    pub fn generator(generators: usize, truncation: usize, i: usize) -> Self {
        assert!(i < generators && truncation >= 1);
        LieElement {
            generators,
            truncation,
            coords: BTreeMap::from([(Word::letter(i), S::one())]),
        }
    }

    /// Builds from Lyndon coordinates; every word must be Lyndon, within the
    /// alphabet and of degree `≤ truncation`.
    pub fn from_coords(
        generators: usize,
        truncation: usize,
        coords: impl IntoIterator<Item = (Word, S)>,
    ) -> Result<Self> {
        let mut out = Self::zero(generators, truncation);
        for (w, c) in coords {
            if !is_lyndon(w.letters())? {
                return Err(Error::NotLyndon(w.into_letters()));
            }
            if let Some(&letter) = w.letters().iter().find(|&&l| l >= generators) {
                return Err(Error::LetterOutOfRange { letter, generators });
            }
            if w.degree() > truncation {
                return Err(Error::DegreeExceedsTruncation {
                    degree: w.degree(),
                    truncation,
                });
            }
            out.add_coord(w, c);
        }
        Ok(out)
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

    pub fn coords(&self) -> &BTreeMap<Word, S> {
        &self.coords
    }

    pub fn coord(&self, w: &Word) -> S {
        self.coords.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Lowest degree carrying a nonzero coordinate.
    pub fn valuation(&self) -> Valuation {
        self.coords
            .keys()
            .next()
            .map_or(Valuation::Infinite, |w| Valuation::Finite(w.degree()))
    }

    fn add_coord(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        let sum = self.coord(&w).add(&c);
        if sum.is_zero() {
            self.coords.remove(&w);
        } else {
            self.coords.insert(w, sum);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
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
        for (w, c) in &other.coords {
            out.add_coord(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LieElement {
            coords: self
                .coords
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
            ..*self
        }
    }

    pub fn scale(&self, lambda: &S) -> Self {
        let coords = self
            .coords
            .iter()
            .filter_map(|(w, c)| {
                let p = lambda.mul(c);
                (!p.is_zero()).then(|| (w.clone(), p))
            })
            .collect();
        LieElement { coords, ..*self }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&S::from_rational(r.clone()))
    }

    /// Lie bracket, computed in the associative envelope.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let s = self.to_series().bracket_unchecked(&other.to_series());
        Ok(series_to_lie(&s).expect("bracket of Lie elements is a Lie element"))
    }

    /// Realisation inside the truncated associative algebra.
    pub fn to_series(&self) -> TruncatedSeries<S> {
        let mut out = TruncatedSeries::zero(self.generators, self.truncation);
        for (w, c) in &self.coords {
            for (u, k) in bracket_expansion(&bracketing_unchecked(w.letters())) {
                out.add_term(u, c.mul(&S::from_int(k)));
            }
        }
        out
    }

    /// Restriction to Lyndon words of degree exactly `d`.
    pub fn graded_component(&self, d: usize) -> Result<Self> {
        if d == 0 || d > self.truncation {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                truncation: self.truncation,
            });
        }
        Ok(LieElement {
            coords: self
                .coords
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            ..*self
        })
    }

    /// Drops every coordinate of degree above `truncation`.
    pub fn truncate(&self, truncation: usize) -> Self {
        LieElement {
            generators: self.generators,
            truncation,
            coords: self
                .coords
                .iter()
                .filter(|(w, _)| w.degree() <= truncation)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn widen(&self, generators: usize) -> Self {
        assert!(generators >= self.generators);
        LieElement {
            generators,
            ..self.clone()
        }
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieElement<T> {
        let mut out = LieElement::zero(self.generators, self.truncation);
        for (w, c) in &self.coords {
            out.add_coord(w.clone(), f(c));
        }
        out
    }

    /// `exp(ad_a)(b) = Σ ad_a^i(b) / i!`; the sum stops once a bracket
    /// vanishes, which happens below the truncation since each bracket
    /// raises the valuation.
    pub fn exp_ad(&self, b: &Self) -> Result<Self> {
        self.check_shape(b)?;
        let a = self.to_series();
        let mut term = b.to_series();
        let mut total = term.clone();
        let mut i = 0usize;
        loop {
            i += 1;
            term = a
                .bracket_unchecked(&term)
                .scale_rational(&Rational::new(1.into(), (i as i64).into()));
            if term.is_zero() {
                break;
            }
            total = total.add(&term)?;
        }
        Ok(series_to_lie(&total).expect("exp(ad a)(b) is a Lie element"))
    }
}

/// Recovers Lyndon coordinates by triangular elimination: the smallest word
/// of the residual must be Lyndon, and subtracting its bracket strictly
/// raises the smallest word.
pub fn series_to_lie<S: Scalar>(p: &TruncatedSeries<S>) -> Result<LieElement<S>> {
    if !p.constant_term().is_zero() {
        return Err(Error::ValuationZero);
    }
    let mut residual = p.clone();
    let mut out = LieElement::zero(p.generators(), p.truncation());
    while let Some((w, c)) = residual
        .terms()
        .iter()
        .next()
        .map(|(w, c)| (w.clone(), c.clone()))
    {
        if !is_lyndon(w.letters())? {
            return Err(Error::NotLieElement(w.into_letters()));
        }
        for (u, k) in bracket_expansion(&bracketing_unchecked(w.letters())) {
            residual.add_term(u, c.mul(&S::from_int(-k)));
        }
        debug_assert!(residual.leading_word().is_none_or(|l| *l > w));
        out.coords.insert(w, c);
    }
    Ok(out)
}

pub fn lie_to_series<S: Scalar>(l: &LieElement<S>) -> TruncatedSeries<S> {
    l.to_series()
}

impl<S: Scalar> fmt::Display for LieElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}", bracketing_unchecked(w.letters()))?;
        }
        Ok(())
    }
}
