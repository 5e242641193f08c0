//! The exponential group `1 + 𝔪` of the truncated algebra: exp/log, power
//! maps, commutators and the Baker–Campbell–Hausdorff product.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{series_to_lie, LieElement};
use crate::lyndon::BracketedWord;
use crate::scalar::{factorial, Rational, Scalar};
use crate::series::{TruncatedSeries, Valuation};

/// A group with a scalar power map.
///
/// Implemented both by the truncated associative group and by `Gr(A)` for
/// nilpotent model algebras, so group words and collection formulas can be
/// evaluated uniformly.
pub trait ExpGroup {
    type Elem: Clone + PartialEq + fmt::Debug;
    type Scalar: Scalar;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, lambda: &Self::Scalar) -> Self::Elem;

    /// `⟦f, g⟧ = f⁻¹g⁻¹fg`.
    fn commutator(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        let fi = self.inv(f);
        let gi = self.inv(g);
        let left = self.mul(&fi, &gi);
        self.mul(&self.mul(&left, f), g)
    }

    /// Left-to-right product.
    fn product<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// Evaluates a non-associative word in the commutator monoid:
    /// leaves map to `images`, nodes to group commutators.
    fn eval_commutator_word(&self, word: &BracketedWord, images: &[Self::Elem]) -> Self::Elem {
        word.fold(&mut |i| images[i].clone(), &mut |a, b| {
            self.commutator(&a, &b)
        })
    }
}

/// Element of `1 + 𝔪`: a truncated series with constant term 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement<S: Scalar>(TruncatedSeries<S>);

impl<S: Scalar> GroupElement<S> {
    pub fn new(series: TruncatedSeries<S>) -> Result<Self> {
        if series.constant_term() != S::one() {
            return Err(Error::NotUnitConstant);
        }
        Ok(GroupElement(series))
    }

    pub fn identity(generators: usize, truncation: usize) -> Self {
        GroupElement(TruncatedSeries::one(generators, truncation))
    }

    pub fn series(&self) -> &TruncatedSeries<S> {
        &self.0
    }

    pub fn into_series(self) -> TruncatedSeries<S> {
        self.0
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_identity(&self) -> bool {
        self.0.len() == 1
    }

    /// `self − 1`, the augmentation-ideal part.
    fn nilpart(&self) -> TruncatedSeries<S> {
        let mut s = self.0.clone();
        s.add_term(crate::word::Word::empty(), S::one().neg());
        s
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(GroupElement(self.0.mul(&other.0)?))
    }

    /// Geometric series `1 − x + x² − …` for `self = 1 + x`.
    pub fn inv(&self) -> Self {
        let x = self.nilpart().neg();
        let (m, n) = self.shape();
        let mut total = TruncatedSeries::one(m, n);
        let mut term = TruncatedSeries::one(m, n);
        for _ in 0..n {
            term = term.mul_unchecked(&x);
            if term.is_zero() {
                break;
            }
            total = total.add(&term).expect("same shape");
        }
        GroupElement(total)
    }

    /// `exp(λ log g)`.
    pub fn pow(&self, lambda: &S) -> Self {
        exp_unchecked(&log(self).scale(lambda))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.0.check_shape(&other.0)?;
        Ok(TruncatedGroup::<S>::new(self.shape().0, self.shape().1).commutator(self, other))
    }
}

impl<S: Scalar> fmt::Display for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `Σ_{n≤N} εⁿ/n!` for `val(ε) ≥ 1`.
pub fn exp<S: Scalar>(eps: &TruncatedSeries<S>) -> Result<GroupElement<S>> {
    if eps.valuation() == Valuation::Finite(0) {
        return Err(Error::ValuationZero);
    }
    Ok(exp_unchecked(eps))
}

fn exp_unchecked<S: Scalar>(eps: &TruncatedSeries<S>) -> GroupElement<S> {
    let (m, n) = eps.shape();
    let mut total = TruncatedSeries::one(m, n);
    let mut power = TruncatedSeries::one(m, n);
    for k in 1..=n {
        power = power.mul_unchecked(eps);
        if power.is_zero() {
            break;
        }
        total = total
            .add(&power.scale_rational(&factorial(k).recip()))
            .expect("same shape");
    }
    GroupElement(total)
}

/// `Σ_{1≤n≤N} (−1)^{n+1}/n · (g − 1)ⁿ`.
pub fn log<S: Scalar>(g: &GroupElement<S>) -> TruncatedSeries<S> {
    let x = g.nilpart();
    let (m, n) = x.shape();
    let mut total = TruncatedSeries::zero(m, n);
    let mut power = TruncatedSeries::one(m, n);
    for k in 1..=n {
        power = power.mul_unchecked(&x);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        total = total
            .add(&power.scale_rational(&Rational::new(sign.into(), (k as i64).into())))
            .expect("same shape");
    }
    total
}

pub fn exp_lie<S: Scalar>(a: &LieElement<S>) -> GroupElement<S> {
    exp_unchecked(&a.to_series())
}

/// Logarithm read back in Lyndon coordinates; fails if `g` is not group-like.
pub fn log_lie<S: Scalar>(g: &GroupElement<S>) -> Result<LieElement<S>> {
    series_to_lie(&log(g)).map_err(|e| Error::NotGroupLike(e.to_string()))
}

/// Baker–Campbell–Hausdorff product `log(exp a · exp b)` in Lyndon coordinates.
pub fn bch<S: Scalar>(a: &LieElement<S>, b: &LieElement<S>) -> Result<LieElement<S>> {
    bch_many(&[a.clone(), b.clone()])
}

/// `log(exp a₁ ⋯ exp a_k)`; the empty product is zero.
pub fn bch_many<S: Scalar>(items: &[LieElement<S>]) -> Result<LieElement<S>> {
    let Some(first) = items.first() else {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: 0,
        });
    };
    let mut prod = exp_lie(first);
    for item in &items[1..] {
        if item.shape() != first.shape() {
            let (m, n) = first.shape();
            let (m2, n2) = item.shape();
            return Err(Error::ShapeMismatch(m, n, m2, n2));
        }
        prod = GroupElement(prod.0.mul_unchecked(&exp_lie(item).0));
    }
    Ok(series_to_lie(&log(&prod)).expect("BCH product must be a Lie element"))
}

/// BCH on raw series; both must have zero constant term.
pub fn bch_series<S: Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
) -> Result<LieElement<S>> {
    a.check_shape(b)?;
    let la = series_to_lie(a)?;
    let lb = series_to_lie(b)?;
    bch(&la, &lb)
}

/// `1 + 𝔪` for a fixed shape, as an [`ExpGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedGroup<S: Scalar> {
    pub generators: usize,
    pub truncation: usize,
    _scalar: std::marker::PhantomData<S>,
}

impl<S: Scalar> TruncatedGroup<S> {
    pub fn new(generators: usize, truncation: usize) -> Self {
        TruncatedGroup {
            generators,
            truncation,
            _scalar: std::marker::PhantomData,
        }
    }

    /// `ξ_i = exp(X_i)`.
    pub fn exp_generator(&self, i: usize) -> GroupElement<S> {
        exp_unchecked(&TruncatedSeries::generator(
            self.generators,
            self.truncation,
            i,
        ))
    }

    pub fn exp_generators(&self) -> Vec<GroupElement<S>> {
        (0..self.generators)
            .map(|i| self.exp_generator(i))
            .collect()
    }
}

impl<S: Scalar> ExpGroup for TruncatedGroup<S> {
    type Elem = GroupElement<S>;
    type Scalar = S;

    fn identity(&self) -> GroupElement<S> {
        GroupElement::identity(self.generators, self.truncation)
    }

    fn mul(&self, a: &GroupElement<S>, b: &GroupElement<S>) -> GroupElement<S> {
        a.mul(b).expect("elements of one truncated group")
    }

    fn inv(&self, a: &GroupElement<S>) -> GroupElement<S> {
        a.inv()
    }

    fn pow(&self, a: &GroupElement<S>, lambda: &S) -> GroupElement<S> {
        a.pow(lambda)
    }
}
