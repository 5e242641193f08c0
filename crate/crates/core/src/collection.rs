//! Commutator collection: ordered decompositions of group-like elements into
//! rational powers of Lyndon commutators, and the formulas derived from it.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{exp, exp_lie, log, log_lie, ExpGroup, GroupElement, TruncatedGroup};
use crate::lie::LieElement;
use crate::lyndon::{bracketing_unchecked, is_lyndon, BracketedWord};
use crate::scalar::{binomial_poly, int, Rational, Scalar, UniPoly};
use crate::series::TruncatedSeries;
use crate::word::Word;

/// `∏ (b(w)⟦ξ⟧)^λ` over factors listed in strictly increasing graded-lex
/// order, where `b(w)` is the standard bracketing of the Lyndon word `w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MlsDecomposition<S: Scalar> {
    factors: Vec<(Word, S)>,
}

impl<S: Scalar> MlsDecomposition<S> {
    pub fn empty() -> Self {
        MlsDecomposition {
            factors: Vec::new(),
        }
    }

    /// Validates ordering, Lyndon-ness and nonzero exponents.
    pub fn new(factors: Vec<(Word, S)>) -> Result<Self> {
        for (w, c) in &factors {
            if !is_lyndon(w.letters())? {
                return Err(Error::NotLyndon(w.letters().to_vec()));
            }
            if c.is_zero() {
                return Err(Error::Parse(format!("zero exponent for word {w:?}")));
            }
        }
        if factors.windows(2).any(|p| p[0].0 >= p[1].0) {
            return Err(Error::Parse(
                "factor words must be strictly increasing".into(),
            ));
        }
        Ok(MlsDecomposition { factors })
    }

    pub fn factors(&self) -> &[(Word, S)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.factors.windows(2).all(|p| p[0].0 < p[1].0)
    }

    /// Exponent attached to `w`, zero when absent.
    pub fn exponent(&self, w: &Word) -> S {
        self.factors
            .iter()
            .find(|(u, _)| u == w)
            .map_or_else(S::zero, |(_, c)| c.clone())
    }

    /// Evaluates the decomposition in any exponential group, sending letter
    /// `i` to `images[i]`.
    pub fn evaluate<G: ExpGroup<Scalar = S>>(&self, group: &G, images: &[G::Elem]) -> G::Elem {
        let mut acc = group.identity();
        for (w, lambda) in &self.factors {
            let base = group.eval_commutator_word(&bracketing_unchecked(w.letters()), images);
            acc = group.mul(&acc, &group.pow(&base, lambda));
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for MlsDecomposition<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (w, c)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}^({c})", bracketing_unchecked(w.letters()))?;
        }
        Ok(())
    }
}

/// Lyndon commutators `b(w)⟦ξ⟧` at `ξ_i = exp(X_i)`, memoised per word.
struct CommutatorCache<S: Scalar> {
    group: TruncatedGroup<S>,
    xi: Vec<GroupElement<S>>,
    cache: HashMap<Word, GroupElement<S>>,
}

impl<S: Scalar> CommutatorCache<S> {
    fn new(generators: usize, truncation: usize) -> Self {
        let group = TruncatedGroup::new(generators, truncation);
        let xi = group.exp_generators();
        CommutatorCache {
            group,
            xi,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, w: &Word) -> GroupElement<S> {
        if let Some(g) = self.cache.get(w) {
            return g.clone();
        }
        let g = match bracketing_unchecked(w.letters()) {
            BracketedWord::Leaf(i) => self.xi[i].clone(),
            BracketedWord::Node(l, r) => {
                let a = self.get(&l.foliage());
                let b = self.get(&r.foliage());
                self.group.commutator(&a, &b)
            }
        };
        self.cache.insert(w.clone(), g.clone());
        g
    }
}

/// Peels Lyndon-commutator powers off `q` from the left, smallest word first.
pub fn collect<S: Scalar>(q: &GroupElement<S>) -> Result<MlsDecomposition<S>> {
    let (m, n) = q.shape();
    let mut cache = CommutatorCache::new(m, n);
    let mut rest = q.clone();
    let mut factors: Vec<(Word, S)> = Vec::new();
    loop {
        let p = log_lie(&rest)?;
        let Some((w, lambda)) = p
            .coords()
            .iter()
            .next()
            .map(|(w, c)| (w.clone(), c.clone()))
        else {
            break;
        };
        if let Some((prev, _)) = factors.last() {
            assert!(
                *prev < w,
                "collection must strictly increase the leading word"
            );
        }
        let base = cache.get(&w);
        rest = base.pow(&lambda.neg()).mul(&rest)?;
        factors.push((w, lambda));
    }
    Ok(MlsDecomposition { factors })
}

/// Left-to-right product of the decomposition's commutator powers in `1 + 𝔪`.
pub fn expand<S: Scalar>(
    d: &MlsDecomposition<S>,
    generators: usize,
    truncation: usize,
) -> Result<GroupElement<S>> {
    for (w, _) in &d.factors {
        if let Some(&letter) = w.letters().iter().find(|&&l| l >= generators) {
            return Err(Error::LetterOutOfRange { letter, generators });
        }
        if w.degree() > truncation {
            return Err(Error::DegreeExceedsTruncation {
                degree: w.degree(),
                truncation,
            });
        }
    }
    let mut cache = CommutatorCache::new(generators, truncation);
    let mut acc = GroupElement::identity(generators, truncation);
    for (w, lambda) in &d.factors {
        acc = acc.mul(&cache.get(w).pow(lambda))?;
    }
    Ok(acc)
}

/// Decomposition of `exp(X₀ + X₁)` at truncation `n`.
pub fn mls_sum_formula(n: usize) -> MlsDecomposition<Rational> {
    assert!(n >= 1);
    let sum = TruncatedSeries::generator(2, n, 0)
        .add(&TruncatedSeries::generator(2, n, 1))
        .expect("same shape");
    collect(&exp(&sum).expect("valuation 1")).expect("exp of a Lie element is group-like")
}

/// Decomposition of `exp([X₀, X₁])` at truncation `n ≥ 2`.
pub fn mls_bracket_formula(n: usize) -> Result<MlsDecomposition<Rational>> {
    if n < 2 {
        return Err(Error::TruncationTooSmall { got: n, need: 2 });
    }
    let x0 = LieElement::generator(2, n, 0);
    let x1 = LieElement::generator(2, n, 1);
    let b = x0.bracket(&x1)?;
    collect(&exp_lie(&b))
}

/// The Hall–Petresco words `τ_2, …, τ_c` in the truncated group over `n`
/// generators `ξ_i = exp(X_i)` at truncation `c`, obtained by specialising
/// the identity at the integers `2, …, c`.
pub fn hall_petresco_tau(n: usize, c: usize) -> Vec<GroupElement<Rational>> {
    assert!(n >= 2 && c >= 2);
    let group = TruncatedGroup::<Rational>::new(n, c);
    let xi = group.exp_generators();
    let prod = group.product(&xi);
    let mut taus: Vec<GroupElement<Rational>> = Vec::new();
    for m in 2..=c {
        let mi = int(m as i64);
        let lhs = group.product(&xi.iter().map(|x| x.pow(&mi)).collect::<Vec<_>>());
        let mut rhs = prod.pow(&mi);
        for (k, tau) in taus.iter().enumerate() {
            let i = k + 2;
            rhs = rhs
                .mul(&tau.pow(&binomial_poly(i).eval(&mi)))
                .expect("same shape");
        }
        let tau = rhs.inv().mul(&lhs).expect("same shape");
        taus.push(tau);
    }
    taus
}

/// Checks `ξ₀^λ⋯ξ_{n−1}^λ = (ξ₀⋯ξ_{n−1})^λ ∏_{i=2}^{c} τ_i^{binom(λ,i)}`
/// exactly over `ℚ[λ]` at truncation `c`.
pub fn verify_hall_petresco(n: usize, c: usize) -> bool {
    let taus = hall_petresco_tau(n, c);
    let group = TruncatedGroup::<UniPoly>::new(n, c);
    let lambda = UniPoly::var();
    let xi = group.exp_generators();
    let lhs = group.product(&xi.iter().map(|x| x.pow(&lambda)).collect::<Vec<_>>());
    let mut rhs = group.product(&xi).pow(&lambda);
    for (k, tau) in taus.iter().enumerate() {
        let tau = GroupElement::new(tau.series().map_coeffs(|r| UniPoly::constant(r.clone())))
            .expect("unit constant term");
        rhs = rhs
            .mul(&tau.pow(&binomial_poly(k + 2)))
            .expect("same shape");
    }
    lhs == rhs
}

/// Valuation of `log τ`, used to check the filtration layer of each τ.
pub fn log_valuation<S: Scalar>(g: &GroupElement<S>) -> crate::series::Valuation {
    log(g).valuation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use crate::series::Valuation;

    fn w(l: &[usize]) -> Word {
        Word::from(l)
    }

    #[test]
    fn collect_single_generator() {
        let grp = TruncatedGroup::<Rational>::new(2, 3);
        let d = collect(&grp.exp_generator(0)).unwrap();
        assert_eq!(d.factors(), &[(w(&[0]), int(1))]);
        assert!(collect(&grp.identity()).unwrap().is_empty());
    }

    #[test]
    fn sum_formula_leading_factors() {
        assert_eq!(
            mls_sum_formula(1).factors(),
            &[(w(&[0]), int(1)), (w(&[1]), int(1))]
        );
        let d2 = mls_sum_formula(2);
        assert_eq!(
            d2.factors(),
            &[
                (w(&[0]), int(1)),
                (w(&[1]), int(1)),
                (w(&[0, 1]), frac(-1, 2))
            ]
        );
        let d4 = mls_sum_formula(4);
        assert_eq!(&d4.factors()[..3], d2.factors());
        assert!(d4.is_strictly_increasing());
    }

    #[test]
    fn bracket_formula_examples() {
        assert_eq!(
            mls_bracket_formula(2).unwrap().factors(),
            &[(w(&[0, 1]), int(1))]
        );
        let d = mls_bracket_formula(4).unwrap();
        assert_eq!(d.factors()[0], (w(&[0, 1]), int(1)));
        assert!(matches!(
            mls_bracket_formula(1),
            Err(Error::TruncationTooSmall { got: 1, need: 2 })
        ));
    }

    #[test]
    fn expand_examples() {
        assert!(expand(&MlsDecomposition::<Rational>::empty(), 2, 3)
            .unwrap()
            .is_identity());
        let d = MlsDecomposition::new(vec![(w(&[0]), int(2))]).unwrap();
        let grp = TruncatedGroup::<Rational>::new(2, 3);
        let xi0 = grp.exp_generator(0);
        assert_eq!(expand(&d, 2, 3).unwrap(), xi0.mul(&xi0).unwrap());
        let lead = MlsDecomposition::new(vec![
            (w(&[0]), int(1)),
            (w(&[1]), int(1)),
            (w(&[0, 1]), frac(-1, 2)),
        ])
        .unwrap();
        let target = exp(&TruncatedSeries::generator(2, 2, 0)
            .add(&TruncatedSeries::generator(2, 2, 1))
            .unwrap())
        .unwrap();
        assert_eq!(expand(&lead, 2, 2).unwrap(), target);
        assert!(expand(&d, 1, 3).is_ok());
        assert!(matches!(
            expand(
                &MlsDecomposition::new(vec![(w(&[0, 1]), int(1))]).unwrap(),
                2,
                1
            ),
            Err(Error::DegreeExceedsTruncation { .. })
        ));
    }

    #[test]
    fn decomposition_validation() {
        assert!(MlsDecomposition::new(vec![(w(&[1]), int(1)), (w(&[0]), int(1))]).is_err());
        assert!(MlsDecomposition::new(vec![(w(&[1, 0]), int(1))]).is_err());
        assert!(MlsDecomposition::new(vec![(w(&[0]), int(0))]).is_err());
    }

    #[test]
    fn non_lie_log_is_rejected() {
        let s = TruncatedSeries::one(2, 3)
            .add(&TruncatedSeries::monomial(2, 3, w(&[0, 1]), int(1)))
            .unwrap();
        let g = GroupElement::new(s).unwrap();
        assert!(matches!(collect(&g), Err(Error::NotGroupLike(_))));
    }

    #[test]
    fn tau_two_is_the_basic_commutator() {
        let taus = hall_petresco_tau(2, 2);
        let grp = TruncatedGroup::<Rational>::new(2, 2);
        let c = grp.commutator(&grp.exp_generator(0), &grp.exp_generator(1));
        assert_eq!(taus[0], c);
        for (k, t) in hall_petresco_tau(2, 4).iter().enumerate() {
            assert!(log_valuation(t) >= Valuation::Finite(k + 2));
        }
    }

    #[test]
    fn hall_petresco_small() {
        assert!(verify_hall_petresco(2, 2));
        assert!(verify_hall_petresco(2, 3));
    }
}
