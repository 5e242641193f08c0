//! Seeded generators for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{exp_lie, GroupElement};
use crate::lie::LieElement;
use crate::lyndon::enumerate_lyndon;
use crate::models::ModelVector;
use crate::scalar::{frac, Rational};
use crate::series::TruncatedSeries;
use crate::word::{words_of_degree, Word};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Deterministic source of rationals, series, Lie and group elements.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    /// Numerators and denominators are bounded by 20 in absolute value.
    pub fn new(seed: u64) -> Self {
        Sampler::with_bound(seed, 20)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1);
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.random_range(-self.bound..=self.bound);
        let den = self.rng.random_range(1..=self.bound);
        frac(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != frac(0, 1) {
                return r;
            }
        }
    }

    /// Series with terms of degrees `min_degree..=truncation`, each word
    /// present with probability `density`.
    pub fn series(
        &mut self,
        generators: usize,
        truncation: usize,
        min_degree: usize,
        density: f64,
    ) -> TruncatedSeries<Rational> {
        let mut terms = Vec::new();
        for d in min_degree..=truncation {
            for w in words_of_degree(generators, d) {
                if self.chance(density) {
                    terms.push((w, self.nonzero_rational()));
                }
            }
        }
        TruncatedSeries::from_terms(generators, truncation, terms).expect("letters in range")
    }

    /// Homogeneous series of degree `d` with every coefficient random.
    pub fn homogeneous_series(
        &mut self,
        generators: usize,
        truncation: usize,
        d: usize,
    ) -> TruncatedSeries<Rational> {
        let terms: Vec<(Word, Rational)> = words_of_degree(generators, d)
            .into_iter()
            .map(|w| (w, self.rational()))
            .collect();
        TruncatedSeries::from_terms(generators, truncation, terms).expect("letters in range")
    }

    /// Lie element with each Lyndon coordinate present with probability `density`.
    pub fn lie(
        &mut self,
        generators: usize,
        truncation: usize,
        density: f64,
    ) -> LieElement<Rational> {
        let coords: Vec<(Word, Rational)> = enumerate_lyndon(generators, truncation)
            .into_iter()
            .filter_map(|w| self.chance(density).then(|| (w, self.nonzero_rational())))
            .collect();
        LieElement::from_coords(generators, truncation, coords).expect("Lyndon words in range")
    }

    /// Homogeneous Lie element of degree `d`.
    pub fn homogeneous_lie(
        &mut self,
        generators: usize,
        truncation: usize,
        d: usize,
    ) -> LieElement<Rational> {
        let coords: Vec<(Word, Rational)> = enumerate_lyndon(generators, d)
            .into_iter()
            .filter(|w| w.degree() == d)
            .map(|w| (w, self.rational()))
            .collect();
        LieElement::from_coords(generators, truncation, coords).expect("Lyndon words in range")
    }

    /// `exp` of a random Lie element.
    pub fn group_like(
        &mut self,
        generators: usize,
        truncation: usize,
        density: f64,
    ) -> GroupElement<Rational> {
        exp_lie(&self.lie(generators, truncation, density))
    }

    pub fn vector(&mut self, d: usize) -> ModelVector {
        ModelVector::new((0..d).map(|_| self.rational()).collect())
    }

    pub fn nonzero_vector(&mut self, d: usize) -> ModelVector {
        assert!(d > 0);
        loop {
            let v = self.vector(d);
            if !v.is_zero() {
                return v;
            }
        }
    }
}
