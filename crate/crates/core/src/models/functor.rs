//! Reconstructing the Lie structure of a model from its group `Gr(A)`.

use crate::collection::{mls_bracket_formula, mls_sum_formula, MlsDecomposition};
use crate::error::{Error, Result};
use crate::models::algebra::{BracketEntry, ModelVector, SCLieAlgebra};
use crate::models::linalg::Subspace;
use crate::scalar::Rational;

/// Addition and bracket of `A` recovered from group operations alone, via
/// the collected forms of `exp(X₀ + X₁)` and `exp([X₀, X₁])`.
pub struct GroupDerivedOps {
    sum: MlsDecomposition<Rational>,
    bracket: MlsDecomposition<Rational>,
}

impl GroupDerivedOps {
    pub fn new(a: &SCLieAlgebra) -> Self {
        let c = a.class();
        GroupDerivedOps {
            sum: mls_sum_formula(c.max(1)),
            bracket: mls_bracket_formula(c.max(2)).expect("truncation at least 2"),
        }
    }

    pub fn add(&self, a: &SCLieAlgebra, x: &ModelVector, y: &ModelVector) -> ModelVector {
        self.sum.evaluate(a, &[x.clone(), y.clone()])
    }

    pub fn bracket(&self, a: &SCLieAlgebra, x: &ModelVector, y: &ModelVector) -> ModelVector {
        self.bracket.evaluate(a, &[x.clone(), y.clone()])
    }
}

/// Rebuilds the algebra from `Gr(A)` and checks it equals `A`.
pub fn lie_from_group_ops(a: &SCLieAlgebra) -> Result<SCLieAlgebra> {
    let ops = GroupDerivedOps::new(a);
    let d = a.dim();
    let e = |i| ModelVector::unit(d, i);
    for i in 0..d {
        for j in 0..d {
            let s = ops.add(a, &e(i), &e(j));
            if s != e(i).add(&e(j)) {
                return Err(Error::ReconstructionMismatch(format!(
                    "e{} + e{} reconstructed as {s}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let b = ops.bracket(a, &e(i), &e(j));
            if !b.is_zero() {
                entries.push(BracketEntry {
                    i,
                    j,
                    coeffs: b.into_coords(),
                });
            }
        }
    }
    let rebuilt = SCLieAlgebra::new(d, Some(a.labels().to_vec()), &entries)
        .map_err(|err| Error::ReconstructionMismatch(err.to_string()))?;
    if rebuilt != *a {
        return Err(Error::ReconstructionMismatch(
            "structure constants differ".into(),
        ));
    }
    Ok(rebuilt)
}

/// Lower central series of the group `Gr(A)`: `G_{n+1}` is the smallest
/// normal exponential subgroup containing `⟦G, G_n⟧`, computed by closing a
/// span of commutators under products, conjugation and commutators with
/// the generators.
pub fn group_lcs(a: &SCLieAlgebra) -> Vec<Subspace> {
    let d = a.dim();
    let basis: Vec<ModelVector> = (0..d).map(|i| ModelVector::unit(d, i)).collect();
    let mut left = basis.clone();
    if d > 0 {
        left.push(basis.iter().fold(ModelVector::zero(d), |acc, v| acc.add(v)));
    }
    let mut series = vec![Subspace::full(d)];
    loop {
        let current = series.last().expect("nonempty");
        if current.dim() == 0 {
            break;
        }
        let mut right: Vec<ModelVector> = current
            .basis()
            .iter()
            .map(|v| ModelVector::new(v.clone()))
            .collect();
        right.push(right.iter().fold(ModelVector::zero(d), |acc, v| acc.add(v)));
        let seeds = left.iter().flat_map(|x| {
            right
                .iter()
                .map(move |y| a.gr_commutator(x, y).into_coords())
        });
        let mut v = Subspace::span(d, seeds);
        loop {
            let vecs: Vec<ModelVector> = v
                .basis()
                .iter()
                .map(|b| ModelVector::new(b.clone()))
                .collect();
            let mut more = Vec::new();
            for x in &vecs {
                for y in &vecs {
                    more.push(a.gr_mul(x, y).into_coords());
                }
                for g in &basis {
                    more.push(a.gr_mul(&a.gr_mul(g, x), &g.neg()).into_coords());
                    more.push(a.gr_commutator(g, x).into_coords());
                }
            }
            let next = v.join(more);
            if next.dim() == v.dim() {
                break;
            }
            v = next;
        }
        if v.dim() == current.dim() {
            // not nilpotent; cannot happen for a validated algebra
            break;
        }
        series.push(v);
    }
    series
}
