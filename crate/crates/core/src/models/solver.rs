//! Non-singular equations `t(ā, y) = 0` in nilpotent models.
//!
//! The unknown is lifted one lower-central layer at a time: modulo
//! `A_{d+1}` the residual changes by `ℰ(t)·δ` when the unknown is multiplied
//! by `δ ∈ A_d`, so each layer is fixed by one division.

use crate::error::{Error, Result};
use crate::lie::LieElement;
use crate::models::algebra::{ModelVector, SCLieAlgebra};
use crate::scalar::{Rational, Scalar};
use crate::terms::{term_to_lie, MixedTerm};
use crate::word::Word;

/// Coefficient of the unknown (the last generator) as a single letter:
/// the image of `t` once brackets and the other variables are killed.
pub fn augmentation<S: Scalar>(t: &LieElement<S>) -> S {
    match t.generators().checked_sub(1) {
        Some(last) => t.coord(&Word::letter(last)),
        None => S::zero(),
    }
}

/// The unique `f` with `t(args, f) = 0`.
pub fn solve_equation(
    a: &SCLieAlgebra,
    t: &LieElement<Rational>,
    args: &[ModelVector],
) -> Result<ModelVector> {
    if t.generators() != args.len() + 1 {
        return Err(Error::ArityMismatch {
            expected: t.generators().saturating_sub(1),
            got: args.len(),
        });
    }
    for v in args {
        a.check_vector(v)?;
    }
    let e = augmentation(t);
    if e.is_zero() {
        return Err(Error::SingularEquation);
    }
    let e_inv = e.recip();
    let residual = |f: &ModelVector| -> Result<ModelVector> {
        let mut full = args.to_vec();
        full.push(f.clone());
        a.evaluate_lie(t, &full)
    };
    let mut f = ModelVector::zero(a.dim());
    for d in 1..=a.class() {
        let r = residual(&f)?;
        let delta = a.layer_component(&r, d).scale(&-e_inv.clone());
        f = a.gr_mul(&f, &delta);
    }
    let r = residual(&f)?;
    if !r.is_zero() {
        return Err(Error::NonConvergence(format!("residual {r}")));
    }
    Ok(f)
}

/// The mixed term `x₀ * λ₁y * x₁ * λ₂y * ⋯` whose zero set is the group
/// equation `g₁ f^{λ₁} ⋯ g_n f^{λ_n} = 1`; the unknown is variable `n`.
pub fn group_equation_term(lambdas: &[Rational]) -> MixedTerm {
    let n = lambdas.len();
    MixedTerm::product(lambdas.iter().enumerate().flat_map(|(i, l)| {
        [
            MixedTerm::var(i),
            MixedTerm::scale(l.clone(), MixedTerm::var(n)),
        ]
    }))
}

/// Left-to-right value of `g₁ f^{λ₁} ⋯ g_n f^{λ_n}` in `Gr(A)`.
pub fn group_equation_residual(
    a: &SCLieAlgebra,
    gs: &[ModelVector],
    lambdas: &[Rational],
    f: &ModelVector,
) -> ModelVector {
    gs.iter()
        .zip(lambdas)
        .fold(ModelVector::zero(a.dim()), |acc, (g, l)| {
            a.gr_mul(&a.gr_mul(&acc, g), &a.gr_power(f, l))
        })
}

/// Solves `g₁ f^{λ₁} ⋯ g_n f^{λ_n} = 1` in `Gr(A)`; requires `Σλ ≠ 0`.
pub fn solve_group_equation(
    a: &SCLieAlgebra,
    gs: &[ModelVector],
    lambdas: &[Rational],
) -> Result<ModelVector> {
    if gs.len() != lambdas.len() {
        return Err(Error::ArityMismatch {
            expected: gs.len(),
            got: lambdas.len(),
        });
    }
    if gs.is_empty()
        || lambdas
            .iter()
            .fold(Rational::zero(), |s, l| s + l)
            .is_zero()
    {
        return Err(Error::SingularEquation);
    }
    let term = group_equation_term(lambdas);
    let t = term_to_lie(&term, gs.len() + 1, a.class().max(1))?;
    let f = solve_equation(a, &t, gs)?;
    let r = group_equation_residual(a, gs, lambdas, &f);
    if !r.is_zero() {
        return Err(Error::NonConvergence(format!("group residual {r}")));
    }
    Ok(f)
}
