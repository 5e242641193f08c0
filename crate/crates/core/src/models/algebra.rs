//! Nilpotent Lie algebras over ℚ given by structure constants, and the
//! group `Gr(A)` carried by the same vector space.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{bch, ExpGroup};
use crate::lie::{series_to_lie, LieElement};
use crate::lyndon::{bracketing_unchecked, enumerate_lyndon};
use crate::models::linalg::{add_vec, invert, is_zero_vec, scale_vec, unit, Subspace, Vector};
use crate::scalar::{Rational, Scalar};
use crate::series::TruncatedSeries;

/// Coordinates relative to an algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelVector(Vector);

impl ModelVector {
    pub fn new(coords: Vector) -> Self {
        ModelVector(coords)
    }

    pub fn zero(d: usize) -> Self {
        ModelVector(vec![Rational::zero(); d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        ModelVector(unit(d, i))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vector {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }

    pub fn add(&self, other: &ModelVector) -> ModelVector {
        ModelVector(add_vec(&self.0, &other.0))
    }

    pub fn sub(&self, other: &ModelVector) -> ModelVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModelVector {
        ModelVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, l: &Rational) -> ModelVector {
        ModelVector(scale_vec(l, &self.0))
    }
}

impl fmt::Display for ModelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A bracket entry `[e_i, e_j] = Σ coeffs[k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vector,
}

/// Finite-dimensional nilpotent Lie algebra over ℚ.
///
/// Validated on construction: antisymmetry, Jacobi, nilpotency. The lower
/// central series, an adapted basis for its layers, and the BCH product at
/// the nilpotency class are computed eagerly.
#[derive(Clone, Debug)]
pub struct SCLieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<Vector>>,
    lcs: Vec<Subspace>,
    class: usize,
    adapted: Vec<Vector>,
    layer_of: Vec<usize>,
    adapted_inv: Vec<Vector>,
    bch: LieElement<Rational>,
}

impl PartialEq for SCLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

impl SCLieAlgebra {
    /// Validates the constant table; omitted pairs are zero.
    pub fn new(dim: usize, labels: Option<Vec<String>>, brackets: &[BracketEntry]) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(Error::DimensionMismatch {
                dim,
                got: labels.len(),
            });
        }
        let mut table: Vec<Vec<Option<Vector>>> = vec![vec![None; dim]; dim];
        for b in brackets {
            if b.i >= dim || b.j >= dim {
                return Err(Error::DimensionMismatch {
                    dim,
                    got: b.i.max(b.j) + 1,
                });
            }
            if b.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    dim,
                    got: b.coeffs.len(),
                });
            }
            if b.i == b.j {
                if !is_zero_vec(&b.coeffs) {
                    return Err(Error::NotAntisymmetric(b.i, b.j));
                }
                continue;
            }
            let neg = scale_vec(&Rational::from_int(-1), &b.coeffs);
            for (slot, v) in [((b.i, b.j), b.coeffs.clone()), ((b.j, b.i), neg)] {
                match &table[slot.0][slot.1] {
                    Some(old) if *old != v => return Err(Error::NotAntisymmetric(b.i, b.j)),
                    _ => table[slot.0][slot.1] = Some(v),
                }
            }
        }
        let table: Vec<Vec<Vector>> = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.unwrap_or_else(|| vec![Rational::zero(); dim]))
                    .collect()
            })
            .collect();
        Self::from_table(dim, labels, table)
    }

    fn from_table(dim: usize, labels: Vec<String>, table: Vec<Vec<Vector>>) -> Result<Self> {
        let mut alg = SCLieAlgebra {
            dim,
            labels,
            table,
            lcs: Vec::new(),
            class: 0,
            adapted: Vec::new(),
            layer_of: Vec::new(),
            adapted_inv: Vec::new(),
            bch: LieElement::zero(2, 1),
        };
        alg.check_jacobi()?;
        alg.lcs = alg.compute_lcs()?;
        alg.class = alg.lcs.len() - 1;
        alg.build_adapted_basis();
        let n = alg.class.max(1);
        alg.bch = bch(
            &LieElement::generator(2, n, 0),
            &LieElement::generator(2, n, 1),
        )?;
        Ok(alg)
    }

    /// Heisenberg algebra: `[e1, e2] = e3`.
    pub fn heisenberg() -> Self {
        let e3 = unit(3, 2);
        Self::new(
            3,
            None,
            &[BracketEntry {
                i: 0,
                j: 1,
                coeffs: e3,
            }],
        )
        .expect("valid")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, None, &[]).expect("valid")
    }

    /// The free nilpotent Lie algebra of class `c` on `m` generators, with the
    /// Lyndon basis of degree `≤ c`.
    pub fn free_nilpotent(m: usize, c: usize) -> Self {
        let words = enumerate_lyndon(m, c);
        let dim = words.len();
        let index = |w: &crate::word::Word| words.iter().position(|u| u == w).expect("basis word");
        let basis: Vec<LieElement<Rational>> = words
            .iter()
            .map(|w| LieElement::from_coords(m, c, [(w.clone(), Rational::one())]).expect("Lyndon"))
            .collect();
        let mut table = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let s: TruncatedSeries<Rational> = basis[i]
                    .to_series()
                    .bracket(&basis[j].to_series())
                    .expect("same shape");
                let l = series_to_lie(&s).expect("Lie");
                for (w, x) in l.coords() {
                    table[i][j][index(w)] = x.clone();
                }
            }
        }
        let labels = words
            .iter()
            .map(|w| bracketing_unchecked(w.letters()).to_string())
            .collect();
        Self::from_table(dim, labels, table).expect("free nilpotent algebra is valid")
    }

    fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (ei, ej, ek) = (
                        ModelVector::unit(self.dim, i),
                        ModelVector::unit(self.dim, j),
                        ModelVector::unit(self.dim, k),
                    );
                    let s = self
                        .bracket(&ei, &self.bracket(&ej, &ek))
                        .add(&self.bracket(&ej, &self.bracket(&ek, &ei)))
                        .add(&self.bracket(&ek, &self.bracket(&ei, &ej)));
                    if !s.is_zero() {
                        return Err(Error::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_lcs(&self) -> Result<Vec<Subspace>> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().expect("nonempty");
            if last.dim() == 0 {
                return Ok(series);
            }
            let next = Subspace::span(
                self.dim,
                (0..self.dim).flat_map(|i| {
                    last.basis().iter().map(move |b| {
                        self.bracket(
                            &ModelVector::unit(self.dim, i),
                            &ModelVector::new(b.clone()),
                        )
                        .into_coords()
                    })
                }),
            );
            if next.dim() == last.dim() {
                return Err(Error::NotNilpotent(next.dim()));
            }
            series.push(next);
        }
    }

    /// Basis ordered from the deepest layer outwards; vector `k` lies in
    /// `A_{layer_of[k]}` but not in `A_{layer_of[k]+1}`.
    fn build_adapted_basis(&mut self) {
        let mut adapted: Vec<Vector> = Vec::new();
        let mut layer_of = Vec::new();
        for d in (1..=self.class).rev() {
            let mut current = Subspace::span(self.dim, adapted.iter().cloned());
            for v in self.lcs[d - 1].basis() {
                if !current.contains(v) {
                    adapted.push(v.clone());
                    layer_of.push(d);
                    current = current.join([v.clone()]);
                }
            }
        }
        debug_assert_eq!(adapted.len(), self.dim);
        // rows are basis vectors; coordinates of r solve c · adapted = r
        let transposed: Vec<Vector> = (0..self.dim)
            .map(|col| adapted.iter().map(|row| row[col].clone()).collect())
            .collect();
        self.adapted_inv = invert(&transposed).unwrap_or_default();
        self.adapted = adapted;
        self.layer_of = layer_of;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nilpotency class `c`: `A_c ≠ 0 = A_{c+1}` (0 for the zero algebra).
    pub fn class(&self) -> usize {
        self.class
    }

    /// `[A_1, A_2, …, A_{c+1} = 0]`.
    pub fn lower_central_series(&self) -> &[Subspace] {
        &self.lcs
    }

    /// Nonzero structure constants `[e_i, e_j]` for `i < j`.
    pub fn structure_constants(&self) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !is_zero_vec(&self.table[i][j]) {
                    out.push(BracketEntry {
                        i,
                        j,
                        coeffs: self.table[i][j].clone(),
                    });
                }
            }
        }
        out
    }

    pub fn bracket_table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    pub fn check_vector(&self, v: &ModelVector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                dim: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, a: &ModelVector, b: &ModelVector) -> ModelVector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in a.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if y.is_zero() || i == j {
                    continue;
                }
                let f = x * y;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        ModelVector(out)
    }

    /// Evaluates a Lie element at `args`, bracket for bracket. Terms of
    /// degree above the class vanish and are skipped.
    pub fn evaluate_lie(
        &self,
        l: &LieElement<Rational>,
        args: &[ModelVector],
    ) -> Result<ModelVector> {
        if args.len() != l.generators() {
            return Err(Error::ArityMismatch {
                expected: l.generators(),
                got: args.len(),
            });
        }
        for a in args {
            self.check_vector(a)?;
        }
        if l.truncation() < self.class {
            return Err(Error::TruncationTooSmall {
                got: l.truncation(),
                need: self.class,
            });
        }
        Ok(self.evaluate_unchecked(l, args))
    }

    fn evaluate_unchecked(&self, l: &LieElement<Rational>, args: &[ModelVector]) -> ModelVector {
        let mut total = ModelVector::zero(self.dim);
        for (w, c) in l.coords() {
            if w.degree() > self.class {
                continue;
            }
            let v = bracketing_unchecked(w.letters())
                .fold(&mut |i| args[i].clone(), &mut |a, b| self.bracket(&a, &b));
            total = total.add(&v.scale(c));
        }
        total
    }

    /// Evaluates a series that must be a Lie element.
    pub fn evaluate_series(
        &self,
        s: &TruncatedSeries<Rational>,
        args: &[ModelVector],
    ) -> Result<ModelVector> {
        self.evaluate_lie(&series_to_lie(s)?, args)
    }

    /// Group product of `Gr(A)`: the BCH series evaluated at `(a, b)`.
    pub fn gr_mul(&self, a: &ModelVector, b: &ModelVector) -> ModelVector {
        self.evaluate_unchecked(&self.bch, &[a.clone(), b.clone()])
    }

    pub fn gr_power(&self, a: &ModelVector, lambda: &Rational) -> ModelVector {
        a.scale(lambda)
    }

    pub fn gr_inverse(&self, a: &ModelVector) -> ModelVector {
        a.neg()
    }

    /// `(−a) * (−b) * a * b`.
    pub fn gr_commutator(&self, a: &ModelVector, b: &ModelVector) -> ModelVector {
        let left = self.gr_mul(&a.neg(), &b.neg());
        self.gr_mul(&self.gr_mul(&left, a), b)
    }

    /// Basis adapted to the lower central series, deepest layer first.
    pub fn adapted_basis(&self) -> &[Vector] {
        &self.adapted
    }

    /// Layer index `d` of each adapted basis vector.
    pub fn adapted_layers(&self) -> &[usize] {
        &self.layer_of
    }

    /// Coordinates of `v` in the adapted basis.
    pub fn adapted_coords(&self, v: &ModelVector) -> Vector {
        (0..self.dim)
            .map(|k| {
                self.adapted_inv[k]
                    .iter()
                    .zip(v.coords())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Component of `v` along the adapted basis vectors of layer `d`.
    pub fn layer_component(&self, v: &ModelVector, d: usize) -> ModelVector {
        let c = self.adapted_coords(v);
        let mut out = ModelVector::zero(self.dim);
        for (k, coeff) in c.iter().enumerate() {
            if self.layer_of[k] == d && !coeff.is_zero() {
                out = out.add(&ModelVector(scale_vec(coeff, &self.adapted[k])));
            }
        }
        out
    }
}

impl ExpGroup for SCLieAlgebra {
    type Elem = ModelVector;
    type Scalar = Rational;

    fn identity(&self) -> ModelVector {
        ModelVector::zero(self.dim)
    }
    fn mul(&self, a: &ModelVector, b: &ModelVector) -> ModelVector {
        self.gr_mul(a, b)
    }
    fn inv(&self, a: &ModelVector) -> ModelVector {
        self.gr_inverse(a)
    }
    fn pow(&self, a: &ModelVector, lambda: &Rational) -> ModelVector {
        self.gr_power(a, lambda)
    }
    fn commutator(&self, a: &ModelVector, b: &ModelVector) -> ModelVector {
        self.gr_commutator(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn e(d: usize, i: usize) -> ModelVector {
        ModelVector::unit(d, i)
    }

    #[test]
    fn heisenberg_basics() {
        let h = SCLieAlgebra::heisenberg();
        assert_eq!(h.class(), 2);
        let dims: Vec<usize> = h.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        assert_eq!(h.lower_central_series()[1], Subspace::span(3, [unit(3, 2)]));
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)), e(3, 2));
    }

    #[test]
    fn abelian_and_non_nilpotent() {
        let a = SCLieAlgebra::abelian(4);
        assert_eq!(a.class(), 1);
        assert_eq!(a.lower_central_series().len(), 2);
        let bad = SCLieAlgebra::new(
            2,
            None,
            &[BracketEntry {
                i: 0,
                j: 1,
                coeffs: unit(2, 0),
            }],
        );
        assert_eq!(bad.unwrap_err(), Error::NotNilpotent(1));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e1,e2]=e3, [e2,e3]=e2
        let r = SCLieAlgebra::new(
            3,
            None,
            &[
                BracketEntry {
                    i: 0,
                    j: 1,
                    coeffs: unit(3, 2),
                },
                BracketEntry {
                    i: 1,
                    j: 2,
                    coeffs: unit(3, 1),
                },
            ],
        );
        assert!(matches!(r, Err(Error::JacobiViolation(0, 1, 2))));
    }

    #[test]
    fn antisymmetry_enforced() {
        let r = SCLieAlgebra::new(
            2,
            None,
            &[
                BracketEntry {
                    i: 0,
                    j: 1,
                    coeffs: unit(2, 0),
                },
                BracketEntry {
                    i: 1,
                    j: 0,
                    coeffs: unit(2, 0),
                },
            ],
        );
        assert!(matches!(r, Err(Error::NotAntisymmetric(1, 0))));
    }

    #[test]
    fn free_class_three_dims() {
        let f = SCLieAlgebra::free_nilpotent(2, 3);
        assert_eq!(f.dim(), 5);
        assert_eq!(f.class(), 3);
        let dims: Vec<usize> = f.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![5, 3, 2, 0]);
    }

    #[test]
    fn evaluation_examples() {
        let h = SCLieAlgebra::heisenberg();
        let x0 = LieElement::<Rational>::generator(1, 2, 0);
        let v = ModelVector::new(vec![int(1), int(2), int(3)]);
        assert_eq!(h.evaluate_lie(&x0, std::slice::from_ref(&v)).unwrap(), v);
        let g0 = LieElement::<Rational>::generator(2, 2, 0);
        let g1 = LieElement::<Rational>::generator(2, 2, 1);
        let br = g0.bracket(&g1).unwrap();
        assert_eq!(h.evaluate_lie(&br, &[e(3, 0), e(3, 1)]).unwrap(), e(3, 2));
        let prod = h.gr_mul(&e(3, 0), &e(3, 1));
        assert_eq!(prod, ModelVector::new(vec![int(1), int(1), frac(1, 2)]));
        assert!(matches!(
            h.evaluate_lie(&LieElement::generator(2, 1, 0), &[e(3, 0), e(3, 1)]),
            Err(Error::TruncationTooSmall { got: 1, need: 2 })
        ));
        assert!(matches!(
            h.evaluate_lie(&br, &[e(3, 0)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn group_operations() {
        let h = SCLieAlgebra::heisenberg();
        let a = ModelVector::new(vec![int(2), frac(1, 3), int(-1)]);
        assert_eq!(h.gr_mul(&a, &ModelVector::zero(3)), a);
        assert!(h.gr_mul(&a, &a.neg()).is_zero());
        assert_eq!(h.gr_power(&a, &int(1)), a);
        assert!(h.gr_power(&a, &int(0)).is_zero());
        assert_eq!(h.gr_commutator(&e(3, 0), &e(3, 1)), e(3, 2));
        assert!(h.gr_commutator(&a, &a).is_zero());
        assert!(h.gr_commutator(&a, &a.scale(&int(5))).is_zero());
    }

    #[test]
    fn layer_components_partition() {
        let f = SCLieAlgebra::free_nilpotent(2, 3);
        let v = ModelVector::new((1..=5).map(|k| frac(k, 7)).collect());
        let mut sum = ModelVector::zero(5);
        for d in 1..=3 {
            sum = sum.add(&f.layer_component(&v, d));
        }
        assert_eq!(sum, v);
    }
}
