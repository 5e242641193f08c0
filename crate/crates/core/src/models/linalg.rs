//! Exact linear algebra over ℚ: reduced row echelon forms and subspaces.

use crate::scalar::{Rational, Scalar};

pub type Vector = Vec<Rational>;

/// Reduces `rows` in place to reduced row echelon form, pivoting on the
/// first nonzero column. Returns the pivot columns; zero rows are dropped.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Subspace of ℚ^d stored as an RREF basis, so equal subspaces have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    dim_ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(d: usize) -> Self {
        Subspace {
            dim_ambient: d,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(d: usize) -> Self {
        Self::span(d, (0..d).map(|i| unit(d, i)))
    }

    pub fn span(d: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        for v in &rows {
            assert_eq!(v.len(), d, "vector length");
        }
        let pivots = rref(&mut rows);
        Subspace {
            dim_ambient: d,
            basis: rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Remainder of `v` after eliminating the pivot columns; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            if !r[col].is_zero() {
                let f = r[col].clone();
                for (x, b) in r.iter_mut().zip(row) {
                    *x -= &f * b;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn join(&self, vectors: impl IntoIterator<Item = Vector>) -> Self {
        Self::span(self.dim_ambient, self.basis.iter().cloned().chain(vectors))
    }
}

pub fn unit(d: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); d];
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(l: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| l * x).collect()
}

/// Solves `M x = b` for square invertible `M` (rows of `m`), or `None` if singular.
pub fn solve(m: &[Vector], b: &[Rational]) -> Option<Vector> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix given by rows.
pub fn invert(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(
            3,
            [vec![int(2), int(4), int(0)], vec![int(1), int(2), int(1)]],
        );
        let b = Subspace::span(
            3,
            [vec![int(0), int(0), int(3)], vec![int(1), int(2), int(0)]],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[int(3), int(6), int(-1)]));
        assert!(!a.contains(&[int(0), int(1), int(0)]));
    }

    #[test]
    fn solve_and_invert() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&m, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0], vec![frac(3, 5), frac(-1, 5)]);
        assert!(solve(
            &[vec![int(1), int(1)], vec![int(2), int(2)]],
            &[int(0), int(0)]
        )
        .is_none());
    }
}
