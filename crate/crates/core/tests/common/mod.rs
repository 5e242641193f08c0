//! Independent oracles. Nothing here calls into the engine's arithmetic:
//! series are plain word→coefficient maps, Lyndon words come from rotation
//! checks, and linear systems are solved by a local Gaussian elimination.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use liecorr::scalar::{int, Rational};
use liecorr::Scalar;

pub type Dense = BTreeMap<Vec<usize>, Rational>;

fn push(p: &mut Dense, w: Vec<usize>, c: Rational) {
    let entry = p.entry(w.clone()).or_insert_with(|| int(0));
    *entry += c;
    if entry.is_zero() {
        p.remove(&w);
    }
}

pub fn letter(i: usize) -> Dense {
    Dense::from([(vec![i], int(1))])
}

pub fn one() -> Dense {
    Dense::from([(vec![], int(1))])
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    for (w, c) in b {
        push(&mut out, w.clone(), c.clone());
    }
    out
}

pub fn scale(a: &Dense, r: &Rational) -> Dense {
    let mut out = Dense::new();
    for (w, c) in a {
        push(&mut out, w.clone(), c * r);
    }
    out
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    add(a, &scale(b, &int(-1)))
}

/// Product with words longer than `n` discarded.
pub fn mul(a: &Dense, b: &Dense, n: usize) -> Dense {
    let mut out = Dense::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= n {
                let mut w = u.clone();
                w.extend(v);
                push(&mut out, w, x * y);
            }
        }
    }
    out
}

pub fn bracket(a: &Dense, b: &Dense, n: usize) -> Dense {
    sub(&mul(a, b, n), &mul(b, a, n))
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(int(1), |acc, i| acc * int(i))
}

/// `Σ_{k ≤ n} x^k / k!` for `x` without constant term.
pub fn exp(x: &Dense, n: usize) -> Dense {
    let mut out = one();
    let mut power = one();
    for k in 1..=n {
        power = mul(&power, x, n);
        out = add(&out, &scale(&power, &(int(1) / factorial(k))));
    }
    out
}

/// `Σ_{k ≤ n} (−1)^{k+1} y^k / k` with `y = g − 1`.
pub fn log(g: &Dense, n: usize) -> Dense {
    let y = sub(g, &one());
    let mut out = Dense::new();
    let mut power = one();
    for k in 1..=n {
        power = mul(&power, &y, n);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = add(&out, &scale(&power, &(int(sign) / int(k as i64))));
    }
    out
}

pub fn homogeneous(p: &Dense, d: usize) -> Dense {
    p.iter()
        .filter(|(w, _)| w.len() == d)
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect()
}

pub fn valuation(p: &Dense) -> Option<usize> {
    p.keys().map(Vec::len).min()
}

// ---------------------------------------------------------------------------
// words

/// All words of length `d` over `m` letters, in lexicographic order.
pub fn all_words(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..m).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Strictly smaller than every proper rotation.
pub fn is_lyndon_by_rotation(w: &[usize]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|i| {
            let mut r = w[i..].to_vec();
            r.extend_from_slice(&w[..i]);
            w < &r[..]
        })
}

/// Generate-and-filter enumeration, sorted by degree then lexicographically.
pub fn brute_lyndon(m: usize, max_degree: usize) -> Vec<Vec<usize>> {
    (1..=max_degree)
        .flat_map(|d| all_words(m, d))
        .filter(|w| is_lyndon_by_rotation(w))
        .collect()
}

/// `[P(u), P(v)]` with `v` the longest proper Lyndon suffix.
pub fn lyndon_poly(w: &[usize]) -> Dense {
    if w.len() == 1 {
        return letter(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon_by_rotation(&w[i..]))
        .expect("a single letter is Lyndon");
    bracket(
        &lyndon_poly(&w[..split]),
        &lyndon_poly(&w[split..]),
        w.len(),
    )
}

/// Left-normed bracket `[…[x_{w1}, x_{w2}], …, x_{wd}]`.
pub fn left_normed(w: &[usize]) -> Dense {
    let mut acc = letter(w[0]);
    for &i in &w[1..] {
        acc = bracket(&acc, &letter(i), w.len());
    }
    acc
}

/// Dynkin–Specht–Wever: a homogeneous `P` of degree `d` is Lie iff `D(P) = d·P`.
pub fn dynkin_is_lie(p: &Dense, d: usize) -> bool {
    let mut dp = Dense::new();
    for (w, c) in p {
        dp = add(&dp, &scale(&left_normed(w), c));
    }
    dp == scale(p, &int(d as i64))
}

// ---------------------------------------------------------------------------
// linear algebra

/// Solves `Σ x_j cols[j] = rhs`; `None` if inconsistent or not unique.
pub fn solve_columns(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let n = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = int(1) / m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..=n {
                    let v = &m[pivot_row][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !m[r][n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][n].clone()).collect())
}

fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m = vectors.to_vec();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Greedy basis of the span.
fn basis_of(vectors: impl IntoIterator<Item = Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v);
        if rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// Lyndon coordinates of a Lie polynomial by solving, degree by degree,
/// against the bracket polynomials; `None` if `p` is not in their span.
pub fn project_to_lyndon(p: &Dense, m: usize, n: usize) -> Option<BTreeMap<Vec<usize>, Rational>> {
    if p.contains_key(&vec![]) {
        return None;
    }
    let mut out = BTreeMap::new();
    for d in 1..=n {
        let words = all_words(m, d);
        let index: BTreeMap<&Vec<usize>, usize> =
            words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let lyn: Vec<Vec<usize>> = words
            .iter()
            .filter(|w| is_lyndon_by_rotation(w))
            .cloned()
            .collect();
        let to_vec = |q: &Dense| {
            let mut v = vec![int(0); words.len()];
            for (w, c) in q {
                v[index[w]] = c.clone();
            }
            v
        };
        let cols: Vec<Vec<Rational>> = lyn.iter().map(|w| to_vec(&lyndon_poly(w))).collect();
        let rhs = to_vec(&homogeneous(p, d));
        let x = solve_columns(&cols, &rhs)?;
        for (w, c) in lyn.into_iter().zip(x) {
            if !c.is_zero() {
                out.insert(w, c);
            }
        }
    }
    Some(out)
}

/// `log(exp a · exp b)` in Lyndon coordinates, computed densely.
pub fn oracle_bch(a: &Dense, b: &Dense, m: usize, n: usize) -> BTreeMap<Vec<usize>, Rational> {
    let z = log(&mul(&exp(a, n), &exp(b, n), n), n);
    project_to_lyndon(&z, m, n).expect("BCH of Lie elements is Lie")
}

// ---------------------------------------------------------------------------
// nilpotent models

/// A model algebra given only by its bracket table, with the group law
/// built from the dense BCH series through the Dynkin map.
pub struct OracleModel {
    pub dim: usize,
    table: Vec<Vec<Vec<Rational>>>,
    pub layers: Vec<Vec<Vec<Rational>>>,
    bch_words: Vec<(Vec<usize>, Rational)>,
}

impl OracleModel {
    pub fn new(table: Vec<Vec<Vec<Rational>>>) -> Self {
        let dim = table.len();
        let mut model = OracleModel {
            dim,
            table,
            layers: Vec::new(),
            bch_words: Vec::new(),
        };
        // lower central series
        let mut current: Vec<Vec<Rational>> = (0..dim).map(|i| unit(dim, i)).collect();
        let mut series = vec![current.clone()];
        while !current.is_empty() {
            let next = basis_of(
                (0..dim)
                    .flat_map(|i| current.iter().map(move |v| (i, v.clone())))
                    .map(|(i, v)| model.bracket(&unit(dim, i), &v))
                    .collect::<Vec<_>>(),
            );
            assert!(next.len() < current.len(), "not nilpotent");
            series.push(next.clone());
            current = next;
        }
        let class = series.len() - 1;
        model.layers = series;
        let n = class.max(1);
        let z = log(&mul(&exp(&letter(0), n), &exp(&letter(1), n), n), n);
        model.bch_words = z
            .into_iter()
            .map(|(w, c)| {
                let d = int(w.len() as i64);
                (w, c / d)
            })
            .collect();
        model
    }

    pub fn class(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn bracket(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![int(0); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    /// `Σ (c_w/|w|)·[…[a_{w1}, a_{w2}], …]` over the BCH support.
    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let args = [a, b];
        let mut out = vec![int(0); self.dim];
        let mut prefixes: BTreeMap<Vec<usize>, Vec<Rational>> = BTreeMap::new();
        for (w, c) in &self.bch_words {
            let mut acc = args[w[0]].to_vec();
            for l in 2..=w.len() {
                acc = match prefixes.get(&w[..l]) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.bracket(&acc, args[w[l - 1]]);
                        prefixes.insert(w[..l].to_vec(), v.clone());
                        v
                    }
                };
            }
            for k in 0..self.dim {
                out[k] += &acc[k] * c;
            }
        }
        out
    }

    pub fn residual(&self, gs: &[Vec<Rational>], ls: &[Rational], f: &[Rational]) -> Vec<Rational> {
        let mut acc = vec![int(0); self.dim];
        for (g, l) in gs.iter().zip(ls) {
            acc = self.mul(&acc, g);
            let p: Vec<Rational> = f.iter().map(|x| x * l).collect();
            acc = self.mul(&acc, &p);
        }
        acc
    }

    /// Solves `g₁ f^{λ₁} ⋯ g_n f^{λ_n} = 1` one layer at a time: within a
    /// layer the residual is affine in the update modulo the next layer,
    /// so the layer part of the update comes from a linear system.
    pub fn solve(&self, gs: &[Vec<Rational>], ls: &[Rational]) -> Option<Vec<Rational>> {
        let mut f = vec![int(0); self.dim];
        for k in 0..self.class() {
            let deeper = &self.layers[k + 1];
            let mut complement = Vec::new();
            let mut span = deeper.clone();
            for v in &self.layers[k] {
                let mut trial = span.clone();
                trial.push(v.clone());
                if rank(&trial) == trial.len() {
                    span = trial;
                    complement.push(v.clone());
                }
            }
            let r0 = self.residual(gs, ls, &f);
            let mut cols: Vec<Vec<Rational>> = complement
                .iter()
                .map(|c| {
                    let moved: Vec<Rational> = f.iter().zip(c).map(|(x, y)| x + y).collect();
                    let r = self.residual(gs, ls, &moved);
                    r.iter().zip(&r0).map(|(x, y)| x - y).collect()
                })
                .collect();
            let r = complement.len();
            cols.extend(deeper.iter().map(|v| v.iter().map(|x| -x).collect()));
            let rhs: Vec<Rational> = r0.iter().map(|x| -x).collect();
            let t = solve_columns(&cols, &rhs)?;
            for (tj, c) in t[..r].iter().zip(&complement) {
                for i in 0..self.dim {
                    f[i] += tj * &c[i];
                }
            }
        }
        self.residual(gs, ls, &f)
            .iter()
            .all(Scalar::is_zero)
            .then_some(f)
    }
}

pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![int(0); d];
    v[i] = int(1);
    v
}
