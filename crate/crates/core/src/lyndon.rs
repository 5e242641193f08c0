//! Lyndon words and their standard bracketings.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::word::Word;

/// True iff `w` is strictly smaller than each of its proper right factors.
/// A proper prefix counts as smaller than the longer word.
pub fn is_lyndon(w: &[usize]) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok((1..w.len()).all(|k| w < &w[k..]))
}

/// All Lyndon words over `m` letters with degree `≤ max_degree`, sorted in
/// graded-lex order. Uses Duval's successor generation.
pub fn enumerate_lyndon(m: usize, max_degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 || max_degree == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(Word::new(w.clone()));
        // extend periodically to full length, then strip maximal letters
        let k = w.len();
        while w.len() < max_degree {
            let c = w[w.len() - k];
            w.push(c);
        }
        while w.last() == Some(&(m - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort();
    out
}

/// Number of Lyndon words of each degree `1..=max_degree`.
pub fn lyndon_counts(m: usize, max_degree: usize) -> Vec<usize> {
    let mut counts = vec![0; max_degree];
    for w in enumerate_lyndon(m, max_degree) {
        counts[w.degree() - 1] += 1;
    }
    counts
}

/// Splits a Lyndon word `w = uv` with `v` the longest proper Lyndon right factor.
pub fn standard_factorization(w: &[usize]) -> Result<(Word, Word)> {
    if !is_lyndon(w)? {
        return Err(Error::NotLyndon(w.to_vec()));
    }
    if w.len() == 1 {
        return Err(Error::SingleLetter);
    }
    let split = (1..w.len())
        .find(|&k| is_lyndon(&w[k..]).unwrap_or(false))
        .expect("the last letter is always Lyndon");
    Ok((Word::from(&w[..split]), Word::from(&w[split..])))
}

/// Non-associative word: a binary tree with letters at the leaves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BracketedWord {
    Leaf(usize),
    Node(Box<BracketedWord>, Box<BracketedWord>),
}

impl BracketedWord {
    pub fn node(left: BracketedWord, right: BracketedWord) -> Self {
        BracketedWord::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn rank(&self) -> usize {
        match self {
            BracketedWord::Leaf(_) => 1,
            BracketedWord::Node(l, r) => l.rank() + r.rank(),
        }
    }

    /// Leaf sequence read left to right.
    pub fn foliage(&self) -> Word {
        fn walk(b: &BracketedWord, out: &mut Vec<usize>) {
            match b {
                BracketedWord::Leaf(i) => out.push(*i),
                BracketedWord::Node(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        Word::new(out)
    }

    /// Structural fold: leaves go through `leaf`, nodes through `node`.
    pub fn fold<T>(
        &self,
        leaf: &mut impl FnMut(usize) -> T,
        node: &mut impl FnMut(T, T) -> T,
    ) -> T {
        match self {
            BracketedWord::Leaf(i) => leaf(*i),
            BracketedWord::Node(l, r) => {
                let a = l.fold(leaf, node);
                let b = r.fold(leaf, node);
                node(a, b)
            }
        }
    }

    /// Every binary tree with leaves in `0..m` and rank `1..=max_rank`.
    pub fn all_up_to_rank(m: usize, max_rank: usize) -> Vec<BracketedWord> {
        let mut by_rank: Vec<Vec<BracketedWord>> = vec![Vec::new(); max_rank + 1];
        if max_rank == 0 {
            return Vec::new();
        }
        by_rank[1] = (0..m).map(BracketedWord::Leaf).collect();
        for r in 2..=max_rank {
            let mut level = Vec::new();
            for left_rank in 1..r {
                for l in &by_rank[left_rank] {
                    for rt in &by_rank[r - left_rank] {
                        level.push(BracketedWord::node(l.clone(), rt.clone()));
                    }
                }
            }
            by_rank[r] = level;
        }
        by_rank.into_iter().flatten().collect()
    }
}

impl fmt::Display for BracketedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketedWord::Leaf(i) => write!(f, "{i}"),
            BracketedWord::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Standard bracketing along iterated standard factorizations.
pub fn bracketing(w: &[usize]) -> Result<BracketedWord> {
    if !is_lyndon(w)? {
        return Err(Error::NotLyndon(w.to_vec()));
    }
    Ok(bracketing_unchecked(w))
}

pub(crate) fn bracketing_unchecked(w: &[usize]) -> BracketedWord {
    if w.len() == 1 {
        return BracketedWord::Leaf(w[0]);
    }
    let split = (1..w.len())
        .find(|&k| (1..w.len() - k).all(|j| w[k..] < w[k + j..]))
        .expect("the last letter is always Lyndon");
    BracketedWord::node(
        bracketing_unchecked(&w[..split]),
        bracketing_unchecked(&w[split..]),
    )
}

/// Expands the Lie bracket evaluation of a bracketed word at the generators
/// into integer-coefficient associative words.
pub fn bracket_expansion(b: &BracketedWord) -> BTreeMap<Word, i64> {
    b.fold(
        &mut |i| BTreeMap::from([(Word::letter(i), 1i64)]),
        &mut |l, r| {
            let mut out: BTreeMap<Word, i64> = BTreeMap::new();
            for (u, a) in &l {
                for (v, c) in &r {
                    *out.entry(u.concat(v)).or_default() += a * c;
                    *out.entry(v.concat(u)).or_default() -= a * c;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        },
    )
}

/// Evaluates the standard bracketing of a Lyndon word at the generators.
/// The result has leading word `w` with coefficient 1.
pub fn lyndon_bracket_series<S: Scalar>(
    w: &[usize],
    generators: usize,
    truncation: usize,
) -> Result<TruncatedSeries<S>> {
    let b = bracketing(w)?;
    if w.len() > truncation {
        return Err(Error::DegreeExceedsTruncation {
            degree: w.len(),
            truncation,
        });
    }
    TruncatedSeries::from_terms(
        generators,
        truncation,
        bracket_expansion(&b)
            .into_iter()
            .map(|(u, c)| (u, S::from_int(c))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0]).unwrap());
        assert!(is_lyndon(&[0, 1]).unwrap());
        assert!(!is_lyndon(&[1, 0]).unwrap());
        assert!(!is_lyndon(&[0, 0]).unwrap());
        assert!(is_lyndon(&[0, 0, 1, 0, 1]).unwrap());
        assert_eq!(is_lyndon(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn enumeration_examples() {
        let words: Vec<Vec<usize>> = enumerate_lyndon(2, 3)
            .into_iter()
            .map(Word::into_letters)
            .collect();
        assert_eq!(
            words,
            vec![vec![0], vec![1], vec![0, 1], vec![0, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(enumerate_lyndon(1, 6), vec![Word::letter(0)]);
        assert_eq!(lyndon_counts(2, 5), vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn standard_factorizations() {
        let sf = |w: &[usize]| {
            let (u, v) = standard_factorization(w).unwrap();
            (u.into_letters(), v.into_letters())
        };
        assert_eq!(sf(&[0, 1]), (vec![0], vec![1]));
        assert_eq!(sf(&[0, 0, 1]), (vec![0], vec![0, 1]));
        assert_eq!(sf(&[0, 1, 1]), (vec![0, 1], vec![1]));
        assert_eq!(sf(&[0, 0, 1, 0, 1]), (vec![0, 0, 1], vec![0, 1]));
        assert_eq!(standard_factorization(&[1]), Err(Error::SingleLetter));
        assert!(matches!(
            standard_factorization(&[1, 0]),
            Err(Error::NotLyndon(_))
        ));
    }

    #[test]
    fn bracketings() {
        assert_eq!(bracketing(&[0]).unwrap().to_string(), "0");
        assert_eq!(bracketing(&[0, 1]).unwrap().to_string(), "(0 1)");
        assert_eq!(bracketing(&[0, 0, 1]).unwrap().to_string(), "(0 (0 1))");
        for w in enumerate_lyndon(3, 6) {
            let b = bracketing(w.letters()).unwrap();
            assert_eq!(b.foliage(), w);
            // internal nodes split at standard factorizations
            if let BracketedWord::Node(l, r) = &b {
                let (u, v) = standard_factorization(w.letters()).unwrap();
                assert_eq!((l.foliage(), r.foliage()), (u, v));
            }
        }
    }

    #[test]
    fn bracket_series_examples() {
        let s = lyndon_bracket_series::<Rational>(&[0, 0, 1], 2, 3).unwrap();
        assert_eq!(s.coeff(&Word::from([0, 0, 1])), int(1));
        assert_eq!(s.coeff(&Word::from([0, 1, 0])), int(-2));
        assert_eq!(s.coeff(&Word::from([1, 0, 0])), int(1));
        assert_eq!(s.len(), 3);
        assert!(matches!(
            lyndon_bracket_series::<Rational>(&[0, 0, 1], 2, 2),
            Err(Error::DegreeExceedsTruncation {
                degree: 3,
                truncation: 2
            })
        ));
    }

    #[test]
    fn tree_enumeration_counts() {
        // Catalan(r-1) * m^r trees of rank r
        let trees = BracketedWord::all_up_to_rank(2, 4);
        assert_eq!(trees.len(), 2 + 4 + 2 * 8 + 5 * 16);
    }
}
