//! Mixed terms over `⟨+, 0, [·,·], *, λ·⟩` and group words.
//!
//! A [`MixedTerm`] compiles to a Lie element (`+` to addition, `[·,·]` to the
//! bracket, `*` to BCH); its exponential collects to a [`GroupWord`] that
//! evaluates equally in every nilpotent model of small enough class.

use std::fmt;

use crate::collection::collect;
use crate::error::{Error, Result};
use crate::group::{bch_many, exp_lie, ExpGroup};
use crate::lie::LieElement;
use crate::lyndon::{bracketing_unchecked, BracketedWord};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MixedTerm {
    Var(usize),
    Zero,
    Add(Box<MixedTerm>, Box<MixedTerm>),
    Bracket(Box<MixedTerm>, Box<MixedTerm>),
    /// The group product `*`.
    Mul(Box<MixedTerm>, Box<MixedTerm>),
    Scale(Rational, Box<MixedTerm>),
}

#[allow(clippy::should_implement_trait)]
impl MixedTerm {
    pub fn var(i: usize) -> Self {
        MixedTerm::Var(i)
    }
    pub fn add(a: MixedTerm, b: MixedTerm) -> Self {
        MixedTerm::Add(Box::new(a), Box::new(b))
    }
    pub fn bracket(a: MixedTerm, b: MixedTerm) -> Self {
        MixedTerm::Bracket(Box::new(a), Box::new(b))
    }
    pub fn mul(a: MixedTerm, b: MixedTerm) -> Self {
        MixedTerm::Mul(Box::new(a), Box::new(b))
    }
    pub fn scale(lambda: Rational, a: MixedTerm) -> Self {
        MixedTerm::Scale(lambda, Box::new(a))
    }

    /// Left-nested group product of the given terms.
    pub fn product(items: impl IntoIterator<Item = MixedTerm>) -> Self {
        items
            .into_iter()
            .reduce(MixedTerm::mul)
            .unwrap_or(MixedTerm::Zero)
    }

    /// One more than the largest variable index (0 when closed).
    pub fn arity(&self) -> usize {
        match self {
            MixedTerm::Var(i) => i + 1,
            MixedTerm::Zero => 0,
            MixedTerm::Add(a, b) | MixedTerm::Bracket(a, b) | MixedTerm::Mul(a, b) => {
                a.arity().max(b.arity())
            }
            MixedTerm::Scale(_, a) => a.arity(),
        }
    }

    /// Parses the syntax produced by `Display`:
    /// `x3`, `0`, `a + b`, `a * b`, `[a, b]`, `scale(p/q, a)`, parentheses.
    /// `*` binds tighter than `+`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for MixedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedTerm::Var(i) => write!(f, "x{i}"),
            MixedTerm::Zero => write!(f, "0"),
            MixedTerm::Add(a, b) => write!(f, "({a} + {b})"),
            MixedTerm::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            MixedTerm::Mul(a, b) => write!(f, "({a} * {b})"),
            MixedTerm::Scale(l, a) => write!(f, "scale({l}, {a})"),
        }
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("term: {what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<MixedTerm> {
        let mut t = self.product()?;
        while self.eat(b'+') {
            t = MixedTerm::add(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<MixedTerm> {
        let mut t = self.atom()?;
        while self.eat(b'*') {
            t = MixedTerm::mul(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<MixedTerm> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if self.eat(b'(') {
            let t = self.sum()?;
            self.expect(b')')?;
            Ok(t)
        } else if self.eat(b'[') {
            let a = self.sum()?;
            self.expect(b',')?;
            let b = self.sum()?;
            self.expect(b']')?;
            Ok(MixedTerm::bracket(a, b))
        } else if rest.starts_with(b"scale") {
            self.pos += 5;
            self.expect(b'(')?;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos] != b',' {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let lambda = parse_rational(text)?;
            self.expect(b',')?;
            let a = self.sum()?;
            self.expect(b')')?;
            Ok(MixedTerm::scale(lambda, a))
        } else if rest.first() == Some(&b'x') {
            self.pos += 1;
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            digits
                .parse()
                .map(MixedTerm::Var)
                .map_err(|_| self.error("expected variable index"))
        } else if self.eat(b'0') {
            Ok(MixedTerm::Zero)
        } else {
            Err(self.error("unexpected token"))
        }
    }
}

/// Compiles a mixed term into the truncated free Lie algebra on
/// `generators` letters. Chains of `*` are evaluated as one BCH product.
pub fn term_to_lie(
    t: &MixedTerm,
    generators: usize,
    truncation: usize,
) -> Result<LieElement<Rational>> {
    if t.arity() > generators {
        return Err(Error::ArityMismatch {
            expected: generators,
            got: t.arity(),
        });
    }
    Ok(compile(t, generators, truncation))
}

fn compile(t: &MixedTerm, m: usize, n: usize) -> LieElement<Rational> {
    match t {
        MixedTerm::Var(i) => LieElement::generator(m, n, *i),
        MixedTerm::Zero => LieElement::zero(m, n),
        MixedTerm::Add(a, b) => compile(a, m, n).add(&compile(b, m, n)).expect("same shape"),
        MixedTerm::Bracket(a, b) => compile(a, m, n)
            .bracket(&compile(b, m, n))
            .expect("same shape"),
        MixedTerm::Mul(..) => {
            let mut factors = Vec::new();
            flatten_mul(t, &mut factors);
            let parts: Vec<_> = factors.iter().map(|f| compile(f, m, n)).collect();
            bch_many(&parts).expect("same shape")
        }
        MixedTerm::Scale(l, a) => compile(a, m, n).scale(l),
    }
}

fn flatten_mul<'a>(t: &'a MixedTerm, out: &mut Vec<&'a MixedTerm>) {
    match t {
        MixedTerm::Mul(a, b) => {
            flatten_mul(a, out);
            flatten_mul(b, out);
        }
        other => out.push(other),
    }
}

/// Word in the language of exponential groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupWord {
    Unit,
    Var(usize),
    Product(Vec<GroupWord>),
    Inverse(Box<GroupWord>),
    Power(Box<GroupWord>, Rational),
    Commutator(Box<GroupWord>, Box<GroupWord>),
}

impl GroupWord {
    /// The commutator word of a standard bracketing.
    pub fn from_bracketing(b: &BracketedWord) -> Self {
        b.fold(&mut GroupWord::Var, &mut |l, r| {
            GroupWord::Commutator(Box::new(l), Box::new(r))
        })
    }

    pub fn evaluate<G: ExpGroup<Scalar = Rational>>(&self, group: &G, args: &[G::Elem]) -> G::Elem {
        match self {
            GroupWord::Unit => group.identity(),
            GroupWord::Var(i) => args[*i].clone(),
            GroupWord::Product(items) => items.iter().fold(group.identity(), |acc, w| {
                group.mul(&acc, &w.evaluate(group, args))
            }),
            GroupWord::Inverse(a) => group.inv(&a.evaluate(group, args)),
            GroupWord::Power(a, l) => group.pow(&a.evaluate(group, args), l),
            GroupWord::Commutator(a, b) => {
                group.commutator(&a.evaluate(group, args), &b.evaluate(group, args))
            }
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupWord::Unit => write!(f, "1"),
            GroupWord::Var(i) => write!(f, "x{i}"),
            GroupWord::Product(items) if items.is_empty() => write!(f, "1"),
            GroupWord::Product(items) => {
                for (k, w) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " * ")?;
                    }
                    match w {
                        GroupWord::Product(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
            GroupWord::Inverse(a) => write!(f, "inv({a})"),
            GroupWord::Power(a, l) => match **a {
                GroupWord::Product(_) => write!(f, "({a})^({l})"),
                _ => write!(f, "{a}^({l})"),
            },
            GroupWord::Commutator(a, b) => write!(f, "comm({a},{b})"),
        }
    }
}

/// Normal forms of `t` valid in models of nilpotency class `< c`: the Lie
/// element truncated to degree `c − 1`, and a group word obtained by
/// collecting its exponential at the same truncation.
pub fn lie_term_truncations(
    t: &MixedTerm,
    generators: usize,
    c: usize,
) -> Result<(LieElement<Rational>, GroupWord)> {
    if c == 0 {
        return Err(Error::TruncationTooSmall { got: c, need: 1 });
    }
    if c == 1 {
        if t.arity() > generators {
            return Err(Error::ArityMismatch {
                expected: generators,
                got: t.arity(),
            });
        }
        return Ok((
            LieElement::zero(generators, 0),
            GroupWord::Product(Vec::new()),
        ));
    }
    let lie = term_to_lie(t, generators, c - 1)?;
    let decomposition = collect(&exp_lie(&lie))?;
    let items = decomposition
        .factors()
        .iter()
        .map(|(w, l)| {
            let base = GroupWord::from_bracketing(&bracketing_unchecked(w.letters()));
            if l.is_one() {
                base
            } else {
                GroupWord::Power(Box::new(base), l.clone())
            }
        })
        .collect();
    Ok((lie, GroupWord::Product(items)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::bch;
    use crate::scalar::{frac, int};

    fn x(i: usize) -> MixedTerm {
        MixedTerm::var(i)
    }

    #[test]
    fn compiles_bch() {
        let t = MixedTerm::mul(x(0), x(1));
        let l = term_to_lie(&t, 2, 4).unwrap();
        let g0 = LieElement::generator(2, 4, 0);
        let g1 = LieElement::generator(2, 4, 1);
        assert_eq!(l, bch(&g0, &g1).unwrap());
        assert_eq!(
            term_to_lie(&MixedTerm::add(x(0), MixedTerm::Zero), 2, 4).unwrap(),
            g0
        );
        assert!(matches!(
            term_to_lie(&x(2), 2, 3),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn nested_products_degree_two() {
        let t = MixedTerm::mul(
            MixedTerm::mul(x(0), x(1)),
            MixedTerm::scale(int(-1), MixedTerm::add(x(0), x(1))),
        );
        let l = term_to_lie(&t, 2, 3).unwrap();
        let deg2 = l.graded_component(2).unwrap();
        let half =
            LieElement::from_coords(2, 3, [(crate::word::Word::from([0, 1]), frac(1, 2))]).unwrap();
        assert_eq!(deg2, half);
        assert!(l.graded_component(1).unwrap().is_zero());
    }

    #[test]
    fn group_word_truncations() {
        let (lie, gw) = lie_term_truncations(&MixedTerm::mul(x(0), x(1)), 2, 2).unwrap();
        assert_eq!(
            lie,
            LieElement::generator(2, 1, 0)
                .add(&LieElement::generator(2, 1, 1))
                .unwrap()
        );
        assert_eq!(gw.to_string(), "x0 * x1");
        let (_, gw) = lie_term_truncations(&MixedTerm::add(x(0), x(1)), 2, 3).unwrap();
        assert_eq!(gw.to_string(), "x0 * x1 * comm(x0,x1)^(-1/2)");
    }

    #[test]
    fn term_syntax_round_trip() {
        let t = MixedTerm::add(
            MixedTerm::mul(x(0), MixedTerm::scale(frac(-1, 2), x(1))),
            MixedTerm::bracket(x(2), MixedTerm::Zero),
        );
        assert_eq!(MixedTerm::parse(&t.to_string()).unwrap(), t);
        assert_eq!(
            MixedTerm::parse("x0 * x1 + x2").unwrap(),
            MixedTerm::add(MixedTerm::mul(x(0), x(1)), x(2))
        );
        assert!(MixedTerm::parse("x0 +").is_err());
        assert!(MixedTerm::parse("y").is_err());
    }
}
