//! Property suites run by `liecorr verify`.
//!
//! Each suite draws its cases from a seeded [`Sampler`] and reports pass and
//! fail counts together with the first counterexample.

use std::fmt;

use crate::collection::{collect, expand, hall_petresco_tau, log_valuation, verify_hall_petresco};
use crate::error::{Error, Result};
use crate::group::{bch, ExpGroup, TruncatedGroup};
use crate::lie::series_to_lie;
use crate::lyndon::{enumerate_lyndon, is_lyndon, lyndon_bracket_series};
use crate::models::solver::group_equation_residual;
use crate::models::{
    group_lcs, lie_from_group_ops, solve_group_equation, ModelVector, SCLieAlgebra,
};
use crate::random::{Sampler, DEFAULT_SEED};
use crate::scalar::{Rational, Scalar};
use crate::series::Valuation;
use crate::word::words_of_degree;

pub const SUITES: [&str; 8] = [
    "ring",
    "eg-axioms",
    "bch",
    "collect",
    "hall-petresco",
    "functor",
    "solver",
    "lyndon",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: usize,
    /// Generators (or factors for `hall-petresco`).
    pub n: Option<usize>,
    /// Truncation or nilpotency class.
    pub class: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            cases: 100,
            n: None,
            class: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    /// Records an `Ok(true)` as a pass and anything else as a failure.
    pub fn check_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: {e}", describe())),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} passed, {} failed",
            self.suite, self.passed, self.failed
        )?;
        if let Some(c) = &self.first_failure {
            write!(f, "; first counterexample: {c}")?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut s = Sampler::new(opts.seed);
    match name {
        "ring" => Ok(ring(&mut s, opts)),
        "eg-axioms" => Ok(eg_axioms(&mut s, opts)),
        "bch" => Ok(bch_suite(&mut s, opts)),
        "collect" => Ok(collect_suite(&mut s, opts)),
        "hall-petresco" => hall_petresco(opts),
        "functor" => Ok(functor()),
        "solver" => Ok(solver(&mut s, opts)),
        "lyndon" => Ok(lyndon(opts)),
        other => Err(Error::Parse(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn ring(s: &mut Sampler, opts: &VerifyOptions) -> SuiteReport {
    let m = opts.n.unwrap_or(2);
    let n = opts.class.unwrap_or(4);
    let mut r = SuiteReport::new("ring");
    for case in 0..opts.cases {
        let a = s.series(m, n, 0, 0.3);
        let b = s.series(m, n, 0, 0.3);
        let c = s.series(m, n, 0, 0.3);
        let ab = a.mul(&b).unwrap();
        r.check(
            ab.mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap(),
            || format!("case {case}: associativity for a={a}, b={b}, c={c}"),
        );
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = ab.add(&a.mul(&c).unwrap()).unwrap();
        r.check(lhs == rhs, || {
            format!("case {case}: distributivity for a={a}")
        });
        r.check(a.add(&b).unwrap() == b.add(&a).unwrap(), || {
            format!("case {case}: commutative sum")
        });
        let k = 1 + s.index(n);
        r.check(
            ab.truncate(k) == a.truncate(k).mul(&b.truncate(k)).unwrap(),
            || format!("case {case}: truncation to {k} is not multiplicative"),
        );

        // valuation and leading terms of products
        let a1 = s.series(m, n, 1, 0.3);
        let b1 = s.series(m, n, 1, 0.3);
        let p = a1.mul(&b1).unwrap();
        let expected = match (a1.valuation(), b1.valuation()) {
            (Valuation::Finite(x), Valuation::Finite(y)) if x + y <= n => Valuation::Finite(x + y),
            _ => Valuation::Infinite,
        };
        r.check(p.valuation() == expected, || {
            format!(
                "case {case}: val({a1} · {b1}) = {} ≠ {expected}",
                p.valuation()
            )
        });
        if let Valuation::Finite(v) = expected {
            let (x, y) = (
                a1.valuation().finite().unwrap(),
                b1.valuation().finite().unwrap(),
            );
            let lead = a1.homogeneous_part(x).mul(&b1.homogeneous_part(y)).unwrap();
            r.check(p.homogeneous_part(v) == lead, || {
                format!("case {case}: leading term of product")
            });
        }

        // substitution is a ring morphism
        let args = [s.series(m, n, 1, 0.3), s.series(m, n, 1, 0.3)];
        let args = &args[..m.min(2)];
        if m <= 2 {
            let ok = (|| -> Result<bool> {
                let lhs = ab.substitute(args)?;
                let rhs = a.substitute(args)?.mul(&b.substitute(args)?)?;
                Ok(lhs == rhs)
            })();
            r.check_result(ok, || format!("case {case}: substitution morphism"));
        }
    }
    r
}

/// EG1–EG5 for one choice of elements and scalars; returns the failed axiom.
pub fn eg_axioms_hold<G: ExpGroup<Scalar = Rational>>(
    g: &G,
    f: &G::Elem,
    h: &G::Elem,
    lambda: &Rational,
    mu: &Rational,
) -> std::result::Result<(), &'static str> {
    if g.pow(f, &Rational::one()) != *f {
        return Err("EG1");
    }
    if g.pow(f, &(lambda + mu)) != g.mul(&g.pow(f, lambda), &g.pow(f, mu)) {
        return Err("EG2");
    }
    if g.pow(&g.pow(f, lambda), mu) != g.pow(f, &(lambda * mu)) {
        return Err("EG3");
    }
    let fm = g.pow(f, mu);
    if g.pow(&g.mul(f, &fm), lambda) != g.mul(&g.pow(f, lambda), &g.pow(&fm, lambda)) {
        return Err("EG4");
    }
    let fi = g.inv(f);
    let conj = g.mul(&g.mul(f, h), &fi);
    if g.pow(&conj, lambda) != g.mul(&g.mul(f, &g.pow(h, lambda)), &fi) {
        return Err("EG5");
    }
    Ok(())
}

fn eg_axioms(s: &mut Sampler, opts: &VerifyOptions) -> SuiteReport {
    let m = opts.n.unwrap_or(2);
    let n = opts.class.unwrap_or(4);
    let mut r = SuiteReport::new("eg-axioms");
    let tg = TruncatedGroup::<Rational>::new(m, n);
    for case in 0..opts.cases {
        let f = s.group_like(m, n, 0.4);
        let h = s.group_like(m, n, 0.4);
        let (l, u) = (s.rational(), s.rational());
        let res = eg_axioms_hold(&tg, &f, &h, &l, &u);
        r.check(res.is_ok(), || {
            format!(
                "case {case}: {} fails in 1+m for f={f}, g={h}, λ={l}, μ={u}",
                res.unwrap_err()
            )
        });
    }
    for a in [
        SCLieAlgebra::heisenberg(),
        SCLieAlgebra::free_nilpotent(2, 3),
    ] {
        for case in 0..opts.cases {
            let f = s.vector(a.dim());
            let h = s.vector(a.dim());
            let (l, u) = (s.rational(), s.rational());
            let res = eg_axioms_hold(&a, &f, &h, &l, &u);
            r.check(res.is_ok(), || {
                format!(
                    "case {case}: {} fails in Gr(A), dim {}, for f={f}, g={h}, λ={l}, μ={u}",
                    res.unwrap_err(),
                    a.dim()
                )
            });
        }
    }
    r
}

fn bch_suite(s: &mut Sampler, opts: &VerifyOptions) -> SuiteReport {
    let m = opts.n.unwrap_or(2);
    let n = opts.class.unwrap_or(4);
    let mut r = SuiteReport::new("bch");
    for case in 0..opts.cases {
        let a = s.lie(m, n, 0.4);
        let b = s.lie(m, n, 0.4);
        let c = s.lie(m, n, 0.4);
        let ok = (|| -> Result<bool> {
            let assoc = bch(&bch(&a, &b)?, &c)? == bch(&a, &bch(&b, &c)?)?;
            let unit = bch(&a, &crate::lie::LieElement::zero(m, n))? == a;
            let inverse = bch(&a, &a.neg())?.is_zero();
            let central = a.exp_ad(&b)? == bch(&a, &bch(&b, &a.neg())?)?;
            Ok(assoc && unit && inverse && central)
        })();
        r.check_result(ok, || format!("case {case}: a={a}, b={b}, c={c}"));
    }
    r
}

fn collect_suite(s: &mut Sampler, opts: &VerifyOptions) -> SuiteReport {
    let m = opts.n.unwrap_or(2);
    let n = opts.class.unwrap_or(5);
    let mut r = SuiteReport::new("collect");
    for case in 0..opts.cases {
        let q = s.group_like(m, n, 0.4);
        let ok = (|| -> Result<bool> {
            let d = collect(&q)?;
            Ok(d.is_strictly_increasing() && expand(&d, m, n)? == q)
        })();
        r.check_result(ok, || format!("case {case}: Q={q}"));
    }
    r
}

fn hall_petresco(opts: &VerifyOptions) -> Result<SuiteReport> {
    let n = opts.n.unwrap_or(2);
    let c = opts.class.unwrap_or(3);
    if n < 2 || c < 2 {
        return Err(Error::TruncationTooSmall {
            got: n.min(c),
            need: 2,
        });
    }
    let mut r = SuiteReport::new("hall-petresco");
    r.check(verify_hall_petresco(n, c), || {
        format!("identity fails for n={n}, c={c}")
    });
    for (k, tau) in hall_petresco_tau(n, c).iter().enumerate() {
        let i = k + 2;
        let v = log_valuation(tau);
        r.check(v >= Valuation::Finite(i), || {
            format!("val(log τ_{i}) = {v} < {i}")
        });
    }
    Ok(r)
}

pub fn functor_algebras() -> Vec<(&'static str, SCLieAlgebra)> {
    vec![
        ("abelian4", SCLieAlgebra::abelian(4)),
        ("heisenberg", SCLieAlgebra::heisenberg()),
        ("free-2-3", SCLieAlgebra::free_nilpotent(2, 3)),
    ]
}

fn functor() -> SuiteReport {
    let mut r = SuiteReport::new("functor");
    for (name, a) in functor_algebras() {
        let rebuilt = lie_from_group_ops(&a);
        r.check(rebuilt.as_ref() == Ok(&a), || {
            format!("{name}: {:?}", rebuilt.err())
        });
        r.check(group_lcs(&a) == a.lower_central_series(), || {
            format!("{name}: group lower central series differs")
        });
    }
    r
}

/// Models used for randomized solver instances (class at most 4).
pub fn solver_algebras() -> Vec<SCLieAlgebra> {
    vec![
        SCLieAlgebra::abelian(3),
        SCLieAlgebra::heisenberg(),
        SCLieAlgebra::free_nilpotent(2, 3),
        SCLieAlgebra::free_nilpotent(2, 4),
        SCLieAlgebra::free_nilpotent(3, 2),
    ]
}

/// Random exponents for `n` factors with nonzero sum.
pub fn nonsingular_lambdas(s: &mut Sampler, n: usize) -> Vec<Rational> {
    loop {
        let ls: Vec<Rational> = (0..n).map(|_| s.nonzero_rational()).collect();
        if !ls.iter().fold(Rational::zero(), |a, l| a + l).is_zero() {
            return ls;
        }
    }
}

fn solver(s: &mut Sampler, opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("solver");
    let algebras = solver_algebras();
    for case in 0..opts.cases {
        let a = &algebras[s.index(algebras.len())];
        let n = 1 + s.index(3);
        let gs: Vec<ModelVector> = (0..n).map(|_| s.vector(a.dim())).collect();
        let ls = nonsingular_lambdas(s, n);
        match solve_group_equation(a, &gs, &ls) {
            Ok(f) => {
                r.check(group_equation_residual(a, &gs, &ls, &f).is_zero(), || {
                    format!("case {case}: residual nonzero for f={f}")
                });
                let moved = f.add(&s.nonzero_vector(a.dim()));
                r.check(
                    !group_equation_residual(a, &gs, &ls, &moved).is_zero(),
                    || format!("case {case}: perturbed solution {moved} also solves"),
                );
            }
            Err(e) => r.check(false, || format!("case {case}: {e}")),
        }
        // the same factors with exponents summing to zero are rejected
        if n >= 2 {
            let mut zs = ls.clone();
            let rest = zs[1..].iter().fold(Rational::zero(), |acc, l| acc + l);
            zs[0] = -rest;
            if !zs[0].is_zero() {
                let res = solve_group_equation(a, &gs, &zs);
                r.check(res == Err(Error::SingularEquation), || {
                    format!("case {case}: Σλ = 0 accepted with λ={zs:?}")
                });
            }
        }
    }
    r
}

fn lyndon(opts: &VerifyOptions) -> SuiteReport {
    let max_m = opts.n.unwrap_or(3);
    let max_d = opts.class.unwrap_or(7);
    let mut r = SuiteReport::new("lyndon");
    for m in 1..=max_m {
        let brute: Vec<_> = (1..=max_d)
            .flat_map(|d| words_of_degree(m, d))
            .filter(|w| is_lyndon(w.letters()).unwrap_or(false))
            .collect();
        let fast = enumerate_lyndon(m, max_d);
        r.check(fast == brute, || {
            format!("enumeration differs for m={m}, d≤{max_d}")
        });
        for w in &fast {
            let ok = (|| -> Result<bool> {
                let p = lyndon_bracket_series::<Rational>(w.letters(), m, max_d)?;
                let lead_ok = p.iter().filter(|(_, c)| !c.is_zero()).all(|(u, _)| u >= w)
                    && p.coeff(w).is_one();
                let l = series_to_lie(&p)?;
                Ok(lead_ok && l.coords().len() == 1 && l.coord(w).is_one())
            })();
            r.check_result(ok, || format!("triangularity fails for {w}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        let opts = VerifyOptions {
            cases: 5,
            ..VerifyOptions::default()
        };
        for name in SUITES {
            let rep = run_suite(name, &opts).unwrap();
            assert!(rep.is_success(), "{rep}");
            assert!(rep.passed > 0);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &VerifyOptions::default())
            .unwrap_err()
            .is_parse());
    }
}
