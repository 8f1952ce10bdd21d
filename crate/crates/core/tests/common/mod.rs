//! Fixtures shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeSet;

use prenex_core::classify::{fits, in_e_plus, in_u_plus, ShapeKind};
use prenex_core::prenex::{pnft_budget, BudgetRow, Mode, Transformed};
use prenex_core::random::{enumerate, GenConfig};
use prenex_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub const PHI0: &str =
    "~forall x. (~(exists u. (T(x,x,u) & eq(U(u),0))) | ~(exists u. (T(x,x,u) & ~eq(U(u),0))))";

/// Classes worked out by hand from the path recursion.
pub struct Golden {
    pub src: &'static str,
    pub degree: usize,
    /// In `E_degree` and `U_degree`.
    pub e: bool,
    pub u: bool,
    pub shape: Option<(ShapeKind, usize)>,
}

const fn g(src: &'static str, degree: usize, e: bool, u: bool, shape: Option<(ShapeKind, usize)>) -> Golden {
    Golden { src, degree, e, u, shape }
}

const S: ShapeKind = ShapeKind::Sigma;
const PI: ShapeKind = ShapeKind::Pi;

pub const GOLDENS: [Golden; 20] = [
    g("P(x)", 0, true, true, Some((S, 0))),
    g("P -> Q", 0, true, true, Some((S, 0))),
    g("~~P", 0, true, true, Some((S, 0))),
    g("exists x. P(x)", 1, true, false, Some((S, 1))),
    g("forall x. P(x)", 1, false, true, Some((PI, 1))),
    g("~forall x. P(x)", 1, true, false, None),
    g("(exists x. P(x)) -> Q", 1, false, true, None),
    g("~~forall x. P(x)", 1, false, true, None),
    g("(forall x. P(x)) -> exists y. Q(y)", 1, true, false, None),
    g("exists x. (P(x) -> exists y. Q(y))", 1, true, false, None),
    g("forall x. (P(x) | ~P(x))", 1, false, true, Some((PI, 1))),
    g("forall x. ((exists y. P(y)) -> forall z. Q(z))", 1, false, true, None),
    g("(exists x. P(x)) & forall y. Q(y)", 1, false, false, None),
    g("exists x. (P(x) & forall y. Q(y))", 2, true, false, None),
    g("forall x. exists y. P(x,y)", 2, false, true, Some((PI, 2))),
    g("exists x. forall y. P(x,y)", 2, true, false, Some((S, 2))),
    g("forall x. forall y. exists z. R(x,y,z)", 2, false, true, Some((PI, 2))),
    g("(forall x. exists y. P(x,y)) | exists u. forall v. Q(u,v)", 2, false, false, None),
    g("exists x. forall y. exists z. R(x,y,z)", 3, true, false, Some((S, 3))),
    g("forall x. ~forall y. exists z. R(x,y,z)", 3, false, true, None),
];

/// `(formula, kind, level, cumulative, expected)`.
pub const FIT_GOLDENS: [(&str, ShapeKind, usize, bool, bool); 7] = [
    ("exists x. P(x)", S, 1, false, true),
    ("exists x. P(x)", S, 2, false, false),
    ("exists x. P(x)", S, 2, true, true),
    ("exists x. P(x)", PI, 2, true, true),
    ("exists x. P(x)", PI, 1, true, false),
    ("P", PI, 1, true, true),
    ("P", S, 1, false, false),
];

/// Paths read off root-to-leaf branches: the effective polarity of each
/// quantifier met, with repeats collapsed.
pub fn branch_paths(phi: &Formula) -> BTreeSet<String> {
    fn go(f: &Formula, pos: bool, acc: &mut Vec<char>, out: &mut BTreeSet<Vec<char>>) {
        let quant = |c_pos: char, a: &Formula, acc: &mut Vec<char>, out: &mut BTreeSet<Vec<char>>| {
            let c = if pos { c_pos } else if c_pos == '+' { '-' } else { '+' };
            let pushed = acc.last() != Some(&c);
            if pushed {
                acc.push(c);
            }
            go(a, pos, acc, out);
            if pushed {
                acc.pop();
            }
        };
        match f {
            Formula::Bot | Formula::Atom(..) => {
                out.insert(acc.clone());
            }
            Formula::Not(a) => go(a, !pos, acc, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, pos, acc, out);
                go(b, pos, acc, out);
            }
            Formula::Imp(a, b) => {
                go(a, !pos, acc, out);
                go(b, pos, acc, out);
            }
            Formula::Exists(_, a) => quant('+', a, acc, out),
            Formula::Forall(_, a) => quant('-', a, acc, out),
        }
    }
    let mut out = BTreeSet::new();
    go(phi, true, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|w| {
            let inner: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            format!("<{}>", inner.join(","))
        })
        .collect()
}

/// Class flags from scratch: degree, then heads of the longest paths.
pub fn naive_class(phi: &Formula) -> (usize, bool, bool) {
    let paths = branch_paths(phi);
    let len = |s: &String| if s == "<>" { 0 } else { s.matches(',').count() + 1 };
    let deg = paths.iter().map(len).max().unwrap();
    let top: Vec<&String> = paths.iter().filter(|s| len(s) == deg).collect();
    let e = deg == 0 || top.iter().all(|s| s.starts_with("<+"));
    let u = deg == 0 || top.iter().all(|s| s.starts_with("<-"));
    (deg, e, u)
}

/// Truth table evaluation of a propositional formula under `bits`.
pub fn truth(f: &Formula, letters: &[String], bits: u32) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Atom(a, _) => {
            let i = letters.iter().position(|l| l == a).unwrap();
            bits >> i & 1 == 1
        }
        Formula::Not(a) => !truth(a, letters, bits),
        Formula::And(a, b) => truth(a, letters, bits) && truth(b, letters, bits),
        Formula::Or(a, b) => truth(a, letters, bits) || truth(b, letters, bits),
        Formula::Imp(a, b) => !truth(a, letters, bits) || truth(b, letters, bits),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("propositional"),
    }
}

pub fn truth_equiv(a: &Formula, b: &Formula) -> bool {
    let mut letters: Vec<String> = a.predicates().into_iter().chain(b.predicates()).map(|(n, _)| n).collect();
    letters.sort();
    letters.dedup();
    (0..1u32 << letters.len()).all(|bits| truth(a, &letters, bits) == truth(b, &letters, bits))
}

pub fn sig() -> Signature {
    Signature::arithmetic()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded formulas of degree at most 3 over `p/1, q/2, r/0`.
pub fn random_corpus(seed: u64, n: usize) -> Vec<Formula> {
    let gcfg = GenConfig::small();
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let size = r.gen_range(2..=11);
        // Every third formula is drawn without ∨ so the ∨-free pipeline sees
        // enough input.
        let f = if out.len() % 3 == 0 {
            gcfg.clone().or_free().random_formula(&mut r, size)
        } else {
            gcfg.random_formula(&mut r, size)
        };
        if degree(&f) <= 3 {
            out.push(f);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E,
    U,
    DfE,
    DfU,
    NnU,
    NegE,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::E, Op::U, Op::DfE, Op::DfU, Op::NnU, Op::NegE];

    pub fn level(self, phi: &Formula) -> usize {
        let c = class_membership(phi, 0);
        match self {
            Op::E | Op::DfE | Op::NegE => c.min_e_plus,
            Op::U | Op::DfU | Op::NnU => c.min_u_plus,
        }
    }

    pub fn applies(self, phi: &Formula) -> bool {
        !matches!(self, Op::DfE | Op::DfU) || is_or_free(phi)
    }

    pub fn run(self, phi: &Formula, k: usize) -> Result<Transformed> {
        match self {
            Op::E => prenex_e(phi, k),
            Op::U => prenex_u(phi, k),
            Op::DfE => prenex_df(phi, Mode::E, k),
            Op::DfU => prenex_df(phi, Mode::U, k),
            Op::NnU => prenex_core::prenex::nn_u_prenex(phi, k),
            Op::NegE => prenex_core::prenex::neg_e_nn_pi(phi, k),
        }
    }

    pub fn kind(self) -> ShapeKind {
        match self {
            Op::E | Op::DfE => ShapeKind::Sigma,
            _ => ShapeKind::Pi,
        }
    }

    /// The formulas the output is claimed to match, input side first.
    pub fn claim(self, phi: &Formula, out: &Formula) -> (Formula, Formula) {
        match self {
            Op::NnU => (Formula::nn(phi.clone()), Formula::nn(out.clone())),
            Op::NegE => (Formula::not(phi.clone()), Formula::nn(out.clone())),
            _ => (phi.clone(), out.clone()),
        }
    }

    /// Budget the certificate must stay within.
    pub fn budget(self, k: usize) -> Certificate {
        let row = |r: BudgetRow| {
            let (p, q) = pnft_budget(r, k);
            p.union(&q)
        };
        match self {
            Op::E => row(BudgetRow::EToSigma),
            Op::U => row(BudgetRow::UToPi),
            Op::DfE => Certificate::from_tags([PrincipleTag::dne(ClassArg::Sigma, k)]),
            Op::DfU => Certificate::from_tags(k.checked_sub(1).map(|l| PrincipleTag::dne(ClassArg::Sigma, l))),
            Op::NnU => row(BudgetRow::NnUToNnPi),
            Op::NegE => Certificate::from_tags([PrincipleTag::dne(ClassArg::PiOrPi, k).nn()]),
        }
    }
}

/// One transformation of one corpus formula, with what the checks need.
pub struct Run {
    pub op: Op,
    pub input: Formula,
    pub k: usize,
    pub result: Transformed,
}

impl Run {
    pub fn shape_ok(&self) -> bool {
        fits(&self.result.output, self.op.kind(), self.k, true)
    }

    pub fn fv_ok(&self) -> bool {
        free_vars(&self.input) == free_vars(&self.result.output)
    }

    pub fn scope(&self) -> ValidityScope {
        self.result.chain.steps.iter().map(|s| s.scope).max().unwrap_or(ValidityScope::PureLogic)
    }

    pub fn budget_ok(&self) -> bool {
        budget_leq(&self.result.certificate, &self.op.budget(self.k))
    }

    pub fn describe(&self) -> String {
        format!("{:?} k={} {} => {} {}", self.op, self.k, self.input, self.result.output, self.result.certificate)
    }
}

/// Runs every applicable operation on every corpus formula.
pub fn transform_corpus(corpus: &[Formula], ops: &[Op]) -> std::result::Result<Vec<Run>, String> {
    let mut runs = Vec::new();
    for phi in corpus {
        for &op in ops {
            if !op.applies(phi) {
                continue;
            }
            let k = op.level(phi);
            let result = op.run(phi, k).map_err(|e| format!("{op:?} k={k} {phi}: {e}"))?;
            runs.push(Run { op, input: phi.clone(), k, result });
        }
    }
    Ok(runs)
}

/// Violations of the class closure laws among formulas of size at most
/// `max` over two letters, at levels 1 to 3.
pub fn closure_violations(max: usize) -> Vec<String> {
    let leaves = [Formula::prop("p"), Formula::prop("q")];
    let all = enumerate(&leaves, &["x"], max);
    let mut bad = Vec::new();
    for f in all.iter().flatten() {
        for k in 1..=3 {
            let (e, u) = (in_e_plus(f, k), in_u_plus(f, k));
            let ok = match f {
                Formula::Bot | Formula::Atom(..) => true,
                Formula::Not(a) => u == in_e_plus(a, k) && e == in_u_plus(a, k),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    u == (in_u_plus(a, k) && in_u_plus(b, k)) && e == (in_e_plus(a, k) && in_e_plus(b, k))
                }
                Formula::Imp(a, b) => {
                    u == (in_e_plus(a, k) && in_u_plus(b, k)) && e == (in_u_plus(a, k) && in_e_plus(b, k))
                }
                Formula::Forall(_, a) => u == in_u_plus(a, k) && in_e_plus(f, k + 1) == u,
                Formula::Exists(_, a) => e == in_e_plus(a, k) && in_u_plus(f, k + 1) == e,
            };
            if !ok {
                bad.push(format!("{f} at {k}"));
            }
        }
    }
    bad
}


/// A prenex `ψ` over `u, v, w` and a `Π_k` formula `φ1` over `x, y, z` with
/// `k ≤ 1`, so the hygiene conditions of the conservation chain hold.
pub fn conservation_pair(r: &mut ChaCha8Rng) -> (Formula, Formula, usize) {
    let mut g = GenConfig::small();
    g.vars = vec!["u".into(), "v".into(), "w".into()];
    let kind = if r.gen() { ShapeKind::Sigma } else { ShapeKind::Pi };
    let (blocks, size) = (r.gen_range(0..=2), r.gen_range(1..=4));
    let psi = g.random_prenex(r, kind, blocks, size);
    let h = GenConfig::small();
    let k = r.gen_range(0..=1);
    let size = r.gen_range(1..=4);
    let m = h.random_qf(r, size);
    let phi1 = if k == 1 { Formula::forall("z", m) } else { m };
    (psi, phi1, k)
}
