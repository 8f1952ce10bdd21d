//! Terms, formulas and the variable bookkeeping shared by every other module.

mod parse;
mod print;
mod signature;

use std::collections::BTreeSet;

pub use parse::{parse_formula, parse_term};
pub use signature::{FuncInterp, FuncSym, PredInterp, PredSym, Signature};

use crate::error::{Error, Result};

/// Set of variable names, ordered so that iteration is deterministic.
pub type VarSet = BTreeSet<String>;

/// Name of the placeholder predicate used by the A-translation.
pub const STAR: &str = "star";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::App(c.to_string(), Vec::new())
    }

    pub fn zero() -> Term {
        Term::constant("0")
    }

    pub fn one() -> Term {
        Term::constant("1")
    }

    fn collect_vars(&self, out: &mut VarSet) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> VarSet {
        let mut s = VarSet::new();
        self.collect_vars(&mut s);
        s
    }

    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }

    /// Deepest nesting of `proj1`/`proj2` applications.
    pub fn proj_depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(f, args) => {
                let inner = args.iter().map(Term::proj_depth).max().unwrap_or(0);
                if f == "proj1" || f == "proj2" {
                    inner + 1
                } else {
                    inner
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// Quantifier kind, used by prefixes and shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    All,
    Ex,
}

impl Quant {
    pub fn dual(self) -> Quant {
        match self {
            Quant::All => Quant::Ex,
            Quant::Ex => Quant::All,
        }
    }
}

impl Formula {
    pub fn atom(p: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(p.to_string(), args)
    }

    pub fn prop(p: &str) -> Formula {
        Formula::Atom(p.to_string(), Vec::new())
    }

    pub fn star() -> Formula {
        Formula::prop(STAR)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom("eq".into(), vec![a, b])
    }

    /// `¬⊥`, the canonical truth constant.
    pub fn top() -> Formula {
        Formula::not(Formula::Bot)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn nn(a: Formula) -> Formula {
        Formula::not(Formula::not(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    pub fn quant(q: Quant, x: &str, a: Formula) -> Formula {
        match q {
            Quant::All => Formula::forall(x, a),
            Quant::Ex => Formula::exists(x, a),
        }
    }

    /// Wraps `body` in `prefix`, outermost first.
    pub fn with_prefix(prefix: &[(Quant, String)], body: Formula) -> Formula {
        prefix
            .iter()
            .rev()
            .fold(body, |acc, (q, x)| Formula::quant(*q, x, acc))
    }

    /// Number of AST nodes; terms count as part of their atom.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(..) => 1,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn contains_or(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(..) => false,
            Formula::Or(..) => true,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.contains_or(),
            Formula::And(a, b) | Formula::Imp(a, b) => a.contains_or() || b.contains_or(),
        }
    }

    pub fn contains_atom(&self, p: &str) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Atom(q, _) => q == p,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.contains_atom(p),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_atom(p) || b.contains_atom(p)
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> VarSet {
        let mut s = VarSet::new();
        self.collect_all_vars(&mut s);
        s
    }

    fn collect_all_vars(&self, out: &mut VarSet) {
        match self {
            Formula::Bot => {}
            Formula::Atom(_, ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(a) => a.collect_all_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_all_vars(out);
            }
        }
    }

    /// Names bound by some quantifier inside the formula.
    pub fn bound_vars(&self) -> VarSet {
        let mut s = VarSet::new();
        self.collect_bound(&mut s);
        s
    }

    fn collect_bound(&self, out: &mut VarSet) {
        match self {
            Formula::Bot | Formula::Atom(..) => {}
            Formula::Not(a) => a.collect_bound(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_bound(out);
                b.collect_bound(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.collect_bound(out);
            }
        }
    }

    /// Predicate symbols with the arity of their first use.
    pub fn predicates(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        self.visit_atoms(&mut |p, ts| out.push((p.to_string(), ts.len())));
        out.sort();
        out.dedup();
        out
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&str, &[Term])) {
        match self {
            Formula::Bot => {}
            Formula::Atom(p, ts) => f(p, ts),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    pub fn proj_depth(&self) -> usize {
        let mut d = 0;
        self.visit_atoms(&mut |_, ts| {
            for t in ts {
                d = d.max(t.proj_depth());
            }
        });
        d
    }

    /// Rewrites every `¬φ` as `φ → ⊥`.
    pub fn neg_to_imp(&self) -> Formula {
        match self {
            Formula::Bot | Formula::Atom(..) => self.clone(),
            Formula::Not(a) => Formula::imp(a.neg_to_imp(), Formula::Bot),
            Formula::And(a, b) => Formula::and(a.neg_to_imp(), b.neg_to_imp()),
            Formula::Or(a, b) => Formula::or(a.neg_to_imp(), b.neg_to_imp()),
            Formula::Imp(a, b) => Formula::imp(a.neg_to_imp(), b.neg_to_imp()),
            Formula::Forall(x, a) => Formula::forall(x, a.neg_to_imp()),
            Formula::Exists(x, a) => Formula::exists(x, a.neg_to_imp()),
        }
    }

    /// Splits a maximal quantifier prefix off the formula.
    pub fn split_prefix(&self) -> (Vec<(Quant, String)>, &Formula) {
        let mut prefix = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Forall(x, a) => {
                    prefix.push((Quant::All, x.clone()));
                    cur = a;
                }
                Formula::Exists(x, a) => {
                    prefix.push((Quant::Ex, x.clone()));
                    cur = a;
                }
                _ => return (prefix, cur),
            }
        }
    }

    pub fn is_prenex(&self) -> bool {
        self.split_prefix().1.is_quantifier_free()
    }
}

pub fn free_vars(phi: &Formula) -> VarSet {
    let mut out = VarSet::new();
    fv_into(phi, &mut Vec::new(), &mut out);
    out
}

fn fv_into<'a>(phi: &'a Formula, bound: &mut Vec<&'a str>, out: &mut VarSet) {
    match phi {
        Formula::Bot => {}
        Formula::Atom(_, ts) => {
            for t in ts {
                for v in t.vars() {
                    if !bound.contains(&v.as_str()) {
                        out.insert(v);
                    }
                }
            }
        }
        Formula::Not(a) => fv_into(a, bound, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            fv_into(a, bound, out);
            fv_into(b, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x);
            fv_into(a, bound, out);
            bound.pop();
        }
    }
}

/// First name of the form `root`, `root'`, `root''`, ... not in `avoid`,
/// where `root` is `base` with trailing primes removed. `base` itself is
/// tried first.
pub fn fresh_var(base: &str, avoid: &VarSet) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let root = base.trim_end_matches('\'');
    let root = if root.is_empty() { "v" } else { root };
    let mut cand = format!("{root}'");
    while avoid.contains(&cand) {
        cand.push('\'');
    }
    cand
}

/// Capture-avoiding substitution of `t` for the free occurrences of `x`.
pub fn substitute(phi: &Formula, x: &str, t: &Term) -> Formula {
    let tv = t.vars();
    subst_rec(phi, x, t, &tv)
}

fn subst_rec(phi: &Formula, x: &str, t: &Term, tv: &VarSet) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Atom(p, ts) => {
            Formula::Atom(p.clone(), ts.iter().map(|s| s.substitute(x, t)).collect())
        }
        Formula::Not(a) => Formula::not(subst_rec(a, x, t, tv)),
        Formula::And(a, b) => Formula::and(subst_rec(a, x, t, tv), subst_rec(b, x, t, tv)),
        Formula::Or(a, b) => Formula::or(subst_rec(a, x, t, tv), subst_rec(b, x, t, tv)),
        Formula::Imp(a, b) => Formula::imp(subst_rec(a, x, t, tv), subst_rec(b, x, t, tv)),
        Formula::Forall(y, a) | Formula::Exists(y, a) => {
            let q = if matches!(phi, Formula::Forall(..)) {
                Quant::All
            } else {
                Quant::Ex
            };
            if y == x || !free_vars(a).contains(x) {
                return phi.clone();
            }
            if tv.contains(y) {
                let mut avoid = tv.clone();
                avoid.extend(free_vars(a));
                avoid.insert(x.to_string());
                let y2 = fresh_var(y, &avoid);
                let renamed = substitute(a, y, &Term::Var(y2.clone()));
                Formula::quant(q, &y2, subst_rec(&renamed, x, t, tv))
            } else {
                Formula::quant(q, y, subst_rec(a, x, t, tv))
            }
        }
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_rec(a, b, &mut Vec::new(), &mut Vec::new())
}

fn var_eq(x: &str, y: &str, ea: &[&str], eb: &[&str]) -> bool {
    let ia = ea.iter().rposition(|v| *v == x);
    let ib = eb.iter().rposition(|v| *v == y);
    match (ia, ib) {
        (None, None) => x == y,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

fn term_alpha(s: &Term, t: &Term, ea: &[&str], eb: &[&str]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => var_eq(x, y, ea, eb),
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(a, b)| term_alpha(a, b, ea, eb))
        }
        _ => false,
    }
}

fn alpha_rec<'a>(
    a: &'a Formula,
    b: &'a Formula,
    ea: &mut Vec<&'a str>,
    eb: &mut Vec<&'a str>,
) -> bool {
    match (a, b) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(s, t)| term_alpha(s, t, ea, eb))
        }
        (Formula::Not(x), Formula::Not(y)) => alpha_rec(x, y, ea, eb),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            alpha_rec(a1, b1, ea, eb) && alpha_rec(a2, b2, ea, eb)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1))
        | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            ea.push(x);
            eb.push(y);
            let r = alpha_rec(a1, b1, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        _ => false,
    }
}

/// Checks that every symbol is declared with the arity it is used at.
pub fn well_formed(phi: &Formula, sig: &Signature) -> Result<()> {
    let mut res = Ok(());
    phi.visit_atoms(&mut |p, ts| {
        if res.is_err() {
            return;
        }
        res = check_pred(p, ts.len(), sig).and_then(|_| ts.iter().try_for_each(|t| check_term(t, sig)));
    });
    res
}

fn check_pred(p: &str, n: usize, sig: &Signature) -> Result<()> {
    match sig.predicates.get(p) {
        None => Err(Error::UnknownSymbol(p.to_string())),
        Some(s) if s.arity != n => Err(Error::ArityMismatch {
            name: p.to_string(),
            expected: s.arity,
            found: n,
        }),
        Some(_) => Ok(()),
    }
}

fn check_term(t: &Term, sig: &Signature) -> Result<()> {
    match t {
        Term::Var(_) => Ok(()),
        Term::App(f, args) => {
            match sig.functions.get(f) {
                None => return Err(Error::UnknownSymbol(f.clone())),
                Some(s) if s.arity != args.len() => {
                    return Err(Error::ArityMismatch {
                        name: f.clone(),
                        expected: s.arity,
                        found: args.len(),
                    })
                }
                Some(_) => {}
            }
            args.iter().try_for_each(|a| check_term(a, sig))
        }
    }
}
