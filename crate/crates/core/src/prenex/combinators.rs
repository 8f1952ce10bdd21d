//! Building blocks on prenex formulas: padding, contraction, the ∧/∨
//! combinators and the conversions for negated prenex formulas.

use super::chain::{Deriv, EquivalenceChain, ValidityScope};
use super::{Certificate, ClassArg, PrincipleTag};
use crate::classify::{prefix_shape, shape_fits, ShapeKind};
use crate::error::{Error, Result};
use crate::formula::{free_vars, fresh_var, substitute, Formula, Quant, Signature, Term, VarSet};

/// A prenex formula split into prefix and quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<(Quant, String)>,
    pub matrix: Formula,
}

impl Prenex {
    pub fn parse(phi: &Formula) -> Result<Prenex> {
        let (prefix, matrix) = phi.split_prefix();
        if !matrix.is_quantifier_free() {
            return Err(Error::NotPrenex);
        }
        Ok(Prenex { prefix, matrix: matrix.clone() })
    }

    pub fn to_formula(&self) -> Formula {
        Formula::with_prefix(&self.prefix, self.matrix.clone())
    }

    pub fn shape(&self) -> (ShapeKind, usize) {
        prefix_shape(&self.prefix)
    }

    /// Renames binders so that none lies in `avoid` and all are distinct;
    /// every name used is added to `avoid`.
    fn rename_apart(&self, avoid: &mut VarSet) -> Prenex {
        let mut matrix = self.matrix.clone();
        let mut prefix = Vec::with_capacity(self.prefix.len());
        let mut taken = avoid.clone();
        taken.extend(self.matrix.all_vars());
        taken.extend(self.prefix.iter().map(|(_, x)| x.clone()));
        for (i, (q, x)) in self.prefix.iter().enumerate() {
            let shadowed = self.prefix[i + 1..].iter().any(|(_, y)| y == x);
            let name = if avoid.contains(x) || shadowed {
                let n = fresh_var(x, &taken);
                if !shadowed {
                    matrix = substitute(&matrix, x, &Term::Var(n.clone()));
                }
                n
            } else {
                x.clone()
            };
            taken.insert(name.clone());
            avoid.insert(name.clone());
            prefix.push((*q, name));
        }
        Prenex { prefix, matrix }
    }

    /// Distributes the prefix over `k` alternating slots, the first one
    /// quantified as the lead of `kind`. Slots may stay empty.
    fn slots(&self, kind: ShapeKind, k: usize) -> Result<Vec<Vec<String>>> {
        let mut slots = vec![Vec::new(); k];
        let slot_q = |i: usize| if i.is_multiple_of(2) { kind.lead() } else { kind.lead().dual() };
        let mut cur = 0;
        let mut last: Option<Quant> = None;
        for (q, x) in &self.prefix {
            if last != Some(*q) {
                if last.is_some() {
                    cur += 1;
                }
                while cur < k && slot_q(cur) != *q {
                    cur += 1;
                }
                last = Some(*q);
            }
            if cur >= k {
                return Err(Error::ShapeMismatch(format!("{kind}_{k}")));
            }
            slots[cur].push(x.clone());
        }
        Ok(slots)
    }
}

fn slot_prefix(kind: ShapeKind, slots: &[Vec<String>]) -> Vec<(Quant, String)> {
    let mut out = Vec::new();
    for (i, s) in slots.iter().enumerate() {
        let q = if i % 2 == 0 { kind.lead() } else { kind.lead().dual() };
        out.extend(s.iter().map(|x| (q, x.clone())));
    }
    out
}

fn fits_cumulative(p: &Prenex, kind: ShapeKind, k: usize) -> bool {
    let (have, j) = p.shape();
    shape_fits(have, j, kind, k, true)
}

fn expect_shape(phi: &Formula, kind: ShapeKind, k: usize) -> Result<Prenex> {
    let p = Prenex::parse(phi)?;
    if !fits_cumulative(&p, kind, k) {
        return Err(Error::ShapeMismatch(format!("{kind}_{k}")));
    }
    Ok(p)
}

fn union_fv(a: &Formula, b: &Formula) -> VarSet {
    let mut s = free_vars(a);
    s.extend(free_vars(b));
    s
}

/// Adds dummy quantifiers until the strict shape is exactly `target`.
pub fn pad(phi: &Formula, target: (ShapeKind, usize)) -> Result<Formula> {
    let (kind, k) = target;
    let p = Prenex::parse(phi)?;
    let (have, j) = p.shape();
    if !shape_fits(have, j, kind, k, true) {
        return Err(Error::TargetBelowCurrentLevel {
            target: format!("{kind}_{k}"),
            current: format!("{have}_{j}"),
        });
    }
    let mut taken = phi.all_vars();
    let dummy = |taken: &mut VarSet| {
        let z = fresh_var("z", taken);
        taken.insert(z.clone());
        z
    };
    let mut prefix = p.prefix.clone();
    if k > 0 && prefix.first().map(|(q, _)| *q) != Some(kind.lead()) {
        prefix.insert(0, (kind.lead(), dummy(&mut taken)));
    }
    while prefix_shape(&prefix).1 < k {
        let q = prefix.last().map(|(q, _)| q.dual()).unwrap_or(kind.lead());
        prefix.push((q, dummy(&mut taken)));
    }
    Ok(Formula::with_prefix(&prefix, p.matrix))
}

/// Contracts every block of like quantifiers into a single quantifier over
/// a code, reading the members back with right-nested projections.
pub fn contract(phi: &Formula, sig: &Signature) -> Result<Formula> {
    Ok(contract_d(phi, sig)?.out)
}

pub(crate) fn contract_d(phi: &Formula, sig: &Signature) -> Result<Deriv> {
    if !sig.has_pairing() {
        return Err(Error::PairingSymbolsMissing);
    }
    let p = Prenex::parse(phi)?;
    let mut avoid = free_vars(phi);
    let p = p.rename_apart(&mut avoid);
    let mut taken = avoid;
    taken.extend(phi.all_vars());
    let mut matrix = p.matrix.clone();
    let mut prefix = Vec::new();
    let mut i = 0;
    while i < p.prefix.len() {
        let q = p.prefix[i].0;
        let mut j = i;
        while j < p.prefix.len() && p.prefix[j].0 == q {
            j += 1;
        }
        let block: Vec<&String> = p.prefix[i..j].iter().map(|(_, x)| x).collect();
        if block.len() == 1 {
            prefix.push((q, block[0].clone()));
        } else {
            let z = fresh_var("z", &taken);
            taken.insert(z.clone());
            let mut code = Term::Var(z.clone());
            for (n, v) in block.iter().enumerate() {
                let t = if n + 1 == block.len() {
                    code.clone()
                } else {
                    Term::app("proj1", vec![code.clone()])
                };
                matrix = substitute(&matrix, v, &t);
                code = Term::app("proj2", vec![code]);
            }
            prefix.push((q, z));
        }
        i = j;
    }
    let out = Formula::with_prefix(&prefix, matrix);
    let d = Deriv::refl(phi.clone());
    if out == *phi {
        return Ok(d);
    }
    Ok(d.then_scoped(out, "contract quantifier blocks", &[], ValidityScope::NeedsPairing))
}

/// Prenex form of a conjunction of two prenex formulas of the same shape.
pub fn conj_prenex(
    a: &Formula,
    b: &Formula,
    kind: ShapeKind,
    k: usize,
) -> Result<(Formula, Certificate)> {
    let d = conj_d(a, b, kind, k)?;
    let c = d.certificate();
    Ok((d.out, c))
}

pub(crate) fn conj_d(a: &Formula, b: &Formula, kind: ShapeKind, k: usize) -> Result<Deriv> {
    let pa = expect_shape(a, kind, k)?;
    let pb = expect_shape(b, kind, k)?;
    let start = Formula::and(a.clone(), b.clone());
    if pa.prefix.is_empty() && pb.prefix.is_empty() {
        return Ok(Deriv::refl(start));
    }
    let mut avoid = union_fv(a, b);
    let ra = pa.rename_apart(&mut avoid);
    let rb = pb.rename_apart(&mut avoid);
    let sa = ra.slots(kind, k)?;
    let sb = rb.slots(kind, k)?;
    let merged: Vec<Vec<String>> = sa
        .into_iter()
        .zip(sb)
        .map(|(mut x, y)| {
            x.extend(y);
            x
        })
        .collect();
    let out = Formula::with_prefix(
        &slot_prefix(kind, &merged),
        Formula::and(ra.matrix, rb.matrix),
    );
    Ok(Deriv::refl(start).then(out, "prenex conjunction", &[]))
}

/// Σ_k form of a disjunction of two Σ_k formulas, using a fresh selector
/// variable compared against `0`.
pub fn disj_sigma(a: &Formula, b: &Formula, k: usize) -> Result<(Formula, Certificate)> {
    let d = disj_sigma_d(a, b, k)?;
    let c = d.certificate();
    Ok((d.out, c))
}

pub(crate) fn disj_sigma_d(a: &Formula, b: &Formula, k: usize) -> Result<Deriv> {
    let pa = expect_shape(a, ShapeKind::Sigma, k)?;
    let pb = expect_shape(b, ShapeKind::Sigma, k)?;
    let start = Formula::or(a.clone(), b.clone());
    if k == 0 {
        return Ok(Deriv::refl(start));
    }
    let mut taken = a.all_vars();
    taken.extend(b.all_vars());
    let s = fresh_var("k", &taken);
    let mut avoid = union_fv(a, b);
    avoid.insert(s.clone());
    let ra = pa.rename_apart(&mut avoid);
    let rb = pb.rename_apart(&mut avoid);
    let sel = Formula::eq(Term::var(&s), Term::zero());
    let guard = |ma: Formula, mb: Formula| {
        Formula::and(Formula::imp(sel.clone(), ma), Formula::imp(Formula::not(sel.clone()), mb))
    };
    let mid = Formula::exists(&s, guard(ra.to_formula(), rb.to_formula()));
    let mut sa = ra.slots(ShapeKind::Sigma, k)?;
    let sb = rb.slots(ShapeKind::Sigma, k)?;
    for (x, y) in sa.iter_mut().zip(sb) {
        x.extend(y);
    }
    sa[0].insert(0, s.clone());
    let out = Formula::with_prefix(&slot_prefix(ShapeKind::Sigma, &sa), guard(ra.matrix, rb.matrix));
    Ok(Deriv::refl(start)
        .then_scoped(mid, "disjunction as selector", &[], ValidityScope::NeedsZeroOne)
        .then(out, "prenex selector form", &[]))
}

/// Π_k formula whose double negation matches that of the disjunction.
pub fn dn_disj_pi(a: &Formula, b: &Formula, k: usize) -> Result<(Formula, Certificate)> {
    let d = dn_disj_pi_d(a, b, k)?;
    let c = d.certificate();
    Ok((strip_nn(d.out), c))
}

pub(crate) fn strip_nn(f: Formula) -> Formula {
    match f {
        Formula::Not(x) => match *x {
            Formula::Not(y) => *y,
            other => unreachable!("expected a double negation, found ~{other}"),
        },
        other => unreachable!("expected a double negation, found {other}"),
    }
}

/// Renames `a` and `b` apart and splits off their leading `kind` blocks.
/// Returns the joint leading prefix and the two remainders, each of the
/// dual kind at level `k - 1`.
pub(crate) fn split_lead_pair(
    a: &Formula,
    b: &Formula,
    kind: ShapeKind,
    k: usize,
) -> Result<(Vec<(Quant, String)>, Formula, Formula)> {
    let pa = expect_shape(a, kind, k)?;
    let pb = expect_shape(b, kind, k)?;
    let mut avoid = union_fv(a, b);
    let ra = pa.rename_apart(&mut avoid);
    let rb = pb.rename_apart(&mut avoid);
    let sa = ra.slots(kind, k)?;
    let sb = rb.slots(kind, k)?;
    let rest = |p: &Prenex, slots: &[Vec<String>]| {
        Formula::with_prefix(&slot_prefix(kind.dual(), &slots[1..]), p.matrix.clone())
    };
    let outer = sa[0]
        .iter()
        .chain(sb[0].iter())
        .map(|x| (kind.lead(), x.clone()))
        .collect();
    Ok((outer, rest(&ra, &sa), rest(&rb, &sb)))
}

/// Derivation from `¬¬(a ∨ b)` to `¬¬φ` with `φ ∈ Π_k`; at `k = 0` the
/// disjunction is already quantifier-free and the derivation is trivial.
pub(crate) fn dn_disj_pi_d(a: &Formula, b: &Formula, k: usize) -> Result<Deriv> {
    expect_shape(a, ShapeKind::Pi, k)?;
    expect_shape(b, ShapeKind::Pi, k)?;
    let start = Formula::nn(Formula::or(a.clone(), b.clone()));
    if k == 0 {
        return Ok(Deriv::refl(start));
    }
    let (outer, rho_a, rho_b) = split_lead_pair(a, b, ShapeKind::Pi, k)?;
    let pulled = Formula::with_prefix(&outer, Formula::or(rho_a.clone(), rho_b.clone()));
    let inner = disj_sigma_d(&rho_a, &rho_b, k - 1)?;
    let wrap = |f: Formula| Formula::nn(Formula::with_prefix(&outer, f));
    Ok(Deriv::refl(start)
        .then(
            Formula::nn(pulled),
            "pull universal blocks out of double negated disjunction",
            &[PrincipleTag::dne(ClassArg::Sigma, k - 1).nn()],
        )
        .lift(inner, wrap))
}

fn dual_prenex(p: &Prenex) -> Formula {
    let prefix: Vec<(Quant, String)> = p.prefix.iter().map(|(q, x)| (q.dual(), x.clone())).collect();
    Formula::with_prefix(&prefix, Formula::not(p.matrix.clone()))
}

/// Prenex form of `¬φ` for prenex `φ`: the dual prefix over the negated
/// matrix.
pub fn neg_prenex(phi: &Formula, k: usize) -> Result<(Formula, Certificate)> {
    let d = neg_prenex_d(phi, k)?;
    let c = d.certificate();
    Ok((d.out, c))
}

pub(crate) fn neg_prenex_d(phi: &Formula, k: usize) -> Result<Deriv> {
    let p = Prenex::parse(phi)?;
    let (have, j) = p.shape();
    if !(shape_fits(have, j, ShapeKind::Pi, k, true) || shape_fits(have, j, ShapeKind::Sigma, k, true)) {
        return Err(Error::ShapeMismatch(format!("Σ_{k} or Π_{k}")));
    }
    let start = Formula::not(phi.clone());
    if j == 0 {
        return Ok(Deriv::refl(start));
    }
    let tag = match have {
        ShapeKind::Pi => PrincipleTag::dne(ClassArg::Sigma, j),
        ShapeKind::Sigma => PrincipleTag::dne(ClassArg::Sigma, j - 1),
    };
    Ok(Deriv::refl(start).then(dual_prenex(&p), "push negation through prefix", &[tag]))
}

/// For `φ ∈ Π_k`, a `ψ ∈ Σ_k` with `¬φ ↔ ¬¬ψ`.
pub fn neg_pi_nn(phi: &Formula) -> Result<(Formula, Certificate)> {
    let d = neg_pi_nn_d(phi)?;
    let c = d.certificate();
    Ok((strip_nn(d.out), c))
}

/// Derivation from `¬φ` to `¬¬ψ`.
pub(crate) fn neg_pi_nn_d(phi: &Formula) -> Result<Deriv> {
    let p = Prenex::parse(phi)?;
    let (have, j) = p.shape();
    let level = if have == ShapeKind::Sigma && j > 0 { j + 1 } else { j };
    let psi = dual_prenex(&p);
    Ok(Deriv::refl(Formula::not(phi.clone())).then(
        Formula::nn(psi),
        "negated Π as double negated Σ",
        &[PrincipleTag::dne(ClassArg::Sigma, level).nn()],
    ))
}

/// Double negates every step of a chain, and every tag it uses.
pub fn nn_lift(chain: &EquivalenceChain) -> EquivalenceChain {
    let d = Deriv { start: chain.start.clone(), out: chain.end().clone(), steps: chain.steps.clone() };
    d.nn().into_chain()
}
