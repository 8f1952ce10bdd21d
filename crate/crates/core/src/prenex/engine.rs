//! Structural prenexation of E_k^+ and U_k^+ formulas.
//!
//! Five mutually recursive procedures share one induction:
//!
//! * `pe`: `φ ∈ E_k^+` to `Σ_k`, chain `φ ⇝ φ'`;
//! * `pu`: `φ ∈ U_k^+` to `Π_k`, chain `φ ⇝ φ'`;
//! * `ne`: `φ ∈ E_k^+`, chain `¬φ ⇝ ¬¬φ'` with `φ' ∈ Π_k`;
//! * `na` and `nu`: the double negated variants, chains `¬φ ⇝ ¬¬φ'` and
//!   `¬¬φ ⇝ ¬¬φ'`, paid for with double negation shift only.
//!
//! With `df` set the procedures handle ∨-free input, never introduce ∨,
//! and stay within the cheaper ∨-free budgets.

use serde::{Deserialize, Serialize};

use super::chain::{Deriv, EquivalenceChain};
use super::combinators::{conj_d, contract_d, disj_sigma_d, dn_disj_pi_d, neg_pi_nn_d, neg_prenex_d, split_lead_pair, strip_nn};
use super::{budget_leq, Certificate, ClassArg, PrincipleTag};
use crate::classify::{class_membership, fits, ShapeKind};
use crate::error::{Error, Result};
use crate::formula::{Formula, Quant, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    E,
    U,
}

/// Output of a public transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transformed {
    pub output: Formula,
    pub certificate: Certificate,
    pub chain: EquivalenceChain,
}

impl Transformed {
    fn from_deriv(d: Deriv, output: Formula) -> Transformed {
        Transformed { certificate: d.certificate(), output, chain: d.into_chain() }
    }

    /// Contracts each quantifier block of the output into one quantifier and
    /// records the step. Needs pairing symbols in `sig`.
    pub fn contracted(mut self, sig: &Signature) -> Result<Transformed> {
        let d = contract_d(&self.output, sig)?;
        self.output = d.out;
        self.chain.steps.extend(d.steps);
        Ok(self)
    }
}

const fn dne(c: ClassArg, k: usize) -> PrincipleTag {
    PrincipleTag::dne(c, k)
}

fn sub1(k: usize) -> usize {
    k.checked_sub(1).expect("quantified formulas only reach here at k >= 1")
}

fn with_prefix(prefix: &[(Quant, String)], f: Formula) -> Formula {
    Formula::with_prefix(prefix, f)
}

/// `φ ∈ E_k^+` to Σ_k.
fn pe(phi: &Formula, k: usize, df: bool) -> Result<Deriv> {
    if fits(phi, ShapeKind::Sigma, k, true) {
        return Ok(Deriv::refl(phi.clone()));
    }
    let d = Deriv::refl(phi.clone());
    Ok(match phi {
        Formula::Bot | Formula::Atom(..) => d,
        Formula::And(a, b) => {
            let da = pe(a, k, df)?;
            let db = pe(b, k, df)?;
            let (a1, b1) = (da.out.clone(), db.out.clone());
            let b0 = (**b).clone();
            let d = d
                .lift(da, |x| Formula::and(x, b0.clone()))
                .lift(db, |x| Formula::and(a1.clone(), x));
            d.append(conj_d(&a1, &b1, ShapeKind::Sigma, k)?)
        }
        Formula::Or(a, b) => {
            if df {
                return Err(Error::ContainsOr);
            }
            let da = pe(a, k, df)?;
            let db = pe(b, k, df)?;
            let (a1, b1) = (da.out.clone(), db.out.clone());
            let b0 = (**b).clone();
            let d = d
                .lift(da, |x| Formula::or(x, b0.clone()))
                .lift(db, |x| Formula::or(a1.clone(), x));
            let (outer, ra, rb) = split_lead_pair(&a1, &b1, ShapeKind::Sigma, k)?;
            let joined = Formula::or(ra, rb);
            let inner = pu(&joined, sub1(k), df)?;
            d.then(with_prefix(&outer, joined), "pull existential blocks out of disjunction", &[])
                .lift(inner, |x| with_prefix(&outer, x))
        }
        Formula::Imp(a, b) => {
            let db = pe(b, k, df)?;
            let b1 = db.out.clone();
            let a0 = (**a).clone();
            let d = d.lift(db, |x| Formula::imp(a0.clone(), x));
            let nb1 = Formula::nn(b1.clone());
            let (d, a1) = if df {
                let d = d.then(Formula::imp(a0.clone(), nb1.clone()), "stabilise consequent", &[dne(ClassArg::Sigma, k)]);
                let da = pu(&a0, k, df)?;
                let a1 = da.out.clone();
                (d.lift(da, |x| Formula::imp(x, nb1.clone())), a1)
            } else {
                let d = d.then(
                    Formula::imp(Formula::nn(a0.clone()), nb1.clone()),
                    "double negate both sides",
                    &[dne(ClassArg::Sigma, k)],
                );
                let da = nu(&a0, k)?;
                let a1 = strip_nn(da.out.clone());
                (d.lift(da, |x| Formula::imp(x, nb1.clone())), a1)
            };
            // a1 = ∀x̄1 ρ1 ∈ Π_k and b1 = ∃x̄2 ρ2 ∈ Σ_k.
            let (outer, ra, rb) = split_lead_pair(&nega_dual(&a1, ShapeKind::Pi, k)?, &b1, ShapeKind::Sigma, k)?;
            let ra = undo_dual(&ra);
            let body = Formula::imp(Formula::not(rb), Formula::not(ra));
            let nn_pre = |x: Formula| Formula::nn(with_prefix(&outer, x));
            let inner = pu(&body, sub1(k), df)?;
            let xi = inner.out.clone();
            d.then(
                nn_pre(body.clone()),
                "merge prefixes under double negation",
                &[dne(ClassArg::Pi, sub1(k)), dne(ClassArg::Sigma, sub1(k))],
            )
            .lift(inner, nn_pre)
            .then(with_prefix(&outer, xi), "remove double negation", &[dne(ClassArg::Sigma, k)])
        }
        Formula::Not(a) => {
            let a0 = (**a).clone();
            let (d, a1) = if df {
                let da = pu(&a0, k, df)?;
                let a1 = da.out.clone();
                (d.lift(da, Formula::not), a1)
            } else {
                let d = d.then(Formula::not(Formula::nn(a0.clone())), "triple negation", &[]);
                let da = nu(&a0, k)?;
                let a1 = strip_nn(da.out.clone());
                let d = d.lift(da, Formula::not).then(Formula::not(a1.clone()), "triple negation", &[]);
                (d, a1)
            };
            d.append(neg_prenex_d(&a1, k)?)
        }
        Formula::Forall(..) => pu(phi, sub1(k), df)?,
        Formula::Exists(x, a) => {
            let da = pe(a, k, df)?;
            d.lift(da, |f| Formula::exists(x, f))
        }
    })
}

/// Views a Π_k formula `∀x̄ ρ` as the Σ_k formula `∃x̄ ¬ρ'` (or back) with the same
/// binders, so that existential blocks can be split off uniformly; the
/// negation is removed again by [`undo_dual`].
fn nega_dual(a: &Formula, kind: ShapeKind, k: usize) -> Result<Formula> {
    if !fits(a, kind, k, true) {
        return Err(Error::ShapeMismatch(format!("{kind}_{k}")));
    }
    let (prefix, matrix) = a.split_prefix();
    let dual: Vec<(Quant, String)> = prefix.iter().map(|(q, x)| (q.dual(), x.clone())).collect();
    Ok(Formula::with_prefix(&dual, Formula::not(matrix.clone())))
}

fn undo_dual(r: &Formula) -> Formula {
    let (prefix, matrix) = r.split_prefix();
    let dual: Vec<(Quant, String)> = prefix.iter().map(|(q, x)| (q.dual(), x.clone())).collect();
    let m = match matrix {
        Formula::Not(m) => (**m).clone(),
        other => unreachable!("dual view keeps a negated matrix, found {other}"),
    };
    Formula::with_prefix(&dual, m)
}

/// `φ ∈ U_k^+` to Π_k.
fn pu(phi: &Formula, k: usize, df: bool) -> Result<Deriv> {
    if fits(phi, ShapeKind::Pi, k, true) {
        return Ok(Deriv::refl(phi.clone()));
    }
    let d = Deriv::refl(phi.clone());
    Ok(match phi {
        Formula::Bot | Formula::Atom(..) => d,
        Formula::And(a, b) => {
            let da = pu(a, k, df)?;
            let db = pu(b, k, df)?;
            let (a1, b1) = (da.out.clone(), db.out.clone());
            let b0 = (**b).clone();
            let d = d
                .lift(da, |x| Formula::and(x, b0.clone()))
                .lift(db, |x| Formula::and(a1.clone(), x));
            d.append(conj_d(&a1, &b1, ShapeKind::Pi, k)?)
        }
        Formula::Or(a, b) => {
            if df {
                return Err(Error::ContainsOr);
            }
            let da = pu(a, k, df)?;
            let db = pu(b, k, df)?;
            let (a1, b1) = (da.out.clone(), db.out.clone());
            let b0 = (**b).clone();
            let d = d
                .lift(da, |x| Formula::or(x, b0.clone()))
                .lift(db, |x| Formula::or(a1.clone(), x));
            let (outer, ra, rb) = split_lead_pair(&a1, &b1, ShapeKind::Pi, k)?;
            let inner = disj_sigma_d(&ra, &rb, sub1(k))?;
            d.then(
                with_prefix(&outer, Formula::or(ra, rb)),
                "pull universal blocks out of disjunction",
                &[dne(ClassArg::PiOrPi, k), dne(ClassArg::Sigma, sub1(k))],
            )
            .lift(inner, |x| with_prefix(&outer, x))
        }
        Formula::Imp(a, b) => {
            if let Some(shifted) = pu_imp_shift(phi, a, b, k, df)? {
                return Ok(shifted);
            }
            let db = pu(b, k, df)?;
            let b1 = db.out.clone();
            let a0 = (**a).clone();
            let nb1 = Formula::nn(b1.clone());
            let d = d.lift(db, |x| Formula::imp(a0.clone(), x)).then(
                Formula::imp(Formula::nn(a0.clone()), nb1.clone()),
                "double negate both sides",
                &[dne(ClassArg::Pi, k)],
            );
            let da = ne(&a0, k, df)?;
            let a1 = strip_nn(da.out.clone());
            let d = d.lift(da, |x| Formula::imp(Formula::not(x), nb1.clone()));
            let (outer, ra, rb) = split_lead_pair(&a1, &b1, ShapeKind::Pi, k)?;
            let body = Formula::imp(Formula::not(ra), rb);
            let nn_pre = |x: Formula| Formula::nn(with_prefix(&outer, x));
            let inner = pe(&body, sub1(k), df)?;
            let xi = inner.out.clone();
            d.then(
                nn_pre(body.clone()),
                "merge prefixes under double negation",
                &[dne(ClassArg::Sigma, sub1(k)), dne(ClassArg::Pi, k)],
            )
            .lift(inner.nn_tags(), nn_pre)
            .then(with_prefix(&outer, xi), "remove double negation", &[dne(ClassArg::Pi, k)])
        }
        Formula::Not(a) => {
            let da = ne(a, k, df)?;
            let a1 = strip_nn(da.out.clone());
            d.append(da).then(a1, "remove double negation", &[dne(ClassArg::Pi, k)])
        }
        Formula::Forall(x, a) => {
            let da = pu(a, k, df)?;
            d.lift(da, |f| Formula::forall(x, f))
        }
        Formula::Exists(..) => pe(phi, sub1(k), df)?,
    })
}

/// `∃x̄α → ∀ȳβ ↔ ∀x̄∀ȳ(α → β)` holds outright, so when the antecedent
/// prenexes for free the double negation detour is skipped.
fn pu_imp_shift(phi: &Formula, a: &Formula, b: &Formula, k: usize, df: bool) -> Result<Option<Deriv>> {
    let da = pe(a, k, df)?;
    if !budget_leq(&da.certificate(), &Certificate::empty()) {
        return Ok(None);
    }
    let db = pu(b, k, df)?;
    let (a1, b1) = (da.out.clone(), db.out.clone());
    let b0 = b.clone();
    let d = Deriv::refl(phi.clone())
        .lift(da, |x| Formula::imp(x, b0.clone()))
        .lift(db, |x| Formula::imp(a1.clone(), x));
    let (outer, ra, rb) = split_lead_pair(&nega_dual(&a1, ShapeKind::Sigma, k)?, &b1, ShapeKind::Pi, k)?;
    let body = Formula::imp(undo_dual(&ra), rb);
    let inner = pe(&body, sub1(k), df)?;
    let pre = |x: Formula| with_prefix(&outer, x);
    Ok(Some(
        d.then(pre(body.clone()), "shift quantifiers out of implication", &[])
            .lift(inner, pre),
    ))
}

/// `φ ∈ E_k^+`: chain `¬φ ⇝ ¬¬φ'` with `φ' ∈ Π_k`.
fn ne(phi: &Formula, k: usize, df: bool) -> Result<Deriv> {
    let start = Formula::not(phi.clone());
    let d = Deriv::refl(start.clone());
    if phi.is_quantifier_free() {
        return Ok(d.then(Formula::nn(start), "triple negation", &[]));
    }
    Ok(match phi {
        Formula::Bot | Formula::Atom(..) => unreachable!("quantifier-free"),
        Formula::And(a, b) if df => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::not(Formula::and(Formula::nn(a0.clone()), Formula::nn(b0.clone()))),
                "double negate conjuncts",
                &[],
            );
            let da = ne(&a0, k, df)?;
            let a1 = strip_nn(da.out.clone());
            let nb0 = Formula::nn(b0.clone());
            let d = d.lift(da, |x| Formula::not(Formula::and(Formula::not(x), nb0.clone())));
            let db = ne(&b0, k, df)?;
            let b1 = strip_nn(db.out.clone());
            let na1 = Formula::not(Formula::nn(a1.clone()));
            let d = d.lift(db, |x| Formula::not(Formula::and(na1.clone(), Formula::not(x))));
            let (outer, ra, rb) = split_lead_pair(&a1, &b1, ShapeKind::Pi, k)?;
            let body = Formula::imp(Formula::not(ra), rb);
            let nn_pre = |x: Formula| Formula::nn(with_prefix(&outer, x));
            let inner = pe(&body, sub1(k), df)?;
            d.then(
                nn_pre(body.clone()),
                "merge universal blocks under double negation",
                &[dne(ClassArg::Sigma, sub1(k)).nn()],
            )
            .lift(inner.nn_tags(), nn_pre)
        }
        Formula::And(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::nn(Formula::or(Formula::not(a0.clone()), Formula::not(b0.clone()))),
                "negated conjunction as double negated disjunction",
                &[],
            );
            let da = ne(&a0, k, df)?;
            let a1 = strip_nn(da.out.clone());
            let nb0 = Formula::not(b0.clone());
            let d = d.lift(da, |x| Formula::nn(Formula::or(x, nb0.clone())));
            let db = ne(&b0, k, df)?;
            let b1 = strip_nn(db.out.clone());
            let nna1 = Formula::nn(a1.clone());
            let d = d
                .lift(db, |x| Formula::nn(Formula::or(nna1.clone(), x)))
                .then(Formula::nn(Formula::or(a1.clone(), b1.clone())), "drop inner double negations", &[]);
            d.append(dn_disj_pi_d(&a1, &b1, k)?)
        }
        Formula::Or(a, b) => {
            if df {
                return Err(Error::ContainsOr);
            }
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::and(Formula::not(a0.clone()), Formula::not(b0.clone())),
                "negated disjunction",
                &[],
            );
            ne_conj_tail(d, DnSub::Ne(a0), DnSub::Ne(b0), k, df)?
        }
        Formula::Imp(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::and(Formula::nn(a0.clone()), Formula::not(b0.clone())),
                "negated implication",
                &[],
            );
            ne_conj_tail(d, DnSub::NnPu(a0), DnSub::Ne(b0), k, df)?
        }
        Formula::Not(a) => d.append(pu(a, k, df)?.nn()),
        Formula::Forall(..) => {
            let d = d.then(Formula::not(Formula::nn(phi.clone())), "triple negation", &[]);
            let da = pu(phi, sub1(k), df)?.nn();
            let a1 = strip_nn(da.out.clone());
            d.lift(da, Formula::not)
                .then(Formula::not(a1.clone()), "triple negation", &[])
                .append(neg_pi_nn_d(&a1)?)
        }
        Formula::Exists(x, a) => {
            let d = d.then(Formula::forall(x, Formula::not((**a).clone())), "negated existential", &[]);
            let da = ne(a, k, df)?;
            let a1 = strip_nn(da.out.clone());
            d.lift(da, |f| Formula::forall(x, f)).then(
                Formula::nn(Formula::forall(x, a1)),
                "double negation out of universal",
                &[dne(ClassArg::Pi, k).nn()],
            )
        }
    })
}

/// Sub-derivation feeding one conjunct of `¬¬(φ1' ∧ φ2')`.
enum DnSub {
    /// Conjunct `¬φ`, handled by `ne`.
    Ne(Formula),
    /// Conjunct `¬¬φ`, handled by double negating `pu`.
    NnPu(Formula),
    /// Conjunct `¬φ`, handled by `na`.
    Na(Formula),
    /// Conjunct `¬¬φ`, handled by `nu`.
    Nu(Formula),
}

impl DnSub {
    fn conjunct(&self) -> Formula {
        match self {
            DnSub::Ne(f) | DnSub::Na(f) => Formula::not(f.clone()),
            DnSub::NnPu(f) | DnSub::Nu(f) => Formula::nn(f.clone()),
        }
    }

    fn run(&self, k: usize, df: bool) -> Result<Deriv> {
        match self {
            DnSub::Ne(f) => ne(f, k, df),
            DnSub::NnPu(f) => Ok(pu(f, k, df)?.nn()),
            DnSub::Na(f) => na(f, k),
            DnSub::Nu(f) => nu(f, k),
        }
    }
}

/// From `X ∧ Y` (the conjuncts of `a` and `b`) to `¬¬φ'` for a Π_k `φ'`.
fn ne_conj_tail(d: Deriv, a: DnSub, b: DnSub, k: usize, df: bool) -> Result<Deriv> {
    let da = a.run(k, df)?;
    let a1 = strip_nn(da.out.clone());
    let yb = b.conjunct();
    let d = d.lift(da, |x| Formula::and(x, yb.clone()));
    let db = b.run(k, df)?;
    let b1 = strip_nn(db.out.clone());
    let nna1 = Formula::nn(a1.clone());
    let d = d
        .lift(db, |x| Formula::and(nna1.clone(), x))
        .then(Formula::nn(Formula::and(a1.clone(), b1.clone())), "double negation over conjunction", &[]);
    Ok(d.append(conj_d(&a1, &b1, ShapeKind::Pi, k)?.nn()))
}

/// `φ ∈ E_k^+`: chain `¬φ ⇝ ¬¬φ'` with `φ' ∈ Π_k`, using only
/// double negation shift.
fn na(phi: &Formula, k: usize) -> Result<Deriv> {
    let start = Formula::not(phi.clone());
    let d = Deriv::refl(start.clone());
    if phi.is_quantifier_free() {
        return Ok(d.then(Formula::nn(start), "triple negation", &[]));
    }
    Ok(match phi {
        Formula::Bot | Formula::Atom(..) => unreachable!("quantifier-free"),
        Formula::And(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::nn(Formula::or(Formula::not(a0.clone()), Formula::not(b0.clone()))),
                "negated conjunction as double negated disjunction",
                &[],
            );
            let da = na(&a0, k)?;
            let a1 = strip_nn(da.out.clone());
            let nb0 = Formula::not(b0.clone());
            let d = d.lift(da, |x| Formula::nn(Formula::or(x, nb0.clone())));
            let db = na(&b0, k)?;
            let b1 = strip_nn(db.out.clone());
            let nna1 = Formula::nn(a1.clone());
            let d = d
                .lift(db, |x| Formula::nn(Formula::or(nna1.clone(), x)))
                .then(Formula::nn(Formula::or(a1.clone(), b1.clone())), "drop inner double negations", &[]);
            d.append(dn_disj_pi_d(&a1, &b1, k)?)
        }
        Formula::Or(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::and(Formula::not(a0.clone()), Formula::not(b0.clone())),
                "negated disjunction",
                &[],
            );
            ne_conj_tail(d, DnSub::Na(a0), DnSub::Na(b0), k, false)?
        }
        Formula::Imp(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::and(Formula::nn(a0.clone()), Formula::not(b0.clone())),
                "negated implication",
                &[],
            );
            ne_conj_tail(d, DnSub::Nu(a0), DnSub::Na(b0), k, false)?
        }
        Formula::Not(a) => d.append(nu(a, k)?),
        Formula::Forall(..) => {
            let d = d.then(Formula::not(Formula::nn(phi.clone())), "triple negation", &[]);
            let da = nu(phi, sub1(k))?;
            let a1 = strip_nn(da.out.clone());
            d.lift(da, Formula::not)
                .then(Formula::not(a1.clone()), "triple negation", &[])
                .append(neg_pi_nn_d(&a1)?)
        }
        Formula::Exists(x, a) => {
            let d = d.then(Formula::forall(x, Formula::not((**a).clone())), "negated existential", &[]);
            let da = na(a, k)?;
            let a1 = strip_nn(da.out.clone());
            d.lift(da, |f| Formula::forall(x, f)).then(
                Formula::nn(Formula::forall(x, a1)),
                "double negation shift",
                &[PrincipleTag::dns_u_plus(k)],
            )
        }
    })
}

/// `φ ∈ U_k^+`: chain `¬¬φ ⇝ ¬¬φ'` with `φ' ∈ Π_k`.
fn nu(phi: &Formula, k: usize) -> Result<Deriv> {
    let start = Formula::nn(phi.clone());
    let d = Deriv::refl(start);
    if fits(phi, ShapeKind::Pi, k, true) {
        return Ok(d);
    }
    Ok(match phi {
        Formula::Bot | Formula::Atom(..) => d,
        Formula::And(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            let d = d.then(
                Formula::and(Formula::nn(a0.clone()), Formula::nn(b0.clone())),
                "double negation over conjunction",
                &[],
            );
            ne_conj_tail(d, DnSub::Nu(a0), DnSub::Nu(b0), k, false)?
        }
        Formula::Or(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            nu_disj_tail(d, DnSub::Nu(a0), DnSub::Nu(b0), k)?
        }
        Formula::Imp(a, b) => {
            let (a0, b0) = ((**a).clone(), (**b).clone());
            nu_disj_tail(d, DnSub::Na(a0), DnSub::Nu(b0), k)?
        }
        Formula::Not(a) => d.then(Formula::not((**a).clone()), "triple negation", &[]).append(na(a, k)?),
        Formula::Forall(x, a) => {
            let d = d.then(
                Formula::forall(x, Formula::nn((**a).clone())),
                "double negation shift",
                &[PrincipleTag::dns_u_plus(k)],
            );
            let da = nu(a, k)?;
            let a1 = strip_nn(da.out.clone());
            d.lift(da, |f| Formula::forall(x, f)).then(
                Formula::nn(Formula::forall(x, a1)),
                "double negation shift",
                &[PrincipleTag::dns_u_plus(k)],
            )
        }
        Formula::Exists(..) => {
            let da = na(phi, sub1(k))?;
            let a1 = strip_nn(da.out.clone());
            d.lift(da, Formula::not)
                .then(Formula::not(a1.clone()), "triple negation", &[])
                .append(neg_pi_nn_d(&a1)?)
        }
    })
}

/// From `¬¬(a ∨ b)` written with the disjuncts `X` and `Y` of `a`, `b` to
/// `¬¬φ'` for a Π_k `φ'`.
fn nu_disj_tail(d: Deriv, a: DnSub, b: DnSub, k: usize) -> Result<Deriv> {
    let d = d.then(
        Formula::nn(Formula::or(a.conjunct(), b.conjunct())),
        "double negated disjunction",
        &[],
    );
    let da = a.run(k, false)?;
    let a1 = strip_nn(da.out.clone());
    let yb = b.conjunct();
    let d = d.lift(da, |x| Formula::nn(Formula::or(x, yb.clone())));
    let db = b.run(k, false)?;
    let b1 = strip_nn(db.out.clone());
    let nna1 = Formula::nn(a1.clone());
    let d = d
        .lift(db, |x| Formula::nn(Formula::or(nna1.clone(), x)))
        .then(Formula::nn(Formula::or(a1.clone(), b1.clone())), "drop inner double negations", &[]);
    Ok(d.append(dn_disj_pi_d(&a1, &b1, k)?))
}

fn require(ok: bool, what: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::NotInClass(what))
    }
}

/// `φ ∈ E_k^+` to an equivalent Σ_k formula.
pub fn prenex_e(phi: &Formula, k: usize) -> Result<Transformed> {
    require(class_membership(phi, k).in_e_plus, format!("E_{k}^+"))?;
    let d = pe(phi, k, false)?;
    let out = d.out.clone();
    Ok(Transformed::from_deriv(d, out))
}

/// `φ ∈ U_k^+` to an equivalent Π_k formula.
pub fn prenex_u(phi: &Formula, k: usize) -> Result<Transformed> {
    require(class_membership(phi, k).in_u_plus, format!("U_{k}^+"))?;
    let d = pu(phi, k, false)?;
    let out = d.out.clone();
    Ok(Transformed::from_deriv(d, out))
}

/// `φ ∈ E_k^+` to a Π_k formula `φ'` with `¬φ ↔ ¬¬φ'`.
pub fn neg_e_nn_pi(phi: &Formula, k: usize) -> Result<Transformed> {
    require(class_membership(phi, k).in_e_plus, format!("E_{k}^+"))?;
    let d = ne(phi, k, false)?;
    let out = strip_nn(d.out.clone());
    Ok(Transformed::from_deriv(d, out))
}

/// `φ ∈ U_k^+` to a Π_k formula `φ'` with `¬¬φ ↔ ¬¬φ'`.
pub fn nn_u_prenex(phi: &Formula, k: usize) -> Result<Transformed> {
    require(class_membership(phi, k).in_u_plus, format!("U_{k}^+"))?;
    let d = nu(phi, k)?;
    let out = strip_nn(d.out.clone());
    Ok(Transformed::from_deriv(d, out))
}

/// `φ ∈ E_k^+` to a Π_k formula `φ'` with `¬φ ↔ ¬¬φ'`, within the double
/// negation shift budget.
pub fn nn_e_prenex(phi: &Formula, k: usize) -> Result<Transformed> {
    require(class_membership(phi, k).in_e_plus, format!("E_{k}^+"))?;
    let d = na(phi, k)?;
    let out = strip_nn(d.out.clone());
    Ok(Transformed::from_deriv(d, out))
}

/// Prenexation of ∨-free formulas; the output is ∨-free too.
pub fn prenex_df(phi: &Formula, mode: Mode, k: usize) -> Result<Transformed> {
    if phi.contains_or() {
        return Err(Error::ContainsOr);
    }
    let c = class_membership(phi, k);
    let d = match mode {
        Mode::E => {
            require(c.in_e_plus, format!("E_{k}^+"))?;
            pe(phi, k, true)?
        }
        Mode::U => {
            require(c.in_u_plus, format!("U_{k}^+"))?;
            pu(phi, k, true)?
        }
    };
    let out = d.out.clone();
    Ok(Transformed::from_deriv(d, out))
}
