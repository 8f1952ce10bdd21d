//! Negative translation, A-translation over the placeholder `star`, and the
//! chain that carries a classical `ψ → ∀x∃y φ1` over to the intuitionistic
//! side with excluded middle for `Σ_k`.

use crate::classify::{fits, ShapeKind};
use crate::error::{Error, Result};
use crate::formula::{free_vars, Formula};
use crate::prenex::{ClassArg, EquivalenceChain, PrincipleTag, Relation, Step};

/// `φ_*`: primes stay, `∀` gets a double negation under it.
pub fn kuroda_inner(phi: &Formula) -> Formula {
    match phi {
        Formula::Bot | Formula::Atom(..) => phi.clone(),
        Formula::Not(a) => Formula::not(kuroda_inner(a)),
        Formula::And(a, b) => Formula::and(kuroda_inner(a), kuroda_inner(b)),
        Formula::Or(a, b) => Formula::or(kuroda_inner(a), kuroda_inner(b)),
        Formula::Imp(a, b) => Formula::imp(kuroda_inner(a), kuroda_inner(b)),
        Formula::Forall(x, a) => Formula::forall(x, Formula::nn(kuroda_inner(a))),
        Formula::Exists(x, a) => Formula::exists(x, kuroda_inner(a)),
    }
}

/// `φ^N = ¬¬φ_*`.
pub fn kuroda(phi: &Formula) -> Formula {
    Formula::nn(kuroda_inner(phi))
}

fn bot_star() -> Formula {
    Formula::or(Formula::Bot, Formula::star())
}

/// `φ^*`: every prime `p` becomes `p ∨ star`, and `¬φ` is read as `φ → ⊥`.
pub fn a_translate(phi: &Formula) -> Formula {
    match phi {
        Formula::Bot => bot_star(),
        Formula::Atom(..) => Formula::or(phi.clone(), Formula::star()),
        Formula::Not(a) => Formula::imp(a_translate(a), bot_star()),
        Formula::And(a, b) => Formula::and(a_translate(a), a_translate(b)),
        Formula::Or(a, b) => Formula::or(a_translate(a), a_translate(b)),
        Formula::Imp(a, b) => Formula::imp(a_translate(a), a_translate(b)),
        Formula::Forall(x, a) => Formula::forall(x, a_translate(a)),
        Formula::Exists(x, a) => Formula::exists(x, a_translate(a)),
    }
}

/// `¬_* φ = φ → star`.
pub fn star_not(phi: Formula) -> Formula {
    Formula::imp(phi, Formula::star())
}

/// Replaces every `star` in `φ` by `ψ`. No free variable of `ψ` may be bound
/// anywhere in `φ`.
pub fn substitute_star(phi: &Formula, psi: &Formula) -> Result<Formula> {
    let bound = phi.bound_vars();
    if let Some(x) = free_vars(psi).iter().find(|x| bound.contains(*x)) {
        return Err(Error::VariableCapture(x.clone()));
    }
    Ok(plug(phi, psi))
}

fn plug(f: &Formula, psi: &Formula) -> Formula {
    match f {
        Formula::Atom(p, ts) if p == crate::formula::STAR && ts.is_empty() => psi.clone(),
        Formula::Bot | Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(plug(a, psi)),
        Formula::And(a, b) => Formula::and(plug(a, psi), plug(b, psi)),
        Formula::Or(a, b) => Formula::or(plug(a, psi), plug(b, psi)),
        Formula::Imp(a, b) => Formula::imp(plug(a, psi), plug(b, psi)),
        Formula::Forall(x, a) => Formula::forall(x, plug(a, psi)),
        Formula::Exists(x, a) => Formula::exists(x, plug(a, psi)),
    }
}

fn step(before: &Formula, after: &Formula, why: &str, rel: Relation) -> Step {
    Step::equiv(before.clone(), after.clone(), why).related(rel)
}

/// Builds the chain from `ψ → ∀x∃y φ1` back to the same formula through the
/// negative translation, the A-translation and the placeholder instance
/// `star := ∃y φ1`. Steps that need excluded middle carry `Σ_k-LEM`.
pub fn conservation_chain(
    psi: &Formula,
    x: &str,
    y: &str,
    phi1: &Formula,
    k: usize,
) -> Result<EquivalenceChain> {
    if !psi.is_prenex() {
        return Err(Error::NotPrenex);
    }
    if !fits(phi1, ShapeKind::Pi, k, true) {
        return Err(Error::NotInClass(format!("{phi1} is not Π_{k}")));
    }
    if psi.contains_atom(crate::formula::STAR) || phi1.contains_atom(crate::formula::STAR) {
        return Err(Error::InvalidSignature("placeholder in input".into()));
    }
    let ex = Formula::exists(y, phi1.clone());
    let psi_fv = free_vars(psi);
    if psi_fv.contains(x) {
        return Err(Error::VariableCapture(x.to_string()));
    }
    let psi_bound = psi.bound_vars();
    if let Some(v) = free_vars(&ex).iter().find(|v| psi_bound.contains(*v)) {
        return Err(Error::VariableCapture(v.clone()));
    }
    let lem = [PrincipleTag::lem(ClassArg::Sigma, k)];
    let f0 = Formula::imp(psi.clone(), Formula::forall(x, ex.clone()));
    let psi_n = kuroda(psi);
    let phi_s = kuroda_inner(phi1);
    let ex_s = Formula::exists(y, phi_s.clone());
    let f0n = kuroda(&f0);
    let f1 = Formula::imp(psi_n.clone(), Formula::forall(x, Formula::nn(ex_s.clone())));
    let f2 = Formula::imp(psi_n, Formula::nn(ex_s.clone()));
    let f3 = a_translate(&f2);
    let ss = |a: Formula| star_not(star_not(a));
    let f4 = Formula::imp(psi.clone(), ss(Formula::exists(y, a_translate(&phi_s))));
    let f5 = Formula::imp(psi.clone(), ss(Formula::exists(y, Formula::or(phi_s.clone(), Formula::star()))));
    let f6 = Formula::imp(psi.clone(), ss(ex_s));
    let f7 = substitute_star(&f6, &ex)?;
    let f8 = Formula::imp(psi.clone(), ex);
    let steps = vec![
        step(&f0, &f0n, "negative translation", Relation::Equiv),
        step(&f0n, &f1, "distribute ¬¬ over → and ∀", Relation::Equiv),
        step(&f1, &f2, "instantiate x", Relation::Implies),
        step(&f2, &f3, "A-translation", Relation::Implies),
        step(&f3, &f4, "ψ → (ψ^N)^*; ⊥∨star ↔ star", Relation::Implies),
        step(&f4, &f5, "(φ1_*)^* ↔ φ1_* ∨ star", Relation::Equiv).tagged(&lem),
        step(&f5, &f6, "absorb star under ¬_*¬_*", Relation::Equiv),
        step(&f6, &f7, "star := ∃y φ1", Relation::Instance),
        step(&f7, &f8, "φ1_* ↔ φ1 and collapse", Relation::Equiv).tagged(&lem),
        step(&f8, &f0, "generalize x", Relation::Generalize(x.to_string())),
    ];
    Ok(EquivalenceChain { start: f0, steps })
}
