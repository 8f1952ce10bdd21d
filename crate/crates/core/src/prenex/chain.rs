//! Equivalence chains and the derivation values the engine builds them from.

use serde::{Deserialize, Serialize};

use super::{Certificate, PrincipleTag};
use crate::formula::Formula;

/// Class of finite structures on which a step is classically valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ValidityScope {
    PureLogic,
    /// Needs designated, distinct `0` and `1`.
    NeedsZeroOne,
    /// Needs a pairing function with total projections.
    NeedsPairing,
}

impl ValidityScope {
    pub fn name(self) -> &'static str {
        match self {
            ValidityScope::PureLogic => "pure-logic",
            ValidityScope::NeedsZeroOne => "needs-zero-one",
            ValidityScope::NeedsPairing => "needs-pairing",
        }
    }

    pub fn parse(s: &str) -> Option<ValidityScope> {
        match s {
            "pure-logic" => Some(ValidityScope::PureLogic),
            "needs-zero-one" => Some(ValidityScope::NeedsZeroOne),
            "needs-pairing" => Some(ValidityScope::NeedsPairing),
            _ => None,
        }
    }
}

/// What a step claims about `before` and `after`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equiv,
    /// `before → after`.
    Implies,
    /// `∀x before → after`.
    Generalize(String),
    /// `after` is `before` with the placeholder replaced by some formula, so
    /// `before[⊤] ∧ before[⊥] → after`.
    Instance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub before: Formula,
    pub after: Formula,
    pub justification: String,
    pub scope: ValidityScope,
    pub tags: Vec<PrincipleTag>,
    pub relation: Relation,
}

impl Step {
    pub fn equiv(before: Formula, after: Formula, why: &str) -> Step {
        Step {
            before,
            after,
            justification: why.to_string(),
            scope: ValidityScope::PureLogic,
            tags: Vec::new(),
            relation: Relation::Equiv,
        }
    }

    pub fn tagged(mut self, tags: &[PrincipleTag]) -> Step {
        self.tags.extend_from_slice(tags);
        self
    }

    pub fn scoped(mut self, scope: ValidityScope) -> Step {
        self.scope = self.scope.max(scope);
        self
    }

    pub fn related(mut self, r: Relation) -> Step {
        self.relation = r;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceChain {
    pub start: Formula,
    pub steps: Vec<Step>,
}

impl EquivalenceChain {
    pub fn end(&self) -> &Formula {
        self.steps.last().map(|s| &s.after).unwrap_or(&self.start)
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::from_tags(self.steps.iter().flat_map(|s| s.tags.iter().copied()))
    }

    pub fn is_connected(&self) -> bool {
        let mut cur = &self.start;
        for s in &self.steps {
            if &s.before != cur {
                return false;
            }
            cur = &s.after;
        }
        true
    }
}

/// Result of a sub-derivation: the output formula together with the steps
/// that reach it from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deriv {
    pub start: Formula,
    pub out: Formula,
    pub steps: Vec<Step>,
}

impl Deriv {
    pub fn refl(f: Formula) -> Deriv {
        Deriv { start: f.clone(), out: f, steps: Vec::new() }
    }

    /// Appends a step starting at the current output.
    pub fn then(mut self, after: Formula, why: &str, tags: &[PrincipleTag]) -> Deriv {
        let s = Step::equiv(self.out.clone(), after.clone(), why).tagged(tags);
        self.steps.push(s);
        self.out = after;
        self
    }

    pub fn then_scoped(
        mut self,
        after: Formula,
        why: &str,
        tags: &[PrincipleTag],
        scope: ValidityScope,
    ) -> Deriv {
        self = self.then(after, why, tags);
        if let Some(last) = self.steps.last_mut() {
            last.scope = last.scope.max(scope);
        }
        self
    }

    /// Continues with a derivation that must start at the current output.
    pub fn append(mut self, next: Deriv) -> Deriv {
        debug_assert_eq!(self.out, next.start);
        self.steps.extend(next.steps);
        self.out = next.out;
        self
    }

    /// Continues by running `d` inside the context `ctx`, with `ctx(d.start)`
    /// equal to the current output.
    pub fn lift(self, d: Deriv, ctx: impl Fn(Formula) -> Formula) -> Deriv {
        self.append(d.in_context(ctx))
    }

    /// Places every formula of the derivation inside `ctx`.
    pub fn in_context(self, ctx: impl Fn(Formula) -> Formula) -> Deriv {
        Deriv {
            start: ctx(self.start),
            out: ctx(self.out),
            steps: self
                .steps
                .into_iter()
                .map(|s| Step { before: ctx(s.before), after: ctx(s.after), ..s })
                .collect(),
        }
    }

    /// Double negates both sides of every step and every tag.
    pub fn nn(self) -> Deriv {
        Deriv {
            start: Formula::nn(self.start),
            out: Formula::nn(self.out),
            steps: self
                .steps
                .into_iter()
                .map(|s| Step {
                    before: Formula::nn(s.before),
                    after: Formula::nn(s.after),
                    tags: s.tags.iter().map(|t| t.nn()).collect(),
                    ..s
                })
                .collect(),
        }
    }

    /// Double negates the tags only, for derivations placed under a `¬¬`
    /// context.
    pub fn nn_tags(mut self) -> Deriv {
        for s in &mut self.steps {
            for t in &mut s.tags {
                *t = t.nn();
            }
        }
        self
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::from_tags(self.steps.iter().flat_map(|s| s.tags.iter().copied()))
    }

    pub fn into_chain(self) -> EquivalenceChain {
        EquivalenceChain { start: self.start, steps: self.steps }
    }
}
