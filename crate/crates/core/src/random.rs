//! Seeded formula generators and exhaustive enumeration by size.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::classify::ShapeKind;
use crate::formula::{Formula, Quant, Term};

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Predicate symbols with their arities.
    pub preds: Vec<(String, usize)>,
    pub vars: Vec<String>,
    pub allow_or: bool,
    pub allow_bot: bool,
    pub quantifiers: bool,
}

impl GenConfig {
    /// Three predicates `p/1`, `q/2`, `r/0` over variables `x, y, z`.
    pub fn small() -> GenConfig {
        GenConfig {
            preds: vec![("p".into(), 1), ("q".into(), 2), ("r".into(), 0)],
            vars: vec!["x".into(), "y".into(), "z".into()],
            allow_or: true,
            allow_bot: true,
            quantifiers: true,
        }
    }

    /// Propositional letters only.
    pub fn propositional(letters: &[&str]) -> GenConfig {
        GenConfig {
            preds: letters.iter().map(|l| (l.to_string(), 0)).collect(),
            vars: Vec::new(),
            allow_or: true,
            allow_bot: true,
            quantifiers: false,
        }
    }

    pub fn or_free(mut self) -> GenConfig {
        self.allow_or = false;
        self
    }

    pub fn random_atom(&self, rng: &mut impl Rng) -> Formula {
        if self.allow_bot && rng.gen_ratio(1, 12) {
            return Formula::Bot;
        }
        let (p, n) = self.preds.choose(rng).expect("at least one predicate");
        let args = (0..*n)
            .map(|_| Term::var(self.vars.choose(rng).expect("variables for predicate arguments")))
            .collect();
        Formula::atom(p, args)
    }

    /// A formula with exactly `size` nodes.
    pub fn random_formula(&self, rng: &mut impl Rng, size: usize) -> Formula {
        if size <= 1 {
            return self.random_atom(rng);
        }
        let binary = size >= 3 && rng.gen_ratio(3, 5);
        if binary {
            let left = rng.gen_range(1..size - 1);
            let a = self.random_formula(rng, left);
            let b = self.random_formula(rng, size - 1 - left);
            let ops = if self.allow_or { 3 } else { 2 };
            match rng.gen_range(0..ops) {
                0 => Formula::and(a, b),
                1 => Formula::imp(a, b),
                _ => Formula::or(a, b),
            }
        } else {
            let a = self.random_formula(rng, size - 1);
            if !self.quantifiers || self.vars.is_empty() || rng.gen_ratio(1, 3) {
                Formula::not(a)
            } else {
                let x = self.vars.choose(rng).unwrap();
                if rng.gen() {
                    Formula::forall(x, a)
                } else {
                    Formula::exists(x, a)
                }
            }
        }
    }

    pub fn random_qf(&self, rng: &mut impl Rng, size: usize) -> Formula {
        let cfg = GenConfig { quantifiers: false, ..self.clone() };
        cfg.random_formula(rng, size)
    }

    /// A prenex formula with exactly `k` nonempty blocks of the given shape.
    pub fn random_prenex(&self, rng: &mut impl Rng, kind: ShapeKind, k: usize, matrix: usize) -> Formula {
        let mut prefix = Vec::new();
        let mut q = kind.lead();
        for _ in 0..k {
            for _ in 0..rng.gen_range(1..=2) {
                prefix.push((q, self.vars.choose(rng).unwrap().clone()));
            }
            q = q.dual();
        }
        Formula::with_prefix(&prefix, self.random_qf(rng, matrix))
    }
}

/// Every formula of size at most `max` over `leaves`, built with `¬`, `∧`,
/// `∨`, `→` and quantifiers over `vars`; index `n` holds size `n`.
pub fn enumerate(leaves: &[Formula], vars: &[&str], max: usize) -> Vec<Vec<Formula>> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), leaves.to_vec()];
    for n in 2..=max {
        let mut out = Vec::new();
        for a in &by_size[n - 1] {
            out.push(Formula::not(a.clone()));
            for x in vars {
                out.push(Formula::quant(Quant::All, x, a.clone()));
                out.push(Formula::quant(Quant::Ex, x, a.clone()));
            }
        }
        for l in 1..n - 1 {
            for a in &by_size[l] {
                for b in &by_size[n - 1 - l] {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b.clone()));
                    out.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(out);
    }
    by_size.truncate(max + 1);
    by_size
}
