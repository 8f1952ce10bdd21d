//! Prenexation with principle bookkeeping.
//!
//! Every transformation returns the output formula, the [`Certificate`] of
//! semi-classical principles it consumed and an [`EquivalenceChain`] that the
//! oracle can replay step by step.

mod budget;
mod chain;
mod combinators;
mod engine;

pub use budget::{budget_leq, pnft_budget, BudgetRow};
pub use chain::{Deriv, EquivalenceChain, Relation, Step, ValidityScope};
pub use combinators::{
    conj_prenex, contract, disj_sigma, dn_disj_pi, neg_pi_nn, neg_prenex, nn_lift, pad, Prenex,
};
pub use engine::{
    neg_e_nn_pi, nn_e_prenex, nn_u_prenex, prenex_df, prenex_e, prenex_u, Mode, Transformed,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    Lem,
    Dml,
    Dne,
    Dns,
}

/// Class argument of a principle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassArg {
    Sigma,
    Pi,
    U,
    E,
    UPlus,
    EPlus,
    /// Disjunctions of two Π formulas.
    PiOrPi,
}

/// One principle instance schema at a level, optionally double negated.
/// Double negation does not nest: `¬¬¬¬P` is identified with `¬¬P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrincipleTag {
    pub schema: Schema,
    pub class: ClassArg,
    pub level: usize,
    pub nn: bool,
}

impl PrincipleTag {
    pub const fn new(schema: Schema, class: ClassArg, level: usize) -> PrincipleTag {
        PrincipleTag { schema, class, level, nn: false }
    }

    pub const fn dne(class: ClassArg, level: usize) -> PrincipleTag {
        PrincipleTag::new(Schema::Dne, class, level)
    }

    pub const fn lem(class: ClassArg, level: usize) -> PrincipleTag {
        PrincipleTag::new(Schema::Lem, class, level)
    }

    pub const fn dns_u_plus(level: usize) -> PrincipleTag {
        PrincipleTag::new(Schema::Dns, ClassArg::UPlus, level)
    }

    pub fn nn(self) -> PrincipleTag {
        PrincipleTag { nn: true, ..self }
    }

    /// ASCII spelling, e.g. `NN:(Pi1|Pi1)-DNE` or `U2+-DNS`.
    pub fn ascii(&self) -> String {
        let k = self.level;
        let class = match self.class {
            ClassArg::Sigma => format!("Sigma{k}"),
            ClassArg::Pi => format!("Pi{k}"),
            ClassArg::U => format!("U{k}"),
            ClassArg::E => format!("E{k}"),
            ClassArg::UPlus => format!("U{k}+"),
            ClassArg::EPlus => format!("E{k}+"),
            ClassArg::PiOrPi => format!("(Pi{k}|Pi{k})"),
        };
        format!("{}{class}-{}", if self.nn { "NN:" } else { "" }, schema_name(self.schema))
    }

    pub fn parse_ascii(s: &str) -> Option<PrincipleTag> {
        let (nn, rest) = match s.strip_prefix("NN:") {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (class_s, schema_s) = rest.rsplit_once('-')?;
        let schema = match schema_s {
            "LEM" => Schema::Lem,
            "DML" => Schema::Dml,
            "DNE" => Schema::Dne,
            "DNS" => Schema::Dns,
            _ => return None,
        };
        let num = |t: &str| t.parse::<usize>().ok();
        let (class, level) = if let Some(inner) = class_s.strip_prefix("(Pi") {
            let (a, b) = inner.strip_suffix(')')?.split_once("|Pi")?;
            if a != b {
                return None;
            }
            (ClassArg::PiOrPi, num(a)?)
        } else if let Some(t) = class_s.strip_prefix("Sigma") {
            (ClassArg::Sigma, num(t)?)
        } else if let Some(t) = class_s.strip_prefix("Pi") {
            (ClassArg::Pi, num(t)?)
        } else if let Some(t) = class_s.strip_prefix('U') {
            match t.strip_suffix('+') {
                Some(t) => (ClassArg::UPlus, num(t)?),
                None => (ClassArg::U, num(t)?),
            }
        } else if let Some(t) = class_s.strip_prefix('E') {
            match t.strip_suffix('+') {
                Some(t) => (ClassArg::EPlus, num(t)?),
                None => (ClassArg::E, num(t)?),
            }
        } else {
            return None;
        };
        Some(PrincipleTag { schema, class, level, nn })
    }
}

fn schema_name(s: Schema) -> &'static str {
    match s {
        Schema::Lem => "LEM",
        Schema::Dml => "DML",
        Schema::Dne => "DNE",
        Schema::Dns => "DNS",
    }
}

impl fmt::Display for PrincipleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.level;
        let class = match self.class {
            ClassArg::Sigma => format!("Σ_{k}"),
            ClassArg::Pi => format!("Π_{k}"),
            ClassArg::U => format!("U_{k}"),
            ClassArg::E => format!("E_{k}"),
            ClassArg::UPlus => format!("U_{k}^+"),
            ClassArg::EPlus => format!("E_{k}^+"),
            ClassArg::PiOrPi => format!("(Π_{k}∨Π_{k})"),
        };
        write!(f, "{}{class}-{}", if self.nn { "¬¬" } else { "" }, schema_name(self.schema))
    }
}

/// Principles consumed by a transformation.
///
/// Stored normalised: level-0 tags are dropped because every atom in scope is
/// decidable, so those instances are provable without extra principles.
/// Repeated uses of the same schema are recorded once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    tags: BTreeSet<PrincipleTag>,
}

impl Certificate {
    pub fn empty() -> Certificate {
        Certificate::default()
    }

    pub fn from_tags(tags: impl IntoIterator<Item = PrincipleTag>) -> Certificate {
        Certificate { tags: tags.into_iter().filter(|t| t.level > 0).collect() }
    }

    pub fn tags(&self) -> impl Iterator<Item = &PrincipleTag> {
        self.tags.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn union(&self, other: &Certificate) -> Certificate {
        Certificate { tags: self.tags.union(&other.tags).copied().collect() }
    }

    pub fn contains(&self, t: &PrincipleTag) -> bool {
        self.tags.contains(t)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.tags.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}
