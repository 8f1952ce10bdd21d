//! Derivability preorder on principle tags and the budget table.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Certificate, ClassArg, PrincipleTag, Schema};
use crate::error::{Error, Result};

fn tag(schema: Schema, class: ClassArg, level: usize, nn: bool) -> PrincipleTag {
    PrincipleTag { schema, class, level, nn }
}

/// Consequences of a single non-negated tag that stay within one schema
/// family and can be double negated pointwise.
fn base_edges(t: PrincipleTag) -> Vec<PrincipleTag> {
    use ClassArg::*;
    use Schema::*;
    let k = t.level;
    let down = k.checked_sub(1);
    let mut out = Vec::new();
    let mut push = |s, c, l: Option<usize>| {
        if let Some(l) = l {
            out.push(tag(s, c, l, t.nn));
        }
    };
    match (t.schema, t.class) {
        (Dne, Sigma) => {
            push(Dne, PiOrPi, down);
            push(Dne, Pi, Some(k + 1));
            push(Dne, Sigma, down);
        }
        (Dne, Pi) => {
            push(Dne, Pi, down);
            push(Dne, Sigma, down);
        }
        (Dne, PiOrPi) => {
            push(Dne, Sigma, down);
            push(Dne, PiOrPi, down);
            push(Dne, Pi, Some(k));
        }
        (Dns, UPlus) => {
            push(Lem, Sigma, down);
            push(Dns, UPlus, down);
            push(Dns, U, Some(k));
        }
        (Dns, U) => push(Dns, UPlus, Some(k)),
        (Lem, Sigma) => {
            push(Dne, Sigma, Some(k));
            push(Lem, Pi, Some(k));
            push(Lem, Sigma, down);
            push(Lem, Pi, down);
        }
        (Lem, Pi) => {
            push(Lem, Pi, down);
            push(Lem, Sigma, down);
        }
        _ => {}
    }
    // DNS yields LEM only under double negation.
    if t.schema == Dns {
        for o in out.iter_mut() {
            if o.schema == Lem {
                o.nn = true;
            }
        }
    }
    out
}

fn edges(t: PrincipleTag) -> Vec<PrincipleTag> {
    let mut out = base_edges(t);
    if !t.nn {
        out.push(t.nn());
    } else {
        match (t.schema, t.class) {
            (Schema::Dne, ClassArg::PiOrPi) => out.push(PrincipleTag::dns_u_plus(t.level)),
            (Schema::Dns, _) => out.push(PrincipleTag { nn: false, ..t }),
            _ => {}
        }
    }
    out
}

fn closure(budget: &Certificate) -> BTreeSet<PrincipleTag> {
    // Quantifier-free instances are decidable, so their consequences are free.
    let free = [PrincipleTag::lem(ClassArg::Sigma, 0), PrincipleTag::dne(ClassArg::PiOrPi, 0)];
    let mut seen: BTreeSet<PrincipleTag> = budget.tags().copied().chain(free).collect();
    let mut queue: VecDeque<PrincipleTag> = seen.iter().copied().collect();
    while let Some(t) = queue.pop_front() {
        for n in edges(t) {
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// True when every tag of `c` is derivable from `budget`. Level-0 tags and
/// what they yield (such as `Π_1-DNE`) are free.
pub fn budget_leq(c: &Certificate, budget: &Certificate) -> bool {
    let cl = closure(budget);
    c.tags().all(|t| t.level == 0 || cl.contains(t))
}

/// The eight (source class, target shape) pairs with a known exact budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BudgetRow {
    /// `(¬¬U_k)` without ∨, into `¬¬Π_k`.
    DfNnUToNnPi,
    /// `¬¬U_k` into `¬¬Π_k`.
    NnUToNnPi,
    /// `U_k` without ∨, into `Π_k`.
    DfUToPi,
    /// `¬¬U_k` into `Π_k`.
    NnUToPi,
    /// `E_k` without ∨, into `Σ_k`.
    DfEToSigma,
    EToSigma,
    UToPi,
    /// Both `U_k → Π_k` and `E_k → Σ_k`.
    Both,
}

impl BudgetRow {
    pub const ALL: [BudgetRow; 8] = [
        BudgetRow::DfNnUToNnPi,
        BudgetRow::NnUToNnPi,
        BudgetRow::DfUToPi,
        BudgetRow::NnUToPi,
        BudgetRow::DfEToSigma,
        BudgetRow::EToSigma,
        BudgetRow::UToPi,
        BudgetRow::Both,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BudgetRow::DfNnUToNnPi => "df-nnU/nnPi",
            BudgetRow::NnUToNnPi => "nnU/nnPi",
            BudgetRow::DfUToPi => "df-U/Pi",
            BudgetRow::NnUToPi => "nnU/Pi",
            BudgetRow::DfEToSigma => "df-E/Sigma",
            BudgetRow::EToSigma => "E/Sigma",
            BudgetRow::UToPi => "U/Pi",
            BudgetRow::Both => "U/Pi+E/Sigma",
        }
    }

    /// Looks a row up from its class pair, e.g. `("E", "Sigma")`.
    pub fn from_pair(gamma: &str, delta: &str) -> Result<BudgetRow> {
        format!("{gamma}/{delta}").parse()
    }
}

impl fmt::Display for BudgetRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BudgetRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<BudgetRow> {
        BudgetRow::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRow(s.to_string()))
    }
}

/// Required principle `P_k` and side theory `Q_k` of a row.
pub fn pnft_budget(row: BudgetRow, k: usize) -> (Certificate, Certificate) {
    use ClassArg::*;
    let dne = PrincipleTag::dne;
    let lem = PrincipleTag::lem;
    let dns = PrincipleTag::dns_u_plus;
    let opt = |l: Option<usize>, f: &dyn Fn(usize) -> PrincipleTag| l.map(f).into_iter();
    let k1 = k.checked_sub(1);
    let k2 = k.checked_sub(2);
    let (p, q): (Vec<PrincipleTag>, Vec<PrincipleTag>) = match row {
        BudgetRow::DfNnUToNnPi => (
            opt(k1, &|l| dne(Sigma, l).nn()).collect(),
            opt(k2, &|l| lem(Pi, l).nn()).collect(),
        ),
        BudgetRow::NnUToNnPi => (vec![dns(k)], vec![]),
        BudgetRow::DfUToPi => (
            opt(k1, &|l| dne(Sigma, l)).collect(),
            opt(k2, &|l| lem(Pi, l)).collect(),
        ),
        BudgetRow::NnUToPi => (
            opt(k1, &|l| dne(Sigma, l)).chain([dns(k)]).collect(),
            opt(k2, &|l| lem(Pi, l)).collect(),
        ),
        BudgetRow::DfEToSigma => (vec![dne(Sigma, k)], opt(k1, &|l| lem(Pi, l)).collect()),
        BudgetRow::EToSigma => (vec![dne(Sigma, k), dns(k)], opt(k1, &|l| lem(Pi, l)).collect()),
        BudgetRow::UToPi => (vec![dne(PiOrPi, k)], vec![]),
        BudgetRow::Both => (vec![dne(Sigma, k), dne(PiOrPi, k)], vec![]),
    };
    (Certificate::from_tags(p), Certificate::from_tags(q))
}
