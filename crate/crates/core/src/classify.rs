//! Alternation paths, degree, the E/U/F classes and prenex shapes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Quant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Plus => Polarity::Minus,
            Polarity::Minus => Polarity::Plus,
        }
    }
}

/// A strictly alternating word over `+` and `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AltPath(Vec<Polarity>);

impl AltPath {
    pub fn empty() -> AltPath {
        AltPath(Vec::new())
    }

    /// Builds the alternating path of length `len` starting with `head`.
    pub fn alternating(head: Polarity, len: usize) -> AltPath {
        let mut v = Vec::with_capacity(len);
        let mut p = head;
        for _ in 0..len {
            v.push(p);
            p = p.flip();
        }
        AltPath(v)
    }

    /// Returns `None` unless the symbols strictly alternate.
    pub fn from_symbols(v: Vec<Polarity>) -> Option<AltPath> {
        if v.windows(2).all(|w| w[0] != w[1]) {
            Some(AltPath(v))
        } else {
            None
        }
    }

    pub fn symbols(&self) -> &[Polarity] {
        &self.0
    }

    /// `None` plays the role of the head of the empty path.
    pub fn head(&self) -> Option<Polarity> {
        self.0.first().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flip(&self) -> AltPath {
        AltPath(self.0.iter().map(|p| p.flip()).collect())
    }

    fn prepend_unless_head(&self, p: Polarity) -> AltPath {
        if self.head() == Some(p) {
            self.clone()
        } else {
            let mut v = Vec::with_capacity(self.0.len() + 1);
            v.push(p);
            v.extend_from_slice(&self.0);
            AltPath(v)
        }
    }
}

impl fmt::Display for AltPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *p == Polarity::Plus { "+" } else { "-" })?;
        }
        write!(f, ">")
    }
}

pub fn alt_paths(phi: &Formula) -> BTreeSet<AltPath> {
    if phi.is_quantifier_free() {
        return BTreeSet::from([AltPath::empty()]);
    }
    match phi {
        Formula::Bot | Formula::Atom(..) => unreachable!("quantifier-free"),
        Formula::Not(a) => alt_paths(a).iter().map(AltPath::flip).collect(),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let mut s = alt_paths(a);
            s.extend(alt_paths(b));
            s
        }
        Formula::Imp(a, b) => {
            let mut s: BTreeSet<AltPath> = alt_paths(a).iter().map(AltPath::flip).collect();
            s.extend(alt_paths(b));
            s
        }
        Formula::Forall(_, a) => alt_paths(a)
            .iter()
            .map(|s| s.prepend_unless_head(Polarity::Minus))
            .collect(),
        Formula::Exists(_, a) => alt_paths(a)
            .iter()
            .map(|s| s.prepend_unless_head(Polarity::Plus))
            .collect(),
    }
}

fn degree_of(paths: &BTreeSet<AltPath>) -> usize {
    paths.iter().map(AltPath::len).max().unwrap_or(0)
}

pub fn degree(phi: &Formula) -> usize {
    degree_of(&alt_paths(phi))
}

pub fn is_or_free(phi: &Formula) -> bool {
    !phi.contains_or()
}

/// Membership of one formula in the classes at a fixed level `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub k: usize,
    pub degree: usize,
    pub in_f: bool,
    pub in_e: bool,
    pub in_u: bool,
    pub in_e_plus: bool,
    pub in_u_plus: bool,
    /// Least `j` with the formula in `E_j^+`.
    pub min_e_plus: usize,
    /// Least `j` with the formula in `U_j^+`.
    pub min_u_plus: usize,
    /// Strict prenex shape, when prenex.
    pub shape: Option<(ShapeKind, usize)>,
}

fn top_heads(paths: &BTreeSet<AltPath>, deg: usize, want: Polarity) -> bool {
    paths.iter().filter(|s| s.len() == deg).all(|s| s.head() == Some(want))
}

pub fn class_membership(phi: &Formula, k: usize) -> ClassLabel {
    let paths = alt_paths(phi);
    let deg = degree_of(&paths);
    let e_top = deg == 0 || top_heads(&paths, deg, Polarity::Plus);
    let u_top = deg == 0 || top_heads(&paths, deg, Polarity::Minus);
    let in_f = deg == k;
    let in_e = in_f && e_top;
    let in_u = in_f && u_top;
    let least = |top: bool| if deg == 0 || top { deg } else { deg + 1 };
    ClassLabel {
        k,
        degree: deg,
        in_f,
        in_e,
        in_u,
        in_e_plus: in_e || deg < k,
        in_u_plus: in_u || deg < k,
        min_e_plus: least(e_top),
        min_u_plus: least(u_top),
        shape: prenex_shape(phi, false),
    }
}

pub fn in_e_plus(phi: &Formula, k: usize) -> bool {
    class_membership(phi, k).in_e_plus
}

pub fn in_u_plus(phi: &Formula, k: usize) -> bool {
    class_membership(phi, k).in_u_plus
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ShapeKind {
    Sigma,
    Pi,
}

impl ShapeKind {
    pub fn dual(self) -> ShapeKind {
        match self {
            ShapeKind::Sigma => ShapeKind::Pi,
            ShapeKind::Pi => ShapeKind::Sigma,
        }
    }

    /// Quantifier of the leading block.
    pub fn lead(self) -> Quant {
        match self {
            ShapeKind::Sigma => Quant::Ex,
            ShapeKind::Pi => Quant::All,
        }
    }

    pub fn of_lead(q: Quant) -> ShapeKind {
        match q {
            Quant::Ex => ShapeKind::Sigma,
            Quant::All => ShapeKind::Pi,
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Sigma => "Σ",
            ShapeKind::Pi => "Π",
        })
    }
}

/// Counts the alternating blocks of a prefix, reporting the leading kind.
pub fn prefix_shape(prefix: &[(Quant, String)]) -> (ShapeKind, usize) {
    let Some((first, _)) = prefix.first() else {
        return (ShapeKind::Sigma, 0);
    };
    let blocks = 1 + prefix.windows(2).filter(|w| w[0].0 != w[1].0).count();
    (ShapeKind::of_lead(*first), blocks)
}

/// Minimal prenex shape, or `None` when the formula is not prenex. A
/// quantifier-free formula reports `(Σ, 0)`; use [`fits`] to ask about the
/// other convention.
pub fn prenex_shape(phi: &Formula, cumulative: bool) -> Option<(ShapeKind, usize)> {
    let _ = cumulative;
    let (prefix, matrix) = phi.split_prefix();
    if !matrix.is_quantifier_free() {
        return None;
    }
    Some(prefix_shape(&prefix))
}

/// Whether `phi` is a prenex formula of class `kind_k`. Cumulative mode lets
/// blocks be empty, so Σ_j sits in Σ_k for `j ≤ k` and in Π_k for `j < k`.
pub fn fits(phi: &Formula, kind: ShapeKind, k: usize, cumulative: bool) -> bool {
    match prenex_shape(phi, cumulative) {
        None => false,
        Some((have, j)) => shape_fits(have, j, kind, k, cumulative),
    }
}

pub fn shape_fits(have: ShapeKind, j: usize, kind: ShapeKind, k: usize, cumulative: bool) -> bool {
    if j == 0 {
        return cumulative || k == 0;
    }
    if cumulative {
        (have == kind && j <= k) || (have != kind && j < k)
    } else {
        have == kind && j == k
    }
}
