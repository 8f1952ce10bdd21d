//! Declared function and predicate symbols with their finite-model readings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Formula, STAR};
use crate::error::{Error, Result};

/// How the oracle interprets a function symbol on `[0, B)`.
///
/// Arithmetic saturates at `B-1`. `Table` values are indexed by the
/// arguments read as base-`B` digits (first argument least significant),
/// modulo the table length, and clamped into the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FuncInterp {
    Zero,
    One,
    Succ,
    Add,
    Mul,
    Pair,
    Proj1,
    Proj2,
    Table(Vec<u32>),
}

/// How the oracle interprets a predicate symbol. `Free` predicates are swept
/// over every (or a sample of) truth table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredInterp {
    Free,
    Eq,
    Le,
    Lt,
    Table(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuncSym {
    pub arity: usize,
    pub interp: FuncInterp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredSym {
    pub arity: usize,
    pub interp: PredInterp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub functions: BTreeMap<String, FuncSym>,
    pub predicates: BTreeMap<String, PredSym>,
    /// Whether quantifier contraction may be used; requires pairing.
    pub contraction: bool,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::arithmetic()
    }
}

impl Signature {
    /// `0`, `1`, `S`, `add`, `mul`, `pair`, `proj1`, `proj2`, the stand-in
    /// `U` (read as `proj1`), and the decidable predicates `eq`, `le`, `lt`.
    pub fn arithmetic() -> Signature {
        let mut s = Signature {
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
            contraction: false,
        };
        for (n, a, i) in [
            ("0", 0, FuncInterp::Zero),
            ("1", 0, FuncInterp::One),
            ("S", 1, FuncInterp::Succ),
            ("add", 2, FuncInterp::Add),
            ("mul", 2, FuncInterp::Mul),
            ("pair", 2, FuncInterp::Pair),
            ("proj1", 1, FuncInterp::Proj1),
            ("proj2", 1, FuncInterp::Proj2),
            ("U", 1, FuncInterp::Proj1),
        ] {
            s.functions.insert(n.into(), FuncSym { arity: a, interp: i });
        }
        for (n, i) in [("eq", PredInterp::Eq), ("le", PredInterp::Le), ("lt", PredInterp::Lt)] {
            s.predicates.insert(n.into(), PredSym { arity: 2, interp: i });
        }
        s
    }

    pub fn with_pred(mut self, name: &str, arity: usize) -> Signature {
        self.predicates
            .insert(name.into(), PredSym { arity, interp: PredInterp::Free });
        self
    }

    pub fn with_star(self) -> Signature {
        self.with_pred(STAR, 0)
    }

    pub fn with_contraction(mut self, on: bool) -> Signature {
        self.contraction = on;
        self
    }

    pub fn has_pairing(&self) -> bool {
        ["pair", "proj1", "proj2"]
            .iter()
            .all(|n| self.functions.contains_key(*n))
    }

    pub fn validate(&self) -> Result<()> {
        for c in ["0", "1"] {
            match self.functions.get(c) {
                Some(f) if f.arity == 0 => {}
                _ => return Err(Error::InvalidSignature(format!("constant {c} is required"))),
            }
        }
        if self.functions.get("0").map(|f| &f.interp) == self.functions.get("1").map(|f| &f.interp)
        {
            return Err(Error::InvalidSignature("0 and 1 must be distinct".into()));
        }
        if self.contraction && !self.has_pairing() {
            return Err(Error::PairingSymbolsMissing);
        }
        for (name, f) in &self.functions {
            let want = match f.interp {
                FuncInterp::Zero | FuncInterp::One => Some(0),
                FuncInterp::Succ | FuncInterp::Proj1 | FuncInterp::Proj2 => Some(1),
                FuncInterp::Add | FuncInterp::Mul | FuncInterp::Pair => Some(2),
                FuncInterp::Table(ref t) if t.is_empty() => {
                    return Err(Error::InvalidSignature(format!("empty table for {name}")))
                }
                FuncInterp::Table(_) => None,
            };
            if let Some(w) = want {
                if w != f.arity {
                    return Err(Error::ArityMismatch { name: name.clone(), expected: w, found: f.arity });
                }
            }
        }
        for (name, p) in &self.predicates {
            match p.interp {
                PredInterp::Eq | PredInterp::Le | PredInterp::Lt if p.arity != 2 => {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: 2,
                        found: p.arity,
                    })
                }
                PredInterp::Table(ref t) if t.is_empty() => {
                    return Err(Error::InvalidSignature(format!("empty table for {name}")))
                }
                _ => {}
            }
            if self.functions.contains_key(name) {
                return Err(Error::InvalidSignature(format!("{name} declared twice")));
            }
        }
        Ok(())
    }

    /// Declares every undeclared predicate used in `formulas` as a free
    /// predicate at the arity of its use. Conflicting uses are an error.
    pub fn infer_predicates<'a>(
        &self,
        formulas: impl IntoIterator<Item = &'a Formula>,
    ) -> Result<Signature> {
        let mut out = self.clone();
        for f in formulas {
            for (p, n) in f.predicates() {
                match out.predicates.get(&p) {
                    Some(s) if s.arity != n => {
                        return Err(Error::ArityMismatch { name: p, expected: s.arity, found: n })
                    }
                    Some(_) => {}
                    None => {
                        out = out.with_pred(&p, n);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Parses the declarative text format:
    ///
    /// ```text
    /// # comment
    /// fn NAME ARITY [zero|one|succ|add|mul|pair|proj1|proj2|table V...]
    /// pred NAME ARITY [free|eq|le|lt|table B...]
    /// contraction on|off
    /// ```
    pub fn parse_text(src: &str) -> Result<Signature> {
        let mut s = Signature {
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
            contraction: false,
        };
        for (ln, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line: ln + 1, col: 1, msg: msg.to_string() };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "contraction" => {
                    s.contraction = match words.get(1) {
                        Some(&"on") => true,
                        Some(&"off") => false,
                        _ => return Err(bad("expected `contraction on|off`")),
                    }
                }
                "fn" | "pred" => {
                    let name = words.get(1).ok_or_else(|| bad("missing symbol name"))?;
                    let arity: usize = words
                        .get(2)
                        .and_then(|a| a.parse().ok())
                        .ok_or_else(|| bad("missing or invalid arity"))?;
                    let kind = words.get(3).copied();
                    let rest = &words[words.len().min(4)..];
                    let dup = s.functions.contains_key(*name) || s.predicates.contains_key(*name);
                    if dup {
                        return Err(bad(&format!("duplicate symbol {name}")));
                    }
                    if words[0] == "fn" {
                        let interp = match kind {
                            Some("zero") => FuncInterp::Zero,
                            Some("one") => FuncInterp::One,
                            Some("succ") => FuncInterp::Succ,
                            Some("add") => FuncInterp::Add,
                            Some("mul") => FuncInterp::Mul,
                            Some("pair") => FuncInterp::Pair,
                            Some("proj1") => FuncInterp::Proj1,
                            Some("proj2") => FuncInterp::Proj2,
                            Some("table") => FuncInterp::Table(
                                rest.iter()
                                    .map(|v| v.parse().map_err(|_| bad("bad table entry")))
                                    .collect::<Result<_>>()?,
                            ),
                            None => FuncInterp::Table(vec![0]),
                            Some(o) => return Err(bad(&format!("unknown function reading {o}"))),
                        };
                        s.functions.insert(name.to_string(), FuncSym { arity, interp });
                    } else {
                        let interp = match kind {
                            None | Some("free") => PredInterp::Free,
                            Some("eq") => PredInterp::Eq,
                            Some("le") => PredInterp::Le,
                            Some("lt") => PredInterp::Lt,
                            Some("table") => PredInterp::Table(
                                rest.iter()
                                    .map(|v| match *v {
                                        "1" | "true" => Ok(true),
                                        "0" | "false" => Ok(false),
                                        _ => Err(bad("bad table entry")),
                                    })
                                    .collect::<Result<_>>()?,
                            ),
                            Some(o) => return Err(bad(&format!("unknown predicate reading {o}"))),
                        };
                        s.predicates.insert(name.to_string(), PredSym { arity, interp });
                    }
                }
                other => return Err(bad(&format!("unknown directive {other}"))),
            }
        }
        s.validate()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_valid() {
        Signature::arithmetic().validate().unwrap();
        Signature::arithmetic().with_contraction(true).validate().unwrap();
    }

    #[test]
    fn contraction_needs_pairing() {
        let mut s = Signature::arithmetic().with_contraction(true);
        s.functions.remove("proj2");
        assert_eq!(s.validate(), Err(Error::PairingSymbolsMissing));
    }

    #[test]
    fn text_format() {
        let s = Signature::parse_text(
            "# demo\nfn 0 0 zero\nfn 1 0 one\nfn S 1 succ\npred T 3\npred small 1 table 1 1 0\ncontraction off\n",
        )
        .unwrap();
        assert_eq!(s.predicates["T"].interp, PredInterp::Free);
        assert_eq!(s.predicates["small"].interp, PredInterp::Table(vec![true, true, false]));
        assert!(Signature::parse_text("fn 0 0 zero\n").is_err());
        assert!(Signature::parse_text("fn 0 0 zero\nfn 1 0 zero\n").is_err());
        assert!(matches!(
            Signature::parse_text("fn 0 0 zero\nfn 1 0 one\nwidget x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn inference() {
        let f = crate::formula::parse_formula("P(x) & Q & P(y)").unwrap();
        let s = Signature::arithmetic().infer_predicates([&f]).unwrap();
        assert_eq!(s.predicates["P"].arity, 1);
        assert_eq!(s.predicates["Q"].arity, 0);
        let g = crate::formula::parse_formula("P(x) & P(x,y)").unwrap();
        assert!(matches!(
            Signature::arithmetic().infer_predicates([&g]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
