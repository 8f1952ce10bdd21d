//! Printer for the textual grammar. Output reparses to the same AST.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_formula, Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(c, args) if args.is_empty() => {
                if c.chars().all(|ch| ch.is_ascii_digit()) {
                    write!(f, "{c}")
                } else {
                    write!(f, "{c}()")
                }
            }
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

// Binding levels: `->` 1, `|` 2, `&` 3, prefix operators 4.
// `tail` is true when nothing follows in the enclosing text, which is the
// only place a quantifier may appear unparenthesised.
fn render(phi: &Formula, ctx: u8, tail: bool, out: &mut String) {
    let binary = |out: &mut String, a: &Formula, b: &Formula, op: &str, lvl: u8, la: u8, lb: u8| {
        let paren = ctx > lvl;
        let t = paren || tail;
        if paren {
            out.push('(');
        }
        render(a, la, false, out);
        out.push_str(op);
        render(b, lb, t, out);
        if paren {
            out.push(')');
        }
    };
    match phi {
        Formula::Bot => out.push_str("false"),
        Formula::Atom(p, ts) if ts.is_empty() => out.push_str(p),
        Formula::Atom(p, ts) => {
            out.push_str(p);
            out.push('(');
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&t.to_string());
            }
            out.push(')');
        }
        Formula::Not(a) => {
            out.push('~');
            render(a, 4, tail, out);
        }
        Formula::Imp(a, b) => binary(out, a, b, " -> ", 1, 2, 1),
        Formula::Or(a, b) => binary(out, a, b, " | ", 2, 2, 3),
        Formula::And(a, b) => binary(out, a, b, " & ", 3, 3, 4),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let kw = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            if !tail {
                out.push('(');
            }
            out.push_str(kw);
            out.push(' ');
            out.push_str(x);
            out.push_str(". ");
            render(a, 0, true, out);
            if !tail {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render(self, 0, true, &mut s);
        f.write_str(&s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_formula(&s).map_err(de::Error::custom)
    }
}
