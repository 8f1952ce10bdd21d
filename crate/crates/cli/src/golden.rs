//! Golden files: one formula per file with the expectations to check.
//!
//! ```text
//! # comment
//! formula: ~forall x. P(x)
//! class: E_1            # each listed class must hold
//! degree: 1
//! shape: Pi_1           # or `not prenex`
//! mode: u               # prenex mode, with optional level/budget/...
//! level: 1
//! budget: U/Pi          # certificate must stay within this row
//! certificate: Sigma1-DNE, U1+-DNS
//! output: forall x. P(x)
//! equiv: forall x. P(x) # oracle equivalence with the formula
//! valid: yes            # oracle validity of the formula
//! scope: pure-logic     # for equiv/valid
//! kuroda: ~~forall x. ~~P(x)
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use prenex_core::classify::fits;
use prenex_core::{
    alpha_eq, check_equiv, check_valid, class_membership, degree, kuroda, parse_formula, prenex_shape,
    BudgetRow, Certificate, Formula, OracleConfig, PrincipleTag, ShapeKind, Signature, ValidityScope,
};
use serde_json::json;

use crate::jobs::{budget_verdict, default_level, mode_name, read, run_mode, tags};
use crate::{CliError, ModeArg, Report};

const KEYS: [&str; 13] = [
    "formula",
    "class",
    "degree",
    "shape",
    "mode",
    "level",
    "budget",
    "certificate",
    "output",
    "equiv",
    "valid",
    "scope",
    "kuroda",
];

pub struct Golden {
    pub formula: Formula,
    classes: Vec<(char, bool, usize)>,
    degree: Option<usize>,
    shape: Option<Option<(ShapeKind, usize)>>,
    prenex: Option<PrenexExpect>,
    equiv: Option<Formula>,
    valid: bool,
    scope: ValidityScope,
    kuroda: Option<Formula>,
}

struct PrenexExpect {
    mode: ModeArg,
    level: Option<usize>,
    budget: Option<BudgetRow>,
    certificate: Option<Certificate>,
    output: Option<Formula>,
}

/// Whether a file uses the key/value golden layout rather than holding a
/// bare formula.
pub fn looks_golden(src: &str) -> bool {
    src.lines().any(|l| l.trim_start().starts_with("formula:"))
}

fn parse_mode(s: &str) -> Option<ModeArg> {
    Some(match s {
        "e" => ModeArg::E,
        "u" => ModeArg::U,
        "df-e" => ModeArg::DfE,
        "df-u" => ModeArg::DfU,
        "nn-u" => ModeArg::NnU,
        "neg-e" => ModeArg::NegE,
        _ => return None,
    })
}

/// `E_1`, `U_2^+`, `F_0`.
fn parse_class(s: &str) -> Option<(char, bool, usize)> {
    let (body, plus) = match s.strip_suffix("^+") {
        Some(b) => (b, true),
        None => (s, false),
    };
    let (fam, k) = body.split_once('_')?;
    let fam = match fam {
        "E" => 'E',
        "U" => 'U',
        "F" if !plus => 'F',
        _ => return None,
    };
    Some((fam, plus, k.parse().ok()?))
}

fn parse_shape(s: &str) -> Option<Option<(ShapeKind, usize)>> {
    if s == "not prenex" {
        return Some(None);
    }
    let (kind, k) = s.split_once('_')?;
    let kind = match kind {
        "Sigma" => ShapeKind::Sigma,
        "Pi" => ShapeKind::Pi,
        _ => return None,
    };
    Some(Some((kind, k.parse().ok()?)))
}

pub fn parse(path: &str, src: &str) -> Result<Golden, CliError> {
    let bad = |line: usize, msg: String| CliError::MalformedGoldenFile { path: path.to_string(), line, msg };
    let mut kv: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once(':').ok_or_else(|| bad(i + 1, "expected `key: value`".into()))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(bad(i + 1, format!("unknown key `{k}`")));
        }
        if kv.insert(k, (i + 1, v.trim())).is_some() {
            return Err(bad(i + 1, format!("duplicate key `{k}`")));
        }
    }
    let formula_at = |key: &str| -> Result<Option<Formula>, CliError> {
        match kv.get(key) {
            None => Ok(None),
            Some(&(ln, v)) => parse_formula(v).map(Some).map_err(|e| bad(ln, format!("{key}: {e}"))),
        }
    };
    let formula = formula_at("formula")?.ok_or_else(|| bad(0, "missing `formula`".into()))?;
    let classes = match kv.get("class") {
        None => Vec::new(),
        Some(&(ln, v)) => v
            .split_whitespace()
            .map(|c| parse_class(c).ok_or_else(|| bad(ln, format!("bad class `{c}`"))))
            .collect::<Result<_, _>>()?,
    };
    let number = |key: &str| -> Result<Option<usize>, CliError> {
        match kv.get(key) {
            None => Ok(None),
            Some(&(ln, v)) => v.parse().map(Some).map_err(|_| bad(ln, format!("{key}: expected a number"))),
        }
    };
    let degree = number("degree")?;
    let shape = match kv.get("shape") {
        None => None,
        Some(&(ln, v)) => Some(parse_shape(v).ok_or_else(|| bad(ln, format!("bad shape `{v}`")))?),
    };
    let prenex_keys = ["level", "budget", "certificate", "output"];
    let prenex = match kv.get("mode") {
        None => {
            if let Some(k) = prenex_keys.iter().find(|k| kv.contains_key(*k)) {
                return Err(bad(kv[k].0, format!("`{k}` needs `mode`")));
            }
            None
        }
        Some(&(ln, v)) => {
            let mode = parse_mode(v).ok_or_else(|| bad(ln, format!("unknown mode `{v}`")))?;
            let budget = match kv.get("budget") {
                None => None,
                Some(&(ln, v)) => Some(v.parse().map_err(|_| bad(ln, format!("unknown budget row `{v}`")))?),
            };
            let certificate = match kv.get("certificate") {
                None => None,
                Some(&(ln, v)) => {
                    let tags = v
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| PrincipleTag::parse_ascii(t).ok_or_else(|| bad(ln, format!("bad tag `{t}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(Certificate::from_tags(tags))
                }
            };
            Some(PrenexExpect { mode, level: number("level")?, budget, certificate, output: formula_at("output")? })
        }
    };
    let equiv = formula_at("equiv")?;
    let valid = match kv.get("valid") {
        None => false,
        Some(&(_, "yes")) => true,
        Some(&(ln, v)) => return Err(bad(ln, format!("valid: expected `yes`, got `{v}`"))),
    };
    let scope = match kv.get("scope") {
        None => ValidityScope::PureLogic,
        Some(&(ln, v)) => {
            if equiv.is_none() && !valid {
                return Err(bad(ln, "`scope` needs `equiv` or `valid`".into()));
            }
            ValidityScope::parse(v).ok_or_else(|| bad(ln, format!("unknown scope `{v}`")))?
        }
    };
    let kuroda = formula_at("kuroda")?;
    Ok(Golden { formula, classes, degree, shape, prenex, equiv, valid, scope, kuroda })
}

fn has_class(phi: &Formula, (fam, plus, k): (char, bool, usize)) -> bool {
    let c = class_membership(phi, k);
    match (fam, plus) {
        ('F', _) => c.in_f,
        ('E', false) => c.in_e,
        ('U', false) => c.in_u,
        ('E', true) => c.in_e_plus,
        _ => c.in_u_plus,
    }
}

fn class_name((fam, plus, k): (char, bool, usize)) -> String {
    format!("{fam}_{k}{}", if plus { "^+" } else { "" })
}

/// Every expectation that does not hold.
pub fn check(g: &Golden, sig: &Signature, cfg: &OracleConfig) -> Result<Vec<String>, CliError> {
    let phi = &g.formula;
    let mut fails = Vec::new();
    match parse_formula(&phi.to_string()) {
        Ok(back) if alpha_eq(&back, phi) => {}
        _ => fails.push(format!("printed form does not reparse: {phi}")),
    }
    for &c in &g.classes {
        if !has_class(phi, c) {
            fails.push(format!("not in {}", class_name(c)));
        }
    }
    if let Some(d) = g.degree {
        if degree(phi) != d {
            fails.push(format!("degree {} instead of {d}", degree(phi)));
        }
    }
    if let Some(s) = g.shape {
        if prenex_shape(phi, false) != s {
            fails.push(format!("shape {:?} instead of {s:?}", prenex_shape(phi, false)));
        }
    }
    if let Some(p) = &g.prenex {
        let k = p.level.unwrap_or_else(|| default_level(phi, p.mode));
        match run_mode(phi, p.mode, k) {
            Err(e) => fails.push(format!("prenex {}: {e}", mode_name(p.mode))),
            Ok(t) => {
                let kind = match p.mode {
                    ModeArg::E | ModeArg::DfE => ShapeKind::Sigma,
                    _ => ShapeKind::Pi,
                };
                if !fits(&t.output, kind, k, true) {
                    fails.push(format!("prenex output {} has the wrong shape", t.output));
                }
                if let Some(row) = p.budget {
                    if !budget_verdict(&t.certificate, row, k).0 {
                        fails.push(format!("certificate {:?} exceeds {row}", tags(&t.certificate)));
                    }
                }
                if let Some(c) = &p.certificate {
                    if &t.certificate != c {
                        fails.push(format!("certificate {:?} instead of {:?}", tags(&t.certificate), tags(c)));
                    }
                }
                if let Some(o) = &p.output {
                    if !alpha_eq(&t.output, o) {
                        fails.push(format!("prenex output {} instead of {o}", t.output));
                    }
                }
            }
        }
    }
    if let Some(b) = &g.equiv {
        let r = check_equiv(phi, b, sig, g.scope, cfg)?;
        if !r.pass {
            fails.push(format!("not equivalent to {b}"));
        }
    }
    if g.valid && !check_valid(phi, sig, g.scope, cfg)?.pass {
        fails.push("not valid".into());
    }
    if let Some(n) = &g.kuroda {
        let got = kuroda(phi);
        if !alpha_eq(&got, n) {
            fails.push(format!("kuroda gives {got} instead of {n}"));
        }
    }
    Ok(fails)
}

pub fn run_dir(dir: &Path, sig: &Signature, cfg: &OracleConfig) -> Result<Report, CliError> {
    let io = |e| CliError::Io { path: dir.display().to_string(), source: e };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    files.retain(|p| p.extension().is_some_and(|x| x == "fol"));
    files.sort();
    let mut warnings = Vec::new();
    if files.is_empty() {
        warnings.push(format!("no .fol files in {}", dir.display()));
    }
    let mut lines = Vec::new();
    let mut cases = Vec::new();
    let mut failed = 0;
    for f in &files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let g = parse(&f.display().to_string(), &read(f)?)?;
        let fails = check(&g, sig, cfg)?;
        if fails.is_empty() {
            lines.push(format!("PASS {name}"));
        } else {
            failed += 1;
            lines.push(format!("FAIL {name}: {}", fails.join("; ")));
        }
        cases.push(json!({"file": name, "pass": fails.is_empty(), "failures": fails}));
    }
    let passed = files.len() - failed;
    lines.push(format!("{passed} passed, {failed} failed"));
    let j = json!({"dir": dir.display().to_string(), "cases": cases, "passed": passed, "failed": failed});
    Ok(Report { ok: failed == 0, lines, json: j, warnings })
}
