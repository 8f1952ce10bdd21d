//! Classical semantics over small finite structures.
//!
//! Structures have domain `[0, B)`. Arithmetic saturates at `B-1`, pairing
//! is Cantor's, and every free predicate is swept over all of its truth
//! tables (or a seeded sample of them when the space is too large).
//!
//! Steps that need pairing are checked in an inflated structure `M'` whose
//! domain is large enough to hold the codes of every tuple over `[0, B)`.
//! In `M'` all symbols except the projections first clamp their arguments
//! into `[0, B)`, so clamping is a surjective homomorphism onto `M` and
//! projection-free formulas keep their truth value there.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{free_vars, Formula, FuncInterp, PredInterp, Signature, Term, STAR};
use crate::prenex::{EquivalenceChain, Relation, ValidityScope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub sizes: Vec<usize>,
    /// Most free predicates swept exhaustively.
    pub atom_budget: usize,
    /// Interpretations drawn per size when not exhaustive.
    pub samples: usize,
    pub seed: u64,
    /// Most truth-table bits swept exhaustively per size.
    pub exhaustive_bits: usize,
    /// Largest inflated domain accepted for pairing steps.
    pub pairing_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            sizes: vec![2, 3],
            atom_budget: 3,
            samples: 4096,
            seed: 0x05ee_d0f0_ac1e,
            exhaustive_bits: 16,
            pairing_cap: 512,
        }
    }
}

impl OracleConfig {
    pub fn with_sizes(mut self, sizes: &[usize]) -> Self {
        self.sizes = sizes.to_vec();
        self
    }
}

/// A concrete structure: base size, evaluation domain and free tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteStructure {
    pub size: usize,
    /// Equal to `size` unless inflated for pairing.
    pub domain: usize,
    /// Truth tables of free predicates, indexed row-major by arguments.
    pub tables: BTreeMap<String, Vec<bool>>,
}

impl FiniteStructure {
    pub fn new(size: usize, tables: BTreeMap<String, Vec<bool>>) -> FiniteStructure {
        FiniteStructure { size, domain: size, tables }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub structure: FiniteStructure,
    pub env: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    pub structures_examined: u64,
    pub exhaustive: bool,
    pub notes: Vec<String>,
    /// Index of the first failing step when replaying a chain.
    pub failed_step: Option<usize>,
}

impl CheckReport {
    fn merge(&mut self, other: CheckReport) {
        self.pass &= other.pass;
        self.structures_examined += other.structures_examined;
        self.exhaustive &= other.exhaustive;
        self.notes.extend(other.notes);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    fn vacuous() -> CheckReport {
        CheckReport {
            pass: true,
            counterexample: None,
            structures_examined: 0,
            exhaustive: true,
            notes: Vec::new(),
            failed_step: None,
        }
    }
}

// Compiled form: variables become slots into a flat environment.

#[derive(Debug, Clone)]
enum TermIr {
    Var(usize),
    Const(u64),
    Func(FuncInterp, Vec<TermIr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PredKind {
    Eq,
    Le,
    Lt,
}

#[derive(Debug, Clone)]
enum FormIr {
    Bot,
    Free { offset: usize, args: Vec<TermIr> },
    Fixed { kind: PredKind, args: Vec<TermIr> },
    Table { table: Vec<bool>, args: Vec<TermIr> },
    Not(Box<FormIr>),
    And(Box<FormIr>, Box<FormIr>),
    Or(Box<FormIr>, Box<FormIr>),
    Imp(Box<FormIr>, Box<FormIr>),
    All(usize, Box<FormIr>),
    Ex(usize, Box<FormIr>),
}

/// Layout of free-predicate tables for one base size.
struct Layout {
    preds: Vec<(String, usize)>,
    offsets: Vec<usize>,
    bits: usize,
}

impl Layout {
    fn new(preds: Vec<(String, usize)>, size: usize) -> Layout {
        let mut offsets = Vec::with_capacity(preds.len());
        let mut bits = 0usize;
        for (_, arity) in &preds {
            offsets.push(bits);
            bits = bits.saturating_add(size.saturating_pow(*arity as u32));
        }
        Layout { preds, offsets, bits }
    }

    fn offset(&self, name: &str) -> Option<usize> {
        self.preds.iter().position(|(p, _)| p == name).map(|i| self.offsets[i])
    }
}

struct Compiler<'a> {
    sig: &'a Signature,
    layout: &'a Layout,
    scope: Vec<(String, usize)>,
    next: usize,
}

impl Compiler<'_> {
    fn slot(&self, x: &str) -> Result<usize> {
        self.scope
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::UnboundVariable(x.to_string()))
    }

    fn term(&self, t: &Term) -> Result<TermIr> {
        match t {
            Term::Var(x) => Ok(TermIr::Var(self.slot(x)?)),
            Term::App(f, args) => {
                let sym = self.sig.functions.get(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if sym.arity != args.len() {
                    return Err(Error::ArityMismatch { name: f.clone(), expected: sym.arity, found: args.len() });
                }
                let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>>>()?;
                Ok(match sym.interp {
                    FuncInterp::Zero => TermIr::Const(0),
                    FuncInterp::One if args.is_empty() => TermIr::Func(FuncInterp::One, args),
                    ref i => TermIr::Func(i.clone(), args),
                })
            }
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<FormIr> {
        Ok(match f {
            Formula::Bot => FormIr::Bot,
            Formula::Atom(p, ts) => {
                let sym = self.sig.predicates.get(p).ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
                if sym.arity != ts.len() {
                    return Err(Error::ArityMismatch { name: p.clone(), expected: sym.arity, found: ts.len() });
                }
                let args = ts.iter().map(|t| self.term(t)).collect::<Result<Vec<_>>>()?;
                match &sym.interp {
                    PredInterp::Free => FormIr::Free {
                        offset: self.layout.offset(p).ok_or_else(|| Error::UnknownSymbol(p.clone()))?,
                        args,
                    },
                    PredInterp::Eq => FormIr::Fixed { kind: PredKind::Eq, args },
                    PredInterp::Le => FormIr::Fixed { kind: PredKind::Le, args },
                    PredInterp::Lt => FormIr::Fixed { kind: PredKind::Lt, args },
                    PredInterp::Table(t) => FormIr::Table { table: t.clone(), args },
                }
            }
            Formula::Not(a) => FormIr::Not(Box::new(self.formula(a)?)),
            Formula::And(a, b) => FormIr::And(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Or(a, b) => FormIr::Or(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Imp(a, b) => FormIr::Imp(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let s = self.next;
                self.next += 1;
                self.scope.push((x.clone(), s));
                let body = self.formula(a);
                self.scope.pop();
                let body = Box::new(body?);
                if matches!(f, Formula::Forall(..)) {
                    FormIr::All(s, body)
                } else {
                    FormIr::Ex(s, body)
                }
            }
        })
    }
}

fn cantor(x: u64, y: u64) -> u64 {
    (x + y) * (x + y + 1) / 2 + x
}

fn uncantor(z: u64) -> (u64, u64) {
    // w = floor((sqrt(8z+1)-1)/2), corrected for rounding.
    let mut w = (((8 * z + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let x = z - w * (w + 1) / 2;
    (x, w - x)
}

struct Env<'a> {
    size: u64,
    domain: u64,
    bits: &'a [bool],
    slots: Vec<u64>,
}

impl Env<'_> {
    fn clamp(&self, v: u64) -> u64 {
        v.min(self.size - 1)
    }

    fn index(&self, args: &[TermIr]) -> usize {
        let mut idx = 0u64;
        for a in args {
            idx = idx * self.size + self.clamp(self.term(a));
        }
        idx as usize
    }

    fn term(&self, t: &TermIr) -> u64 {
        match t {
            TermIr::Var(s) => self.slots[*s],
            TermIr::Const(c) => *c,
            TermIr::Func(f, args) => {
                let top = self.size - 1;
                let arg = |i: usize| self.clamp(self.term(&args[i]));
                match f {
                    FuncInterp::Zero => 0,
                    FuncInterp::One => 1u64.min(top),
                    FuncInterp::Succ => (arg(0) + 1).min(top),
                    FuncInterp::Add => (arg(0) + arg(1)).min(top),
                    FuncInterp::Mul => (arg(0) * arg(1)).min(top),
                    FuncInterp::Pair => cantor(arg(0), arg(1)).min(top),
                    FuncInterp::Proj1 => uncantor(self.term(&args[0])).0,
                    FuncInterp::Proj2 => uncantor(self.term(&args[0])).1,
                    FuncInterp::Table(vals) => {
                        let mut idx = 0u64;
                        for (i, _) in args.iter().enumerate().rev() {
                            idx = idx * self.size + arg(i);
                        }
                        (vals[idx as usize % vals.len()] as u64).min(top)
                    }
                }
            }
        }
    }

    fn eval(&mut self, f: &FormIr) -> bool {
        match f {
            FormIr::Bot => false,
            FormIr::Free { offset, args } => self.bits[offset + self.index(args)],
            FormIr::Fixed { kind, args } => {
                let a = self.clamp(self.term(&args[0]));
                let b = self.clamp(self.term(&args[1]));
                match kind {
                    PredKind::Eq => a == b,
                    PredKind::Le => a <= b,
                    PredKind::Lt => a < b,
                }
            }
            FormIr::Table { table, args } => table[self.index(args) % table.len()],
            FormIr::Not(a) => !self.eval(a),
            FormIr::And(a, b) => self.eval(a) && self.eval(b),
            FormIr::Or(a, b) => self.eval(a) || self.eval(b),
            FormIr::Imp(a, b) => !self.eval(a) || self.eval(b),
            FormIr::All(s, a) => {
                for v in 0..self.domain {
                    self.slots[*s] = v;
                    if !self.eval(a) {
                        return false;
                    }
                }
                true
            }
            FormIr::Ex(s, a) => {
                for v in 0..self.domain {
                    self.slots[*s] = v;
                    if self.eval(a) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

fn free_preds(formulas: &[&Formula], sig: &Signature) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = formulas
        .iter()
        .flat_map(|f| f.predicates())
        .filter(|(p, _)| matches!(sig.predicates.get(p).map(|s| &s.interp), Some(PredInterp::Free)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Deepest nesting of symbols read as projections.
fn proj_depth(f: &Formula, sig: &Signature) -> usize {
    fn term_depth(t: &Term, sig: &Signature) -> usize {
        match t {
            Term::Var(_) => 0,
            Term::App(g, args) => {
                let inner = args.iter().map(|a| term_depth(a, sig)).max().unwrap_or(0);
                let is_proj = matches!(
                    sig.functions.get(g).map(|s| &s.interp),
                    Some(FuncInterp::Proj1) | Some(FuncInterp::Proj2)
                );
                inner + is_proj as usize
            }
        }
    }
    let mut d = 0;
    f.visit_atoms(&mut |_, ts| {
        for t in ts {
            d = d.max(term_depth(t, sig));
        }
    });
    d
}

/// Domain of the inflated structure for projection nesting `depth`.
fn inflated_domain(size: usize, depth: usize) -> u64 {
    let top = size as u64 - 1;
    let mut c = top;
    for _ in 0..depth {
        c = cantor(top, c);
    }
    c + 1
}

/// Evaluates `φ` in `m` under `env`. Every free variable must be bound and
/// every symbol declared.
pub fn eval(
    phi: &Formula,
    sig: &Signature,
    m: &FiniteStructure,
    env: &BTreeMap<String, usize>,
) -> Result<bool> {
    if m.size == 0 {
        return Err(Error::ScopeUnsupported("empty domain".into()));
    }
    let preds = free_preds(&[phi], sig);
    let layout = Layout::new(preds, m.size);
    let mut bits = vec![false; layout.bits];
    for ((p, _), off) in layout.preds.iter().zip(&layout.offsets) {
        let t = m.tables.get(p).ok_or_else(|| Error::UnknownSymbol(p.clone()))?;
        let n = m.size.pow(
            layout.preds.iter().find(|(q, _)| q == p).map(|(_, a)| *a as u32).unwrap_or(0),
        );
        for i in 0..n {
            bits[off + i] = *t.get(i).unwrap_or(&false);
        }
    }
    let fv: Vec<String> = free_vars(phi).into_iter().collect();
    let mut c = Compiler { sig, layout: &layout, scope: Vec::new(), next: 0 };
    for x in &fv {
        let s = c.next;
        c.next += 1;
        c.scope.push((x.clone(), s));
    }
    let ir = c.formula(phi)?;
    let mut slots = vec![0u64; c.next];
    for (i, x) in fv.iter().enumerate() {
        slots[i] = *env.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))? as u64;
    }
    let mut e = Env { size: m.size as u64, domain: m.domain as u64, bits: &bits, slots };
    Ok(e.eval(&ir))
}

/// Core sweep: evaluates `formulas` in every admissible structure and
/// environment and asks `ok` about the resulting truth values.
fn sweep(
    formulas: &[&Formula],
    sig: &Signature,
    scope: ValidityScope,
    cfg: &OracleConfig,
    ok: &(dyn Fn(&[bool]) -> bool + Sync),
) -> Result<CheckReport> {
    let sig = sig.infer_predicates(formulas.iter().copied())?;
    let preds = free_preds(formulas, &sig);
    let mut fv = crate::formula::VarSet::new();
    for f in formulas {
        fv.extend(free_vars(f));
    }
    let fv: Vec<String> = fv.into_iter().collect();
    let depth = formulas.iter().map(|f| proj_depth(f, &sig)).max().unwrap_or(0);
    let mut report = CheckReport::vacuous();
    for &size in &cfg.sizes {
        if size == 0 || (scope != ValidityScope::PureLogic && size < 2) {
            report.notes.push(format!("size {size} skipped for {}", scope.name()));
            continue;
        }
        let domain = if scope == ValidityScope::NeedsPairing {
            if formulas.iter().filter(|f| proj_depth(f, &sig) > 0).count() == formulas.len() {
                return Err(Error::ScopeUnsupported(
                    "pairing steps need a projection-free side".into(),
                ));
            }
            let d = inflated_domain(size, depth);
            if d as usize > cfg.pairing_cap {
                return Err(Error::ScopeUnsupported(format!(
                    "inflated domain {d} exceeds cap {}",
                    cfg.pairing_cap
                )));
            }
            d as usize
        } else {
            size
        };
        let layout = Layout::new(preds.clone(), size);
        let mut c = Compiler { sig: &sig, layout: &layout, scope: Vec::new(), next: 0 };
        for x in &fv {
            let s = c.next;
            c.next += 1;
            c.scope.push((x.clone(), s));
        }
        let irs = formulas.iter().map(|f| c.formula(f)).collect::<Result<Vec<_>>>()?;
        let nslots = c.next;
        let exhaustive = preds.len() <= cfg.atom_budget && layout.bits <= cfg.exhaustive_bits;
        let count: u64 = if exhaustive { 1u64 << layout.bits } else { cfg.samples as u64 };
        let envs = (size as u64).saturating_pow(fv.len() as u32);
        let seed = cfg.seed ^ (size as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let bits_of = |i: u64| -> Vec<bool> {
            if exhaustive {
                (0..layout.bits).map(|b| (i >> b) & 1 == 1).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                (0..layout.bits).map(|_| rng.gen::<bool>()).collect()
            }
        };
        let check_one = |i: u64| -> Option<Counterexample> {
            let bits = bits_of(i);
            let mut vals = vec![false; irs.len()];
            for e in 0..envs {
                let mut slots = vec![0u64; nslots];
                let mut r = e;
                for s in slots.iter_mut().take(fv.len()) {
                    *s = r % size as u64;
                    r /= size as u64;
                }
                let mut env = Env { size: size as u64, domain: domain as u64, bits: &bits, slots };
                for (v, ir) in vals.iter_mut().zip(&irs) {
                    *v = env.eval(ir);
                }
                if !ok(&vals) {
                    let mut tables = BTreeMap::new();
                    for ((p, a), off) in layout.preds.iter().zip(&layout.offsets) {
                        let n = size.pow(*a as u32);
                        tables.insert(p.clone(), bits[*off..*off + n].to_vec());
                    }
                    let mut m = FiniteStructure::new(size, tables);
                    m.domain = domain;
                    let env_map = fv
                        .iter()
                        .zip(&env.slots)
                        .map(|(x, v)| (x.clone(), *v as usize))
                        .collect();
                    return Some(Counterexample { structure: m, env: env_map });
                }
            }
            None
        };
        let found = (0..count).into_par_iter().find_map_first(|i| check_one(i).map(|ce| (i, ce)));
        let examined = match &found {
            Some((i, _)) => i + 1,
            None => count,
        };
        if !exhaustive {
            report.notes.push(format!(
                "size {size}: sampled {count} of 2^{} interpretations",
                layout.bits
            ));
        }
        if domain != size {
            report.notes.push(format!("size {size}: pairing checked in domain {domain}"));
        }
        report.merge(CheckReport {
            pass: found.is_none(),
            counterexample: found.map(|(_, ce)| ce),
            structures_examined: examined,
            exhaustive,
            notes: Vec::new(),
            failed_step: None,
        });
        if !report.pass {
            break;
        }
    }
    Ok(report)
}

/// Compares the truth values of two formulas in every admissible structure
/// and environment.
pub fn check_equiv(
    a: &Formula,
    b: &Formula,
    sig: &Signature,
    scope: ValidityScope,
    cfg: &OracleConfig,
) -> Result<CheckReport> {
    sweep(&[a, b], sig, scope, cfg, &|v| v[0] == v[1])
}

/// Checks that `φ` holds in every admissible structure and environment.
pub fn check_valid(
    phi: &Formula,
    sig: &Signature,
    scope: ValidityScope,
    cfg: &OracleConfig,
) -> Result<CheckReport> {
    sweep(&[phi], sig, scope, cfg, &|v| v[0])
}

/// Replaces the placeholder by `psi`, without any capture check.
fn plug_star(f: &Formula, psi: &Formula) -> Formula {
    match f {
        Formula::Atom(p, ts) if p == STAR && ts.is_empty() => psi.clone(),
        Formula::Bot | Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(plug_star(a, psi)),
        Formula::And(a, b) => Formula::and(plug_star(a, psi), plug_star(b, psi)),
        Formula::Or(a, b) => Formula::or(plug_star(a, psi), plug_star(b, psi)),
        Formula::Imp(a, b) => Formula::imp(plug_star(a, psi), plug_star(b, psi)),
        Formula::Forall(x, a) => Formula::forall(x, plug_star(a, psi)),
        Formula::Exists(x, a) => Formula::exists(x, plug_star(a, psi)),
    }
}

/// Checks every step of a chain by its own relation and scope.
pub fn replay_chain(chain: &EquivalenceChain, sig: &Signature, cfg: &OracleConfig) -> Result<CheckReport> {
    let mut report = CheckReport::vacuous();
    let mut cur = &chain.start;
    for (i, s) in chain.steps.iter().enumerate() {
        if &s.before != cur {
            report.pass = false;
            report.failed_step = Some(i);
            report.notes.push(format!("step {i} does not start where step {} ended", i.wrapping_sub(1)));
            return Ok(report);
        }
        cur = &s.after;
        let r = match &s.relation {
            Relation::Equiv => check_equiv(&s.before, &s.after, sig, s.scope, cfg),
            Relation::Implies => {
                check_valid(&Formula::imp(s.before.clone(), s.after.clone()), sig, s.scope, cfg)
            }
            Relation::Generalize(x) => check_valid(
                &Formula::imp(Formula::forall(x, s.before.clone()), s.after.clone()),
                sig,
                s.scope,
                cfg,
            ),
            Relation::Instance => {
                let both = Formula::and(plug_star(&s.before, &Formula::top()), plug_star(&s.before, &Formula::Bot));
                check_valid(&Formula::imp(both, s.after.clone()), sig, s.scope, cfg)
            }
        };
        let r = r.map_err(|e| match e {
            Error::ScopeUnsupported(m) => Error::ScopeUnsupported(format!("step {i}: {m}")),
            other => other,
        })?;
        let failed = !r.pass;
        report.merge(r);
        if failed {
            report.failed_step = Some(i);
            report.notes.push(format!("step {i} ({}) failed", s.justification));
            return Ok(report);
        }
    }
    Ok(report)
}
