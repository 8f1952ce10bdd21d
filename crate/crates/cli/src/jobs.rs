use std::path::Path;

use prenex_core::classify::fits;
use prenex_core::prenex::{neg_e_nn_pi, nn_u_prenex};
use prenex_core::{
    a_translate, alt_paths, budget_leq, check_equiv, check_valid, class_membership, conservation_chain,
    degree, kuroda, kuroda_inner, parse_formula, pnft_budget, prenex_df, prenex_e, prenex_shape, prenex_u,
    replay_chain, substitute_star, BudgetRow, Certificate, CheckReport, EquivalenceChain, Formula, Mode,
    OracleConfig, ShapeKind, Signature, Transformed, ValidityScope,
};
use serde_json::{json, Value};

use crate::golden;
use crate::{Cli, Cmd, CliError, Common, ModeArg, Report, TranslateArg};

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Classify { input, level, strict } => classify(&formula(input)?, *level, *strict),
        Cmd::Prenex { input, mode, level, contract, verify } => {
            let phi = formula(input)?;
            prenex(&phi, *mode, *level, *contract, *verify, o)
        }
        Cmd::Translate { input, which, level, verify } => {
            translate(&formula(input)?, which, *level, verify.then_some(o))
        }
        Cmd::Verify { a, b, scope } => {
            let scope = parse_scope(scope)?;
            let a = formula(a)?;
            let b = b.as_deref().map(formula).transpose()?;
            verify(&a, b.as_ref(), scope, o)
        }
        Cmd::Chain { file } => chain(file, o),
        Cmd::Corpus { dir } => golden::run_dir(dir, &signature(o)?, &o.oracle()?),
    }
}

pub fn parse_scope(s: &str) -> Result<ValidityScope, CliError> {
    ValidityScope::parse(s).ok_or_else(|| {
        CliError::Usage(format!("unknown scope `{s}` (pure-logic, needs-zero-one, needs-pairing)"))
    })
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

/// A literal formula, or the formula held by a file (plain or golden).
fn formula(input: &str) -> Result<Formula, CliError> {
    let path = Path::new(input);
    if !path.is_file() {
        return parse_formula(input).map_err(CliError::Core);
    }
    let src = read(path)?;
    if golden::looks_golden(&src) {
        return Ok(golden::parse(&path.display().to_string(), &src)?.formula);
    }
    parse_formula(&src).map_err(|e| CliError::In { context: path.display().to_string(), source: e })
}

pub fn signature(o: &Common) -> Result<Signature, CliError> {
    match &o.sig {
        None => Ok(Signature::arithmetic()),
        Some(p) => {
            let sig = Signature::parse_text(&read(p)?)
                .map_err(|e| CliError::In { context: p.display().to_string(), source: e })?;
            sig.validate()?;
            Ok(sig)
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The finest class names at the formula's own degree, e.g. `E_1`.
pub fn least_classes(phi: &Formula) -> Vec<String> {
    let c = class_membership(phi, degree(phi));
    let d = c.degree;
    match (c.in_e, c.in_u) {
        (true, true) => vec![format!("E_{d}"), format!("U_{d}")],
        (true, false) => vec![format!("E_{d}")],
        (false, true) => vec![format!("U_{d}")],
        (false, false) => vec![format!("F_{d}")],
    }
}

fn shape_name(s: Option<(ShapeKind, usize)>) -> String {
    match s {
        None => "not prenex".to_string(),
        Some((ShapeKind::Sigma, k)) => format!("Sigma_{k}"),
        Some((ShapeKind::Pi, k)) => format!("Pi_{k}"),
    }
}

fn classify(phi: &Formula, level: Option<usize>, strict: bool) -> Result<Report, CliError> {
    let paths: Vec<String> = alt_paths(phi).iter().map(|p| p.to_string()).collect();
    let d = degree(phi);
    let k = level.unwrap_or(d);
    let c = class_membership(phi, k);
    let least = least_classes(phi);
    let shape = shape_name(prenex_shape(phi, false));
    // Cumulative shapes let blocks be empty, so a prenex formula sits in
    // both Σ_k and Π_k above its own level.
    let within: Vec<String> = if strict {
        Vec::new()
    } else {
        [(ShapeKind::Sigma, "Sigma"), (ShapeKind::Pi, "Pi")]
            .into_iter()
            .filter(|(s, _)| fits(phi, *s, k, true))
            .map(|(_, n)| format!("{n}_{k}"))
            .collect()
    };
    let mut lines = vec![
        format!("formula: {phi}"),
        format!("alt: {{{}}}", paths.join(", ")),
        format!("degree: {d}"),
        format!("class: {}", least.join(" ")),
        format!(
            "at k={k}: F {} E {} U {} E+ {} U+ {}",
            yes(c.in_f),
            yes(c.in_e),
            yes(c.in_u),
            yes(c.in_e_plus),
            yes(c.in_u_plus)
        ),
        format!("least E+: {}, least U+: {}", c.min_e_plus, c.min_u_plus),
        format!("shape: {shape}"),
    ];
    if !strict {
        lines.push(format!("cumulative at k={k}: {}", if within.is_empty() { "none".into() } else { within.join(" ") }));
    }
    let mut j = json!({
        "formula": phi.to_string(),
        "alt": paths,
        "degree": d,
        "class": least,
        "level": k,
        "flags": {"F": c.in_f, "E": c.in_e, "U": c.in_u, "E+": c.in_e_plus, "U+": c.in_u_plus},
        "least": {"E+": c.min_e_plus, "U+": c.min_u_plus},
        "shape": shape,
    });
    if !strict {
        j["cumulative"] = json!(within);
    }
    Ok(Report { ok: true, lines, json: j, warnings: vec![] })
}

pub fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::E => "e",
        ModeArg::U => "u",
        ModeArg::DfE => "df-e",
        ModeArg::DfU => "df-u",
        ModeArg::NnU => "nn-u",
        ModeArg::NegE => "neg-e",
    }
}

pub fn row_of(m: ModeArg) -> Option<BudgetRow> {
    match m {
        ModeArg::E => Some(BudgetRow::EToSigma),
        ModeArg::U => Some(BudgetRow::UToPi),
        ModeArg::DfE => Some(BudgetRow::DfEToSigma),
        ModeArg::DfU => Some(BudgetRow::DfUToPi),
        ModeArg::NnU => Some(BudgetRow::NnUToNnPi),
        ModeArg::NegE => None,
    }
}

fn target_kind(m: ModeArg) -> ShapeKind {
    match m {
        ModeArg::E | ModeArg::DfE => ShapeKind::Sigma,
        _ => ShapeKind::Pi,
    }
}

pub fn default_level(phi: &Formula, m: ModeArg) -> usize {
    let c = class_membership(phi, 0);
    match m {
        ModeArg::E | ModeArg::DfE | ModeArg::NegE => c.min_e_plus,
        _ => c.min_u_plus,
    }
}

pub fn run_mode(phi: &Formula, m: ModeArg, k: usize) -> prenex_core::Result<Transformed> {
    match m {
        ModeArg::E => prenex_e(phi, k),
        ModeArg::U => prenex_u(phi, k),
        ModeArg::DfE => prenex_df(phi, Mode::E, k),
        ModeArg::DfU => prenex_df(phi, Mode::U, k),
        ModeArg::NnU => nn_u_prenex(phi, k),
        ModeArg::NegE => neg_e_nn_pi(phi, k),
    }
}

pub fn tags(c: &Certificate) -> Vec<String> {
    c.tags().map(|t| t.ascii()).collect()
}

fn tag_list(c: &Certificate) -> String {
    format!("{{{}}}", tags(c).join(", "))
}

/// Whether `c` stays within the row budget, with the row's two parts.
pub fn budget_verdict(c: &Certificate, row: BudgetRow, k: usize) -> (bool, Certificate, Certificate) {
    let (p, q) = pnft_budget(row, k);
    (budget_leq(c, &p.union(&q)), p, q)
}

fn chain_lines(chain: &EquivalenceChain, lines: &mut Vec<String>) {
    lines.push(format!("chain: {} steps from {}", chain.steps.len(), chain.start));
    for (i, s) in chain.steps.iter().enumerate() {
        let mut extra = vec![s.scope.name().to_string(), format!("{:?}", s.relation)];
        extra.extend(s.tags.iter().map(|t| t.ascii()));
        lines.push(format!("  {i}: {} [{}; {}]", s.after, s.justification, extra.join(", ")));
    }
}

fn report_lines(r: &CheckReport, what: &str, lines: &mut Vec<String>) {
    lines.push(format!(
        "{what}: {} ({} structures, {})",
        if r.pass { "pass" } else { "FAIL" },
        r.structures_examined,
        if r.exhaustive { "exhaustive" } else { "sampled" }
    ));
    if let Some(i) = r.failed_step {
        lines.push(format!("  failed step: {i}"));
    }
    if let Some(cx) = &r.counterexample {
        let env: Vec<String> = cx.env.iter().map(|(x, v)| format!("{x}={v}")).collect();
        lines.push(format!("  counterexample: size {}, env {{{}}}", cx.structure.size, env.join(", ")));
        for (p, t) in &cx.structure.tables {
            let bits: String = t.iter().map(|b| if *b { '1' } else { '0' }).collect();
            lines.push(format!("    {p}: {bits}"));
        }
    }
    // Chain replays repeat the same sampling note once per step.
    let mut notes: Vec<(&String, usize)> = Vec::new();
    for n in &r.notes {
        match notes.iter_mut().find(|(m, _)| *m == n) {
            Some((_, c)) => *c += 1,
            None => notes.push((n, 1)),
        }
    }
    for (n, c) in notes {
        let times = if c > 1 { format!(" (x{c})") } else { String::new() };
        lines.push(format!("  note: {n}{times}"));
    }
}

fn prenex(
    phi: &Formula,
    mode: ModeArg,
    level: Option<usize>,
    contract: bool,
    verify: bool,
    o: &Common,
) -> Result<Report, CliError> {
    let k = level.unwrap_or_else(|| default_level(phi, mode));
    let mut t = run_mode(phi, mode, k)?;
    let sig = signature(o)?;
    if contract {
        t = t.contracted(&sig)?;
    }
    let kind = target_kind(mode);
    let shape_ok = contract || fits(&t.output, kind, k, true);
    let mut ok = shape_ok;
    let mut lines = vec![
        format!("input: {phi}"),
        format!("mode: {}, level: {k}", mode_name(mode)),
        format!("output: {}", t.output),
        format!("certificate: {}", tag_list(&t.certificate)),
    ];
    let budget = match row_of(mode) {
        Some(row) => {
            let (within, p, q) = budget_verdict(&t.certificate, row, k);
            ok &= within;
            lines.push(format!(
                "budget: {row} P={} Q={}: {}",
                tag_list(&p),
                tag_list(&q),
                if within { "within" } else { "EXCEEDED" }
            ));
            json!({"row": row.name(), "principle": tags(&p), "side": tags(&q), "within": within})
        }
        None => {
            lines.push("budget: no row for this mode".into());
            Value::Null
        }
    };
    if !shape_ok {
        lines.push(format!("shape: output is not {}_{k}", if kind == ShapeKind::Sigma { "Sigma" } else { "Pi" }));
    }
    chain_lines(&t.chain, &mut lines);
    let mut j = json!({
        "input": phi.to_string(),
        "mode": mode_name(mode),
        "level": k,
        "output": t.output.to_string(),
        "certificate": tags(&t.certificate),
        "budget": budget,
        "chain": t.chain,
    });
    if verify {
        let r = replay_chain(&t.chain, &sig, &o.oracle()?)?;
        ok &= r.pass;
        report_lines(&r, "replay", &mut lines);
        j["replay"] = json!(r);
    }
    Ok(Report { ok, lines, json: j, warnings: vec![] })
}

/// Splits `ψ -> forall x. exists y. φ1`.
fn conservation_parts(phi: &Formula) -> Option<(&Formula, &str, &str, &Formula)> {
    let Formula::Imp(psi, rest) = phi else { return None };
    let Formula::Forall(x, inner) = rest.as_ref() else { return None };
    let Formula::Exists(y, phi1) = inner.as_ref() else { return None };
    Some((psi, x, y, phi1))
}

fn translate(
    phi: &Formula,
    which: &TranslateArg,
    level: Option<usize>,
    verify: Option<&Common>,
) -> Result<Report, CliError> {
    let mut lines = vec![format!("input: {phi}")];
    let mut j = json!({"input": phi.to_string()});
    // The check to run, as (left, right) for equivalence or a single formula
    // for validity.
    let (name, out, check): (&str, Formula, Option<(Formula, Option<Formula>)>) = if which.kuroda {
        let out = kuroda(phi);
        ("kuroda", out.clone(), Some((phi.clone(), Some(out))))
    } else if which.kuroda_inner {
        let out = kuroda_inner(phi);
        ("kuroda-inner", out.clone(), Some((Formula::imp(phi.clone(), out), None)))
    } else if which.atrans {
        let out = a_translate(phi);
        let back = substitute_star(&out, &Formula::Bot)?;
        ("atrans", out, Some((back, Some(phi.clone()))))
    } else if let Some(psi) = &which.subst {
        let psi = formula(psi)?;
        ("subst", substitute_star(phi, &psi)?, None)
    } else {
        let (psi, x, y, phi1) = conservation_parts(phi).ok_or_else(|| {
            CliError::Usage("--conservation needs `psi -> forall x. exists y. phi1`".into())
        })?;
        let k = match level {
            Some(k) => k,
            None => (0..=degree(phi1) + 1)
                .find(|&k| fits(phi1, ShapeKind::Pi, k, true))
                .ok_or_else(|| CliError::Core(prenex_core::Error::NotInClass(format!("{phi1} is not Π_k"))))?,
        };
        let chain = conservation_chain(psi, x, y, phi1, k)?;
        lines.push(format!("translation: conservation, level {k}"));
        lines.push(format!("output: {}", chain.end()));
        lines.push(format!("certificate: {}", tag_list(&chain.certificate())));
        chain_lines(&chain, &mut lines);
        j["translation"] = json!("conservation");
        j["level"] = json!(k);
        j["output"] = json!(chain.end().to_string());
        j["certificate"] = json!(tags(&chain.certificate()));
        let mut ok = true;
        if let Some(o) = verify {
            let r = replay_chain(&chain, &signature(o)?, &o.oracle()?)?;
            ok = r.pass;
            report_lines(&r, "replay", &mut lines);
            j["replay"] = json!(r);
        }
        j["chain"] = json!(chain);
        return Ok(Report { ok, lines, json: j, warnings: vec![] });
    };
    lines.push(format!("translation: {name}"));
    lines.push(format!("output: {out}"));
    j["translation"] = json!(name);
    j["output"] = json!(out.to_string());
    let mut ok = true;
    if let (Some(o), Some((a, b))) = (verify, check) {
        let sig = signature(o)?;
        let cfg = o.oracle()?;
        let r = match &b {
            Some(b) => check_equiv(&a, b, &sig, ValidityScope::PureLogic, &cfg)?,
            None => check_valid(&a, &sig, ValidityScope::PureLogic, &cfg)?,
        };
        ok = r.pass;
        report_lines(&r, "check", &mut lines);
        j["check"] = json!(r);
    }
    Ok(Report { ok, lines, json: j, warnings: vec![] })
}

fn verify(a: &Formula, b: Option<&Formula>, scope: ValidityScope, o: &Common) -> Result<Report, CliError> {
    let sig = signature(o)?;
    let cfg: OracleConfig = o.oracle()?;
    let (r, what) = match b {
        Some(b) => (check_equiv(a, b, &sig, scope, &cfg)?, "equivalence"),
        None => (check_valid(a, &sig, scope, &cfg)?, "validity"),
    };
    let mut lines = vec![format!("a: {a}")];
    if let Some(b) = b {
        lines.push(format!("b: {b}"));
    }
    lines.push(format!("scope: {}, sizes: {:?}", scope.name(), cfg.sizes));
    report_lines(&r, what, &mut lines);
    let j = json!({
        "a": a.to_string(),
        "b": b.map(|b| b.to_string()),
        "check": what,
        "scope": scope.name(),
        "sizes": cfg.sizes,
        "report": r,
    });
    Ok(Report { ok: r.pass, lines, json: j, warnings: vec![] })
}

fn chain(file: &Path, o: &Common) -> Result<Report, CliError> {
    let path = file.display().to_string();
    let bad = |msg: String| CliError::BadChain { path: path.clone(), msg };
    let v: Value = serde_json::from_str(&read(file)?).map_err(|e| bad(e.to_string()))?;
    let v = match v.get("chain") {
        Some(c) => c.clone(),
        None => v,
    };
    let c: EquivalenceChain = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
    let r = replay_chain(&c, &signature(o)?, &o.oracle()?)?;
    let mut lines = Vec::new();
    chain_lines(&c, &mut lines);
    report_lines(&r, "replay", &mut lines);
    let j = json!({"file": path, "steps": c.steps.len(), "end": c.end().to_string(), "report": r});
    Ok(Report { ok: r.pass, lines, json: j, warnings: vec![] })
}
