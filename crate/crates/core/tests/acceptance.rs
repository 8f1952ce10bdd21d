//! Acceptance runner: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::Instant;

use common::*;
use prenex_core::classify::{fits, ShapeKind};
use prenex_core::oracle::{check_equiv, check_valid, replay_chain};
use prenex_core::random::GenConfig;
use prenex_core::translations::star_not;
use prenex_core::*;
use rand::Rng;
use rayon::prelude::*;

type Outcome = std::result::Result<String, String>;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 1000;

fn classification_goldens() -> Outcome {
    let phi0 = p(PHI0);
    let c = class_membership(&phi0, 1);
    if !(c.in_e && c.degree == 1) {
        return Err(format!("phi0 classified as {c:?}"));
    }
    for g in &GOLDENS {
        let f = p(g.src);
        let c = class_membership(&f, g.degree);
        let got = (c.degree, c.in_e, c.in_u, prenex_shape(&f, false));
        if got != (g.degree, g.e, g.u, g.shape) || naive_class(&f) != (g.degree, g.e, g.u) {
            return Err(format!("{}: got {got:?}", g.src));
        }
    }
    for (src, kind, k, cum, want) in FIT_GOLDENS {
        if fits(&p(src), kind, k, cum) != want {
            return Err(format!("{src} as {kind}_{k} (cumulative {cum})"));
        }
    }
    Ok(format!("phi0 in E_1, {} class goldens, {} shape goldens", GOLDENS.len(), FIT_GOLDENS.len()))
}

fn closure_laws() -> Outcome {
    let bad = closure_violations(7);
    if bad.is_empty() {
        Ok("no violations up to size 7 over 2 letters, k in 1..=3".into())
    } else {
        Err(format!("{} violations, first {}", bad.len(), bad[0]))
    }
}

fn round_trip(runs: &[Run]) -> Outcome {
    let cfg = OracleConfig::default();
    let checked: Vec<&Run> = runs
        .iter()
        .filter(|r| matches!(r.op, Op::E | Op::U | Op::DfE | Op::DfU))
        .collect();
    let failure = checked.par_iter().find_map_first(|r| {
        if !r.shape_ok() {
            return Some(format!("shape: {}", r.describe()));
        }
        if !r.fv_ok() {
            return Some(format!("free variables: {}", r.describe()));
        }
        match check_equiv(&r.input, &r.result.output, &sig(), r.scope(), &cfg) {
            Ok(rep) if rep.pass && rep.exhaustive => None,
            Ok(rep) if rep.pass => Some(format!("not exhaustive: {}", r.describe())),
            Ok(rep) => Some(format!("not equivalent: {} {:?}", r.describe(), rep.counterexample)),
            Err(e) => Some(format!("{}: {e}", r.describe())),
        }
    });
    match failure {
        Some(f) => Err(f),
        None => Ok(format!("{CORPUS_SIZE} formulas, {} outputs checked on sizes 2 and 3", checked.len())),
    }
}

fn certificate_budgets(runs: &[Run]) -> Outcome {
    if let Some(r) = runs.iter().find(|r| !r.budget_ok()) {
        return Err(format!("over budget: {}", r.describe()));
    }
    use ClassArg::*;
    for k in 1..=5 {
        let sigma = Certificate::from_tags([PrincipleTag::dne(Sigma, k)]);
        if budget_leq(&Certificate::from_tags([PrincipleTag::dne(PiOrPi, k)]), &sigma) {
            return Err(format!("(Π_{k}∨Π_{k})-DNE derived from Σ_{k}-DNE"));
        }
        if budget_leq(&Certificate::from_tags([PrincipleTag::dne(Sigma, k), PrincipleTag::dns_u_plus(k)]), &sigma) {
            return Err(format!("U_{k}^+-DNS derived from Σ_{k}-DNE"));
        }
    }
    Ok(format!("{} certificates within their rows, hard negatives hold for k in 1..=5", runs.len()))
}

fn or_free(runs: &[Run]) -> Outcome {
    let df: Vec<&Run> = runs.iter().filter(|r| matches!(r.op, Op::DfE | Op::DfU)).collect();
    if let Some(r) = df.iter().find(|r| r.result.output.contains_or() || !r.budget_ok()) {
        return Err(r.describe());
    }
    Ok(format!("{} ∨-free outputs within Σ_k-DNE / Σ_(k-1)-DNE", df.len()))
}

fn translations(corpus: &[Formula]) -> Outcome {
    let cfg2 = OracleConfig::default().with_sizes(&[2]);
    let sample = &corpus[..300];
    let fail = sample.par_iter().find_map_first(|f| {
        let kur = check_equiv(f, &kuroda(f), &sig(), ValidityScope::PureLogic, &cfg2).ok()?;
        if !(kur.pass && kur.exhaustive) {
            return Some(format!("kuroda: {f}"));
        }
        let back = substitute_star(&a_translate(f), &Formula::Bot).ok()?;
        if !check_equiv(f, &back, &sig(), ValidityScope::PureLogic, &cfg2).ok()?.pass {
            return Some(format!("A-translation at false: {f}"));
        }
        let n = star_not;
        let law = Formula::imp(n(n(n(f.clone()))), n(f.clone()));
        if !check_valid(&law, &sig(), ValidityScope::PureLogic, &cfg2).ok()?.pass {
            return Some(format!("triple negation: {f}"));
        }
        None
    });
    if let Some(f) = fail {
        return Err(f);
    }
    let g = GenConfig::small();
    let mut r = rng(CORPUS_SEED + 6);
    let prenex: Vec<Formula> = (0..200)
        .map(|_| {
            let kind = if r.gen() { ShapeKind::Sigma } else { ShapeKind::Pi };
            let (k, m) = (r.gen_range(0..=3), r.gen_range(1..=5));
            g.random_prenex(&mut r, kind, k, m)
        })
        .collect();
    let cfg = OracleConfig::default();
    let fail = prenex.par_iter().find_map_first(|f| {
        let imp = Formula::imp(f.clone(), kuroda_inner(f));
        match check_valid(&imp, &sig(), ValidityScope::PureLogic, &cfg) {
            Ok(rep) if rep.pass => None,
            _ => Some(format!("φ → φ_*: {f}")),
        }
    });
    match fail {
        Some(f) => Err(f),
        None => Ok("300 formulas for kuroda, A-translation and the star law; 200 prenex for φ → φ_*".into()),
    }
}

fn conservation() -> Outcome {
    let mut r = rng(CORPUS_SEED + 7);
    let pairs: Vec<(Formula, Formula, usize)> = (0..50).map(|_| conservation_pair(&mut r)).collect();
    let cfg = OracleConfig::default();
    let fail = pairs.par_iter().find_map_first(|(psi, phi1, k)| {
        let c = match conservation_chain(psi, "x", "y", phi1, *k) {
            Ok(c) => c,
            Err(e) => return Some(format!("{psi} / {phi1}: {e}")),
        };
        let want = Formula::imp(psi.clone(), Formula::forall("x", Formula::exists("y", phi1.clone())));
        if c.end() != &want {
            return Some(format!("ends at {}", c.end()));
        }
        match replay_chain(&c, &sig(), &cfg) {
            Ok(rep) if rep.pass => None,
            Ok(rep) => Some(format!("{psi} / {phi1}: step {:?}", rep.failed_step)),
            Err(e) => Some(format!("{psi} / {phi1}: {e}")),
        }
    });
    match fail {
        Some(f) => Err(f),
        None => Ok("50 chains end at ψ → ∀x∃y φ1 and replay with star swept".into()),
    }
}

fn oracle_self_check() -> Outcome {
    let g = GenConfig::propositional(&["a", "b", "c", "d"]);
    let mut r = rng(CORPUS_SEED + 8);
    let pairs: Vec<(Formula, Formula)> = (0..10_000)
        .map(|_| {
            let (na, nb) = (r.gen_range(1..=9), r.gen_range(1..=9));
            (g.random_formula(&mut r, na), g.random_formula(&mut r, nb))
        })
        .collect();
    let cfg = OracleConfig::default();
    let agree = pairs
        .par_iter()
        .filter(|(a, b)| {
            check_equiv(a, b, &sig(), ValidityScope::PureLogic, &cfg).map(|rep| rep.pass).ok()
                == Some(truth_equiv(a, b))
        })
        .count();
    let equal = pairs.iter().filter(|(a, b)| truth_equiv(a, b)).count();
    if agree == pairs.len() {
        Ok(format!("10000/10000 agree ({equal} equivalent pairs)"))
    } else {
        Err(format!("{agree}/10000 agree"))
    }
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {n} PASS {name}: {msg} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {msg} ({secs:.2}s)");
            }
        }
    };
    let corpus = random_corpus(CORPUS_SEED, CORPUS_SIZE);
    let runs = transform_corpus(&corpus, &Op::ALL);
    let runs_ref = &runs;
    let need_runs = |f: fn(&[Run]) -> Outcome| move || runs_ref.as_deref().map_err(Clone::clone).and_then(f);

    report(1, "classification goldens", &classification_goldens);
    report(2, "closure laws", &closure_laws);
    report(3, "round-trip soundness", &need_runs(round_trip));
    report(4, "certificate budgets", &need_runs(certificate_budgets));
    report(5, "∨-free pipeline", &need_runs(or_free));
    report(6, "translations", &|| translations(&corpus));
    report(7, "conservation chains", &conservation);
    report(8, "oracle self-check", &oracle_self_check);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
