mod common;

use std::collections::BTreeMap;

use common::*;
use prenex_core::oracle::{check_equiv, check_valid, eval, replay_chain, FiniteStructure};
use prenex_core::prenex::disj_sigma;
use prenex_core::random::GenConfig;
use prenex_core::translations::star_not;
use prenex_core::*;
use rand::Rng;

fn pure() -> ValidityScope {
    ValidityScope::PureLogic
}

#[test]
fn eval_examples() {
    let s = sig().with_pred("p", 1);
    let env = BTreeMap::new();
    for bits in 0..8u32 {
        let t: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
        let m = FiniteStructure::new(3, BTreeMap::from([("p".to_string(), t)]));
        assert!(eval(&p("forall x. (p(x) | ~p(x))"), &s, &m, &env).unwrap());
    }
    let m = FiniteStructure::new(3, BTreeMap::new());
    assert!(eval(&p("exists x. forall y. le(x,y)"), &s, &m, &env).unwrap());
    assert!(!eval(&p("exists x. forall y. lt(x,y)"), &s, &m, &env).unwrap());
}

#[test]
fn double_negation_is_invisible() {
    let g = GenConfig::small();
    let mut r = rng(31);
    let s = sig().with_pred("p", 1).with_pred("q", 2).with_pred("r", 0);
    for _ in 0..200 {
        let n = r.gen_range(1..9);
        let f = g.random_formula(&mut r, n);
        let m = FiniteStructure::new(
            2,
            BTreeMap::from([
                ("p".to_string(), (0..2).map(|_| r.gen()).collect()),
                ("q".to_string(), (0..4).map(|_| r.gen()).collect()),
                ("r".to_string(), vec![r.gen()]),
            ]),
        );
        let env: BTreeMap<String, usize> = free_vars(&f).into_iter().map(|x| (x, r.gen_range(0..2))).collect();
        assert_eq!(eval(&f, &s, &m, &env).unwrap(), eval(&Formula::nn(f.clone()), &s, &m, &env).unwrap());
        let mut extra = env.clone();
        extra.insert("unused".into(), 1);
        assert_eq!(eval(&f, &s, &m, &env).unwrap(), eval(&f, &s, &m, &extra).unwrap());
    }
}

#[test]
fn check_examples() {
    let cfg = OracleConfig::default();
    let a = p("(exists x. p(x)) | exists y. q(y)");
    let (b, _) = disj_sigma(&p("exists x. p(x)"), &p("exists y. q(y)"), 1).unwrap();
    assert!(check_equiv(&a, &b, &sig(), ValidityScope::NeedsZeroOne, &cfg).unwrap().pass);

    let r = check_equiv(&p("p"), &p("q"), &sig(), pure(), &cfg).unwrap();
    assert!(!r.pass);
    let ce = r.counterexample.unwrap();
    let s = sig().with_pred("p", 0).with_pred("q", 0);
    assert_ne!(eval(&p("p"), &s, &ce.structure, &ce.env).unwrap(), eval(&p("q"), &s, &ce.structure, &ce.env).unwrap());

    let a = p("exists x. exists y. p(x,y)");
    let b = p("exists z. p(proj1(z),proj2(z))");
    let r = check_equiv(&a, &b, &sig(), ValidityScope::NeedsPairing, &cfg.clone().with_sizes(&[3])).unwrap();
    assert!(r.pass);
    assert!(r.notes.iter().any(|n| n.contains("domain 13")), "{:?}", r.notes);
    // Plain finite structures do not validate contraction.
    assert!(!check_equiv(&a, &b, &sig(), pure(), &cfg.clone().with_sizes(&[3])).unwrap().pass);

    assert!(check_valid(&p("p -> ~~p"), &sig(), pure(), &cfg).unwrap().pass);
    let n = star_not;
    let law = Formula::imp(n(n(n(p("p")))), n(p("p")));
    assert!(check_valid(&law, &sig(), pure(), &cfg).unwrap().pass);
    assert!(!check_valid(&p("p -> q"), &sig(), pure(), &cfg).unwrap().pass);
}

#[test]
fn pairing_cap_is_reported() {
    let cfg = OracleConfig { pairing_cap: 10, ..OracleConfig::default() };
    let a = p("exists x. exists y. p(x,y)");
    let b = p("exists z. p(proj1(z),proj2(z))");
    assert!(matches!(
        check_equiv(&a, &b, &sig(), ValidityScope::NeedsPairing, &cfg),
        Err(Error::ScopeUnsupported(_))
    ));
}

#[test]
fn replay_catches_corruption() {
    let cfg = OracleConfig::default();
    let t = prenex_u(&p("forall x. ((exists y. p(y)) -> r)"), 1).unwrap();
    assert!(replay_chain(&t.chain, &sig(), &cfg).unwrap().pass);

    let t = prenex_e(&p("~forall x. (p(x) & exists y. q(x,y))"), 2).unwrap();
    let mut chain = t.chain.clone();
    assert!(chain.steps.len() >= 2);
    let i = 0;
    let bad = Formula::not(chain.steps[i].after.clone());
    chain.steps[i].after = bad.clone();
    chain.steps[i + 1].before = bad;
    let r = replay_chain(&chain, &sig(), &cfg).unwrap();
    assert!(!r.pass);
    assert_eq!(r.failed_step, Some(i));
}

#[test]
fn propositional_agreement() {
    let g = GenConfig::propositional(&["a", "b", "c", "d"]);
    let mut r = rng(32);
    let cfg = OracleConfig::default().with_sizes(&[2]);
    for _ in 0..500 {
        let (na, nb) = (r.gen_range(1..8), r.gen_range(1..8));
        let a = g.random_formula(&mut r, na);
        let b = g.random_formula(&mut r, nb);
        let rep = check_equiv(&a, &b, &sig(), pure(), &cfg).unwrap();
        assert_eq!(rep.pass, truth_equiv(&a, &b), "{a} vs {b}");
        assert!(check_equiv(&a, &a, &sig(), pure(), &cfg).unwrap().pass);
        assert_eq!(rep.pass, check_equiv(&b, &a, &sig(), pure(), &cfg).unwrap().pass);
    }
}

#[test]
fn reports_are_reproducible() {
    let cfg = OracleConfig { exhaustive_bits: 4, samples: 32, ..OracleConfig::default() }.with_sizes(&[3]);
    let a = p("forall x. exists y. q(x,y)");
    let b = p("exists y. forall x. q(x,y)");
    let r1 = check_equiv(&a, &b, &sig(), pure(), &cfg).unwrap();
    let r2 = check_equiv(&a, &b, &sig(), pure(), &cfg).unwrap();
    assert_eq!(r1, r2);
    assert!(!r1.exhaustive);
}
