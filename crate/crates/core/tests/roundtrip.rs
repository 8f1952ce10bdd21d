mod common;

use common::*;
use prenex_core::oracle::{check_equiv, replay_chain};
use prenex_core::*;

#[test]
fn random_transformations_replay() {
    let corpus = random_corpus(11, 150);
    let runs = transform_corpus(&corpus, &Op::ALL).unwrap();
    let cfg = OracleConfig::default();
    for r in &runs {
        assert!(r.shape_ok(), "shape: {}", r.describe());
        assert!(r.fv_ok(), "free variables: {}", r.describe());
        assert!(r.budget_ok(), "budget: {}", r.describe());
        assert_eq!(r.result.chain.certificate(), r.result.certificate, "{}", r.describe());
        assert!(r.result.chain.is_connected());
        let (lhs, rhs) = r.op.claim(&r.input, &r.result.output);
        let rep = check_equiv(&lhs, &rhs, &sig(), r.scope(), &cfg).unwrap();
        assert!(rep.pass, "equivalence: {} {:?}", r.describe(), rep.counterexample);
        let rep = replay_chain(&r.result.chain, &sig(), &cfg).unwrap();
        assert!(rep.pass, "replay: {} step {:?} {:?}", r.describe(), rep.failed_step, rep.notes);
    }
}

#[test]
fn or_free_outputs_stay_or_free() {
    let corpus = random_corpus(12, 300);
    let runs = transform_corpus(&corpus, &[Op::DfE, Op::DfU]).unwrap();
    assert!(runs.len() >= 100);
    for r in &runs {
        assert!(!r.result.output.contains_or(), "{}", r.describe());
        assert!(r.budget_ok(), "{}", r.describe());
    }
}

#[test]
fn prenex_inputs_come_back_unchanged() {
    for f in ["exists x. forall y. q(x,y)", "forall x. p(x)", "r -> p(z)"] {
        let phi = p(f);
        let t = prenex_e(&phi, 2).unwrap();
        assert!(alpha_eq(&t.output, &phi) && t.certificate.is_empty());
    }
}
