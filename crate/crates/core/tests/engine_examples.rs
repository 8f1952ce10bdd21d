mod common;

use common::*;
use prenex_core::classify::{fits, ShapeKind};
use prenex_core::oracle::check_equiv;
use prenex_core::prenex::*;
use prenex_core::*;

fn empty() -> Certificate {
    Certificate::empty()
}

fn cert(tags: &[PrincipleTag]) -> Certificate {
    Certificate::from_tags(tags.iter().copied())
}

fn equiv(a: &Formula, b: &Formula, scope: ValidityScope) -> bool {
    check_equiv(a, b, &sig(), scope, &OracleConfig::default()).unwrap().pass
}

#[test]
fn padding() {
    assert_eq!(pad(&p("P"), (ShapeKind::Sigma, 1)).unwrap(), p("exists z. P"));
    assert_eq!(pad(&p("exists x. P(x)"), (ShapeKind::Sigma, 1)).unwrap(), p("exists x. P(x)"));
    assert_eq!(pad(&p("exists x. P(x)"), (ShapeKind::Pi, 2)).unwrap(), p("forall z. exists x. P(x)"));
    assert_eq!(
        pad(&p("forall x. exists y. P(x,y)"), (ShapeKind::Sigma, 1)),
        Err(Error::TargetBelowCurrentLevel { target: "Σ_1".into(), current: "Π_2".into() })
    );
    assert_eq!(pad(&p("P(z)"), (ShapeKind::Sigma, 1)).unwrap(), p("exists z'. P(z)"));
}

#[test]
fn contraction() {
    let s = sig().with_pred("P", 2).with_pred("Q", 3).with_pred("R", 1);
    assert_eq!(contract(&p("exists x. exists y. P(x,y)"), &s).unwrap(), p("exists z. P(proj1(z),proj2(z))"));
    assert_eq!(contract(&p("forall x. R(x)"), &s).unwrap(), p("forall x. R(x)"));
    assert_eq!(
        contract(&p("forall x. forall y. forall w. Q(x,y,w)"), &s).unwrap(),
        p("forall z. Q(proj1(z),proj1(proj2(z)),proj2(proj2(z)))")
    );
    let mut bare = s.clone();
    bare.functions.remove("pair");
    bare.functions.remove("proj1");
    assert_eq!(contract(&p("exists x. exists y. P(x,y)"), &bare), Err(Error::PairingSymbolsMissing));
    let a = p("exists x. exists y. P(x,y)");
    assert!(equiv(&a, &contract(&a, &s).unwrap(), ValidityScope::NeedsPairing));
}

#[test]
fn conjunction() {
    let (f, c) = conj_prenex(&p("forall x. P(x)"), &p("forall y. Q(y)"), ShapeKind::Pi, 1).unwrap();
    assert_eq!(f, p("forall x. forall y. (P(x) & Q(y))"));
    assert_eq!(c, empty());
    let (f, _) = conj_prenex(&p("P"), &p("Q"), ShapeKind::Sigma, 0).unwrap();
    assert_eq!(f, p("P & Q"));
    let a = p("exists x. P(x)");
    let b = p("exists y. forall x. Q(x,y)");
    let (f, _) = conj_prenex(&a, &b, ShapeKind::Sigma, 2).unwrap();
    assert!(fits(&f, ShapeKind::Sigma, 2, true));
    assert!(equiv(&Formula::and(a.clone(), b.clone()), &f, ValidityScope::PureLogic));
    assert!(matches!(conj_prenex(&a, &b, ShapeKind::Sigma, 1), Err(Error::ShapeMismatch(_))));
}

#[test]
fn sigma_disjunction() {
    let (f, c) = disj_sigma(&p("exists x. P(x)"), &p("exists y. Q(y)"), 1).unwrap();
    assert_eq!(f, p("exists k. exists x. exists y. ((eq(k,0) -> P(x)) & (~eq(k,0) -> Q(y)))"));
    assert_eq!(c, empty());
    let (f, _) = disj_sigma(&p("P"), &p("Q"), 1).unwrap();
    assert!(fits(&f, ShapeKind::Sigma, 1, true));
    let a = p("exists x. P(x)");
    let b = p("exists y. Q(y)");
    assert!(equiv(&Formula::or(a.clone(), b.clone()), &disj_sigma(&a, &b, 1).unwrap().0, ValidityScope::NeedsZeroOne));
}

#[test]
fn double_negated_pi_disjunction() {
    let (f, c) = dn_disj_pi(&p("forall x. P(x)"), &p("forall y. Q(y)"), 1).unwrap();
    assert_eq!(f, p("forall x. forall y. (P(x) | Q(y))"));
    assert_eq!(c, empty());
    let (f, c) = dn_disj_pi(&p("P"), &p("Q"), 0).unwrap();
    assert_eq!((f, c), (p("P | Q"), empty()));
    let a = p("forall x. exists y. P(x,y)");
    let b = p("forall y. exists x. Q(x,y)");
    let (f, c) = dn_disj_pi(&a, &b, 2).unwrap();
    assert!(fits(&f, ShapeKind::Pi, 2, true));
    assert!(budget_leq(&c, &cert(&[PrincipleTag::dne(ClassArg::Sigma, 1).nn()])));
    assert!(equiv(&Formula::nn(Formula::or(a, b)), &Formula::nn(f), ValidityScope::NeedsZeroOne));
}

#[test]
fn negations() {
    let (f, c) = neg_prenex(&p("exists x. P(x)"), 1).unwrap();
    assert_eq!((f, c), (p("forall x. ~P(x)"), empty()));
    let (f, c) = neg_prenex(&p("forall x. P(x)"), 1).unwrap();
    assert_eq!((f, c), (p("exists x. ~P(x)"), cert(&[PrincipleTag::dne(ClassArg::Sigma, 1)])));
    assert_eq!(neg_prenex(&p("P"), 0).unwrap(), (p("~P"), empty()));
    assert_eq!(neg_prenex(&p("P | forall x. Q(x)"), 1), Err(Error::NotPrenex));

    let (f, c) = neg_pi_nn(&p("forall x. P(x)")).unwrap();
    assert_eq!(f, p("exists x. ~P(x)"));
    assert!(budget_leq(&c, &cert(&[PrincipleTag::dne(ClassArg::Sigma, 1).nn()])));
    assert!(equiv(&p("~forall x. P(x)"), &Formula::nn(f), ValidityScope::PureLogic));
    assert_eq!(neg_pi_nn(&p("P")).unwrap().0, p("~P"));
    assert_eq!(neg_pi_nn(&p("forall x. exists y. P(x,y)")).unwrap().0, p("exists x. forall y. ~P(x,y)"));
}

#[test]
fn lifting() {
    let t = prenex_e(&p("~forall x. P(x)"), 1).unwrap();
    assert_eq!(t.certificate, cert(&[PrincipleTag::dne(ClassArg::Sigma, 1)]));
    let lifted = nn_lift(&t.chain);
    assert_eq!(lifted.certificate(), cert(&[PrincipleTag::dne(ClassArg::Sigma, 1).nn()]));
    assert_eq!(lifted.start, Formula::nn(t.chain.start.clone()));
    assert!(replay_chain(&lifted, &sig(), &OracleConfig::default()).unwrap().pass);
    let refl = prenex_e(&p("exists x. P(x)"), 1).unwrap();
    assert!(nn_lift(&refl.chain).certificate().is_empty());
}

#[test]
fn pnft_examples() {
    let phi0 = p(PHI0);
    let t = prenex_e(&phi0, 1).unwrap();
    assert!(fits(&t.output, ShapeKind::Sigma, 1, true));
    let (pb, qb) = pnft_budget(BudgetRow::EToSigma, 1);
    assert!(budget_leq(&t.certificate, &pb.union(&qb)));
    assert_eq!(free_vars(&t.output), free_vars(&phi0));

    let t = prenex_e(&p("exists x. forall y. P(x,y)"), 2).unwrap();
    assert_eq!((t.output, t.certificate), (p("exists x. forall y. P(x,y)"), empty()));

    let f = p("exists x. (P(x) -> exists y. Q(y))");
    let t = prenex_e(&f, 1).unwrap();
    assert_eq!(t.output, p("exists x. exists y. (~Q(y) -> ~P(x))"));
    assert!(equiv(&f, &t.output, ValidityScope::PureLogic));

    let f = p("forall x. ((exists y. P(x,y)) -> Q(x))");
    let t = prenex_u(&f, 1).unwrap();
    assert_eq!(t.output, p("forall x. forall y. (P(x,y) -> Q(x))"));
    assert_eq!(t.certificate, empty());

    let t = prenex_u(&p("forall x. (P(x) | ~P(x))"), 1).unwrap();
    assert!(budget_leq(&t.certificate, &cert(&[PrincipleTag::dne(ClassArg::PiOrPi, 1)])));

    let t = nn_u_prenex(&p("~~forall x. P(x)"), 1).unwrap();
    assert_eq!((t.output, t.certificate), (p("forall x. P(x)"), empty()));
    let t = nn_u_prenex(&p("forall x. P(x)"), 1).unwrap();
    assert_eq!((t.output, t.certificate), (p("forall x. P(x)"), empty()));

    assert_eq!(neg_e_nn_pi(&p("exists x. P(x)"), 1).unwrap().output, p("forall x. ~P(x)"));
    assert_eq!(neg_e_nn_pi(&p("P"), 0).unwrap().output, p("~P"));
    let t = neg_e_nn_pi(&p("P & Q"), 0).unwrap();
    assert!(equiv(&p("~(P & Q)"), &Formula::nn(t.output), ValidityScope::PureLogic));

    assert_eq!(prenex_u(&p("exists x. P(x)"), 1).unwrap_err(), Error::NotInClass("U_1^+".into()));
}

#[test]
fn or_free_examples() {
    let t = prenex_df(&p("forall x. ~~P(x)"), Mode::U, 1).unwrap();
    assert!(t.certificate.is_empty() && fits(&t.output, ShapeKind::Pi, 1, true));
    let f = p("exists x. ((forall y. P(y)) -> Q(x))");
    let t = prenex_df(&f, Mode::E, 1).unwrap();
    assert!(!t.output.contains_or());
    assert!(budget_leq(&t.certificate, &cert(&[PrincipleTag::dne(ClassArg::Sigma, 1)])));
    assert!(equiv(&f, &t.output, ValidityScope::PureLogic));
    for m in [Mode::E, Mode::U] {
        assert_eq!(prenex_df(&p("P -> Q"), m, 0).unwrap().output, p("P -> Q"));
    }
    assert_eq!(prenex_df(&p("P | Q"), Mode::E, 0).unwrap_err(), Error::ContainsOr);
}

#[test]
fn budget_examples() {
    use ClassArg::*;
    assert!(budget_leq(&cert(&[PrincipleTag::dne(Sigma, 0)]), &empty()));
    assert!(budget_leq(&cert(&[PrincipleTag::dne(Pi, 1)]), &empty()));
    for k in 1..5 {
        assert!(budget_leq(&cert(&[PrincipleTag::dne(Sigma, k)]), &cert(&[PrincipleTag::dne(PiOrPi, k + 1)])));
        assert!(!budget_leq(&cert(&[PrincipleTag::dne(PiOrPi, k)]), &cert(&[PrincipleTag::dne(Sigma, k)])));
        assert!(!budget_leq(
            &cert(&[PrincipleTag::dne(Sigma, k), PrincipleTag::dns_u_plus(k)]),
            &cert(&[PrincipleTag::dne(Sigma, k)])
        ));
    }
    let (p_, q_) = pnft_budget(BudgetRow::UToPi, 2);
    assert_eq!((p_, q_), (cert(&[PrincipleTag::dne(PiOrPi, 2)]), empty()));
    let (p_, q_) = pnft_budget(BudgetRow::EToSigma, 2);
    assert_eq!(p_, cert(&[PrincipleTag::dne(Sigma, 2), PrincipleTag::dns_u_plus(2)]));
    assert_eq!(q_, cert(&[PrincipleTag::lem(Pi, 1)]));
    let (p_, q_) = pnft_budget(BudgetRow::DfEToSigma, 2);
    assert_eq!((p_, q_), (cert(&[PrincipleTag::dne(Sigma, 2)]), cert(&[PrincipleTag::lem(Pi, 1)])));
    assert_eq!("X/Y".parse::<BudgetRow>(), Err(Error::UnknownRow("X/Y".into())));
}
