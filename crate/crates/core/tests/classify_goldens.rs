mod common;

use common::*;
use prenex_core::classify::fits;
use prenex_core::*;

#[test]
fn phi0_is_e1() {
    let phi0 = p(PHI0);
    let c = class_membership(&phi0, 1);
    assert!(c.in_e && !c.in_u);
    assert_eq!(degree(&phi0), 1);
    let paths: Vec<String> = alt_paths(&phi0).iter().map(|s| s.to_string()).collect();
    assert_eq!(paths, ["<+>"]);
}

#[test]
fn golden_classes() {
    for g in &GOLDENS {
        let f = p(g.src);
        let c = class_membership(&f, g.degree);
        assert_eq!(c.degree, g.degree, "{}", g.src);
        assert!(c.in_f, "{}", g.src);
        assert_eq!((c.in_e, c.in_u), (g.e, g.u), "{}", g.src);
        assert_eq!(prenex_shape(&f, false), g.shape, "{}", g.src);
    }
}

#[test]
fn goldens_agree_with_branch_reading() {
    for g in &GOLDENS {
        assert_eq!(naive_class(&p(g.src)), (g.degree, g.e, g.u), "{}", g.src);
    }
}

#[test]
fn fit_goldens() {
    for (src, kind, k, cum, want) in FIT_GOLDENS {
        assert_eq!(fits(&p(src), kind, k, cum), want, "{src} {kind}_{k} cumulative={cum}");
    }
}

#[test]
fn least_levels() {
    let c = class_membership(&p("(exists x. P(x)) & forall y. Q(y)"), 0);
    assert_eq!((c.min_e_plus, c.min_u_plus), (2, 2));
    let c = class_membership(&p("forall x. exists y. P(x,y)"), 0);
    assert_eq!((c.min_e_plus, c.min_u_plus), (3, 2));
    let c = class_membership(&p("P"), 0);
    assert_eq!((c.min_e_plus, c.min_u_plus), (0, 0));
}

#[test]
fn or_free_examples() {
    assert!(is_or_free(&p("P & Q")));
    assert!(!is_or_free(&p("P | Q")));
    assert!(is_or_free(&p("forall x. (P(x) -> false)")));
}
