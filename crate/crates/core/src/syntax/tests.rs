use super::*;
use proptest::prelude::*;
use std::sync::Arc;

fn v(s: &str) -> Object {
    Object::var(s)
}

fn n(s: &str) -> Name {
    Name::new(s)
}

fn el_nat() -> Class {
    Class::incl(Object::app(v("el"), v("nat")))
}

#[test]
fn subst_object_examples() {
    assert_eq!(v("x").subst(&n("x"), &v("zero")), v("zero"));

    let id = Object::lam(el_nat(), &n("x"), &v("x"));
    assert_eq!(id.subst(&n("x"), &v("zero")), id);

    let fx = Object::app(v("f"), v("x"));
    assert_eq!(
        fx.subst(&n("x"), &v("zero")),
        Object::app(v("f"), v("zero"))
    );
}

#[test]
fn subst_class_examples() {
    let eq = Class::eq(el_nat(), v("x"), v("x"));
    assert_eq!(
        eq.subst(&n("x"), &v("zero")),
        Class::eq(el_nat(), v("zero"), v("zero"))
    );
    assert_eq!(Class::Sort.subst(&n("x"), &v("zero")), Class::Sort);

    let pi = Class::pi(el_nat(), &n("y"), &Class::incl(v("x")));
    assert_eq!(
        pi.subst(&n("x"), &v("nat")),
        Class::pi(el_nat(), &n("y"), &Class::incl(v("nat")))
    );
}

#[test]
fn substitution_does_not_capture() {
    // [y : el nat] x  with x := y  must not become the identity.
    let body = Object::lam(el_nat(), &n("y"), &v("x"));
    let out = body.subst(&n("x"), &v("y"));
    let identity = Object::lam(el_nat(), &n("y"), &v("y"));
    assert_ne!(out, identity);
    assert!(out.free_vars().contains(&n("y")));
}

#[test]
fn alpha_equal_examples() {
    let a = Object::lam(el_nat(), &n("x"), &v("x"));
    let b = Object::lam(el_nat(), &n("y"), &v("y"));
    assert!(alpha_equal(&Term::Object(a.clone()), &Term::Object(b)));

    let c = Object::lam(el_nat(), &n("x"), &v("zero"));
    assert!(!alpha_equal(&Term::Object(a), &Term::Object(c)));

    let s = Object::pi_sort(el_nat(), &n("x"), &v("x"));
    let k = Class::pi(el_nat(), &n("x"), &Class::incl(v("x")));
    assert!(!alpha_equal(&Term::Object(s), &Term::Class(k)));
}

#[test]
fn free_vars_examples() {
    assert_eq!(v("x").free_vars(), [n("x")].into_iter().collect());
    let lam = Object::lam(el_nat(), &n("x"), &v("x"));
    assert_eq!(lam.free_vars(), el_nat().free_vars());
    assert!(Object::Bullet.free_vars().is_empty());
}

#[test]
fn spine_recovers_head_and_args() {
    let t = Object::apps(v("rec"), [v("A"), v("b"), v("s"), v("zero")]);
    let (head, args) = t.spine();
    assert_eq!(head, &v("rec"));
    assert_eq!(args, vec![&v("A"), &v("b"), &v("s"), &v("zero")]);
}

#[test]
fn instantiate_opens_outer_binder_only() {
    // [x:el nat][y:el nat] x y, opened once with z
    let inner = Object::lam(el_nat(), &n("y"), &Object::app(v("x"), v("y")));
    let outer = Object::lam(el_nat(), &n("x"), &inner);
    let Object::Lam(_, _, body) = &outer else {
        unreachable!()
    };
    let opened = body.instantiate(&v("z"));
    assert_eq!(
        opened,
        Object::lam(el_nat(), &n("y"), &Object::app(v("z"), v("y")))
    );
}

const NAMES: &[&str] = &["x", "y", "z", "f", "c"];

fn arb_object() -> impl Strategy<Value = Object> {
    let leaf = prop_oneof![
        proptest::sample::select(NAMES).prop_map(v),
        Just(Object::LZero),
        Just(Object::Bullet),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Object::app(f, a)),
            (proptest::sample::select(NAMES), inner.clone()).prop_map(|(x, b)| {
                Object::lam(el_nat(), &n(x), &b)
            }),
            (proptest::sample::select(NAMES), inner.clone(), inner.clone()).prop_map(
                |(x, d, b)| Object::pi_sort(Class::incl(d), &n(x), &b)
            ),
            inner.prop_map(Object::lsuc),
        ]
    })
}

/// Renames every binder hint; the result must stay α-equal.
fn rename_binders(o: &Object) -> Object {
    match o {
        Object::Lam(d, _, b) => Object::Lam(
            Arc::new(rename_class(d)),
            Binder::new("renamed"),
            Arc::new(rename_binders(b)),
        ),
        Object::PiSort(d, _, b) => Object::PiSort(
            Arc::new(rename_class(d)),
            Binder::new("other"),
            Arc::new(rename_binders(b)),
        ),
        Object::App(f, a) => Object::app(rename_binders(f), rename_binders(a)),
        Object::LSuc(a) => Object::lsuc(rename_binders(a)),
        other => other.clone(),
    }
}

fn rename_class(k: &Class) -> Class {
    match k {
        Class::Incl(o) => Class::incl(rename_binders(o)),
        other => other.clone(),
    }
}

proptest! {
    #[test]
    fn subst_is_identity_when_var_not_free(m in arb_object(), r in arb_object()) {
        let fresh = n("w");
        prop_assert!(!m.mentions(&fresh));
        prop_assert_eq!(m.subst(&fresh, &r), m);
    }

    #[test]
    fn substitution_commutes(m in arb_object(), nn in arb_object(), p in arb_object()) {
        // [P/y][N/x]M = [[P/y]N/x][P/y]M when x is not free in P.
        let x = n("x");
        let y = n("y");
        let p = p.subst(&x, &Object::LZero);
        let lhs = m.subst(&x, &nn).subst(&y, &p);
        let rhs = m.subst(&y, &p).subst(&x, &nn.subst(&y, &p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alpha_is_invariant_under_binder_renaming(m in arb_object()) {
        let r = rename_binders(&m);
        prop_assert_eq!(&r, &m);
        prop_assert_eq!(r.subst(&n("x"), &v("c")), m.subst(&n("x"), &v("c")));
    }

    #[test]
    fn abstract_then_instantiate_round_trips(m in arb_object()) {
        let x = n("x");
        prop_assert_eq!(m.abstract_var(&x).instantiate(&v("x")), m);
    }

    #[test]
    fn free_vars_agree_with_mentions(m in arb_object()) {
        for name in NAMES {
            prop_assert_eq!(m.free_vars().contains(&n(name)), m.mentions(&n(name)));
        }
    }
}
