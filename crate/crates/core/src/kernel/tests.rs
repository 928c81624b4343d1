use super::*;
use crate::eval_t::{numeral, plus_program, times_program, Flavor};
use crate::parse::{parse_class, parse_object, parse_telescope};
use crate::stdsigs::{self, CorpusId};

fn obj(s: &str) -> Object {
    parse_object(s).unwrap()
}

fn cls(s: &str) -> Class {
    parse_class(s).unwrap()
}

fn ctx(s: &str) -> Telescope {
    parse_telescope(s).unwrap()
}

fn godel() -> Kernel {
    stdsigs::kernel(CorpusId::GodelT)
}

#[test]
fn every_corpus_signature_checks_with_expected_rules() {
    for e in stdsigs::corpus() {
        let sig = stdsigs::signature(e.id).unwrap_or_else(|err| panic!("{}: {err}", e.id));
        assert_eq!(
            stdsigs::rule_counts(&sig),
            (e.expected_reductions, e.expected_expansions),
            "{}",
            e.id
        );
    }
}

#[test]
fn godel_rules_by_kind() {
    let sig = stdsigs::signature(CorpusId::GodelT).unwrap();
    let kinds: Vec<_> = sig.rules().iter().map(|r| (r.name.to_string(), r.kind)).collect();
    assert_eq!(
        kinds,
        vec![
            ("nat_beta_z".to_string(), RuleKind::Reduction),
            ("nat_beta_s".to_string(), RuleKind::Reduction),
            ("arr_beta".to_string(), RuleKind::Reduction),
            ("arr_eta".to_string(), RuleKind::Expansion),
        ]
    );
    assert_eq!(sig.len(), 13);
}

#[test]
fn eq_type_yields_a_reflector_and_a_warning() {
    let sig = stdsigs::signature(CorpusId::EqType).unwrap();
    assert_eq!(sig.reflectors().len(), 1);
    assert_eq!(sig.reflectors()[0].name.as_str(), "eqref");
    assert_eq!(sig.warnings().len(), 1);
    assert_eq!(sig.warnings()[0].name.as_str(), "equni");
}

#[test]
fn non_equation_constant_gives_no_rule() {
    let ex = extract_rules(&ctx("c : el nat."));
    assert!(ex.rules.is_empty() && ex.warnings.is_empty());
}

#[test]
fn check_context_examples() {
    let k = godel();
    assert!(k.check_context(&Telescope::new()).is_ok());
    let empty = Kernel::new(Signature::empty(), CheckConfig::default());
    let err = empty.check_context(&ctx("x : nat.")).unwrap_err();
    assert_eq!(err.root_cause(), &KernelError::UnboundVariable(Name::new("nat")));
    assert!(k.check_context(&ctx("A : tp. x : el A.")).is_ok());
    assert!(matches!(
        k.check_context(&ctx("x : el nat. x : el nat.")),
        Err(KernelError::DuplicateName(_))
    ));
}

#[test]
fn check_class_examples() {
    let k = godel();
    let e = Telescope::new();
    assert!(k.check_class(&e, &Class::Sort).is_ok());
    assert!(k.check_class(&e, &cls("Eq(el nat; zero; zero)")).is_ok());
    let err = k.check_class(&e, &cls("{x : Sort} el nat")).unwrap_err();
    assert!(matches!(err, KernelError::NotASort { .. }));
    let err = k.check_class(&e, &cls("Eq(el nat; zero; nat)")).unwrap_err();
    assert!(matches!(err, KernelError::EndpointIllTyped { side: Side::Right, .. }));
}

#[test]
fn infer_object_examples() {
    let k = godel();
    let e = Telescope::new();
    assert_eq!(k.infer_object(&e, &obj("zero")).unwrap(), cls("el nat"));
    assert_eq!(k.infer_object(&e, &obj("succ zero")).unwrap(), cls("el nat"));
    assert_eq!(k.infer_object(&e, &Object::Bullet), Err(KernelError::CannotInferBullet));
    assert!(matches!(
        k.infer_object(&e, &obj("zero zero")),
        Err(KernelError::NotAFunction { .. })
    ));
    assert!(matches!(
        k.infer_object(&e, &obj("succ nat")),
        Err(KernelError::ArgumentClassMismatch { .. })
    ));
}

#[test]
fn check_object_examples() {
    let k = godel();
    let tele = ctx("A : tp. b : el A. s : el nat -> el A -> el A.");
    assert!(k
        .check_object(&tele, &Object::Bullet, &cls("Eq(el A; rec A b s zero; b)"))
        .is_ok());
    let e = Telescope::new();
    assert!(matches!(
        k.check_object(&e, &Object::Bullet, &cls("Eq(el nat; zero; succ zero)")),
        Err(KernelError::EqualityNotProven { .. })
    ));
    assert!(matches!(
        k.check_object(&e, &obj("[x : tp] zero"), &cls("el nat -> el nat")),
        Err(KernelError::ClassMismatch { .. })
    ));
    assert!(k.check_object(&e, &obj("[x : el nat] x"), &cls("el nat -> el nat")).is_ok());
    let red = obj("([y : el nat] *) zero");
    assert!(k.check_object(&e, &red, &cls("Eq(el nat; zero; zero)")).is_ok());
    assert!(matches!(
        k.check_object(&e, &red, &cls("Eq(el nat; zero; succ zero)")),
        Err(KernelError::EqualityNotProven { .. })
    ));
    assert!(k.check_object(&e, &obj("([y : el nat] *) A"), &cls("Eq(el nat; zero; zero)")).is_err());
}

#[test]
fn equal_classes_examples() {
    let k = godel();
    let e = Telescope::new();
    assert_eq!(k.equal_classes(&e, &Class::Sort, &Class::Sort), Verdict::ProvenEqual);
    assert_eq!(
        k.equal_classes(&e, &cls("nat"), &cls("Eq(el nat; zero; zero)")),
        Verdict::NotProven
    );
    let u = stdsigs::kernel(CorpusId::Universes);
    assert_eq!(
        u.equal_classes(&e, &cls("ext lzero nat_bar"), &cls("nat")),
        Verdict::ProvenEqual
    );
}

#[test]
fn equal_objects_examples() {
    let k = godel();
    let tele = ctx("A : tp. b : el A. s : el nat -> el A -> el A.");
    assert_eq!(
        k.equal_objects(&tele, &obj("rec A b s zero"), &obj("b"), &cls("el A")),
        Verdict::ProvenEqual
    );
    let e = Telescope::new();
    assert_eq!(
        k.equal_objects(&e, &obj("([x : el nat] x) zero"), &obj("zero"), &cls("el nat")),
        Verdict::ProvenEqual
    );
    let hyp = ctx("A : tp. b : el A. s : el nat -> el A -> el A. x : el nat. h : Eq(el nat; x; zero).");
    assert_eq!(
        k.equal_objects(&hyp, &obj("rec A b s x"), &obj("b"), &cls("el A")),
        Verdict::ProvenEqual
    );
    let no_hyp = ctx("A : tp. b : el A. s : el nat -> el A -> el A. x : el nat.");
    assert_eq!(
        k.equal_objects(&no_hyp, &obj("rec A b s x"), &obj("b"), &cls("el A")),
        Verdict::NotProven
    );
    let proofs = ctx("p : Eq(el nat; zero; zero). q : Eq(el nat; zero; zero).");
    assert_eq!(
        k.equal_objects(&proofs, &obj("p"), &obj("q"), &cls("Eq(el nat; zero; zero)")),
        Verdict::ProvenEqual
    );
}

#[test]
fn normalize_examples() {
    let k = godel();
    let e = Telescope::new();
    assert_eq!(k.normalize(&e, &plus_program(Flavor::Simple, 2, 2)).unwrap(), numeral(4));
    assert_eq!(k.normalize(&e, &numeral(3)).unwrap(), numeral(3));
    let tele = ctx("A : tp. b : el A. s : el nat -> el A -> el A. n : el nat.");
    let (r, steps) = k.normalize_traced(&tele, &obj("rec A b s (succ n)"));
    assert_eq!(r.unwrap(), obj("s n (rec A b s n)"));
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0].to_string(), "nat_beta_s @ root");
}

#[test]
fn dependent_arithmetic_normalizes() {
    let k = stdsigs::kernel(CorpusId::DependentT);
    let e = Telescope::new();
    assert_eq!(k.normalize(&e, &times_program(Flavor::Dependent, 3, 3)).unwrap(), numeral(9));
}

#[test]
fn whnf_class_examples() {
    let e = Telescope::new();
    let u = stdsigs::kernel(CorpusId::Universes);
    assert_eq!(u.whnf_class(&e, &cls("ext lzero nat_bar")).unwrap(), cls("nat"));
    let k = godel();
    let pi = Class::Incl(std::sync::Arc::new(obj("{x : el nat} el nat")));
    assert_eq!(k.whnf_class(&e, &pi).unwrap(), cls("el nat -> el nat"));
    let eq = cls("Eq(el nat; zero; zero)");
    assert_eq!(k.whnf_class(&e, &eq).unwrap(), eq);
}

#[test]
fn fuel_exhaustion_reports_configured_fuel() {
    let k = godel().with_config(CheckConfig::with_fuel(5));
    let e = Telescope::new();
    assert_eq!(
        k.equal_objects(&e, &plus_program(Flavor::Simple, 4, 4), &numeral(8), &cls("el nat")),
        Verdict::FuelExhausted { steps_used: 5 }
    );
    assert_eq!(
        k.normalize(&e, &times_program(Flavor::Simple, 3, 3)),
        Err(KernelError::FuelExhausted { steps_used: 5 })
    );
}

#[test]
fn eta_for_arrows_and_framework_functions() {
    let k = godel();
    let tele = ctx("f : el (arr nat nat). g : el nat -> el nat.");
    let expanded = obj("lam nat nat ([x : el nat] app nat nat f x)");
    assert_eq!(
        k.equal_objects(&tele, &obj("f"), &expanded, &cls("el (arr nat nat)")),
        Verdict::ProvenEqual
    );
    assert_eq!(
        k.equal_objects(&tele, &obj("g"), &obj("[y : el nat] g y"), &cls("el nat -> el nat")),
        Verdict::ProvenEqual
    );
    let no_eta = k.with_config(CheckConfig {
        eta: false,
        ..CheckConfig::default()
    });
    assert_eq!(
        no_eta.equal_objects(&tele, &obj("f"), &expanded, &cls("el (arr nat nat)")),
        Verdict::NotProven
    );
    assert_eq!(
        no_eta.equal_objects(&tele, &obj("g"), &obj("[y : el nat] g y"), &cls("el nat -> el nat")),
        Verdict::NotProven
    );
}

#[test]
fn sigma_equations() {
    let k = stdsigs::kernel(CorpusId::SigmaNeg);
    let tele = ctx("A1 : tp. A2 : el A1 -> tp. m : el (sig A1 A2). a : el A1. b : el (A2 a).");
    let s = cls("el (sig A1 A2)");
    assert_eq!(
        k.equal_objects(&tele, &obj("m"), &obj("pair A1 A2 (fst A1 A2 m) (snd A1 A2 m)"), &s),
        Verdict::ProvenEqual
    );
    assert_eq!(
        k.equal_objects(&tele, &obj("snd A1 A2 (pair A1 A2 a b)"), &obj("b"), &cls("el (A2 a)")),
        Verdict::ProvenEqual
    );
    let p = stdsigs::kernel(CorpusId::SigmaPos);
    let tele = ctx("A1 : tp. A2 : el A1 -> tp. m : el (sig A1 A2).");
    let lhs = obj("split A1 A2 ([p : el (sig A1 A2)] sig A1 A2) ([x : el A1] [y : el (A2 x)] pair A1 A2 x y) m");
    assert_eq!(p.equal_objects(&tele, &lhs, &obj("m"), &s), Verdict::ProvenEqual);
}

#[test]
fn eq_type_reflects_object_level_proofs() {
    let k = stdsigs::kernel(CorpusId::EqType);
    let tele = ctx("x : el nat. p : el (eq nat x zero).");
    assert_eq!(
        k.equal_objects(&tele, &obj("x"), &obj("zero"), &cls("el nat")),
        Verdict::ProvenEqual
    );
    let tele = ctx("x : el nat.");
    assert_eq!(
        k.equal_objects(&tele, &obj("x"), &obj("zero"), &cls("el nat")),
        Verdict::NotProven
    );
}

#[test]
fn hypotheses_of_pi_equation_class_become_local_rules() {
    let k = godel();
    let tele = ctx("f : el nat -> el nat. f_def : {n : el nat} Eq(el nat; f n; succ n).");
    assert_eq!(
        k.equal_objects(&tele, &obj("f (f zero)"), &numeral(2), &cls("el nat")),
        Verdict::ProvenEqual
    );
}

#[test]
fn traces_replay() {
    let k = godel();
    let tele = ctx("A : tp. b : el A. s : el nat -> el A -> el A. x : el nat. h : Eq(el nat; x; zero).");
    let (v, steps) = k.equal_objects_traced(&tele, &obj("rec A b s (succ x)"), &obj("s x b"), &cls("el A"));
    assert_eq!(v, Verdict::ProvenEqual);
    let n = k.replay(&tele, &steps).unwrap();
    assert!(n >= 2);
    let (_, steps) = k.normalize_traced(&Telescope::new(), &plus_program(Flavor::Simple, 2, 3));
    assert!(steps.iter().any(|s| s.rule().as_str() == trace::BETA));
    assert_eq!(k.replay(&Telescope::new(), &steps).unwrap(), steps.len());
}

#[test]
fn tampered_trace_is_rejected() {
    let k = godel();
    let e = Telescope::new();
    let (_, mut steps) = k.normalize_traced(&e, &plus_program(Flavor::Simple, 1, 1));
    if let TraceStep::Rewrite { contractum, .. } = &mut steps[0] {
        *contractum = obj("zero");
    }
    assert!(k.replay(&e, &steps).is_err());
}

#[test]
fn identity_type_beta_and_no_extensionality() {
    let k = stdsigs::kernel(CorpusId::IdType);
    let tele = ctx(
        "A : tp. B : {m1 : el A} {m2 : el A} el (id A m1 m2) -> tp. \
         r : {x : el A} el (B x x (refl A x)). m : el A.",
    );
    assert_eq!(
        k.equal_objects(&tele, &obj("j A B r m m (refl A m)"), &obj("r m"), &cls("el (B m m (refl A m))")),
        Verdict::ProvenEqual
    );
}


/// Each declared equation, instantiated at fresh variables, is provable.
#[test]
fn every_rule_proves_its_own_schema() {
    for id in CorpusId::ALL {
        let k = stdsigs::kernel(id);
        for r in k.signature().rules() {
            let mut tele = Telescope::new();
            let mut sub = std::collections::HashMap::new();
            for (i, (v, c)) in r.vars.iter().enumerate() {
                let fresh = format!("v{i}");
                tele.push(&fresh, c.subst_many(&sub));
                sub.insert(v.clone(), Object::var(&fresh));
            }
            let (l, rr, s) = (r.lhs.subst_many(&sub), r.rhs.subst_many(&sub), r.sort.subst_many(&sub));
            assert!(k.check_context(&tele).is_ok(), "{id} {}", r.name);
            assert_eq!(k.equal_objects(&tele, &l, &rr, &s), Verdict::ProvenEqual, "{id} {}", r.name);
            assert!(
                k.check_object(&tele, &Object::Bullet, &Class::eq(s, l, rr)).is_ok(),
                "{id} {}",
                r.name
            );
        }
    }
}

#[test]
fn normalize_is_idempotent_on_corpus_programs() {
    let k = godel();
    let e = Telescope::new();
    for p in crate::eval_t::random_programs(Flavor::Simple, 7, 40, 12) {
        let Ok(n) = k.normalize(&e, &p) else { continue };
        assert_eq!(k.normalize(&e, &n).unwrap(), n);
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn more_fuel_never_loses_a_proof(m in 0u64..5, n in 0u64..5, fuel in 1u64..400) {
            let k = godel();
            let e = Telescope::new();
            let lhs = times_program(Flavor::Simple, m, n);
            let rhs = numeral(m * n);
            let nat = cls("el nat");
            let low = k.with_config(CheckConfig::with_fuel(fuel)).equal_objects(&e, &lhs, &rhs, &nat);
            let high = k.with_config(CheckConfig::with_fuel(fuel * 10)).equal_objects(&e, &lhs, &rhs, &nat);
            if low == Verdict::ProvenEqual {
                prop_assert_eq!(high, Verdict::ProvenEqual);
            }
            prop_assert_ne!(high, Verdict::NotProven);
        }

        #[test]
        fn beta_instances_hold(n in 0u64..6, m in 0u64..6) {
            let k = godel();
            let e = Telescope::new();
            let f = obj("[x : el nat] [y : el nat] rec nat y ([p : el nat] [r : el nat] succ r) x");
            let redex = Object::apps(f, [numeral(m), numeral(n)]);
            prop_assert_eq!(k.equal_objects(&e, &redex, &numeral(m + n), &cls("el nat")), Verdict::ProvenEqual);
        }
    }
}
