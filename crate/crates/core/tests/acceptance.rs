//! Acceptance criteria, one line each. Exits non-zero when any fails.

use eqlf::cli::{self, Command, Invocation};
use eqlf::eval_t::{numeral, oracle_eval, plus_program, times_program, Flavor};
use eqlf::kernel::{CheckConfig, Kernel, RuleKind, Verdict};
use eqlf::metatheory::{enumerate, run_all, DerivationSample, EnumBudget, Lemma};
use eqlf::parse::{parse_class, parse_object, parse_signature, parse_telescope, print_class, print_decls, print_object};
use eqlf::stdsigs::{self, CorpusId};
use eqlf::syntax::{random, Class, Name, Object, Telescope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn obj(s: &str) -> Object {
    parse_object(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn cls(s: &str) -> Class {
    parse_class(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ctx(s: &str) -> Telescope {
    parse_telescope(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_check() -> Outcome {
    let t = Instant::now();
    for id in CorpusId::ALL {
        let mut inv = Invocation::new(Command::Check);
        inv.files = vec![stdsigs::entry(id).file.to_string()];
        let out = cli::run(&inv);
        ensure(out.code == 0, || format!("{id}: exit {} {}", out.code, out.stderr))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(5), || format!("took {el:?}"))?;
    Ok(format!("7/7 signatures exit 0 in {el:.2?}"))
}

fn rule_counts() -> Outcome {
    let expected = [
        (CorpusId::GodelT, 3, 1),
        (CorpusId::DependentT, 3, 1),
        (CorpusId::EqType, 3, 1),
        (CorpusId::IdType, 4, 1),
        (CorpusId::Universes, 8, 1),
        (CorpusId::SigmaNeg, 5, 2),
        (CorpusId::SigmaPos, 5, 1),
    ];
    for (id, r, e) in expected {
        let sig = stdsigs::signature(id).map_err(|e| e.to_string())?;
        let got = stdsigs::rule_counts(&sig);
        ensure(got == (r, e), || format!("{id}: {got:?} != {:?}", (r, e)))?;
    }
    let names = |id| -> Vec<(String, RuleKind)> {
        stdsigs::signature(id)
            .unwrap()
            .rules()
            .iter()
            .map(|r| (r.name.to_string(), r.kind))
            .collect()
    };
    let godel = names(CorpusId::GodelT);
    ensure(
        godel
            == [
                ("nat_beta_z".into(), RuleKind::Reduction),
                ("nat_beta_s".into(), RuleKind::Reduction),
                ("arr_beta".into(), RuleKind::Reduction),
                ("arr_eta".into(), RuleKind::Expansion),
            ],
        || format!("godel_t rules {godel:?}"),
    )?;
    let dep = names(CorpusId::DependentT);
    let uni = names(CorpusId::Universes);
    let added: Vec<_> = uni[dep.len()..].iter().map(|(n, _)| n.as_str()).collect();
    ensure(added == ["ext_uni", "ext_nat", "ext_cum", "ext_pi", "ext_eq"], || {
        format!("universes adds {added:?}")
    })?;
    ensure(names(CorpusId::EqType) == dep, || "eq_type adds rules".into())?;
    let id = names(CorpusId::IdType);
    ensure(id[dep.len()..] == [("id_beta".to_string(), RuleKind::Reduction)], || {
        format!("id_type adds {:?}", &id[dep.len()..])
    })?;
    Ok("all seven signatures match".into())
}

/// Samples over several signatures and seeds, for criteria that need
/// enumerated objects.
fn samples() -> Vec<(Kernel, DerivationSample)> {
    let mut out = Vec::new();
    for id in [CorpusId::GodelT, CorpusId::DependentT, CorpusId::EqType, CorpusId::SigmaNeg] {
        let k = stdsigs::kernel(id);
        for seed in 0..3 {
            for s in enumerate(&k, id, EnumBudget::default(), seed) {
                out.push((k.clone(), s));
            }
        }
    }
    out
}

fn normal_class(k: &Kernel, ctx: &Telescope, c: &Class) -> Option<Class> {
    k.normalize_class(ctx, c).ok()
}

fn beta_eta(pool: &[(Kernel, DerivationSample)]) -> Outcome {
    let mut beta = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (k, s) in pool {
        if beta >= 100 {
            break;
        }
        let Object::Lam(_, _, body) = &s.object else { continue };
        let Some(Class::Pi(d, _, c)) = normal_class(k, &s.context, &s.inferred_class) else {
            continue;
        };
        // An argument: a sample in the same context at the domain class.
        let args: Vec<&Object> = pool
            .iter()
            .filter(|(_, t)| t.context == s.context && t.signature == s.signature)
            .filter(|(k2, t)| normal_class(k2, &t.context, &t.inferred_class).as_ref() == Some(&*d))
            .map(|(_, t)| &t.object)
            .collect();
        if args.is_empty() {
            continue;
        }
        let a = args[rng.gen_range(0..args.len())];
        let redex = Object::app(s.object.clone(), a.clone());
        let v = k.equal_objects(&s.context, &redex, &body.instantiate(a), &c.instantiate(a));
        ensure(v == Verdict::ProvenEqual, || {
            format!("app-lam {} at {}: {v}", print_object(&redex), print_class(&c.instantiate(a)))
        })?;
        beta += 1;
    }
    ensure(beta >= 100, || format!("only {beta} app-lam instances"))?;

    let no_eta = CheckConfig {
        eta: false,
        ..CheckConfig::default()
    };
    let mut eta = 0;
    let mut flipped = 0;
    for (k, s) in pool {
        if eta >= 50 {
            break;
        }
        let Ok(Class::Pi(d, x, _)) = k.whnf_class(&s.context, &s.inferred_class) else {
            continue;
        };
        let y = Name::new(&format!("{}_e", x.name()));
        let expanded = Object::lam((*d).clone(), &y, &Object::app(s.object.clone(), Object::Var(y.clone())));
        let v = k.equal_objects(&s.context, &s.object, &expanded, &s.inferred_class);
        ensure(v == Verdict::ProvenEqual, || {
            format!("lam-app {}: {v}", print_object(&s.object))
        })?;
        if k.with_config(no_eta).equal_objects(&s.context, &s.object, &expanded, &s.inferred_class)
            == Verdict::NotProven
        {
            flipped += 1;
        }
        eta += 1;
    }
    ensure(eta >= 50, || format!("only {eta} objects of Π class"))?;
    ensure(flipped >= 1, || "--no-eta changed nothing".into())?;
    Ok(format!("{beta} app-lam instances, {eta} η comparisons, {flipped} NotProven without η"))
}

fn recursor() -> Outcome {
    let k = stdsigs::kernel(CorpusId::GodelT);
    let e = Telescope::new();
    let nat = cls("el nat");
    let mut slowest = Duration::ZERO;
    let mut n_queries = 0;
    let mut run = |prog: Object, expect: u64, what: String| -> Result<(), String> {
        let t = Instant::now();
        let v = k.equal_objects(&e, &prog, &numeral(expect), &nat);
        let nf = k.normalize(&e, &prog).map_err(|e| format!("{what}: {e}"))?;
        slowest = slowest.max(t.elapsed());
        n_queries += 1;
        ensure(v == Verdict::ProvenEqual, || format!("{what}: {v}"))?;
        let oracle = oracle_eval(&prog).map_err(|e| format!("{what}: oracle {e}"))?;
        ensure(oracle == expect && nf == numeral(oracle), || {
            format!("{what}: kernel {} oracle {oracle}", print_object(&nf))
        })
    };
    for m in 0..=8 {
        for n in 0..=8 {
            run(plus_program(Flavor::Simple, m, n), m + n, format!("plus {m} {n}"))?;
        }
    }
    for m in 0..=5 {
        for n in 0..=5 {
            run(times_program(Flavor::Simple, m, n), m * n, format!("times {m} {n}"))?;
        }
    }
    ensure(slowest < Duration::from_millis(100), || format!("slowest query {slowest:?}"))?;
    Ok(format!("{n_queries} queries agree with the oracle, slowest {slowest:.2?}"))
}

fn reflection() -> Outcome {
    let k = stdsigs::kernel(CorpusId::GodelT);
    let base = "A : tp. b : el A. s : el nat -> el A -> el A. x : el nat.";
    let with = ctx(&format!("{base} h : Eq(el nat; x; zero)."));
    let without = ctx(base);
    let (a, b, c) = (obj("rec A b s x"), obj("b"), cls("el A"));
    let v1 = k.equal_objects(&with, &a, &b, &c);
    let v2 = k.equal_objects(&without, &a, &b, &c);
    ensure(v1 == Verdict::ProvenEqual && v2 == Verdict::NotProven, || {
        format!("with h: {v1}, without: {v2}")
    })?;
    Ok("ProvenEqual with h, NotProven without".into())
}

fn unicity(pool: &[(Kernel, DerivationSample)]) -> Outcome {
    let mut inhabitants = 0;
    let mut pairs = 0;
    let eqs: Vec<(&Kernel, &DerivationSample)> = pool
        .iter()
        .filter(|(k, s)| matches!(k.whnf_class(&s.context, &s.inferred_class), Ok(Class::Eq(..))))
        .map(|(k, s)| (k, s))
        .collect();
    for (i, (k, s)) in eqs.iter().enumerate() {
        let v = k.equal_objects(&s.context, &s.object, &Object::Bullet, &s.inferred_class);
        ensure(v == Verdict::ProvenEqual, || format!("{} vs *: {v}", print_object(&s.object)))?;
        k.check_object(&s.context, &Object::Bullet, &s.inferred_class)
            .map_err(|e| format!("* against {}: {e}", print_class(&s.inferred_class)))?;
        inhabitants += 1;
        for (_, t) in &eqs[i + 1..] {
            if t.signature == s.signature && t.context == s.context && t.inferred_class == s.inferred_class && t.object != s.object {
                let v = k.equal_objects(&s.context, &s.object, &t.object, &s.inferred_class);
                ensure(v == Verdict::ProvenEqual, || {
                    format!("{} vs {}: {v}", print_object(&s.object), print_object(&t.object))
                })?;
                pairs += 1;
            }
        }
    }
    ensure(inhabitants >= 20 && pairs >= 1, || {
        format!("too few instances: {inhabitants} inhabitants, {pairs} pairs")
    })?;
    Ok(format!("{inhabitants} inhabitants equal to *, {pairs} pairs equal"))
}

fn identity_type() -> Outcome {
    let k = stdsigs::kernel(CorpusId::IdType);
    let beta_ctx = ctx(
        "A : tp. B : {m1 : el A} {m2 : el A} el (id A m1 m2) -> tp. \
         r : {x : el A} el (B x x (refl A x)). m : el A.",
    );
    let v = k.equal_objects(
        &beta_ctx,
        &obj("j A B r m m (refl A m)"),
        &obj("r m"),
        &cls("el (B m m (refl A m))"),
    );
    ensure(v == Verdict::ProvenEqual, || format!("id_beta instance: {v}"))?;
    let funext = ctx(
        "A : tp. B : tp. f : el (pi A ([x : el A] B)). g : el (pi A ([x : el A] B)). \
         hyp : {x : el A} el (id B (app A ([x : el A] B) f x) (app A ([x : el A] B) g x)).",
    );
    k.check_context(&funext).map_err(|e| e.to_string())?;
    let v = k.equal_objects(&funext, &obj("f"), &obj("g"), &cls("el (pi A ([x : el A] B))"));
    ensure(v == Verdict::NotProven, || format!("funext via id: {v}"))?;
    let point = ctx("x : el nat. p : el (id nat x zero).");
    let v = k.equal_objects(&point, &obj("x"), &obj("zero"), &cls("el nat"));
    ensure(v == Verdict::NotProven, || format!("id proof reflected: {v}"))?;
    Ok("id_beta ProvenEqual; function extensionality NotProven".into())
}

fn universes() -> Outcome {
    let k = stdsigs::kernel(CorpusId::Universes);
    let cases = [
        ("", "el (ext lzero nat_bar)", "el nat"),
        ("", "ext lzero nat_bar", "nat"),
        ("i : Lvl.", "el (ext (lsuc i) (u_bar i))", "el (u i)"),
        ("i : Lvl. a : el (u i).", "el (ext (lsuc i) (cum i a))", "el (ext i a)"),
        (
            "i : Lvl. a1 : el (u i). a2 : el (ext i a1) -> el (u i).",
            "el (ext i (pi_bar i a1 a2))",
            "el (pi (ext i a1) ([x : el (ext i a1)] ext i (a2 x)))",
        ),
        (
            "",
            "el (ext lzero (pi_bar lzero nat_bar ([x : el (ext lzero nat_bar)] nat_bar)))",
            "el (pi nat ([x : el nat] nat))",
        ),
        (
            "i : Lvl. a : el (u i).",
            "el (ext (lsuc i) (pi_bar (lsuc i) (cum i a) ([x : el (ext (lsuc i) (cum i a))] u_bar i)))",
            "el (pi (ext i a) ([x : el (ext i a)] u i))",
        ),
    ];
    for (c, a, b) in cases {
        let g = ctx(c);
        let (ka, kb) = (cls(a), cls(b));
        // The bare form is compared as written; the el-wrapped forms must
        // also be well formed.
        if a.starts_with("el") {
            k.check_class(&g, &ka).map_err(|e| format!("{a}: {e}"))?;
            k.check_class(&g, &kb).map_err(|e| format!("{b}: {e}"))?;
        }
        let v = k.equal_classes(&g, &ka, &kb);
        ensure(v == Verdict::ProvenEqual, || format!("{a} = {b}: {v}"))?;
    }
    Ok(format!("{} class equalities ProvenEqual", cases.len()))
}

fn metatheory() -> Outcome {
    let t = Instant::now();
    let r = run_all(&CorpusId::ALL, 0..10, EnumBudget::default());
    let el = t.elapsed();
    let summary: Vec<String> = Lemma::ALL
        .iter()
        .map(|l| {
            let t = r.tally(*l);
            format!("{} {}/{}", l.as_str(), t.pass, t.checked())
        })
        .collect();
    ensure(r.failures() == 0, || format!("{} failures: {:?}", r.failures(), r.failures))?;
    ensure(r.tallies.iter().all(|t| t.inconclusive_rate() <= 0.01), || format!("too many inconclusive\n{r}"))?;
    ensure(r.controls_caught(), || format!("controls missed: {:?}", r.controls))?;
    ensure(el < Duration::from_secs(120), || format!("took {el:?}"))?;
    Ok(format!("{} samples, {}, controls caught, {el:.1?}", r.samples, summary.join(", ")))
}

fn round_trip() -> Outcome {
    let mut nodes = 0;
    for id in CorpusId::ALL {
        let t = stdsigs::parse(id).map_err(|e| e.to_string())?;
        let back = parse_telescope(&print_decls(&t)).map_err(|e| format!("{id}: {e}"))?;
        ensure(back == t, || format!("{id} does not round-trip"))?;
        nodes += t.len();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..500 {
        let (printed, ok) = if i % 2 == 0 {
            let o = random::object(&mut rng, 12);
            let s = print_object(&o);
            (s.clone(), parse_object(&s).map(|b| b == o))
        } else {
            let c = random::class(&mut rng, 12);
            let s = print_class(&c);
            (s.clone(), parse_class(&s).map(|b| b == c))
        };
        match ok {
            Ok(true) => {}
            Ok(false) => return Err(format!("{printed} reparses differently")),
            Err(e) => return Err(format!("{printed}: {e}")),
        }
    }
    // Truncated and corrupted corpus text must fail inside the input.
    let mut errors = 0;
    let src = stdsigs::entry(CorpusId::Universes).source();
    for _ in 0..300 {
        let cut = rng.gen_range(0..src.len());
        let mut text = src[..cut].to_string();
        if rng.gen_bool(0.5) {
            text.push_str([")", ".", "{", ":", "]", "Eq("][rng.gen_range(0..6)]);
        }
        if let Err(e) = parse_signature(&text) {
            errors += 1;
            ensure(e.span.start <= e.span.end && e.span.end <= text.len(), || {
                format!("span {:?} outside {} bytes", e.span, text.len())
            })?;
        }
    }
    ensure(errors > 100, || format!("only {errors} corrupted inputs rejected"))?;
    Ok(format!("{nodes} corpus declarations and 500 random terms round-trip; {errors} errors in bounds"))
}

fn monotonicity() -> Outcome {
    let godel = stdsigs::kernel(CorpusId::GodelT);
    let uni = stdsigs::kernel(CorpusId::Universes);
    let mut queries: Vec<(&Kernel, Telescope, Object, Object, Class)> = Vec::new();
    let nat = cls("el nat");
    for (m, n) in [(0, 0), (1, 2), (2, 2), (3, 1), (4, 4), (5, 3), (2, 6), (7, 1), (3, 3), (8, 8)] {
        queries.push((&godel, Telescope::new(), plus_program(Flavor::Simple, m, n), numeral(m + n), nat.clone()));
        queries.push((&godel, Telescope::new(), plus_program(Flavor::Simple, m, n), numeral(m + n + 1), nat.clone()));
    }
    for (m, n) in [(0, 3), (1, 1), (2, 3), (3, 3), (4, 2), (2, 5), (5, 5), (3, 4), (1, 5), (4, 4)] {
        queries.push((&godel, Telescope::new(), times_program(Flavor::Simple, m, n), numeral(m * n), nat.clone()));
    }
    let refl = ctx("A : tp. b : el A. s : el nat -> el A -> el A. x : el nat. h : Eq(el nat; x; zero).");
    for (a, b) in [
        ("rec A b s x", "b"),
        ("rec A b s (succ x)", "s x b"),
        ("rec A b s (succ (succ x))", "s (succ zero) (s zero b)"),
        ("s x (rec A b s x)", "s zero b"),
        ("rec A b s x", "s zero b"),
    ] {
        queries.push((&godel, refl.clone(), obj(a), obj(b), cls("el A")));
    }
    let fns = ctx("f : el (arr nat nat). g : el nat -> el nat.");
    for (a, b, c) in [
        ("f", "lam nat nat ([x : el nat] app nat nat f x)", "el (arr nat nat)"),
        ("g", "[y : el nat] g y", "el nat -> el nat"),
        ("app nat nat (lam nat nat g) 3", "g 3", "el nat"),
        ("app nat nat (lam nat nat ([x : el nat] succ x)) 2", "3", "el nat"),
        ("lam nat nat g", "lam nat nat ([z : el nat] g z)", "el (arr nat nat)"),
    ] {
        queries.push((&godel, fns.clone(), obj(a), obj(b), cls(c)));
    }
    for (g, a, b) in [
        ("", "ext lzero nat_bar", "nat"),
        ("i : Lvl.", "ext (lsuc i) (u_bar i)", "u i"),
        ("i : Lvl. a : el (u i).", "ext (lsuc i) (cum i a)", "ext i a"),
        ("", "ext lzero (eq_bar lzero nat_bar zero zero)", "eq nat zero zero"),
        ("i : Lvl. a : el (u i).", "ext (lsuc (lsuc i)) (cum (lsuc i) (cum i a))", "ext i a"),
        ("i : Lvl.", "ext (lsuc i) (u_bar i)", "ext i (u_bar i)"),
        ("i : Lvl. a : el (u i).", "ext (lsuc i) (pi_bar (lsuc i) (cum i a) ([x : el (ext (lsuc i) (cum i a))] cum i a))", "pi (ext i a) ([x : el (ext i a)] ext i a)"),
        ("", "ext (lsuc lzero) (u_bar lzero)", "u lzero"),
        ("", "ext (lsuc lzero) (cum lzero nat_bar)", "nat"),
        ("i : Lvl.", "u (lsuc i)", "u i"),
    ] {
        queries.push((&uni, ctx(g), obj(a), obj(b), cls("tp")));
    }
    ensure(queries.len() == 50, || format!("{} queries", queries.len()))?;
    let mut proven_low = 0;
    for f in [1u64, 3, 10, 30, 100, 1000] {
        for (k, g, a, b, c) in &queries {
            let low = k.with_config(CheckConfig::with_fuel(f)).equal_objects(g, a, b, c);
            let high = k.with_config(CheckConfig::with_fuel(f * 10)).equal_objects(g, a, b, c);
            if low == Verdict::ProvenEqual {
                proven_low += 1;
                ensure(high == Verdict::ProvenEqual, || {
                    format!("{} = {} proven at {f}, {high} at {}", print_object(a), print_object(b), f * 10)
                })?;
            }
        }
    }
    Ok(format!("50 queries at fuel 1..1000 and 10x; {proven_low} proofs preserved"))
}

fn main() {
    let pool = samples();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("corpus check", Box::new(corpus_check)),
        ("rule extraction counts", Box::new(rule_counts)),
        ("beta/eta suite", Box::new(|| beta_eta(&pool))),
        ("recursor semantics", Box::new(recursor)),
        ("reflection", Box::new(reflection)),
        ("unicity", Box::new(|| unicity(&pool))),
        ("identity type", Box::new(identity_type)),
        ("universes", Box::new(universes)),
        ("metatheory suites", Box::new(metatheory)),
        ("parser round trip", Box::new(round_trip)),
        ("verdict monotonicity", Box::new(monotonicity)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
