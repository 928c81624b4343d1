//! Property suites for the structural metatheory: presuppositions,
//! weakening, substitution and functionality, run over kernel-validated
//! samples.
//!
//! Samples come from a seeded generator that proposes candidate objects
//! (applications of known objects, abstractions over atoms) and keeps the
//! ones the kernel classifies.

use crate::kernel::{KernelError, Verdict};
use crate::stdsigs::{self, CorpusId};
use crate::syntax::{Class, Decl, Name, Object, Telescope};
use crate::Kernel;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_term_size: usize,
    pub max_ctx_depth: usize,
    pub sample_count: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_term_size: 10,
            max_ctx_depth: 4,
            sample_count: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSample {
    pub signature: CorpusId,
    pub context: Telescope,
    pub object: Object,
    pub inferred_class: Class,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Fuel ran out somewhere along the check.
    Inconclusive,
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum PreconditionError {
    #[error("`{0}` is not declared in the sample context")]
    NotInContext(Name),
    #[error("insertion does not form a context: {0}")]
    BadInsertion(KernelError),
    #[error("insertion position {0} is past the end of the context")]
    BadPosition(usize),
    #[error("`{0}` is already declared")]
    NotFresh(Name),
    #[error("replacement does not have the variable's class: {0}")]
    Replacement(KernelError),
    #[error("replacements are not provably equal ({0})")]
    ReplacementsDiffer(Verdict),
}

fn from_error(context: &str, e: &KernelError) -> Outcome {
    if e.is_fuel() {
        Outcome::Inconclusive
    } else {
        Outcome::Fail(format!("{context}: {e}"))
    }
}

fn from_verdict(context: &str, v: Verdict) -> Outcome {
    match v {
        Verdict::ProvenEqual => Outcome::Pass,
        Verdict::NotProven => Outcome::Fail(format!("{context}: not proven")),
        Verdict::FuelExhausted { .. } => Outcome::Inconclusive,
    }
}

/// The context is well formed and so is the inferred class.
pub fn check_presuppositions(kernel: &Kernel, s: &DerivationSample) -> Outcome {
    if let Err(e) = kernel.check_context(&s.context) {
        return from_error("context", &e);
    }
    match kernel.check_class(&s.context, &s.inferred_class) {
        Ok(()) => Outcome::Pass,
        Err(e) => from_error("inferred class", &e),
    }
}

/// Fresh declarations spliced into the context at `position`.
#[derive(Clone, Debug, PartialEq)]
pub struct Insertion {
    pub position: usize,
    pub decls: Telescope,
}

impl Insertion {
    pub fn append(decls: Telescope) -> Self {
        Insertion {
            position: usize::MAX,
            decls,
        }
    }
}

pub fn check_weakening(
    kernel: &Kernel,
    s: &DerivationSample,
    ins: &Insertion,
) -> Result<Outcome, PreconditionError> {
    let pos = if ins.position == usize::MAX {
        s.context.len()
    } else {
        ins.position
    };
    if pos > s.context.len() {
        return Err(PreconditionError::BadPosition(pos));
    }
    for d in ins.decls.iter() {
        if s.context.get(d.name.as_str()).is_some() || kernel.signature().lookup(&d.name).is_some() {
            return Err(PreconditionError::NotFresh(d.name.clone()));
        }
    }
    let mut decls = s.context.decls[..pos].to_vec();
    decls.extend(ins.decls.iter().cloned());
    decls.extend(s.context.decls[pos..].iter().cloned());
    let ctx = Telescope::from_decls(decls);
    kernel.check_context(&ctx).map_err(PreconditionError::BadInsertion)?;
    Ok(match kernel.infer_object(&ctx, &s.object) {
        Ok(k) => from_verdict("weakened class", kernel.equal_classes(&ctx, &k, &s.inferred_class)),
        Err(e) => from_error("weakened inference", &e),
    })
}

/// Splits the context at `var` and checks `replacement` against its class.
fn split_at(
    kernel: &Kernel,
    s: &DerivationSample,
    var: &Name,
    replacement: &Object,
) -> Result<(Telescope, Class, Telescope), PreconditionError> {
    let i = s
        .context
        .decls
        .iter()
        .rposition(|d| &d.name == var)
        .ok_or_else(|| PreconditionError::NotInContext(var.clone()))?;
    let before = Telescope::from_decls(s.context.decls[..i].to_vec());
    let after = Telescope::from_decls(s.context.decls[i + 1..].to_vec());
    let k1 = s.context.decls[i].class.clone();
    kernel
        .check_object(&before, replacement, &k1)
        .map_err(PreconditionError::Replacement)?;
    Ok((before, k1, after))
}

pub fn check_substitution(
    kernel: &Kernel,
    s: &DerivationSample,
    var: &Name,
    replacement: &Object,
) -> Result<Outcome, PreconditionError> {
    let (before, _, after) = split_at(kernel, s, var, replacement)?;
    let ctx = before.concat(&after.subst(var, replacement));
    if let Err(e) = kernel.check_context(&ctx) {
        return Ok(from_error("substituted context", &e));
    }
    let object = s.object.subst(var, replacement);
    let expected = s.inferred_class.subst(var, replacement);
    // `*` only checks, so the substituted judgment is checked rather than
    // inferred and compared.
    Ok(match kernel.check_object(&ctx, &object, &expected) {
        Ok(()) => Outcome::Pass,
        Err(e) => from_error("substituted judgment", &e),
    })
}

pub fn check_functionality(
    kernel: &Kernel,
    s: &DerivationSample,
    var: &Name,
    r1: &Object,
    r2: &Object,
) -> Result<Outcome, PreconditionError> {
    let (before, k1, _) = split_at(kernel, s, var, r1)?;
    kernel
        .check_object(&before, r2, &k1)
        .map_err(PreconditionError::Replacement)?;
    match kernel.equal_objects(&before, r1, r2, &k1) {
        Verdict::ProvenEqual => {}
        v => return Err(PreconditionError::ReplacementsDiffer(v)),
    }
    Ok(functionality_unchecked(kernel, s, var, r1, r2))
}

/// The conclusion of functionality without its premises; negative
/// controls call this with unequal replacements.
fn functionality_unchecked(kernel: &Kernel, s: &DerivationSample, var: &Name, r1: &Object, r2: &Object) -> Outcome {
    let Some(i) = s.context.decls.iter().rposition(|d| &d.name == var) else {
        return Outcome::Fail(format!("`{var}` not in context"));
    };
    let before = Telescope::from_decls(s.context.decls[..i].to_vec());
    let after = Telescope::from_decls(s.context.decls[i + 1..].to_vec());
    let ctx = before.concat(&after.subst(var, r1));
    let k = s.inferred_class.subst(var, r1);
    from_verdict(
        "instances",
        kernel.equal_objects(&ctx, &s.object.subst(var, r1), &s.object.subst(var, r2), &k),
    )
}

#[derive(Clone, Debug)]
struct Entry {
    object: Object,
    class: Class,
    /// Normal form of `class`, for cheap matching of argument classes.
    key: Class,
}

/// Kernel-guided candidate generation for one signature.
pub struct Generator<'k> {
    kernel: &'k Kernel,
    id: CorpusId,
    budget: EnumBudget,
    rng: ChaCha8Rng,
    fresh: usize,
}

/// Objects known to be well classed in one context.
#[derive(Clone, Debug, Default)]
struct Pool {
    entries: Vec<Entry>,
}

const POOL_ROUNDS: usize = 60;
const POOL_CAP: usize = 48;
const SAMPLES_PER_CONTEXT: usize = 25;

impl<'k> Generator<'k> {
    pub fn new(kernel: &'k Kernel, id: CorpusId, budget: EnumBudget, seed: u64) -> Self {
        let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (id as u64 + 1);
        Generator {
            kernel,
            id,
            budget,
            rng: ChaCha8Rng::seed_from_u64(mix),
            fresh: 0,
        }
    }

    fn entry(&self, ctx: &Telescope, object: Object) -> Option<Entry> {
        if object.size() > self.budget.max_term_size {
            return None;
        }
        let class = self.kernel.infer_object(ctx, &object).ok()?;
        let key = self.kernel.normalize_class(ctx, &class).ok()?;
        Some(Entry { object, class, key })
    }

    fn atoms(&self, ctx: &Telescope) -> Pool {
        let names = self
            .kernel
            .signature()
            .decls()
            .iter()
            .chain(ctx.iter())
            .map(|d| d.name.clone())
            .collect::<Vec<_>>();
        let mut pool = Pool::default();
        for n in names {
            if let Some(e) = self.entry(ctx, Object::Var(n)) {
                pool.push(e);
            }
        }
        pool
    }

    /// Grows a pool of well-classed objects by application and abstraction.
    fn grow(&mut self, ctx: &Telescope, mut pool: Pool) -> Pool {
        for _ in 0..POOL_ROUNDS {
            if pool.entries.len() >= POOL_CAP + pool.atoms_hint() {
                break;
            }
            let cand = if self.rng.gen_bool(0.75) {
                self.propose_app(ctx, &pool)
            } else {
                self.propose_lam(&pool)
            };
            if let Some(o) = cand {
                if pool.entries.iter().all(|e| e.object != o) {
                    if let Some(e) = self.entry(ctx, o) {
                        pool.push(e);
                    }
                }
            }
        }
        pool
    }

    fn propose_app(&mut self, ctx: &Telescope, pool: &Pool) -> Option<Object> {
        let funs: Vec<(&Entry, Class)> = pool
            .entries
            .iter()
            .filter_map(|e| match self.kernel.whnf_class(ctx, &e.key).ok()? {
                Class::Pi(d, _, _) => Some((e, (*d).clone())),
                _ => None,
            })
            .collect();
        let (f, dom) = funs.choose(&mut self.rng)?;
        let dom = self.kernel.normalize_class(ctx, dom).ok()?;
        let args: Vec<&Entry> = pool.entries.iter().filter(|e| e.key == dom).collect();
        let a = args.choose(&mut self.rng)?;
        Some(Object::app(f.object.clone(), a.object.clone()))
    }

    /// `[y : D] t`: either a constant function or `t` with one of its atoms
    /// of class `D` abstracted.
    fn propose_lam(&mut self, pool: &Pool) -> Option<Object> {
        let t = pool.entries.choose(&mut self.rng)?;
        let y = Name::new(&format!("y{}", self.fresh));
        self.fresh += 1;
        let atoms: Vec<&Entry> = pool
            .entries
            .iter()
            .filter(|e| matches!(e.object, Object::Var(_)) && matches!(e.key, Class::Incl(_)))
            .filter(|e| t.object.free_vars().contains(e.object.head_name().unwrap()))
            .collect();
        if !atoms.is_empty() && self.rng.gen_bool(0.6) {
            let a = atoms.choose(&mut self.rng)?;
            let Object::Var(n) = &a.object else { return None };
            let body = t.object.subst(n, &Object::Var(y.clone()));
            return Some(Object::lam(a.class.clone(), &y, &body));
        }
        let doms: Vec<&Entry> = pool.entries.iter().filter(|e| matches!(e.key, Class::Incl(_))).collect();
        let d = doms.choose(&mut self.rng)?;
        Some(Object::lam(d.class.clone(), &y, &t.object))
    }

    /// Candidate classes for a new context variable.
    fn decl_class(&mut self, pool: &Pool) -> Option<Class> {
        let sorts: Vec<&Entry> = pool
            .entries
            .iter()
            .filter(|e| e.key == Class::Sort && e.object.size() <= 3)
            .collect();
        let s = sorts.choose(&mut self.rng)?;
        let base = Class::incl(s.object.clone());
        match self.rng.gen_range(0..6) {
            0 => {
                let s2 = sorts.choose(&mut self.rng)?;
                Some(Class::arrow(base, Class::incl(s2.object.clone())))
            }
            1 => {
                let members: Vec<&Entry> = pool.entries.iter().filter(|e| e.key == base).collect();
                let a = members.choose(&mut self.rng)?;
                let b = members.choose(&mut self.rng)?;
                Some(Class::eq(base, a.object.clone(), b.object.clone()))
            }
            _ => Some(base),
        }
    }

    /// A random well-formed context together with a grown pool for each of
    /// its prefixes.
    fn context(&mut self, depth: usize) -> (Telescope, Vec<Pool>) {
        let mut ctx = Telescope::new();
        let mut pools = Vec::new();
        let mut pool = self.grow(&ctx, self.atoms(&ctx));
        for i in 0..depth {
            pools.push(pool.clone());
            let Some(k) = self.decl_class(&pool) else { break };
            let name = if matches!(k, Class::Eq(..)) { format!("h{i}") } else { format!("x{i}") };
            let mut next = ctx.clone();
            next.push(&name, k);
            if self.kernel.check_context(&next).is_err() {
                continue;
            }
            ctx = next;
            let mut extended = pool.clone();
            if let Some(e) = self.entry(&ctx, Object::var(&name)) {
                extended.push(e);
            }
            pool = self.grow(&ctx, extended);
        }
        pools.truncate(ctx.len());
        pools.push(pool);
        (ctx, pools)
    }

    /// Kernel-validated samples, deterministic for the seed.
    pub fn samples(&mut self) -> Vec<DerivationSample> {
        self.samples_with_pools().into_iter().map(|(s, _)| s).collect()
    }

    fn samples_with_pools(&mut self) -> Vec<(DerivationSample, std::rc::Rc<Vec<Pool>>)> {
        let want = self.budget.sample_count;
        let mut out = Vec::with_capacity(want);
        let mut attempts = 0;
        while out.len() < want && attempts < want * 4 + 8 {
            attempts += 1;
            let depth = if attempts == 1 {
                0
            } else {
                self.rng.gen_range(0..=self.budget.max_ctx_depth)
            };
            let (ctx, pools) = self.context(depth);
            let pools = std::rc::Rc::new(pools);
            let last = pools.last().expect("at least one pool");
            let mut entries: Vec<&Entry> = last.entries.iter().collect();
            if attempts == 1 {
                entries.sort_by_key(|e| e.object.size());
            } else {
                entries.shuffle(&mut self.rng);
                // Prefer objects that use the context.
                entries.sort_by_key(|e| !ctx.iter().any(|d| e.object.mentions(&d.name)));
            }
            for e in entries.into_iter().take(SAMPLES_PER_CONTEXT) {
                if out.len() == want {
                    break;
                }
                out.push((
                    DerivationSample {
                        signature: self.id,
                        context: ctx.clone(),
                        object: e.object.clone(),
                        inferred_class: e.class.clone(),
                    },
                    pools.clone(),
                ));
            }
        }
        out
    }
}

impl Pool {
    fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    fn atoms_hint(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.object, Object::Var(_))).count()
    }
}

/// Samples for one signature and seed.
pub fn enumerate(kernel: &Kernel, id: CorpusId, budget: EnumBudget, seed: u64) -> Vec<DerivationSample> {
    if budget.sample_count == 0 {
        return Vec::new();
    }
    Generator::new(kernel, id, budget, seed).samples()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    Presuppositions,
    Weakening,
    Substitution,
    Functionality,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [
        Lemma::Presuppositions,
        Lemma::Weakening,
        Lemma::Substitution,
        Lemma::Functionality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Lemma::Presuppositions => "presuppositions",
            Lemma::Weakening => "weakening",
            Lemma::Substitution => "substitution",
            Lemma::Functionality => "functionality",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    /// No suitable instance could be built for the sample.
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, o: &Outcome) {
        match o {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail(_) => self.fail += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn checked(&self) -> usize {
        self.pass + self.fail + self.inconclusive
    }

    pub fn merge(&mut self, o: &Tally) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.inconclusive += o.inconclusive;
        self.skipped += o.skipped;
    }

    pub fn inconclusive_rate(&self) -> f64 {
        if self.checked() == 0 {
            0.0
        } else {
            self.inconclusive as f64 / self.checked() as f64
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub samples: usize,
    pub tallies: [Tally; 4],
    /// Negative controls by lemma; `true` when the control was caught.
    pub controls: Vec<(Lemma, bool)>,
    /// First few failure messages.
    pub failures: Vec<String>,
}

impl Report {
    pub fn tally(&self, l: Lemma) -> &Tally {
        &self.tallies[l as usize]
    }

    pub fn merge(&mut self, o: &Report) {
        self.samples += o.samples;
        for (a, b) in self.tallies.iter_mut().zip(&o.tallies) {
            a.merge(b);
        }
        self.controls.extend(o.controls.iter().copied());
        for f in &o.failures {
            if self.failures.len() < 20 {
                self.failures.push(f.clone());
            }
        }
    }

    pub fn failures(&self) -> usize {
        self.tallies.iter().map(|t| t.fail).sum()
    }

    pub fn controls_caught(&self) -> bool {
        !self.controls.is_empty() && self.controls.iter().all(|(_, c)| *c)
    }

    /// Zero failures, inconclusive at most 1% per lemma, controls caught.
    pub fn ok(&self) -> bool {
        self.failures() == 0
            && self.tallies.iter().all(|t| t.inconclusive_rate() <= 0.01)
            && self.controls_caught()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples {}", self.samples)?;
        for l in Lemma::ALL {
            let t = self.tally(l);
            writeln!(
                f,
                "{} pass {} fail {} inconclusive {} skipped {}",
                l.as_str(),
                t.pass,
                t.fail,
                t.inconclusive,
                t.skipped
            )?;
        }
        let caught = self.controls.iter().filter(|(_, c)| *c).count();
        writeln!(f, "controls caught {caught}/{}", self.controls.len())?;
        for m in &self.failures {
            writeln!(f, "failure {m}")?;
        }
        Ok(())
    }
}

/// A class that no sample infers, used to corrupt samples.
fn corrupt(k: &Class) -> Class {
    if *k == Class::Sort {
        Class::incl(Object::Lvl)
    } else {
        Class::Sort
    }
}

/// `x : el nat |- succ x : el nat`, present in every corpus signature.
fn template(id: CorpusId) -> DerivationSample {
    let nat = Class::incl(Object::app(Object::var("el"), Object::var("nat")));
    let mut ctx = Telescope::new();
    ctx.push("x", nat.clone());
    DerivationSample {
        signature: id,
        context: ctx,
        object: Object::app(Object::var("succ"), Object::var("x")),
        inferred_class: nat,
    }
}

/// Deliberately broken instances that each suite must reject.
pub fn negative_controls(kernel: &Kernel, id: CorpusId) -> Vec<(Lemma, bool)> {
    let t = template(id);
    let x = Name::new("x");
    let zero = Object::var("zero");
    let one = Object::app(Object::var("succ"), zero.clone());
    let mut dangling = t.clone();
    dangling
        .context
        .decls
        .insert(0, Decl::new("d", Class::incl(Object::var("undeclared_sort"))));
    let mut wrong = t.clone();
    wrong.inferred_class = corrupt(&t.inferred_class);
    vec![
        (Lemma::Presuppositions, check_presuppositions(kernel, &dangling).is_fail()),
        (
            Lemma::Weakening,
            check_weakening(kernel, &wrong, &Insertion::append(Telescope::new())).is_ok_and(|o| o.is_fail()),
        ),
        (
            Lemma::Substitution,
            check_substitution(kernel, &wrong, &x, &zero).is_ok_and(|o| o.is_fail()),
        ),
        (
            Lemma::Functionality,
            functionality_unchecked(kernel, &t, &x, &zero, &one).is_fail(),
        ),
    ]
}

struct Runner<'k> {
    kernel: &'k Kernel,
    rng: ChaCha8Rng,
    report: Report,
    /// Closed declaration classes usable at any position.
    closed_classes: Vec<Class>,
}

impl Runner<'_> {
    fn record(&mut self, l: Lemma, s: &DerivationSample, r: Result<Outcome, PreconditionError>) {
        match r {
            Ok(o) => {
                if let Outcome::Fail(m) = &o {
                    if self.report.failures.len() < 20 {
                        self.report.failures.push(format!(
                            "{} {}: {} in [{}]: {m}",
                            s.signature,
                            l.as_str(),
                            crate::parse::print_object(&s.object),
                            crate::parse::print_decls(&s.context).replace('\n', " ")
                        ));
                    }
                }
                self.report.tallies[l as usize].add(&o);
            }
            Err(_) => self.report.tallies[l as usize].skipped += 1,
        }
    }

    fn run(&mut self, s: &DerivationSample, pools: &[Pool]) {
        self.report.samples += 1;
        let o = check_presuppositions(self.kernel, s);
        self.record(Lemma::Presuppositions, s, Ok(o));

        let pos = self.rng.gen_range(0..=s.context.len());
        let mut decls = Telescope::new();
        if let Some(k) = self.closed_classes.choose(&mut self.rng) {
            decls.push("w_fresh", k.clone());
        }
        let ins = Insertion { position: pos, decls };
        let r = check_weakening(self.kernel, s, &ins);
        self.record(Lemma::Weakening, s, r);

        if s.context.is_empty() {
            self.report.tallies[Lemma::Substitution as usize].skipped += 1;
            self.report.tallies[Lemma::Functionality as usize].skipped += 1;
            return;
        }
        // Prefer a variable the object actually uses.
        let used: Vec<usize> = (0..s.context.len())
            .filter(|&i| s.object.mentions(&s.context.decls[i].name))
            .collect();
        let i = match used.choose(&mut self.rng) {
            Some(&i) => i,
            None => self.rng.gen_range(0..s.context.len()),
        };
        let var = s.context.decls[i].name.clone();
        let Some((r1, r2)) = self.replacements(&s.context, i, &pools[i]) else {
            self.report.tallies[Lemma::Substitution as usize].skipped += 1;
            self.report.tallies[Lemma::Functionality as usize].skipped += 1;
            return;
        };
        let r = check_substitution(self.kernel, s, &var, &r1);
        self.record(Lemma::Substitution, s, r);
        let r = check_functionality(self.kernel, s, &var, &r1, &r2);
        self.record(Lemma::Functionality, s, r);
    }

    /// Two provably equal objects of the class of declaration `i`, drawn
    /// from the pool of the preceding prefix.
    fn replacements(&mut self, ctx: &Telescope, i: usize, pool: &Pool) -> Option<(Object, Object)> {
        let before = Telescope::from_decls(ctx.decls[..i].to_vec());
        let k1 = &ctx.decls[i].class;
        let key = self.kernel.normalize_class(&before, k1).ok()?;
        let cands: Vec<&Entry> = pool.entries.iter().filter(|e| e.key == key).collect();
        let r1 = match cands.choose(&mut self.rng) {
            Some(e) => e.object.clone(),
            None if matches!(key, Class::Eq(..)) => Object::Bullet,
            None => return None,
        };
        let nf = self.kernel.normalize(&before, &r1).ok()?;
        let r2 = if nf != r1 {
            nf
        } else if let Class::Pi(d, x, _) = &key {
            let y = Name::new(&format!("{}_eta", x.name()));
            Object::lam((**d).clone(), &y, &Object::app(r1.clone(), Object::Var(y.clone())))
        } else {
            cands
                .iter()
                .map(|e| e.object.clone())
                .find(|o| *o != r1 && self.kernel.equal_objects(&before, &r1, o, k1).is_proven())
                .unwrap_or_else(|| r1.clone())
        };
        Some((r1, r2))
    }
}

/// Runs all four suites on one signature and seed.
pub fn run_suite(kernel: &Kernel, id: CorpusId, budget: EnumBudget, seed: u64) -> Report {
    let mut gen = Generator::new(kernel, id, budget, seed);
    let samples = if budget.sample_count == 0 {
        Vec::new()
    } else {
        gen.samples_with_pools()
    };
    let closed_classes = {
        let empty = Telescope::new();
        let pool = gen.grow(&empty, gen.atoms(&empty));
        pool.entries
            .iter()
            .filter(|e| e.key == Class::Sort && e.object.size() <= 3)
            .map(|e| Class::incl(e.object.clone()))
            .collect()
    };
    let mut runner = Runner {
        kernel,
        rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5EED),
        report: Report::default(),
        closed_classes,
    };
    for (s, pools) in &samples {
        runner.run(s, pools);
    }
    runner.report.controls = negative_controls(kernel, id);
    runner.report
}

/// Default budgets across the given signatures and seeds.
pub fn run_all(ids: &[CorpusId], seeds: std::ops::Range<u64>, budget: EnumBudget) -> Report {
    let mut total = Report::default();
    for &id in ids {
        let kernel = stdsigs::kernel(id);
        for seed in seeds.clone() {
            total.merge(&run_suite(&kernel, id, budget, seed));
        }
    }
    total
}
