//! Arithmetic in System T: numerals, standard programs, and a small-step
//! interpreter that serves as an oracle for the kernel's normalizer.
//!
//! The interpreter has its own term representation and substitution so
//! that it shares no code with kernel rewriting.

use crate::kernel::{CheckConfig, Kernel, KernelError};
use crate::syntax::{Class, Name, Object, Telescope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::rc::Rc;
use thiserror::Error;

/// Step budget of the oracle.
pub const ORACLE_BUDGET: u64 = 1_000_000;

/// `succ (succ ... zero)` with `n` successors.
pub fn numeral(n: u64) -> Object {
    (0..n).fold(Object::var("zero"), |acc, _| Object::app(Object::var("succ"), acc))
}

/// Partial inverse of [`numeral`].
pub fn from_numeral(o: &Object) -> Option<u64> {
    let mut n = 0;
    let mut cur = o;
    loop {
        match cur {
            Object::Var(z) if z.as_str() == "zero" => return Some(n),
            Object::App(f, a) if matches!(&**f, Object::Var(s) if s.as_str() == "succ") => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

fn el_nat() -> Class {
    Class::incl(Object::app(Object::var("el"), Object::var("nat")))
}

fn lam2(x: &str, y: &str, body: Object) -> Object {
    let inner = Object::lam(el_nat(), &Name::new(y), &body);
    Object::lam(el_nat(), &Name::new(x), &inner)
}

fn rec_nat(motive: &Object, base: Object, step: Object, n: Object) -> Object {
    Object::apps(Object::var("rec"), [motive.clone(), base, step, n])
}

/// Which recursor the programs are written against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `rec nat ...` over the simple signature.
    Simple,
    /// `rec ([x : el nat] nat) ...`: a constant family over the dependent signature.
    Dependent,
}

fn motive(flavor: Flavor) -> Object {
    match flavor {
        Flavor::Simple => Object::var("nat"),
        Flavor::Dependent => Object::lam(el_nat(), &Name::new("x"), &Object::var("nat")),
    }
}

/// `[m][n] rec nat n ([p][r] succ r) m`
pub fn plus_term(flavor: Flavor) -> Object {
    let step = lam2("p", "r", Object::app(Object::var("succ"), Object::var("r")));
    lam2(
        "m",
        "n",
        rec_nat(&motive(flavor), Object::var("n"), step, Object::var("m")),
    )
}

/// `[m][n] rec nat zero ([p][r] plus n r) m`
pub fn times_term(flavor: Flavor) -> Object {
    let add_n = Object::apps(plus_term(flavor), [Object::var("n"), Object::var("r")]);
    let step = lam2("p", "r", add_n);
    lam2(
        "m",
        "n",
        rec_nat(&motive(flavor), Object::var("zero"), step, Object::var("m")),
    )
}

pub fn plus_program(flavor: Flavor, m: u64, n: u64) -> Object {
    Object::apps(plus_term(flavor), [numeral(m), numeral(n)])
}

pub fn times_program(flavor: Flavor, m: u64, n: u64) -> Object {
    Object::apps(times_term(flavor), [numeral(m), numeral(n)])
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("evaluation is stuck at a non-numeral: {0}")]
    Stuck(String),
    #[error("step budget of {0} exceeded")]
    StepBudgetExceeded(u64),
}

// Oracle terms: constants by name, variables by de Bruijn index. Domains
// and the framework's sort-level structure are irrelevant to evaluation.
#[derive(Debug)]
enum Tm {
    Const(Name),
    Var(u32),
    Lam(Rc<Tm>),
    App(Rc<Tm>, Rc<Tm>),
    Opaque,
}

fn to_tm(o: &Object) -> Rc<Tm> {
    Rc::new(match o {
        Object::Var(n) => Tm::Const(n.clone()),
        Object::Bound(i) => Tm::Var(*i),
        Object::Lam(_, _, b) => Tm::Lam(to_tm(b)),
        Object::App(f, a) => Tm::App(to_tm(f), to_tm(a)),
        _ => Tm::Opaque,
    })
}

fn shift(t: &Rc<Tm>, by: u32, cutoff: u32) -> Rc<Tm> {
    match &**t {
        Tm::Var(i) if *i >= cutoff => Rc::new(Tm::Var(i + by)),
        Tm::Lam(b) => Rc::new(Tm::Lam(shift(b, by, cutoff + 1))),
        Tm::App(f, a) => Rc::new(Tm::App(shift(f, by, cutoff), shift(a, by, cutoff))),
        _ => t.clone(),
    }
}

/// `body[0 := arg]` with the usual index adjustment.
fn subst(body: &Rc<Tm>, arg: &Rc<Tm>, depth: u32) -> Rc<Tm> {
    match &**body {
        Tm::Var(i) if *i == depth => shift(arg, depth, 0),
        Tm::Var(i) if *i > depth => Rc::new(Tm::Var(i - 1)),
        Tm::Lam(b) => Rc::new(Tm::Lam(subst(b, arg, depth + 1))),
        Tm::App(f, a) => Rc::new(Tm::App(subst(f, arg, depth), subst(a, arg, depth))),
        _ => body.clone(),
    }
}

fn unspine(t: &Rc<Tm>) -> (Rc<Tm>, Vec<Rc<Tm>>) {
    let mut args = Vec::new();
    let mut cur = t.clone();
    while let Tm::App(f, a) = &*cur.clone() {
        args.push(a.clone());
        cur = f.clone();
    }
    args.reverse();
    (cur, args)
}

fn respine(head: Rc<Tm>, args: impl IntoIterator<Item = Rc<Tm>>) -> Rc<Tm> {
    args.into_iter().fold(head, |f, a| Rc::new(Tm::App(f, a)))
}

fn is_const(t: &Tm, name: &str) -> bool {
    matches!(t, Tm::Const(n) if n.as_str() == name)
}

/// Evaluator state: the current term and the number of steps taken.
pub struct OracleState {
    pub steps: u64,
    budget: u64,
}

impl OracleState {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(OracleError::StepBudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Call-by-name reduction to weak head normal form.
    fn whnf(&mut self, t: Rc<Tm>) -> Result<Rc<Tm>, OracleError> {
        let mut cur = t;
        loop {
            let (head, args) = unspine(&cur);
            match &*head {
                Tm::Lam(body) if !args.is_empty() => {
                    self.tick()?;
                    let reduced = subst(body, &args[0], 0);
                    cur = respine(reduced, args[1..].iter().cloned());
                }
                _ if is_const(&head, "rec") && args.len() >= 4 => {
                    let scrutinee = self.whnf(args[3].clone())?;
                    let (sh, sargs) = unspine(&scrutinee);
                    let rest = args[4..].iter().cloned();
                    if is_const(&sh, "zero") && sargs.is_empty() {
                        self.tick()?;
                        cur = respine(args[1].clone(), rest);
                    } else if is_const(&sh, "succ") && sargs.len() == 1 {
                        self.tick()?;
                        let pred = sargs[0].clone();
                        let inner = respine(head.clone(), [args[0].clone(), args[1].clone(), args[2].clone(), pred.clone()]);
                        cur = respine(args[2].clone(), [pred, inner].into_iter().chain(rest));
                    } else {
                        return Ok(cur);
                    }
                }
                _ if is_const(&head, "app") && args.len() >= 4 => {
                    let fun = self.whnf(args[2].clone())?;
                    let (fh, fargs) = unspine(&fun);
                    if is_const(&fh, "lam") && fargs.len() == 3 {
                        self.tick()?;
                        cur = respine(fargs[2].clone(), args[3..].iter().cloned());
                    } else {
                        return Ok(cur);
                    }
                }
                _ => return Ok(cur),
            }
        }
    }
}

fn describe(t: &Tm) -> String {
    match t {
        Tm::Const(n) => n.to_string(),
        Tm::Var(i) => format!("#{i}"),
        Tm::Lam(b) => format!("[_] {}", describe(b)),
        Tm::App(f, a) => format!("({} {})", describe(f), describe(a)),
        Tm::Opaque => "_".into(),
    }
}

/// Evaluates a closed program of class `el nat` to the number it denotes.
pub fn oracle_eval(program: &Object) -> Result<u64, OracleError> {
    oracle_eval_with_budget(program, ORACLE_BUDGET)
}

pub fn oracle_eval_with_budget(program: &Object, budget: u64) -> Result<u64, OracleError> {
    let mut st = OracleState { steps: 0, budget };
    let mut n = 0;
    let mut cur = to_tm(program);
    loop {
        cur = st.whnf(cur)?;
        let (h, args) = unspine(&cur);
        if is_const(&h, "zero") && args.is_empty() {
            return Ok(n);
        }
        if is_const(&h, "succ") && args.len() == 1 {
            n += 1;
            cur = args[0].clone();
            continue;
        }
        return Err(OracleError::Stuck(describe(&cur)));
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AgreementError {
    #[error("program is not a closed object of class el nat: {0}")]
    Precondition(KernelError),
    #[error("oracle failed: {0}")]
    Oracle(OracleError),
    #[error("kernel ran out of fuel after {0} steps")]
    FuelExhausted(u64),
}

/// True iff the kernel's normal form of `program` is the numeral the
/// oracle computes.
pub fn agreement(kernel: &Kernel, program: &Object, cfg: CheckConfig) -> Result<bool, AgreementError> {
    let k = kernel.with_config(cfg);
    let empty = Telescope::new();
    k.check_object(&empty, program, &el_nat())
        .map_err(AgreementError::Precondition)?;
    let value = oracle_eval(program).map_err(AgreementError::Oracle)?;
    match k.normalize(&empty, program) {
        Ok(nf) => Ok(nf == numeral(value)),
        Err(KernelError::FuelExhausted { steps_used }) => Err(AgreementError::FuelExhausted(steps_used)),
        Err(e) => Err(AgreementError::Precondition(e)),
    }
}

/// Random closed programs of class `el nat` with at most `max_size`
/// constructors, deterministic in `seed`.
pub fn random_programs(flavor: Flavor, seed: u64, count: usize, max_size: usize) -> Vec<Object> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut g = ProgramGen {
            rng: &mut rng,
            flavor,
            fresh: 0,
        };
        let budget = g.rng.gen_range(1..=max_size);
        let (p, _) = g.nat(budget, &mut Vec::new());
        out.push(p);
    }
    out
}

struct ProgramGen<'r> {
    rng: &'r mut ChaCha8Rng,
    flavor: Flavor,
    fresh: usize,
}

impl ProgramGen<'_> {
    fn name(&mut self) -> Name {
        self.fresh += 1;
        Name::new(&format!("v{}", self.fresh))
    }

    /// A nat-valued expression using at most `budget` constructors;
    /// returns it with its size. `env` lists variables in scope.
    fn nat(&mut self, budget: usize, env: &mut Vec<Name>) -> (Object, usize) {
        let leaf = |g: &mut Self, env: &Vec<Name>| {
            if !env.is_empty() && g.rng.gen_bool(0.5) {
                (Object::Var(env[g.rng.gen_range(0..env.len())].clone()), 1)
            } else {
                (numeral(g.rng.gen_range(0..3)), 1)
            }
        };
        if budget < 2 {
            return leaf(self, env);
        }
        match self.rng.gen_range(0..5) {
            0 => {
                let (a, s) = self.nat(budget - 1, env);
                (Object::app(Object::var("succ"), a), s + 1)
            }
            1 if budget >= 3 => {
                let (a, sa) = self.nat((budget - 1) / 2, env);
                let (b, sb) = self.nat(budget - 1 - sa, env);
                (Object::apps(plus_term(self.flavor), [a, b]), sa + sb + 1)
            }
            2 if budget >= 4 => {
                // rec with a step function that may use both of its inputs.
                let (n, sn) = self.nat((budget - 1) / 3, env);
                let (b, sb) = self.nat((budget - 1) / 3, env);
                let (p, r) = (self.name(), self.name());
                env.push(p.clone());
                env.push(r.clone());
                let (body, ss) = self.nat(budget.saturating_sub(1 + sn + sb).max(1), env);
                env.truncate(env.len() - 2);
                let step = Object::lam(el_nat(), &p, &Object::lam(el_nat(), &r, &body));
                (rec_nat(&motive(self.flavor), b, step, n), sn + sb + ss + 1)
            }
            3 if budget >= 3 => {
                let (a, sa) = self.nat((budget - 1) / 2, env);
                let x = self.name();
                env.push(x.clone());
                let (body, sb) = self.nat(budget - 1 - sa, env);
                env.pop();
                (Object::app(Object::lam(el_nat(), &x, &body), a), sa + sb + 1)
            }
            _ => leaf(self, env),
        }
    }
}
