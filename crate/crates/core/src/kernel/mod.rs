//! Algorithmic reading of the framework's judgments.
//!
//! All queries run against a checked [`Signature`] and a context given as a
//! [`Telescope`]. Equality is only semi-decided, hence [`Verdict`].

mod check;
mod equality;
pub mod ground;
mod matching;
mod normalize;
pub mod rules;
mod scope;
pub mod trace;

#[cfg(test)]
mod tests;

pub use ground::GroundEqStore;
pub use rules::{extract_rules, Extraction, Reflector, RewriteRule, RuleKind, RuleWarning};
pub use trace::{trace_render, ReplayError, TraceStep};

use crate::syntax::{Class, Decl, Name, Object, Telescope};
use matching::Matcher;
use scope::{OutOfFuel, Scope};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_FUEL: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Rewrite steps allowed per query.
    pub fuel: u64,
    pub eta: bool,
    /// Record steps so that the `_traced` entry points can return them.
    pub trace: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            fuel: DEFAULT_FUEL,
            eta: true,
            trace: false,
        }
    }
}

impl CheckConfig {
    pub fn with_fuel(fuel: u64) -> Self {
        CheckConfig {
            fuel: fuel.max(1),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ProvenEqual,
    NotProven,
    FuelExhausted { steps_used: u64 },
}

impl Verdict {
    pub fn is_proven(self) -> bool {
        self == Verdict::ProvenEqual
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ProvenEqual => f.write_str("ProvenEqual"),
            Verdict::NotProven => f.write_str("NotProven"),
            Verdict::FuelExhausted { steps_used } => write!(f, "FuelExhausted({steps_used})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("`{0}` is already declared")]
    DuplicateName(Name),
    #[error("ill-formed class for `{position}`: {source}")]
    IllFormedClass {
        position: Name,
        source: Box<KernelError>,
    },
    #[error("`{class}` is not a sort")]
    NotASort { class: Class },
    #[error("{side} endpoint of the equality class is ill-classed: {source}")]
    EndpointIllTyped { side: Side, source: Box<KernelError> },
    #[error("`{object}` is applied but has class `{class}`")]
    NotAFunction { object: Object, class: Class },
    #[error("argument `{arg}` does not have class `{expected}`: {source}")]
    ArgumentClassMismatch {
        arg: Object,
        expected: Class,
        source: Box<KernelError>,
    },
    #[error("`*` has no inferable class; it only checks against an equality class")]
    CannotInferBullet,
    #[error("class mismatch: found `{inferred}`, expected `{expected}`")]
    ClassMismatch { inferred: Class, expected: Class },
    #[error("could not prove `{lhs}` equal to `{rhs}`")]
    EqualityNotProven { lhs: Object, rhs: Object },
    #[error("fuel exhausted after {steps_used} rewrite steps")]
    FuelExhausted { steps_used: u64 },
}

impl KernelError {
    /// The innermost error in a chain of wrapped errors.
    pub fn root_cause(&self) -> &KernelError {
        match self {
            KernelError::IllFormedClass { source, .. }
            | KernelError::EndpointIllTyped { source, .. }
            | KernelError::ArgumentClassMismatch { source, .. } => source.root_cause(),
            other => other,
        }
    }

    pub fn is_fuel(&self) -> bool {
        matches!(self.root_cause(), KernelError::FuelExhausted { .. })
    }
}

/// A checked signature together with the rules read off its equations.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    decls: Vec<Decl>,
    index: HashMap<Name, usize>,
    rules: Vec<RewriteRule>,
    reductions: HashMap<(Name, usize), Vec<usize>>,
    reflectors: Vec<Reflector>,
    warnings: Vec<RuleWarning>,
}

impl Signature {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks declarations one at a time; equations become available as
    /// rules to the declarations after them.
    pub fn check(decls: &Telescope, cfg: CheckConfig) -> Result<Signature, KernelError> {
        let mut sig = Signature::empty();
        for d in decls.iter() {
            sig.check_push(d, cfg)?;
        }
        Ok(sig)
    }

    pub fn check_push(&mut self, d: &Decl, cfg: CheckConfig) -> Result<(), KernelError> {
        if self.index.contains_key(&d.name) {
            return Err(KernelError::DuplicateName(d.name.clone()));
        }
        let mut scope = Scope::new(self, cfg);
        scope
            .check_class(&d.class)
            .map_err(|e| KernelError::IllFormedClass {
                position: d.name.clone(),
                source: Box::new(e),
            })?;
        self.push_unchecked(d.clone());
        Ok(())
    }

    fn push_unchecked(&mut self, d: Decl) {
        match rules::extract(&d.name, &d.class) {
            rules::Extracted::Rule(r) => {
                if r.kind == RuleKind::Reduction {
                    let (h, n) = r.head().expect("reduction rules have a constant head");
                    self.reductions.entry((h.clone(), n)).or_default().push(self.rules.len());
                }
                self.rules.push(r);
            }
            rules::Extracted::Reflector(r) => self.reflectors.push(r),
            rules::Extracted::NotAnEquation => {}
            rules::Extracted::Rejected(w) => self.warnings.push(w),
        }
        self.index.insert(d.name.clone(), self.decls.len());
        self.decls.push(d);
    }

    pub fn lookup(&self, n: &Name) -> Option<&Class> {
        self.index.get(n).map(|&i| &self.decls[i].class)
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn telescope(&self) -> Telescope {
        Telescope::from_decls(self.decls.clone())
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn reflectors(&self) -> &[Reflector] {
        &self.reflectors
    }

    pub fn warnings(&self) -> &[RuleWarning] {
        &self.warnings
    }

    pub fn rule_count(&self, kind: RuleKind) -> usize {
        self.rules.iter().filter(|r| r.kind == kind).count()
    }

    pub(crate) fn reductions_for(&self, head: &Name, len: usize) -> impl Iterator<Item = &RewriteRule> {
        self.reductions
            .get(&(head.clone(), len))
            .into_iter()
            .flatten()
            .map(|&i| &self.rules[i])
    }
}

/// Entry point for queries against one signature.
#[derive(Clone, Debug)]
pub struct Kernel {
    sig: Signature,
    cfg: CheckConfig,
}

impl Kernel {
    pub fn new(sig: Signature, cfg: CheckConfig) -> Self {
        Kernel { sig, cfg }
    }

    /// Checks `decls` as a signature.
    pub fn from_telescope(decls: &Telescope, cfg: CheckConfig) -> Result<Self, KernelError> {
        Ok(Kernel::new(Signature::check(decls, cfg)?, cfg))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn config(&self) -> CheckConfig {
        self.cfg
    }

    pub fn with_config(&self, cfg: CheckConfig) -> Kernel {
        Kernel {
            sig: self.sig.clone(),
            cfg,
        }
    }

    pub fn set_config(&mut self, cfg: CheckConfig) {
        self.cfg = cfg;
    }

    /// Scope with `ctx` entered without checking it.
    fn scope(&self, ctx: &Telescope) -> Scope<'_> {
        let mut s = Scope::new(&self.sig, self.cfg);
        for d in ctx.iter() {
            let _ = s.push(d.name.clone(), d.class.clone());
        }
        s
    }

    pub fn check_context(&self, ctx: &Telescope) -> Result<(), KernelError> {
        let mut s = Scope::new(&self.sig, self.cfg);
        for d in ctx.iter() {
            s.enter_checked(&d.name, &d.class)?;
        }
        Ok(())
    }

    pub fn check_class(&self, ctx: &Telescope, k: &Class) -> Result<(), KernelError> {
        self.scope(ctx).check_class(k)
    }

    pub fn infer_object(&self, ctx: &Telescope, o: &Object) -> Result<Class, KernelError> {
        self.scope(ctx).infer(o)
    }

    pub fn check_object(&self, ctx: &Telescope, o: &Object, k: &Class) -> Result<(), KernelError> {
        self.scope(ctx).check(o, k)
    }

    pub fn equal_classes(&self, ctx: &Telescope, a: &Class, b: &Class) -> Verdict {
        self.scope(ctx).equal_classes_query(a, b)
    }

    /// Equality of `a` and `b` at class `k` (usually a sort used as a class).
    pub fn equal_objects(&self, ctx: &Telescope, a: &Object, b: &Object, k: &Class) -> Verdict {
        self.scope(ctx).equal_objects_query(a, b, k)
    }

    pub fn equal_objects_traced(&self, ctx: &Telescope, a: &Object, b: &Object, k: &Class) -> (Verdict, Vec<TraceStep>) {
        let mut s = self.scope(ctx);
        s.cfg.trace = true;
        s.trace.clear();
        let v = s.equal_objects_query(a, b, k);
        (v, s.trace)
    }

    pub fn normalize(&self, ctx: &Telescope, o: &Object) -> Result<Object, KernelError> {
        let mut s = self.scope(ctx);
        s.query(|s| s.normalize(o)).map_err(|OutOfFuel| KernelError::FuelExhausted {
            steps_used: self.cfg.fuel,
        })
    }

    pub fn normalize_traced(&self, ctx: &Telescope, o: &Object) -> (Result<Object, KernelError>, Vec<TraceStep>) {
        let mut s = self.scope(ctx);
        s.cfg.trace = true;
        s.trace.clear();
        let r = s.query(|s| s.normalize(o)).map_err(|OutOfFuel| KernelError::FuelExhausted {
            steps_used: self.cfg.fuel,
        });
        (r, s.trace)
    }

    pub fn normalize_class(&self, ctx: &Telescope, k: &Class) -> Result<Class, KernelError> {
        let mut s = self.scope(ctx);
        s.query(|s| s.normalize_class(k)).map_err(|OutOfFuel| KernelError::FuelExhausted {
            steps_used: self.cfg.fuel,
        })
    }

    pub fn whnf_class(&self, ctx: &Telescope, k: &Class) -> Result<Class, KernelError> {
        let mut s = self.scope(ctx);
        s.query(|s| s.whnf_class(k)).map_err(|OutOfFuel| KernelError::FuelExhausted {
            steps_used: self.cfg.fuel,
        })
    }

    /// Re-validates every rewrite step of a trace produced in `ctx`:
    /// the redex sits at the logged position, the named rule contracts it
    /// to the logged contractum, and plugging the contractum back gives the
    /// logged result.
    pub fn replay(&self, ctx: &Telescope, steps: &[TraceStep]) -> Result<usize, ReplayError> {
        let s = self.scope(ctx);
        let mut checked = 0;
        for (index, step) in steps.iter().enumerate() {
            let TraceStep::Rewrite {
                rule,
                path,
                opened,
                redex,
                contractum,
                before,
                after,
                ..
            } = step
            else {
                continue;
            };
            let Some((old, result)) = trace::replace_at(before, path, opened, contractum) else {
                return Err(ReplayError::BadPath {
                    index,
                    path: trace::PathDisplay(path).to_string(),
                });
            };
            if &old != redex {
                return Err(ReplayError::RedexMismatch { index });
            }
            if &result != after {
                return Err(ReplayError::ResultMismatch { index });
            }
            let valid = if rule.as_str() == trace::BETA {
                matches!(redex, Object::App(f, a)
                    if matches!(&**f, Object::Lam(_, _, b) if &b.instantiate(a) == contractum))
            } else {
                let Some(r) = self
                    .sig
                    .rules
                    .iter()
                    .chain(s.local_rules.iter())
                    .find(|r| &r.name == rule && r.kind == RuleKind::Reduction)
                else {
                    return Err(ReplayError::UnknownRule {
                        index,
                        rule: rule.clone(),
                    });
                };
                Matcher::new(&r.vars, Some(&s.cc))
                    .run(&r.lhs, redex)
                    .is_some_and(|(theta, _)| &r.rhs.subst_many(&theta) == contractum)
            };
            if !valid {
                return Err(ReplayError::InvalidContraction {
                    index,
                    rule: rule.clone(),
                });
            }
            checked += 1;
        }
        Ok(checked)
    }
}
