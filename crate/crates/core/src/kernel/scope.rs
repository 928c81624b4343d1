//! Per-query checking state: local declarations, hypotheses, fuel.

use super::ground::GroundEqStore;
use super::matching::Matcher;
use super::rules::{extract, Extracted, RewriteRule, RuleKind};
use super::trace::TraceStep;
use super::{CheckConfig, Signature};
use crate::syntax::{Class, Name, Object};

/// Raised when a query runs out of rewrite steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct OutOfFuel;

pub(crate) type Fuel<T> = Result<T, OutOfFuel>;

pub(crate) struct Mark {
    locals: usize,
    rules: usize,
    cc: Option<GroundEqStore>,
}

pub(crate) struct Scope<'s> {
    pub sig: &'s Signature,
    pub cfg: CheckConfig,
    locals: Vec<(Name, Class)>,
    pub local_rules: Vec<RewriteRule>,
    pub cc: GroundEqStore,
    fuel_left: u64,
    depth: u32,
    fresh: u64,
    pub trace: Vec<TraceStep>,
}

impl<'s> Scope<'s> {
    pub fn new(sig: &'s Signature, cfg: CheckConfig) -> Self {
        let fuel = cfg.fuel;
        Scope {
            sig,
            cfg,
            locals: Vec::new(),
            local_rules: Vec::new(),
            cc: GroundEqStore::new(),
            fuel_left: fuel,
            depth: 0,
            fresh: 0,
            trace: Vec::new(),
        }
    }

    pub fn lookup(&self, n: &Name) -> Option<&Class> {
        self.locals
            .iter()
            .rev()
            .find(|(m, _)| m == n)
            .map(|(_, k)| k)
            .or_else(|| self.sig.lookup(n))
    }

    pub fn is_declared(&self, n: &Name) -> bool {
        self.lookup(n).is_some()
    }

    pub fn fresh(&mut self, hint: &Name) -> Name {
        self.fresh += 1;
        let base: String = hint.as_str().chars().filter(|c| c.is_alphanumeric()).collect();
        Name::new(&format!("#{}{}", base, self.fresh))
    }

    /// Runs `f` as one query: fuel is reset unless a query is already running.
    pub fn query<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        if self.depth == 0 {
            self.fuel_left = self.cfg.fuel;
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    pub fn tick(&mut self) -> Fuel<()> {
        if self.fuel_left == 0 {
            return Err(OutOfFuel);
        }
        self.fuel_left -= 1;
        Ok(())
    }

    /// Runs `f` on its own budget, leaving the caller's budget untouched.
    fn with_own_budget<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let saved = (self.fuel_left, self.depth);
        self.fuel_left = self.cfg.fuel;
        self.depth = 1;
        let out = f(self);
        (self.fuel_left, self.depth) = saved;
        out
    }

    pub fn push(&mut self, name: Name, class: Class) -> Mark {
        let mut mark = Mark {
            locals: self.locals.len(),
            rules: self.local_rules.len(),
            cc: None,
        };
        self.locals.push((name.clone(), class.clone()));
        self.absorb(&name, &class, &mut mark);
        mark
    }

    pub fn pop(&mut self, mark: Mark) {
        self.locals.truncate(mark.locals);
        self.local_rules.truncate(mark.rules);
        if let Some(cc) = mark.cc {
            self.cc = cc;
        }
    }

    fn record_equation(&mut self, l: &Object, r: &Object, mark: &mut Mark) {
        let (l, r) = self.with_own_budget(|s| {
            let l = s.normalize(l).unwrap_or_else(|_| l.clone());
            let r = s.normalize(r).unwrap_or_else(|_| r.clone());
            (l, r)
        });
        if mark.cc.is_none() {
            mark.cc = Some(self.cc.clone());
        }
        self.cc.merge(&l, &r);
    }

    /// Turns a hypothesis into ground equations or a local rewrite rule.
    fn absorb(&mut self, name: &Name, class: &Class, mark: &mut Mark) {
        match class {
            Class::Sort => {}
            Class::Eq(_, l, r) => self.record_equation(l, r, mark),
            Class::Incl(_) => {
                if self.sig.reflectors.is_empty() {
                    return;
                }
                let k = self
                    .with_own_budget(|s| s.normalize_class(class))
                    .unwrap_or_else(|_| class.clone());
                let mut found = Vec::new();
                for refl in &self.sig.reflectors {
                    if let Some((theta, _)) = Matcher::new(&refl.vars, None).run_class(&refl.premise, &k) {
                        found.push((refl.lhs.subst_many(&theta), refl.rhs.subst_many(&theta)));
                    }
                }
                for (l, r) in found {
                    self.record_equation(&l, &r, mark);
                }
            }
            Class::Pi(..) => {
                if let Extracted::Rule(rule) = extract(name, class) {
                    if rule.kind == RuleKind::Reduction {
                        self.local_rules.push(rule);
                    }
                }
            }
        }
    }
}
