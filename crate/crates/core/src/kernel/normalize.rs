//! Leftmost-outermost rewriting with framework β and signature rules.

use super::matching::Matcher;
use super::rules::RewriteRule;
use super::scope::{Fuel, Scope};
use super::trace::{TraceStep, BETA};
use crate::syntax::{Class, Name, Object};
use std::sync::Arc;

/// Where a step happened and what it replaced.
pub(crate) struct Redex {
    pub rule: Name,
    pub path: Vec<u8>,
    pub opened: Vec<Name>,
    pub before: Object,
    pub after: Object,
    pub via_hypothesis: bool,
}

pub(crate) fn beta_name() -> Name {
    Name::new(BETA)
}

impl Scope<'_> {
    fn candidate_rules(&self, head: &Name, len: usize) -> Vec<&RewriteRule> {
        let mut out: Vec<&RewriteRule> = self.sig.reductions_for(head, len).collect();
        out.extend(
            self.local_rules
                .iter()
                .filter(|r| r.head().is_some_and(|(h, n)| h == head && n == len)),
        );
        out
    }

    /// Contracts `t` itself if it is a redex.
    pub(crate) fn contract(&self, t: &Object) -> Option<(Object, Name, bool)> {
        if let Object::App(f, a) = t {
            if let Object::Lam(_, _, body) = &**f {
                return Some((body.instantiate(a), beta_name(), false));
            }
        }
        let (head, args) = t.spine();
        let Object::Var(h) = head else {
            return None;
        };
        for rule in self.candidate_rules(h, args.len()) {
            let m = Matcher::new(&rule.vars, Some(&self.cc));
            if let Some((theta, via)) = m.run(&rule.lhs, t) {
                return Some((rule.rhs.subst_many(&theta), rule.name.clone(), via));
            }
        }
        None
    }

    fn step_object(&mut self, t: &Object, path: &mut Vec<u8>, opened: &mut Vec<Name>) -> Option<(Object, Redex)> {
        if let Some((after, rule, via)) = self.contract(t) {
            let redex = Redex {
                rule,
                path: path.clone(),
                opened: opened.clone(),
                before: t.clone(),
                after: after.clone(),
                via_hypothesis: via,
            };
            return Some((after, redex));
        }
        match t {
            Object::App(f, a) => {
                path.push(0);
                if let Some((f2, r)) = self.step_object(f, path, opened) {
                    path.pop();
                    return Some((Object::App(Arc::new(f2), a.clone()), r));
                }
                *path.last_mut().unwrap() = 1;
                let out = self
                    .step_object(a, path, opened)
                    .map(|(a2, r)| (Object::App(f.clone(), Arc::new(a2)), r));
                path.pop();
                out
            }
            Object::LSuc(a) => {
                path.push(0);
                let out = self.step_object(a, path, opened).map(|(a2, r)| (Object::lsuc(a2), r));
                path.pop();
                out
            }
            Object::Lam(d, x, b) | Object::PiSort(d, x, b) => {
                let is_lam = matches!(t, Object::Lam(..));
                let rebuild = |d: Arc<Class>, b: Arc<Object>| {
                    if is_lam {
                        Object::Lam(d, x.clone(), b)
                    } else {
                        Object::PiSort(d, x.clone(), b)
                    }
                };
                path.push(0);
                if let Some((d2, r)) = self.step_class(d, path, opened) {
                    path.pop();
                    return Some((rebuild(Arc::new(d2), b.clone()), r));
                }
                *path.last_mut().unwrap() = 1;
                let y = self.fresh(x.name());
                opened.push(y.clone());
                let out = self
                    .step_object(&b.instantiate(&Object::Var(y.clone())), path, opened)
                    .map(|(b2, r)| (rebuild(d.clone(), Arc::new(b2.abstract_var(&y))), r));
                opened.pop();
                path.pop();
                out
            }
            Object::Var(_) | Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => None,
        }
    }

    fn step_class(&mut self, k: &Class, path: &mut Vec<u8>, opened: &mut Vec<Name>) -> Option<(Class, Redex)> {
        match k {
            Class::Sort => None,
            Class::Incl(o) => {
                path.push(0);
                let out = self.step_object(o, path, opened).map(|(o2, r)| (Class::incl(o2), r));
                path.pop();
                out
            }
            Class::Pi(d, x, c) => {
                path.push(0);
                if let Some((d2, r)) = self.step_class(d, path, opened) {
                    path.pop();
                    return Some((Class::Pi(Arc::new(d2), x.clone(), c.clone()), r));
                }
                *path.last_mut().unwrap() = 1;
                let y = self.fresh(x.name());
                opened.push(y.clone());
                let out = self
                    .step_class(&c.instantiate(&Object::Var(y.clone())), path, opened)
                    .map(|(c2, r)| (Class::Pi(d.clone(), x.clone(), Arc::new(c2.abstract_var(&y))), r));
                opened.pop();
                path.pop();
                out
            }
            Class::Eq(s, l, r) => {
                path.push(0);
                if let Some((s2, red)) = self.step_class(s, path, opened) {
                    path.pop();
                    return Some((Class::Eq(Arc::new(s2), l.clone(), r.clone()), red));
                }
                *path.last_mut().unwrap() = 1;
                if let Some((l2, red)) = self.step_object(l, path, opened) {
                    path.pop();
                    return Some((Class::Eq(s.clone(), Arc::new(l2), r.clone()), red));
                }
                *path.last_mut().unwrap() = 2;
                let out = self
                    .step_object(r, path, opened)
                    .map(|(r2, red)| (Class::Eq(s.clone(), l.clone(), Arc::new(r2)), red));
                path.pop();
                out
            }
        }
    }

    fn record(&mut self, redex: Redex, whole_before: Object, whole_after: Object) {
        if self.cfg.trace {
            self.trace.push(TraceStep::Rewrite {
                rule: redex.rule,
                path: redex.path,
                opened: redex.opened,
                redex: redex.before,
                contractum: redex.after,
                before: whole_before,
                after: whole_after,
                via_hypothesis: redex.via_hypothesis,
            });
        }
    }

    /// Full normal form, one fuel unit per step.
    pub(crate) fn normalize(&mut self, t: &Object) -> Fuel<Object> {
        let mut cur = t.clone();
        loop {
            let Some((next, redex)) = self.step_object(&cur, &mut Vec::new(), &mut Vec::new()) else {
                return Ok(cur);
            };
            self.tick()?;
            self.record(redex, cur, next.clone());
            cur = next;
        }
    }

    /// Normalizes every object inside a class.
    pub(crate) fn normalize_class(&mut self, k: &Class) -> Fuel<Class> {
        Ok(match k {
            Class::Sort => Class::Sort,
            Class::Incl(o) => Class::incl(self.normalize(o)?),
            Class::Pi(d, x, c) => {
                let d = self.normalize_class(d)?;
                let y = self.fresh(x.name());
                let c = self.normalize_class(&c.instantiate(&Object::Var(y.clone())))?;
                Class::Pi(Arc::new(d), x.clone(), Arc::new(c.abstract_var(&y)))
            }
            Class::Eq(s, l, r) => Class::eq(self.normalize_class(s)?, self.normalize(l)?, self.normalize(r)?),
        })
    }

    /// Weak head normal form: contracts head redexes, including redexes
    /// formed by a prefix of the spine.
    pub(crate) fn whnf(&mut self, t: &Object) -> Fuel<Object> {
        let mut cur = t.clone();
        'outer: loop {
            let spine_len = cur.spine().1.len();
            // Outermost first, matching the order used by `normalize`.
            for k in 0..=spine_len {
                let mut prefix = &cur;
                for _ in 0..k {
                    let Object::App(f, _) = prefix else { unreachable!() };
                    prefix = f;
                }
                if let Some((after, rule, via)) = self.contract(prefix) {
                    self.tick()?;
                    let path = vec![0u8; k];
                    let next = replace_prefix(&cur, k, after.clone());
                    let redex = Redex {
                        rule,
                        path,
                        opened: Vec::new(),
                        before: prefix.clone(),
                        after,
                        via_hypothesis: via,
                    };
                    self.record(redex, cur.clone(), next.clone());
                    cur = next;
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// Exposes the head constructor of a class, unfolding included Π-sorts.
    pub(crate) fn whnf_class(&mut self, k: &Class) -> Fuel<Class> {
        match k {
            Class::Incl(o) => Ok(Class::incl(self.whnf(o)?)),
            _ => Ok(k.clone()),
        }
    }
}

/// Replaces the function part `k` applications deep.
fn replace_prefix(t: &Object, k: usize, new: Object) -> Object {
    if k == 0 {
        return new;
    }
    match t {
        Object::App(f, a) => Object::App(Arc::new(replace_prefix(f, k - 1, new)), a.clone()),
        _ => unreachable!("prefix depth exceeds spine"),
    }
}
