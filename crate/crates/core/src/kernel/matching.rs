//! Higher-order pattern matching of rule left sides against terms.
//!
//! Terms handed to the matcher are locally closed. Inside the pattern,
//! binders are entered without opening, so a loose index in a subterm
//! refers to a binder of the pattern itself.

use super::ground::GroundEqStore;
use crate::syntax::{Binder, Class, Name, Object};
use std::collections::HashMap;
use std::sync::Arc;

pub(crate) type Subst = HashMap<Name, Object>;

struct Pending {
    var: Name,
    arity: usize,
    body: Object,
}

pub(crate) struct Matcher<'a> {
    vars: &'a [(Name, Class)],
    cc: Option<&'a GroundEqStore>,
    theta: Subst,
    pending: Vec<Pending>,
    pub used_hypothesis: bool,
}

impl<'a> Matcher<'a> {
    pub fn new(vars: &'a [(Name, Class)], cc: Option<&'a GroundEqStore>) -> Self {
        let cc = cc.filter(|c| !c.is_empty());
        Matcher {
            vars,
            cc,
            theta: HashMap::new(),
            pending: Vec::new(),
            used_hypothesis: false,
        }
    }

    fn is_var(&self, n: &Name) -> bool {
        self.vars.iter().any(|(v, _)| v == n)
    }

    /// Matches a whole left side; returns the substitution on success.
    pub fn run(mut self, pattern: &Object, term: &Object) -> Option<(Subst, bool)> {
        if !self.object(pattern, term, 0) {
            return None;
        }
        self.finish()?;
        Some((self.theta, self.used_hypothesis))
    }

    pub fn run_class(mut self, pattern: &Class, term: &Class) -> Option<(Subst, bool)> {
        if !self.class(pattern, term, 0) {
            return None;
        }
        self.finish()?;
        Some((self.theta, self.used_hypothesis))
    }

    fn same(&self, a: &Object, b: &Object) -> bool {
        a == b || self.cc.is_some_and(|cc| cc.equiv(a, b))
    }

    fn bind(&mut self, v: &Name, value: Object) -> bool {
        match self.theta.get(v) {
            Some(old) => self.same(old, &value),
            None => {
                self.theta.insert(v.clone(), value);
                true
            }
        }
    }

    fn object(&mut self, p: &Object, t: &Object, depth: u32) -> bool {
        let (ph, pargs) = p.spine();
        if let Object::Var(v) = ph {
            if self.is_var(v) {
                return if pargs.is_empty() {
                    !t.has_loose_bound(0) && self.bind(v, t.clone())
                } else {
                    self.higher_order(v, &pargs, t, depth)
                };
            }
        }
        let snapshot = (self.theta.clone(), self.pending.len());
        if self.rigid(p, t, depth) {
            return true;
        }
        // Retry against terms the hypotheses identify with `t`.
        if let Some(cc) = self.cc {
            if !t.has_loose_bound(0) {
                for m in cc.members(t) {
                    self.theta = snapshot.0.clone();
                    self.pending.truncate(snapshot.1);
                    if self.rigid(p, &m, depth) {
                        self.used_hypothesis = true;
                        return true;
                    }
                }
            }
        }
        self.theta = snapshot.0;
        self.pending.truncate(snapshot.1);
        false
    }

    fn rigid(&mut self, p: &Object, t: &Object, depth: u32) -> bool {
        match (p, t) {
            (Object::Var(a), Object::Var(b)) => a == b,
            (Object::Bound(i), Object::Bound(j)) => i == j,
            (Object::Bullet, Object::Bullet)
            | (Object::Lvl, Object::Lvl)
            | (Object::LZero, Object::LZero) => true,
            (Object::LSuc(a), Object::LSuc(b)) => self.object(a, b, depth),
            (Object::App(f1, a1), Object::App(f2, a2)) => {
                self.object(f1, f2, depth) && self.object(a1, a2, depth)
            }
            (Object::Lam(d1, _, b1), Object::Lam(d2, _, b2))
            | (Object::PiSort(d1, _, b1), Object::PiSort(d2, _, b2)) => {
                self.class(d1, d2, depth) && self.object(b1, b2, depth + 1)
            }
            _ => false,
        }
    }

    fn class(&mut self, p: &Class, k: &Class, depth: u32) -> bool {
        match (p, k) {
            (Class::Sort, Class::Sort) => true,
            (Class::Incl(a), Class::Incl(b)) => self.object(a, b, depth),
            (Class::Pi(d1, _, c1), Class::Pi(d2, _, c2)) => {
                self.class(d1, d2, depth) && self.class(c1, c2, depth + 1)
            }
            (Class::Eq(s1, l1, r1), Class::Eq(s2, l2, r2)) => {
                self.class(s1, s2, depth) && self.object(l1, l2, depth) && self.object(r1, r2, depth)
            }
            _ => false,
        }
    }

    /// `v b1 .. bk` against `t`: abstracts `t` over the pattern binders `bi`.
    fn higher_order(&mut self, v: &Name, args: &[&Object], t: &Object, depth: u32) -> bool {
        let mut idxs = Vec::with_capacity(args.len());
        for a in args {
            match a {
                Object::Bound(i) if *i < depth && !idxs.contains(i) => idxs.push(*i),
                _ => return false,
            }
        }
        let k = idxs.len() as u32;
        let map = |j: u32| {
            idxs.iter()
                .position(|&i| i == j)
                .map(|p| k - 1 - p as u32)
        };
        let Some(body) = remap_object(t, 0, &map) else {
            return false;
        };
        self.pending.push(Pending {
            var: v.clone(),
            arity: idxs.len(),
            body,
        });
        true
    }

    /// Wraps pending higher-order bodies in abstractions whose domains come
    /// from the variables' declared classes.
    fn finish(&mut self) -> Option<()> {
        let mut pending = std::mem::take(&mut self.pending);
        let order = |n: &Name| self.vars.iter().position(|(v, _)| v == n);
        pending.sort_by_key(|p| order(&p.var));
        for p in pending {
            let class = &self.vars[order(&p.var)?].1;
            let mut doms: Vec<(Class, Binder)> = Vec::new();
            let mut cur = class;
            for _ in 0..p.arity {
                let Class::Pi(d, x, c) = cur else {
                    return None;
                };
                doms.push(((**d).clone(), x.clone()));
                cur = c;
            }
            let mut value = p.body;
            for (d, x) in doms.into_iter().rev() {
                let d = d.subst_many(&self.theta);
                if d.free_vars().iter().any(|n| self.is_var(n)) {
                    return None;
                }
                value = Object::Lam(Arc::new(d), x, Arc::new(value));
            }
            if !self.bind(&p.var, eta_contract(value)) {
                return None;
            }
        }
        Some(())
    }
}

/// `[x] f x` to `f` when `x` is not free in `f`, repeatedly.
fn eta_contract(t: Object) -> Object {
    let mut cur = t;
    loop {
        let Object::Lam(_, _, body) = &cur else { return cur };
        let Object::App(f, a) = &**body else { return cur };
        if !matches!(**a, Object::Bound(0)) || f.references_bound(0) {
            return cur;
        }
        let Some(f) = remap_object(f, 0, &|i| i.checked_sub(1)) else {
            return cur;
        };
        cur = f;
    }
}

/// Rewrites loose indices of `t` (seen from `cut` enclosing binders inside
/// the term) through `map`; fails when an index has no image.
fn remap_object(t: &Object, cut: u32, map: &dyn Fn(u32) -> Option<u32>) -> Option<Object> {
    Some(match t {
        Object::Bound(i) if *i < cut => t.clone(),
        Object::Bound(i) => Object::Bound(map(i - cut)? + cut),
        Object::Var(_) | Object::Bullet | Object::Lvl | Object::LZero => t.clone(),
        Object::LSuc(a) => Object::lsuc(remap_object(a, cut, map)?),
        Object::App(f, a) => Object::app(remap_object(f, cut, map)?, remap_object(a, cut, map)?),
        Object::Lam(d, x, b) => Object::Lam(
            Arc::new(remap_class(d, cut, map)?),
            x.clone(),
            Arc::new(remap_object(b, cut + 1, map)?),
        ),
        Object::PiSort(d, x, b) => Object::PiSort(
            Arc::new(remap_class(d, cut, map)?),
            x.clone(),
            Arc::new(remap_object(b, cut + 1, map)?),
        ),
    })
}

fn remap_class(k: &Class, cut: u32, map: &dyn Fn(u32) -> Option<u32>) -> Option<Class> {
    Some(match k {
        Class::Sort => Class::Sort,
        Class::Incl(o) => Class::Incl(Arc::new(remap_object(o, cut, map)?)),
        Class::Pi(d, x, c) => Class::Pi(
            Arc::new(remap_class(d, cut, map)?),
            x.clone(),
            Arc::new(remap_class(c, cut + 1, map)?),
        ),
        Class::Eq(s, l, r) => Class::Eq(
            Arc::new(remap_class(s, cut, map)?),
            Arc::new(remap_object(l, cut, map)?),
            Arc::new(remap_object(r, cut, map)?),
        ),
    })
}
