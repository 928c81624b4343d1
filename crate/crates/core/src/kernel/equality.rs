//! Type-directed equality of objects and structural equality of classes.

use super::matching::Matcher;
use super::rules::RuleKind;
use super::scope::{Fuel, OutOfFuel, Scope};
use super::trace::{TraceStep, ETA, REFLECTION, UNICITY};
use super::Verdict;
use crate::syntax::{Class, Name, Object};

impl Scope<'_> {
    fn verdict(&self, r: Fuel<bool>) -> Verdict {
        match r {
            Ok(true) => Verdict::ProvenEqual,
            Ok(false) => Verdict::NotProven,
            Err(OutOfFuel) => Verdict::FuelExhausted {
                steps_used: self.cfg.fuel,
            },
        }
    }

    pub(crate) fn equal_objects_query(&mut self, a: &Object, b: &Object, k: &Class) -> Verdict {
        let r = self.query(|s| s.eq_obj(a, b, k));
        self.verdict(r)
    }

    pub(crate) fn equal_classes_query(&mut self, a: &Class, b: &Class) -> Verdict {
        let r = self.query(|s| s.eq_cls(a, b));
        self.verdict(r)
    }

    fn note(&mut self, rule: &str, lhs: &Object, rhs: &Object) {
        if self.cfg.trace {
            self.trace.push(TraceStep::Judgment {
                rule: Name::new(rule),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
        }
    }

    pub(crate) fn eq_obj(&mut self, a: &Object, b: &Object, k: &Class) -> Fuel<bool> {
        if a == b {
            return Ok(true);
        }
        let k = self.whnf_class(k)?;
        if let Class::Eq(..) = k {
            self.note(UNICITY, a, b);
            return Ok(true);
        }
        let na = self.normalize(a)?;
        let nb = self.normalize(b)?;
        if na == nb {
            return Ok(true);
        }
        if let (Class::Pi(d, x, c), true) = (&k, self.cfg.eta) {
            let y = self.fresh(x.name());
            let mark = self.push(y.clone(), (**d).clone());
            let v = Object::Var(y);
            let out = self.eq_obj(&Object::app(na.clone(), v.clone()), &Object::app(nb.clone(), v.clone()), &c.instantiate(&v));
            self.pop(mark);
            if out? {
                self.note(ETA, &na, &nb);
                return Ok(true);
            }
            return Ok(false);
        }
        self.compare_normal(&na, &nb, &k)
    }

    fn compare_normal(&mut self, a: &Object, b: &Object, k: &Class) -> Fuel<bool> {
        if a == b {
            return Ok(true);
        }
        if !self.cc.is_empty() && self.cc.equiv(a, b) {
            self.note(REFLECTION, a, b);
            return Ok(true);
        }
        if self.cfg.eta {
            if let Some(r) = self.try_expansion(a, b, k)? {
                return Ok(r);
            }
        }
        self.compare_structural(a, b, k)
    }

    /// Applies an η-like signature equation when exactly one side is built
    /// by the constructor on its right side.
    fn try_expansion(&mut self, a: &Object, b: &Object, k: &Class) -> Fuel<Option<bool>> {
        let sig = self.sig;
        let expansions: Vec<_> = sig.rules().iter().filter(|r| r.kind == RuleKind::Expansion).collect();
        if expansions.is_empty() {
            return Ok(None);
        }
        let k = self.normalize_class(k)?;
        for rule in expansions {
            let Some(ctor) = rule.rhs.head_name() else { continue };
            let Object::Var(m) = &rule.lhs else { continue };
            let Some((mut theta, _)) = Matcher::new(&rule.vars, Some(&self.cc)).run_class(&rule.sort, &k) else {
                continue;
            };
            let (built, other) = match (a.head_name() == Some(ctor), b.head_name() == Some(ctor)) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            theta.insert(m.clone(), other.clone());
            let expanded = self.normalize(&rule.rhs.subst_many(&theta))?;
            let out = self.compare_structural(built, &expanded, &k)?;
            if out {
                self.note(rule.name.as_str(), other, built);
            }
            return Ok(Some(out));
        }
        Ok(None)
    }

    fn compare_structural(&mut self, a: &Object, b: &Object, k: &Class) -> Fuel<bool> {
        match (a, b) {
            (Object::PiSort(d1, x, b1), Object::PiSort(d2, _, b2)) => {
                if !self.eq_cls(d1, d2)? {
                    return Ok(false);
                }
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d1).clone());
                let v = Object::Var(y);
                let out = self.eq_obj(&b1.instantiate(&v), &b2.instantiate(&v), &Class::Sort);
                self.pop(mark);
                out
            }
            (Object::Lam(d1, x, b1), Object::Lam(d2, _, b2)) => {
                let Class::Pi(_, _, c) = k else {
                    return Ok(a == b);
                };
                if !self.eq_cls(d1, d2)? {
                    return Ok(false);
                }
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d1).clone());
                let v = Object::Var(y);
                let out = self.eq_obj(&b1.instantiate(&v), &b2.instantiate(&v), &c.instantiate(&v));
                self.pop(mark);
                out
            }
            (Object::LSuc(x), Object::LSuc(y)) => self.eq_obj(x, y, &Class::incl(Object::Lvl)),
            _ => self.compare_spines(a, b),
        }
    }

    /// Neutral terms with the same head: arguments are compared at the
    /// domains of the head's class.
    fn compare_spines(&mut self, a: &Object, b: &Object) -> Fuel<bool> {
        let (ha, args_a) = a.spine();
        let (hb, args_b) = b.spine();
        let (Object::Var(h), Object::Var(h2)) = (ha, hb) else {
            return Ok(false);
        };
        if h != h2 || args_a.len() != args_b.len() {
            return Ok(false);
        }
        let Some(mut kh) = self.lookup(h).cloned() else {
            return Ok(false);
        };
        for (x, y) in args_a.into_iter().zip(args_b) {
            let Class::Pi(d, _, c) = self.whnf_class(&kh)? else {
                return Ok(false);
            };
            if !self.eq_obj(x, y, &d)? {
                return Ok(false);
            }
            kh = c.instantiate(x);
        }
        Ok(true)
    }

    pub(crate) fn eq_cls(&mut self, a: &Class, b: &Class) -> Fuel<bool> {
        if a == b {
            return Ok(true);
        }
        let wa = self.whnf_class(a)?;
        let wb = self.whnf_class(b)?;
        match (&wa, &wb) {
            (Class::Sort, Class::Sort) => Ok(true),
            (Class::Pi(d1, x, c1), Class::Pi(d2, _, c2)) => {
                if !self.eq_cls(d1, d2)? {
                    return Ok(false);
                }
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d1).clone());
                let v = Object::Var(y);
                let out = self.eq_cls(&c1.instantiate(&v), &c2.instantiate(&v));
                self.pop(mark);
                out
            }
            (Class::Eq(s1, l1, r1), Class::Eq(s2, l2, r2)) => {
                Ok(self.eq_cls(s1, s2)? && self.eq_obj(l1, l2, s1)? && self.eq_obj(r1, r2, s1)?)
            }
            (Class::Incl(o1), Class::Incl(o2)) => self.eq_obj(o1, o2, &Class::Sort),
            _ => Ok(false),
        }
    }
}
