//! Bidirectional classification of objects and formation of classes.

use super::scope::{OutOfFuel, Scope};
use super::{KernelError, Side, Verdict};
use crate::syntax::{Class, Name, Object};
use std::sync::Arc;

fn fuel_error(s: &Scope<'_>) -> KernelError {
    KernelError::FuelExhausted {
        steps_used: s.cfg.fuel,
    }
}

impl Scope<'_> {
    fn whnf_class_query(&mut self, k: &Class) -> Result<Class, KernelError> {
        self.query(|s| s.whnf_class(k)).map_err(|OutOfFuel| fuel_error(self))
    }

    pub(crate) fn check_class(&mut self, k: &Class) -> Result<(), KernelError> {
        match k {
            Class::Sort => Ok(()),
            Class::Incl(o) => {
                let found = self.infer(o)?;
                match self.whnf_class_query(&found)? {
                    Class::Sort => Ok(()),
                    _ => Err(KernelError::NotASort { class: k.clone() }),
                }
            }
            Class::Pi(d, x, c) => {
                self.check_sort_domain(d)?;
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d).clone());
                let out = self.check_class(&c.instantiate(&Object::Var(y)));
                self.pop(mark);
                out
            }
            Class::Eq(s, l, r) => {
                self.check_sort_domain(s)?;
                self.check(l, s).map_err(|e| KernelError::EndpointIllTyped {
                    side: Side::Left,
                    source: Box::new(e),
                })?;
                self.check(r, s).map_err(|e| KernelError::EndpointIllTyped {
                    side: Side::Right,
                    source: Box::new(e),
                })
            }
        }
    }

    /// Domains of Π-classes, abstractions, Π-sorts, and equality classes
    /// must denote sorts: an included sort, or a Π over sorts.
    pub(crate) fn check_sort_domain(&mut self, d: &Class) -> Result<(), KernelError> {
        match d {
            Class::Sort | Class::Eq(..) => Err(KernelError::NotASort { class: d.clone() }),
            Class::Incl(_) => self.check_class(d),
            Class::Pi(dd, x, c) => {
                self.check_sort_domain(dd)?;
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**dd).clone());
                let out = self.check_sort_domain(&c.instantiate(&Object::Var(y)));
                self.pop(mark);
                out
            }
        }
    }

    pub(crate) fn infer(&mut self, o: &Object) -> Result<Class, KernelError> {
        match o {
            Object::Var(n) => self
                .lookup(n)
                .cloned()
                .ok_or_else(|| KernelError::UnboundVariable(n.clone())),
            Object::Bound(i) => Err(KernelError::UnboundVariable(Name::new(&format!("#{i}")))),
            Object::Bullet => Err(KernelError::CannotInferBullet),
            Object::Lvl => Ok(Class::Sort),
            Object::LZero => Ok(Class::incl(Object::Lvl)),
            Object::LSuc(a) => {
                let lvl = Class::incl(Object::Lvl);
                self.check(a, &lvl)
                    .map_err(|e| KernelError::ArgumentClassMismatch {
                        arg: (**a).clone(),
                        expected: lvl.clone(),
                        source: Box::new(e),
                    })?;
                Ok(lvl)
            }
            Object::PiSort(d, x, b) => {
                self.check_sort_domain(d)?;
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d).clone());
                let out = self.check(&b.instantiate(&Object::Var(y)), &Class::Sort);
                self.pop(mark);
                out.map(|()| Class::Sort)
            }
            Object::Lam(d, x, b) => {
                self.check_sort_domain(d)?;
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (**d).clone());
                let out = self.infer(&b.instantiate(&Object::Var(y.clone())));
                self.pop(mark);
                let body = out?;
                Ok(Class::Pi(d.clone(), x.clone(), Arc::new(body.abstract_var(&y))))
            }
            Object::App(f, a) => {
                let fk = self.infer(f)?;
                let fk = match fk {
                    Class::Pi(..) => fk,
                    other => self.whnf_class_query(&other)?,
                };
                let Class::Pi(d, _, c) = fk else {
                    return Err(KernelError::NotAFunction {
                        object: (**f).clone(),
                        class: fk,
                    });
                };
                self.check(a, &d).map_err(|e| match e {
                    KernelError::FuelExhausted { .. } => e,
                    e => KernelError::ArgumentClassMismatch {
                        arg: (**a).clone(),
                        expected: (*d).clone(),
                        source: Box::new(e),
                    },
                })?;
                Ok(c.instantiate(a))
            }
        }
    }

    pub(crate) fn check(&mut self, o: &Object, k: &Class) -> Result<(), KernelError> {
        match o {
            Object::Bullet => match self.whnf_class_query(k)? {
                Class::Eq(s, l, r) => match self.equal_objects_query(&l, &r, &s) {
                    Verdict::ProvenEqual => Ok(()),
                    Verdict::NotProven => Err(KernelError::EqualityNotProven {
                        lhs: (*l).clone(),
                        rhs: (*r).clone(),
                    }),
                    Verdict::FuelExhausted { steps_used } => Err(KernelError::FuelExhausted { steps_used }),
                },
                _ => Err(KernelError::CannotInferBullet),
            },
            Object::Lam(d, x, b) => {
                let target = match k {
                    Class::Pi(..) => k.clone(),
                    _ => self.whnf_class_query(k)?,
                };
                let Class::Pi(d2, _, c) = target else {
                    let inferred = self.infer(o)?;
                    return Err(KernelError::ClassMismatch {
                        inferred,
                        expected: k.clone(),
                    });
                };
                self.check_sort_domain(d)?;
                self.require_equal_classes(d, &d2)?;
                let y = self.fresh(x.name());
                let mark = self.push(y.clone(), (*d2).clone());
                let v = Object::Var(y);
                let out = self.check(&b.instantiate(&v), &c.instantiate(&v));
                self.pop(mark);
                out
            }
            // A redex whose body holds `*` has no inferable class; check the
            // contractum instead.
            Object::App(f, a) if matches!(&**f, Object::Lam(..)) => match self.infer(o) {
                Ok(inferred) => self.require_equal_classes(&inferred, k),
                Err(KernelError::CannotInferBullet) => {
                    let Object::Lam(d, _, b) = &**f else { unreachable!() };
                    self.check_sort_domain(d)?;
                    self.check(a, d).map_err(|e| match e {
                        KernelError::FuelExhausted { .. } => e,
                        e => KernelError::ArgumentClassMismatch {
                            arg: (**a).clone(),
                            expected: (**d).clone(),
                            source: Box::new(e),
                        },
                    })?;
                    self.check(&b.instantiate(a), k)
                }
                Err(e) => Err(e),
            },
            _ => {
                let inferred = self.infer(o)?;
                self.require_equal_classes(&inferred, k)
            }
        }
    }

    fn require_equal_classes(&mut self, found: &Class, expected: &Class) -> Result<(), KernelError> {
        match self.equal_classes_query(found, expected) {
            Verdict::ProvenEqual => Ok(()),
            Verdict::NotProven => Err(KernelError::ClassMismatch {
                inferred: found.clone(),
                expected: expected.clone(),
            }),
            Verdict::FuelExhausted { steps_used } => Err(KernelError::FuelExhausted { steps_used }),
        }
    }

    /// Checks declarations in order, extending the scope.
    pub(crate) fn enter_checked(&mut self, name: &Name, k: &Class) -> Result<(), KernelError> {
        if self.is_declared(name) {
            return Err(KernelError::DuplicateName(name.clone()));
        }
        self.check_class(k).map_err(|e| KernelError::IllFormedClass {
            position: name.clone(),
            source: Box::new(e),
        })?;
        // The mark is dropped: the declaration stays for the rest of the query.
        let _ = self.push(name.clone(), k.clone());
        Ok(())
    }
}
