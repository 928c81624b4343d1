//! Classes and objects in locally nameless form.
//!
//! Bound variables are de Bruijn indices and binders only carry a display
//! hint, so the derived `PartialEq` is α-equivalence. Free variables
//! (signature constants and context entries) are referred to by name.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for names the surface syntax can spell.
    pub fn is_identifier(&self) -> bool {
        is_identifier(&self.0)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Display hint for a bound variable. Never observed by equality or hashing.
#[derive(Clone)]
pub struct Binder(pub Name);

impl Binder {
    pub fn new(s: &str) -> Self {
        Binder(Name::new(s))
    }

    pub fn name(&self) -> &Name {
        &self.0
    }
}

impl PartialEq for Binder {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Framework objects.
///
/// Domains of abstractions and Π-sorts are stored as classes; the kernel
/// requires them to denote sorts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Object {
    Var(Name),
    Bound(u32),
    Bullet,
    PiSort(Arc<Class>, Binder, Arc<Object>),
    Lam(Arc<Class>, Binder, Arc<Object>),
    App(Arc<Object>, Arc<Object>),
    /// The built-in sort of universe levels.
    Lvl,
    LZero,
    LSuc(Arc<Object>),
}

/// Framework classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Sort,
    Pi(Arc<Class>, Binder, Arc<Class>),
    Eq(Arc<Class>, Arc<Object>, Arc<Object>),
    /// A sort used as a class.
    Incl(Arc<Object>),
}

impl Object {
    pub fn var(name: &str) -> Object {
        Object::Var(Name::new(name))
    }

    pub fn app(f: Object, a: Object) -> Object {
        Object::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Object>>(head: Object, args: I) -> Object {
        args.into_iter().fold(head, Object::app)
    }

    pub fn lsuc(o: Object) -> Object {
        Object::LSuc(Arc::new(o))
    }

    /// Abstraction whose body mentions `var` free; `var` becomes the bound variable.
    pub fn lam(domain: Class, var: &Name, body: &Object) -> Object {
        Object::Lam(
            Arc::new(domain),
            Binder(var.clone()),
            Arc::new(body.abstract_var(var)),
        )
    }

    pub fn pi_sort(domain: Class, var: &Name, body: &Object) -> Object {
        Object::PiSort(
            Arc::new(domain),
            Binder(var.clone()),
            Arc::new(body.abstract_var(var)),
        )
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Object, Vec<&Object>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Object::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn head(&self) -> &Object {
        let mut cur = self;
        while let Object::App(f, _) = cur {
            cur = f;
        }
        cur
    }

    pub fn head_name(&self) -> Option<&Name> {
        match self.head() {
            Object::Var(n) => Some(n),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Object::Var(_) | Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => 1,
            Object::PiSort(d, _, b) | Object::Lam(d, _, b) => 1 + d.size() + b.size(),
            Object::App(f, a) => 1 + f.size() + a.size(),
            Object::LSuc(o) => 1 + o.size(),
        }
    }

    /// Replaces the outermost bound variable of a binder body by `value`.
    pub fn instantiate(&self, value: &Object) -> Object {
        self.replace_bound(0, value).unwrap_or_else(|| self.clone())
    }

    /// Turns free occurrences of `name` into the outermost bound variable.
    pub fn abstract_var(&self, name: &Name) -> Object {
        self.bind_free(name, 0).unwrap_or_else(|| self.clone())
    }

    /// Capture-avoiding substitution of `replacement` for the free variable `var`.
    pub fn subst(&self, var: &Name, replacement: &Object) -> Object {
        let mut f = |n: &Name| (n == var).then(|| replacement.clone());
        self.map_free(&mut f).unwrap_or_else(|| self.clone())
    }

    /// Simultaneous substitution.
    pub fn subst_many(&self, map: &HashMap<Name, Object>) -> Object {
        if map.is_empty() {
            return self.clone();
        }
        let mut f = |n: &Name| map.get(n).cloned();
        self.map_free(&mut f).unwrap_or_else(|| self.clone())
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub fn mentions(&self, var: &Name) -> bool {
        match self {
            Object::Var(n) => n == var,
            Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => false,
            Object::PiSort(d, _, b) | Object::Lam(d, _, b) => d.mentions(var) || b.mentions(var),
            Object::App(f, a) => f.mentions(var) || a.mentions(var),
            Object::LSuc(o) => o.mentions(var),
        }
    }

    /// True when the bound variable with index `idx` (relative to this
    /// term) occurs.
    pub fn references_bound(&self, idx: u32) -> bool {
        match self {
            Object::Bound(i) => *i == idx,
            Object::Var(_) | Object::Bullet | Object::Lvl | Object::LZero => false,
            Object::PiSort(d, _, b) | Object::Lam(d, _, b) => {
                d.references_bound(idx) || b.references_bound(idx + 1)
            }
            Object::App(f, a) => f.references_bound(idx) || a.references_bound(idx),
            Object::LSuc(o) => o.references_bound(idx),
        }
    }

    /// True when some bound index escapes `depth` enclosing binders.
    pub fn has_loose_bound(&self, depth: u32) -> bool {
        match self {
            Object::Bound(i) => *i >= depth,
            Object::Var(_) | Object::Bullet | Object::Lvl | Object::LZero => false,
            Object::PiSort(d, _, b) | Object::Lam(d, _, b) => {
                d.has_loose_bound(depth) || b.has_loose_bound(depth + 1)
            }
            Object::App(f, a) => f.has_loose_bound(depth) || a.has_loose_bound(depth),
            Object::LSuc(o) => o.has_loose_bound(depth),
        }
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Object::Var(n) => {
                out.insert(n.clone());
            }
            Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => {}
            Object::PiSort(d, _, b) | Object::Lam(d, _, b) => {
                d.collect_free(out);
                b.collect_free(out);
            }
            Object::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
            Object::LSuc(o) => o.collect_free(out),
        }
    }

    // The traversals below return `None` when nothing changed so that
    // untouched subtrees stay shared.

    fn replace_bound(&self, depth: u32, value: &Object) -> Option<Object> {
        match self {
            Object::Bound(i) if *i == depth => Some(value.clone()),
            Object::Var(_) | Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => {
                None
            }
            Object::PiSort(d, x, b) => {
                let (d2, b2) = (d.replace_bound(depth, value), b.replace_bound(depth + 1, value));
                rebuild2(d, b, d2, b2, |d, b| Object::PiSort(d, x.clone(), b))
            }
            Object::Lam(d, x, b) => {
                let (d2, b2) = (d.replace_bound(depth, value), b.replace_bound(depth + 1, value));
                rebuild2(d, b, d2, b2, |d, b| Object::Lam(d, x.clone(), b))
            }
            Object::App(f, a) => {
                let (f2, a2) = (f.replace_bound(depth, value), a.replace_bound(depth, value));
                rebuild2(f, a, f2, a2, Object::App)
            }
            Object::LSuc(o) => o.replace_bound(depth, value).map(Object::lsuc),
        }
    }

    fn bind_free(&self, name: &Name, depth: u32) -> Option<Object> {
        match self {
            Object::Var(n) if n == name => Some(Object::Bound(depth)),
            Object::Var(_) | Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => {
                None
            }
            Object::PiSort(d, x, b) => {
                let (d2, b2) = (d.bind_free(name, depth), b.bind_free(name, depth + 1));
                rebuild2(d, b, d2, b2, |d, b| Object::PiSort(d, x.clone(), b))
            }
            Object::Lam(d, x, b) => {
                let (d2, b2) = (d.bind_free(name, depth), b.bind_free(name, depth + 1));
                rebuild2(d, b, d2, b2, |d, b| Object::Lam(d, x.clone(), b))
            }
            Object::App(f, a) => {
                let (f2, a2) = (f.bind_free(name, depth), a.bind_free(name, depth));
                rebuild2(f, a, f2, a2, Object::App)
            }
            Object::LSuc(o) => o.bind_free(name, depth).map(Object::lsuc),
        }
    }

    // Replacements are locally closed, so no index adjustment is needed.
    fn map_free(&self, f: &mut impl FnMut(&Name) -> Option<Object>) -> Option<Object> {
        match self {
            Object::Var(n) => f(n),
            Object::Bound(_) | Object::Bullet | Object::Lvl | Object::LZero => None,
            Object::PiSort(d, x, b) => {
                let (d2, b2) = (d.map_free(f), b.map_free(f));
                rebuild2(d, b, d2, b2, |d, b| Object::PiSort(d, x.clone(), b))
            }
            Object::Lam(d, x, b) => {
                let (d2, b2) = (d.map_free(f), b.map_free(f));
                rebuild2(d, b, d2, b2, |d, b| Object::Lam(d, x.clone(), b))
            }
            Object::App(fun, a) => {
                let (f2, a2) = (fun.map_free(f), a.map_free(f));
                rebuild2(fun, a, f2, a2, Object::App)
            }
            Object::LSuc(o) => o.map_free(f).map(Object::lsuc),
        }
    }
}

impl Class {
    /// A sort viewed as a class. A Π-sort is stored as the Π-class it
    /// denotes, so `Incl` never wraps a `PiSort` when built through here.
    pub fn incl(o: Object) -> Class {
        match o {
            Object::PiSort(d, x, b) => Class::Pi(d, x, Arc::new(Class::incl((*b).clone()))),
            o => Class::Incl(Arc::new(o)),
        }
    }

    pub fn eq(sort: Class, lhs: Object, rhs: Object) -> Class {
        Class::Eq(Arc::new(sort), Arc::new(lhs), Arc::new(rhs))
    }

    pub fn pi(domain: Class, var: &Name, body: &Class) -> Class {
        Class::Pi(
            Arc::new(domain),
            Binder(var.clone()),
            Arc::new(body.abstract_var(var)),
        )
    }

    /// Non-dependent Π.
    pub fn arrow(domain: Class, codomain: Class) -> Class {
        Class::Pi(Arc::new(domain), Binder::new("_"), Arc::new(codomain))
    }

    pub fn size(&self) -> usize {
        match self {
            Class::Sort => 1,
            Class::Pi(d, _, b) => 1 + d.size() + b.size(),
            Class::Eq(s, l, r) => 1 + s.size() + l.size() + r.size(),
            Class::Incl(o) => 1 + o.size(),
        }
    }

    pub fn instantiate(&self, value: &Object) -> Class {
        self.replace_bound(0, value).unwrap_or_else(|| self.clone())
    }

    pub fn abstract_var(&self, name: &Name) -> Class {
        self.bind_free(name, 0).unwrap_or_else(|| self.clone())
    }

    pub fn subst(&self, var: &Name, replacement: &Object) -> Class {
        let mut f = |n: &Name| (n == var).then(|| replacement.clone());
        self.map_free(&mut f).unwrap_or_else(|| self.clone())
    }

    pub fn subst_many(&self, map: &HashMap<Name, Object>) -> Class {
        if map.is_empty() {
            return self.clone();
        }
        let mut f = |n: &Name| map.get(n).cloned();
        self.map_free(&mut f).unwrap_or_else(|| self.clone())
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub fn mentions(&self, var: &Name) -> bool {
        match self {
            Class::Sort => false,
            Class::Pi(d, _, b) => d.mentions(var) || b.mentions(var),
            Class::Eq(s, l, r) => s.mentions(var) || l.mentions(var) || r.mentions(var),
            Class::Incl(o) => o.mentions(var),
        }
    }

    pub fn references_bound(&self, idx: u32) -> bool {
        match self {
            Class::Sort => false,
            Class::Pi(d, _, b) => d.references_bound(idx) || b.references_bound(idx + 1),
            Class::Eq(s, l, r) => {
                s.references_bound(idx) || l.references_bound(idx) || r.references_bound(idx)
            }
            Class::Incl(o) => o.references_bound(idx),
        }
    }

    pub fn has_loose_bound(&self, depth: u32) -> bool {
        match self {
            Class::Sort => false,
            Class::Pi(d, _, b) => d.has_loose_bound(depth) || b.has_loose_bound(depth + 1),
            Class::Eq(s, l, r) => {
                s.has_loose_bound(depth) || l.has_loose_bound(depth) || r.has_loose_bound(depth)
            }
            Class::Incl(o) => o.has_loose_bound(depth),
        }
    }

    /// Number of leading Π binders.
    pub fn pi_arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Class::Pi(_, _, b) = cur {
            n += 1;
            cur = b;
        }
        n
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Class::Sort => {}
            Class::Pi(d, _, b) => {
                d.collect_free(out);
                b.collect_free(out);
            }
            Class::Eq(s, l, r) => {
                s.collect_free(out);
                l.collect_free(out);
                r.collect_free(out);
            }
            Class::Incl(o) => o.collect_free(out),
        }
    }

    fn replace_bound(&self, depth: u32, value: &Object) -> Option<Class> {
        match self {
            Class::Sort => None,
            Class::Pi(d, x, b) => {
                let (d2, b2) = (d.replace_bound(depth, value), b.replace_bound(depth + 1, value));
                rebuild2(d, b, d2, b2, |d, b| Class::Pi(d, x.clone(), b))
            }
            Class::Eq(s, l, r) => rebuild_eq(
                s,
                l,
                r,
                s.replace_bound(depth, value),
                l.replace_bound(depth, value),
                r.replace_bound(depth, value),
            ),
            Class::Incl(o) => o.replace_bound(depth, value).map(Class::incl),
        }
    }

    fn bind_free(&self, name: &Name, depth: u32) -> Option<Class> {
        match self {
            Class::Sort => None,
            Class::Pi(d, x, b) => {
                let (d2, b2) = (d.bind_free(name, depth), b.bind_free(name, depth + 1));
                rebuild2(d, b, d2, b2, |d, b| Class::Pi(d, x.clone(), b))
            }
            Class::Eq(s, l, r) => rebuild_eq(
                s,
                l,
                r,
                s.bind_free(name, depth),
                l.bind_free(name, depth),
                r.bind_free(name, depth),
            ),
            Class::Incl(o) => o.bind_free(name, depth).map(Class::incl),
        }
    }

    fn map_free(&self, f: &mut impl FnMut(&Name) -> Option<Object>) -> Option<Class> {
        match self {
            Class::Sort => None,
            Class::Pi(d, x, b) => {
                let (d2, b2) = (d.map_free(f), b.map_free(f));
                rebuild2(d, b, d2, b2, |d, b| Class::Pi(d, x.clone(), b))
            }
            Class::Eq(s, l, r) => {
                let s2 = s.map_free(f);
                let l2 = l.map_free(f);
                let r2 = r.map_free(f);
                rebuild_eq(s, l, r, s2, l2, r2)
            }
            Class::Incl(o) => o.map_free(f).map(Class::incl),
        }
    }
}

fn rebuild2<A, B, R>(
    a: &Arc<A>,
    b: &Arc<B>,
    a2: Option<A>,
    b2: Option<B>,
    mk: impl FnOnce(Arc<A>, Arc<B>) -> R,
) -> Option<R> {
    if a2.is_none() && b2.is_none() {
        return None;
    }
    let a = a2.map(Arc::new).unwrap_or_else(|| a.clone());
    let b = b2.map(Arc::new).unwrap_or_else(|| b.clone());
    Some(mk(a, b))
}

fn rebuild_eq(
    s: &Arc<Class>,
    l: &Arc<Object>,
    r: &Arc<Object>,
    s2: Option<Class>,
    l2: Option<Object>,
    r2: Option<Object>,
) -> Option<Class> {
    if s2.is_none() && l2.is_none() && r2.is_none() {
        return None;
    }
    Some(Class::Eq(
        s2.map(Arc::new).unwrap_or_else(|| s.clone()),
        l2.map(Arc::new).unwrap_or_else(|| l.clone()),
        r2.map(Arc::new).unwrap_or_else(|| r.clone()),
    ))
}

/// Either syntactic category, for operations defined on both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Object(Object),
    Class(Class),
}

impl Term {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        match self {
            Term::Object(o) => o.free_vars(),
            Term::Class(k) => k.free_vars(),
        }
    }

    pub fn subst(&self, var: &Name, replacement: &Object) -> Term {
        match self {
            Term::Object(o) => Term::Object(o.subst(var, replacement)),
            Term::Class(k) => Term::Class(k.subst(var, replacement)),
        }
    }
}

/// α-equivalence. Binder hints are ignored by `PartialEq`, so this is
/// structural equality.
pub fn alpha_equal(a: &Term, b: &Term) -> bool {
    a == b
}
