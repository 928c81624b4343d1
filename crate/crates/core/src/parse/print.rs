use super::lexer::KEYWORDS;
use crate::syntax::{is_identifier, Class, Name, Object, Telescope};
use std::collections::BTreeSet;
use std::fmt;

// Object precedence levels.
const TOP: u8 = 0;
const ARROW_LHS: u8 = 1;
const APP_FUN: u8 = 2;
const ARG: u8 = 3;

pub fn print_object(o: &Object) -> String {
    let mut p = Printer::default();
    p.object(o, TOP);
    p.out
}

pub fn print_class(k: &Class) -> String {
    let mut p = Printer::default();
    p.class(k, TOP);
    p.out
}

/// One `name : class.` line per declaration.
pub fn print_decls(t: &Telescope) -> String {
    let mut out = String::new();
    for d in t.iter() {
        out.push_str(&format!("{} : {}.\n", d.name, print_class(&d.class)));
    }
    out
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_object(self))
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_class(self))
    }
}

#[derive(Default)]
struct Printer {
    out: String,
    /// Names chosen for enclosing binders, innermost last.
    names: Vec<String>,
}

enum Body<'a> {
    Object(&'a Object),
    Class(&'a Class),
}

impl Body<'_> {
    fn free_vars(&self) -> BTreeSet<Name> {
        match self {
            Body::Object(o) => o.free_vars(),
            Body::Class(k) => k.free_vars(),
        }
    }

    fn uses_binder(&self) -> bool {
        match self {
            Body::Object(o) => o.references_bound(0),
            Body::Class(k) => k.references_bound(0),
        }
    }
}

impl Printer {
    fn paren(&mut self, on: bool, f: impl FnOnce(&mut Self)) {
        if on {
            self.out.push('(');
        }
        f(self);
        if on {
            self.out.push(')');
        }
    }

    /// Picks a display name for a binder that neither captures a free name
    /// of the body nor shadows an enclosing binder.
    fn pick_name(&self, hint: &Name, body: &Body<'_>) -> String {
        let base = if is_identifier(hint.as_str()) && !KEYWORDS.contains(&hint.as_str()) {
            hint.as_str().to_string()
        } else {
            "x".to_string()
        };
        let free = body.free_vars();
        let taken = |s: &str| free.iter().any(|n| n.as_str() == s) || self.names.iter().any(|n| n == s);
        if !taken(&base) {
            return base;
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !taken(c))
            .unwrap()
    }

    fn binder(&mut self, open: char, close: char, hint: &Name, dom: &Class, body: Body<'_>) {
        let name = self.pick_name(hint, &body);
        self.out.push(open);
        self.out.push_str(&name);
        self.out.push_str(" : ");
        self.class(dom, TOP);
        self.out.push(close);
        self.out.push(' ');
        self.names.push(name);
        match body {
            Body::Object(o) => self.object(o, TOP),
            Body::Class(k) => self.class(k, TOP),
        }
        self.names.pop();
    }

    fn arrow(&mut self, dom: &Class, body: Body<'_>) {
        self.class(dom, ARROW_LHS);
        self.out.push_str(" -> ");
        // The binder is unused but still occupies an index.
        self.names.push("_".to_string());
        match body {
            Body::Object(o) => self.object(o, TOP),
            Body::Class(k) => self.class(k, TOP),
        }
        self.names.pop();
    }

    fn class(&mut self, k: &Class, prec: u8) {
        match k {
            Class::Sort => self.out.push_str("Sort"),
            Class::Pi(d, x, b) => self.paren(prec > TOP, |p| {
                let body = Body::Class(b);
                if body.uses_binder() {
                    p.binder('{', '}', x.name(), d, body);
                } else {
                    p.arrow(d, body);
                }
            }),
            Class::Eq(s, l, r) => {
                self.out.push_str("Eq(");
                self.class(s, TOP);
                self.out.push_str("; ");
                self.object(l, TOP);
                self.out.push_str("; ");
                self.object(r, TOP);
                self.out.push(')');
            }
            Class::Incl(o) => self.object(o, prec),
        }
    }

    fn object(&mut self, o: &Object, prec: u8) {
        match o {
            Object::Var(n) => self.out.push_str(n.as_str()),
            Object::Bound(i) => {
                let i = *i as usize;
                match self.names.len().checked_sub(i + 1) {
                    Some(j) => {
                        let name = self.names[j].clone();
                        self.out.push_str(&name);
                    }
                    None => self.out.push_str(&format!("#{i}")),
                }
            }
            Object::Bullet => self.out.push('*'),
            Object::Lvl => self.out.push_str("Lvl"),
            Object::LZero => self.out.push_str("lzero"),
            Object::LSuc(a) => self.paren(prec > APP_FUN, |p| {
                p.out.push_str("lsuc ");
                p.object(a, ARG);
            }),
            Object::App(f, a) => self.paren(prec > APP_FUN, |p| {
                p.object(f, APP_FUN);
                p.out.push(' ');
                p.object(a, ARG);
            }),
            Object::Lam(d, x, b) => self.paren(prec > TOP, |p| {
                p.binder('[', ']', x.name(), d, Body::Object(b));
            }),
            Object::PiSort(d, x, b) => self.paren(prec > TOP, |p| {
                let body = Body::Object(b);
                if body.uses_binder() {
                    p.binder('{', '}', x.name(), d, body);
                } else {
                    p.arrow(d, body);
                }
            }),
        }
    }
}
