//! Step logs for equality and normalization queries, and a replay
//! checker that re-validates rewrite steps.

use crate::syntax::{Class, Name, Object};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Name under which framework β steps are logged.
pub const BETA: &str = "app-lam";
/// Framework η on Π-classes.
pub const ETA: &str = "lam-app";
pub const UNICITY: &str = "unicity";
pub const REFLECTION: &str = "reflection";

#[derive(Clone, Debug, PartialEq)]
pub enum TraceStep {
    /// One rewrite inside `before`. Binders crossed on the way to the redex
    /// were opened with the names in `opened`, outermost first.
    Rewrite {
        rule: Name,
        path: Vec<u8>,
        opened: Vec<Name>,
        redex: Object,
        contractum: Object,
        before: Object,
        after: Object,
        via_hypothesis: bool,
    },
    /// An equality closed by a rule other than rewriting.
    Judgment {
        rule: Name,
        lhs: Object,
        rhs: Object,
    },
}

impl TraceStep {
    pub fn rule(&self) -> &Name {
        match self {
            TraceStep::Rewrite { rule, .. } | TraceStep::Judgment { rule, .. } => rule,
        }
    }
}

pub struct PathDisplay<'a>(pub &'a [u8]);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Rewrite {
                rule,
                path,
                via_hypothesis,
                ..
            } => {
                write!(f, "{rule} @ {}", PathDisplay(path))?;
                if *via_hypothesis {
                    f.write_str(" (modulo hypotheses)")?;
                }
                Ok(())
            }
            TraceStep::Judgment { rule, lhs, rhs } => write!(f, "{rule}: {lhs} = {rhs}"),
        }
    }
}

/// One line per step.
pub fn trace_render(steps: &[TraceStep]) -> String {
    let mut out = String::new();
    for s in steps {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ReplayError {
    #[error("step {index}: path {path} does not exist in the term")]
    BadPath { index: usize, path: String },
    #[error("step {index}: the term at the path is not the logged redex")]
    RedexMismatch { index: usize },
    #[error("step {index}: `{rule}` does not rewrite the redex to the logged contractum")]
    InvalidContraction { index: usize, rule: Name },
    #[error("step {index}: replacing the redex does not give the logged result")]
    ResultMismatch { index: usize },
    #[error("step {index}: unknown rule `{rule}`")]
    UnknownRule { index: usize, rule: Name },
}

/// Plugs `new` in at `path`, opening binders with `opened`.
pub(crate) fn replace_at(t: &Object, path: &[u8], opened: &[Name], new: &Object) -> Option<(Object, Object)> {
    let Some((&first, rest)) = path.split_first() else {
        return Some((t.clone(), new.clone()));
    };
    match (t, first) {
        (Object::App(f, a), 0) => {
            let (old, f2) = replace_at(f, rest, opened, new)?;
            Some((old, Object::App(Arc::new(f2), a.clone())))
        }
        (Object::App(f, a), 1) => {
            let (old, a2) = replace_at(a, rest, opened, new)?;
            Some((old, Object::App(f.clone(), Arc::new(a2))))
        }
        (Object::LSuc(a), 0) => {
            let (old, a2) = replace_at(a, rest, opened, new)?;
            Some((old, Object::lsuc(a2)))
        }
        (Object::Lam(d, x, b), 0) | (Object::PiSort(d, x, b), 0) => {
            let (old, d2) = replace_in_class(d, rest, opened, new)?;
            let d2 = Arc::new(d2);
            Some((
                old,
                match t {
                    Object::Lam(..) => Object::Lam(d2, x.clone(), b.clone()),
                    _ => Object::PiSort(d2, x.clone(), b.clone()),
                },
            ))
        }
        (Object::Lam(d, x, b), 1) | (Object::PiSort(d, x, b), 1) => {
            let (y, more) = opened.split_first()?;
            let body = b.instantiate(&Object::Var(y.clone()));
            let (old, b2) = replace_at(&body, rest, more, new)?;
            let b2 = Arc::new(b2.abstract_var(y));
            Some((
                old,
                match t {
                    Object::Lam(..) => Object::Lam(d.clone(), x.clone(), b2),
                    _ => Object::PiSort(d.clone(), x.clone(), b2),
                },
            ))
        }
        _ => None,
    }
}

fn replace_in_class(k: &Class, path: &[u8], opened: &[Name], new: &Object) -> Option<(Object, Class)> {
    let (&first, rest) = path.split_first()?;
    match (k, first) {
        (Class::Incl(o), 0) => {
            let (old, o2) = replace_at(o, rest, opened, new)?;
            Some((old, Class::incl(o2)))
        }
        (Class::Pi(d, x, c), 0) => {
            let (old, d2) = replace_in_class(d, rest, opened, new)?;
            Some((old, Class::Pi(Arc::new(d2), x.clone(), c.clone())))
        }
        (Class::Pi(d, x, c), 1) => {
            let (y, more) = opened.split_first()?;
            let body = c.instantiate(&Object::Var(y.clone()));
            let (old, c2) = replace_in_class(&body, rest, more, new)?;
            Some((old, Class::Pi(d.clone(), x.clone(), Arc::new(c2.abstract_var(y)))))
        }
        (Class::Eq(s, l, r), 0) => {
            let (old, s2) = replace_in_class(s, rest, opened, new)?;
            Some((old, Class::Eq(Arc::new(s2), l.clone(), r.clone())))
        }
        (Class::Eq(s, l, r), 1) => {
            let (old, l2) = replace_at(l, rest, opened, new)?;
            Some((old, Class::Eq(s.clone(), Arc::new(l2), r.clone())))
        }
        (Class::Eq(s, l, r), 2) => {
            let (old, r2) = replace_at(r, rest, opened, new)?;
            Some((old, Class::Eq(s.clone(), l.clone(), Arc::new(r2))))
        }
        _ => None,
    }
}
