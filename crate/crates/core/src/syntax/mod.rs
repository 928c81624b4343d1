//! Abstract syntax: classes, objects, and telescopes.

pub mod random;
mod term;

pub use term::{alpha_equal, is_identifier, Binder, Class, Name, Object, Term};

use std::collections::BTreeSet;

/// A single `name : class` declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: Name,
    pub class: Class,
}

impl Decl {
    pub fn new(name: &str, class: Class) -> Self {
        Decl {
            name: Name::new(name),
            class,
        }
    }
}

/// An ordered list of declarations. Used both for signatures and contexts;
/// each class may only mention names declared before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Telescope {
    pub decls: Vec<Decl>,
}

impl Telescope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_decls(decls: Vec<Decl>) -> Self {
        Telescope { decls }
    }

    pub fn push(&mut self, name: &str, class: Class) {
        self.decls.push(Decl::new(name, class));
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Decl> {
        self.decls.iter()
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().rev().find(|d| d.name.as_str() == name)
    }

    pub fn names(&self) -> BTreeSet<Name> {
        self.decls.iter().map(|d| d.name.clone()).collect()
    }

    /// Concatenation `self, other`.
    pub fn concat(&self, other: &Telescope) -> Telescope {
        let mut decls = self.decls.clone();
        decls.extend(other.decls.iter().cloned());
        Telescope { decls }
    }

    /// Substitutes into every class of the telescope.
    pub fn subst(&self, var: &Name, replacement: &Object) -> Telescope {
        Telescope {
            decls: self
                .decls
                .iter()
                .map(|d| Decl {
                    name: d.name.clone(),
                    class: d.class.subst(var, replacement),
                })
                .collect(),
        }
    }
}

impl FromIterator<Decl> for Telescope {
    fn from_iter<I: IntoIterator<Item = Decl>>(iter: I) -> Self {
        Telescope {
            decls: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests;
