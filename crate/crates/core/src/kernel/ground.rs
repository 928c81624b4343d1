//! Congruence closure over ground equations taken from hypotheses.
//!
//! Terms are interned by α-canonical structure. Application and `lsuc`
//! nodes participate in congruence; binders are opaque leaves.

use crate::syntax::Object;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    App(usize, usize),
    Suc(usize),
}

/// Congruence-class view of a term that may not be interned.
#[derive(PartialEq, Eq)]
enum Key {
    Class(usize),
    App(Box<Key>, Box<Key>),
    Suc(Box<Key>),
    Leaf(Object),
}

#[derive(Clone, Debug, Default)]
pub struct GroundEqStore {
    terms: Vec<Object>,
    nodes: Vec<Node>,
    parent: Vec<usize>,
    ids: HashMap<Object, usize>,
    /// Canonical signatures of compound nodes after the last closure.
    sigs: HashMap<Node, usize>,
}

impl GroundEqStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn find_compress(&mut self, i: usize) -> usize {
        let root = self.find(i);
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Interns `t` and its applicative subterms.
    pub fn add(&mut self, t: &Object) -> usize {
        let before = self.terms.len();
        let id = self.intern(t);
        // New nodes may be congruent to existing ones.
        if self.terms.len() != before {
            self.close();
        }
        id
    }

    fn intern(&mut self, t: &Object) -> usize {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let node = match t {
            Object::App(f, a) => {
                let f = self.intern(f);
                let a = self.intern(a);
                Node::App(f, a)
            }
            Object::LSuc(a) => Node::Suc(self.intern(a)),
            _ => Node::Leaf,
        };
        let id = self.terms.len();
        self.terms.push(t.clone());
        self.nodes.push(node);
        self.parent.push(id);
        self.ids.insert(t.clone(), id);
        id
    }

    /// Records `a = b`.
    pub fn merge(&mut self, a: &Object, b: &Object) {
        let (a, b) = (self.add(a), self.add(b));
        self.union(a, b);
        self.close();
    }

    /// Class of `t` without interning it: known terms directly, compound
    /// terms through the congruence table.
    fn lookup(&self, t: &Object) -> Option<usize> {
        if let Some(&id) = self.ids.get(t) {
            return Some(self.find(id));
        }
        let sig = match t {
            Object::App(f, a) => Node::App(self.lookup(f)?, self.lookup(a)?),
            Object::LSuc(a) => Node::Suc(self.lookup(a)?),
            _ => return None,
        };
        self.sigs.get(&sig).map(|&i| self.find(i))
    }

    fn key(&self, t: &Object) -> Key {
        if let Some(&id) = self.ids.get(t) {
            return Key::Class(self.find(id));
        }
        match t {
            Object::App(f, a) => {
                let (kf, ka) = (self.key(f), self.key(a));
                if let (Key::Class(x), Key::Class(y)) = (&kf, &ka) {
                    if let Some(&i) = self.sigs.get(&Node::App(*x, *y)) {
                        return Key::Class(self.find(i));
                    }
                }
                Key::App(Box::new(kf), Box::new(ka))
            }
            Object::LSuc(a) => {
                let ka = self.key(a);
                if let Key::Class(x) = ka {
                    if let Some(&i) = self.sigs.get(&Node::Suc(x)) {
                        return Key::Class(self.find(i));
                    }
                }
                Key::Suc(Box::new(ka))
            }
            other => Key::Leaf(other.clone()),
        }
    }

    /// Decides `a = b` in the closure without modifying the store.
    pub fn equiv(&self, a: &Object, b: &Object) -> bool {
        a == b || self.key(a) == self.key(b)
    }

    /// Other known terms equal to `t`.
    pub fn members(&self, t: &Object) -> Vec<Object> {
        let Some(root) = self.lookup(t) else {
            return Vec::new();
        };
        (0..self.terms.len())
            .filter(|&j| self.find(j) == root && self.terms[j] != *t)
            .map(|j| self.terms[j].clone())
            .collect()
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find_compress(a), self.find_compress(b));
        if ra == rb {
            return false;
        }
        // Keep the older node as representative for stable member order.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Naive congruence closure: merge nodes with equal signatures until
    /// nothing changes. Stores stay small, so quadratic work is fine.
    fn close(&mut self) {
        loop {
            let mut table: HashMap<Node, usize> = HashMap::new();
            let mut merges = Vec::new();
            for i in 0..self.nodes.len() {
                let sig = match self.nodes[i] {
                    Node::Leaf => continue,
                    Node::App(f, a) => Node::App(self.find(f), self.find(a)),
                    Node::Suc(a) => Node::Suc(self.find(a)),
                };
                match table.get(&sig) {
                    Some(&j) => merges.push((i, j)),
                    None => {
                        table.insert(sig, i);
                    }
                }
            }
            let mut changed = false;
            for (i, j) in merges {
                changed |= self.union(i, j);
            }
            if !changed {
                self.sigs = table;
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Object {
        Object::var(s)
    }

    #[test]
    fn congruence_over_applications() {
        let mut cc = GroundEqStore::new();
        cc.merge(&v("x"), &v("zero"));
        let fx = Object::app(v("f"), v("x"));
        let fz = Object::app(v("f"), v("zero"));
        assert!(cc.equiv(&fx, &fz));
        assert!(!cc.equiv(&fx, &v("x")));
        // Neither side was interned; congruence still applies.
        let gfx = Object::app(v("g"), fx.clone());
        let gfz = Object::app(v("g"), fz);
        assert!(cc.equiv(&gfx, &gfz));
        assert!(!cc.equiv(&gfx, &Object::app(v("g"), v("x"))));
        assert_eq!(cc.len(), 2);
    }

    #[test]
    fn transitivity_and_symmetry() {
        let mut cc = GroundEqStore::new();
        cc.merge(&v("a"), &v("b"));
        cc.merge(&v("c"), &v("b"));
        assert!(cc.equiv(&v("a"), &v("c")));
        assert!(cc.equiv(&v("c"), &v("a")));
    }

    #[test]
    fn members_lists_class() {
        let mut cc = GroundEqStore::new();
        cc.merge(&v("x"), &v("zero"));
        assert_eq!(cc.members(&v("x")), vec![v("zero")]);
        assert!(cc.members(&v("unknown")).is_empty());
    }

    #[test]
    fn lsuc_is_congruent() {
        let mut cc = GroundEqStore::new();
        cc.merge(&v("i"), &Object::LZero);
        assert!(cc.equiv(&Object::lsuc(v("i")), &Object::lsuc(Object::LZero)));
    }
}
