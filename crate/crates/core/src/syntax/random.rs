//! Seeded random terms over a small vocabulary. Not necessarily well
//! classed; used for syntactic properties such as print/parse round trips.

use super::{Class, Name, Object};
use rand::seq::SliceRandom;
use rand::Rng;

const FREE: &[&str] = &["x", "y", "f", "nat", "el", "succ", "zero", "tp"];
const BINDERS: &[&str] = &["a", "b", "x", "m'", "h_1"];

/// Object of at most `size` constructors.
pub fn object<R: Rng>(rng: &mut R, size: usize) -> Object {
    gen_object(rng, size.max(1), &mut Vec::new())
}

/// Class of at most `size` constructors.
pub fn class<R: Rng>(rng: &mut R, size: usize) -> Class {
    gen_class(rng, size.max(1), &mut Vec::new())
}

fn leaf<R: Rng>(rng: &mut R, scope: &[Name]) -> Object {
    match rng.gen_range(0..10) {
        0 => Object::Bullet,
        1 => Object::LZero,
        2 => Object::Lvl,
        3..=5 if !scope.is_empty() => Object::Var(scope.choose(rng).unwrap().clone()),
        _ => Object::var(FREE.choose(rng).unwrap()),
    }
}

fn gen_object<R: Rng>(rng: &mut R, size: usize, scope: &mut Vec<Name>) -> Object {
    if size <= 1 {
        return leaf(rng, scope);
    }
    match rng.gen_range(0..8) {
        0..=3 => {
            let left = rng.gen_range(1..size);
            let f = gen_object(rng, left, scope);
            let a = gen_object(rng, (size - left).max(1), scope);
            Object::app(f, a)
        }
        4 => Object::lsuc(gen_object(rng, size - 1, scope)),
        k => {
            let rest = size - 1;
            let dsize = rng.gen_range(1..=rest.max(1));
            let dom = gen_class(rng, dsize, scope);
            let x = Name::new(BINDERS.choose(rng).unwrap());
            scope.push(x.clone());
            let body = gen_object(rng, rest.saturating_sub(dsize).max(1), scope);
            scope.pop();
            if k == 5 {
                Object::pi_sort(dom, &x, &body)
            } else {
                Object::lam(dom, &x, &body)
            }
        }
    }
}

fn gen_class<R: Rng>(rng: &mut R, size: usize, scope: &mut Vec<Name>) -> Class {
    if size <= 1 {
        return if rng.gen_bool(0.5) {
            Class::Sort
        } else {
            Class::incl(leaf(rng, scope))
        };
    }
    match rng.gen_range(0..4) {
        0 | 1 => Class::incl(gen_object(rng, size, scope)),
        2 => {
            let rest = size - 1;
            let dsize = rng.gen_range(1..=rest.max(1));
            let dom = gen_class(rng, dsize, scope);
            let x = Name::new(BINDERS.choose(rng).unwrap());
            scope.push(x.clone());
            let body = gen_class(rng, rest.saturating_sub(dsize).max(1), scope);
            scope.pop();
            Class::pi(dom, &x, &body)
        }
        _ => {
            let third = ((size - 1) / 3).max(1);
            let s = gen_class(rng, third, scope);
            let l = gen_object(rng, third, scope);
            let r = gen_object(rng, third, scope);
            Class::eq(s, l, r)
        }
    }
}
