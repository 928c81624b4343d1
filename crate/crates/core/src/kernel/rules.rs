//! Oriented equations read off declarations whose class ends in an
//! equality class.

use crate::syntax::{Class, Name, Object, Telescope};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// Used left to right during normalization.
    Reduction,
    /// Left side is a bare variable; applied type-directed during
    /// equality checking only.
    Expansion,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Reduction => "reduction",
            RuleKind::Expansion => "expansion",
        })
    }
}

/// Pattern variables are free variables of the rule whose names start
/// with `?`; the surface syntax cannot spell them, so they never clash
/// with declared names.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub name: Name,
    pub vars: Vec<(Name, Class)>,
    /// The class at which the equation holds.
    pub sort: Class,
    pub lhs: Object,
    pub rhs: Object,
    pub kind: RuleKind,
}

impl RewriteRule {
    pub fn is_var(&self, n: &Name) -> bool {
        self.vars.iter().any(|(v, _)| v == n)
    }

    pub fn var_class(&self, n: &Name) -> Option<&Class> {
        self.vars.iter().find(|(v, _)| v == n).map(|(_, k)| k)
    }

    /// Head constant and spine length of the left side.
    pub fn head(&self) -> Option<(&Name, usize)> {
        let (h, args) = self.lhs.spine();
        match h {
            Object::Var(n) if !self.is_var(n) => Some((n, args.len())),
            _ => None,
        }
    }
}

/// A declaration `{Δ} {p : P} Eq(S; l; r)` with `p` unused in the
/// equation: any hypothesis whose class matches `P` yields `l = r`.
#[derive(Clone, Debug)]
pub struct Reflector {
    pub name: Name,
    pub vars: Vec<(Name, Class)>,
    pub premise: Class,
    pub lhs: Object,
    pub rhs: Object,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleWarning {
    pub name: Name,
    pub reason: String,
}

impl fmt::Display for RuleWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.reason)
    }
}

#[derive(Clone, Debug)]
pub enum Extracted {
    Rule(RewriteRule),
    Reflector(Reflector),
    /// The class does not end in an equality class.
    NotAnEquation,
    Rejected(RuleWarning),
}

/// Opens the Π-telescope of `class` with pattern variable names.
fn open_telescope(class: &Class) -> (Vec<(Name, Class)>, Class) {
    let mut vars = Vec::new();
    let mut cur = class.clone();
    while let Class::Pi(d, x, body) = &cur {
        let name = Name::new(&format!("?{}{}", vars.len(), x.name()));
        vars.push((name.clone(), (**d).clone()));
        cur = body.instantiate(&Object::Var(name));
    }
    (vars, cur)
}

fn pattern_vars_in(free: &BTreeSet<Name>, vars: &[(Name, Class)]) -> BTreeSet<Name> {
    vars.iter()
        .filter(|(v, _)| free.contains(v))
        .map(|(v, _)| v.clone())
        .collect()
}

/// Checks the higher-order pattern condition: the head is not a pattern
/// variable and pattern variables are applied only to distinct variables
/// bound inside the left side.
fn is_miller_pattern(lhs: &Object, vars: &[(Name, Class)]) -> Result<(), String> {
    let is_var = |n: &Name| vars.iter().any(|(v, _)| v == n);
    match lhs.head() {
        Object::Var(n) if !is_var(n) => {}
        Object::Var(n) => return Err(format!("left side is headed by pattern variable {n}")),
        _ => return Err("left side is not headed by a constant".into()),
    }
    fn walk(o: &Object, depth: u32, is_var: &dyn Fn(&Name) -> bool) -> Result<(), String> {
        let (head, args) = o.spine();
        if let Object::Var(n) = head {
            if is_var(n) && !args.is_empty() {
                let mut seen = BTreeSet::new();
                for a in &args {
                    match a {
                        Object::Bound(i) if *i < depth && seen.insert(*i) => {}
                        _ => {
                            return Err(format!(
                                "pattern variable {n} is applied to something other than distinct bound variables"
                            ))
                        }
                    }
                }
                return Ok(());
            }
        }
        match o {
            Object::App(f, a) => {
                walk(f, depth, is_var)?;
                walk(a, depth, is_var)
            }
            Object::Lam(d, _, b) | Object::PiSort(d, _, b) => {
                walk_class(d, depth, is_var)?;
                walk(b, depth + 1, is_var)
            }
            Object::LSuc(a) => walk(a, depth, is_var),
            _ => Ok(()),
        }
    }
    fn walk_class(k: &Class, depth: u32, is_var: &dyn Fn(&Name) -> bool) -> Result<(), String> {
        match k {
            Class::Sort => Ok(()),
            Class::Incl(o) => walk(o, depth, is_var),
            Class::Pi(d, _, b) => {
                walk_class(d, depth, is_var)?;
                walk_class(b, depth + 1, is_var)
            }
            Class::Eq(s, l, r) => {
                walk_class(s, depth, is_var)?;
                walk(l, depth, is_var)?;
                walk(r, depth, is_var)
            }
        }
    }
    walk(lhs, 0, &is_var)
}

/// Classifies one declaration.
pub fn extract(name: &Name, class: &Class) -> Extracted {
    let (vars, body) = open_telescope(class);
    let Class::Eq(sort, lhs, rhs) = &body else {
        return Extracted::NotAnEquation;
    };
    let (sort, lhs, rhs) = ((**sort).clone(), (**lhs).clone(), (**rhs).clone());
    let reject = |reason: String| {
        Extracted::Rejected(RuleWarning {
            name: name.clone(),
            reason,
        })
    };

    let lhs_vars = pattern_vars_in(&lhs.free_vars(), &vars);
    let mut needed = rhs.free_vars();
    needed.extend(sort.free_vars());
    let needed = pattern_vars_in(&needed, &vars);

    if let Object::Var(v) = &lhs {
        if vars.iter().any(|(n, _)| n == v) {
            // Bare variable on the left: η-like when the rest of the
            // equation is determined by the variable and its class.
            let mut bound = sort.free_vars();
            bound.insert(v.clone());
            if vars.iter().all(|(n, _)| bound.contains(n)) {
                return Extracted::Rule(RewriteRule {
                    name: name.clone(),
                    vars,
                    sort,
                    lhs,
                    rhs,
                    kind: RuleKind::Expansion,
                });
            }
            if let Some(r) = as_reflector(name, &vars, &lhs, &rhs) {
                return Extracted::Reflector(r);
            }
            return reject("left side is a bare variable and the remaining variables are not determined by the equation's class".into());
        }
    }

    if let Err(reason) = is_miller_pattern(&lhs, &vars) {
        if let Some(r) = as_reflector(name, &vars, &lhs, &rhs) {
            return Extracted::Reflector(r);
        }
        return reject(reason);
    }
    if !needed.is_subset(&lhs_vars) {
        if let Some(r) = as_reflector(name, &vars, &lhs, &rhs) {
            return Extracted::Reflector(r);
        }
        let missing: Vec<_> = needed.difference(&lhs_vars).map(|n| n.to_string()).collect();
        return reject(format!(
            "variables {} do not occur on the left side",
            missing.join(", ")
        ));
    }
    Extracted::Rule(RewriteRule {
        name: name.clone(),
        vars,
        sort,
        lhs,
        rhs,
        kind: RuleKind::Reduction,
    })
}

fn as_reflector(
    name: &Name,
    vars: &[(Name, Class)],
    lhs: &Object,
    rhs: &Object,
) -> Option<Reflector> {
    let ((proof, premise), rest) = vars.split_last()?;
    if lhs.mentions(proof) || rhs.mentions(proof) || !matches!(premise, Class::Incl(_)) {
        return None;
    }
    // Matching the premise must determine both sides.
    let bound = premise.free_vars();
    let mut needed = lhs.free_vars();
    needed.extend(rhs.free_vars());
    if rest
        .iter()
        .any(|(v, _)| needed.contains(v) && !bound.contains(v))
    {
        return None;
    }
    Some(Reflector {
        name: name.clone(),
        vars: rest.to_vec(),
        premise: premise.clone(),
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    })
}

/// Result of scanning a whole signature.
#[derive(Clone, Debug, Default)]
pub struct Extraction {
    pub rules: Vec<RewriteRule>,
    pub reflectors: Vec<Reflector>,
    pub warnings: Vec<RuleWarning>,
}

impl Extraction {
    pub fn count(&self, kind: RuleKind) -> usize {
        self.rules.iter().filter(|r| r.kind == kind).count()
    }
}

pub fn extract_rules(sig: &Telescope) -> Extraction {
    let mut out = Extraction::default();
    for d in sig.iter() {
        match extract(&d.name, &d.class) {
            Extracted::Rule(r) => out.rules.push(r),
            Extracted::Reflector(r) => out.reflectors.push(r),
            Extracted::NotAnEquation => {}
            Extracted::Rejected(w) => out.warnings.push(w),
        }
    }
    out
}
