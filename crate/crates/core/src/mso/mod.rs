//! Monadic second-order logic over matroids.
//!
//! Variables whose name starts with an uppercase letter range over subsets of
//! the ground set; all other variables range over elements. Formulas are
//! checked either by direct expansion on a matroid ([`eval_naive`]) or by a
//! single bottom-up pass over an amalgam decomposition ([`eval_decomposition`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};

mod compiled;
mod naive;
mod parser;

pub use compiled::{
    eval_decomposition, eval_decomposition_with_budget, membership_trace, msom, reachable_state_counts, Compiled,
    Verdict, DEFAULT_BUDGET,
};
pub use naive::{eval_naive, NAIVE_MAX};
pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Element,
    Set,
}

impl VarKind {
    pub fn of(name: &str) -> VarKind {
        match name.chars().find(|c| c.is_alphabetic()) {
            Some(c) if c.is_uppercase() => VarKind::Set,
            _ => VarKind::Element,
        }
    }
}

/// A set-valued expression built from set variables and singletons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetTerm {
    Var(String),
    /// `{x, y, ...}`; the empty list is the empty set.
    Elements(Vec<String>),
    Union(Box<SetTerm>, Box<SetTerm>),
    Minus(Box<SetTerm>, Box<SetTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    ElemEq(String, String),
    SetEq(SetTerm, SetTerm),
    Member(String, SetTerm),
    /// `x ∈ cl(S)`.
    InClosure(String, SetTerm),
    /// `cl(S) = cl(T)`.
    ClosureEq(SetTerm, SetTerm),
    Indep(SetTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl SetTerm {
    pub fn var(name: &str) -> SetTerm {
        SetTerm::Var(name.to_string())
    }

    pub fn single(name: &str) -> SetTerm {
        SetTerm::Elements(vec![name.to_string()])
    }

    pub fn union(self, other: SetTerm) -> SetTerm {
        SetTerm::Union(Box::new(self), Box::new(other))
    }

    pub fn minus(self, other: SetTerm) -> SetTerm {
        SetTerm::Minus(Box::new(self), Box::new(other))
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            SetTerm::Var(v) => out.push(v.clone()),
            SetTerm::Elements(xs) => out.extend(xs.iter().cloned()),
            SetTerm::Union(a, b) | SetTerm::Minus(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    /// Every variable name occurring in the formula, bound or free.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = Vec::new();
        self.visit_vars(&mut |v| out.push(v.to_string()));
        out.into_iter().collect()
    }

    fn visit_vars(&self, f: &mut dyn FnMut(&str)) {
        let mut terms = Vec::new();
        match self {
            Formula::ElemEq(a, b) => terms.extend([a.clone(), b.clone()]),
            Formula::SetEq(s, t) | Formula::ClosureEq(s, t) => {
                s.collect_vars(&mut terms);
                t.collect_vars(&mut terms);
            }
            Formula::Member(x, s) | Formula::InClosure(x, s) => {
                terms.push(x.clone());
                s.collect_vars(&mut terms);
            }
            Formula::Indep(s) => s.collect_vars(&mut terms),
            Formula::Not(a) => a.visit_vars(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                f(v);
                a.visit_vars(f);
            }
        }
        for t in &terms {
            f(t);
        }
    }

    /// Free variables with their kinds, in order of name.
    pub fn free_variables(&self) -> BTreeMap<String, VarKind> {
        fn walk(phi: &Formula, bound: &mut Vec<String>, out: &mut BTreeMap<String, VarKind>) {
            match phi {
                Formula::Exists(v, a) | Formula::Forall(v, a) => {
                    bound.push(v.clone());
                    walk(a, bound, out);
                    bound.pop();
                }
                Formula::Not(a) => walk(a, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                atom => {
                    let mut names = Vec::new();
                    atom.visit_vars(&mut |v| names.push(v.to_string()));
                    for n in names {
                        if !bound.contains(&n) {
                            let kind = VarKind::of(&n);
                            out.insert(n, kind);
                        }
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Replaces every `indep(S)` by `¬∃e (e ∈ S ∧ cl(S) = cl(S ∖ {e}))`.
    pub fn desugar_indep(&self) -> Formula {
        let mut names = self.variables();
        self.desugar_with(&mut names)
    }

    fn desugar_with(&self, names: &mut BTreeSet<String>) -> Formula {
        let rec = |a: &Formula, names: &mut BTreeSet<String>| Box::new(a.desugar_with(names));
        match self {
            Formula::Indep(s) => {
                let e = fresh_name(names, "e");
                let body = Formula::Member(e.clone(), s.clone())
                    .and(Formula::ClosureEq(s.clone(), s.clone().minus(SetTerm::single(&e))));
                Formula::exists(&e, body).not()
            }
            Formula::Not(a) => Formula::Not(rec(a, names)),
            Formula::And(a, b) => Formula::And(rec(a, names), rec(b, names)),
            Formula::Or(a, b) => Formula::Or(rec(a, names), rec(b, names)),
            Formula::Implies(a, b) => Formula::Implies(rec(a, names), rec(b, names)),
            Formula::Iff(a, b) => Formula::Iff(rec(a, names), rec(b, names)),
            Formula::Exists(v, a) => Formula::Exists(v.clone(), rec(a, names)),
            Formula::Forall(v, a) => Formula::Forall(v.clone(), rec(a, names)),
            atom => atom.clone(),
        }
    }
}

/// A name with the given lowercase stem that does not occur in `used`; it is
/// recorded as used.
pub(crate) fn fresh_name(used: &mut BTreeSet<String>, stem: &str) -> String {
    let name = (1..).map(|i| format!("{stem}{i}")).find(|n| !used.contains(n)).unwrap();
    used.insert(name.clone());
    name
}

/// `H` is a circuit: dependent, and every proper subset obtained by removing
/// one element is independent.
pub fn is_circuit(h: &SetTerm, used: &mut BTreeSet<String>) -> Formula {
    let e = fresh_name(used, "e");
    let each = Formula::Member(e.clone(), h.clone()).implies(Formula::Indep(h.clone().minus(SetTerm::single(&e))));
    Formula::Indep(h.clone()).not().and(Formula::forall(&e, each))
}

/// `H` is a base: independent, and no element outside it can be added
/// while staying independent.
pub fn is_base(h: &SetTerm, used: &mut BTreeSet<String>) -> Formula {
    let e = fresh_name(used, "e");
    let grow = Formula::Member(e.clone(), h.clone()).not().and(Formula::Indep(h.clone().union(SetTerm::single(&e))));
    Formula::Indep(h.clone()).and(Formula::exists(&e, grow).not())
}

impl fmt::Display for SetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetTerm::Var(v) => write!(f, "{v}"),
            SetTerm::Elements(xs) => write!(f, "{{{}}}", xs.join(", ")),
            SetTerm::Union(a, b) => write!(f, "{a} + {}", Paren(b)),
            SetTerm::Minus(a, b) => write!(f, "{a} \\ {}", Paren(b)),
        }
    }
}

/// Right operands of set operators are parenthesised when compound.
struct Paren<'a>(&'a SetTerm);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SetTerm::Union(..) | SetTerm::Minus(..) => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

fn precedence(phi: &Formula) -> u8 {
    match phi {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) | Formula::Iff(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if precedence(phi) < min {
        write!(f, "(")?;
        write_formula(f, phi)?;
        write!(f, ")")
    } else {
        write_formula(f, phi)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula) -> fmt::Result {
    match phi {
        Formula::ElemEq(a, b) => write!(f, "{a} = {b}"),
        Formula::SetEq(s, t) => write!(f, "{s} = {t}"),
        Formula::Member(x, s) => write!(f, "{x} in {s}"),
        Formula::InClosure(x, s) => write!(f, "{x} in cl({s})"),
        Formula::ClosureEq(s, t) => write!(f, "cl({s}) = cl({t})"),
        Formula::Indep(s) => write!(f, "indep({s})"),
        Formula::Not(a) => {
            write!(f, "!")?;
            write_at(f, a, 4)
        }
        Formula::And(a, b) => {
            write_at(f, a, 3)?;
            write!(f, " & ")?;
            write_at(f, b, 4)
        }
        Formula::Or(a, b) => {
            write_at(f, a, 2)?;
            write!(f, " | ")?;
            write_at(f, b, 3)
        }
        Formula::Implies(a, b) => {
            write_at(f, a, 2)?;
            write!(f, " -> ")?;
            write_at(f, b, 1)
        }
        Formula::Iff(a, b) => {
            write_at(f, a, 2)?;
            write!(f, " <-> ")?;
            write_at(f, b, 2)
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            let q = if matches!(phi, Formula::Exists(..)) { "exists" } else { "forall" };
            match **a {
                Formula::Exists(..) | Formula::Forall(..) => write!(f, "{q} {v} ")?,
                _ => write!(f, "{q} {v} : ")?,
            }
            write_formula(f, a)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

/// The value given to a free variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Element(ElementId),
    Set(ElementSet),
}

/// Values for the free variables of a formula, keyed by variable name.
pub type Assignment = BTreeMap<String, Value>;

/// Parses `{"X1": [1, 2], "x1": 3}`.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    Ok(serde_json::from_str(text)?)
}

/// Checks that `q` gives every free variable of `phi` a value of the right
/// kind drawn from `ground`, and nothing else.
pub(crate) fn check_assignment(phi: &Formula, q: &Assignment, ground: &ElementSet) -> Result<()> {
    let free = phi.free_variables();
    for (name, kind) in &free {
        match (q.get(name), kind) {
            (None, _) => return Err(Error::domain(format!("free variable `{name}` has no value"))),
            (Some(Value::Element(e)), VarKind::Element) => {
                if !ground.contains(e) {
                    return Err(Error::domain(format!("`{name}` = {e} is not an element of the matroid")));
                }
            }
            (Some(Value::Set(s)), VarKind::Set) => {
                if let Some(e) = s.iter().find(|e| !ground.contains(e)) {
                    return Err(Error::domain(format!("`{name}` contains {e}, which is not an element of the matroid")));
                }
            }
            (Some(_), VarKind::Element) => return Err(Error::Kind(format!("`{name}` is an element variable but was given a set"))),
            (Some(_), VarKind::Set) => return Err(Error::Kind(format!("`{name}` is a set variable but was given an element"))),
        }
    }
    if let Some(extra) = q.keys().find(|k| !free.contains_key(*k)) {
        return Err(Error::domain(format!("`{extra}` is not a free variable of the formula")));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
