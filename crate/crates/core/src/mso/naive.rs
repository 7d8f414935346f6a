use std::collections::HashMap;

use super::{check_assignment, Assignment, Formula, SetTerm, Value, VarKind};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Largest ground set on which quantifiers are expanded directly.
pub const NAIVE_MAX: usize = 12;

#[derive(Clone, Copy)]
enum Val {
    Elem(usize),
    Set(u64),
}

struct Naive<'a> {
    m: &'a Matroid,
    env: HashMap<String, Val>,
}

impl Naive<'_> {
    fn elem(&self, x: &str) -> usize {
        match self.env[x] {
            Val::Elem(i) => i,
            Val::Set(_) => unreachable!("kinds are checked when parsing"),
        }
    }

    fn set(&self, s: &SetTerm) -> u64 {
        match s {
            SetTerm::Var(v) => match self.env[v] {
                Val::Set(m) => m,
                Val::Elem(_) => unreachable!("kinds are checked when parsing"),
            },
            SetTerm::Elements(xs) => xs.iter().fold(0, |m, x| m | 1 << self.elem(x)),
            SetTerm::Union(a, b) => self.set(a) | self.set(b),
            SetTerm::Minus(a, b) => self.set(a) & !self.set(b),
        }
    }

    fn eval(&mut self, phi: &Formula) -> bool {
        match phi {
            Formula::ElemEq(a, b) => self.elem(a) == self.elem(b),
            Formula::SetEq(s, t) => self.set(s) == self.set(t),
            Formula::Member(x, s) => self.set(s) >> self.elem(x) & 1 == 1,
            Formula::InClosure(x, s) => self.m.closure_mask(self.set(s)) >> self.elem(x) & 1 == 1,
            Formula::ClosureEq(s, t) => self.m.closure_mask(self.set(s)) == self.m.closure_mask(self.set(t)),
            Formula::Indep(s) => {
                let x = self.set(s);
                self.m.rank_mask(x) == x.count_ones() as usize
            }
            Formula::Not(a) => !self.eval(a),
            Formula::And(a, b) => self.eval(a) && self.eval(b),
            Formula::Or(a, b) => self.eval(a) || self.eval(b),
            Formula::Implies(a, b) => !self.eval(a) || self.eval(b),
            Formula::Iff(a, b) => self.eval(a) == self.eval(b),
            Formula::Exists(v, a) => self.any(v, a, true),
            Formula::Forall(v, a) => !self.any(v, a, false),
        }
    }

    /// Whether some value of `v` makes `a` evaluate to `want`.
    fn any(&mut self, v: &str, a: &Formula, want: bool) -> bool {
        let saved = self.env.get(v).copied();
        let n = self.m.len();
        let values: Box<dyn Iterator<Item = Val>> = match VarKind::of(v) {
            VarKind::Element => Box::new((0..n).map(Val::Elem)),
            VarKind::Set => Box::new((0..1u64 << n).map(Val::Set)),
        };
        let mut found = false;
        for val in values {
            self.env.insert(v.to_string(), val);
            if self.eval(a) == want {
                found = true;
                break;
            }
        }
        match saved {
            Some(s) => self.env.insert(v.to_string(), s),
            None => self.env.remove(v),
        };
        found
    }
}

/// Evaluates `phi` under `q` by expanding every quantifier over `m`.
pub fn eval_naive(m: &Matroid, phi: &Formula, q: &Assignment) -> Result<bool> {
    if m.len() > NAIVE_MAX {
        return Err(Error::resource(format!(
            "naive evaluation expands quantifiers over {} elements; the limit is {NAIVE_MAX}",
            m.len()
        )));
    }
    check_assignment(phi, q, &m.ground_set())?;
    let mut env = HashMap::new();
    for (name, value) in q {
        let val = match value {
            Value::Element(e) => Val::Elem(m.position(*e).unwrap()),
            Value::Set(s) => Val::Set(m.mask_of(s)?),
        };
        env.insert(name.clone(), val);
    }
    Ok(Naive { m, env }.eval(phi))
}
