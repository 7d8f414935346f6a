//! Bottom-up evaluation of MSO formulas over nice amalgam decompositions.
//!
//! Each subformula has a state at every node summarising the part of an
//! assignment that lives in the subtree. Atoms keep either a decided truth
//! value or the signatures of the sets they talk about, disjunction pairs
//! states, negation reuses the state of its operand, and a quantifier block
//! keeps the set of states reachable over all guesses for its variables
//! together with which element variables have been placed. Guesses are only
//! made on fresh elements that survive to the root.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{check_assignment, Assignment, Formula, SetTerm, Value, VarKind};
use crate::decomposition::{AmalgamDecomposition, NodeId};
use crate::element::{bits, submasks, ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::types::{frames, NodeFrame, Signature};

/// Default bound on the number of states one quantifier block may produce at one node.
pub const DEFAULT_BUDGET: usize = 1_000_000;

type VarId = usize;

#[derive(Clone, Debug)]
enum Term {
    Var(VarId),
    Elements(Vec<VarId>),
    Union(Box<Term>, Box<Term>),
    Minus(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug)]
enum Atom {
    Member(VarId, Term),
    SetEq(Term, Term),
    /// `cl(A) = cl(B)`.
    Closure(Term, Term),
}

#[derive(Clone, Debug)]
enum Core {
    Atom(Atom),
    Or(Box<Core>, Box<Core>),
    Not(Box<Core>),
    Exists { id: usize, vars: Vec<VarId>, body: Box<Core>, text: String },
}

fn negate(c: Core) -> Core {
    match c {
        Core::Not(inner) => *inner,
        c => Core::Not(Box::new(c)),
    }
}

fn or(a: Core, b: Core) -> Core {
    Core::Or(Box::new(a), Box::new(b))
}

fn and(a: Core, b: Core) -> Core {
    negate(or(negate(a), negate(b)))
}

/// The per-node summary of one subformula under one partial assignment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum State {
    /// Undecided until the element variable is placed.
    Member(Option<bool>),
    /// Whether the two sets agree on the subtree.
    SetEq(bool),
    /// Signatures of `A`, `B` and `A ∪ B` with `r(A ∪ B) − r(A)` and `r(A ∪ B) − r(B)`.
    /// A difference above the boundary size can never return to zero and is dropped.
    Closure { a: Signature, b: Signature, ab: Signature, d1: Option<u32>, d2: Option<u32> },
    Or(Box<State>, Box<State>),
    /// Reachable `(placed element variables, body state)` pairs.
    Exists(BTreeSet<(u64, State)>),
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Member(None) => write!(f, "0"),
            State::Member(Some(true)) => write!(f, "ACCEPT"),
            State::Member(Some(false)) => write!(f, "REJECT"),
            State::SetEq(b) => write!(f, "{}", if *b { "EQUAL" } else { "DIFFERENT" }),
            State::Closure { d1, d2, .. } => {
                let show = |d: &Option<u32>| d.map_or("+".to_string(), |d| d.to_string());
                write!(f, "cl[{},{}]", show(d1), show(d2))
            }
            State::Or(a, b) => write!(f, "({a}, {b})"),
            State::Exists(s) => write!(f, "{{{} states}}", s.len()),
        }
    }
}

/// Answer of the model-checking problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "ACCEPT",
            Verdict::Reject => "REJECT",
        })
    }
}

/// A formula lowered to atoms, disjunction, negation and quantifier blocks.
/// Immutable once built; one instance can evaluate many decompositions.
#[derive(Clone, Debug)]
pub struct Compiled {
    vars: Vec<(String, VarKind)>,
    free: BTreeMap<String, VarId>,
    core: Core,
    blocks: usize,
    /// Variables each block reads from outside itself.
    outer: Vec<Vec<VarId>>,
    source: Formula,
}

struct Lowering {
    vars: Vec<(String, VarKind)>,
    scope: Vec<(String, VarId)>,
    blocks: usize,
}

impl Lowering {
    fn lookup(&self, name: &str) -> VarId {
        self.scope.iter().rev().find(|(n, _)| n == name).map(|&(_, id)| id).expect("free variables are declared first")
    }

    fn term(&self, s: &SetTerm) -> Term {
        match s {
            SetTerm::Var(v) => Term::Var(self.lookup(v)),
            SetTerm::Elements(xs) => Term::Elements(xs.iter().map(|x| self.lookup(x)).collect()),
            SetTerm::Union(a, b) => Term::Union(Box::new(self.term(a)), Box::new(self.term(b))),
            SetTerm::Minus(a, b) => Term::Minus(Box::new(self.term(a)), Box::new(self.term(b))),
        }
    }

    fn bind(&mut self, name: &str) -> VarId {
        let id = self.vars.len();
        self.vars.push((name.to_string(), VarKind::of(name)));
        self.scope.push((name.to_string(), id));
        id
    }

    fn exists(&mut self, name: &str, body: &Formula, text: String) -> Core {
        let id = self.bind(name);
        let inner = self.lower(body);
        self.scope.pop();
        match inner {
            Core::Exists { id: block, mut vars, body, .. } => {
                vars.insert(0, id);
                Core::Exists { id: block, vars, body, text }
            }
            inner => {
                self.blocks += 1;
                Core::Exists { id: self.blocks - 1, vars: vec![id], body: Box::new(inner), text }
            }
        }
    }

    fn lower(&mut self, phi: &Formula) -> Core {
        match phi {
            Formula::ElemEq(a, b) => Core::Atom(Atom::Member(self.lookup(a), Term::Elements(vec![self.lookup(b)]))),
            Formula::SetEq(s, t) => Core::Atom(Atom::SetEq(self.term(s), self.term(t))),
            Formula::Member(x, s) => Core::Atom(Atom::Member(self.lookup(x), self.term(s))),
            Formula::InClosure(x, s) => {
                let s = self.term(s);
                let sx = Term::Union(Box::new(s.clone()), Box::new(Term::Elements(vec![self.lookup(x)])));
                Core::Atom(Atom::Closure(sx, s))
            }
            Formula::ClosureEq(s, t) => Core::Atom(Atom::Closure(self.term(s), self.term(t))),
            Formula::Indep(_) => unreachable!("independence is rewritten before lowering"),
            Formula::Not(a) => negate(self.lower(a)),
            Formula::Or(a, b) => or(self.lower(a), self.lower(b)),
            Formula::And(a, b) => and(self.lower(a), self.lower(b)),
            Formula::Implies(a, b) => or(negate(self.lower(a)), self.lower(b)),
            Formula::Iff(a, b) => {
                let (a, b) = (self.lower(a), self.lower(b));
                or(and(a.clone(), b.clone()), and(negate(a), negate(b)))
            }
            Formula::Exists(v, a) => self.exists(v, a, phi.to_string()),
            Formula::Forall(v, a) => {
                let text = phi.to_string();
                negate(self.exists(v, &a.clone().not(), text))
            }
        }
    }
}

/// Values of variables on the fresh elements of the current node, as `K` positions.
struct Local {
    sets: Vec<u64>,
    elems: Vec<Option<usize>>,
    /// Fresh elements that are not deleted at any ancestor.
    live: u64,
}

impl Local {
    fn term(&self, t: &Term) -> u64 {
        match t {
            Term::Var(v) => self.sets[*v],
            Term::Elements(xs) => xs.iter().filter_map(|x| self.elems[*x]).fold(0, |m, i| m | 1 << i),
            Term::Union(a, b) => self.term(a) | self.term(b),
            Term::Minus(a, b) => self.term(a) & !self.term(b),
        }
    }
}

struct Budget<'a> {
    limit: usize,
    texts: &'a [String],
}

type Sid = u32;
type SigId = u32;

/// A hash-consed state; children are arena ids, so equal states share one id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Member(Option<bool>),
    SetEq(bool),
    Closure { a: SigId, b: SigId, ab: SigId, d1: Option<u32>, d2: Option<u32> },
    Or(Sid, Sid),
    Exists(Box<[(u64, Sid)]>),
}

/// Interned states and signatures of one run.
#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    node_ids: HashMap<Node, Sid>,
    sigs: Vec<Signature>,
    sig_ids: HashMap<Signature, SigId>,
}

impl Arena {
    fn state(&mut self, n: Node) -> Sid {
        if let Some(&id) = self.node_ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Sid;
        self.nodes.push(n.clone());
        self.node_ids.insert(n, id);
        id
    }

    fn signature(&mut self, s: Signature) -> SigId {
        if let Some(&id) = self.sig_ids.get(&s) {
            return id;
        }
        let id = self.sigs.len() as SigId;
        self.sigs.push(s.clone());
        self.sig_ids.insert(s, id);
        id
    }

    fn get(&self, id: Sid) -> &Node {
        &self.nodes[id as usize]
    }

    fn materialize(&self, id: Sid) -> State {
        match self.get(id) {
            Node::Member(m) => State::Member(*m),
            Node::SetEq(b) => State::SetEq(*b),
            Node::Closure { a, b, ab, d1, d2 } => State::Closure {
                a: self.sigs[*a as usize].clone(),
                b: self.sigs[*b as usize].clone(),
                ab: self.sigs[*ab as usize].clone(),
                d1: *d1,
                d2: *d2,
            },
            Node::Or(a, b) => State::Or(Box::new(self.materialize(*a)), Box::new(self.materialize(*b))),
            Node::Exists(set) => State::Exists(set.iter().map(|&(p, s)| (p, self.materialize(s))).collect()),
        }
    }
}

type CombineKey = (Option<(SigId, SigId)>, u64);
type BlockKey = (usize, Option<(Sid, Sid)>, Vec<(u64, Option<usize>)>);

/// Everything the evaluation of one node needs.
struct Ctx<'a> {
    frame: &'a NodeFrame,
    local: Local,
    arena: &'a mut Arena,
    budget: &'a Budget<'a>,
    blocks: HashMap<BlockKey, Sid>,
    combined: HashMap<CombineKey, (SigId, isize)>,
}

impl Ctx<'_> {
    fn combine(&mut self, pick: Option<(SigId, SigId)>, m: u64) -> (SigId, isize) {
        if let Some(&known) = self.combined.get(&(pick, m)) {
            return known;
        }
        let sigs = &self.arena.sigs;
        let (sig, r) = self
            .frame
            .combine(pick.map(|(a, b)| (&sigs[a as usize], &sigs[b as usize])), m)
            .expect("guesses avoid deleted elements");
        let id = self.arena.signature(sig);
        self.combined.insert((pick, m), (id, r));
        (id, r)
    }
}

fn shape_error() -> ! {
    unreachable!("states follow the shape of the formula")
}

struct Run {
    accepted: bool,
    states: Vec<(NodeId, State)>,
}

impl Compiled {
    pub fn new(phi: &Formula) -> Result<Self> {
        let source = phi.desugar_indep();
        let mut lowering = Lowering { vars: Vec::new(), scope: Vec::new(), blocks: 0 };
        let mut free = BTreeMap::new();
        for name in source.free_variables().keys() {
            free.insert(name.clone(), lowering.bind(name));
        }
        let core = lowering.lower(&source);
        let mut outer = vec![Vec::new(); lowering.blocks];
        outer_variables(&core, &mut outer);
        Ok(Compiled { vars: lowering.vars, free, core, blocks: lowering.blocks, outer, source })
    }

    /// The formula after rewriting `indep`.
    pub fn source(&self) -> &Formula {
        &self.source
    }

    pub fn evaluate(&self, t: &AmalgamDecomposition, q: &Assignment, budget: usize) -> Result<bool> {
        Ok(self.run(t, q, budget, false)?.accepted)
    }

    /// Like [`Compiled::evaluate`], also returning the formula's state at each node in processing order.
    pub fn trace(&self, t: &AmalgamDecomposition, q: &Assignment, budget: usize) -> Result<(bool, Vec<(NodeId, State)>)> {
        let run = self.run(t, q, budget, true)?;
        Ok((run.accepted, run.states))
    }

    fn run(&self, t: &AmalgamDecomposition, q: &Assignment, budget: usize, record: bool) -> Result<Run> {
        let report = t.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        let nice;
        let t = if t.is_nice() {
            t
        } else {
            nice = t.to_nice()?;
            &nice
        };
        let ground = t.grounds().remove(&t.root()).unwrap_or_default();
        check_assignment(&self.source, q, &ground)?;
        let frames = frames(t)?;
        let texts = self.block_texts();
        let budget = Budget { limit: budget, texts: &texts };
        let mut arena = Arena::default();
        let mut done: HashMap<NodeId, Sid> = HashMap::new();
        let mut states = Vec::new();
        for v in t.postorder() {
            let frame = &frames[&v];
            let node = t.node(v)?;
            let kids = if node.is_leaf() {
                None
            } else {
                Some((done.remove(&node.children[0]).unwrap(), done.remove(&node.children[1]).unwrap()))
            };
            let mut cx = Ctx {
                frame,
                local: self.constants(frame, q, &ground),
                arena: &mut arena,
                budget: &budget,
                blocks: HashMap::new(),
                combined: HashMap::new(),
            };
            let state = self.step(&self.core, kids, &mut cx)?;
            if record {
                states.push((v, arena.materialize(state)));
            }
            done.insert(v, state);
        }
        let root = done.remove(&t.root()).unwrap();
        Ok(Run { accepted: self.accept(&self.core, root, &arena), states })
    }

    fn block_texts(&self) -> Vec<String> {
        fn walk(c: &Core, out: &mut Vec<String>) {
            match c {
                Core::Atom(_) => {}
                Core::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Core::Not(a) => walk(a, out),
                Core::Exists { id, body, text, .. } => {
                    out[*id] = text.clone();
                    walk(body, out);
                }
            }
        }
        let mut out = vec![String::new(); self.blocks];
        walk(&self.core, &mut out);
        out
    }

    fn constants(&self, frame: &NodeFrame, q: &Assignment, ground: &ElementSet) -> Local {
        let live = frame.k_mask(ground) & frame.fresh;
        let mut local = Local { sets: vec![0; self.vars.len()], elems: vec![None; self.vars.len()], live };
        let k = frame.glue_matroid();
        for (name, &id) in &self.free {
            match &q[name] {
                Value::Set(s) => local.sets[id] = frame.k_mask(s) & frame.fresh,
                Value::Element(e) => {
                    local.elems[id] = k.position(*e).filter(|&i| frame.fresh >> i & 1 == 1);
                }
            }
        }
        local
    }

    fn step(&self, core: &Core, kids: Option<(Sid, Sid)>, cx: &mut Ctx) -> Result<Sid> {
        match core {
            Core::Atom(atom) => Ok(self.atom(atom, kids, cx)),
            Core::Or(a, b) => {
                let (ka, kb) = match kids {
                    None => (None, None),
                    Some((x, y)) => match (cx.arena.get(x), cx.arena.get(y)) {
                        (&Node::Or(a1, b1), &Node::Or(a2, b2)) => (Some((a1, a2)), Some((b1, b2))),
                        _ => shape_error(),
                    },
                };
                let sa = self.step(a, ka, cx)?;
                let sb = self.step(b, kb, cx)?;
                Ok(cx.arena.state(Node::Or(sa, sb)))
            }
            Core::Not(a) => self.step(a, kids, cx),
            Core::Exists { id, vars, body, .. } => {
                let key = (*id, kids, self.outer[*id].iter().map(|&v| (cx.local.sets[v], cx.local.elems[v])).collect());
                if let Some(&known) = cx.blocks.get(&key) {
                    return Ok(known);
                }
                let mut out = BTreeSet::new();
                match kids {
                    None => self.guess(vars, 0, 0, body, None, cx, &mut out)?,
                    Some((x, y)) => {
                        let (Node::Exists(s1), Node::Exists(s2)) = (cx.arena.get(x).clone(), cx.arena.get(y).clone()) else {
                            shape_error()
                        };
                        for &(m1, a) in s1.iter() {
                            for &(m2, b) in s2.iter() {
                                if m1 & m2 == 0 {
                                    self.guess(vars, 0, m1 | m2, body, Some((a, b)), cx, &mut out)?;
                                }
                            }
                        }
                    }
                }
                if out.len() > cx.budget.limit {
                    return Err(Error::resource(format!(
                        "more than {} states at node {} for subformula `{}`",
                        cx.budget.limit, cx.frame.node, cx.budget.texts[*id]
                    )));
                }
                let state = cx.arena.state(Node::Exists(out.into_iter().collect()));
                cx.blocks.insert(key, state);
                Ok(state)
            }
        }
    }

    /// Enumerates the fresh part of every variable of a block from position `i`
    /// on; `placed` marks element variables already placed below.
    #[allow(clippy::too_many_arguments)]
    fn guess(
        &self,
        vars: &[VarId],
        i: usize,
        placed: u64,
        body: &Core,
        kids: Option<(Sid, Sid)>,
        cx: &mut Ctx,
        out: &mut BTreeSet<(u64, Sid)>,
    ) -> Result<()> {
        let Some(&v) = vars.get(i) else {
            out.insert((placed, self.step(body, kids, cx)?));
            return Ok(());
        };
        match self.vars[v].1 {
            VarKind::Set => {
                for s in submasks(cx.local.live) {
                    cx.local.sets[v] = s;
                    self.guess(vars, i + 1, placed, body, kids, cx, out)?;
                }
                cx.local.sets[v] = 0;
            }
            VarKind::Element => {
                self.guess(vars, i + 1, placed, body, kids, cx, out)?;
                if placed >> i & 1 == 0 {
                    for p in bits(cx.local.live) {
                        cx.local.elems[v] = Some(p);
                        self.guess(vars, i + 1, placed | 1 << i, body, kids, cx, out)?;
                    }
                    cx.local.elems[v] = None;
                }
            }
        }
        Ok(())
    }

    fn atom(&self, atom: &Atom, kids: Option<(Sid, Sid)>, cx: &mut Ctx) -> Sid {
        let node = match atom {
            Atom::Member(x, t) => {
                let below = kids.and_then(|(a, b)| match (cx.arena.get(a), cx.arena.get(b)) {
                    (Node::Member(a), Node::Member(b)) => a.or(*b),
                    _ => shape_error(),
                });
                Node::Member(below.or_else(|| cx.local.elems[*x].map(|p| cx.local.term(t) >> p & 1 == 1)))
            }
            Atom::SetEq(s, t) => {
                let below = kids.is_none_or(|(a, b)| match (cx.arena.get(a), cx.arena.get(b)) {
                    (Node::SetEq(a), Node::SetEq(b)) => *a && *b,
                    _ => shape_error(),
                });
                Node::SetEq(below && cx.local.term(s) == cx.local.term(t))
            }
            Atom::Closure(s, t) => {
                let (ms, mt) = (cx.local.term(s), cx.local.term(t));
                let add = |x: Option<u32>, y: Option<u32>| x.zip(y).map(|(x, y)| x + y);
                let parts = kids.map(|(x, y)| match (cx.arena.get(x), cx.arena.get(y)) {
                    (
                        &Node::Closure { a: a1, b: b1, ab: ab1, d1: x1, d2: y1 },
                        &Node::Closure { a: a2, b: b2, ab: ab2, d1: x2, d2: y2 },
                    ) => ((a1, a2), (b1, b2), (ab1, ab2), add(x1, x2), add(y1, y2)),
                    _ => shape_error(),
                });
                let (a, ra) = cx.combine(parts.map(|p| p.0), ms);
                let (b, rb) = cx.combine(parts.map(|p| p.1), mt);
                let (ab, rab) = cx.combine(parts.map(|p| p.2), ms | mt);
                let (d1, d2) = parts.map_or((Some(0), Some(0)), |p| (p.3, p.4));
                // Outside the subtree the difference can shrink by at most the rank of the boundary.
                let cap = cx.frame.boundary.len() as isize;
                let settle = |d: Option<u32>, delta: isize| {
                    d.map(|d| d as isize + delta).filter(|&d| d <= cap).map(|d| d as u32)
                };
                Node::Closure { a, b, ab, d1: settle(d1, rab - ra), d2: settle(d2, rab - rb) }
            }
        };
        cx.arena.state(node)
    }

    fn accept(&self, core: &Core, state: Sid, arena: &Arena) -> bool {
        match (core, arena.get(state)) {
            (Core::Atom(_), Node::Member(m)) => m.unwrap_or(false),
            (Core::Atom(_), Node::SetEq(b)) => *b,
            (Core::Atom(_), Node::Closure { d1, d2, .. }) => *d1 == Some(0) && *d2 == Some(0),
            (Core::Or(a, b), &Node::Or(sa, sb)) => self.accept(a, sa, arena) || self.accept(b, sb, arena),
            (Core::Not(a), _) => !self.accept(a, state, arena),
            (Core::Exists { vars, body, .. }, Node::Exists(set)) => {
                let all = vars
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| self.vars[v].1 == VarKind::Element)
                    .fold(0u64, |m, (i, _)| m | 1 << i);
                set.iter().any(|&(placed, s)| placed == all && self.accept(body, s, arena))
            }
            _ => shape_error(),
        }
    }
}

fn term_variables(t: &Term, out: &mut BTreeSet<VarId>) {
    match t {
        Term::Var(v) => {
            out.insert(*v);
        }
        Term::Elements(xs) => out.extend(xs),
        Term::Union(a, b) | Term::Minus(a, b) => {
            term_variables(a, out);
            term_variables(b, out);
        }
    }
}

/// Fills `outer[block]` with the variables a block reads but does not bind; returns those of `c`.
fn outer_variables(c: &Core, outer: &mut [Vec<VarId>]) -> BTreeSet<VarId> {
    let mut used = BTreeSet::new();
    match c {
        Core::Atom(Atom::Member(x, t)) => {
            used.insert(*x);
            term_variables(t, &mut used);
        }
        Core::Atom(Atom::SetEq(s, t) | Atom::Closure(s, t)) => {
            term_variables(s, &mut used);
            term_variables(t, &mut used);
        }
        Core::Or(a, b) => {
            used = outer_variables(a, outer);
            used.extend(outer_variables(b, outer));
        }
        Core::Not(a) => used = outer_variables(a, outer),
        Core::Exists { id, vars, body, .. } => {
            used = outer_variables(body, outer);
            vars.iter().for_each(|v| {
                used.remove(v);
            });
            outer[*id] = used.iter().copied().collect();
        }
    }
    used
}

/// Decides `phi` under `q` on the matroid decomposed by `t`.
pub fn eval_decomposition(t: &AmalgamDecomposition, phi: &Formula, q: &Assignment) -> Result<bool> {
    eval_decomposition_with_budget(t, phi, q, DEFAULT_BUDGET)
}

pub fn eval_decomposition_with_budget(
    t: &AmalgamDecomposition,
    phi: &Formula,
    q: &Assignment,
    budget: usize,
) -> Result<bool> {
    Compiled::new(phi)?.evaluate(t, q, budget)
}

/// Checks that `q` assigns exactly the free variables of `phi` and decides it.
pub fn msom(t: &AmalgamDecomposition, phi: &Formula, q: &Assignment) -> Result<Verdict> {
    Ok(eval_decomposition(t, phi, q)?.into())
}

/// The states of the automaton for `x ∈ X` at every node, in processing order:
/// `0` until the node where `x` lives, then `ACCEPT` or `REJECT`.
pub fn membership_trace(t: &AmalgamDecomposition, x: ElementId, set: &ElementSet) -> Result<Vec<(NodeId, String)>> {
    let phi = Formula::Member("x".into(), SetTerm::var("X"));
    let q = Assignment::from([("x".into(), Value::Element(x)), ("X".into(), Value::Set(set.clone()))]);
    let (_, states) = Compiled::new(&phi)?.trace(t, &q, DEFAULT_BUDGET)?;
    Ok(states.into_iter().map(|(v, s)| (v, s.to_string())).collect())
}

/// Number of distinct states of `phi` at every node, over all values of its
/// free variables in the subtree.
pub fn reachable_state_counts(t: &AmalgamDecomposition, phi: &Formula) -> Result<BTreeMap<NodeId, usize>> {
    let free: Vec<String> = phi.free_variables().into_keys().collect();
    let closed = free.iter().rev().fold(phi.clone(), |body, v| Formula::exists(v, body));
    let (_, states) = Compiled::new(&closed)?.trace(t, &Assignment::new(), DEFAULT_BUDGET)?;
    Ok(states
        .into_iter()
        .map(|(v, s)| {
            let n = match s {
                State::Exists(set) => set.len(),
                _ => 1,
            };
            (v, n)
        })
        .collect())
}
