use std::collections::BTreeSet;

use super::{is_base, is_circuit, Formula, SetTerm, VarKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Exists,
    Forall,
    In,
    NotIn,
    Cl,
    Indep,
    IsCircuit,
    IsBase,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Eq,
    Neq,
    And,
    Or,
    Not,
    Implies,
    Iff,
    Union,
    Minus,
    Empty,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::End => "end of input".to_string(),
        other => format!("{other:?}").to_lowercase(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                "in" => Tok::In,
                "notin" => Tok::NotIn,
                "cl" => Tok::Cl,
                "indep" => Tok::Indep,
                "is_circuit" => Tok::IsCircuit,
                "is_base" => Tok::IsBase,
                _ => Tok::Ident(word),
            };
            out.push((start, tok));
            continue;
        }
        let two: String = chars[i..(i + 3).min(chars.len())].iter().collect();
        let (tok, len) = if two.starts_with("<->") {
            (Tok::Iff, 3)
        } else if two.starts_with("->") {
            (Tok::Implies, 2)
        } else if two.starts_with("!=") {
            (Tok::Neq, 2)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '≠' => Tok::Neq,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '!' | '¬' | '~' => Tok::Not,
                '⇒' | '→' => Tok::Implies,
                '⇔' | '↔' => Tok::Iff,
                '∃' => Tok::Exists,
                '∀' => Tok::Forall,
                '∈' => Tok::In,
                '∉' => Tok::NotIn,
                '+' | '∪' => Tok::Union,
                '\\' | '∖' => Tok::Minus,
                '∅' => Tok::Empty,
                _ => return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{c}`") }),
            };
            (tok, 1)
        };
        out.push((start, tok));
        i += len;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    used: BTreeSet<String>,
}

/// Parses formula text; `is_circuit` and `is_base` are expanded in place.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let used = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => Some(s.clone()),
            _ => None,
        })
        .collect();
    let mut p = Parser { toks, at: 0, used };
    let phi = p.formula()?;
    p.expect(Tok::End)?;
    Ok(phi)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn ident(&mut self, kind: VarKind) -> Result<String> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) => {
                let found = VarKind::of(&name);
                if found != kind {
                    return Err(Error::Kind(format!(
                        "at {pos}: `{name}` is a {} variable but is used as {}",
                        kind_name(found),
                        match kind {
                            VarKind::Element => "an element",
                            VarKind::Set => "a set",
                        }
                    )));
                }
                Ok(name)
            }
            t => Err(Error::Syntax { pos, msg: format!("expected a variable, found {}", describe(&t)) }),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let a = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            Ok(a.implies(self.formula()?))
        } else if self.eat(&Tok::Iff) {
            Ok(Formula::Iff(Box::new(a), Box::new(self.disjunction()?)))
        } else {
            Ok(a)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut a = self.conjunction()?;
        while self.eat(&Tok::Or) {
            a = a.or(self.conjunction()?);
        }
        Ok(a)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut a = self.unary()?;
        while self.eat(&Tok::And) {
            a = a.and(self.unary()?);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Exists | Tok::Forall => self.quantifier(),
            Tok::LParen => {
                let save = self.at;
                self.bump();
                let inner = self.formula().and_then(|phi| self.expect(Tok::RParen).map(|_| phi));
                match inner {
                    Ok(phi) => Ok(phi),
                    Err(first) => {
                        // Maybe a parenthesised set term on the left of `=`.
                        self.at = save;
                        self.atom().map_err(|_| first)
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula> {
        let exists = self.bump() == Tok::Exists;
        let name = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                name
            }
            t => return self.error(format!("expected a variable after the quantifier, found {}", describe(&t))),
        };
        let range = if self.eat(&Tok::In) {
            if VarKind::of(&name) != VarKind::Element {
                return Err(Error::Kind(format!("`{name}` is a set variable and cannot range over a set")));
            }
            Some(self.set_term()?)
        } else {
            None
        };
        self.eat(&Tok::Colon);
        let body = self.formula()?;
        Ok(match (exists, range) {
            (true, None) => Formula::exists(&name, body),
            (false, None) => Formula::forall(&name, body),
            (true, Some(s)) => Formula::exists(&name, Formula::Member(name.clone(), s).and(body)),
            (false, Some(s)) => Formula::forall(&name, Formula::Member(name.clone(), s).implies(body)),
        })
    }

    fn set_argument(&mut self) -> Result<SetTerm> {
        self.expect(Tok::LParen)?;
        let s = self.set_term()?;
        self.expect(Tok::RParen)?;
        Ok(s)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Indep => {
                self.bump();
                Ok(Formula::Indep(self.set_argument()?))
            }
            Tok::IsCircuit => {
                self.bump();
                let s = self.set_argument()?;
                Ok(is_circuit(&s, &mut self.used))
            }
            Tok::IsBase => {
                self.bump();
                let s = self.set_argument()?;
                Ok(is_base(&s, &mut self.used))
            }
            Tok::Cl => {
                self.bump();
                let s = self.set_argument()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::Cl)?;
                let t = self.set_argument()?;
                Ok(Formula::ClosureEq(s, t))
            }
            Tok::Ident(name) if VarKind::of(&name) == VarKind::Element => {
                self.bump();
                match self.bump() {
                    Tok::Eq | Tok::Neq => {
                        let neg = self.toks[self.at - 1].1 == Tok::Neq;
                        let other = self.ident(VarKind::Element)?;
                        let eq = Formula::ElemEq(name, other);
                        Ok(if neg { eq.not() } else { eq })
                    }
                    t @ (Tok::In | Tok::NotIn) => {
                        let phi = if self.eat(&Tok::Cl) {
                            Formula::InClosure(name, self.set_argument()?)
                        } else {
                            Formula::Member(name, self.set_term()?)
                        };
                        Ok(if t == Tok::NotIn { phi.not() } else { phi })
                    }
                    t => {
                        self.at -= usize::from(t != Tok::End);
                        self.error(format!("expected `=`, `!=`, `in` or `notin` after `{name}`, found {}", describe(&t)))
                    }
                }
            }
            Tok::Ident(_) | Tok::LBrace | Tok::Empty | Tok::LParen => {
                let s = self.set_term()?;
                let pos = self.pos();
                match self.bump() {
                    Tok::Eq => Ok(Formula::SetEq(s, self.set_term()?)),
                    Tok::Neq => Ok(Formula::SetEq(s, self.set_term()?).not()),
                    Tok::In | Tok::NotIn => Err(Error::Kind(format!("at {pos}: the set `{s}` is used as an element"))),
                    t => Err(Error::Syntax { pos, msg: format!("expected `=` after a set, found {}", describe(&t)) }),
                }
            }
            t => self.error(format!("expected a formula, found {}", describe(&t))),
        }
    }

    fn set_term(&mut self) -> Result<SetTerm> {
        let mut s = self.set_primary()?;
        loop {
            if self.eat(&Tok::Union) {
                s = s.union(self.set_primary()?);
            } else if self.eat(&Tok::Minus) {
                s = s.minus(self.set_primary()?);
            } else {
                return Ok(s);
            }
        }
    }

    fn set_primary(&mut self) -> Result<SetTerm> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(SetTerm::Var(self.ident(VarKind::Set)?)),
            Tok::Empty => {
                self.bump();
                Ok(SetTerm::Elements(Vec::new()))
            }
            Tok::LBrace => {
                self.bump();
                let mut xs = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        xs.push(self.ident(VarKind::Element)?);
                        if self.eat(&Tok::RBrace) {
                            break;
                        }
                        self.expect(Tok::Comma)?;
                    }
                }
                Ok(SetTerm::Elements(xs))
            }
            Tok::LParen => {
                self.bump();
                let s = self.set_term()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            t => self.error(format!("expected a set, found {}", describe(&t))),
        }
    }
}

fn kind_name(k: VarKind) -> &'static str {
    match k {
        VarKind::Element => "element",
        VarKind::Set => "set",
    }
}
