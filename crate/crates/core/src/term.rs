//! Lattice terms over `∧`, `∨`, `¬`, `0`, `1` and named variables.
//!
//! Concrete syntax: `^` meet, `v` join, `~` negation, `0`/`1` constants.
//! Precedence is `~` > `^` > `v`; binary operators associate to the left.
//! A `v` in operator position is always the join operator, so `(p^r)vq`
//! reads as `(p ^ r) v q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TermNode {
    Var(String),
    Top,
    Bot,
    Meet(Term, Term),
    Join(Term, Term),
    Not(Term),
}

/// Shared handle to an immutable term tree.
///
/// Cloning is cheap and subtrees are shared, which keeps the iterated
/// restriction constructions small in memory; equality is structural.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term(Arc::new(TermNode::Var(name.into())))
    }

    pub fn top() -> Term {
        Term(Arc::new(TermNode::Top))
    }

    pub fn bot() -> Term {
        Term(Arc::new(TermNode::Bot))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Meet(a, b)))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Join(a, b)))
    }

    pub fn negate(a: Term) -> Term {
        Term(Arc::new(TermNode::Not(a)))
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    /// Identity of the shared node, used as a memoization key.
    pub(crate) fn id(&self) -> *const TermNode {
        Arc::as_ptr(&self.0)
    }

    pub fn is_compound(&self) -> bool {
        matches!(self.node(), TermNode::Meet(..) | TermNode::Join(..) | TermNode::Not(_))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if !seen.insert(t.id() as usize) {
                continue;
            }
            match t.node() {
                TermNode::Var(v) => {
                    out.insert(v.clone());
                }
                TermNode::Top | TermNode::Bot => {}
                TermNode::Meet(a, b) | TermNode::Join(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                TermNode::Not(a) => stack.push(a.clone()),
            }
        }
        out
    }

    /// Number of nodes in the tree, counting shared subtrees once per use.
    pub fn tree_size(&self) -> usize {
        fn go(t: &Term, memo: &mut HashMap<*const TermNode, usize>) -> usize {
            if let Some(&n) = memo.get(&t.id()) {
                return n;
            }
            let n = match t.node() {
                TermNode::Var(_) | TermNode::Top | TermNode::Bot => 1,
                TermNode::Meet(a, b) | TermNode::Join(a, b) => 1 + go(a, memo) + go(b, memo),
                TermNode::Not(a) => 1 + go(a, memo),
            };
            memo.insert(t.id(), n);
            n
        }
        go(self, &mut HashMap::new())
    }

    pub fn parse(src: &str) -> Result<Term> {
        let mut p = TermParser::new(src);
        let t = p.term()?;
        p.expect_end()?;
        Ok(t)
    }

    /// Negation normal form: negations pushed onto variables and constants
    /// by De Morgan, double negations removed.
    pub fn to_nnf(&self) -> Term {
        fn go(t: &Term, negated: bool, memo: &mut HashMap<(*const TermNode, bool), Term>) -> Term {
            if let Some(r) = memo.get(&(t.id(), negated)) {
                return r.clone();
            }
            let r = match t.node() {
                TermNode::Var(_) | TermNode::Top | TermNode::Bot => {
                    if negated {
                        Term::negate(t.clone())
                    } else {
                        t.clone()
                    }
                }
                TermNode::Meet(a, b) => {
                    let (a, b) = (go(a, negated, memo), go(b, negated, memo));
                    if negated {
                        Term::join(a, b)
                    } else {
                        Term::meet(a, b)
                    }
                }
                TermNode::Join(a, b) => {
                    let (a, b) = (go(a, negated, memo), go(b, negated, memo));
                    if negated {
                        Term::meet(a, b)
                    } else {
                        Term::join(a, b)
                    }
                }
                TermNode::Not(a) => go(a, !negated, memo),
            };
            memo.insert((t.id(), negated), r.clone());
            r
        }
        go(self, false, &mut HashMap::new())
    }

    /// `T|_α`: in the NNF of `self`, every leaf `p` becomes `p ∧ α` and every
    /// `¬p` becomes `¬p ∧ α`. Constant leaves are left untouched.
    pub fn restrict(&self, alpha: &Term) -> Term {
        fn go(t: &Term, alpha: &Term, memo: &mut HashMap<*const TermNode, Term>) -> Term {
            if let Some(r) = memo.get(&t.id()) {
                return r.clone();
            }
            let r = match t.node() {
                TermNode::Var(_) => Term::meet(t.clone(), alpha.clone()),
                TermNode::Not(inner) if matches!(inner.node(), TermNode::Var(_)) => {
                    Term::meet(t.clone(), alpha.clone())
                }
                TermNode::Top | TermNode::Bot | TermNode::Not(_) => t.clone(),
                TermNode::Meet(a, b) => Term::meet(go(a, alpha, memo), go(b, alpha, memo)),
                TermNode::Join(a, b) => Term::join(go(a, alpha, memo), go(b, alpha, memo)),
            };
            memo.insert(t.id(), r.clone());
            r
        }
        go(&self.to_nnf(), alpha, &mut HashMap::new())
    }

    /// Simultaneous replacement of variables.
    pub fn substitute(&self, replacements: &BTreeMap<String, Term>) -> Term {
        fn go(t: &Term, map: &BTreeMap<String, Term>, memo: &mut HashMap<*const TermNode, Term>) -> Term {
            if let Some(r) = memo.get(&t.id()) {
                return r.clone();
            }
            let r = match t.node() {
                TermNode::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
                TermNode::Top | TermNode::Bot => t.clone(),
                TermNode::Meet(a, b) => Term::meet(go(a, map, memo), go(b, map, memo)),
                TermNode::Join(a, b) => Term::join(go(a, map, memo), go(b, map, memo)),
                TermNode::Not(a) => Term::negate(go(a, map, memo)),
            };
            memo.insert(t.id(), r.clone());
            r
        }
        go(self, replacements, &mut HashMap::new())
    }

    /// Renames variables; names missing from `renaming` are kept.
    pub fn rename(&self, renaming: &[(&str, &str)]) -> Term {
        let map = renaming
            .iter()
            .map(|&(from, to)| (from.to_string(), Term::var(to)))
            .collect();
        self.substitute(&map)
    }
}

const PREC_JOIN: u8 = 1;
const PREC_MEET: u8 = 2;
const PREC_UNARY: u8 = 3;

fn write_term(t: &Term, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (prec, open) = match t.node() {
        TermNode::Join(..) => (PREC_JOIN, PREC_JOIN < min_prec),
        TermNode::Meet(..) => (PREC_MEET, PREC_MEET < min_prec),
        _ => (PREC_UNARY, false),
    };
    if open {
        f.write_str("(")?;
    }
    match t.node() {
        TermNode::Var(v) => f.write_str(v)?,
        TermNode::Top => f.write_str("1")?,
        TermNode::Bot => f.write_str("0")?,
        TermNode::Not(a) => {
            f.write_str("~")?;
            write_term(a, PREC_UNARY, f)?;
        }
        TermNode::Meet(a, b) | TermNode::Join(a, b) => {
            write_term(a, prec, f)?;
            f.write_str(if prec == PREC_MEET { " ^ " } else { " v " })?;
            write_term(b, prec + 1, f)?;
        }
    }
    if open {
        f.write_str(")")?;
    }
    Ok(())
}

/// Prints the concrete syntax with the fewest parentheses that re-parse
/// to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, PREC_JOIN, f)
    }
}

/// An equation `lhs = rhs` between two terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn parse(src: &str) -> Result<Equation> {
        let mut p = TermParser::new(src);
        let lhs = p.term()?;
        p.skip_ws();
        if !p.eat('=') {
            return Err(p.error("expected `=`"));
        }
        let rhs = p.term()?;
        p.expect_end()?;
        Ok(Equation { lhs, rhs })
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.free_vars();
        v.extend(self.rhs.free_vars());
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Recursive-descent reader for the term grammar, shared with the sentence
/// parser.
pub(crate) struct TermParser<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> TermParser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        TermParser { src, pos: 0 }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse_at(self.src, self.pos, message)
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    pub(crate) fn ident(&mut self) -> Option<&'a str> {
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(k, _)| k);
        self.pos += end;
        Some(&rest[..end])
    }

    pub(crate) fn term(&mut self) -> Result<Term> {
        let mut acc = self.meet()?;
        loop {
            self.skip_ws();
            if !self.eat('v') {
                return Ok(acc);
            }
            let rhs = self.meet()?;
            acc = Term::join(acc, rhs);
        }
    }

    fn meet(&mut self) -> Result<Term> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if !self.eat('^') {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = Term::meet(acc, rhs);
        }
    }

    fn unary(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.eat('~') {
            return Ok(Term::negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(t)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Term::bot())
            }
            Some('1') => {
                self.pos += 1;
                Ok(Term::top())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident().expect("alphabetic start");
                Ok(Term::var(name))
            }
            Some(c) => Err(self.error(format!("unexpected character `{c}`"))),
        }
    }
}
