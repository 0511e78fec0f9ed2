//! Sentences of the first-order language of complemented lattices.
//!
//! Grammar (loosest binding first): `forall x y. φ` / `exists x. φ` (the
//! body extends as far right as possible), `<->` (right associative), `->`
//! (right associative), `|`, `&`, `!`, and atoms `term = term`,
//! `term <= term`, `true`, `false`. Terms use the term grammar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::{AtomVars, Formula};
use crate::error::{Error, Result};
use crate::term::{Equation, Term, TermParser};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeAtom {
    Eq(Term, Term),
    Leq(Term, Term),
}

impl AtomVars for LatticeAtom {
    fn vars(&self) -> BTreeSet<String> {
        let (LatticeAtom::Eq(a, b) | LatticeAtom::Leq(a, b)) = self;
        let mut v = a.free_vars();
        v.extend(b.free_vars());
        v
    }
}

impl fmt::Display for LatticeAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeAtom::Eq(a, b) => write!(f, "{a} = {b}"),
            LatticeAtom::Leq(a, b) => write!(f, "{a} <= {b}"),
        }
    }
}

pub type LatticeSentence = Formula<LatticeAtom>;

/// `forall v1 .. vk. lhs = rhs` over the equation's variables in sorted order.
pub fn universal_closure(eq: &Equation) -> LatticeSentence {
    Formula::forall(
        eq.free_vars().into_iter().collect(),
        Formula::Atom(LatticeAtom::Eq(eq.lhs.clone(), eq.rhs.clone())),
    )
}

pub fn parse_sentence(src: &str) -> Result<LatticeSentence> {
    let mut p = SentenceParser {
        p: TermParser::new(src),
    };
    let s = p.iff()?;
    p.p.expect_end()?;
    Ok(s)
}

/// Errors with free variables; otherwise returns the sentence with every
/// quantified variable renamed apart.
pub fn check_closed(s: &LatticeSentence) -> Result<LatticeSentence> {
    if let Some(v) = s.free_vars().into_iter().next() {
        return Err(Error::NotClosed(v));
    }
    Ok(rename_apart(s))
}

/// Renames bound variables so that no name is bound twice and no bound
/// name coincides with a free one. The first binder of a name keeps it.
pub fn rename_apart(s: &LatticeSentence) -> LatticeSentence {
    let mut taken: BTreeSet<String> = s.free_vars();
    taken.extend(s.bound_vars().into_iter().cloned());
    let mut used = s.free_vars();
    go(s, &BTreeMap::new(), &mut used, &taken)
}

fn go(
    s: &LatticeSentence,
    scope: &BTreeMap<String, String>,
    used: &mut BTreeSet<String>,
    taken: &BTreeSet<String>,
) -> LatticeSentence {
    let rec = |x: &LatticeSentence, used: &mut BTreeSet<String>| go(x, scope, used, taken);
    match s {
        Formula::Atom(a) => {
            let pairs: Vec<(&str, &str)> = scope.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            Formula::Atom(match a {
                LatticeAtom::Eq(l, r) => LatticeAtom::Eq(l.rename(&pairs), r.rename(&pairs)),
                LatticeAtom::Leq(l, r) => LatticeAtom::Leq(l.rename(&pairs), r.rename(&pairs)),
            })
        }
        Formula::Not(x) => Formula::negation(rec(x, used)),
        Formula::And(xs) => Formula::And(xs.iter().map(|x| rec(x, used)).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| rec(x, used)).collect()),
        Formula::Implies(a, b) => {
            let a = rec(a, used);
            Formula::implies(a, rec(b, used))
        }
        Formula::Iff(a, b) => {
            let a = rec(a, used);
            Formula::iff(a, rec(b, used))
        }
        Formula::Forall(vs, b) | Formula::Exists(vs, b) => {
            let mut inner = scope.clone();
            let mut names = Vec::with_capacity(vs.len());
            for v in vs {
                let name = if used.contains(v) {
                    (2..)
                        .map(|k| format!("{v}_{k}"))
                        .find(|c| !used.contains(c) && !taken.contains(c))
                        .expect("unbounded")
                } else {
                    v.clone()
                };
                used.insert(name.clone());
                inner.insert(v.clone(), name.clone());
                names.push(name);
            }
            let body = go(b, &inner, used, taken);
            match s {
                Formula::Forall(..) => Formula::Forall(names, Box::new(body)),
                _ => Formula::Exists(names, Box::new(body)),
            }
        }
    }
}

/// Rewrites `a <= b` as `a = a ^ b`.
pub fn desugar_leq(s: &LatticeSentence) -> LatticeSentence {
    s.transform(
        &mut |a| {
            Formula::Atom(match a {
                LatticeAtom::Leq(l, r) => LatticeAtom::Eq(l.clone(), Term::meet(l.clone(), r.clone())),
                eq => eq.clone(),
            })
        },
        &mut |vs| vs.to_vec(),
    )
}

struct SentenceParser<'a> {
    p: TermParser<'a>,
}

impl SentenceParser<'_> {
    fn keyword(&mut self, word: &str) -> bool {
        self.p.skip_ws();
        let start = self.p.pos;
        match self.p.ident() {
            Some(w) if w == word => true,
            _ => {
                self.p.pos = start;
                false
            }
        }
    }

    fn iff(&mut self) -> Result<LatticeSentence> {
        let a = self.implies()?;
        self.p.skip_ws();
        if self.p.eat_str("<->") {
            return Ok(Formula::iff(a, self.iff()?));
        }
        Ok(a)
    }

    fn implies(&mut self) -> Result<LatticeSentence> {
        let a = self.or()?;
        self.p.skip_ws();
        if self.p.eat_str("->") {
            return Ok(Formula::implies(a, self.implies()?));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<LatticeSentence> {
        let mut xs = vec![self.and()?];
        loop {
            self.p.skip_ws();
            if !self.p.eat('|') {
                return Ok(Formula::or(xs));
            }
            xs.push(self.and()?);
        }
    }

    fn and(&mut self) -> Result<LatticeSentence> {
        let mut xs = vec![self.unary()?];
        loop {
            self.p.skip_ws();
            if !self.p.eat('&') {
                return Ok(Formula::and(xs));
            }
            xs.push(self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<LatticeSentence> {
        self.p.skip_ws();
        if self.p.eat('!') {
            return Ok(Formula::negation(self.unary()?));
        }
        for (word, universal) in [("forall", true), ("exists", false)] {
            if self.keyword(word) {
                let vars = self.binders()?;
                let body = self.iff()?;
                return Ok(if universal {
                    Formula::Forall(vars, Box::new(body))
                } else {
                    Formula::Exists(vars, Box::new(body))
                });
            }
        }
        if self.keyword("true") {
            return Ok(Formula::And(vec![]));
        }
        if self.keyword("false") {
            return Ok(Formula::Or(vec![]));
        }
        if self.p.peek() != Some('(') {
            return self.atom();
        }
        let start = self.p.pos;
        let as_atom = self.atom();
        if as_atom.is_ok() {
            return as_atom;
        }
        self.p.pos = start + 1;
        let as_group = self.iff().and_then(|s| {
            self.p.skip_ws();
            if self.p.eat(')') {
                Ok(s)
            } else {
                Err(self.p.error("expected `)`"))
            }
        });
        match (as_atom, as_group) {
            (_, Ok(s)) => Ok(s),
            (Err(a), Err(g)) => Err(further(a, g)),
            (Ok(_), _) => unreachable!(),
        }
    }

    fn binders(&mut self) -> Result<Vec<String>> {
        let mut vars = Vec::new();
        loop {
            self.p.skip_ws();
            if !vars.is_empty() && (self.p.eat('.') || self.p.eat(':')) {
                return Ok(vars);
            }
            if !vars.is_empty() && self.p.eat(',') {
                self.p.skip_ws();
            }
            match self.p.ident() {
                Some(v) if !["forall", "exists", "true", "false"].contains(&v) => vars.push(v.to_string()),
                _ => return Err(self.p.error("expected a variable name")),
            }
        }
    }

    fn atom(&mut self) -> Result<LatticeSentence> {
        let l = self.p.term()?;
        self.p.skip_ws();
        let leq = if self.p.eat_str("<=") {
            true
        } else if self.p.eat('=') {
            false
        } else {
            return Err(self.p.error("expected `=` or `<=`"));
        };
        let r = self.p.term()?;
        Ok(Formula::Atom(if leq {
            LatticeAtom::Leq(l, r)
        } else {
            LatticeAtom::Eq(l, r)
        }))
    }
}

fn further(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (
            Error::Parse {
                line: la, column: ca, ..
            },
            Error::Parse {
                line: lb, column: cb, ..
            },
        ) if (la, ca) > (lb, cb) => a,
        _ => b,
    }
}

const PREC_QUANT: u8 = 0;
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;

/// Prints `s` in the sentence grammar with minimal parentheses.
pub fn write_sentence<A: fmt::Display>(s: &Formula<A>, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = match s {
        Formula::Forall(..) | Formula::Exists(..) => PREC_QUANT,
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(xs) if xs.len() > 1 => PREC_OR,
        Formula::And(xs) if xs.len() > 1 => PREC_AND,
        _ => PREC_NOT + 1,
    };
    let open = prec < min;
    if open {
        f.write_str("(")?;
    }
    let join = |xs: &[Formula<A>], sep: &str, p: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
        for (k, x) in xs.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            write_sentence(x, p, f)?;
        }
        Ok(())
    };
    match s {
        Formula::Atom(a) => write!(f, "{a}")?,
        Formula::Not(x) => {
            f.write_str("!")?;
            write_sentence(x, PREC_NOT, f)?;
        }
        Formula::And(xs) if xs.is_empty() => f.write_str("true")?,
        Formula::Or(xs) if xs.is_empty() => f.write_str("false")?,
        Formula::And(xs) => join(xs, " & ", PREC_AND + 1, f)?,
        Formula::Or(xs) => join(xs, " | ", PREC_OR + 1, f)?,
        Formula::Implies(a, b) => {
            write_sentence(a, PREC_IMPLIES + 1, f)?;
            f.write_str(" -> ")?;
            write_sentence(b, PREC_IMPLIES, f)?;
        }
        Formula::Iff(a, b) => {
            write_sentence(a, PREC_IFF + 1, f)?;
            f.write_str(" <-> ")?;
            write_sentence(b, PREC_IFF, f)?;
        }
        Formula::Forall(vs, b) | Formula::Exists(vs, b) => {
            let q = if matches!(s, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            write!(f, "{q} {}. ", vs.join(" "))?;
            write_sentence(b, PREC_QUANT, f)?;
        }
    }
    if open {
        f.write_str(")")?;
    }
    Ok(())
}

/// Display adapter for any formula whose atoms print in the sentence grammar.
pub struct Show<'a, A>(pub &'a Formula<A>);

impl<A: fmt::Display> fmt::Display for Show<'_, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sentence(self.0, PREC_QUANT, f)
    }
}

impl fmt::Display for Formula<LatticeAtom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sentence(self, PREC_QUANT, f)
    }
}
