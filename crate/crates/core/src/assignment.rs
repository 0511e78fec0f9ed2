//! Variable assignments and term evaluation in L(ℂⁿ).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::subspace::{shift_parse_error, Subspace};
use crate::term::{Equation, Term, TermNode};

/// A finite map from variable names to subspaces of one ambient space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    ambient: usize,
    bindings: BTreeMap<String, Subspace>,
}

impl Assignment {
    pub fn new(ambient: usize) -> Self {
        Assignment {
            ambient,
            bindings: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Subspace) -> Result<()> {
        if value.ambient() != self.ambient {
            return Err(Error::AmbientMismatch {
                expected: self.ambient,
                found: value.ambient(),
            });
        }
        self.bindings.insert(name.into(), value);
        Ok(())
    }

    /// Builder-style [`Assignment::bind`].
    pub fn with(mut self, name: impl Into<String>, value: Subspace) -> Result<Self> {
        self.bind(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Subspace> {
        self.bindings.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Subspace)> {
        self.bindings.iter()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn binds_all<'a>(&self, names: impl IntoIterator<Item = &'a String>) -> bool {
        names.into_iter().all(|n| self.bindings.contains_key(n))
    }

    /// Applies `f` to every bound value, producing an assignment over `ambient`.
    pub fn map_values(&self, ambient: usize, mut f: impl FnMut(&Subspace) -> Result<Subspace>) -> Result<Assignment> {
        let mut out = Assignment::new(ambient);
        for (k, v) in &self.bindings {
            out.bind(k.clone(), f(v)?)?;
        }
        Ok(out)
    }

    /// Parses the assignment fixture format:
    ///
    /// ```text
    /// 4
    /// p = { 1 0 0 0
    ///       0 1 0 0 }
    /// q = { }
    /// ```
    pub fn parse_fixture(src: &str) -> Result<Assignment> {
        let mut pos = skip_trivia(src, 0);
        let line_end = src[pos..].find('\n').map_or(src.len(), |k| pos + k);
        let header = src[pos..line_end].split('#').next().unwrap_or("").trim();
        let ambient: usize = header
            .parse()
            .map_err(|_| Error::parse_at(src, pos, format!("bad ambient dimension `{header}`")))?;
        let mut out = Assignment::new(ambient);
        pos = line_end;
        loop {
            pos = skip_trivia(src, pos);
            if pos >= src.len() {
                return Ok(out);
            }
            let rest = &src[pos..];
            let name_len = rest
                .char_indices()
                .find(|&(k, c)| !(c.is_ascii_alphanumeric() || c == '_') || (k == 0 && !c.is_ascii_alphabetic()))
                .map_or(rest.len(), |(k, _)| k);
            if name_len == 0 {
                return Err(Error::parse_at(src, pos, "expected a variable name"));
            }
            let name = &rest[..name_len];
            pos += name_len;
            pos = skip_trivia(src, pos);
            if !src[pos..].starts_with('=') {
                return Err(Error::parse_at(src, pos, "expected `=`"));
            }
            pos = skip_trivia(src, pos + 1);
            if !src[pos..].starts_with('{') {
                return Err(Error::parse_at(src, pos, "expected `{`"));
            }
            let body_start = pos + 1;
            let Some(close) = src[body_start..].find('}') else {
                return Err(Error::parse_at(src, pos, "unterminated `{`"));
            };
            let body = &src[body_start..body_start + close];
            let m = Matrix::parse(body, Some(ambient)).map_err(|e| shift_parse_error(e, src, body_start))?;
            if out.get(name).is_some() {
                return Err(Error::parse_at(src, pos, format!("`{name}` bound twice")));
            }
            out.bind(name, Subspace::from_spanning(&m, ambient)?)?;
            pos = body_start + close + 1;
        }
    }

    /// Inverse of [`Assignment::parse_fixture`].
    pub fn to_fixture(&self) -> String {
        self.to_string()
    }
}

fn skip_trivia(src: &str, mut pos: usize) -> usize {
    loop {
        let rest = &src[pos..];
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        if trimmed.starts_with('#') {
            pos += trimmed.find('\n').map_or(trimmed.len(), |k| k + 1);
        } else {
            return pos;
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.ambient)?;
        for (name, s) in &self.bindings {
            if s.is_zero() {
                writeln!(f, "{name} = {{ }}")?;
            } else {
                write!(f, "{name} = {{\n{}}}\n", s.basis())?;
            }
        }
        Ok(())
    }
}

/// How the evaluator computes meets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MeetRoute {
    /// Common kernel of the stacked constraint systems.
    #[default]
    Direct,
    /// `¬(¬p ∨ ¬q)`.
    DeMorgan,
}

/// Evaluates terms under one assignment, memoizing shared subterms.
pub struct Evaluator<'a> {
    assignment: &'a Assignment,
    route: MeetRoute,
    // Holding the term keeps its address from being reused while memoized.
    memo: HashMap<*const TermNode, (Term, Subspace)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(assignment: &'a Assignment, route: MeetRoute) -> Self {
        Evaluator {
            assignment,
            route,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, t: &Term) -> Result<Subspace> {
        if let Some((_, s)) = self.memo.get(&t.id()) {
            return Ok(s.clone());
        }
        let n = self.assignment.ambient();
        let value = match t.node() {
            TermNode::Var(v) => self
                .assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            TermNode::Top => Subspace::full(n),
            TermNode::Bot => Subspace::zero(n),
            TermNode::Not(a) => self.eval(a)?.complement(),
            TermNode::Join(a, b) => {
                let a = self.eval(a)?;
                a.join(&self.eval(b)?)?
            }
            TermNode::Meet(a, b) => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                match self.route {
                    MeetRoute::Direct => a.meet(&b)?,
                    MeetRoute::DeMorgan => a.meet_de_morgan(&b)?,
                }
            }
        };
        self.memo.insert(t.id(), (t.clone(), value.clone()));
        Ok(value)
    }
}

pub fn eval(t: &Term, a: &Assignment) -> Result<Subspace> {
    Evaluator::new(a, MeetRoute::Direct).eval(t)
}

/// Both sides of `eq` under `a`.
pub fn eval_sides(eq: &Equation, a: &Assignment, route: MeetRoute) -> Result<(Subspace, Subspace)> {
    let mut ev = Evaluator::new(a, route);
    let l = ev.eval(&eq.lhs)?;
    let r = ev.eval(&eq.rhs)?;
    Ok((l, r))
}

/// True iff both sides evaluate to the same subspace.
pub fn holds(eq: &Equation, a: &Assignment) -> Result<bool> {
    holds_with(eq, a, MeetRoute::Direct)
}

pub fn holds_with(eq: &Equation, a: &Assignment, route: MeetRoute) -> Result<bool> {
    let (l, r) = eval_sides(eq, a, route)?;
    Ok(l == r)
}
