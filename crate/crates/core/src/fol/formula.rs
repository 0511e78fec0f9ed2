//! First-order formula skeleton shared by every compiler stage.

use std::collections::BTreeSet;

/// A first-order formula over atoms `A`. Empty `And` is true and empty `Or`
/// is false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula<A> {
    Atom(A),
    Not(Box<Formula<A>>),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
    Iff(Box<Formula<A>>, Box<Formula<A>>),
    Forall(Vec<String>, Box<Formula<A>>),
    Exists(Vec<String>, Box<Formula<A>>),
}

/// Atoms that mention variables.
pub trait AtomVars {
    fn vars(&self) -> BTreeSet<String>;
}

impl<A> Formula<A> {
    pub fn negation(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction, collapsing a single conjunct to itself.
    pub fn and(mut fs: Vec<Formula<A>>) -> Self {
        if fs.len() == 1 {
            return fs.pop().expect("one element");
        }
        Formula::And(fs)
    }

    pub fn or(mut fs: Vec<Formula<A>>) -> Self {
        if fs.len() == 1 {
            return fs.pop().expect("one element");
        }
        Formula::Or(fs)
    }

    pub fn implies(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Universal quantifier; no variables leaves the body unchanged.
    pub fn forall(vars: Vec<String>, body: Formula<A>) -> Self {
        if vars.is_empty() {
            return body;
        }
        Formula::Forall(vars, Box::new(body))
    }

    pub fn exists(vars: Vec<String>, body: Formula<A>) -> Self {
        if vars.is_empty() {
            return body;
        }
        Formula::Exists(vars, Box::new(body))
    }

    /// Rebuilds the formula, replacing atoms by formulas and each quantifier
    /// block by the variables `vars` returns for it.
    pub fn transform<B>(
        &self,
        atom: &mut impl FnMut(&A) -> Formula<B>,
        vars: &mut impl FnMut(&[String]) -> Vec<String>,
    ) -> Formula<B> {
        match self {
            Formula::Atom(a) => atom(a),
            Formula::Not(x) => Formula::negation(x.transform(atom, vars)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.transform(atom, vars)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.transform(atom, vars)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.transform(atom, vars), b.transform(atom, vars)),
            Formula::Iff(a, b) => Formula::iff(a.transform(atom, vars), b.transform(atom, vars)),
            Formula::Forall(vs, b) => {
                let vs = vars(vs);
                Formula::forall(vs, b.transform(atom, vars))
            }
            Formula::Exists(vs, b) => {
                let vs = vars(vs);
                Formula::exists(vs, b.transform(atom, vars))
            }
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom(a) = f {
                out.push(a);
            }
        });
        out
    }

    /// Every quantified variable, in order of appearance.
    pub fn bound_vars(&self) -> Vec<&String> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Forall(vs, _) | Formula::Exists(vs, _) = f {
                out.extend(vs.iter());
            }
        });
        out
    }

    /// Variables bound by the leading chain of universal quantifiers, and the
    /// formula below them.
    pub fn universal_prefix(&self) -> (Vec<&String>, &Formula<A>) {
        let mut vars = Vec::new();
        let mut f = self;
        while let Formula::Forall(vs, b) = f {
            vars.extend(vs.iter());
            f = b;
        }
        (vars, f)
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula<A>)) {
        f(self);
        match self {
            Formula::Atom(_) => {}
            Formula::Not(x) | Formula::Forall(_, x) | Formula::Exists(_, x) => x.visit(f),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.visit(f)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }
}

impl<A: AtomVars> Formula<A> {
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Atom(a) => a.vars(),
            Formula::Not(x) => x.free_vars(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().flat_map(|x| x.free_vars()).collect(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let mut v = a.free_vars();
                v.extend(b.free_vars());
                v
            }
            Formula::Forall(vs, b) | Formula::Exists(vs, b) => {
                let mut v = b.free_vars();
                for x in vs {
                    v.remove(x);
                }
                v
            }
        }
    }
}
