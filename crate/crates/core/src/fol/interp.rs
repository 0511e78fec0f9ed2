//! Finite-domain interpretation of lattice and flat sentences.
//!
//! Quantifiers range over a finite set of subspaces closed under meet, join
//! and complement, so a flat sentence and its source can both be decided by
//! enumeration and compared.

use std::collections::HashMap;

use super::flatten::{FlatAtom, FlatSentence};
use super::formula::{AtomVars, Formula};
use super::sentence::{check_closed, LatticeAtom, LatticeSentence};
use crate::assignment::{eval, Assignment};
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// Finite sub-ortholattice of L(ℂⁿ) with operation tables.
#[derive(Clone, Debug)]
pub struct Domain {
    elems: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    not: Vec<usize>,
    /// `meet[i][j]` and `join[i][j]` for `j <= i`.
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl Domain {
    /// Closure of `seed ∪ {0, 1}` under the lattice operations. Fails when
    /// the closure grows past `max` elements.
    pub fn closure(ambient: usize, seed: &[Subspace], max: usize) -> Result<Domain> {
        let mut d = Domain {
            elems: Vec::new(),
            index: HashMap::new(),
            not: Vec::new(),
            meet: Vec::new(),
            join: Vec::new(),
            zero: 0,
            one: 0,
        };
        d.zero = d.insert(Subspace::zero(ambient), max)?;
        d.one = d.insert(Subspace::full(ambient), max)?;
        for s in seed {
            if s.ambient() != ambient {
                return Err(Error::AmbientMismatch {
                    expected: ambient,
                    found: s.ambient(),
                });
            }
            d.insert(s.clone(), max)?;
        }
        let mut i = 0;
        while i < d.elems.len() {
            let x = d.elems[i].clone();
            let c = d.insert(x.complement(), max)?;
            d.not.push(c);
            let mut meets = Vec::with_capacity(i + 1);
            let mut joins = Vec::with_capacity(i + 1);
            for j in 0..=i {
                let y = d.elems[j].clone();
                meets.push(d.insert(x.meet(&y)?, max)?);
                joins.push(d.insert(x.join(&y)?, max)?);
            }
            d.meet.push(meets);
            d.join.push(joins);
            i += 1;
        }
        Ok(d)
    }

    fn insert(&mut self, s: Subspace, max: usize) -> Result<usize> {
        if let Some(&k) = self.index.get(&s) {
            return Ok(k);
        }
        if self.elems.len() >= max {
            return Err(Error::InvalidArgument(format!("closure exceeds {max} subspaces")));
        }
        self.index.insert(s.clone(), self.elems.len());
        self.elems.push(s);
        Ok(self.elems.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elems
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a.max(b)][a.min(b)]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a.max(b)][a.min(b)]
    }

    pub fn complement(&self, a: usize) -> usize {
        self.not[a]
    }
}

/// Variable bindings to domain indices; later bindings shadow earlier ones.
pub type Env = Vec<(String, usize)>;

fn lookup(env: &Env, v: &str) -> Option<usize> {
    env.iter().rev().find(|(name, _)| name == v).map(|&(_, k)| k)
}

/// Atoms with a truth value once their variables are bound.
pub trait DomainAtom: AtomVars {
    /// `None` while some variable is unbound.
    fn truth(&self, d: &Domain, env: &Env) -> Result<Option<bool>>;
}

impl DomainAtom for FlatAtom {
    fn truth(&self, d: &Domain, env: &Env) -> Result<Option<bool>> {
        let get = |v: &String| lookup(env, v);
        let t = (|| {
            Some(match self {
                FlatAtom::Meet(x, y, z) => get(x)? == d.meet(get(y)?, get(z)?),
                FlatAtom::Join(x, y, z) => get(x)? == d.join(get(y)?, get(z)?),
                FlatAtom::Not(x, y) => get(x)? == d.complement(get(y)?),
                FlatAtom::Eq(x, y) => get(x)? == get(y)?,
                FlatAtom::Zero(x) => get(x)? == d.zero,
                FlatAtom::One(x) => get(x)? == d.one,
            })
        })();
        Ok(t)
    }
}

/// Source atoms are evaluated with the subspace engine, not the tables.
impl DomainAtom for LatticeAtom {
    fn truth(&self, d: &Domain, env: &Env) -> Result<Option<bool>> {
        let mut a = Assignment::new(d.elems[0].ambient());
        for v in self.vars() {
            match lookup(env, &v) {
                Some(k) => a.bind(v, d.elems[k].clone())?,
                None => return Ok(None),
            }
        }
        Ok(Some(match self {
            LatticeAtom::Eq(l, r) => eval(l, &a)? == eval(r, &a)?,
            LatticeAtom::Leq(l, r) => eval(l, &a)?.leq(&eval(r, &a)?)?,
        }))
    }
}

/// Kleene evaluation: `None` is unknown.
fn partial<A: DomainAtom>(f: &Formula<A>, d: &Domain, env: &mut Env) -> Result<Option<bool>> {
    Ok(match f {
        Formula::Atom(a) => a.truth(d, env)?,
        Formula::Not(x) => partial(x, d, env)?.map(|b| !b),
        Formula::And(xs) => {
            let mut out = Some(true);
            for x in xs {
                match partial(x, d, env)? {
                    Some(false) => return Ok(Some(false)),
                    Some(true) => {}
                    None => out = None,
                }
            }
            out
        }
        Formula::Or(xs) => {
            let mut out = Some(false);
            for x in xs {
                match partial(x, d, env)? {
                    Some(true) => return Ok(Some(true)),
                    Some(false) => {}
                    None => out = None,
                }
            }
            out
        }
        Formula::Implies(a, b) => match partial(a, d, env)? {
            Some(false) => Some(true),
            ha => match (ha, partial(b, d, env)?) {
                (_, Some(true)) => Some(true),
                (Some(true), hb) => hb,
                _ => None,
            },
        },
        Formula::Iff(a, b) => match (partial(a, d, env)?, partial(b, d, env)?) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        },
        Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let free = f.free_vars();
            if free.iter().any(|v| lookup(env, v).is_none()) {
                return Ok(None);
            }
            Some(quantify(vs, body, universal, d, env)?)
        }
    })
}

fn quantify<A: DomainAtom>(
    vs: &[String],
    body: &Formula<A>,
    universal: bool,
    d: &Domain,
    env: &mut Env,
) -> Result<bool> {
    let Some((v, rest)) = vs.split_first() else {
        return partial(body, d, env)?.ok_or_else(|| Error::InvalidArgument("unbound variable in body".into()));
    };
    if let Some(b) = probe(body, vs, d, env)? {
        return Ok(b);
    }
    for k in 0..d.len() {
        env.push((v.clone(), k));
        let b = quantify(rest, body, universal, d, env);
        env.pop();
        if b? != universal {
            return Ok(!universal);
        }
    }
    Ok(universal)
}

/// Truth of `body` decided without binding `vs`, if possible.
fn probe<A: DomainAtom>(body: &Formula<A>, vs: &[String], d: &Domain, env: &Env) -> Result<Option<bool>> {
    let mut masked: Env = env.iter().filter(|(name, _)| !vs.contains(name)).cloned().collect();
    partial(body, d, &mut masked)
}

/// Truth of a closed sentence with quantifiers over `d`.
pub fn interpret<A: DomainAtom>(s: &Formula<A>, d: &Domain, env: &Env) -> Result<bool> {
    let mut env = env.clone();
    partial(s, d, &mut env)?.ok_or_else(|| {
        let free = s
            .free_vars()
            .into_iter()
            .find(|v| lookup(&env, v).is_none())
            .unwrap_or_default();
        Error::NotClosed(free)
    })
}

pub fn interpret_flat(f: &FlatSentence, d: &Domain) -> Result<bool> {
    interpret(f, d, &Env::new())
}

pub fn interpret_source(s: &LatticeSentence, d: &Domain) -> Result<bool> {
    interpret(&check_closed(s)?, d, &Env::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::coordinate_family;
    use crate::fol::flatten::flatten;
    use crate::fol::sentence::parse_sentence;

    fn domain(n: usize, extra: usize) -> Domain {
        Domain::closure(n, &coordinate_family(n, extra).unwrap(), 64).unwrap()
    }

    fn both(src: &str, d: &Domain) -> (bool, bool) {
        let s = parse_sentence(src).unwrap();
        (
            interpret_source(&s, d).unwrap(),
            interpret_flat(&flatten(&s).unwrap(), d).unwrap(),
        )
    }

    #[test]
    fn closure_of_coordinate_subspaces_is_boolean() {
        let d = domain(3, 0);
        assert_eq!(d.len(), 8);
        let d = domain(2, 2);
        assert_eq!(d.len(), 8);
        for a in 0..d.len() {
            assert_eq!(d.complement(d.complement(a)), a);
            assert_eq!(d.meet(a, d.complement(a)), d.zero);
        }
    }

    #[test]
    fn distributivity_separates_domains() {
        let src = "forall p q r. p ^ (q v r) = (p ^ q) v (p ^ r)";
        assert_eq!(both(src, &domain(3, 0)), (true, true));
        assert_eq!(both(src, &domain(2, 1)), (false, false));
        assert_eq!(both(src, &domain(1, 0)), (true, true));
    }

    #[test]
    fn existential_and_order_sentences() {
        let d = domain(2, 1);
        for (src, want) in [
            ("forall x. exists y. x ^ y = 0 & x v y = 1", true),
            ("exists x. forall y. y <= x", true),
            ("forall x. exists y. !(y <= x)", false),
            ("forall x y. x <= y -> ~y <= ~x", true),
            ("exists x y. x ^ y = 0 & !(x <= ~y)", true),
        ] {
            let (a, b) = both(src, &d);
            assert_eq!(a, b, "{src}");
            assert_eq!(a, want, "{src}");
        }
    }

    #[test]
    fn closure_cap_is_enforced() {
        assert!(Domain::closure(3, &coordinate_family(3, 6).unwrap(), 20).is_err());
    }
}
