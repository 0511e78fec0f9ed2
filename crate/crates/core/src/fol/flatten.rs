//! Naming every compound subterm with a fresh variable.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::formula::{AtomVars, Formula};
use super::sentence::{check_closed, desugar_leq, LatticeAtom, LatticeSentence};
use crate::error::Result;
use crate::term::{Term, TermNode};

/// Atoms whose arguments are all variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatAtom {
    /// `x = y ^ z`
    Meet(String, String, String),
    /// `x = y v z`
    Join(String, String, String),
    /// `x = ~y`
    Not(String, String),
    /// `x = y`
    Eq(String, String),
    /// `x = 0`
    Zero(String),
    /// `x = 1`
    One(String),
}

impl FlatAtom {
    /// The variable an atom defines (its left-hand side).
    pub fn target(&self) -> &str {
        match self {
            FlatAtom::Meet(x, ..) | FlatAtom::Join(x, ..) | FlatAtom::Not(x, _) | FlatAtom::Eq(x, _) => x,
            FlatAtom::Zero(x) | FlatAtom::One(x) => x,
        }
    }
}

impl AtomVars for FlatAtom {
    fn vars(&self) -> BTreeSet<String> {
        let names: Vec<&String> = match self {
            FlatAtom::Meet(x, y, z) | FlatAtom::Join(x, y, z) => vec![x, y, z],
            FlatAtom::Not(x, y) | FlatAtom::Eq(x, y) => vec![x, y],
            FlatAtom::Zero(x) | FlatAtom::One(x) => vec![x],
        };
        names.into_iter().cloned().collect()
    }
}

impl fmt::Display for FlatAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatAtom::Meet(x, y, z) => write!(f, "{x} = {y} ^ {z}"),
            FlatAtom::Join(x, y, z) => write!(f, "{x} = {y} v {z}"),
            FlatAtom::Not(x, y) => write!(f, "{x} = ~{y}"),
            FlatAtom::Eq(x, y) => write!(f, "{x} = {y}"),
            FlatAtom::Zero(x) => write!(f, "{x} = 0"),
            FlatAtom::One(x) => write!(f, "{x} = 1"),
        }
    }
}

pub type FlatSentence = Formula<FlatAtom>;

impl fmt::Display for Formula<FlatAtom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::sentence::write_sentence(self, 0, f)
    }
}

struct Fresh {
    used: BTreeSet<String>,
    next: usize,
}

impl Fresh {
    fn name(&mut self) -> String {
        loop {
            let c = format!("t{}", self.next);
            self.next += 1;
            if self.used.insert(c.clone()) {
                return c;
            }
        }
    }
}

/// Structural key of a compound node over already-named children.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Meet(String, String),
    Join(String, String),
    Not(String),
    Top,
    Bot,
}

struct AtomFlattener<'f> {
    fresh: &'f mut Fresh,
    by_node: HashMap<*const TermNode, String>,
    by_key: HashMap<Key, String>,
    names: Vec<String>,
    defs: Vec<Formula<FlatAtom>>,
    /// Keeps every visited node alive so pointer keys stay unique.
    _pin: Vec<Term>,
}

impl AtomFlattener<'_> {
    fn name_of(&mut self, t: &Term) -> String {
        if let TermNode::Var(v) = t.node() {
            return v.clone();
        }
        if let Some(n) = self.by_node.get(&t.id()) {
            return n.clone();
        }
        let key = match t.node() {
            TermNode::Meet(a, b) => Key::Meet(self.name_of(a), self.name_of(b)),
            TermNode::Join(a, b) => Key::Join(self.name_of(a), self.name_of(b)),
            TermNode::Not(a) => Key::Not(self.name_of(a)),
            TermNode::Top => Key::Top,
            TermNode::Bot => Key::Bot,
            TermNode::Var(_) => unreachable!(),
        };
        let name = match self.by_key.get(&key) {
            Some(n) => n.clone(),
            None => {
                let x = self.fresh.name();
                let def = match key.clone() {
                    Key::Meet(a, b) => FlatAtom::Meet(x.clone(), a, b),
                    Key::Join(a, b) => FlatAtom::Join(x.clone(), a, b),
                    Key::Not(a) => FlatAtom::Not(x.clone(), a),
                    Key::Top => FlatAtom::One(x.clone()),
                    Key::Bot => FlatAtom::Zero(x.clone()),
                };
                self.defs.push(Formula::Atom(def));
                self.names.push(x.clone());
                self.by_key.insert(key, x.clone());
                x
            }
        };
        self.by_node.insert(t.id(), name.clone());
        self._pin.push(t.clone());
        name
    }
}

/// Replaces each atom `l = r` by `forall t1..tk. (defs) -> a = b`, where the
/// `ti` name the distinct compound subterms of the atom in post-order
/// (left side first) and `defs` are their defining flat atoms. Atoms between
/// variables stay as they are; `l <= r` is first read as `l = l ^ r`.
///
/// Fresh names are `t1, t2, ...`, skipping names already in the sentence.
pub fn flatten(s: &LatticeSentence) -> Result<FlatSentence> {
    let s = desugar_leq(&check_closed(s)?);
    let mut fresh = Fresh {
        used: s.bound_vars().into_iter().cloned().collect(),
        next: 1,
    };
    Ok(s.transform(
        &mut |atom| {
            let LatticeAtom::Eq(l, r) = atom else {
                unreachable!("order atoms are desugared")
            };
            let mut fl = AtomFlattener {
                fresh: &mut fresh,
                by_node: HashMap::new(),
                by_key: HashMap::new(),
                names: Vec::new(),
                defs: Vec::new(),
                _pin: Vec::new(),
            };
            let a = fl.name_of(l);
            let b = fl.name_of(r);
            let concl = Formula::Atom(FlatAtom::Eq(a, b));
            if fl.defs.is_empty() {
                return concl;
            }
            Formula::forall(fl.names, Formula::implies(Formula::and(fl.defs), concl))
        },
        &mut |vs| vs.to_vec(),
    ))
}

/// Number of fresh variables introduced by [`flatten`].
pub fn fresh_count(source: &LatticeSentence, flat: &FlatSentence) -> usize {
    flat.bound_vars().len() - source.bound_vars().len()
}
