//! Splitting complex variables and equations into real and imaginary parts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::encode::{CFactor, CPoly, ComplexSentence};
use super::formula::{AtomVars, Formula};
use crate::rational::Rational;

/// Polynomial with rational coefficients over real variables; monomials are
/// sorted variable lists (repeats for powers).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Vec<String>, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn var(name: impl Into<String>) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![name.into()], Rational::one());
        p
    }

    fn add_term(&mut self, mut m: Vec<String>, c: Rational) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Value at a point; variables missing from `at` are an error.
    pub fn eval(&self, at: &BTreeMap<String, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m {
                t = &t * at.get(v)?;
            }
            acc += &t;
        }
        Some(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || m.is_empty() {
                parts.push(c.to_string());
            }
            parts.extend(m.iter().cloned());
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl AtomVars for Poly {
    fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flatten().cloned().collect()
    }
}

/// Atoms are `p = 0` over the reals.
pub type RealSentence = Formula<Poly>;

pub fn re_name(z: &str) -> String {
    format!("{z}.re")
}

pub fn im_name(z: &str) -> String {
    format!("{z}.im")
}

/// Real and imaginary parts of a complex polynomial.
pub fn split(p: &CPoly) -> (Poly, Poly) {
    let mut re = Poly::zero();
    let mut im = Poly::zero();
    for (m, c) in p.terms() {
        let (mut a, mut b) = (Poly::constant(c.re().clone()), Poly::constant(c.im().clone()));
        for x in m {
            let (xr, xi) = match x {
                CFactor::Var(z) => (Poly::var(re_name(z)), Poly::var(im_name(z))),
                CFactor::Conj(z) => (Poly::var(re_name(z)), Poly::var(im_name(z)).neg()),
            };
            let na = a.mul(&xr).sub(&b.mul(&xi));
            let nb = a.mul(&xi).add(&b.mul(&xr));
            a = na;
            b = nb;
        }
        re = re.add(&a);
        im = im.add(&b);
    }
    (re, im)
}

/// Each complex variable becomes a `(re, im)` pair and each complex
/// equation the two real equations of its parts; identically zero parts are
/// dropped.
pub fn complex_to_real(c: &ComplexSentence) -> RealSentence {
    c.transform(
        &mut |p| {
            let (re, im) = split(p);
            let parts: Vec<RealSentence> = [re, im]
                .into_iter()
                .filter(|q| !q.is_zero())
                .map(Formula::Atom)
                .collect();
            Formula::and(parts)
        },
        &mut |vs| vs.iter().flat_map(|z| [re_name(z), im_name(z)]).collect(),
    )
}
