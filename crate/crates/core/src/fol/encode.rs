//! Kernel encoding: subspaces of ℂⁿ as kernels of n×n complex matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::flatten::{FlatAtom, FlatSentence};
use super::formula::{AtomVars, Formula};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CFactor {
    Var(String),
    /// Complex conjugate of a variable.
    Conj(String),
}

impl CFactor {
    pub fn name(&self) -> &str {
        match self {
            CFactor::Var(v) | CFactor::Conj(v) => v,
        }
    }
}

/// Polynomial over complex variables and their conjugates with Gaussian
/// rational coefficients. Monomials are sorted factor lists; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CPoly {
    terms: BTreeMap<Vec<CFactor>, GaussianRational>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = CPoly::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(vec![CFactor::Var(name.to_string())])
    }

    pub fn conj(name: &str) -> Self {
        Self::monomial(vec![CFactor::Conj(name.to_string())])
    }

    fn monomial(factors: Vec<CFactor>) -> Self {
        let mut p = CPoly::zero();
        p.add_term(factors, GaussianRational::one());
        p
    }

    fn add_term(&mut self, mut factors: Vec<CFactor>, c: GaussianRational) {
        factors.sort();
        let slot = self.terms.entry(factors).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CFactor>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for CPoly {
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
                parts.push(if c.is_real() { c.to_string() } else { format!("({c})") });
            }
            parts.extend(m.iter().map(|x| match x {
                CFactor::Var(v) => v.clone(),
                CFactor::Conj(v) => format!("conj({v})"),
            }));
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl AtomVars for CPoly {
    fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flatten().map(|x| x.name().to_string()).collect()
    }
}

/// Atoms are `p = 0`.
pub type ComplexSentence = Formula<CPoly>;

/// Name of entry `(i, j)` (1-based) of the matrix standing for `x`.
pub fn matrix_entry(x: &str, i: usize, j: usize) -> String {
    format!("m.{x}.{i}.{j}")
}

fn matrix_entries(x: &str, n: usize) -> Vec<String> {
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| matrix_entry(x, i, j)))
        .collect()
}

fn vector(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("{prefix}.{j}")).collect()
}

/// `x̂·v = 0`, one equation per row.
fn in_kernel(x: &str, v: &[String]) -> ComplexSentence {
    let n = v.len();
    Formula::And(
        (1..=n)
            .map(|i| {
                let row = (1..=n).fold(CPoly::zero(), |acc, j| {
                    acc.add(&CPoly::var(&matrix_entry(x, i, j)).mul(&CPoly::var(&v[j - 1])))
                });
                Formula::Atom(row)
            })
            .collect(),
    )
}

fn is_zero_vector(v: &[String]) -> ComplexSentence {
    Formula::And(v.iter().map(|x| Formula::Atom(CPoly::var(x))).collect())
}

struct Encoder {
    n: usize,
    clause: usize,
}

impl Encoder {
    fn atom(&mut self, a: &FlatAtom) -> ComplexSentence {
        self.clause += 1;
        let (n, k) = (self.n, self.clause);
        let v = vector(&format!("v.{k}"), n);
        let x = a.target();
        let defining = match a {
            FlatAtom::Meet(_, y, z) => Formula::And(vec![in_kernel(y, &v), in_kernel(z, &v)]),
            FlatAtom::Eq(_, y) => in_kernel(y, &v),
            FlatAtom::Not(_, y) => {
                let w = vector(&format!("w.{k}.1"), n);
                let dot = v.iter().zip(&w).fold(CPoly::zero(), |acc, (vj, wj)| {
                    acc.add(&CPoly::conj(vj).mul(&CPoly::var(wj)))
                });
                Formula::Forall(
                    w.clone(),
                    Box::new(Formula::implies(in_kernel(y, &w), Formula::Atom(dot))),
                )
            }
            FlatAtom::Join(_, y, z) => {
                let ws: Vec<Vec<String>> = (1..=n).map(|i| vector(&format!("w.{k}.{i}"), n)).collect();
                let rs: Vec<String> = vector(&format!("r.{k}"), n);
                let mut parts: Vec<ComplexSentence> = ws
                    .iter()
                    .map(|w| Formula::Or(vec![in_kernel(y, w), in_kernel(z, w)]))
                    .collect();
                for j in 0..n {
                    let combo = (0..n).fold(CPoly::zero(), |acc, i| {
                        acc.add(&CPoly::var(&rs[i]).mul(&CPoly::var(&ws[i][j])))
                    });
                    parts.push(Formula::Atom(CPoly::var(&v[j]).sub(&combo)));
                }
                let mut bound: Vec<String> = ws.into_iter().flatten().collect();
                bound.extend(rs);
                Formula::Exists(bound, Box::new(Formula::And(parts)))
            }
            FlatAtom::Zero(_) => {
                return Formula::Forall(
                    v.clone(),
                    Box::new(Formula::implies(in_kernel(x, &v), is_zero_vector(&v))),
                );
            }
            FlatAtom::One(_) => return Formula::Forall(v.clone(), Box::new(in_kernel(x, &v))),
        };
        Formula::Forall(v.clone(), Box::new(Formula::iff(in_kernel(x, &v), defining)))
    }
}

/// Replaces each lattice variable by the n² entries of a matrix whose
/// kernel is the subspace, and each flat atom by its kernel condition:
///
/// - `x = y ^ z`: `forall v. x̂v = 0 <-> (ŷv = 0 & ẑv = 0)`
/// - `x = ~y`: `forall v. x̂v = 0 <-> forall w. (ŷw = 0 -> Σ conj(v_j) w_j = 0)`
/// - `x = y v z`: `forall v. x̂v = 0 <-> exists w¹..wⁿ r. ⋀ᵢ (ŷwⁱ = 0 | ẑwⁱ = 0) & ⋀ⱼ v_j = Σᵢ rᵢ wⁱ_j`
/// - `x = y`: `forall v. x̂v = 0 <-> ŷv = 0`
/// - `x = 0`: `forall v. x̂v = 0 -> v = 0`
/// - `x = 1`: `forall v. x̂v = 0`
///
/// Vector variables of the `k`-th atom are `v.k.j`, `w.k.i.j` and `r.k.i`.
pub fn encode_kernels(f: &FlatSentence, n: usize) -> Result<ComplexSentence> {
    if n == 0 {
        return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
    }
    let mut enc = Encoder { n, clause: 0 };
    Ok(f.transform(&mut |a| enc.atom(a), &mut |vs| {
        vs.iter().flat_map(|x| matrix_entries(x, n)).collect()
    }))
}
