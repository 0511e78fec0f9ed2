//! Generators for the named terms, equations and witnesses of the
//! quantum-logic hierarchy.
//!
//! * `α(p,q,r) = (a ∨ b) ∧ (¬a ∨ ¬b)` with `a = p ∨ (q ∧ r)` and
//!   `b = (p ∨ q) ∧ (p ∨ r)` vanishes identically iff distributivity holds.
//! * `β(p,q,r,s) = α(α(p,q,r), ¬α(p,q,r) ∧ ¬p, s)` vanishes on ℂ² but not on ℂ⁴.
//! * `αᵐ = α|_{αᵐ⁻¹}(pₘ,qₘ,rₘ)` has dimension at most `n / 2ᵐ` on ℂⁿ, so
//!   `αⁱ⁺¹ = 0` holds on ℂ^(2ⁱ) and fails on ℂ^(2ⁱ⁺¹).
//! * `γ_k` nests α so that nonvanishing on ℂ² forces `k` distinct lines.

use std::fmt;
use std::str::FromStr;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;
use crate::term::{Equation, Term};

/// `α` applied to arbitrary argument terms.
pub fn alpha_of(p: &Term, q: &Term, r: &Term) -> Term {
    let a = Term::join(p.clone(), Term::meet(q.clone(), r.clone()));
    let b = Term::meet(Term::join(p.clone(), q.clone()), Term::join(p.clone(), r.clone()));
    Term::meet(
        Term::join(a.clone(), b.clone()),
        Term::join(Term::negate(a), Term::negate(b)),
    )
}

/// The distributivity test formula over `p, q, r`.
pub fn alpha() -> Term {
    alpha_of(&Term::var("p"), &Term::var("q"), &Term::var("r"))
}

/// `β(p,q,r,s) = α(α(p,q,r), ¬α(p,q,r) ∧ ¬p, s)`.
pub fn beta() -> Term {
    let p = Term::var("p");
    let inner = alpha_of(&p, &Term::var("q"), &Term::var("r"));
    let second = Term::meet(Term::negate(inner.clone()), Term::negate(p));
    alpha_of(&inner, &second, &Term::var("s"))
}

/// Variable names `pₘ, qₘ, rₘ` of level `m`, rendered `pm, qm, rm`.
pub fn level_vars(m: usize) -> [String; 3] {
    [format!("p{m}"), format!("q{m}"), format!("r{m}")]
}

fn level_alpha(m: usize) -> Term {
    let [p, q, r] = level_vars(m);
    alpha_of(&Term::var(p), &Term::var(q), &Term::var(r))
}

/// The iterated restriction `αᵐ` over `p1..pm, q1..qm, r1..rm`.
pub fn alpha_iter(m: usize) -> Result<Term> {
    if m == 0 {
        return Err(Error::InvalidArgument("alpha_iter needs m >= 1".into()));
    }
    let mut acc = level_alpha(1);
    for level in 2..=m {
        acc = level_alpha(level).restrict(&acc);
    }
    Ok(acc)
}

/// `αⁱ⁺¹ = 0`: true on ℂ^(2ⁱ), false on ℂ^(2ⁱ⁺¹).
pub fn separation_equation(i: usize) -> Equation {
    Equation::new(alpha_iter(i + 1).expect("i + 1 >= 1"), Term::bot())
}

fn unit(n: usize, k: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[k] = GaussianRational::one();
    v
}

fn span_rows(n: usize, rows: Vec<Vec<GaussianRational>>) -> Subspace {
    let m = Matrix::from_rows(n, rows).expect("rows have n entries");
    Subspace::from_spanning(&m, n).expect("width matches")
}

/// Two complementary half-blocks of `coords` and the graph subspace
/// `{e_a + e_b}` pairing them. The three pairwise intersect trivially.
fn graph_triple_on(n: usize, coords: &[usize]) -> (Subspace, Subspace, Subspace) {
    let h = coords.len() / 2;
    let (lo, hi) = coords.split_at(h);
    let p = span_rows(n, lo.iter().map(|&k| unit(n, k)).collect());
    let q = span_rows(n, hi.iter().map(|&k| unit(n, k)).collect());
    let r = span_rows(
        n,
        lo.iter()
            .zip(hi)
            .map(|(&a, &b)| {
                let mut v = unit(n, a);
                v[b] = GaussianRational::one();
                v
            })
            .collect(),
    );
    (p, q, r)
}

/// Assignment over ℂ^(2ⁱ⁺¹) on which `αⁱ⁺¹` evaluates to a line.
///
/// Level 1 uses the first-half/second-half/graph triple of the whole space,
/// whose α-value is the second half. Each later level repeats the pattern
/// inside the previous level's α-value, halving the dimension each time.
pub fn separation_witness(i: usize) -> Assignment {
    let n = 1usize << (i + 1);
    let mut coords: Vec<usize> = (0..n).collect();
    let mut a = Assignment::new(n);
    for m in 1..=i + 1 {
        let (p, q, r) = graph_triple_on(n, &coords);
        debug_assert!(p.meet(&q).unwrap().is_zero() && p.meet(&r).unwrap().is_zero() && q.meet(&r).unwrap().is_zero());
        let [pn, qn, rn] = level_vars(m);
        a.bind(pn, p).expect("ambient n");
        a.bind(qn, q).expect("ambient n");
        a.bind(rn, r).expect("ambient n");
        coords = coords.split_off(coords.len() / 2);
    }
    a
}

/// Record that `αⁱ⁺¹ = 0` separates ℂ^(2ⁱ) from ℂ^(2ⁱ⁺¹).
#[derive(Clone, Debug)]
pub struct SeparationCertificate {
    pub level: usize,
    pub equation: Equation,
    pub holds_in_dim: usize,
    pub witness: Assignment,
}

impl SeparationCertificate {
    pub fn new(level: usize) -> Self {
        SeparationCertificate {
            level,
            equation: separation_equation(level),
            holds_in_dim: 1 << level,
            witness: separation_witness(level),
        }
    }
}

/// `(p, q, r)` = (first half, second half, graph) in ℂⁿ for even `n`.
/// Its α-value has dimension exactly `n / 2`.
pub fn graph_triple(n: usize) -> Result<Assignment> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "graph triple needs an even ambient, got {n}"
        )));
    }
    let coords: Vec<usize> = (0..n).collect();
    let (p, q, r) = graph_triple_on(n, &coords);
    Assignment::new(n).with("p", p)?.with("q", q)?.with("r", r)
}

fn line2(a: (i64, i64), b: (i64, i64)) -> Subspace {
    Subspace::line(vec![
        GaussianRational::from_ints(a.0, a.1),
        GaussianRational::from_ints(b.0, b.1),
    ])
}

/// The ℂ⁴ assignment `p = span{e₁,e₂}, q = ¬p, r = span{e₁, e₂+e₃},
/// s = span{e₁, e₃+e₄}` under which `β = span{e₄}`.
pub fn beta_witness() -> Assignment {
    let n = 4;
    let e = |k: usize| unit(n, k);
    let sum = |a: usize, b: usize| {
        let mut v = unit(n, a);
        v[b] = GaussianRational::one();
        v
    };
    let p = span_rows(n, vec![e(0), e(1)]);
    let q = p.complement();
    let r = span_rows(n, vec![e(0), sum(1, 2)]);
    let s = span_rows(n, vec![e(0), sum(2, 3)]);
    Assignment::new(n)
        .with("p", p)
        .and_then(|a| a.with("q", q))
        .and_then(|a| a.with("r", r))
        .and_then(|a| a.with("s", s))
        .expect("all in C^4")
}

/// Three distinct lines of ℂ²: `e₁`, `e₂`, `e₁ + e₂`.
pub fn distinct_lines_witness() -> Assignment {
    Assignment::new(2)
        .with("p", line2((1, 0), (0, 0)))
        .and_then(|a| a.with("q", line2((0, 0), (1, 0))))
        .and_then(|a| a.with("r", line2((1, 0), (1, 0))))
        .expect("all in C^2")
}

/// Four lines of ℂ² under which `γ₄` is nonzero.
pub fn gamma4_witness() -> Assignment {
    Assignment::new(2)
        .with("p", line2((1, 0), (0, 0)))
        .and_then(|a| a.with("q", line2((1, 0), (1, 0))))
        .and_then(|a| a.with("r", line2((1, 0), (0, 1))))
        .and_then(|a| a.with("s", line2((1, 0), (2, 0))))
        .expect("all in C^2")
}

/// Every named witness, tried first by the checker.
pub fn named_witnesses() -> Vec<(String, Assignment)> {
    let mut out = vec![
        ("three-distinct-lines".to_string(), distinct_lines_witness()),
        ("beta".to_string(), beta_witness()),
        ("graph-triple-4".to_string(), graph_triple(4).expect("even")),
        ("gamma-4".to_string(), gamma4_witness()),
    ];
    for i in 0..=2 {
        out.push((format!("separation-{i}"), separation_witness(i)));
    }
    out
}

/// `p ∧ (¬p ∨ (p ∧ q)) = p ∧ q`.
pub fn orthomodular_law() -> Equation {
    Equation::parse("p ^ (~p v (p ^ q)) = p ^ q").expect("static")
}

/// `(p ∧ r) ∨ (q ∧ r) = ((p ∧ r) ∨ q) ∧ r`.
pub fn modular_law() -> Equation {
    Equation::parse("(p ^ r) v (q ^ r) = ((p ^ r) v q) ^ r").expect("static")
}

/// `p ∨ (q ∧ r) = (p ∨ q) ∧ (p ∨ r)`; fails from ℂ² upward.
pub fn distributive_law() -> Equation {
    Equation::parse("p v (q ^ r) = (p v q) ^ (p v r)").expect("static")
}

/// `(p ∨ q) ∧ (¬p ∨ ¬q) = 0`, which holds at `(p, q)` exactly when `p = q`.
pub fn equality_characterization() -> Equation {
    Equation::parse("(p v q) ^ (~p v ~q) = 0").expect("static")
}

/// `(¬p ∧ ¬q) ∨ (p ∧ q) = 1`, the dual form of the characterization.
pub fn equality_characterization_dual() -> Equation {
    Equation::parse("(~p ^ ~q) v (p ^ q) = 1").expect("static")
}

/// Variable names used by [`gamma_distinct_lines`].
pub fn gamma_vars(k: usize) -> Vec<String> {
    (1..=k)
        .map(|j| match j {
            1 => "p".to_string(),
            2 => "q".to_string(),
            3 => "r".to_string(),
            4 => "s".to_string(),
            _ => format!("x{j}"),
        })
        .collect()
}

/// `γ₃ = α(p,q,r)`; `γ_k` wraps `γ_{k-1}` once per earlier variable `v_j`
/// as `α(·, v_j, v_k)`. For `k = 4` this is `α(α(α(α(p,q,r),p,s),q,s),r,s)`.
/// The pattern for `k > 4` extends the printed `k = 4` case.
pub fn gamma_distinct_lines(k: usize) -> Result<Term> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("gamma needs k >= 3, got {k}")));
    }
    let vars: Vec<Term> = gamma_vars(k).into_iter().map(Term::var).collect();
    let mut g = alpha_of(&vars[0], &vars[1], &vars[2]);
    for newest in 3..k {
        for earlier in &vars[..newest] {
            g = alpha_of(&g, earlier, &vars[newest]);
        }
    }
    Ok(g)
}

/// A formula selector, as accepted by the CLI's `emit` and `witness` commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Alpha,
    Beta,
    AlphaIter(usize),
    Gamma(usize),
    Orthomodular,
    Modular,
    Distributive,
    EqChar,
    EqCharDual,
    Separation(usize),
}

/// Either a bare term or a full equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Term(Term),
    Equation(Equation),
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Term(t) => write!(f, "{t}"),
            Formula::Equation(e) => write!(f, "{e}"),
        }
    }
}

impl Formula {
    /// Equations stay as they are; a bare term `t` becomes `t = 0`.
    pub fn into_equation(self) -> Equation {
        match self {
            Formula::Term(t) => Equation::new(t, Term::bot()),
            Formula::Equation(e) => e,
        }
    }
}

impl Named {
    pub fn build(self) -> Result<Formula> {
        Ok(match self {
            Named::Alpha => Formula::Term(alpha()),
            Named::Beta => Formula::Term(beta()),
            Named::AlphaIter(m) => Formula::Term(alpha_iter(m)?),
            Named::Gamma(k) => Formula::Term(gamma_distinct_lines(k)?),
            Named::Orthomodular => Formula::Equation(orthomodular_law()),
            Named::Modular => Formula::Equation(modular_law()),
            Named::Distributive => Formula::Equation(distributive_law()),
            Named::EqChar => Formula::Equation(equality_characterization()),
            Named::EqCharDual => Formula::Equation(equality_characterization_dual()),
            Named::Separation(i) => Formula::Equation(separation_equation(i)),
        })
    }

    /// The witness assignment associated with a selector, if any.
    pub fn witness(self) -> Option<Assignment> {
        match self {
            Named::Alpha => Some(distinct_lines_witness()),
            Named::Beta => Some(beta_witness()),
            Named::Gamma(4) => Some(gamma4_witness()),
            Named::Separation(i) => Some(separation_witness(i)),
            Named::AlphaIter(m) if m >= 1 => Some(separation_witness(m - 1)),
            _ => None,
        }
    }
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown formula `{s}`"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("alpha", None) => Named::Alpha,
            ("beta", None) => Named::Beta,
            ("alpha-iter", Some(m)) => Named::AlphaIter(m),
            ("gamma", Some(k)) => Named::Gamma(k),
            ("oml", None) => Named::Orthomodular,
            ("modular", None) => Named::Modular,
            ("distributive", None) => Named::Distributive,
            ("eq-char", None) => Named::EqChar,
            ("eq-char-dual", None) => Named::EqCharDual,
            ("separation", Some(i)) => Named::Separation(i),
            _ => return Err(bad()),
        })
    }
}
