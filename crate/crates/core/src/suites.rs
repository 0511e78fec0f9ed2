//! Property suites over L(ℂⁿ): bounds and classifications for α, the
//! separation hierarchy, the lattice laws, transport of counterexamples into
//! larger spaces, and the two-route meet oracle.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::{eval, eval_sides, holds, holds_with, Assignment, MeetRoute};
use crate::checker::{
    certify, check, coordinate_family, family_tuple, random_assignment, tuple_plan, Status, Strategy,
    DEFAULT_COEFF_BOUND, DEFAULT_MAX_TUPLES, DEFAULT_SAMPLES,
};
use crate::error::{Error, Result};
use crate::formulas::{self, alpha, beta, gamma_distinct_lines};
use crate::subspace::Subspace;
use crate::term::{Equation, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random samples per ambient for the bound, law and β suites.
    pub samples: usize,
    /// Random samples per ambient for each separation level.
    pub separation_samples: usize,
    pub max_i: usize,
    pub coeff_bound: i64,
    pub ambients: Vec<usize>,
    pub max_tuples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            samples: DEFAULT_SAMPLES,
            separation_samples: 1_000,
            max_i: 2,
            coeff_bound: DEFAULT_COEFF_BOUND,
            ambients: vec![2, 3, 4, 5],
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

/// One checked claim.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    pub samples: usize,
    pub status: Outcome,
    pub detail: String,
    /// Assignment fixture backing the claim: the falsifying assignment on
    /// failure, or the witness for existence claims.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl SuiteRecord {
    fn new(suite: Suite, check: impl Into<String>, ambient: Option<usize>, samples: usize) -> Self {
        SuiteRecord {
            suite: suite.name().to_string(),
            check: check.into(),
            ambient,
            samples,
            status: Outcome::Pass,
            detail: String::new(),
            certificate: None,
        }
    }

    fn verdict(mut self, ok: bool, detail: impl Into<String>) -> Self {
        self.status = if ok { Outcome::Pass } else { Outcome::Fail };
        self.detail = detail.into();
        self
    }

    fn certificate(mut self, a: &Assignment) -> Self {
        self.certificate = Some(a.to_fixture());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Outcome::Pass
    }
}

impl fmt::Display for SuiteRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}", self.suite, self.check)?;
        if let Some(n) = self.ambient {
            write!(f, " C^{n}")?;
        }
        write!(f, " samples={}: {}", self.samples, self.detail)?;
        if let (Outcome::Fail, Some(c)) = (self.status, &self.certificate) {
            for line in c.lines() {
                write!(f, "\n    {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub records: Vec<SuiteRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(SuiteRecord::passed)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        let failed = self.records.iter().filter(|r| !r.passed()).count();
        writeln!(f, "{} checks, {failed} failed", self.records.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `2·dim α(p,q,r) ≤ n`, attained by the graph triple.
    AlphaBound,
    /// On ℂ², α ≠ 0 exactly at three distinct lines, where it equals `¬p`.
    AlphaLines,
    Separation,
    Laws,
    /// Counterexamples survive embedding into larger spaces.
    Embedding,
    /// Direct and De Morgan meets agree.
    Oracle,
    Beta,
    Gamma,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Beta,
        Suite::AlphaBound,
        Suite::AlphaLines,
        Suite::Separation,
        Suite::Laws,
        Suite::Embedding,
        Suite::Oracle,
        Suite::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AlphaBound => "alpha-bound",
            Suite::AlphaLines => "alpha-lines",
            Suite::Separation => "separation",
            Suite::Laws => "laws",
            Suite::Embedding => "embedding",
            Suite::Oracle => "oracle",
            Suite::Beta => "beta",
            Suite::Gamma => "gamma",
        }
    }

    pub fn run(self, cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
        match self {
            Suite::AlphaBound => alpha_bound(cfg),
            Suite::AlphaLines => alpha_lines(),
            Suite::Separation => separation(cfg),
            Suite::Laws => laws(cfg),
            Suite::Embedding => embedding(cfg),
            Suite::Oracle => oracle(cfg),
            Suite::Beta => beta_suite(cfg),
            Suite::Gamma => gamma(),
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![name.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "alpha-bound" | "lemma2" => Suite::AlphaBound,
            "alpha-lines" | "lemma3" => Suite::AlphaLines,
            "separation" => Suite::Separation,
            "laws" => Suite::Laws,
            "embedding" | "lemma4" => Suite::Embedding,
            "oracle" => Suite::Oracle,
            "beta" => Suite::Beta,
            "gamma" => Suite::Gamma,
            _ => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Err(Error::InvalidArgument(format!(
                    "unknown suite `{s}` (expected all, {})",
                    names.join(", ")
                )));
            }
        })
    }
}

pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for s in suites {
        report.records.extend(s.run(cfg)?);
    }
    Ok(report)
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn par_map<T: Send>(count: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..count).into_par_iter().map(f).collect()
}

fn alpha_bound(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let vars = names(&["p", "q", "r"]);
    let a = alpha();
    let mut out = Vec::new();
    for &n in &cfg.ambients {
        let sample = |i| random_assignment(&vars, n, cfg.seed, i, cfg.coeff_bound);
        let dims = par_map(cfg.samples, |i| Ok(eval(&a, &sample(i)?)?.dim()))?;
        let max = dims.iter().copied().max().unwrap_or(0);
        let rec = SuiteRecord::new(Suite::AlphaBound, "2*dim(alpha) <= n", Some(n), cfg.samples);
        out.push(match dims.iter().position(|&d| 2 * d > n) {
            None => rec.verdict(true, format!("max dim {max}, bound {}", n / 2)),
            Some(i) => rec
                .verdict(false, format!("sample {i} has dim {} > {}", dims[i], n / 2))
                .certificate(&sample(i)?),
        });
    }
    let w = formulas::graph_triple(4)?;
    let d = eval(&a, &w)?.dim();
    out.push(
        SuiteRecord::new(Suite::AlphaBound, "graph triple attains n/2", Some(4), 1)
            .verdict(d == 2, format!("dim(alpha) = {d}"))
            .certificate(&w),
    );
    Ok(out)
}

fn is_line_triple(p: &Subspace, q: &Subspace, r: &Subspace) -> bool {
    p.dim() == 1 && q.dim() == 1 && r.dim() == 1 && p != q && q != r && p != r
}

fn alpha_lines() -> Result<Vec<SuiteRecord>> {
    let family = coordinate_family(2, 4)?;
    let vars = names(&["p", "q", "r"]);
    let a = alpha();
    let total = family.len().pow(3);
    let results = par_map(total, |i| {
        let t = family_tuple(&vars, &family, i, false)?;
        let (p, q, r) = (&t.get("p").unwrap(), &t.get("q").unwrap(), &t.get("r").unwrap());
        let v = eval(&a, &t)?;
        let distinct = is_line_triple(p, q, r);
        let ok = if distinct { v == p.complement() } else { v.is_zero() };
        Ok((ok, distinct))
    })?;
    let lines = results.iter().filter(|(_, d)| *d).count();
    let rec = SuiteRecord::new(Suite::AlphaLines, "alpha != 0 iff three distinct lines", Some(2), total);
    let lines_in_family = family.iter().filter(|s| s.dim() == 1).count();
    Ok(vec![match results.iter().position(|(ok, _)| !ok) {
        None => rec.verdict(
            true,
            format!(
                "{total} triples over {lines_in_family} lines, 0 and 1; alpha = ~p on the {lines} distinct-line triples, 0 elsewhere"
            ),
        ),
        Some(i) => rec
            .verdict(false, format!("triple {i} breaks the classification"))
            .certificate(&family_tuple(&vars, &family, i, false)?),
    }])
}

fn separation(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let mut out = Vec::new();
    for i in 0..=cfg.max_i {
        let eq = formulas::separation_equation(i);
        let check_name = format!("alpha^{} = 0", i + 1);
        for k in 0..=i {
            let n = 1usize << k;
            let strategies = [
                Strategy::CoordinateFamily {
                    extra_lines: 3,
                    max_tuples: cfg.max_tuples,
                },
                Strategy::Random {
                    seed: cfg.seed,
                    count: cfg.separation_samples,
                    coeff_bound: cfg.coeff_bound,
                },
            ];
            let v = check(&eq, n, &strategies)?;
            let rec = SuiteRecord::new(
                Suite::Separation,
                format!("{check_name} holds"),
                Some(n),
                v.samples_tried,
            );
            out.push(match v.counterexample {
                None => rec.verdict(true, format!("holds on samples; {}", v.strategy_log.join("; "))),
                Some(c) => rec
                    .verdict(false, format!("counterexample from {} sample {}", c.strategy, c.index))
                    .certificate(&c.assignment),
            });
        }
        let w = formulas::separation_witness(i);
        let (l, r) = eval_sides(&eq, &w, MeetRoute::Direct)?;
        let ok = l.dim() == 1 && r.is_zero() && certify(&eq, &w).is_ok();
        out.push(
            SuiteRecord::new(Suite::Separation, format!("{check_name} fails"), Some(w.ambient()), 1)
                .verdict(ok, format!("witness gives dim {}", l.dim()))
                .certificate(&w),
        );
    }
    Ok(out)
}

const LAWS: [&str; 6] = [
    "orthomodular",
    "modular",
    "de-morgan",
    "eq-char",
    "eq-char-dual",
    "dimension",
];

fn pair(p: &Subspace, q: &Subspace) -> Result<Assignment> {
    Assignment::new(p.ambient()).with("p", p.clone())?.with("q", q.clone())
}

/// Bit `k` set when `LAWS[k]` fails at `a`.
fn law_failures(a: &Assignment, eqs: &[Equation; 4]) -> Result<u8> {
    let [oml, modular, eq_char, eq_char_dual] = eqs;
    let (p, q, r) = (a.get("p").unwrap(), a.get("q").unwrap(), a.get("r").unwrap());
    let np = p.complement();
    let nq = q.complement();
    let de_morgan = np.complement() == *p
        && p.meet(q)?.complement() == np.join(&nq)?
        && p.join(q)?.complement() == np.meet(&nq)?
        && p.meet(&np)?.is_zero();
    let perturbed = p.join(r)?;
    let mut char_ok = [true, true];
    for other in [p, q, &perturbed] {
        let b = pair(p, other)?;
        for (k, eq) in [eq_char, eq_char_dual].into_iter().enumerate() {
            char_ok[k] &= holds(eq, &b)? == (p == other);
        }
    }
    let dims = p.join(q)?.dim() + p.meet(q)?.dim() == p.dim() + q.dim();
    let ok = [
        holds(oml, a)?,
        holds(modular, a)?,
        de_morgan,
        char_ok[0],
        char_ok[1],
        dims,
    ];
    Ok(ok
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .fold(0, |m, (k, _)| m | 1 << k))
}

fn laws(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let vars = names(&["p", "q", "r"]);
    let eqs = [
        formulas::orthomodular_law(),
        formulas::modular_law(),
        formulas::equality_characterization(),
        formulas::equality_characterization_dual(),
    ];
    let mut out = Vec::new();
    for &n in &cfg.ambients {
        let sample = |i| random_assignment(&vars, n, cfg.seed, i, cfg.coeff_bound);
        let masks = par_map(cfg.samples, |i| law_failures(&sample(i)?, &eqs))?;
        for (k, law) in LAWS.iter().enumerate() {
            let rec = SuiteRecord::new(Suite::Laws, *law, Some(n), cfg.samples);
            out.push(match masks.iter().position(|m| m & (1 << k) != 0) {
                None => rec.verdict(true, "no violations"),
                Some(i) => rec
                    .verdict(false, format!("violated at sample {i}"))
                    .certificate(&sample(i)?),
            });
        }
    }
    Ok(out)
}

/// Known falsifying assignments: the named witnesses plus counterexamples
/// found by search.
pub fn stored_counterexamples(cfg: &SuiteConfig) -> Result<Vec<(String, Equation, Assignment)>> {
    let zero = |t: Term| Equation::new(t, Term::bot());
    let mut out = vec![
        (
            "distributive/three-distinct-lines".to_string(),
            formulas::distributive_law(),
            formulas::distinct_lines_witness(),
        ),
        ("beta/witness".to_string(), zero(beta()), formulas::beta_witness()),
        (
            "alpha/graph-triple-4".to_string(),
            zero(alpha()),
            formulas::graph_triple(4)?,
        ),
        (
            "gamma-4/witness".to_string(),
            zero(gamma_distinct_lines(4)?),
            formulas::gamma4_witness(),
        ),
    ];
    for i in 0..=cfg.max_i {
        out.push((
            format!("separation-{i}/witness"),
            formulas::separation_equation(i),
            formulas::separation_witness(i),
        ));
    }
    let searches = [
        (
            "distributive/family-search",
            formulas::distributive_law(),
            2,
            Strategy::coordinate(3),
        ),
        (
            "distributive/random-search",
            formulas::distributive_law(),
            3,
            Strategy::random(cfg.seed, 200),
        ),
        (
            "equality/random-search",
            Equation::parse("p = q").expect("static"),
            3,
            Strategy::random(cfg.seed, 200),
        ),
    ];
    for (name, eq, n, strategy) in searches {
        let v = check(&eq, n, &[strategy])?;
        if let Some(c) = v.counterexample {
            out.push((name.to_string(), eq, c.assignment));
        }
    }
    Ok(out)
}

fn embedding(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let mut out = Vec::new();
    for (name, eq, a) in stored_counterexamples(cfg)? {
        let v = a.ambient();
        let mut failure = None;
        'outer: for w in [v + 1, v + 2] {
            for pad in [Subspace::full(w - v), Subspace::zero(w - v)] {
                let big = a.map_values(w, |s| s.embed(w, &pad))?;
                let (l, r) = eval_sides(&eq, &big, MeetRoute::Direct)?;
                if l == r {
                    failure = Some((w, pad.dim(), big));
                    break 'outer;
                }
            }
        }
        let rec = SuiteRecord::new(Suite::Embedding, name, Some(v), 4);
        out.push(match failure {
            None => rec.verdict(
                true,
                format!("still fails in C^{} and C^{} (pad 1 and 0)", v + 1, v + 2),
            ),
            Some((w, pad, big)) => rec
                .verdict(false, format!("holds in C^{w} with pad of dim {pad}"))
                .certificate(&big),
        });
    }
    Ok(out)
}

/// Equations on which the two meet routes are compared.
fn oracle_equations() -> Result<Vec<(String, Equation)>> {
    let zero = |t: Term| Equation::new(t, Term::bot());
    Ok(vec![
        ("orthomodular".into(), formulas::orthomodular_law()),
        ("modular".into(), formulas::modular_law()),
        ("distributive".into(), formulas::distributive_law()),
        ("eq-char".into(), formulas::equality_characterization()),
        ("eq-char-dual".into(), formulas::equality_characterization_dual()),
        ("alpha = 0".into(), zero(alpha())),
        ("beta = 0".into(), zero(beta())),
        ("gamma-4 = 0".into(), zero(gamma_distinct_lines(4)?)),
        ("separation-0".into(), formulas::separation_equation(0)),
        ("separation-1".into(), formulas::separation_equation(1)),
    ])
}

fn oracle(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let family = coordinate_family(3, 4)?;
    let pairs = family.len() * family.len();
    let bad = par_map(pairs, |k| {
        let (p, q) = (&family[k / family.len()], &family[k % family.len()]);
        Ok(p.meet(q)? != p.meet_de_morgan(q)?)
    })?;
    let rec = SuiteRecord::new(Suite::Oracle, "meet routes agree on pairs", Some(3), pairs);
    let mut out = vec![match bad.iter().position(|b| *b) {
        None => rec.verdict(true, format!("all {pairs} pairs over {} subspaces", family.len())),
        Some(k) => rec
            .verdict(false, "routes disagree")
            .certificate(&pair(&family[k / family.len()], &family[k % family.len()])?),
    }];
    for (name, eq) in oracle_equations()? {
        let vars: Vec<String> = eq.free_vars().into_iter().collect();
        let (count, sampled, _) = tuple_plan(vars.len(), family.len(), cfg.max_tuples);
        let tuple = |i| family_tuple(&vars, &family, i, sampled);
        let bad = par_map(count, |i| {
            let a = tuple(i)?;
            Ok(holds_with(&eq, &a, MeetRoute::Direct)? != holds_with(&eq, &a, MeetRoute::DeMorgan)?)
        })?;
        let rec = SuiteRecord::new(Suite::Oracle, format!("routes agree on {name}"), Some(3), count);
        let how = if sampled { "sampled" } else { "all" };
        out.push(match bad.iter().position(|b| *b) {
            None => rec.verdict(true, format!("{how} {count} family tuples")),
            Some(i) => rec
                .verdict(false, "holds differs between routes")
                .certificate(&tuple(i)?),
        });
    }
    Ok(out)
}

fn beta_suite(cfg: &SuiteConfig) -> Result<Vec<SuiteRecord>> {
    let w = formulas::beta_witness();
    let v = eval(&beta(), &w)?;
    let target = Subspace::coordinate(4, 0b1000);
    let mut out = vec![SuiteRecord::new(Suite::Beta, "beta at witness = span{e4}", Some(4), 1)
        .verdict(v == target, format!("value {v}"))
        .certificate(&w)];
    let eq = Equation::new(beta(), Term::bot());
    let runs = [
        (
            "beta = 0 on family",
            Strategy::CoordinateFamily {
                extra_lines: 5,
                max_tuples: 9usize.pow(4),
            },
        ),
        (
            "beta = 0 on random",
            Strategy::Random {
                seed: cfg.seed,
                count: cfg.samples,
                coeff_bound: cfg.coeff_bound,
            },
        ),
    ];
    for (name, s) in runs {
        let v = check(&eq, 2, &[s])?;
        let rec = SuiteRecord::new(Suite::Beta, name, Some(2), v.samples_tried);
        out.push(match v.counterexample {
            None => rec.verdict(v.status == Status::HoldsOnSamples, v.strategy_log.join("; ")),
            Some(c) => rec
                .verdict(false, format!("beta = {}", c.lhs))
                .certificate(&c.assignment),
        });
    }
    Ok(out)
}

fn gamma() -> Result<Vec<SuiteRecord>> {
    let g = gamma_distinct_lines(4)?;
    let w = formulas::gamma4_witness();
    let v = eval(&g, &w)?;
    let mut out = vec![SuiteRecord::new(Suite::Gamma, "gamma-4 nonzero at witness", Some(2), 1)
        .verdict(!v.is_zero(), format!("value {v}"))
        .certificate(&w)];
    let lines: Vec<Subspace> = coordinate_family(2, 4)?.into_iter().filter(|s| s.dim() == 1).collect();
    let vars = formulas::gamma_vars(4);
    let total = lines.len().pow(4);
    let results = par_map(total, |i| {
        let a = family_tuple(&vars, &lines, i, false)?;
        let vals: Vec<&Subspace> = vars.iter().map(|v| a.get(v).unwrap()).collect();
        let distinct = (0..4).all(|x| (x + 1..4).all(|y| vals[x] != vals[y]));
        Ok((distinct, !eval(&g, &a)?.is_zero()))
    })?;
    let distinct = results.iter().filter(|(d, _)| *d).count();
    let nonzero = results.iter().filter(|(_, nz)| *nz).count();
    let rec = SuiteRecord::new(Suite::Gamma, "gamma-4 = 0 when two lines coincide", Some(2), total);
    out.push(match results.iter().position(|(d, nz)| *nz && !d) {
        None => rec.verdict(
            true,
            format!(
                "{total} tuples over {} lines: zero on all {} with a repeat, nonzero on {nonzero} of {distinct} distinct",
                lines.len(),
                total - distinct
            ),
        ),
        Some(i) => rec
            .verdict(false, format!("tuple {i} repeats a line but gamma-4 != 0"))
            .certificate(&family_tuple(&vars, &lines, i, false)?),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: 60,
            separation_samples: 20,
            max_i: 1,
            max_tuples: 500,
            ambients: vec![2, 3],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_at_small_scale() {
        let report = run_suites(&Suite::ALL, &small()).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.to_string().ends_with("0 failed\n"));
        for line in report.to_json_lines().lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["status"], "pass");
        }
    }

    #[test]
    fn names_and_aliases_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("lemma3".parse::<Suite>().unwrap(), Suite::AlphaLines);
        assert_eq!(Suite::parse_list("all").unwrap().len(), 8);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_carry_certificates() {
        let rec = SuiteRecord::new(Suite::Laws, "x", Some(2), 1)
            .verdict(false, "bad")
            .certificate(&formulas::distinct_lines_witness());
        let text = rec.to_string();
        assert!(text.starts_with("FAIL laws/x C^2 samples=1: bad\n    2"));
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = SuiteConfig { samples: 30, ..small() };
        let a = run_suites(&[Suite::Laws, Suite::AlphaBound], &cfg).unwrap();
        let b = run_suites(&[Suite::Laws, Suite::AlphaBound], &cfg).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
    }
}
