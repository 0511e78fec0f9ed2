//! Searching for counterexamples to lattice equations in L(ℂⁿ).
//!
//! Sampling can refute an equation but never prove it, so a passing check is
//! reported as "holds on samples" and nothing stronger.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::{eval_sides, Assignment, MeetRoute};
use crate::error::{Error, Result};
use crate::formulas;
use crate::scalar::GaussianRational;
use crate::subspace::{random_subspace_with, Subspace};
use crate::term::Equation;

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_COEFF_BOUND: i64 = 3;
pub const DEFAULT_MAX_TUPLES: usize = 20_000;

/// Largest ambient dimension for which all 2ⁿ coordinate subspaces are listed.
pub const MAX_FAMILY_AMBIENT: usize = 4;

/// A deterministic source of assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The named witnesses of [`formulas::named_witnesses`] whose ambient
    /// matches and which bind every variable of the equation.
    NamedWitnesses,
    /// Tuples over [`coordinate_family`]; exhaustive when the product has at
    /// most `max_tuples` elements, otherwise a seeded sample of that size.
    CoordinateFamily { extra_lines: usize, max_tuples: usize },
    /// `count` assignments of random subspaces with uniformly random dimension.
    Random { seed: u64, count: usize, coeff_bound: i64 },
}

impl Strategy {
    pub fn coordinate(extra_lines: usize) -> Self {
        Strategy::CoordinateFamily {
            extra_lines,
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }

    pub fn random(seed: u64, count: usize) -> Self {
        Strategy::Random {
            seed,
            count,
            coeff_bound: DEFAULT_COEFF_BOUND,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Strategy::NamedWitnesses => "named-witnesses".into(),
            Strategy::CoordinateFamily { extra_lines, .. } => format!("coordinate-family(+{extra_lines})"),
            Strategy::Random {
                seed,
                count,
                coeff_bound,
            } => {
                format!("random(seed={seed}, count={count}, bound={coeff_bound})")
            }
        }
    }

    /// Default order: cheapest certain refutations first.
    pub fn defaults(seed: u64, samples: usize) -> Vec<Strategy> {
        vec![
            Strategy::NamedWitnesses,
            Strategy::coordinate(3),
            Strategy::random(seed, samples),
        ]
    }
}

/// Nonzero coefficients `c` for the extra lines `span{e_a + c·e_b}`, in a
/// fixed order: 1, i, -1, -i, 2, 2i, -2, -2i, 1+i, ...
fn extra_coefficients() -> impl Iterator<Item = GaussianRational> {
    (1i64..).flat_map(|k| {
        let axis = [(k, 0), (0, k), (-k, 0), (0, -k)];
        let diag = (1..k).flat_map(move |j| [(j, k - j), (j, j - k), (-j, k - j), (-j, j - k)]);
        axis.into_iter()
            .chain(diag)
            .map(|(a, b)| GaussianRational::from_ints(a, b))
    })
}

/// All `2ⁿ` coordinate subspaces of ℂⁿ (ordered by coordinate bitmask, so
/// `𝟎` first and `𝟏` last) followed by `extra_lines` non-coordinate lines
/// `span{e_a + c·e_b}`, enumerating every pair `a < b` for each coefficient
/// `c` in turn. ℂ¹ has no non-coordinate lines, so extras are ignored there.
pub fn coordinate_family(ambient: usize, extra_lines: usize) -> Result<Vec<Subspace>> {
    if ambient > MAX_FAMILY_AMBIENT {
        return Err(Error::FamilyTooLarge(ambient));
    }
    let mut out: Vec<Subspace> = (0..1u64 << ambient)
        .map(|mask| Subspace::coordinate(ambient, mask))
        .collect();
    if ambient < 2 {
        return Ok(out);
    }
    let pairs: Vec<(usize, usize)> = (0..ambient)
        .flat_map(|a| (a + 1..ambient).map(move |b| (a, b)))
        .collect();
    let lines = extra_coefficients().flat_map(|c| {
        pairs.clone().into_iter().map(move |(a, b)| {
            let mut v = vec![GaussianRational::zero(); ambient];
            v[a] = GaussianRational::one();
            v[b] = c.clone();
            Subspace::line(v)
        })
    });
    out.extend(lines.take(extra_lines));
    Ok(out)
}

/// One random assignment; sample `index` of stream `seed`.
pub fn random_assignment(
    vars: &[String],
    ambient: usize,
    seed: u64,
    index: usize,
    coeff_bound: i64,
) -> Result<Assignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut a = Assignment::new(ambient);
    for v in vars {
        let dim = rng.gen_range(0..=ambient);
        a.bind(v.clone(), random_subspace_with(&mut rng, ambient, dim, coeff_bound)?)?;
    }
    Ok(a)
}

/// The `index`-th tuple over `family`, either in mixed-radix order or drawn
/// from a fixed seeded stream when the product is being sampled.
pub(crate) fn family_tuple(vars: &[String], family: &[Subspace], index: usize, sampled: bool) -> Result<Assignment> {
    let ambient = family[0].ambient();
    let mut a = Assignment::new(ambient);
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        rng.set_stream(index as u64);
        for v in vars {
            a.bind(v.clone(), family[rng.gen_range(0..family.len())].clone())?;
        }
    } else {
        let mut rest = index;
        for v in vars.iter().rev() {
            a.bind(v.clone(), family[rest % family.len()].clone())?;
            rest /= family.len();
        }
    }
    Ok(a)
}

/// `(count, sampled, total)` for enumerating `len^vars` family tuples with
/// at most `max_tuples` evaluations.
pub(crate) fn tuple_plan(vars: usize, len: usize, max_tuples: usize) -> (usize, bool, Option<usize>) {
    let total = u32::try_from(vars).ok().and_then(|k| len.checked_pow(k));
    match total {
        Some(t) if t <= max_tuples => (t, false, total),
        _ => (max_tuples, true, total),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Counterexample,
    HoldsOnSamples,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub assignment: Assignment,
    pub lhs: Subspace,
    pub rhs: Subspace,
    pub strategy: String,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub samples_tried: usize,
    pub strategy_log: Vec<String>,
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            Some(c) => {
                writeln!(
                    f,
                    "counterexample found by {} (sample {}) after {} assignments",
                    c.strategy, c.index, self.samples_tried
                )?;
                writeln!(f, "lhs = {}", c.lhs)?;
                writeln!(f, "rhs = {}", c.rhs)?;
                write!(f, "assignment:\n{}", c.assignment)
            }
            None => {
                writeln!(
                    f,
                    "holds on {} sampled assignments (sampled evidence only, not a proof of validity)",
                    self.samples_tried
                )?;
                for s in &self.strategy_log {
                    writeln!(f, "  {s}")?;
                }
                Ok(())
            }
        }
    }
}

/// Returns the first falsifying index in `0..count`, in index order.
fn first_failure(
    eq: &Equation,
    count: usize,
    route: MeetRoute,
    make: impl Fn(usize) -> Result<Assignment> + Sync,
) -> Result<Option<(usize, Assignment, Subspace, Subspace)>> {
    let found = (0..count)
        .into_par_iter()
        .map(|i| -> Result<Option<(usize, Assignment, Subspace, Subspace)>> {
            let a = make(i)?;
            let (l, r) = eval_sides(eq, &a, route)?;
            Ok((l != r).then_some((i, a, l, r)))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    found.unwrap_or(Ok(None))
}

/// Runs `strategies` in order and stops at the first falsifying assignment.
pub fn check(eq: &Equation, ambient: usize, strategies: &[Strategy]) -> Result<Verdict> {
    check_with(eq, ambient, strategies, MeetRoute::Direct)
}

pub fn check_with(eq: &Equation, ambient: usize, strategies: &[Strategy], route: MeetRoute) -> Result<Verdict> {
    if ambient == 0 {
        return Err(Error::InvalidArgument("ambient dimension must be at least 1".into()));
    }
    let vars: Vec<String> = eq.free_vars().into_iter().collect();
    let mut tried = 0;
    let mut log = Vec::new();
    for strategy in strategies {
        let (count, hit) = match strategy {
            Strategy::NamedWitnesses => {
                let usable: Vec<(String, Assignment)> = formulas::named_witnesses()
                    .into_iter()
                    .filter(|(_, a)| a.ambient() == ambient && a.binds_all(&vars))
                    .collect();
                if usable.is_empty() {
                    log.push(format!(
                        "{}: no witness binds {{{}}} in C^{ambient}",
                        strategy.name(),
                        vars.join(", ")
                    ));
                    continue;
                }
                let hit = first_failure(eq, usable.len(), route, |i| Ok(usable[i].1.clone()))?;
                log.push(format!(
                    "{}: tried {}",
                    strategy.name(),
                    usable.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")
                ));
                (usable.len(), hit)
            }
            Strategy::CoordinateFamily {
                extra_lines,
                max_tuples,
            } => {
                let family = coordinate_family(ambient, *extra_lines)?;
                let (count, sampled, total) = tuple_plan(vars.len(), family.len(), *max_tuples);
                let hit = first_failure(eq, count, route, |i| family_tuple(&vars, &family, i, sampled))?;
                log.push(match (sampled, total) {
                    (false, _) => format!("{}: exhaustive over {count} tuples", strategy.name()),
                    (true, Some(t)) => format!("{}: sampled {count} of {t} tuples", strategy.name()),
                    (true, None) => format!("{}: sampled {count} tuples", strategy.name()),
                });
                (count, hit)
            }
            Strategy::Random {
                seed,
                count,
                coeff_bound,
            } => {
                let hit = first_failure(eq, *count, route, |i| {
                    random_assignment(&vars, ambient, *seed, i, *coeff_bound)
                })?;
                log.push(format!("{}: {count} assignments", strategy.name()));
                (*count, hit)
            }
        };
        match hit {
            Some((index, assignment, lhs, rhs)) => {
                tried += index + 1;
                certify(eq, &assignment)?;
                return Ok(Verdict {
                    status: Status::Counterexample,
                    counterexample: Some(Counterexample {
                        assignment,
                        lhs,
                        rhs,
                        strategy: strategy.name(),
                        index,
                    }),
                    samples_tried: tried,
                    strategy_log: log,
                });
            }
            None => tried += count,
        }
    }
    Ok(Verdict {
        status: Status::HoldsOnSamples,
        counterexample: None,
        samples_tried: tried,
        strategy_log: log,
    })
}

/// Re-evaluates a counterexample from scratch with both meet routes.
pub fn certify(eq: &Equation, a: &Assignment) -> Result<()> {
    for route in [MeetRoute::Direct, MeetRoute::DeMorgan] {
        let (l, r) = eval_sides(eq, a, route)?;
        if l == r {
            return Err(Error::Certification(format!(
                "`{eq}` holds when re-evaluated with {route:?} meets"
            )));
        }
    }
    Ok(())
}
