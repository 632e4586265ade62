//! The exact-identity suite behind `plancherel-lab selftest`.
//!
//! Every identity reads dimensions through an injected function, so a
//! broken dimension formula shows up as a named failure.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{is_plancherel_graph, GradedGraph, YoungGraph};
use crate::limits::Limits;
use crate::rational::{factorial, ratio};
use crate::tableau::all_tableaux;
use crate::young::{enumerate_level, Partition, PathCounter};

pub type DimFn<'a> = &'a dyn Fn(&Partition) -> BigUint;

pub const BURNSIDE_MAX: usize = 12;
pub const COHERENCE_MAX: usize = 8;
pub const STOCHASTICITY_MAX: usize = 12;
pub const GRAPH_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub up_to: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Runs the suite with the hook-length formula.
pub fn run(limits: &Limits) -> Result<Vec<IdentityResult>> {
    run_with(&|p: &Partition| p.dim_hook(), limits)
}

/// Runs burnside, coherence, stochasticity and the Plancherel-graph check,
/// in that order.
pub fn run_with(dim: DimFn<'_>, limits: &Limits) -> Result<Vec<IdentityResult>> {
    Ok(vec![
        burnside(dim, limits)?,
        coherence(dim)?,
        stochasticity(dim, limits)?,
        plancherel_graph(dim, limits)?,
    ])
}

fn result(name: &'static str, up_to: usize, witness: Option<String>) -> IdentityResult {
    IdentityResult {
        name,
        up_to,
        pass: witness.is_none(),
        witness,
    }
}

/// `Σ dim(λ)² = n!`; the witness is the first `λ` whose dimension
/// disagrees with path counting on the failing level.
fn burnside(dim: DimFn<'_>, limits: &Limits) -> Result<IdentityResult> {
    let mut paths = PathCounter::new(limits);
    for n in 0..=BURNSIDE_MAX {
        let level = enumerate_level(n, limits)?;
        let total: BigUint = level.iter().map(|p| dim(p).pow(2)).sum();
        if total != factorial(n) {
            let mut culprit = None;
            for p in &level {
                if dim(p) != paths.count(p)? {
                    culprit = Some(p.clone());
                    break;
                }
            }
            let w = match culprit {
                Some(p) => format!("n={n} {p}"),
                None => format!("n={n}"),
            };
            return Ok(result("burnside", BURNSIDE_MAX, Some(w)));
        }
    }
    Ok(result("burnside", BURNSIDE_MAX, None))
}

/// `Σ_{t' ⊃ t} dim(t')/(n+1)! = dim(t)/n!` over every tableau `t`.
fn coherence(dim: DimFn<'_>) -> Result<IdentityResult> {
    for n in 1..=COHERENCE_MAX {
        let fact = factorial(n);
        let next = &fact * (n as u64 + 1);
        for t in all_tableaux(n) {
            let shape = t.shape();
            let up: BigRational = shape.covers_up().iter().map(|s| ratio(&dim(s), &next)).sum();
            if up != ratio(&dim(&shape), &fact) {
                return Ok(result("coherence", COHERENCE_MAX, Some(t.to_string())));
            }
        }
    }
    Ok(result("coherence", COHERENCE_MAX, None))
}

/// Transition rows and cotransition columns both sum to one.
fn stochasticity(dim: DimFn<'_>, limits: &Limits) -> Result<IdentityResult> {
    for n in 0..=STOCHASTICITY_MAX {
        for lam in enumerate_level(n, limits)? {
            let d = dim(&lam);
            if d.is_zero() {
                return Ok(result("stochasticity", STOCHASTICITY_MAX, Some(format!("dim {lam} = 0"))));
            }
            let row: BigRational = lam
                .covers_up()
                .iter()
                .map(|up| ratio(&dim(up), &(&d * (n as u64 + 1))))
                .sum();
            if !row.is_one() {
                return Ok(result("stochasticity", STOCHASTICITY_MAX, Some(format!("row {lam}"))));
            }
            if n > 0 {
                let col: BigRational = lam.covers_down()?.iter().map(|lo| ratio(&dim(lo), &d)).sum();
                if !col.is_one() {
                    return Ok(result("stochasticity", STOCHASTICITY_MAX, Some(format!("column {lam}"))));
                }
            }
        }
    }
    Ok(result("stochasticity", STOCHASTICITY_MAX, None))
}

struct InjectedYoung<'a> {
    young: YoungGraph,
    dim: DimFn<'a>,
}

impl GradedGraph for InjectedYoung<'_> {
    type Vertex = Partition;

    fn level(&self, n: usize) -> Result<Vec<Partition>> {
        self.young.level(n)
    }

    fn up_edges(&self, v: &Partition) -> Vec<(Partition, u64)> {
        self.young.up_edges(v)
    }

    fn dim(&self, v: &Partition) -> BigUint {
        (self.dim)(v)
    }
}

fn plancherel_graph(dim: DimFn<'_>, limits: &Limits) -> Result<IdentityResult> {
    let g = InjectedYoung {
        young: YoungGraph::with_limits(limits.clone()),
        dim,
    };
    let witness = match is_plancherel_graph(&g, GRAPH_MAX, limits) {
        Ok(report) => report
            .witness
            .map(|w| format!("level {} vertex {}", w.level, w.vertex)),
        Err(Error::Structural(msg)) => Some(msg),
        Err(e) => return Err(e),
    };
    Ok(result("plancherel_graph", GRAPH_MAX, witness))
}
