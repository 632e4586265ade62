//! Graded graphs (Bratteli diagrams) and the Plancherel-graph property.
//!
//! A graded graph has a single vertex at level 0 and edges only between
//! consecutive levels, possibly with multiplicities. `dim(v)` is the number
//! of paths from the root counted with multiplicity. The graph is a
//! Plancherel graph when
//!
//! ```text
//! dim(v) / Σ_{w ≻ v} m(v,w)·dim(w) = d_n / d_{n+1},   d_n = Σ_{|v| = n} dim(v)²
//! ```
//!
//! at every vertex `v` of every level `n`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Error, Result};
use crate::limits::Limits;
use crate::rational::{ratio, serde_pq};
use crate::young::{enumerate_level, Partition};

pub trait GradedGraph {
    type Vertex: Clone + Eq + Hash + Display;

    /// Vertices of level `n` in a fixed order.
    fn level(&self, n: usize) -> Result<Vec<Self::Vertex>>;

    /// Edges from `v` to the next level, with multiplicities.
    fn up_edges(&self, v: &Self::Vertex) -> Vec<(Self::Vertex, u64)>;

    /// Weighted number of paths from the root to `v`.
    fn dim(&self, v: &Self::Vertex) -> BigUint;
}

/// `d_n = Σ dim(v)²` over level `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelMass {
    pub n: usize,
    #[serde(serialize_with = "ser_biguint")]
    pub d: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn level_mass<G: GradedGraph>(g: &G, n: usize, limits: &Limits) -> Result<LevelMass> {
    ensure_cap("graph level", n, limits.graph_levels)?;
    let d = g
        .level(n)?
        .iter()
        .map(|v| {
            let d = g.dim(v);
            &d * &d
        })
        .sum();
    Ok(LevelMass { n, d })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioWitness {
    pub level: usize,
    pub vertex: String,
    /// `d_n / d_{n+1}`.
    #[serde(with = "serde_pq")]
    pub expected: BigRational,
    /// `dim(v) / Σ m·dim(w)`.
    #[serde(with = "serde_pq")]
    pub actual: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlancherelGraphReport {
    pub holds: bool,
    pub up_to: usize,
    /// The level-constant ratio found at each checked level (until the
    /// first failure).
    #[serde(with = "serde_pq::vec")]
    pub level_ratios: Vec<BigRational>,
    pub witness: Option<RatioWitness>,
}

/// Checks the Plancherel-graph identity at every vertex of levels
/// `0..=up_to`, exactly. Reports the first offending vertex in level order.
pub fn is_plancherel_graph<G: GradedGraph>(
    g: &G,
    up_to: usize,
    limits: &Limits,
) -> Result<PlancherelGraphReport> {
    ensure_cap("graph level", up_to + 1, limits.graph_levels)?;
    let mut masses = Vec::with_capacity(up_to + 2);
    for n in 0..=up_to + 1 {
        masses.push(level_mass(g, n, limits)?.d);
    }
    let mut up_sums = Vec::with_capacity(up_to + 1);
    for n in 0..=up_to {
        let mut level = Vec::new();
        for v in g.level(n)? {
            if g.up_edges(&v).is_empty() {
                return Err(Error::structural(format!(
                    "vertex {v} at level {n} has no up-edges"
                )));
            }
            let up = up_sum(g, &v);
            if up.is_zero() || masses[n + 1].is_zero() {
                return Err(Error::structural(format!(
                    "vertex {v} at level {n} has zero weighted up-degree"
                )));
            }
            level.push((v, up));
        }
        up_sums.push(level);
    }
    let mut level_ratios = Vec::new();
    for (n, level) in up_sums.into_iter().enumerate() {
        let expected = ratio(&masses[n], &masses[n + 1]);
        for (v, up) in level {
            let actual = ratio(&g.dim(&v), &up);
            if actual != expected {
                return Ok(PlancherelGraphReport {
                    holds: false,
                    up_to,
                    level_ratios,
                    witness: Some(RatioWitness {
                        level: n,
                        vertex: v.to_string(),
                        expected,
                        actual,
                    }),
                });
            }
        }
        level_ratios.push(expected);
    }
    Ok(PlancherelGraphReport {
        holds: true,
        up_to,
        level_ratios,
        witness: None,
    })
}

fn up_sum<G: GradedGraph>(g: &G, v: &G::Vertex) -> BigUint {
    g.up_edges(v)
        .iter()
        .map(|(w, m)| g.dim(w) * *m)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub n: usize,
    pub holds: bool,
    /// First vertex where the projected mass differs from `μ_n`.
    pub witness: Option<String>,
}

/// Projects the level measure `μ_{n+1}(w) = dim(w)²/d_{n+1}` to level `n`
/// along cotransitions `m(v,w)·dim(v)/dim(w)` and compares with
/// `μ_n(v) = dim(v)²/d_n`.
pub fn check_restriction<G: GradedGraph>(g: &G, n: usize, limits: &Limits) -> Result<RestrictionReport> {
    let d_n = level_mass(g, n, limits)?.d;
    let d_next = level_mass(g, n + 1, limits)?.d;
    let d_n = BigRational::from_integer(BigInt::from(d_n));
    let d_next = BigRational::from_integer(BigInt::from(d_next));
    for v in g.level(n)? {
        let dim_v = BigRational::from_integer(BigInt::from(g.dim(&v)));
        let mut projected = BigRational::zero();
        for (w, m) in g.up_edges(&v) {
            let dim_w = BigRational::from_integer(BigInt::from(g.dim(&w)));
            let mass_w = &dim_w * &dim_w / &d_next;
            let cotransition = BigRational::from_integer(BigInt::from(m)) * &dim_v / &dim_w;
            projected += mass_w * cotransition;
        }
        if projected != &dim_v * &dim_v / &d_n {
            return Ok(RestrictionReport {
                n,
                holds: false,
                witness: Some(v.to_string()),
            });
        }
    }
    Ok(RestrictionReport {
        n,
        holds: true,
        witness: None,
    })
}

/// The Young graph: partitions, simple edges given by adding one cell,
/// `dim` from the hook-length formula.
#[derive(Debug, Clone, Default)]
pub struct YoungGraph {
    limits: Limits,
}

pub fn young_graph_adapter() -> YoungGraph {
    YoungGraph::default()
}

impl YoungGraph {
    pub fn with_limits(limits: Limits) -> Self {
        YoungGraph { limits }
    }
}

impl GradedGraph for YoungGraph {
    type Vertex = Partition;

    fn level(&self, n: usize) -> Result<Vec<Partition>> {
        enumerate_level(n, &self.limits)
    }

    fn up_edges(&self, v: &Partition) -> Vec<(Partition, u64)> {
        v.covers_up().into_iter().map(|w| (w, 1)).collect()
    }

    fn dim(&self, v: &Partition) -> BigUint {
        v.dim_hook()
    }
}

/// Vertex `(n, k)` of Pascal's triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PascalVertex {
    pub n: usize,
    pub k: usize,
}

impl Display for PascalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

/// Pascal's triangle: `(n,k) → (n+1,k), (n+1,k+1)`; `dim(n,k) = C(n,k)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PascalGraph;

impl GradedGraph for PascalGraph {
    type Vertex = PascalVertex;

    fn level(&self, n: usize) -> Result<Vec<PascalVertex>> {
        Ok((0..=n).map(|k| PascalVertex { n, k }).collect())
    }

    fn up_edges(&self, v: &PascalVertex) -> Vec<(PascalVertex, u64)> {
        vec![
            (PascalVertex { n: v.n + 1, k: v.k }, 1),
            (PascalVertex { n: v.n + 1, k: v.k + 1 }, 1),
        ]
    }

    fn dim(&self, v: &PascalVertex) -> BigUint {
        // C(n, k) by the multiplicative formula; each partial quotient is exact.
        (0..v.k).fold(BigUint::one(), |acc, i| acc * (v.n - i) / (i + 1))
    }
}

/// JSON form: `{"levels": [[id, ...], ...], "edges": [[from, to, mult], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub levels: Vec<Vec<String>>,
    pub edges: Vec<(String, String, u64)>,
}

/// A graded graph with finitely many levels and opaque string ids.
#[derive(Debug, Clone)]
pub struct FiniteGraph {
    levels: Vec<Vec<String>>,
    level_of: HashMap<String, usize>,
    up: HashMap<String, Vec<(String, u64)>>,
    dims: HashMap<String, BigUint>,
}

impl FiniteGraph {
    pub fn from_json(json: GraphJson) -> Result<Self> {
        let GraphJson { levels, edges } = json;
        if levels.first().map(Vec::len) != Some(1) {
            return Err(Error::structural("level 0 must contain exactly one vertex"));
        }
        let mut level_of = HashMap::new();
        for (n, level) in levels.iter().enumerate() {
            for id in level {
                if level_of.insert(id.clone(), n).is_some() {
                    return Err(Error::structural(format!("duplicate vertex id {id:?}")));
                }
            }
        }
        let mut up: HashMap<String, Vec<(String, u64)>> = HashMap::new();
        let mut seen = HashSet::new();
        for (from, to, m) in edges {
            let lf = *level_of
                .get(&from)
                .ok_or_else(|| Error::structural(format!("unknown vertex {from:?}")))?;
            let lt = *level_of
                .get(&to)
                .ok_or_else(|| Error::structural(format!("unknown vertex {to:?}")))?;
            if lt != lf + 1 {
                return Err(Error::structural(format!(
                    "edge {from:?} -> {to:?} does not join consecutive levels"
                )));
            }
            if m == 0 {
                return Err(Error::structural(format!("edge {from:?} -> {to:?} has multiplicity 0")));
            }
            if !seen.insert((from.clone(), to.clone())) {
                return Err(Error::structural(format!("edge {from:?} -> {to:?} listed twice")));
            }
            up.entry(from).or_default().push((to, m));
        }
        let mut dims: HashMap<String, BigUint> = HashMap::new();
        dims.insert(levels[0][0].clone(), BigUint::one());
        for level in &levels[..levels.len().saturating_sub(1)] {
            for v in level {
                let dv = dims.get(v).cloned().unwrap_or_default();
                for (w, m) in up.get(v).into_iter().flatten() {
                    *dims.entry(w.clone()).or_default() += &dv * *m;
                }
            }
        }
        for level in levels.iter().skip(1) {
            for v in level {
                if dims.get(v).is_none_or(Zero::is_zero) {
                    return Err(Error::structural(format!("vertex {v:?} has no incoming edge")));
                }
            }
        }
        Ok(FiniteGraph {
            levels,
            level_of,
            up,
            dims,
        })
    }

    /// Snapshot of levels `0..=top` of any graded graph.
    pub fn from_graph<G: GradedGraph>(g: &G, top: usize) -> Result<Self> {
        let mut levels = Vec::with_capacity(top + 1);
        let mut edges = Vec::new();
        for n in 0..=top {
            let level = g.level(n)?;
            if n < top {
                for v in &level {
                    for (w, m) in g.up_edges(v) {
                        edges.push((v.to_string(), w.to_string(), m));
                    }
                }
            }
            levels.push(level.iter().map(ToString::to_string).collect());
        }
        Self::from_json(GraphJson { levels, edges })
    }

    pub fn to_json(&self) -> GraphJson {
        let mut edges = Vec::new();
        for level in &self.levels {
            for v in level {
                for (w, m) in self.up.get(v).into_iter().flatten() {
                    edges.push((v.clone(), w.clone(), *m));
                }
            }
        }
        GraphJson {
            levels: self.levels.clone(),
            edges,
        }
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn edges(&self) -> Vec<(String, String, u64)> {
        self.to_json().edges
    }

    /// The graph with one edge removed. Vertices no longer reachable from
    /// the root are dropped along with their edges.
    pub fn without_edge(&self, from: &str, to: &str) -> Result<Self> {
        let mut json = self.to_json();
        let before = json.edges.len();
        json.edges.retain(|(f, t, _)| !(f == from && t == to));
        if json.edges.len() == before {
            return Err(Error::domain(format!("no edge {from:?} -> {to:?}")));
        }
        let mut out: HashMap<&str, Vec<&str>> = HashMap::new();
        for (f, t, _) in &json.edges {
            out.entry(f.as_str()).or_default().push(t.as_str());
        }
        let root = json.levels[0][0].as_str();
        let mut reachable: HashSet<&str> = HashSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in out.get(v).into_iter().flatten() {
                if reachable.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        let reachable: HashSet<String> = reachable.into_iter().map(str::to_owned).collect();
        let levels = json
            .levels
            .iter()
            .map(|l| l.iter().filter(|v| reachable.contains(*v)).cloned().collect())
            .collect();
        let edges = json
            .edges
            .into_iter()
            .filter(|(f, _, _)| reachable.contains(f))
            .collect();
        Self::from_json(GraphJson { levels, edges })
    }

    pub fn level_of(&self, v: &str) -> Option<usize> {
        self.level_of.get(v).copied()
    }

    /// Dimensions of every vertex, keyed by id.
    pub fn dims(&self) -> BTreeMap<&str, &BigUint> {
        self.dims.iter().map(|(k, v)| (k.as_str(), v)).collect()
    }
}

impl GradedGraph for FiniteGraph {
    type Vertex = String;

    fn level(&self, n: usize) -> Result<Vec<String>> {
        self.levels.get(n).cloned().ok_or_else(|| {
            Error::structural(format!(
                "level {n} is beyond the {} stored levels",
                self.levels.len()
            ))
        })
    }

    fn up_edges(&self, v: &String) -> Vec<(String, u64)> {
        self.up.get(v).cloned().unwrap_or_default()
    }

    fn dim(&self, v: &String) -> BigUint {
        self.dims.get(v).cloned().unwrap_or_default()
    }
}
