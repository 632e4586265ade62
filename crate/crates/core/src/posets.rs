//! Posets with a minimal element, monotone numberings and ideal densities.
//!
//! A monotone numbering lists distinct elements `φ(1), φ(2), ...` so that
//! every prefix is a finite ideal (downward-closed set). For `ℤ²₊` these are
//! exactly standard Young tableaux: entry `k` at cell `(r, c)` is
//! `φ(k) = (r, c)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Error, Result};
use crate::limits::Limits;
use crate::rational::serde_pq;
use crate::tableau::StandardTableau;

/// A point with non-negative integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn xy(x: u32, y: u32) -> Self {
        Point(vec![x, y])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A poset on points with a unique minimal element.
///
/// Cover queries return `None` when the answer is an infinite set or when
/// the element has an infinite principal down-set; such elements never
/// belong to a finite ideal.
pub trait Poset {
    fn name(&self) -> String;

    fn bottom(&self) -> Point;

    /// Strict order `a ≺ b`.
    fn less_than(&self, a: &Point, b: &Point) -> bool;

    fn lower_covers(&self, a: &Point) -> Option<Vec<Point>>;

    fn upper_covers(&self, a: &Point) -> Option<Vec<Point>>;

    /// All elements, lazily, in a fixed order.
    fn elements(&self) -> Box<dyn Iterator<Item = Point> + '_>;

    fn comparable(&self, a: &Point, b: &Point) -> bool {
        a == b || self.less_than(a, b) || self.less_than(b, a)
    }
}

/// `ℤᵈ₊` with the componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    d: usize,
}

pub fn lattice_z2() -> Lattice {
    Lattice { d: 2 }
}

pub fn lattice_zd(d: usize) -> Result<Lattice> {
    if !(2..=4).contains(&d) {
        return Err(Error::domain(format!("lattice dimension {d} outside 2..=4")));
    }
    Ok(Lattice { d })
}

impl Lattice {
    pub fn dimension(&self) -> usize {
        self.d
    }
}

impl Poset for Lattice {
    fn name(&self) -> String {
        format!("z{}", self.d)
    }

    fn bottom(&self) -> Point {
        Point(vec![0; self.d])
    }

    fn less_than(&self, a: &Point, b: &Point) -> bool {
        a != b && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
    }

    fn lower_covers(&self, a: &Point) -> Option<Vec<Point>> {
        Some(
            (0..self.d)
                .filter(|&i| a.0[i] > 0)
                .map(|i| {
                    let mut p = a.clone();
                    p.0[i] -= 1;
                    p
                })
                .collect(),
        )
    }

    fn upper_covers(&self, a: &Point) -> Option<Vec<Point>> {
        Some(
            (0..self.d)
                .map(|i| {
                    let mut p = a.clone();
                    p.0[i] += 1;
                    p
                })
                .collect(),
        )
    }

    /// By coordinate sum, then lexicographically.
    fn elements(&self) -> Box<dyn Iterator<Item = Point> + '_> {
        let d = self.d;
        Box::new((0u32..).flat_map(move |s| {
            let mut level = Vec::new();
            compositions(s, d, &mut Vec::new(), &mut level);
            level.into_iter()
        }))
    }
}

fn compositions(s: u32, d: usize, current: &mut Vec<u32>, out: &mut Vec<Point>) {
    if current.len() + 1 == d {
        current.push(s);
        out.push(Point(current.clone()));
        current.pop();
        return;
    }
    for first in 0..=s {
        current.push(first);
        compositions(s - first, d, current, out);
        current.pop();
    }
}

/// Points `(x, y)` of `ℤ²₊` with `(x,y) ≻ (u,v)` iff `y > v`, or
/// `y = v = 0` and `x > u`. Row 0 is a chain; every other row is an
/// antichain lying entirely above all lower rows.
///
/// Every element off row 0 has infinitely many elements below it, so the
/// finite ideals are exactly the initial segments of row 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NonrigidPoset;

pub fn nonrigid_poset() -> NonrigidPoset {
    NonrigidPoset
}

impl Poset for NonrigidPoset {
    fn name(&self) -> String {
        "nonrigid".to_owned()
    }

    fn bottom(&self) -> Point {
        Point::xy(0, 0)
    }

    fn less_than(&self, a: &Point, b: &Point) -> bool {
        let (u, v) = (a.0[0], a.0[1]);
        let (x, y) = (b.0[0], b.0[1]);
        y > v || (y == 0 && v == 0 && x > u)
    }

    fn lower_covers(&self, a: &Point) -> Option<Vec<Point>> {
        match (a.0[0], a.0[1]) {
            (0, 0) => Some(Vec::new()),
            (x, 0) => Some(vec![Point::xy(x - 1, 0)]),
            _ => None,
        }
    }

    fn upper_covers(&self, a: &Point) -> Option<Vec<Point>> {
        match (a.0[0], a.0[1]) {
            // anything in row 1 sits above (x+1, 0), so only the chain step covers
            (x, 0) => Some(vec![Point::xy(x + 1, 0)]),
            _ => None,
        }
    }

    /// Square shells `max(x, y) = s`: `(s,0), (s,1), ..., (s,s), (s-1,s), ..., (0,s)`.
    fn elements(&self) -> Box<dyn Iterator<Item = Point> + '_> {
        Box::new((0u32..).flat_map(|s| {
            let up = (0..=s).map(move |y| Point::xy(s, y));
            let left = (0..s).rev().map(move |x| Point::xy(x, s));
            up.chain(left)
        }))
    }
}

/// A finite prefix `φ(1), ..., φ(n)` of a monotone numbering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonotoneNumbering {
    prefix: Vec<Point>,
}

impl MonotoneNumbering {
    /// Validates that the elements are distinct and every prefix is an
    /// ideal of `poset`.
    pub fn new<P: Poset + ?Sized>(poset: &P, prefix: Vec<Point>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, p) in prefix.iter().enumerate() {
            let below = poset.lower_covers(p).ok_or_else(|| {
                Error::validation(format!("{p} has an infinite down-set in {}", poset.name()))
            })?;
            if let Some(missing) = below.iter().find(|q| !seen.contains(*q)) {
                return Err(Error::validation(format!(
                    "position {}: {p} is numbered before {missing} below it",
                    i + 1
                )));
            }
            if i == 0 && *p != poset.bottom() {
                return Err(Error::validation("a numbering starts at the minimal element"));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::validation(format!("{p} is numbered twice")));
            }
        }
        Ok(MonotoneNumbering { prefix })
    }

    /// The `ℤ²₊` numbering of a tableau: entry `k` at `(r, c)` gives
    /// `φ(k) = (r, c)`.
    pub fn from_tableau(t: &StandardTableau) -> Self {
        let prefix = t
            .cells_in_order()
            .into_iter()
            .map(|c| Point::xy(c.row as u32, c.col as u32))
            .collect();
        MonotoneNumbering { prefix }
    }

    pub fn elements(&self) -> &[Point] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// The ideal `{φ(1), ..., φ(n)}`.
    pub fn ideal(&self) -> BTreeSet<Point> {
        self.prefix.iter().cloned().collect()
    }

    /// `φ(n) ≽ φ(m) ⇒ n > m`, checked over all pairs.
    pub fn is_order_compatible<P: Poset + ?Sized>(&self, poset: &P) -> bool {
        self.prefix.iter().enumerate().all(|(m, a)| {
            self.prefix[m + 1..].iter().all(|b| !poset.less_than(b, a) && a != b)
        })
    }
}

/// A possibly infinite ideal to measure densities against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSpec {
    /// `ℤ²₊` points `(r, c)` with `r < rows` or `c < cols`: the union of the
    /// first `rows` rows and the first `cols` columns.
    Lines { rows: u32, cols: u32 },
    /// A finite downward-closed set.
    Finite(BTreeSet<Point>),
    /// The whole poset.
    Whole,
}

impl IdealSpec {
    /// Builds a union of rows and columns; index sets must be initial
    /// segments, otherwise the set is not downward closed.
    pub fn lines(rows: &BTreeSet<u32>, cols: &BTreeSet<u32>) -> Result<Self> {
        for (name, set) in [("rows", rows), ("cols", cols)] {
            if set.iter().enumerate().any(|(i, &r)| r != i as u32) {
                return Err(Error::validation(format!(
                    "{name} {set:?} is not an initial segment, so the union is not downward closed"
                )));
            }
        }
        Ok(IdealSpec::Lines {
            rows: rows.len() as u32,
            cols: cols.len() as u32,
        })
    }

    /// Checks a finite ideal is downward closed in `poset`.
    pub fn finite<P: Poset + ?Sized>(poset: &P, set: BTreeSet<Point>) -> Result<Self> {
        for p in &set {
            let below = poset
                .lower_covers(p)
                .ok_or_else(|| Error::validation(format!("{p} has an infinite down-set")))?;
            if let Some(q) = below.iter().find(|q| !set.contains(*q)) {
                return Err(Error::validation(format!("{q} is below {p} but missing")));
            }
        }
        Ok(IdealSpec::Finite(set))
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            IdealSpec::Lines { rows, cols } => p.0[0] < *rows || p.0.get(1).is_some_and(|&c| c < *cols),
            IdealSpec::Finite(set) => set.contains(p),
            IdealSpec::Whole => true,
        }
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |k: u32| (0..k).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        match self {
            IdealSpec::Whole => write!(f, "whole"),
            IdealSpec::Lines { rows, cols } => {
                let mut parts = Vec::new();
                if *rows > 0 || *cols == 0 {
                    parts.push(format!("rows={}", list(*rows)));
                }
                if *cols > 0 {
                    parts.push(format!("cols={}", list(*cols)));
                }
                write!(f, "{}", parts.join(";"))
            }
            IdealSpec::Finite(set) => {
                let pts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", pts.join(","))
            }
        }
    }
}

impl FromStr for IdealSpec {
    type Err = Error;

    /// `whole`, or `rows=0,1;cols=0` (either part optional).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "whole" {
            return Ok(IdealSpec::Whole);
        }
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (key, vals) = part
                .split_once('=')
                .ok_or_else(|| Error::validation(format!("bad ideal clause {part:?}")))?;
            let target = match key.trim() {
                "rows" => &mut rows,
                "cols" => &mut cols,
                other => return Err(Error::validation(format!("unknown ideal key {other:?}"))),
            };
            for v in vals.split(',').filter(|v| !v.trim().is_empty()) {
                let v = v
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::validation(format!("bad index {v:?}")))?;
                target.insert(v);
            }
        }
        IdealSpec::lines(&rows, &cols)
    }
}

/// `|{i ≤ n : φ(i) ∈ I}|` over the full prefix.
pub fn ideal_hits(numbering: &MonotoneNumbering, ideal: &IdealSpec) -> usize {
    numbering.elements().iter().filter(|p| ideal.contains(p)).count()
}

/// `(1/n)·|{i ≤ n : φ(i) ∈ I}|` at the full prefix length `n`.
pub fn ideal_density(numbering: &MonotoneNumbering, ideal: &IdealSpec) -> Result<f64> {
    if numbering.is_empty() {
        return Err(Error::domain("density needs a non-empty prefix"));
    }
    Ok(ideal_hits(numbering, ideal) as f64 / numbering.len() as f64)
}

/// Exact form of [`ideal_density`].
pub fn ideal_density_exact(numbering: &MonotoneNumbering, ideal: &IdealSpec) -> Result<BigRational> {
    if numbering.is_empty() {
        return Err(Error::domain("density needs a non-empty prefix"));
    }
    Ok(BigRational::new(
        (ideal_hits(numbering, ideal) as i64).into(),
        (numbering.len() as i64).into(),
    ))
}

/// Densities of the prefixes of length `checkpoints[j]`, each clipped to
/// the prefix length.
pub fn density_trace(numbering: &MonotoneNumbering, ideal: &IdealSpec, checkpoints: &[usize]) -> Vec<(usize, f64)> {
    let mut hits = Vec::with_capacity(numbering.len() + 1);
    hits.push(0usize);
    for p in numbering.elements() {
        let last = *hits.last().expect("non-empty");
        hits.push(last + usize::from(ideal.contains(p)));
    }
    checkpoints
        .iter()
        .map(|&n| n.min(numbering.len()))
        .filter(|&n| n > 0)
        .map(|n| (n, hits[n] as f64 / n as f64))
        .collect()
}

/// Elements that can extend the finite ideal `ideal`, in point order.
fn addable<P: Poset + ?Sized>(poset: &P, ideal: &BTreeSet<Point>) -> Vec<Point> {
    if ideal.is_empty() {
        return vec![poset.bottom()];
    }
    let mut candidates = BTreeSet::new();
    for p in ideal {
        if let Some(ups) = poset.upper_covers(p) {
            candidates.extend(ups.into_iter().filter(|q| !ideal.contains(q)));
        }
    }
    candidates
        .into_iter()
        .filter(|q| {
            poset
                .lower_covers(q)
                .is_some_and(|below| below.iter().all(|b| ideal.contains(b)))
        })
        .collect()
}

/// All monotone numberings of length `n`, by depth-first growth with
/// candidates in point order.
pub fn enumerate_numberings<P: Poset + ?Sized>(
    poset: &P,
    n: usize,
    limits: &Limits,
) -> Result<Vec<MonotoneNumbering>> {
    ensure_cap("numbering length", n, limits.numberings)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut ideal = BTreeSet::new();
    grow_numberings(poset, n, &mut prefix, &mut ideal, &mut out);
    Ok(out)
}

fn grow_numberings<P: Poset + ?Sized>(
    poset: &P,
    n: usize,
    prefix: &mut Vec<Point>,
    ideal: &mut BTreeSet<Point>,
    out: &mut Vec<MonotoneNumbering>,
) {
    if prefix.len() == n {
        out.push(MonotoneNumbering {
            prefix: prefix.clone(),
        });
        return;
    }
    for q in addable(poset, ideal) {
        ideal.insert(q.clone());
        prefix.push(q.clone());
        grow_numberings(poset, n, prefix, ideal, out);
        prefix.pop();
        ideal.remove(&q);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityWitness {
    pub ideal: Vec<Point>,
    pub first: MonotoneNumbering,
    #[serde(with = "serde_pq")]
    pub first_weight: BigRational,
    pub other: MonotoneNumbering,
    #[serde(with = "serde_pq")]
    pub other_weight: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub n: usize,
    pub holds: bool,
    pub ideals_checked: usize,
    pub witness: Option<CentralityWitness>,
}

/// Checks that a probability vector over length-`n` numberings is uniform
/// on the numberings of each ideal. Numberings absent from `weights` carry
/// weight zero.
pub fn check_centrality<P: Poset + ?Sized>(
    poset: &P,
    weights: &[(MonotoneNumbering, BigRational)],
    n: usize,
    limits: &Limits,
) -> Result<CentralityReport> {
    ensure_cap("centrality sweep size", n, limits.tableau_sweep.min(8))?;
    let mut lookup: HashMap<&MonotoneNumbering, &BigRational> = HashMap::new();
    let mut total = BigRational::zero();
    for (m, w) in weights {
        if m.len() != n {
            return Err(Error::validation(format!("numbering of length {} in a level-{n} measure", m.len())));
        }
        MonotoneNumbering::new(poset, m.prefix.clone())?;
        if *w < BigRational::zero() {
            return Err(Error::validation("negative weight"));
        }
        if lookup.insert(m, w).is_some() {
            return Err(Error::validation("numbering listed twice"));
        }
        total += w;
    }
    if total != BigRational::one() {
        return Err(Error::validation(format!(
            "weights sum to {} rather than 1",
            crate::rational::to_pq(&total)
        )));
    }
    let all = enumerate_numberings(poset, n, limits)?;
    let mut groups: BTreeMap<Vec<Point>, Vec<&MonotoneNumbering>> = BTreeMap::new();
    for m in &all {
        groups.entry(m.ideal().into_iter().collect()).or_default().push(m);
    }
    let zero = BigRational::zero();
    let weight = |m: &MonotoneNumbering| lookup.get(m).copied().unwrap_or(&zero).clone();
    for (ideal, members) in &groups {
        let first = members[0];
        let w0 = weight(first);
        if let Some(other) = members.iter().find(|m| weight(m) != w0) {
            return Ok(CentralityReport {
                n,
                holds: false,
                ideals_checked: groups.len(),
                witness: Some(CentralityWitness {
                    ideal: ideal.clone(),
                    first: first.clone(),
                    first_weight: w0,
                    other: (*other).clone(),
                    other_weight: weight(other),
                }),
            });
        }
    }
    Ok(CentralityReport {
        n,
        holds: true,
        ideals_checked: groups.len(),
        witness: None,
    })
}
