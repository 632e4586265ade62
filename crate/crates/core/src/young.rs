//! Partitions (Young diagrams), the covering relation of the Young graph and
//! dimensions.
//!
//! Cells use 0-based `(row, col)` coordinates with rows growing downwards
//! (English convention). A partition `λ` contains `(r, c)` iff `c < λ[r]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Error, Result};
use crate::limits::Limits;
use crate::rational::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// An integer partition, stored as its weakly decreasing positive parts.
///
/// The empty partition is a valid value (the root of the Young graph).
/// Serialises as a JSON array of parts, `[]` for the empty diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::validation(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::validation(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Builds from parts already known to be valid.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The single-row partition `[n]` (empty for `n = 0`).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition::from_parts_unchecked(vec![n])
        }
    }

    /// The single-column partition `[1^n]`.
    pub fn column(n: usize) -> Self {
        Partition::from_parts_unchecked(vec![1; n])
    }

    /// The staircase `[k, k-1, ..., 1]`.
    pub fn staircase(k: usize) -> Self {
        Partition::from_parts_unchecked((1..=k).rev().collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `r` (zero beyond the last row).
    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r).copied().unwrap_or(0)
    }

    pub fn first_row(&self) -> usize {
        self.part(0)
    }

    pub fn first_column(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.col < self.part(cell.row)
    }

    /// `true` when every cell of `self` lies in `other`.
    pub fn is_subdiagram_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition::from_parts_unchecked(parts)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| Cell::new(r, c)))
    }

    /// Cells that can be added, ordered by row.
    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len() + 1);
        for r in 0..=self.len() {
            let len = self.part(r);
            if r == 0 || self.parts[r - 1] > len {
                out.push(Cell::new(r, len));
            }
        }
        out
    }

    /// Corner cells that can be removed, ordered by row.
    pub fn removable_cells(&self) -> Vec<Cell> {
        (0..self.len())
            .filter(|&r| self.parts[r] > self.part(r + 1))
            .map(|r| Cell::new(r, self.parts[r] - 1))
            .collect()
    }

    /// Adds a cell at the end of row `r`. Fails unless that cell is addable.
    pub fn add_cell(&self, r: usize) -> Result<Partition> {
        if r > self.len() || (r > 0 && self.parts[r - 1] == self.part(r)) {
            return Err(Error::domain(format!("no addable cell in row {r} of {self}")));
        }
        let mut parts = self.parts.clone();
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
        Ok(Partition {
            parts,
            n: self.n + 1,
        })
    }

    /// Removes the last cell of row `r`. Fails unless that cell is a corner.
    pub fn remove_cell(&self, r: usize) -> Result<Partition> {
        if r >= self.len() || self.parts[r] == self.part(r + 1) {
            return Err(Error::domain(format!("no removable cell in row {r} of {self}")));
        }
        let mut parts = self.parts.clone();
        parts[r] -= 1;
        if parts[r] == 0 {
            parts.pop();
        }
        Ok(Partition {
            parts,
            n: self.n - 1,
        })
    }

    /// Diagrams covering `self` in the Young graph, ordered by the row of the
    /// added cell.
    pub fn covers_up(&self) -> Vec<Partition> {
        self.addable_cells()
            .into_iter()
            .map(|c| self.add_cell(c.row).expect("addable cell"))
            .collect()
    }

    /// Diagrams covered by `self`, ordered by the row of the removed cell.
    pub fn covers_down(&self) -> Result<Vec<Partition>> {
        if self.is_empty() {
            return Err(Error::domain("the empty diagram has no lower covers"));
        }
        Ok(self
            .removable_cells()
            .into_iter()
            .map(|c| self.remove_cell(c.row).expect("removable cell"))
            .collect())
    }

    /// `true` when `upper` is obtained from `self` by adding one cell.
    pub fn is_covered_by(&self, upper: &Partition) -> bool {
        upper.n == self.n + 1 && self.is_subdiagram_of(upper)
    }

    /// The row in which `upper` has one more cell than `self`, if `upper`
    /// covers `self`.
    pub fn added_row(&self, upper: &Partition) -> Option<usize> {
        if !self.is_covered_by(upper) {
            return None;
        }
        (0..upper.len()).find(|&r| upper.parts[r] != self.part(r))
    }

    pub fn arm(&self, cell: Cell) -> usize {
        self.part(cell.row) - cell.col - 1
    }

    pub fn leg(&self, cell: Cell) -> usize {
        self.parts[cell.row..]
            .iter()
            .skip(1)
            .take_while(|&&p| p > cell.col)
            .count()
    }

    pub fn hook(&self, cell: Cell) -> usize {
        self.arm(cell) + self.leg(cell) + 1
    }

    /// One hook length per cell, in row-major order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells()
            .map(|c| (self.parts[c.row] - c.col - 1) + (conj.parts[c.col] - c.row - 1) + 1)
            .collect()
    }

    /// Number of standard tableaux of this shape: `n! / ∏ hooks`.
    pub fn dim_hook(&self) -> BigUint {
        let hooks = self
            .hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * h as u64);
        factorial(self.n) / hooks
    }

    /// Natural logarithm of [`Partition::dim_hook`], accumulated in floating
    /// point from the hook lengths.
    pub fn log_dim(&self) -> f64 {
        let log_fact: f64 = (2..=self.n).map(|k| (k as f64).ln()).sum();
        let log_hooks: f64 = self.hook_lengths().into_iter().map(|h| (h as f64).ln()).sum();
        log_fact - log_hooks
    }

    /// `dim(λ + cell in row r) / dim(λ)`, computed from the hooks of the
    /// row and column that the new cell extends.
    ///
    /// Only hooks in row `r` left of the new cell and in its column above it
    /// change (each grows by one), so
    /// `dim(Λ)/dim(λ) = (n+1) · ∏ h/(h+1)` over those cells.
    pub fn dim_ratio_add(&self, r: usize) -> Result<BigRational> {
        let grown = self.add_cell(r)?;
        let c = grown.parts[r] - 1;
        let mut num = BigUint::from(self.n as u64 + 1);
        let mut den = BigUint::one();
        for j in 0..c {
            let h = self.hook(Cell::new(r, j)) as u64;
            num *= h;
            den *= h + 1;
        }
        for i in 0..r {
            let h = self.hook(Cell::new(i, c)) as u64;
            num *= h;
            den *= h + 1;
        }
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1]`, `3,1`, `3 1` and `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::validation(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order of parts.
pub fn enumerate_level(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    ensure_cap("partition level", n, limits.enumeration)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_level(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill_level(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_parts_unchecked(current.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_level(remaining - p, p, current, out);
        current.pop();
    }
}

/// Path-counting oracle for `dim`: `dim(∅) = 1` and
/// `dim(λ) = Σ_{μ ⋖ λ} dim(μ)`, memoised across calls on the same counter.
///
/// Independent of the hook-length formula. A counter is confined to one
/// worker; create one per thread.
#[derive(Debug)]
pub struct PathCounter {
    cap: usize,
    memo: HashMap<Partition, BigUint>,
}

impl PathCounter {
    pub fn new(limits: &Limits) -> Self {
        PathCounter {
            cap: limits.oracle,
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, lambda: &Partition) -> Result<BigUint> {
        ensure_cap("oracle diagram size", lambda.size(), self.cap)?;
        Ok(self.count_inner(lambda))
    }

    fn count_inner(&mut self, lambda: &Partition) -> BigUint {
        if lambda.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(lambda) {
            return v.clone();
        }
        let below = lambda.covers_down().expect("non-empty");
        let total = below
            .iter()
            .fold(BigUint::default(), |acc, mu| acc + self.count_inner(mu));
        self.memo.insert(lambda.clone(), total.clone());
        total
    }
}

/// One-shot form of [`PathCounter::count`].
pub fn dim_paths(lambda: &Partition, limits: &Limits) -> Result<BigUint> {
    PathCounter::new(limits).count(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[2,2,1]").unwrap();
        assert_eq!(back, p(&[2, 2, 1]));
        assert_eq!(back.size(), 5);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("[3,1]".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("2 2".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).to_string(), "[4,2,1]");
    }

    #[test]
    fn small_levels() {
        let lim = Limits::default();
        assert_eq!(enumerate_level(0, &lim).unwrap(), vec![Partition::empty()]);
        assert_eq!(enumerate_level(1, &lim).unwrap(), vec![p(&[1])]);
        assert_eq!(
            enumerate_level(4, &lim).unwrap(),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn level_cap_is_enforced() {
        let lim = Limits {
            enumeration: 5,
            ..Limits::default()
        };
        let err = enumerate_level(6, &lim).unwrap_err();
        assert!(err.is_resource_limit());
        assert!(err.to_string().contains('5'));
    }

    #[test]
    fn level_counts_match_partition_numbers() {
        // p(n) for n = 0..=15.
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176];
        let lim = Limits::default();
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_level(n, &lim).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn upper_covers() {
        assert_eq!(Partition::empty().covers_up(), vec![p(&[1])]);
        assert_eq!(p(&[2, 1]).covers_up(), vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]);
        assert_eq!(p(&[3, 3]).covers_up(), vec![p(&[4, 3]), p(&[3, 3, 1])]);
    }

    #[test]
    fn lower_covers() {
        assert_eq!(p(&[1]).covers_down().unwrap(), vec![Partition::empty()]);
        assert_eq!(p(&[2, 1]).covers_down().unwrap(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(p(&[2, 2]).covers_down().unwrap(), vec![p(&[2, 1])]);
        assert!(matches!(Partition::empty().covers_down(), Err(Error::Domain(_))));
    }

    #[test]
    fn hooks() {
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        assert_eq!(p(&[1]).hook_lengths(), vec![1]);
        assert_eq!(sorted(p(&[2, 1]).hook_lengths()), vec![1, 1, 3]);
        assert_eq!(sorted(p(&[3, 2]).hook_lengths()), vec![1, 1, 2, 3, 4]);
        assert_eq!(p(&[3, 2]).hook(Cell::new(0, 0)), 4);
    }

    #[test]
    fn dims() {
        let lim = Limits::default();
        assert_eq!(Partition::empty().dim_hook(), BigUint::one());
        assert_eq!(p(&[2, 1]).dim_hook(), BigUint::from(2u32));
        assert_eq!(p(&[3, 2]).dim_hook(), BigUint::from(5u32));
        assert_eq!(dim_paths(&p(&[1]), &lim).unwrap(), BigUint::one());
        assert_eq!(dim_paths(&p(&[2, 2]), &lim).unwrap(), BigUint::from(2u32));
        assert_eq!(dim_paths(&p(&[2, 1, 1]), &lim).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn oracle_cap() {
        let lim = Limits::default();
        assert!(dim_paths(&Partition::row(41), &lim).unwrap_err().is_resource_limit());
    }

    #[test]
    fn log_dims() {
        assert_eq!(p(&[1]).log_dim(), 0.0);
        assert!((p(&[2, 1]).log_dim() - 2f64.ln()).abs() < 1e-12);
        assert!((p(&[3, 2]).log_dim() - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn incremental_ratio_matches_full_recomputation() {
        let lim = Limits::default();
        for n in 0..=9 {
            for lam in enumerate_level(n, &lim).unwrap() {
                for big in lam.covers_up() {
                    let r = lam.added_row(&big).unwrap();
                    let expected = crate::rational::ratio(&big.dim_hook(), &lam.dim_hook());
                    assert_eq!(lam.dim_ratio_add(r).unwrap(), expected, "{lam} -> {big}");
                }
            }
        }
    }

    #[test]
    fn conjugate_and_corners() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).removable_cells(), vec![Cell::new(1, 1)]);
        assert!(p(&[2, 2]).add_cell(1).is_err());
        assert!(p(&[2, 1]).remove_cell(0).is_ok());
        assert!(p(&[2, 2]).remove_cell(0).is_err());
        assert_eq!(p(&[3, 1]).added_row(&p(&[3, 2])), Some(1));
        assert_eq!(p(&[3, 1]).added_row(&p(&[3, 3])), None);
    }
}
