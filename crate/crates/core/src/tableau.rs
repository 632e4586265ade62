//! Standard Young tableaux, i.e. finite paths `[1] ⋖ ... ⋖ λ` in the Young
//! graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::{Cell, Partition};

/// A standard tableau with at least one cell.
///
/// Stored in entry form: row `r` lists the entries of that row left to
/// right. Entry `k` sits in the cell added at step `k` of the corresponding
/// path. Serialises as the row lists, e.g. `[[1,3],[2]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct StandardTableau {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for StandardTableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        StandardTableau::from_rows(rows)
    }
}

impl From<StandardTableau> for Vec<Vec<u32>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::validation("tableau rows must be non-empty"));
        }
        if rows.is_empty() {
            return Err(Error::domain("a tableau needs at least one cell"));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::validation("tableau row lengths must weakly decrease"));
        }
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &e in rows.iter().flatten() {
            let e = e as usize;
            if e == 0 || e > n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::validation(format!(
                    "entries must be 1..={n}, each exactly once"
                )));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::validation(format!("row {r} is not increasing")));
            }
            if r > 0 && row.iter().zip(&rows[r - 1]).any(|(below, above)| below <= above) {
                return Err(Error::validation(format!("column increase fails at row {r}")));
            }
        }
        Ok(StandardTableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        StandardTableau { rows }
    }

    /// Builds the tableau whose `k`-th cell is added in row `added_rows[k-1]`.
    pub fn from_added_rows(added_rows: &[usize]) -> Result<Self> {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (i, &r) in added_rows.iter().enumerate() {
            let entry = i as u32 + 1;
            if r == rows.len() {
                rows.push(vec![entry]);
            } else if r < rows.len() && (r == 0 || rows[r - 1].len() > rows[r].len()) {
                rows[r].push(entry);
            } else {
                return Err(Error::domain(format!("step {entry}: row {r} has no addable cell")));
            }
        }
        if rows.is_empty() {
            return Err(Error::domain("a tableau needs at least one cell"));
        }
        Ok(StandardTableau { rows })
    }

    /// Converts a path `[1] ⋖ ... ⋖ λ` of diagrams into entry form.
    pub fn from_path(path: &[Partition]) -> Result<Self> {
        let mut prev = Partition::empty();
        let mut added = Vec::with_capacity(path.len());
        for lam in path {
            let r = prev.added_row(lam).ok_or_else(|| {
                Error::domain(format!("{lam} does not cover {prev} in the Young graph"))
            })?;
            added.push(r);
            prev = lam.clone();
        }
        Self::from_added_rows(&added)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts_unchecked(self.rows.iter().map(Vec::len).collect())
    }

    pub fn entry(&self, cell: Cell) -> Option<u32> {
        self.rows.get(cell.row).and_then(|r| r.get(cell.col)).copied()
    }

    /// `cells[k]` is the cell holding entry `k + 1`.
    pub fn cells_in_order(&self) -> Vec<Cell> {
        let mut cells = vec![Cell::new(0, 0); self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                cells[e as usize - 1] = Cell::new(r, c);
            }
        }
        cells
    }

    /// Row index of the cell added at each step.
    pub fn added_rows(&self) -> Vec<usize> {
        self.cells_in_order().into_iter().map(|c| c.row).collect()
    }

    /// The diagrams `t_1 = [1], ..., t_n = shape`.
    pub fn path(&self) -> Vec<Partition> {
        let mut parts: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.size());
        for r in self.added_rows() {
            if r == parts.len() {
                parts.push(1);
            } else {
                parts[r] += 1;
            }
            out.push(Partition::from_parts_unchecked(parts.clone()));
        }
        out
    }

    /// The sub-tableau of entries `1..=k`.
    pub fn prefix(&self, k: usize) -> Result<StandardTableau> {
        if k == 0 || k > self.size() {
            return Err(Error::domain(format!(
                "prefix length {k} outside 1..={}",
                self.size()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().copied().take_while(|&e| e as usize <= k).collect::<Vec<_>>())
            .take_while(|row| !row.is_empty())
            .collect();
        Ok(StandardTableau { rows })
    }

    /// Appends entry `n + 1` at the end of row `r`.
    pub fn extend(&self, r: usize) -> Result<StandardTableau> {
        let mut rows = self.rows.clone();
        let entry = self.size() as u32 + 1;
        if r == rows.len() {
            rows.push(vec![entry]);
        } else if r < rows.len() && (r == 0 || rows[r - 1].len() > rows[r].len()) {
            rows[r].push(entry);
        } else {
            return Err(Error::domain(format!("row {r} has no addable cell")));
        }
        Ok(StandardTableau { rows })
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.rows).map_err(|_| fmt::Error)?)
    }
}

/// All standard tableaux with `n ≥ 1` cells, in lexicographic order of the
/// added-row sequence.
pub fn all_tableaux(n: usize) -> Vec<StandardTableau> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut added = Vec::with_capacity(n);
    let mut shape: Vec<usize> = Vec::new();
    grow_all(n, &mut added, &mut shape, &mut out);
    out
}

fn grow_all(n: usize, added: &mut Vec<usize>, shape: &mut Vec<usize>, out: &mut Vec<StandardTableau>) {
    if added.len() == n {
        out.push(StandardTableau::from_added_rows(added).expect("valid growth"));
        return;
    }
    for r in 0..=shape.len() {
        let len = shape.get(r).copied().unwrap_or(0);
        if r > 0 && shape[r - 1] == len {
            continue;
        }
        if r == shape.len() {
            shape.push(1);
        } else {
            shape[r] += 1;
        }
        added.push(r);
        grow_all(n, added, shape, out);
        added.pop();
        if shape[r] == 1 {
            shape.pop();
        } else {
            shape[r] -= 1;
        }
    }
}

/// All standard tableaux of the given shape.
pub fn tableaux_of_shape(shape: &Partition) -> Vec<StandardTableau> {
    all_tableaux(shape.size())
        .into_iter()
        .filter(|t| &t.shape() == shape)
        .collect()
}
