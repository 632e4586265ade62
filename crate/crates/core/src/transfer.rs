//! The transfer (Schützenberger jeu de taquin step) on standard tableaux
//! and a seeded test that the Plancherel measure is invariant under it.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::plancherel::{plancherel_tableau_distribution, sample_growth_trial};
use crate::rational::{serde_pq, to_f64};
use crate::tableau::StandardTableau;
use crate::young::Partition;

/// Smallest gap between the prefix length and the tableau size accepted by
/// [`quasi_stationarity_test`].
pub const PREFIX_BUFFER: usize = 50;

/// Deletes entry 1, slides the hole to an outer corner, removes it and
/// decrements every entry.
///
/// At each slide the smaller of the right and lower neighbours moves into
/// the hole; a lone neighbour moves unconditionally.
pub fn transfer_step(t: &StandardTableau) -> Result<StandardTableau> {
    if t.size() < 2 {
        return Err(Error::domain("the transfer needs a tableau with at least two cells"));
    }
    let mut rows: Vec<Vec<u32>> = t.rows().to_vec();
    let (mut r, mut c) = (0usize, 0usize);
    loop {
        let right = rows[r].get(c + 1).copied();
        let below = rows.get(r + 1).and_then(|row| row.get(c)).copied();
        let from_right = match (right, below) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => {
                assert_ne!(a, b, "standard tableau entries are distinct");
                a < b
            }
        };
        if from_right {
            rows[r][c] = rows[r][c + 1];
            c += 1;
        } else {
            rows[r][c] = rows[r + 1][c];
            r += 1;
        }
    }
    assert_eq!(c + 1, rows[r].len(), "the hole stops at the end of its row");
    rows[r].pop();
    if rows[r].is_empty() {
        rows.pop();
    }
    for e in rows.iter_mut().flatten() {
        *e -= 1;
    }
    let out = StandardTableau::from_rows_unchecked(rows);
    assert!(
        removes_one_corner(&t.shape(), &out.shape()),
        "transfer must delete exactly one corner"
    );
    Ok(out)
}

fn removes_one_corner(before: &Partition, after: &Partition) -> bool {
    after.is_covered_by(before)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixCount {
    pub prefix: StandardTableau,
    #[serde(with = "serde_pq")]
    pub expected: num_rational::BigRational,
    pub observed_before: usize,
    pub observed_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferReport {
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Pearson statistic of the post-transfer prefix counts against `Pl_k`.
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub significance: f64,
    pub critical_value: f64,
    pub pass: bool,
    /// Total variation between the empirical prefix law and `Pl_k`, before
    /// and after the transfer.
    pub tv_before: f64,
    pub tv_after: f64,
    pub counts: Vec<PrefixCount>,
}

/// Samples `trials` growth tableaux of size `n`, applies one transfer to
/// each and compares the law of the first `k` entries with `Pl_k`.
///
/// `n ≥ k + PREFIX_BUFFER` keeps the sampled prefix away from the truncated
/// end of the finite tableau.
pub fn quasi_stationarity_test(
    k: usize,
    n: usize,
    trials: usize,
    seed: u64,
    significance: f64,
    limits: &Limits,
) -> Result<TransferReport> {
    if !(1..=4).contains(&k) {
        return Err(Error::domain(format!("prefix length {k} outside 1..=4")));
    }
    if n < k + PREFIX_BUFFER {
        return Err(Error::domain(format!(
            "n = {n} is below k + {PREFIX_BUFFER}; the prefix would see the finite edge"
        )));
    }
    if trials < 1000 {
        return Err(Error::domain(format!("{trials} trials is below the minimum of 1000")));
    }
    if !(significance > 0.0 && significance < 1.0) {
        return Err(Error::domain("significance must lie in (0, 1)"));
    }
    let exact = plancherel_tableau_distribution(k, limits)?;
    let index_of = |t: &StandardTableau| {
        exact
            .iter()
            .position(|(e, _)| e == t)
            .expect("every k-cell tableau is listed")
    };
    let mut before = vec![0usize; exact.len()];
    let mut after = vec![0usize; exact.len()];
    for trial in 0..trials {
        let sample = sample_growth_trial(n, seed, trial as u64, limits)?;
        before[index_of(&sample.tableau.prefix(k)?)] += 1;
        let moved = transfer_step(&sample.tableau)?;
        after[index_of(&moved.prefix(k)?)] += 1;
    }
    let total = trials as f64;
    let expected: Vec<f64> = exact.iter().map(|(_, w)| to_f64(w)).collect();
    let tv = |counts: &[usize]| {
        0.5 * counts
            .iter()
            .zip(&expected)
            .map(|(&c, &e)| (c as f64 / total - e).abs())
            .sum::<f64>()
    };
    let statistic: f64 = after
        .iter()
        .zip(&expected)
        .map(|(&c, &e)| {
            let want = e * total;
            (c as f64 - want).powi(2) / want
        })
        .sum();
    let df = exact.len() - 1;
    let critical_value = if df == 0 {
        0.0
    } else {
        ChiSquared::new(df as f64)
            .expect("positive degrees of freedom")
            .inverse_cdf(1.0 - significance)
    };
    let pass = df == 0 || statistic < critical_value;
    let counts = exact
        .iter()
        .zip(before.iter().zip(&after))
        .map(|((t, w), (&b, &a))| PrefixCount {
            prefix: t.clone(),
            expected: w.clone(),
            observed_before: b,
            observed_after: a,
        })
        .collect();
    Ok(TransferReport {
        k,
        n,
        trials,
        seed,
        statistic,
        degrees_of_freedom: df,
        significance,
        critical_value,
        pass,
        tv_before: tv(&before),
        tv_after: tv(&after),
        counts,
    })
}
