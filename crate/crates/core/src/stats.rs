//! Monte Carlo summaries of the growth process: first row and column
//! lengths, their sublinear growth and densities of ideals.
//!
//! Trial `i` always draws from substream `(seed, i)`, so reports replay
//! exactly and do not depend on how trials are scheduled.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::plancherel::{grow_shape, sample_growth_trial};
use crate::posets::{ideal_density, IdealSpec, MonotoneNumbering};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub lambda1: usize,
    pub lambda1_prime: usize,
    /// `λ₁ / √n`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowGrowthReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_ratio: f64,
    pub std_ratio: f64,
    /// Mean of `λ′₁ / √n`.
    pub mean_column_ratio: f64,
    pub per_trial: Vec<TrialRow>,
}

impl RowGrowthReport {
    /// Rows `trial,lambda1,lambda1_prime,ratio` with a header line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.per_trial {
            w.serialize(row)
                .map_err(|e| Error::validation(format!("csv output failed: {e}")))?;
        }
        w.flush()
            .map_err(|e| Error::validation(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn lambda1_values(&self) -> Vec<usize> {
        self.per_trial.iter().map(|r| r.lambda1).collect()
    }

    pub fn lambda1_prime_values(&self) -> Vec<usize> {
        self.per_trial.iter().map(|r| r.lambda1_prime).collect()
    }

    /// Total variation between the empirical laws of `λ₁` and `λ′₁`.
    pub fn row_column_distance(&self) -> f64 {
        empirical_distance(&self.lambda1_values(), &self.lambda1_prime_values())
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Samples `trials` growth shapes of size `n` and reports `λ₁/√n`.
pub fn first_row_statistics(n: usize, trials: usize, seed: u64, limits: &Limits) -> Result<RowGrowthReport> {
    if trials < 10 {
        return Err(Error::domain(format!("{trials} trials is below the minimum of 10")));
    }
    let root = (n as f64).sqrt();
    let per_trial: Vec<TrialRow> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let shape = grow_shape(n, seed, trial, limits)?;
            let (l1, l1p) = (shape.first_row(), shape.first_column());
            // the diagram fits in its bounding rectangle
            assert!(l1 * l1p >= n, "{shape} escapes its {l1}x{l1p} bounding box");
            Ok(TrialRow {
                trial,
                lambda1: l1,
                lambda1_prime: l1p,
                ratio: l1 as f64 / root,
            })
        })
        .collect::<Result<_>>()?;
    let ratios: Vec<f64> = per_trial.iter().map(|r| r.ratio).collect();
    let (mean_ratio, std_ratio) = mean_std(&ratios);
    let mean_column_ratio = per_trial.iter().map(|r| r.lambda1_prime as f64 / root).sum::<f64>() / trials as f64;
    Ok(RowGrowthReport {
        n,
        trials,
        seed,
        mean_ratio,
        std_ratio,
        mean_column_ratio,
        per_trial,
    })
}

/// Total variation between two empirical distributions on the integers.
pub fn empirical_distance(a: &[usize], b: &[usize]) -> f64 {
    let mut mass: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for &v in a {
        mass.entry(v).or_default().0 += 1.0 / a.len() as f64;
    }
    for &v in b {
        mass.entry(v).or_default().1 += 1.0 / b.len() as f64;
    }
    0.5 * mass.values().map(|(p, q)| (p - q).abs()).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SublinearityPoint {
    pub n: usize,
    /// Mean of `λ₁ / n`.
    pub mean_fraction: f64,
    pub mean_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SublinearityReport {
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<SublinearityPoint>,
    /// Whether `mean λ₁/n` strictly decreases along the list.
    pub decreasing: bool,
}

/// Mean `λ₁/n` for each `n` in a strictly increasing list.
pub fn sublinearity_check(
    n_list: &[usize],
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SublinearityReport> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("sizes must form a non-empty strictly increasing list"));
    }
    let points = n_list
        .iter()
        .map(|&n| {
            let r = first_row_statistics(n, trials, seed, limits)?;
            let mean_fraction = r.per_trial.iter().map(|t| t.lambda1 as f64 / n as f64).sum::<f64>() / trials as f64;
            Ok(SublinearityPoint {
                n,
                mean_fraction,
                mean_ratio: r.mean_ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = points.windows(2).all(|w| w[1].mean_fraction < w[0].mean_fraction);
    Ok(SublinearityReport {
        trials,
        seed,
        points,
        decreasing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub ideal: String,
    pub mean: f64,
    pub max: f64,
    pub per_trial: Vec<f64>,
}

/// Density of `ideal` along sampled Plancherel numberings of `ℤ²₊` with
/// `n` elements.
pub fn sampled_density(
    n: usize,
    trials: usize,
    seed: u64,
    ideal: &IdealSpec,
    limits: &Limits,
) -> Result<DensityReport> {
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let per_trial: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let sample = sample_growth_trial(n, seed, trial, limits)?;
            ideal_density(&MonotoneNumbering::from_tableau(&sample.tableau), ideal)
        })
        .collect::<Result<_>>()?;
    let mean = per_trial.iter().sum::<f64>() / trials as f64;
    let max = per_trial.iter().copied().fold(0.0, f64::max);
    Ok(DensityReport {
        n,
        trials,
        seed,
        ideal: ideal.to_string(),
        mean,
        max,
        per_trial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_is_degenerate() {
        let r = first_row_statistics(1, 10, 5, &Limits::default()).unwrap();
        assert!(r.per_trial.iter().all(|t| t.ratio == 1.0));
        assert_eq!(r.mean_ratio, 1.0);
        assert_eq!(r.std_ratio, 0.0);
    }

    #[test]
    fn replay_is_exact() {
        let lim = Limits::default();
        let a = first_row_statistics(300, 20, 77, &lim).unwrap();
        let b = first_row_statistics(300, 20, 77, &lim).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, first_row_statistics(300, 20, 78, &lim).unwrap());
    }

    #[test]
    fn pigeonhole_per_sample() {
        let r = first_row_statistics(400, 40, 1, &Limits::default()).unwrap();
        assert!(r.per_trial.iter().all(|t| t.lambda1 >= 20 || t.lambda1_prime >= 20));
    }

    #[test]
    fn argument_checks() {
        let lim = Limits::default();
        assert!(first_row_statistics(10, 9, 1, &lim).is_err());
        assert!(first_row_statistics(200_000, 10, 1, &lim).unwrap_err().is_resource_limit());
        assert!(sublinearity_check(&[100, 100], 10, 1, &lim).is_err());
        assert!(sublinearity_check(&[], 10, 1, &lim).is_err());
    }

    #[test]
    fn csv_layout() {
        let r = first_row_statistics(25, 10, 3, &Limits::default()).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("trial,lambda1,lambda1_prime,ratio"));
        assert_eq!(lines.count(), 10);
    }

    #[test]
    fn distance_of_empirical_laws() {
        assert_eq!(empirical_distance(&[1, 2], &[1, 2]), 0.0);
        assert_eq!(empirical_distance(&[1, 1], &[2, 2]), 1.0);
        assert!((empirical_distance(&[1, 2], &[1, 3]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn row_ideal_density_is_first_row_fraction() {
        let lim = Limits::default();
        let ideal: IdealSpec = "rows=0".parse().unwrap();
        let d = sampled_density(500, 5, 4, &ideal, &lim).unwrap();
        for (trial, v) in d.per_trial.iter().enumerate() {
            let shape = grow_shape(500, 4, trial as u64, &lim).unwrap();
            assert_eq!(*v, shape.first_row() as f64 / 500.0);
        }
        assert_eq!(d.ideal, "rows=0");
    }
}
