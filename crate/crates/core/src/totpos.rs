//! Total positivity of one-sided sequences through Toeplitz minors, the
//! Edrei–Thoma family and generating functions of characters on cycles.
//!
//! Everything here is exact rational arithmetic.

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Error, Result};
use crate::limits::Limits;
use crate::rational::{from_u64, serde_pq};
use crate::rng::substream;

/// Coefficients `c_0..c_N`; every other index reads as zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefficientSequence(#[serde(with = "serde_pq::vec")] pub Vec<BigRational>);

impl CoefficientSequence {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        CoefficientSequence(coeffs)
    }

    /// `c_n = 1/n!` for `n ≤ order`.
    pub fn exp(order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        for n in 0..=order {
            if n > 0 {
                c /= from_u64(n as u64);
            }
            out.push(c.clone());
        }
        CoefficientSequence(out)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        CoefficientSequence(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// Truncation order `N`; `None` for the empty sequence.
    pub fn order(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn get(&self, k: i64) -> BigRational {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.0.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Exact determinant of `(c_{i_s - j_t})_{s,t}`.
pub fn toeplitz_minor(
    c: &CoefficientSequence,
    rows: &[usize],
    cols: &[usize],
    limits: &Limits,
) -> Result<BigRational> {
    if rows.len() != cols.len() {
        return Err(Error::domain(format!(
            "minor needs as many rows as columns, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    ensure_cap("minor order", rows.len(), limits.minor_order)?;
    let entries: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| c.get(i as i64 - j as i64)).collect())
        .collect();
    let scale = entries
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = entries
        .iter()
        .map(|row| row.iter().map(|q| (q * &scale).to_integer()).collect())
        .collect();
    let det = bareiss(scaled);
    Ok(BigRational::new(det, num_traits::pow(scale, rows.len())))
}

/// Fraction-free elimination; every division is exact.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No negative minor exists within the checked order and window.
    TotallyPositiveUpToOrder,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "serde_pq")]
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TPReport {
    pub max_order: usize,
    pub window: usize,
    pub verdict: Verdict,
    /// Total number of minors swept; only reported when none was negative.
    pub minors_checked: Option<u64>,
    pub witness: Option<MinorWitness>,
}

/// Sweeps every minor with row and column index sets drawn from
/// `0..window` of size at most `max_order`.
///
/// The witness, if any, is the first negative minor in the order (size,
/// rows lexicographically, columns lexicographically).
pub fn check_total_positivity(
    c: &CoefficientSequence,
    max_order: usize,
    window: usize,
    limits: &Limits,
) -> Result<TPReport> {
    ensure_cap("minor order", max_order, limits.minor_order)?;
    ensure_cap("minor window", window, limits.minor_window)?;
    let span = window.saturating_sub(1) as i64;
    let relevant: Vec<BigRational> = (-span..=span).map(|k| c.get(k)).collect();
    let scale = relevant
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = (0..window)
        .map(|k| (c.get(k as i64) * &scale).to_integer())
        .collect();
    let entry = |d: i64| -> BigInt {
        if d < 0 {
            BigInt::zero()
        } else {
            ints[d as usize].clone()
        }
    };
    let mut checked = 0u64;
    for size in 1..=max_order.min(window) {
        let subsets: Vec<Vec<usize>> = (0..window).combinations(size).collect();
        let found = subsets.par_iter().find_map_first(|rows| {
            subsets.iter().find_map(|cols| {
                let m = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| entry(i as i64 - j as i64)).collect())
                    .collect();
                (bareiss(m).sign() == Sign::Minus).then(|| (rows.clone(), cols.clone()))
            })
        });
        if let Some((rows, cols)) = found {
            let value = toeplitz_minor(c, &rows, &cols, limits)?;
            debug_assert!(value.is_negative());
            return Ok(TPReport {
                max_order,
                window,
                verdict: Verdict::Counterexample,
                minors_checked: None,
                witness: Some(MinorWitness { rows, cols, value }),
            });
        }
        checked += (subsets.len() as u64).pow(2);
    }
    Ok(TPReport {
        max_order,
        window,
        verdict: Verdict::TotallyPositiveUpToOrder,
        minors_checked: Some(checked),
        witness: None,
    })
}

/// Parameters of `z^m e^{γz} ∏(1 + α_i z) / ∏(1 − β_i z)`, finitely many
/// `α` and `β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawThoma", into = "RawThoma")]
pub struct ThomaParams {
    alpha: Vec<BigRational>,
    beta: Vec<BigRational>,
    gamma: BigRational,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct RawThoma {
    #[serde(with = "serde_pq::vec", default)]
    alpha: Vec<BigRational>,
    #[serde(with = "serde_pq::vec", default)]
    beta: Vec<BigRational>,
    #[serde(with = "serde_pq")]
    gamma: BigRational,
    #[serde(default)]
    m: usize,
}

impl TryFrom<RawThoma> for ThomaParams {
    type Error = Error;
    fn try_from(r: RawThoma) -> Result<Self> {
        ThomaParams::new(r.alpha, r.beta, r.gamma, r.m)
    }
}

impl From<ThomaParams> for RawThoma {
    fn from(p: ThomaParams) -> Self {
        RawThoma {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            m: p.m,
        }
    }
}

impl ThomaParams {
    pub fn new(alpha: Vec<BigRational>, beta: Vec<BigRational>, gamma: BigRational, m: usize) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if v.iter().any(|x| x.is_negative()) {
                return Err(Error::validation(format!("{name} has a negative entry")));
            }
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::validation(format!("{name} is not weakly decreasing")));
            }
        }
        if gamma.is_negative() {
            return Err(Error::validation("gamma is negative"));
        }
        let total: BigRational = alpha.iter().chain(&beta).sum::<BigRational>() + &gamma;
        if !total.is_one() {
            return Err(Error::validation(format!(
                "alpha, beta and gamma sum to {}, not 1",
                crate::rational::to_pq(&total)
            )));
        }
        Ok(ThomaParams { alpha, beta, gamma, m })
    }

    /// `γ = 1`: the exponential.
    pub fn exponential() -> Self {
        ThomaParams {
            alpha: vec![],
            beta: vec![],
            gamma: BigRational::one(),
            m: 0,
        }
    }

    /// A reproducible parameter set with at most three `α` and three `β`.
    pub fn seeded(seed: u64, index: u64) -> Self {
        let mut rng = substream(seed, index);
        let draw = |rng: &mut crate::rng::TrialRng| -> Vec<u64> {
            let count = rng.random_range(0..=3usize);
            let mut v: Vec<u64> = (0..count).map(|_| rng.random_range(1..=9)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        let alpha_w = draw(&mut rng);
        let beta_w = draw(&mut rng);
        let mut gamma_w: u64 = rng.random_range(0..=4);
        if alpha_w.is_empty() && beta_w.is_empty() {
            gamma_w = gamma_w.max(1);
        }
        let m = rng.random_range(0..=2);
        let total = alpha_w.iter().chain(&beta_w).sum::<u64>() + gamma_w;
        let frac = |w: u64| BigRational::new(w.into(), total.into());
        ThomaParams {
            alpha: alpha_w.into_iter().map(frac).collect(),
            beta: beta_w.into_iter().map(frac).collect(),
            gamma: frac(gamma_w),
            m,
        }
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[BigRational] {
        &self.beta
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Taylor coefficients `c_0..c_order` of the Thoma function.
pub fn thoma_coefficients(p: &ThomaParams, order: usize, limits: &Limits) -> Result<CoefficientSequence> {
    ensure_cap("series order", order, limits.series_order)?;
    let len = order + 1;
    let mut s = Vec::with_capacity(len);
    let mut term = BigRational::one();
    for k in 0..len {
        if k > 0 {
            term = term * &p.gamma / from_u64(k as u64);
        }
        s.push(term.clone());
    }
    for a in &p.alpha {
        for k in (1..len).rev() {
            let prev = &s[k - 1] * a;
            s[k] += prev;
        }
    }
    for b in &p.beta {
        for k in 1..len {
            let prev = &s[k - 1] * b;
            s[k] += prev;
        }
    }
    let mut out = vec![BigRational::zero(); len];
    for k in p.m..len {
        out[k] = s[k - p.m].clone();
    }
    Ok(CoefficientSequence(out))
}

/// Coefficients of `exp(Σ_{k≥1} χ(k) z^k / k)` up to `z^order`, where
/// `chi[k-1] = χ(k)` and missing values count as zero.
pub fn character_gf(chi: &[BigRational], order: usize, limits: &Limits) -> Result<CoefficientSequence> {
    ensure_cap("series order", order, limits.series_order)?;
    if !chi.first().is_some_and(|c| c.is_one()) {
        return Err(Error::validation("the character must take the value 1 on the identity"));
    }
    let chi_at = |k: usize| chi.get(k - 1).cloned().unwrap_or_else(BigRational::zero);
    // F' = S'F gives n f_n = Σ_{k=1}^{n} χ(k) f_{n-k}
    let mut f = vec![BigRational::one()];
    for n in 1..=order {
        let sum: BigRational = (1..=n).map(|k| chi_at(k) * &f[n - k]).sum();
        f.push(sum / from_u64(n as u64));
    }
    Ok(CoefficientSequence(f))
}
