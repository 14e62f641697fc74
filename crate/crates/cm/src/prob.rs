//! Probability mass functions, conditional tables, joint tables, and truth
//! functions. Values are immutable after construction; every constructor
//! validates its invariants and renormalizes when the defect is within
//! tolerance.

use crate::error::{Error, Result};

/// Tolerance for "sums to 1" checks on construction.
pub const PMF_TOL: f64 = 1e-9;

/// A probability mass function over a finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    weights: Vec<f64>,
}

impl Pmf {
    /// Requires nonnegative weights summing to 1 within `PMF_TOL`; the stored
    /// weights are renormalized so they sum to exactly 1.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let sum = validate_nonneg(&weights, "pmf")?;
        if (sum - 1.0).abs() > PMF_TOL {
            return Err(Error::Validation(format!(
                "pmf weights sum to {sum}, expected 1 within {PMF_TOL}"
            )));
        }
        Ok(Self::renormalized(weights, sum))
    }

    /// Normalizes arbitrary nonnegative weights with positive total mass.
    pub fn from_unnormalized(weights: Vec<f64>) -> Result<Self> {
        let sum = validate_nonneg(&weights, "pmf")?;
        if sum <= 0.0 {
            return Err(Error::Support("pmf has zero total mass".into()));
        }
        Ok(Self::renormalized(weights, sum))
    }

    fn renormalized(mut weights: Vec<f64>, sum: f64) -> Self {
        for w in &mut weights {
            *w /= sum;
        }
        Pmf { weights }
    }

    pub fn uniform(n: usize) -> Self {
        Pmf {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights.iter().copied()
    }
}

/// A family of PMFs over a shared support, one per condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPmf {
    rows: Vec<Pmf>,
}

impl ConditionalPmf {
    pub fn new(rows: Vec<Pmf>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Validation(
                "conditional pmf needs at least one row".into(),
            ));
        }
        let support = rows[0].len();
        if rows.iter().any(|r| r.len() != support) {
            return Err(Error::Validation(
                "conditional pmf rows must share one support".into(),
            ));
        }
        Ok(ConditionalPmf { rows })
    }

    pub fn n_conditions(&self) -> usize {
        self.rows.len()
    }

    pub fn support_len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &Pmf {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Pmf] {
        &self.rows
    }
}

/// A joint PMF P(x_i, y_j) stored row-major (rows = classes x, cols = labels y).
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<f64>,
}

impl JointPmf {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::Validation(format!(
                "joint pmf expects {} entries, got {}",
                n_rows * n_cols,
                entries.len()
            )));
        }
        let sum = validate_nonneg(&entries, "joint pmf")?;
        if (sum - 1.0).abs() > PMF_TOL {
            return Err(Error::Validation(format!(
                "joint pmf entries sum to {sum}, expected 1 within {PMF_TOL}"
            )));
        }
        let entries = entries.into_iter().map(|e| e / sum).collect();
        Ok(JointPmf {
            n_rows,
            n_cols,
            entries,
        })
    }

    /// P(x, y) = P(x) P(y|x).
    pub fn from_prior_and_channel(prior: &Pmf, channel: &ConditionalPmf) -> Result<Self> {
        if prior.len() != channel.n_conditions() {
            return Err(Error::Validation(format!(
                "prior has {} classes but channel has {} rows",
                prior.len(),
                channel.n_conditions()
            )));
        }
        let n_cols = channel.support_len();
        let mut entries = Vec::with_capacity(prior.len() * n_cols);
        for (i, p) in prior.iter().enumerate() {
            entries.extend(channel.row(i).iter().map(|c| p * c));
        }
        JointPmf::new(prior.len(), n_cols, entries)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n_cols + j]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n_rows];
        for (i, row_sum) in m.iter_mut().enumerate() {
            for j in 0..self.n_cols {
                *row_sum += self.get(i, j);
            }
        }
        m
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n_cols];
        for i in 0..self.n_rows {
            for (j, col_sum) in m.iter_mut().enumerate() {
                *col_sum += self.get(i, j);
            }
        }
        m
    }
}

/// The truth (membership) function of one label across all classes:
/// T(θ_j | x_i) for i = 0..n.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthFunction {
    values: Vec<f64>,
}

impl TruthFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation(
                "truth function needs at least one class".into(),
            ));
        }
        if let Some(v) = values
            .iter()
            .find(|v| !(0.0..=1.0).contains(*v) || v.is_nan())
        {
            return Err(Error::Validation(format!("truth value {v} outside [0, 1]")));
        }
        Ok(TruthFunction { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn validate_nonneg(weights: &[f64], what: &str) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::Validation(format!(
            "{what} needs at least one weight"
        )));
    }
    let mut sum = 0.0;
    for &w in weights {
        if w.is_nan() || w < 0.0 {
            return Err(Error::Validation(format!(
                "{what} weight {w} is negative or NaN"
            )));
        }
        sum += w;
    }
    if !sum.is_finite() {
        return Err(Error::Validation(format!("{what} weights sum to {sum}")));
    }
    Ok(sum)
}
