//! Shannon and semantic information measures. All quantities are in bits.
//!
//! Conventions: 0·log 0 := 0 everywhere; positive probability over a zero
//! model value is an error rather than a silent −∞.

use crate::error::{Error, Result};
use crate::prob::{JointPmf, Pmf, TruthFunction};

pub const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// Shannon mutual information of a joint distribution, in bits.
pub fn shannon_mi(joint: &JointPmf) -> f64 {
    let rows = joint.row_marginal();
    let cols = joint.col_marginal();
    let mut mi = 0.0;
    for (i, &pr) in rows.iter().enumerate() {
        for (j, &pc) in cols.iter().enumerate() {
            let p = joint.get(i, j);
            if p > 0.0 {
                mi += p * (p / (pr * pc)).log2();
            }
        }
    }
    mi
}

/// Logical probability T(θ_j) of a label: the prior-weighted average of its
/// truth function (Zadeh's probability of a fuzzy event).
pub fn logical_probability(t: &TruthFunction, prior: &Pmf) -> Result<f64> {
    check_class_count(t.len(), prior.len())?;
    Ok(t.values()
        .iter()
        .zip(prior.iter())
        .map(|(v, p)| v * p)
        .sum())
}

/// Likelihood P(X|θ_j) from a truth function and a prior:
/// T(θ_j|x_i) P(x_i) / T(θ_j).
pub fn likelihood_from_truth(t: &TruthFunction, prior: &Pmf) -> Result<Pmf> {
    let logical = logical_probability(t, prior)?;
    if logical <= 0.0 {
        return Err(Error::DegenerateTruth);
    }
    Pmf::new(
        t.values()
            .iter()
            .zip(prior.iter())
            .map(|(v, p)| v * p / logical)
            .collect(),
    )
}

/// Truth function from a likelihood and a prior: the ratio P(x|θ_j)/P(x)
/// longitudinally normalized so its maximum is 1.
pub fn truth_from_likelihood(likelihood: &Pmf, prior: &Pmf) -> Result<TruthFunction> {
    check_class_count(likelihood.len(), prior.len())?;
    let mut ratios = Vec::with_capacity(prior.len());
    for (i, (l, p)) in likelihood.iter().zip(prior.iter()).enumerate() {
        if p <= 0.0 {
            if l > 0.0 {
                return Err(Error::UndefinedRatio { class: i });
            }
            ratios.push(0.0);
        } else {
            ratios.push(l / p);
        }
    }
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max <= 0.0 {
        return Err(Error::DegenerateTruth);
    }
    TruthFunction::new(ratios.into_iter().map(|r| (r / max).min(1.0)).collect())
}

/// Log-likelihood of a counted sample under a model, in bits:
/// Σ_i N_i log2 P(x_i|θ). Equals −N · H(empirical, model).
pub fn sample_log_likelihood(counts: &[u64], model: &Pmf) -> Result<f64> {
    check_class_count(counts.len(), model.len())?;
    if counts.iter().sum::<u64>() == 0 {
        return Err(Error::Domain("sample has zero total count".into()));
    }
    let mut ll = 0.0;
    for (i, &n) in counts.iter().enumerate() {
        if n > 0 {
            let p = model.get(i);
            if p <= 0.0 {
                return Err(Error::Domain(format!(
                    "model probability is zero at class {i} with count {n}"
                )));
            }
            ll += n as f64 * p.log2();
        }
    }
    Ok(ll)
}

/// Semantic information of one (instance, label) pair:
/// log2 T(θ_j|x_i) / T(θ_j). Negative when the hypothesis overshoots its
/// logical probability.
pub fn semantic_info_point(t_value: f64, t_logical: f64) -> Result<f64> {
    if !(t_value > 0.0 && t_logical > 0.0) {
        return Err(Error::Domain(format!(
            "semantic information needs positive arguments, got T={t_value}, T(θ)={t_logical}"
        )));
    }
    Ok((t_value / t_logical).log2())
}

/// Conditional semantic information of a label given a sampling distribution
/// over classes: Σ_i P(x_i|y_j) log2 T(θ_j|x_i)/T(θ_j).
pub fn semantic_info_conditional(sampling: &Pmf, t: &TruthFunction, t_logical: f64) -> Result<f64> {
    check_class_count(sampling.len(), t.len())?;
    let mut info = 0.0;
    for (i, p) in sampling.iter().enumerate() {
        if p > 0.0 {
            info += p * semantic_info_point(t.get(i), t_logical)?;
        }
    }
    Ok(info)
}

/// Semantic mutual information: Σ_j Σ_i P(x_i, y_j) log2 T(θ_j|x_i)/T(θ_j).
/// Upper-bounded by `shannon_mi` of the same joint, with equality when the
/// ratio matches P(y_j|x_i)/P(y_j).
pub fn semantic_mi(joint: &JointPmf, truths: &[TruthFunction], logicals: &[f64]) -> Result<f64> {
    if truths.len() != joint.n_cols() || logicals.len() != joint.n_cols() {
        return Err(Error::Validation(format!(
            "expected one truth function and logical probability per label ({}), got {} and {}",
            joint.n_cols(),
            truths.len(),
            logicals.len()
        )));
    }
    let mut smi = 0.0;
    for (j, (t, &logical)) in truths.iter().zip(logicals).enumerate() {
        check_class_count(t.len(), joint.n_rows())?;
        for i in 0..joint.n_rows() {
            let p = joint.get(i, j);
            if p > 0.0 {
                smi += p * semantic_info_point(t.get(i), logical)?;
            }
        }
    }
    Ok(smi)
}

/// The entropy decomposition of semantic MI for Gaussian truth functions
/// T(θ_j|x) = exp[−(x−μ_j)²/(2σ²)]: I(X;θ) = H(θ) − H(θ|X).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSmiParts {
    /// H(θ) = −Σ_j P(y_j) log2 T(θ_j), bits.
    pub h_theta: f64,
    /// H(θ|X) = Σ_j Σ_i P(x_i,y_j) (x_i−μ_j)²/(2σ²), bits.
    pub h_theta_given_x: f64,
    /// H(θ) − H(θ|X).
    pub smi: f64,
}

/// Evaluates Gaussian truth functions at explicit per-class real values and
/// returns both entropy terms alongside their difference. Agrees with
/// `semantic_mi` built from the same truth functions.
pub fn semantic_mi_gaussian_decomposition(
    joint: &JointPmf,
    class_values: &[f64],
    mus: &[f64],
    sigma: f64,
) -> Result<GaussianSmiParts> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    check_class_count(class_values.len(), joint.n_rows())?;
    if mus.len() != joint.n_cols() {
        return Err(Error::Validation(format!(
            "expected one mean per label ({}), got {}",
            joint.n_cols(),
            mus.len()
        )));
    }
    let priors = joint.row_marginal();
    let labels = joint.col_marginal();
    let two_sigma_sq = 2.0 * sigma * sigma;

    let mut h_theta = 0.0;
    let mut h_cond = 0.0;
    for (j, &mu) in mus.iter().enumerate() {
        let logical: f64 = class_values
            .iter()
            .zip(&priors)
            .map(|(&x, &p)| p * (-(x - mu).powi(2) / two_sigma_sq).exp())
            .sum();
        if logical <= 0.0 {
            return Err(Error::DegenerateTruth);
        }
        if labels[j] > 0.0 {
            h_theta -= labels[j] * logical.log2();
        }
        for (i, &x) in class_values.iter().enumerate() {
            let p = joint.get(i, j);
            if p > 0.0 {
                h_cond += p * (x - mu).powi(2) / two_sigma_sq * LOG2_E;
            }
        }
    }
    Ok(GaussianSmiParts {
        h_theta,
        h_theta_given_x: h_cond,
        smi: h_theta - h_cond,
    })
}

fn check_class_count(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Validation(format!(
            "class count mismatch: {a} vs {b}"
        )));
    }
    Ok(())
}
