//! The channel-matching loop: Shannon channel from a partition, semantic
//! channel from the Shannon channel (Matching I), conditional-information
//! surfaces, reclassification (Matching II), and the iteration driver.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::ClassSetup;
use crate::grid::FeatureGrid;
use crate::info::shannon_mi;
use crate::prob::{ConditionalPmf, JointPmf, Pmf};

/// A label per grid cell: the partition S = {C_0, C_1, …} of the feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    grid: FeatureGrid,
    labels: Vec<u32>,
    n_labels: u32,
}

impl Partition {
    pub fn new(grid: FeatureGrid, labels: Vec<u32>, n_labels: u32) -> Result<Self> {
        if n_labels == 0 {
            return Err(Error::Validation(
                "partition needs at least one label".into(),
            ));
        }
        if labels.len() != grid.cell_count() {
            return Err(Error::Validation(format!(
                "{} labels for {} grid cells",
                labels.len(),
                grid.cell_count()
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= n_labels) {
            return Err(Error::Validation(format!(
                "label {l} out of range 0..{n_labels}"
            )));
        }
        Ok(Partition {
            grid,
            labels,
            n_labels,
        })
    }

    pub fn grid(&self) -> &FeatureGrid {
        &self.grid
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, flat: usize) -> u32 {
        self.labels[flat]
    }

    pub fn n_labels(&self) -> u32 {
        self.n_labels
    }

    /// Applies a label permutation; `perm[old] = new`.
    pub fn permute_labels(&self, perm: &[u32]) -> Result<Partition> {
        if perm.len() != self.n_labels as usize {
            return Err(Error::Validation("permutation length mismatch".into()));
        }
        let labels = self.labels.iter().map(|&l| perm[l as usize]).collect();
        Partition::new(self.grid.clone(), labels, self.n_labels)
    }
}

/// The ratio table standing in for T(θ_j|x_i)/T(θ_j), one value per
/// (label, class), derived from the Shannon channel by Matching I.
#[derive(Debug, Clone, PartialEq)]
pub struct SemanticChannelTable {
    // label-major: ratios[j * n_classes + i]
    ratios: Vec<f64>,
    n_labels: usize,
    n_classes: usize,
    active: Vec<bool>,
    eps: f64,
}

impl SemanticChannelTable {
    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn ratio(&self, label: usize, class: usize) -> f64 {
        self.ratios[label * self.n_classes + class]
    }

    pub fn is_active(&self, label: usize) -> bool {
        self.active[label]
    }

    pub fn smoothing_eps(&self) -> f64 {
        self.eps
    }
}

/// Knobs for the iteration driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmConfig {
    pub max_iters: usize,
    /// Stop when the Shannon MI improvement falls below this (bits).
    pub mi_tol: f64,
    /// Floor added to channel entries before Matching I.
    pub channel_smoothing_eps: f64,
}

impl Default for CmConfig {
    fn default() -> Self {
        CmConfig {
            max_iters: 50,
            mi_tol: 1e-9,
            channel_smoothing_eps: 1e-12,
        }
    }
}

impl CmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Validation("max_iters must be at least 1".into()));
        }
        if self.mi_tol < 0.0 || self.channel_smoothing_eps < 0.0 {
            return Err(Error::Validation(
                "mi_tol and smoothing eps must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub shannon_mi_bits: f64,
    pub semantic_mi_bits: f64,
    pub cells_changed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub records: Vec<IterationRecord>,
    /// Partition after the Matching II step of each recorded iteration.
    pub partitions: Vec<Partition>,
    pub converged: bool,
    pub final_partition: Partition,
}

/// Shannon channel of a partition: P(y_j|x_i) = Σ_{z ∈ C_j} P(z|x_i). Rows are classes,
/// columns labels.
pub fn shannon_channel(partition: &Partition, setup: &ClassSetup) -> Result<ConditionalPmf> {
    if partition.grid() != &setup.grid {
        return Err(Error::Validation(
            "partition grid differs from setup grid".into(),
        ));
    }
    let n_labels = partition.n_labels() as usize;
    let mut rows = Vec::with_capacity(setup.n_classes());
    for class in 0..setup.n_classes() {
        let cond = setup.conditionals.row(class);
        let mut row = vec![0.0; n_labels];
        for (flat, &label) in partition.labels().iter().enumerate() {
            row[label as usize] += cond.get(flat);
        }
        rows.push(Pmf::new(row)?);
    }
    ConditionalPmf::new(rows)
}

/// Matching I: derive the semantic channel from a Shannon channel. With
/// `eps = 0` the ratios are exactly P(y_j|x_i)/P(y_j); a positive eps floors
/// channel entries first so no label dies permanently.
pub fn matching_one(channel: &ConditionalPmf, priors: &Pmf, eps: f64) -> SemanticChannelTable {
    let n_classes = channel.n_conditions();
    let n_labels = channel.support_len();
    // floor and renormalize each row
    let mut smoothed = vec![0.0; n_classes * n_labels];
    for i in 0..n_classes {
        let row = channel.row(i);
        let sum: f64 = row.iter().map(|c| c + eps).sum();
        for j in 0..n_labels {
            smoothed[i * n_labels + j] = (row.get(j) + eps) / sum;
        }
    }
    let mut label_prob = vec![0.0; n_labels];
    for i in 0..n_classes {
        let p = priors.get(i);
        for j in 0..n_labels {
            label_prob[j] += p * smoothed[i * n_labels + j];
        }
    }
    let active: Vec<bool> = label_prob.iter().map(|&p| p > 0.0).collect();
    let mut ratios = vec![0.0; n_labels * n_classes];
    for j in 0..n_labels {
        if active[j] {
            for i in 0..n_classes {
                ratios[j * n_classes + i] = smoothed[i * n_labels + j] / label_prob[j];
            }
        }
    }
    SemanticChannelTable {
        ratios,
        n_labels,
        n_classes,
        active,
        eps,
    }
}

// Per-cell P(z) and posteriors P(x_i|z), class-major.
struct CellPosteriors {
    pz: Vec<f64>,
    // post[class * n_cells + cell]
    post: Vec<f64>,
    n_cells: usize,
}

fn cell_posteriors(setup: &ClassSetup) -> CellPosteriors {
    let n_cells = setup.grid.cell_count();
    let n_classes = setup.n_classes();
    let mut pz = vec![0.0; n_cells];
    for i in 0..n_classes {
        let p = setup.priors.get(i);
        let row = setup.conditionals.row(i);
        for (z, mass) in pz.iter_mut().enumerate() {
            *mass += p * row.get(z);
        }
    }
    let mut post = vec![0.0; n_classes * n_cells];
    for i in 0..n_classes {
        let p = setup.priors.get(i);
        let row = setup.conditionals.row(i);
        for z in 0..n_cells {
            if pz[z] > 0.0 {
                post[i * n_cells + z] = p * row.get(z) / pz[z];
            }
        }
    }
    CellPosteriors { pz, post, n_cells }
}

/// Conditional-information surface for one label: I(X;θ_j|z) per cell. Cells with P(z) = 0 are
/// NaN (undefined); a zero ratio under positive posterior weight yields −∞.
pub fn info_surface(
    semantic: &SemanticChannelTable,
    setup: &ClassSetup,
    label: usize,
) -> Result<Vec<f64>> {
    if label >= semantic.n_labels() {
        return Err(Error::Validation(format!("label {label} out of range")));
    }
    if !semantic.is_active(label) {
        return Err(Error::Validation(format!("label {label} is inactive")));
    }
    if semantic.n_classes() != setup.n_classes() {
        return Err(Error::Validation(
            "semantic table class count differs from setup".into(),
        ));
    }
    let cells = cell_posteriors(setup);
    let log_ratios: Vec<f64> = (0..setup.n_classes())
        .map(|i| {
            let r = semantic.ratio(label, i);
            if r > 0.0 {
                r.log2()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    Ok((0..cells.n_cells)
        .map(|z| {
            if cells.pz[z] > 0.0 {
                surface_value(&cells, &log_ratios, z)
            } else {
                f64::NAN
            }
        })
        .collect())
}

fn surface_value(cells: &CellPosteriors, log_ratios: &[f64], z: usize) -> f64 {
    let mut v = 0.0;
    for (i, &lr) in log_ratios.iter().enumerate() {
        let p = cells.post[i * cells.n_cells + z];
        if p > 0.0 {
            if lr == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            v += p * lr;
        }
    }
    v
}

/// Matching II: every positive-density cell goes to the active label
/// maximizing its conditional information; ties go to the lowest label index;
/// zero-density cells (and cells where every label scores −∞) keep their
/// previous label.
pub fn matching_two(
    semantic: &SemanticChannelTable,
    setup: &ClassSetup,
    prev: &Partition,
) -> Result<Partition> {
    if prev.grid() != &setup.grid {
        return Err(Error::Validation(
            "partition grid differs from setup grid".into(),
        ));
    }
    if semantic.n_classes() != setup.n_classes() {
        return Err(Error::Validation(
            "semantic table class count differs from setup".into(),
        ));
    }
    if semantic.n_labels() != prev.n_labels() as usize {
        return Err(Error::Validation(
            "semantic table label count differs from partition".into(),
        ));
    }
    if !(0..semantic.n_labels()).any(|j| semantic.is_active(j)) {
        return Err(Error::Config("all labels are inactive".into()));
    }
    let cells = cell_posteriors(setup);
    let n_classes = setup.n_classes();
    let log_ratios: Vec<Vec<f64>> = (0..semantic.n_labels())
        .map(|j| {
            (0..n_classes)
                .map(|i| {
                    let r = semantic.ratio(j, i);
                    if r > 0.0 {
                        r.log2()
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect()
        })
        .collect();
    let mut labels = Vec::with_capacity(cells.n_cells);
    for z in 0..cells.n_cells {
        if cells.pz[z] <= 0.0 {
            labels.push(prev.label(z));
            continue;
        }
        let mut best_label = None;
        let mut best_value = f64::NEG_INFINITY;
        for (j, lr) in log_ratios.iter().enumerate() {
            if !semantic.is_active(j) {
                continue;
            }
            let v = surface_value(&cells, lr, z);
            if v > best_value {
                best_value = v;
                best_label = Some(j as u32);
            }
        }
        match best_label {
            Some(l) if best_value > f64::NEG_INFINITY => labels.push(l),
            _ => labels.push(prev.label(z)),
        }
    }
    Partition::new(setup.grid.clone(), labels, prev.n_labels())
}

/// Shannon MI (bits) of the joint induced by a partition through its channel.
pub fn partition_mi(partition: &Partition, setup: &ClassSetup) -> Result<f64> {
    let channel = shannon_channel(partition, setup)?;
    let joint = JointPmf::from_prior_and_channel(&setup.priors, &channel)?;
    Ok(shannon_mi(&joint))
}

/// Runs the CM loop: repeat Matching I and Matching II until the partition is
/// a fixed point, the MI improvement drops below `mi_tol`, or `max_iters` is
/// reached. Both MI figures are measured after the Matching II step of each
/// iteration; the semantic MI uses the ratios the step classified with.
pub fn run_cm(setup: &ClassSetup, init: &Partition, config: &CmConfig) -> Result<IterationTrace> {
    config.validate()?;
    if init.grid() != &setup.grid {
        return Err(Error::Validation(
            "init partition grid differs from setup grid".into(),
        ));
    }
    let mut partition = init.clone();
    let mut prev_mi = partition_mi(&partition, setup)?;
    let mut records = Vec::new();
    let mut partitions = Vec::new();
    let mut converged = false;

    for iter in 1..=config.max_iters {
        let channel = shannon_channel(&partition, setup)?;
        let semantic = matching_one(&channel, &setup.priors, config.channel_smoothing_eps);
        let next = matching_two(&semantic, setup, &partition)?;
        let cells_changed = partition
            .labels()
            .iter()
            .zip(next.labels())
            .filter(|(a, b)| a != b)
            .count();
        partition = next;

        let channel_after = shannon_channel(&partition, setup)?;
        let joint = JointPmf::from_prior_and_channel(&setup.priors, &channel_after)?;
        let shannon = shannon_mi(&joint);
        let semantic_bits = semantic_mi_of_ratios(&joint, &semantic);
        records.push(IterationRecord {
            iter,
            shannon_mi_bits: shannon,
            semantic_mi_bits: semantic_bits,
            cells_changed,
        });
        partitions.push(partition.clone());

        if cells_changed == 0 {
            converged = true;
            break;
        }
        if shannon - prev_mi < config.mi_tol {
            // floating-point cycling guard; not a fixed point
            break;
        }
        prev_mi = shannon;
    }
    Ok(IterationTrace {
        records,
        partitions,
        converged,
        final_partition: partition,
    })
}

/// Semantic MI with an explicit ratio table: Σ_ij P(x_i, y_j) log2 r_j(x_i).
pub fn semantic_mi_of_ratios(joint: &JointPmf, semantic: &SemanticChannelTable) -> f64 {
    let mut smi = 0.0;
    for i in 0..joint.n_rows() {
        for j in 0..joint.n_cols() {
            let p = joint.get(i, j);
            if p > 0.0 {
                let r = semantic.ratio(j, i);
                if r > 0.0 {
                    smi += p * r.log2();
                } else {
                    return f64::NEG_INFINITY;
                }
            }
        }
    }
    smi
}

/// Equal-width vertical bands along the m-axis, labeled left to right.
pub fn init_vertical(grid: &FeatureGrid, n_labels: u32) -> Result<Partition> {
    banded_init(grid, n_labels, 0)
}

/// Equal-height horizontal bands along the n-axis, labeled bottom to top.
pub fn init_horizontal(grid: &FeatureGrid, n_labels: u32) -> Result<Partition> {
    banded_init(grid, n_labels, 1)
}

fn banded_init(grid: &FeatureGrid, n_labels: u32, axis: usize) -> Result<Partition> {
    if grid.dim() != 2 {
        return Err(Error::Validation(
            "vertical/horizontal init requires a 2D grid".into(),
        ));
    }
    if n_labels < 2 {
        return Err(Error::Validation(
            "banded init needs at least 2 labels".into(),
        ));
    }
    let count = grid.axis(axis).cell_count();
    let labels = (0..grid.cell_count())
        .map(|flat| {
            let (m, n) = grid.indices(flat);
            let idx = if axis == 0 { m } else { n };
            ((idx * n_labels as usize / count) as u32).min(n_labels - 1)
        })
        .collect();
    Partition::new(grid.clone(), labels, n_labels)
}

/// Two-label 1D init: label 0 below `z_prime`, label 1 at and above it.
pub fn init_threshold_1d(grid: &FeatureGrid, z_prime: f64) -> Result<Partition> {
    if grid.dim() != 1 {
        return Err(Error::Validation(
            "threshold init requires a 1D grid".into(),
        ));
    }
    let labels = (0..grid.cell_count())
        .map(|flat| u32::from(grid.coords(flat).0 >= z_prime))
        .collect();
    Partition::new(grid.clone(), labels, 2)
}

/// Seeded uniform random labeling; identical seeds give identical partitions.
pub fn init_random(grid: &FeatureGrid, n_labels: u32, seed: u64) -> Result<Partition> {
    if n_labels < 2 {
        return Err(Error::Validation(
            "random init needs at least 2 labels".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = (0..grid.cell_count())
        .map(|_| rng.gen_range(0..n_labels))
        .collect();
    Partition::new(grid.clone(), labels, n_labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{example1_setup, example2_setup};

    fn threshold_of(partition: &Partition) -> usize {
        partition.labels().iter().position(|&l| l == 1).unwrap()
    }

    #[test]
    fn single_label_channel_is_all_ones() {
        let setup = example1_setup();
        let part = Partition::new(setup.grid.clone(), vec![0; 101], 1).unwrap();
        let ch = shannon_channel(&part, &setup).unwrap();
        for i in 0..2 {
            assert!((ch.row(i).get(0) - 1.0).abs() < 1e-12);
        }
        assert!(partition_mi(&part, &setup).unwrap().abs() < 1e-12);
    }

    #[test]
    fn example1_threshold_50_channel_tail() {
        let setup = example1_setup();
        let part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let ch = shannon_channel(&part, &setup).unwrap();
        // P(y_1 | x_1): N(70, 10) mass in cells 50..=100, i.e. above 49.5
        // once cell centers and grid truncation are accounted for.
        assert!((ch.row(1).get(1) - 0.9798).abs() < 1e-3);
        for i in 0..2 {
            let sum: f64 = ch.row(i).iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn matching_one_identity_channel() {
        let channel = ConditionalPmf::new(vec![
            Pmf::new(vec![1.0, 0.0]).unwrap(),
            Pmf::new(vec![0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let sem = matching_one(&channel, &Pmf::uniform(2), 0.0);
        assert!((sem.ratio(0, 0) - 2.0).abs() < 1e-12);
        assert!((sem.ratio(1, 1) - 2.0).abs() < 1e-12);
        assert_eq!(sem.ratio(0, 1), 0.0);
        assert_eq!(sem.ratio(1, 0), 0.0);
    }

    #[test]
    fn matching_one_uniform_channel_carries_no_information() {
        let channel = ConditionalPmf::new(vec![Pmf::uniform(3), Pmf::uniform(3)]).unwrap();
        let sem = matching_one(&channel, &Pmf::new(vec![0.7, 0.3]).unwrap(), 0.0);
        for j in 0..3 {
            for i in 0..2 {
                assert!((sem.ratio(j, i) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matching_one_ratio_normalization_invariant() {
        // Σ_i P(x_i) r_j(x_i) = 1 for every active label
        let setup = example1_setup();
        let part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let ch = shannon_channel(&part, &setup).unwrap();
        for eps in [0.0, 1e-12, 1e-6] {
            let sem = matching_one(&ch, &setup.priors, eps);
            for j in 0..2 {
                let s: f64 = (0..2).map(|i| setup.priors.get(i) * sem.ratio(j, i)).sum();
                assert!((s - 1.0).abs() < 1e-6, "eps {eps} label {j}: {s}");
            }
        }
    }

    #[test]
    fn matching_one_hand_computed_ratios() {
        let setup = example1_setup();
        let part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let ch = shannon_channel(&part, &setup).unwrap();
        let sem = matching_one(&ch, &setup.priors, 0.0);
        for j in 0..2 {
            let py = 0.8 * ch.row(0).get(j) + 0.2 * ch.row(1).get(j);
            for i in 0..2 {
                assert!((sem.ratio(j, i) - ch.row(i).get(j) / py).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn info_surface_uniform_semantics_is_zero() {
        let setup = example1_setup();
        let channel = ConditionalPmf::new(vec![Pmf::uniform(2), Pmf::uniform(2)]).unwrap();
        let sem = matching_one(&channel, &setup.priors, 0.0);
        let surface = info_surface(&sem, &setup, 0).unwrap();
        assert!(surface.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn matching_two_first_step_from_threshold_50() {
        let setup = example1_setup();
        let part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let ch = shannon_channel(&part, &setup).unwrap();
        let sem = matching_one(&ch, &setup.priors, 1e-12);
        let next = matching_two(&sem, &setup, &part).unwrap();
        assert_eq!(threshold_of(&next), 53);
    }

    #[test]
    fn matching_two_tie_rule_prefers_lowest_label() {
        let setup = example1_setup();
        // identical uniform rows make every surface identical (zero)
        let channel = ConditionalPmf::new(vec![Pmf::uniform(2), Pmf::uniform(2)]).unwrap();
        let sem = matching_one(&channel, &setup.priors, 0.0);
        let part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let next = matching_two(&sem, &setup, &part).unwrap();
        assert!(next.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn run_cm_example1_trajectory() {
        let setup = example1_setup();
        let init = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let trace = run_cm(&setup, &init, &CmConfig::default()).unwrap();
        assert!(trace.converged);
        let thresholds: Vec<usize> = {
            // replay to observe per-iteration partitions
            let mut part = init.clone();
            let mut out = Vec::new();
            for _ in 0..trace.records.len() {
                let ch = shannon_channel(&part, &setup).unwrap();
                let sem = matching_one(&ch, &setup.priors, 1e-12);
                part = matching_two(&sem, &setup, &part).unwrap();
                out.push(threshold_of(&part));
            }
            out
        };
        assert_eq!(thresholds[0], 53);
        assert_eq!(thresholds[1], 54);
        assert_eq!(trace.records.last().unwrap().cells_changed, 0);
        assert!(trace.records.len() <= 4);
        // monotone MI
        for w in trace.records.windows(2) {
            assert!(w[1].shannon_mi_bits >= w[0].shannon_mi_bits - 1e-9);
        }
    }

    #[test]
    fn run_cm_fixed_point_is_stable() {
        let setup = example1_setup();
        let init = init_threshold_1d(&setup.grid, 50.0).unwrap();
        let trace = run_cm(&setup, &init, &CmConfig::default()).unwrap();
        let again = run_cm(&setup, &trace.final_partition, &CmConfig::default()).unwrap();
        assert!(again.converged);
        assert_eq!(again.records.len(), 1);
        assert_eq!(again.records[0].cells_changed, 0);
        assert_eq!(again.final_partition, trace.final_partition);
    }

    #[test]
    fn matched_channel_identity_along_the_run() {
        let setup = example1_setup();
        let mut part = init_threshold_1d(&setup.grid, 50.0).unwrap();
        for _ in 0..4 {
            let ch = shannon_channel(&part, &setup).unwrap();
            let sem = matching_one(&ch, &setup.priors, 0.0);
            let joint = JointPmf::from_prior_and_channel(&setup.priors, &ch).unwrap();
            let smi = semantic_mi_of_ratios(&joint, &sem);
            assert!((smi - shannon_mi(&joint)).abs() < 1e-9);
            part = matching_two(&sem, &setup, &part).unwrap();
        }
    }

    #[test]
    fn label_permutation_leaves_mi_unchanged() {
        let setup = example2_setup();
        let init = init_vertical(&setup.grid, 3).unwrap();
        let permuted = init.permute_labels(&[2, 0, 1]).unwrap();
        let cfg = CmConfig::default();
        let a = run_cm(&setup, &init, &cfg).unwrap();
        let b = run_cm(&setup, &permuted, &cfg).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert!((ra.shannon_mi_bits - rb.shannon_mi_bits).abs() < 1e-12);
            assert_eq!(ra.cells_changed, rb.cells_changed);
        }
        assert_eq!(
            a.final_partition.permute_labels(&[2, 0, 1]).unwrap(),
            b.final_partition
        );
    }

    #[test]
    fn init_threshold_examples() {
        let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).unwrap();
        let part = init_threshold_1d(&grid, 50.0).unwrap();
        assert!(part.labels()[..50].iter().all(|&l| l == 0));
        assert!(part.labels()[50..].iter().all(|&l| l == 1));
    }

    #[test]
    fn init_vertical_band_widths() {
        let grid = FeatureGrid::new_2d((0.0, 200.0, 1.0), (0.0, 10.0, 1.0)).unwrap();
        let part = init_vertical(&grid, 3).unwrap();
        let mut widths = [0usize; 3];
        for m in 0..201 {
            widths[part.label(grid.flat_index(m, 0)) as usize] += 1;
        }
        assert_eq!(widths, [67, 67, 67]);
        assert!(init_vertical(&FeatureGrid::new_1d(0.0, 10.0, 1.0).unwrap(), 3).is_err());
    }

    #[test]
    fn init_random_is_deterministic_per_seed() {
        let grid = FeatureGrid::new_2d((0.0, 20.0, 1.0), (0.0, 20.0, 1.0)).unwrap();
        assert_eq!(
            init_random(&grid, 3, 9).unwrap(),
            init_random(&grid, 3, 9).unwrap()
        );
        assert_ne!(
            init_random(&grid, 3, 9).unwrap(),
            init_random(&grid, 3, 10).unwrap()
        );
    }
}
