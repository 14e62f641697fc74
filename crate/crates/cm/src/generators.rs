//! Class-conditional PMFs on grids from Gaussian and mixture specifications,
//! moment-matched Gaussian smoothing, and the two experiment presets.

use crate::error::{Error, Result};
use crate::grid::FeatureGrid;
use crate::prob::{ConditionalPmf, Pmf};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian1D {
    pub mu: f64,
    pub sigma: f64,
}

impl Gaussian1D {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Validation(format!(
                "gaussian sigma must be positive, got {sigma}"
            )));
        }
        Ok(Gaussian1D { mu, sigma })
    }

    pub fn density(&self, x: f64) -> f64 {
        let d = (x - self.mu) / self.sigma;
        (-0.5 * d * d).exp() / (self.sigma * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// A bivariate Gaussian given by its mean and covariance-matrix entries
/// (variances `cov_mm`, `cov_nn` and covariance `cov_mn`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian2D {
    pub mu_m: f64,
    pub mu_n: f64,
    pub cov_mm: f64,
    pub cov_nn: f64,
    pub cov_mn: f64,
}

impl Gaussian2D {
    pub fn new(mu_m: f64, mu_n: f64, cov_mm: f64, cov_nn: f64, cov_mn: f64) -> Result<Self> {
        let det = cov_mm * cov_nn - cov_mn * cov_mn;
        if !(det.is_finite() && cov_mm > 0.0 && cov_nn > 0.0 && det > 0.0) {
            return Err(Error::Validation(format!(
                "covariance matrix [[{cov_mm}, {cov_mn}], [{cov_mn}, {cov_nn}]] is not positive definite"
            )));
        }
        Ok(Gaussian2D {
            mu_m,
            mu_n,
            cov_mm,
            cov_nn,
            cov_mn,
        })
    }

    pub fn determinant(&self) -> f64 {
        self.cov_mm * self.cov_nn - self.cov_mn * self.cov_mn
    }

    pub fn density(&self, m: f64, n: f64) -> f64 {
        let det = self.determinant();
        let dm = m - self.mu_m;
        let dn = n - self.mu_n;
        // quadratic form with the inverse covariance
        let q = (self.cov_nn * dm * dm - 2.0 * self.cov_mn * dm * dn + self.cov_mm * dn * dn) / det;
        (-0.5 * q).exp() / (2.0 * std::f64::consts::PI * det.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianShape {
    One(Gaussian1D),
    Two(Gaussian2D),
}

impl GaussianShape {
    pub fn dim(&self) -> usize {
        match self {
            GaussianShape::One(_) => 1,
            GaussianShape::Two(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub shape: GaussianShape,
}

/// One class of a generative setup: its prior and a mixture of Gaussian
/// components for P(Z|x).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSpec {
    pub prior: f64,
    pub components: Vec<Component>,
}

impl ClassSpec {
    pub fn new(prior: f64, components: Vec<Component>) -> Result<Self> {
        if !(prior > 0.0 && prior <= 1.0) {
            return Err(Error::Validation(format!(
                "class prior must be in (0, 1], got {prior}"
            )));
        }
        if components.is_empty() {
            return Err(Error::Validation(
                "class needs at least one component".into(),
            ));
        }
        let dim = components[0].shape.dim();
        if components.iter().any(|c| c.shape.dim() != dim) {
            return Err(Error::Validation(
                "all components of a class must share dimensionality".into(),
            ));
        }
        let wsum: f64 = components.iter().map(|c| c.weight).sum();
        if components
            .iter()
            .any(|c| !(c.weight > 0.0 && c.weight <= 1.0))
            || (wsum - 1.0).abs() > 1e-9
        {
            return Err(Error::Validation(format!(
                "component weights must lie in (0, 1] and sum to 1, sum is {wsum}"
            )));
        }
        Ok(ClassSpec { prior, components })
    }

    pub fn dim(&self) -> usize {
        self.components[0].shape.dim()
    }
}

/// A fully realized classification problem: grid, class priors, and the
/// class-conditional PMFs P(Z|x_i) over the grid cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSetup {
    pub grid: FeatureGrid,
    pub priors: Pmf,
    pub conditionals: ConditionalPmf,
}

impl ClassSetup {
    pub fn new(grid: FeatureGrid, priors: Pmf, conditionals: ConditionalPmf) -> Result<Self> {
        if priors.len() != conditionals.n_conditions() {
            return Err(Error::Validation(format!(
                "{} priors but {} conditional rows",
                priors.len(),
                conditionals.n_conditions()
            )));
        }
        if conditionals.support_len() != grid.cell_count() {
            return Err(Error::Validation(format!(
                "conditionals cover {} cells but grid has {}",
                conditionals.support_len(),
                grid.cell_count()
            )));
        }
        Ok(ClassSetup {
            grid,
            priors,
            conditionals,
        })
    }

    /// Builds the setup by discretizing each class spec on the grid. Class
    /// priors are taken from the specs and normalized.
    pub fn from_specs(grid: FeatureGrid, specs: &[ClassSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Validation("setup needs at least one class".into()));
        }
        let priors = Pmf::from_unnormalized(specs.iter().map(|s| s.prior).collect())?;
        let rows = specs
            .iter()
            .map(|s| discretize(s, &grid))
            .collect::<Result<Vec<_>>>()?;
        let conditionals = ConditionalPmf::new(rows)?;
        ClassSetup::new(grid, priors, conditionals)
    }

    pub fn n_classes(&self) -> usize {
        self.priors.len()
    }
}

/// Realizes a class's mixture density on the grid: mixture density evaluated
/// at every cell center, renormalized to a PMF over the cells.
pub fn discretize(spec: &ClassSpec, grid: &FeatureGrid) -> Result<Pmf> {
    if spec.dim() != grid.dim() {
        return Err(Error::Validation(format!(
            "class is {}-dimensional but grid is {}-dimensional",
            spec.dim(),
            grid.dim()
        )));
    }
    let mut weights = Vec::with_capacity(grid.cell_count());
    for flat in 0..grid.cell_count() {
        let (c0, c1) = grid.coords(flat);
        let mut density = 0.0;
        for comp in &spec.components {
            density += comp.weight
                * match comp.shape {
                    GaussianShape::One(g) => g.density(c0),
                    GaussianShape::Two(g) => g.density(c0, c1.expect("2D grid")),
                };
        }
        weights.push(density);
    }
    Pmf::from_unnormalized(weights)
        .map_err(|_| Error::Support("class density carries no mass on the grid".into()))
}

/// Moment-matched Gaussian fit of an empirical PMF on a grid. Maximizes the
/// average log-likelihood over the Gaussian family, which is the smoothing
/// objective since the reference distribution does not depend on the
/// parameters.
pub fn fit_gaussian_smoother(empirical: &Pmf, grid: &FeatureGrid) -> Result<GaussianShape> {
    if empirical.len() != grid.cell_count() {
        return Err(Error::Validation(format!(
            "empirical pmf covers {} cells but grid has {}",
            empirical.len(),
            grid.cell_count()
        )));
    }
    let mut mean = [0.0f64; 2];
    for flat in 0..grid.cell_count() {
        let p = empirical.get(flat);
        let (c0, c1) = grid.coords(flat);
        mean[0] += p * c0;
        mean[1] += p * c1.unwrap_or(0.0);
    }
    let mut cov = [0.0f64; 3]; // mm, nn, mn
    for flat in 0..grid.cell_count() {
        let p = empirical.get(flat);
        let (c0, c1) = grid.coords(flat);
        let dm = c0 - mean[0];
        let dn = c1.unwrap_or(0.0) - mean[1];
        cov[0] += p * dm * dm;
        cov[1] += p * dn * dn;
        cov[2] += p * dm * dn;
    }
    match grid.dim() {
        1 => {
            if cov[0] <= 0.0 {
                return Err(Error::DegenerateSample(
                    "empirical pmf has zero variance".into(),
                ));
            }
            Ok(GaussianShape::One(Gaussian1D::new(mean[0], cov[0].sqrt())?))
        }
        _ => {
            if cov[0] <= 0.0 || cov[1] <= 0.0 {
                return Err(Error::DegenerateSample(
                    "empirical pmf has zero variance along an axis".into(),
                ));
            }
            Ok(GaussianShape::Two(Gaussian2D::new(
                mean[0], mean[1], cov[0], cov[1], cov[2],
            )?))
        }
    }
}

/// The 1D medical-test preset: z ∈ [0, 100] step 1, classes N(30, 15) and
/// N(70, 10) with priors (0.8, 0.2).
pub fn example1_setup() -> ClassSetup {
    example1_setup_with_priors(0.8, 0.2)
}

/// Example-1 shapes with configurable priors (used by the criterion
/// comparison, which contrasts priors (0.8, 0.2) with uniform priors).
pub fn example1_setup_with_priors(p0: f64, p1: f64) -> ClassSetup {
    let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).expect("static grid");
    let specs = vec![
        ClassSpec::new(
            p0,
            vec![Component {
                weight: 1.0,
                shape: GaussianShape::One(Gaussian1D::new(30.0, 15.0).expect("static")),
            }],
        )
        .expect("static spec"),
        ClassSpec::new(
            p1,
            vec![Component {
                weight: 1.0,
                shape: GaussianShape::One(Gaussian1D::new(70.0, 10.0).expect("static")),
            }],
        )
        .expect("static spec"),
    ];
    ClassSetup::from_specs(grid, &specs).expect("static setup")
}

/// The 2D preset: m ∈ [0, 160], n ∈ [0, 120], step 1; classes x_0, x_1 single
/// Gaussians and x_2 a two-component mixture, priors (0.2, 0.5, 0.3).
pub fn example2_setup() -> ClassSetup {
    let grid = FeatureGrid::new_2d((0.0, 160.0, 1.0), (0.0, 120.0, 1.0)).expect("static grid");
    let g = |mu_m, mu_n, cov_mm, cov_nn, cov_mn| {
        GaussianShape::Two(Gaussian2D::new(mu_m, mu_n, cov_mm, cov_nn, cov_mn).expect("static"))
    };
    let specs = vec![
        ClassSpec::new(
            0.2,
            vec![Component {
                weight: 1.0,
                shape: g(50.0, 50.0, 75.0, 200.0, 50.0),
            }],
        )
        .expect("static spec"),
        ClassSpec::new(
            0.5,
            vec![Component {
                weight: 1.0,
                shape: g(75.0, 90.0, 200.0, 75.0, -50.0),
            }],
        )
        .expect("static spec"),
        ClassSpec::new(
            0.3,
            vec![
                Component {
                    weight: 2.0 / 3.0,
                    shape: g(100.0, 50.0, 125.0, 125.0, 75.0),
                },
                Component {
                    weight: 1.0 / 3.0,
                    shape: g(120.0, 80.0, 75.0, 125.0, 0.0),
                },
            ],
        )
        .expect("static spec"),
    ];
    ClassSetup::from_specs(grid, &specs).expect("static setup")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discretize_mode_at_mean() {
        let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).unwrap();
        let spec = ClassSpec::new(
            1.0,
            vec![Component {
                weight: 1.0,
                shape: GaussianShape::One(Gaussian1D::new(50.0, 10.0).unwrap()),
            }],
        )
        .unwrap();
        let pmf = discretize(&spec, &grid).unwrap();
        let argmax = (0..pmf.len())
            .max_by(|&a, &b| pmf.get(a).total_cmp(&pmf.get(b)))
            .unwrap();
        assert_eq!(argmax, 50);
        let sum: f64 = pmf.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn discretize_symmetric_about_mean() {
        let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).unwrap();
        let spec = ClassSpec::new(
            1.0,
            vec![Component {
                weight: 1.0,
                shape: GaussianShape::One(Gaussian1D::new(50.0, 12.0).unwrap()),
            }],
        )
        .unwrap();
        let pmf = discretize(&spec, &grid).unwrap();
        for k in 0..=50 {
            assert!((pmf.get(50 - k) - pmf.get(50 + k)).abs() < 1e-12);
        }
    }

    #[test]
    fn discretize_example1_upper_tail_mass() {
        // P(z >= 50 | x_1) for the N(70, 10) class. Cell 50 covers
        // [49.5, 50.5], so the discrete tail matches the continuous mass
        // above 49.5 under truncation to the grid: about 0.9798.
        let setup = example1_setup();
        let tail: f64 = (50..=100).map(|k| setup.conditionals.row(1).get(k)).sum();
        assert!((tail - 0.9798).abs() < 1e-3, "tail mass {tail}");
    }

    #[test]
    fn discretize_off_grid_mass_errors() {
        let grid = FeatureGrid::new_1d(0.0, 10.0, 1.0).unwrap();
        let spec = ClassSpec::new(
            1.0,
            vec![Component {
                weight: 1.0,
                shape: GaussianShape::One(Gaussian1D::new(1e6, 0.5).unwrap()),
            }],
        )
        .unwrap();
        assert!(matches!(discretize(&spec, &grid), Err(Error::Support(_))));
    }

    #[test]
    fn smoother_recovers_gaussian_parameters() {
        let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).unwrap();
        let spec = ClassSpec::new(
            1.0,
            vec![Component {
                weight: 1.0,
                // mean 5 sigma from either edge, so truncation is negligible
                shape: GaussianShape::One(Gaussian1D::new(50.0, 10.0).unwrap()),
            }],
        )
        .unwrap();
        let pmf = discretize(&spec, &grid).unwrap();
        match fit_gaussian_smoother(&pmf, &grid).unwrap() {
            GaussianShape::One(g) => {
                assert!((g.mu - 50.0).abs() < 0.05, "mu {}", g.mu);
                assert!((g.sigma - 10.0).abs() < 0.1, "sigma {}", g.sigma);
            }
            GaussianShape::Two(_) => panic!("1D fit expected"),
        }
    }

    #[test]
    fn smoother_point_mass_is_degenerate() {
        let grid = FeatureGrid::new_1d(0.0, 10.0, 1.0).unwrap();
        let mut w = vec![0.0; 11];
        w[4] = 1.0;
        let pmf = Pmf::new(w).unwrap();
        assert!(matches!(
            fit_gaussian_smoother(&pmf, &grid),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn smoother_mixture_variance_exceeds_components() {
        // law of total variance: component sigma 5, means 25 and 75
        let grid = FeatureGrid::new_1d(0.0, 100.0, 1.0).unwrap();
        let spec = ClassSpec::new(
            1.0,
            vec![
                Component {
                    weight: 0.5,
                    shape: GaussianShape::One(Gaussian1D::new(25.0, 5.0).unwrap()),
                },
                Component {
                    weight: 0.5,
                    shape: GaussianShape::One(Gaussian1D::new(75.0, 5.0).unwrap()),
                },
            ],
        )
        .unwrap();
        let pmf = discretize(&spec, &grid).unwrap();
        match fit_gaussian_smoother(&pmf, &grid).unwrap() {
            GaussianShape::One(g) => {
                // total variance = 25 + 25^2
                let expected = (25.0f64 + 625.0).sqrt();
                assert!((g.sigma - expected).abs() < 0.5, "sigma {}", g.sigma);
                assert!(g.sigma > 5.0);
            }
            GaussianShape::Two(_) => panic!("1D fit expected"),
        }
    }

    #[test]
    fn example1_parameters() {
        let setup = example1_setup();
        assert_eq!(setup.grid.cell_count(), 101);
        assert!((setup.priors.get(0) - 0.8).abs() < 1e-12);
        assert!((setup.priors.get(1) - 0.2).abs() < 1e-12);
        let row0 = setup.conditionals.row(0);
        let argmax = (0..row0.len())
            .max_by(|&a, &b| row0.get(a).total_cmp(&row0.get(b)))
            .unwrap();
        assert_eq!(argmax, 30);
        for row in setup.conditionals.rows() {
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn example2_parameters() {
        let setup = example2_setup();
        assert_eq!(setup.priors.as_slice(), &[0.2, 0.5, 0.3]);
        assert_eq!(setup.n_classes(), 3);
        for row in setup.conditionals.rows() {
            let sum: f64 = row.iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
        // covariance determinants positive, e.g. 75·200 − 50² = 12500
        assert!(
            Gaussian2D::new(50.0, 50.0, 75.0, 200.0, 50.0)
                .unwrap()
                .determinant()
                > 0.0
        );
        assert!(Gaussian2D::new(75.0, 90.0, 200.0, 75.0, -50.0).is_ok());
        assert!(Gaussian2D::new(100.0, 50.0, 125.0, 125.0, 75.0).is_ok());
        assert!(Gaussian2D::new(120.0, 80.0, 75.0, 125.0, 0.0).is_ok());
    }

    #[test]
    fn example_setups_are_deterministic() {
        assert_eq!(example1_setup(), example1_setup());
        assert_eq!(example2_setup(), example2_setup());
    }

    #[test]
    fn non_positive_definite_covariance_rejected() {
        assert!(Gaussian2D::new(0.0, 0.0, 4.0, 4.0, 5.0).is_err());
        assert!(Gaussian2D::new(0.0, 0.0, -1.0, 4.0, 0.0).is_err());
    }
}
