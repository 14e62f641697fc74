//! Experiment configuration: a flat `section.key = value` text format with
//! `#` comments. Parse errors carry the line number and field name.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::cm::{
    init_horizontal, init_random, init_threshold_1d, init_vertical, CmConfig, Partition,
};
use crate::error::{Error, Result};
use crate::generators::{ClassSetup, ClassSpec, Component, Gaussian1D, Gaussian2D, GaussianShape};
use crate::grid::{Axis, FeatureGrid};
use crate::output::read_partition_csv;

/// How the initial partition is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec {
    Vertical { n_labels: u32 },
    Horizontal { n_labels: u32 },
    Threshold1D { z_prime: f64 },
    Random { n_labels: u32, seed: u64 },
    File { path: PathBuf },
}

/// A fully parsed experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub grid: FeatureGrid,
    pub classes: Vec<ClassSpec>,
    pub init: InitSpec,
    pub cm: CmConfig,
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    pub fn setup(&self) -> Result<ClassSetup> {
        ClassSetup::from_specs(self.grid.clone(), &self.classes)
    }

    pub fn initial_partition(&self, setup: &ClassSetup) -> Result<Partition> {
        match &self.init {
            InitSpec::Vertical { n_labels } => init_vertical(&setup.grid, *n_labels),
            InitSpec::Horizontal { n_labels } => init_horizontal(&setup.grid, *n_labels),
            InitSpec::Threshold1D { z_prime } => init_threshold_1d(&setup.grid, *z_prime),
            InitSpec::Random { n_labels, seed } => init_random(&setup.grid, *n_labels, *seed),
            InitSpec::File { path } => read_partition_csv(path, &setup.grid),
        }
    }
}

impl std::str::FromStr for ExperimentConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let fields = parse_fields(text)?;
        build(&fields)
    }
}

struct Field {
    line: usize,
    value: String,
}

type Fields = BTreeMap<String, Field>;

fn parse_fields(text: &str) -> Result<Fields> {
    let mut fields = Fields::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {line_no}: expected `section.key = value`, got `{line}`"
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Config(format!(
                "line {line_no}: empty key or value in `{line}`"
            )));
        }
        if fields.contains_key(&key) {
            return Err(Error::Config(format!(
                "line {line_no}: duplicate field `{key}`"
            )));
        }
        fields.insert(
            key,
            Field {
                line: line_no,
                value,
            },
        );
    }
    Ok(fields)
}

fn build(fields: &Fields) -> Result<ExperimentConfig> {
    let mut seen: Vec<&str> = Vec::new();

    let grid = build_grid(fields, &mut seen)?;
    let classes = build_classes(fields, &mut seen, grid.dim())?;
    let init = build_init(fields, &mut seen, classes.len())?;
    let cm = build_cm(fields, &mut seen)?;
    let out_dir = fields.get("output.dir").map(|f| PathBuf::from(&f.value));
    seen.push("output.dir");

    if let Some((key, field)) = fields.iter().find(|(k, _)| !seen.contains(&k.as_str())) {
        return Err(Error::Config(format!(
            "line {}: unknown field `{key}`",
            field.line
        )));
    }
    Ok(ExperimentConfig {
        grid,
        classes,
        init,
        cm,
        out_dir,
    })
}

fn build_grid<'a>(fields: &'a Fields, seen: &mut Vec<&'a str>) -> Result<FeatureGrid> {
    let mut axes = Vec::new();
    for key in ["grid.axis0", "grid.axis1"] {
        if let Some((k, field)) = fields.get_key_value(key) {
            seen.push(k);
            let parts: Vec<f64> = field
                .value
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| parse_num(s, key, field.line))
                .collect::<Result<_>>()?;
            if parts.len() != 3 {
                return Err(Error::Config(format!(
                    "line {}: {key} expects `lo hi step`",
                    field.line
                )));
            }
            axes.push(
                Axis::new(parts[0], parts[1], parts[2])
                    .map_err(|e| Error::Config(format!("line {}: {key}: {e}", field.line)))?,
            );
        }
    }
    if axes.is_empty() {
        return Err(Error::Config("missing field `grid.axis0`".into()));
    }
    FeatureGrid::from_axes(axes)
}

fn build_classes<'a>(
    fields: &'a Fields,
    seen: &mut Vec<&'a str>,
    grid_dim: usize,
) -> Result<Vec<ClassSpec>> {
    let mut classes = Vec::new();
    for class_idx in 0.. {
        let prior_key = format!("class.{class_idx}.prior");
        let Some((pk, prior_field)) = fields.get_key_value(prior_key.as_str()) else {
            break;
        };
        seen.push(pk);
        let prior = parse_num(&prior_field.value, &prior_key, prior_field.line)?;

        let mut components = Vec::new();
        for comp_idx in 0.. {
            let base = format!("class.{class_idx}.component.{comp_idx}");
            let exists = ["weight", "mu", "sigma", "mu_m"]
                .iter()
                .any(|s| fields.contains_key(format!("{base}.{s}").as_str()));
            if !exists {
                break;
            }
            let weight = read_num_or(fields, seen, &format!("{base}.weight"), 1.0)?;
            let shape = if grid_dim == 1 {
                let mu = read_num(fields, seen, &format!("{base}.mu"))?;
                let sigma = read_num(fields, seen, &format!("{base}.sigma"))?;
                GaussianShape::One(
                    Gaussian1D::new(mu, sigma)
                        .map_err(|e| Error::Config(format!("{base}.sigma: {e}")))?,
                )
            } else {
                let mu_m = read_num(fields, seen, &format!("{base}.mu_m"))?;
                let mu_n = read_num(fields, seen, &format!("{base}.mu_n"))?;
                let cov_mm = read_num(fields, seen, &format!("{base}.cov_mm"))?;
                let cov_nn = read_num(fields, seen, &format!("{base}.cov_nn"))?;
                let cov_mn = read_num(fields, seen, &format!("{base}.cov_mn"))?;
                GaussianShape::Two(
                    Gaussian2D::new(mu_m, mu_n, cov_mm, cov_nn, cov_mn)
                        .map_err(|e| Error::Config(format!("{base}.cov_mm/cov_nn/cov_mn: {e}")))?,
                )
            };
            components.push(Component { weight, shape });
        }
        let spec = ClassSpec::new(prior, components)
            .map_err(|e| Error::Config(format!("class.{class_idx}: {e}")))?;
        classes.push(spec);
    }
    if classes.is_empty() {
        return Err(Error::Config("missing field `class.0.prior`".into()));
    }
    Ok(classes)
}

fn build_init<'a>(
    fields: &'a Fields,
    seen: &mut Vec<&'a str>,
    n_classes: usize,
) -> Result<InitSpec> {
    let Some((kind_key, kind)) = fields.get_key_value("init.kind") else {
        return Err(Error::Config("missing field `init.kind`".into()));
    };
    seen.push(kind_key);
    let n_labels = read_num_or(fields, seen, "init.n_labels", n_classes as f64)? as u32;
    match kind.value.as_str() {
        "vertical" => Ok(InitSpec::Vertical { n_labels }),
        "horizontal" => Ok(InitSpec::Horizontal { n_labels }),
        "threshold1d" => {
            let z_prime = read_num(fields, seen, "init.z_prime")?;
            Ok(InitSpec::Threshold1D { z_prime })
        }
        "random" => {
            let seed = read_num_or(fields, seen, "init.seed", 0.0)? as u64;
            Ok(InitSpec::Random { n_labels, seed })
        }
        "file" => {
            let Some((pk, path)) = fields.get_key_value("init.path") else {
                return Err(Error::Config("missing field `init.path` for init.kind = file".into()));
            };
            seen.push(pk);
            Ok(InitSpec::File { path: PathBuf::from(&path.value) })
        }
        other => Err(Error::Config(format!(
            "line {}: init.kind `{other}` is not one of vertical|horizontal|threshold1d|random|file",
            kind.line
        ))),
    }
}

fn build_cm<'a>(fields: &'a Fields, seen: &mut Vec<&'a str>) -> Result<CmConfig> {
    let defaults = CmConfig::default();
    let max_iters = read_num_or(fields, seen, "cm.max_iters", defaults.max_iters as f64)? as usize;
    let mi_tol = read_num_or(fields, seen, "cm.mi_tol", defaults.mi_tol)?;
    let eps = read_num_or(fields, seen, "cm.eps", defaults.channel_smoothing_eps)?;
    let cfg = CmConfig {
        max_iters,
        mi_tol,
        channel_smoothing_eps: eps,
    };
    cfg.validate()
        .map_err(|e| Error::Config(format!("cm settings: {e}")))?;
    Ok(cfg)
}

fn read_num<'a>(fields: &'a Fields, seen: &mut Vec<&'a str>, key: &str) -> Result<f64> {
    let Some((k, field)) = fields.get_key_value(key) else {
        return Err(Error::Config(format!("missing field `{key}`")));
    };
    seen.push(k);
    parse_num(&field.value, key, field.line)
}

fn read_num_or<'a>(
    fields: &'a Fields,
    seen: &mut Vec<&'a str>,
    key: &str,
    default: f64,
) -> Result<f64> {
    match fields.get_key_value(key) {
        Some((k, field)) => {
            seen.push(k);
            parse_num(&field.value, key, field.line)
        }
        None => Ok(default),
    }
}

fn parse_num(s: &str, key: &str, line: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| {
        Error::Config(format!(
            "line {line}: field `{key}` has non-numeric value `{s}`"
        ))
    })
}
