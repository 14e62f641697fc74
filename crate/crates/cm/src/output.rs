//! File outputs: CSV traces, partition maps, comparison reports, and PPM
//! renders. All writes go through a temp-file-then-rename step so partially
//! written artifacts never appear under their final name.

use std::fs;
use std::path::Path;

use crate::baselines::ComparisonReport;
use crate::cm::{IterationTrace, Partition};
use crate::error::{Error, Result};
use crate::grid::FeatureGrid;

/// RGB palette for partition renders; labels beyond the palette cycle.
pub const PALETTE: [[u8; 3]; 3] = [[230, 60, 60], [60, 180, 75], [60, 100, 220]];

/// Formats `x` with 9 significant digits, the precision used in every CSV.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        let prec = (8 - mag).max(0) as usize;
        format!("{x:.prec$}")
    } else {
        format!("{x:.8e}")
    }
}

/// Writes `bytes` to `path` atomically (temp file in the same directory,
/// then rename).
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io(std::io::Error::other("path has no file name")))?;
    let tmp = match dir {
        Some(d) => d.join(format!(".{}.tmp", file_name.to_string_lossy())),
        None => Path::new(&format!(".{}.tmp", file_name.to_string_lossy())).to_path_buf(),
    };
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_trace_csv(path: &Path, trace: &IterationTrace) -> Result<()> {
    let mut out = String::from("iter,shannon_mi_bits,semantic_mi_bits,cells_changed\n");
    for rec in &trace.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            rec.iter,
            fmt_sig9(rec.shannon_mi_bits),
            fmt_sig9(rec.semantic_mi_bits),
            rec.cells_changed
        ));
    }
    atomic_write(path, out.as_bytes())
}

pub fn partition_to_csv(partition: &Partition) -> String {
    let grid = partition.grid();
    let mut out = String::new();
    if grid.dim() == 1 {
        out.push_str("z_index,label\n");
        for (flat, &label) in partition.labels().iter().enumerate() {
            out.push_str(&format!("{flat},{label}\n"));
        }
    } else {
        out.push_str("m_index,n_index,label\n");
        for (flat, &label) in partition.labels().iter().enumerate() {
            let (m, n) = grid.indices(flat);
            out.push_str(&format!("{m},{n},{label}\n"));
        }
    }
    out
}

pub fn write_partition_csv(path: &Path, partition: &Partition) -> Result<()> {
    atomic_write(path, partition_to_csv(partition).as_bytes())
}

/// Reads a partition CSV written by [`write_partition_csv`] back onto `grid`.
pub fn read_partition_csv(path: &Path, grid: &FeatureGrid) -> Result<Partition> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read partition {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let expected = if grid.dim() == 1 {
        "z_index,label"
    } else {
        "m_index,n_index,label"
    };
    if header.trim() != expected {
        return Err(Error::Config(format!(
            "partition {}: expected header `{expected}`, found `{header}`",
            path.display()
        )));
    }
    let mut labels = vec![None::<u32>; grid.cell_count()];
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        let bad = |what: &str| {
            Error::Config(format!(
                "partition {}: line {line_no}: {what}",
                path.display()
            ))
        };
        let flat = if grid.dim() == 1 {
            if parts.len() != 2 {
                return Err(bad("expected `z_index,label`"));
            }
            let z: usize = parts[0].trim().parse().map_err(|_| bad("bad z_index"))?;
            if z >= grid.cell_count() {
                return Err(bad("z_index out of range"));
            }
            z
        } else {
            if parts.len() != 3 {
                return Err(bad("expected `m_index,n_index,label`"));
            }
            let m: usize = parts[0].trim().parse().map_err(|_| bad("bad m_index"))?;
            let n: usize = parts[1].trim().parse().map_err(|_| bad("bad n_index"))?;
            let (mm, nn) = grid.shape();
            if m >= mm || n >= nn {
                return Err(bad("cell index out of range"));
            }
            grid.flat_index(m, n)
        };
        let label: u32 = parts
            .last()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| bad("bad label"))?;
        if labels[flat].is_some() {
            return Err(bad("duplicate cell"));
        }
        labels[flat] = Some(label);
    }
    let labels: Vec<u32> = labels
        .into_iter()
        .enumerate()
        .map(|(flat, l)| {
            l.ok_or_else(|| {
                Error::Config(format!("partition {}: missing cell {flat}", path.display()))
            })
        })
        .collect::<Result<_>>()?;
    let n_labels = labels.iter().copied().max().unwrap_or(0) + 1;
    Partition::new(grid.clone(), labels, n_labels)
}

pub fn write_compare_csv(path: &Path, report: &ComparisonReport) -> Result<()> {
    let fmt_threshold = |t: Option<f64>| t.map(fmt_sig9).unwrap_or_default();
    let mut out =
        String::from("classifier,shannon_mi_bits,error_rate,threshold,partitions_equivalent\n");
    let equivalent = if report.partitions_equivalent {
        "equivalent"
    } else {
        "distinct"
    };
    out.push_str(&format!(
        "mmi,{},{},{},{equivalent}\n",
        fmt_sig9(report.mmi_partition_mi),
        fmt_sig9(report.mmi_error_rate),
        fmt_threshold(report.mmi_threshold),
    ));
    out.push_str(&format!(
        "mpp,{},{},{},{equivalent}\n",
        fmt_sig9(report.mpp_partition_mi),
        fmt_sig9(report.mpp_error_rate),
        fmt_threshold(report.mpp_threshold),
    ));
    atomic_write(path, out.as_bytes())
}

/// Color of a label under the cycling palette.
pub fn label_color(label: u32) -> [u8; 3] {
    PALETTE[label as usize % PALETTE.len()]
}

/// Renders a 2D partition as a binary P6 pixmap: one pixel per cell, pixel
/// row 0 at the top of the n-axis.
pub fn render_partition(partition: &Partition, path: &Path) -> Result<()> {
    let grid = partition.grid();
    if grid.dim() != 2 {
        return Err(Error::UnsupportedDimension(
            "partition rendering needs a 2D grid".to_string(),
        ));
    }
    let (mm, nn) = grid.shape();
    let mut bytes = format!("P6\n{mm} {nn}\n255\n").into_bytes();
    bytes.reserve(mm * nn * 3);
    for row in 0..nn {
        let n = nn - 1 - row;
        for m in 0..mm {
            let label = partition.label(grid.flat_index(m, n));
            bytes.extend_from_slice(&label_color(label));
        }
    }
    atomic_write(path, &bytes)
}
