//! Discretized feature spaces. A grid has one or two axes; a cell is identified
//! by its axis-index tuple and carries the coordinate of its center.

use crate::error::{Error, Result};

/// One axis of a feature grid. Cells sit at `lo + k * step` for
/// `k = 0 .. cell_count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Validation(format!(
                "axis step must be > 0, got {step}"
            )));
        }
        if !(hi.is_finite() && lo.is_finite() && hi > lo) {
            return Err(Error::Validation(format!(
                "axis requires hi > lo, got lo={lo}, hi={hi}"
            )));
        }
        let axis = Axis { lo, hi, step };
        if axis.cell_count() < 2 {
            return Err(Error::Validation(format!(
                "axis [{lo}, {hi}] step {step} has fewer than 2 cells"
            )));
        }
        Ok(axis)
    }

    pub fn cell_count(&self) -> usize {
        // Small slack so that e.g. (100 - 0) / 1 is not floored to 99.
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn coord(&self, index: usize) -> f64 {
        self.lo + index as f64 * self.step
    }
}

/// The discretized feature space C. 1D or 2D; for 2D the first axis is the
/// horizontal (m) coordinate and the second the vertical (n) coordinate.
/// Flat cell order is row-major with the m index outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureGrid {
    axes: Vec<Axis>,
}

impl FeatureGrid {
    pub fn new_1d(lo: f64, hi: f64, step: f64) -> Result<Self> {
        Ok(FeatureGrid {
            axes: vec![Axis::new(lo, hi, step)?],
        })
    }

    pub fn new_2d(m: (f64, f64, f64), n: (f64, f64, f64)) -> Result<Self> {
        Ok(FeatureGrid {
            axes: vec![Axis::new(m.0, m.1, m.2)?, Axis::new(n.0, n.1, n.2)?],
        })
    }

    pub fn from_axes(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::Validation(format!(
                "grid must have 1 or 2 axes, got {}",
                axes.len()
            )));
        }
        Ok(FeatureGrid { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> &Axis {
        &self.axes[i]
    }

    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(Axis::cell_count).product()
    }

    /// Cell counts per axis; the second entry is 1 for 1D grids.
    pub fn shape(&self) -> (usize, usize) {
        let a = self.axes[0].cell_count();
        let b = self.axes.get(1).map_or(1, Axis::cell_count);
        (a, b)
    }

    pub fn flat_index(&self, m: usize, n: usize) -> usize {
        let (_, nb) = self.shape();
        m * nb + n
    }

    pub fn indices(&self, flat: usize) -> (usize, usize) {
        let (_, nb) = self.shape();
        (flat / nb, flat % nb)
    }

    /// Coordinates of a cell center; the second component is None on 1D grids.
    pub fn coords(&self, flat: usize) -> (f64, Option<f64>) {
        let (m, n) = self.indices(flat);
        let c0 = self.axes[0].coord(m);
        let c1 = self.axes.get(1).map(|a| a.coord(n));
        (c0, c1)
    }
}
