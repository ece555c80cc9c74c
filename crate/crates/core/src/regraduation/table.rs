use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Op = Arc<dyn Fn(f64, f64) -> Option<f64> + Send + Sync>;

/// A binary operation sampled on a grid of `[lo, hi]`.
///
/// Entries may be undefined where the operation leaves its domain. A table
/// built from a closure keeps it and evaluates off-grid points exactly;
/// otherwise off-grid points are interpolated bilinearly.
#[derive(Clone)]
pub struct BinaryOpTable {
    grid: Vec<f64>,
    values: Vec<Option<f64>>,
    closed: bool,
    exact: Option<Op>,
}

impl fmt::Debug for BinaryOpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryOpTable")
            .field("grid", &self.grid)
            .field("closed", &self.closed)
            .field("exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "a grid needs at least two points");
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument("a grid needs at least two points".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "grid must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

impl BinaryOpTable {
    /// Samples `f`, which returns `None` where the operation is undefined.
    /// `closed` declares that defined values must stay in `[lo, hi]`.
    pub fn sample<F>(grid: Vec<f64>, closed: bool, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Option<f64> + Send + Sync + 'static,
    {
        check_grid(&grid)?;
        let values = grid
            .iter()
            .flat_map(|&a| grid.iter().map(move |&b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(BinaryOpTable {
            grid,
            values,
            closed,
            exact: Some(Arc::new(f)),
        })
    }

    /// A closed operation restricted to the pairs whose result stays in
    /// `[lo, hi]`.
    pub fn restricted<F>(grid: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        check_grid(&grid)?;
        let (lo, hi) = (grid[0], grid[grid.len() - 1]);
        BinaryOpTable::sample(grid, true, move |a, b| {
            let v = f(a, b);
            (v >= lo && v <= hi).then_some(v)
        })
    }

    /// A table of raw samples, row-major in the first argument.
    pub fn from_values(grid: Vec<f64>, values: Vec<Option<f64>>, closed: bool) -> Result<Self> {
        check_grid(&grid)?;
        if values.len() != grid.len() * grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values, found {}",
                grid.len() * grid.len(),
                values.len()
            )));
        }
        Ok(BinaryOpTable {
            grid,
            values,
            closed,
            exact: None,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn lo(&self) -> f64 {
        self.grid[0]
    }

    pub fn hi(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Tabulated value at grid indices `(i, j)`.
    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.grid.len() + j]
    }

    pub fn contains(&self, x: f64) -> bool {
        let eps = 1e-12 * (self.hi() - self.lo());
        x >= self.lo() - eps && x <= self.hi() + eps
    }

    /// Tabulated value, with a closure error if a closed table escapes its
    /// interval.
    pub(crate) fn checked_value(&self, i: usize, j: usize) -> Result<Option<f64>> {
        match self.value(i, j) {
            Some(v) if self.closed && !self.contains(v) => Err(Error::Closure(format!(
                "f({}, {}) = {v} is outside [{}, {}]",
                self.grid[i],
                self.grid[j],
                self.lo(),
                self.hi()
            ))),
            v => Ok(v),
        }
    }

    /// `f(a, b)` anywhere in the square; `None` where undefined.
    pub fn eval(&self, a: f64, b: f64) -> Option<f64> {
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        let (a, b) = (a.clamp(self.lo(), self.hi()), b.clamp(self.lo(), self.hi()));
        if let Some(f) = &self.exact {
            return f(a, b);
        }
        let (i, s) = self.cell(a);
        let (j, t) = self.cell(b);
        let corner = |di: usize, dj: usize| self.value(i + di, j + dj);
        let (v00, v01, v10, v11) = (corner(0, 0)?, corner(0, 1)?, corner(1, 0)?, corner(1, 1)?);
        Some((1.0 - s) * ((1.0 - t) * v00 + t * v01) + s * ((1.0 - t) * v10 + t * v11))
    }

    /// Cell index and fractional position of `x` within it.
    fn cell(&self, x: f64) -> (usize, f64) {
        let n = self.grid.len();
        let i = match self.grid.partition_point(|&g| g <= x) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        (i, ((x - x0) / (x1 - x0)).clamp(0.0, 1.0))
    }
}
