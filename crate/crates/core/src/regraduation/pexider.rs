//! The Pexider equation `f(x + y) = g(x) + h(y)` on a lattice.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Points `step·(k_1, …, k_n)` with every `k_i` in `min..=max`, listed with
/// the first coordinate most significant. `min ≤ 0 ≤ max`, so the origin is
/// a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub dims: usize,
    pub step: f64,
    pub min: i64,
    pub max: i64,
}

impl Lattice {
    pub fn new(dims: usize, step: f64, min: i64, max: i64) -> Result<Self> {
        if dims == 0 || !(step > 0.0 && step.is_finite()) || min > 0 || max < 0 || min == max {
            return Err(Error::InvalidArgument(
                "lattice needs dims ≥ 1, a positive step, and min ≤ 0 ≤ max with min < max".into(),
            ));
        }
        let side = (max - min + 1) as u32;
        if (side as u64).checked_pow(dims as u32).is_none_or(|n| n > 1 << 16) {
            return Err(Error::InvalidArgument("lattice has too many points".into()));
        }
        Ok(Lattice {
            dims,
            step,
            min,
            max,
        })
    }

    fn side(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.dims as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn coords(&self, mut index: usize) -> Vec<i64> {
        let side = self.side();
        let mut k = vec![0; self.dims];
        for slot in k.iter_mut().rev() {
            *slot = self.min + (index % side) as i64;
            index /= side;
        }
        k
    }

    fn index(&self, coords: &[i64]) -> Option<usize> {
        coords.iter().try_fold(0usize, |acc, &c| {
            (self.min..=self.max)
                .contains(&c)
                .then(|| acc * self.side() + (c - self.min) as usize)
        })
    }

    pub fn point(&self, index: usize) -> Vec<f64> {
        self.coords(index)
            .into_iter()
            .map(|k| k as f64 * self.step)
            .collect()
    }

    /// Values of `f` at every point, in lattice order.
    pub fn sample<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> Vec<f64> {
        (0..self.len()).map(|i| f(&self.point(i))).collect()
    }

    fn origin(&self) -> usize {
        self.index(&vec![0; self.dims]).expect("origin is a lattice point")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PexiderSolution {
    /// `h(0)`.
    pub a: f64,
    /// `g(0)`.
    pub b: f64,
    /// Whether `ξ = f − a − b` is additive and linear to 1e-8.
    pub xi_is_linear: bool,
    /// Least-squares `c` with `ξ(x) ≈ Σ c_k x_k`.
    pub coefficients: Vec<f64>,
    /// Largest residual of the linear fit.
    pub residual: f64,
}

pub const PEXIDER_TOL: f64 = 1e-9;
pub const LINEAR_TOL: f64 = 1e-8;

/// Reduces `f(x + y) = g(x) + h(y)` to `f = ξ + a + b`, `g = ξ + b`,
/// `h = ξ + a` with additive `ξ`, and fits `ξ` as a linear form.
#[allow(clippy::needless_range_loop)]
pub fn solve_pexider(lattice: &Lattice, f: &[f64], g: &[f64], h: &[f64]) -> Result<PexiderSolution> {
    let n = lattice.len();
    for (name, v) in [("f", f), ("g", g), ("h", h)] {
        if v.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{name} has {} samples for {n} lattice points",
                v.len()
            )));
        }
    }
    let coords: Vec<Vec<i64>> = (0..n).map(|i| lattice.coords(i)).collect();
    let sum_index = |x: usize, y: usize| -> Option<usize> {
        let s: Vec<i64> = coords[x].iter().zip(&coords[y]).map(|(p, q)| p + q).collect();
        lattice.index(&s)
    };
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            if let Some(s) = sum_index(x, y) {
                worst = worst.max((f[s] - g[x] - h[y]).abs());
            }
        }
    }
    if worst > PEXIDER_TOL {
        return Err(Error::NotPexider { residual: worst });
    }
    let o = lattice.origin();
    let (a, b) = (h[o], g[o]);
    let xi: Vec<f64> = f.iter().map(|v| v - a - b).collect();

    let mut additive = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            if let Some(s) = sum_index(x, y) {
                additive = additive.max((xi[s] - xi[x] - xi[y]).abs());
            }
        }
    }

    let design = DMatrix::from_fn(n, lattice.dims, |i, k| coords[i][k] as f64 * lattice.step);
    let target = DVector::from_column_slice(&xi);
    let svd = design.clone().svd(true, true);
    let c = svd
        .solve(&target, 1e-14)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let fit = (&design * &c - &target).amax();
    let residual = fit.max(additive);
    Ok(PexiderSolution {
        a,
        b,
        xi_is_linear: residual <= LINEAR_TOL,
        coefficients: c.iter().copied().collect(),
        residual,
    })
}
