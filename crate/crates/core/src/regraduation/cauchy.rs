//! Linearity of a function in its second argument.

use super::table::BinaryOpTable;

/// Tolerance of the additivity check.
pub const ADDITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyReport {
    pub is_additive: bool,
    /// Largest `|g(a,b+c) − g(a,b) − g(a,c)|` seen.
    pub max_residual: f64,
    /// When additive, `(a, k(a))` with `g(a,b) ≈ k(a)·b` fitted through the
    /// origin by least squares.
    pub fitted: Vec<(f64, f64)>,
}

/// Checks `g(a, b+c) = g(a, b) + g(a, c)` for grid values `a, b, c` with
/// `b + c` inside the interval, then fits the slope in `b` for every `a`.
pub fn verify_cauchy_linearity(g: &BinaryOpTable) -> CauchyReport {
    let grid = g.grid();
    let mut worst = 0.0f64;
    for &a in grid {
        for &b in grid {
            for &c in grid {
                if !g.contains(b + c) {
                    continue;
                }
                if let (Some(x), Some(y), Some(z)) = (g.eval(a, b + c), g.eval(a, b), g.eval(a, c)) {
                    let scale = x.abs().max(y.abs()).max(z.abs()).max(1.0);
                    worst = worst.max((x - y - z).abs() / scale);
                }
            }
        }
    }
    let is_additive = worst <= ADDITIVITY_TOL;
    let fitted = if is_additive {
        (0..grid.len())
            .map(|i| {
                let (mut num, mut den) = (0.0, 0.0);
                for (j, &b) in grid.iter().enumerate() {
                    if let Some(v) = g.value(i, j) {
                        num += v * b;
                        den += b * b;
                    }
                }
                (grid[i], if den > 0.0 { num / den } else { 0.0 })
            })
            .collect()
    } else {
        Vec::new()
    };
    CauchyReport {
        is_additive,
        max_residual: worst,
        fitted,
    }
}
