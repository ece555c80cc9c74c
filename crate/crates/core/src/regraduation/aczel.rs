//! Associativity and its additive representation `f(a,b) = φ⁻¹(φ(a) + φ(b))`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::table::BinaryOpTable;

type Map = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Analytic { phi: Map, inverse: Map },
    Knots { xs: Vec<f64>, phis: Vec<f64> },
}

/// A strictly monotone rescaling `φ` together with its inverse.
#[derive(Clone)]
pub struct Regraduation {
    repr: Repr,
}

impl fmt::Debug for Regraduation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Analytic { .. } => f.write_str("Regraduation(analytic)"),
            Repr::Knots { xs, .. } => write!(f, "Regraduation({} knots)", xs.len()),
        }
    }
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let i = match xs.partition_point(|&g| g <= x) {
        0 => 0,
        k => (k - 1).min(n - 2),
    };
    let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + t * (ys[i + 1] - ys[i])
}

impl Regraduation {
    pub fn analytic<P, Q>(phi: P, inverse: Q) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        Q: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Regraduation {
            repr: Repr::Analytic {
                phi: Arc::new(phi),
                inverse: Arc::new(inverse),
            },
        }
    }

    /// Piecewise-linear `φ` through the knots `(xs[i], phis[i])`; `xs` must
    /// increase strictly and `phis` be strictly monotone.
    pub fn tabulated(xs: Vec<f64>, phis: Vec<f64>) -> Result<Self> {
        if xs.len() != phis.len() || xs.len() < 2 {
            return Err(Error::InvalidArgument(
                "a tabulated regraduation needs at least two matching knots".into(),
            ));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("knots must increase strictly".into()));
        }
        let up = phis.windows(2).all(|w| w[0] < w[1]);
        let down = phis.windows(2).all(|w| w[0] > w[1]);
        if !up && !down {
            return Err(Error::Monotonicity("tabulated φ is not strictly monotone".into()));
        }
        Ok(Regraduation {
            repr: Repr::Knots { xs, phis },
        })
    }

    pub fn phi(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::Analytic { phi, .. } => phi(x),
            Repr::Knots { xs, phis } => interpolate(xs, phis, x),
        }
    }

    pub fn inverse(&self, y: f64) -> f64 {
        match &self.repr {
            Repr::Analytic { inverse, .. } => inverse(y),
            Repr::Knots { xs, phis } => {
                if phis[0] < phis[1] {
                    interpolate(phis, xs, y)
                } else {
                    let rx: Vec<f64> = xs.iter().rev().copied().collect();
                    let ry: Vec<f64> = phis.iter().rev().copied().collect();
                    interpolate(&ry, &rx, y)
                }
            }
        }
    }

    /// The multiplicative form `ψ = exp ∘ φ`.
    pub fn psi(&self, x: f64) -> f64 {
        self.phi(x).exp()
    }

    /// Knots of a tabulated regraduation.
    pub fn knots(&self) -> Option<(&[f64], &[f64])> {
        match &self.repr {
            Repr::Knots { xs, phis } => Some((xs, phis)),
            Repr::Analytic { .. } => None,
        }
    }
}

/// Largest `|f(f(a,b),c) − f(a,f(b,c))|` over grid triples where both sides
/// are defined. Inner values of a closed table must stay in its interval.
pub fn verify_associativity(f: &BinaryOpTable) -> Result<f64> {
    let g = f.grid();
    let n = g.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let Some(ab) = f.checked_value(i, j)? else { continue };
            for k in 0..n {
                let Some(bc) = f.checked_value(j, k)? else { continue };
                if let (Some(l), Some(r)) = (f.eval(ab, g[k]), f.eval(g[i], bc)) {
                    worst = worst.max((l - r).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Largest `|φ(f(a,b)) − φ(a) − φ(b)|` over grid pairs where `f` is defined.
pub fn verify_regraduation(f: &BinaryOpTable, r: &Regraduation) -> Result<f64> {
    let g = f.grid();
    let mut worst = 0.0f64;
    for i in 0..g.len() {
        for j in 0..g.len() {
            if let Some(v) = f.checked_value(i, j)? {
                worst = worst.max((r.phi(v) - r.phi(g[i]) - r.phi(g[j])).abs());
            }
        }
    }
    Ok(worst)
}

/// As [`verify_regraduation`], at arbitrary points of the square.
pub fn verify_regraduation_at(f: &BinaryOpTable, r: &Regraduation, points: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for &a in points {
        for &b in points {
            if let Some(v) = f.eval(a, b) {
                worst = worst.max((r.phi(v) - r.phi(a) - r.phi(b)).abs());
            }
        }
    }
    worst
}

/// A regraduation rebuilt from an operation, with its fit on the grid.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub regraduation: Regraduation,
    /// The identity element `e`, with `φ(e) = 0`.
    pub identity: f64,
    /// [`verify_regraduation`] on the table's own grid.
    pub training_residual: f64,
}

/// Largest knot count produced by [`reconstruct_phi`].
pub const MAX_KNOTS: usize = 1 << 22;

/// Relative tolerance for the identity search.
const IDENTITY_TOL: f64 = 1e-9;

fn find_identity(f: &BinaryOpTable) -> Result<f64> {
    let g = f.grid();
    let scale = f.hi().abs().max(f.lo().abs()).max(1.0);
    for (j, &e) in g.iter().enumerate() {
        let mut any = false;
        let ok = (0..g.len()).all(|i| match f.value(i, j) {
            Some(v) => {
                any = true;
                (v - g[i]).abs() <= IDENTITY_TOL * scale
            }
            None => true,
        });
        if ok && any {
            return Ok(e);
        }
    }
    Err(Error::MissingIdentity)
}

fn check_monotone(f: &BinaryOpTable) -> Result<()> {
    let n = f.grid().len();
    for i in 0..n {
        let row: Vec<f64> = (0..n).filter_map(|j| f.value(i, j)).collect();
        let col: Vec<f64> = (0..n).filter_map(|j| f.value(j, i)).collect();
        for line in [row, col] {
            if line.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Monotonicity(format!(
                    "f is not strictly increasing along grid point {}",
                    f.grid()[i]
                )));
            }
        }
    }
    Ok(())
}

/// Finds `x` between `lo` and `hi` with `h(x) = 0` for monotone `h`.
fn bisect<H: Fn(f64) -> Option<f64>>(h: H, lo: f64, hi: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (ha, hb) = (h(a)?, h(b)?);
    if ha == 0.0 {
        return Some(a);
    }
    if hb == 0.0 {
        return Some(b);
    }
    if ha.signum() == hb.signum() {
        return None;
    }
    let up = ha < 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let hm = h(m)?;
        if (hm < 0.0) == up {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Rebuilds `φ` from an associative operation by halving and repetition.
///
/// Starting from `anchor`, repeated halving solves `f(h, h) = h_k` for
/// `depth` levels, which gives a unit `u` with `φ(u) = 2^-depth`. The knots
/// `u, f(u, u), f(u, f(u, u)), …` then carry `φ = m·2^-depth` until they leave
/// the interval. On the far side of the identity the unit is the element
/// `v` with `f(u, v) = e`. `φ(e) = 0` and `φ(anchor) = 1`.
///
/// A non-associative operation still yields a regraduation; its failure
/// shows in `training_residual`.
pub fn reconstruct_phi(f: &BinaryOpTable, anchor: f64, depth: usize) -> Result<Reconstruction> {
    let e = find_identity(f)?;
    check_monotone(f)?;
    if !f.contains(anchor) || anchor == e {
        return Err(Error::InvalidArgument(format!(
            "anchor {anchor} must lie in the interval and differ from the identity {e}"
        )));
    }
    let (lo, hi) = (f.lo(), f.hi());
    let mut unit = anchor;
    for _ in 0..depth {
        let target = unit;
        let (a, b) = if e < target { (e, target) } else { (target, e) };
        unit = bisect(|h| f.eval(h, h).map(|v| v - target), a, b).ok_or_else(|| {
            Error::Closure(format!("cannot halve {target} within the interval"))
        })?;
    }
    let step = 0.5f64.powi(depth as i32);

    let mut knots = vec![(e, 0.0)];
    let walk = |start: f64, sign: f64, knots: &mut Vec<(f64, f64)>| {
        let mut x = start;
        let mut m = 1.0;
        while knots.len() < MAX_KNOTS && x >= lo && x <= hi {
            knots.push((x, sign * m * step));
            match f.eval(start, x) {
                Some(next) if next != x => x = next,
                _ => break,
            }
            m += 1.0;
        }
    };
    walk(unit, 1.0, &mut knots);
    // the opposite side of the identity, if the interval extends there
    let (a, b) = if unit > e { (lo, e) } else { (e, hi) };
    if a < b {
        if let Some(v) = bisect(|x| f.eval(unit, x).map(|s| s - e), a, b) {
            if v != e {
                walk(v, -1.0, &mut knots);
            }
        }
    }
    knots.sort_by(|p, q| p.0.total_cmp(&q.0));
    knots.dedup_by(|p, q| p.0 == q.0);
    let (xs, phis): (Vec<f64>, Vec<f64>) = knots.into_iter().unzip();
    let raw = Regraduation::tabulated(xs.clone(), phis.clone())?;
    let scale = raw.phi(anchor);
    let phis = phis.into_iter().map(|p| p / scale).collect();
    let regraduation = Regraduation::tabulated(xs, phis)?;
    let training_residual = verify_regraduation(f, &regraduation)?;
    Ok(Reconstruction {
        regraduation,
        identity: e,
        training_residual,
    })
}
