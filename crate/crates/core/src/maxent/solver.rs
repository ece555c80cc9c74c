use nalgebra::{DMatrix, DVector};

use crate::belief::{BeliefWeb, BlockIndex};
use crate::error::{Error, Result};
use crate::numeric::fsum;

use super::constraint::{Constraint, ConstraintSet};
use super::entropy::relative_entropy;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop once every constraint residual is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: 200,
        }
    }
}

/// Lagrange multipliers of the expectation and mass constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    /// One multiplier per expectation or mass constraint, in input order.
    /// Constraints that every distribution on the support satisfies get 0.
    pub lambdas: Vec<f64>,
    pub iterations: usize,
    pub residual_inf_norm: f64,
    /// `ln Z` with `posterior(x)·Z = base(x)·exp(Σ λ_j A_j(x))`, where the
    /// base is the prior after conditioning on point data.
    pub log_partition: f64,
    /// Smallest Hessian eigenvalue seen over the iterates.
    pub min_curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpdateReport {
    pub posterior: BeliefWeb,
    /// `S[posterior, prior]` in nats.
    pub entropy: f64,
    pub dual: Option<DualSolution>,
}

/// Outcome of the necessary feasibility conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub diagnostics: Vec<String>,
}

/// Prior after point data, with one entry per linear constraint.
struct Prepared {
    base: Vec<f64>,
    linear: Vec<(Vec<f64>, f64)>,
    data_applied: bool,
}

/// Applies point data as `q(x)·e^{λ(x)}/Z` with `e^{λ(x)}/Z = δ(x, x')/q(x')`.
fn apply_point_data(base: &mut [f64], prior: &BeliefWeb, block: &BlockIndex, observed: &[usize]) -> Result<()> {
    let space = prior.space();
    let target = block.formula(observed).column(space)?;
    let evidence = fsum(target.ones().map(|i| base[i]));
    if evidence <= 0.0 {
        return Err(Error::ZeroEvidence);
    }
    let multiplier = 1.0 / evidence;
    for (i, w) in base.iter_mut().enumerate() {
        *w *= if target.get(i) { multiplier } else { 0.0 };
    }
    Ok(())
}

fn prepare(prior: &BeliefWeb, constraints: &ConstraintSet) -> Result<Prepared> {
    let space = prior.space();
    let mut base = prior.weights().to_vec();
    let mut linear = Vec::new();
    let mut seen_vars: Vec<usize> = Vec::new();
    let mut data_applied = false;
    for c in &constraints.constraints {
        c.validate(space)?;
        if let Constraint::PointData { block, observed } = c {
            if block.indices().iter().any(|v| seen_vars.contains(v)) {
                return Err(Error::InvalidArgument(
                    "at most one data constraint per variable".into(),
                ));
            }
            seen_vars.extend(block.indices());
            apply_point_data(&mut base, prior, block, observed)?;
            data_applied = true;
        }
    }
    for c in &constraints.constraints {
        if let Some(l) = c.linear(space)? {
            linear.push(l);
        }
    }
    Ok(Prepared {
        base,
        linear,
        data_applied,
    })
}

/// Range of a constraint function over the support of `base`.
fn support_range(base: &[f64], values: &[f64]) -> (f64, f64) {
    base.iter()
        .zip(values)
        .filter(|(&q, _)| q > 0.0)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, &v)| {
            (lo.min(v), hi.max(v))
        })
}

/// Whether a constraint is satisfied by every distribution on the support.
fn is_constant(lo: f64, hi: f64) -> bool {
    hi - lo <= 1e-15 * lo.abs().max(hi.abs()).max(1.0)
}

/// Checks necessary conditions for a constraint set to admit an interior
/// solution: targets strictly inside the range of their functions on the
/// prior support, positive evidence for data, and unit total for mass
/// constraints that partition the space.
pub fn feasibility_check(prior: &BeliefWeb, constraints: &ConstraintSet) -> Result<Feasibility> {
    let mut diagnostics = Vec::new();
    let prepared = match prepare(prior, constraints) {
        Ok(p) => p,
        Err(Error::ZeroEvidence) => {
            return Ok(Feasibility {
                feasible: false,
                diagnostics: vec!["observed data has zero prior mass".into()],
            })
        }
        Err(e) => return Err(e),
    };
    for (j, (values, target)) in prepared.linear.iter().enumerate() {
        let (lo, hi) = support_range(&prepared.base, values);
        if is_constant(lo, hi) {
            if (target - lo).abs() > 1e-12 {
                diagnostics.push(format!(
                    "constraint {j}: function is constant {lo} on the support but the target is {target}"
                ));
            }
        } else if *target < lo || *target > hi {
            diagnostics.push(format!(
                "constraint {j}: target {target} lies outside [{lo}, {hi}]"
            ));
        } else if *target == lo || *target == hi {
            diagnostics.push(format!(
                "constraint {j}: target {target} lies on the boundary of [{lo}, {hi}]; no interior solution"
            ));
        }
    }
    let space = prior.space();
    let masses: Vec<(crate::logic::column::Column, f64)> = constraints
        .constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::SubdomainMass { domain, target } => Some((domain, *target)),
            _ => None,
        })
        .map(|(d, t)| Ok((d.column(space)?, t)))
        .collect::<Result<_>>()?;
    if masses.len() >= 2 {
        let disjoint = masses
            .iter()
            .enumerate()
            .all(|(i, a)| masses[i + 1..].iter().all(|b| (&a.0 & &b.0).none()));
        let union = masses
            .iter()
            .skip(1)
            .fold(masses[0].0.clone(), |acc, m| &acc | &m.0);
        let total = fsum(masses.iter().map(|m| m.1));
        if disjoint && union.all() && (total - 1.0).abs() > 1e-12 {
            diagnostics.push(format!(
                "mass constraints partition the space but their targets sum to {total}"
            ));
        }
    }
    Ok(Feasibility {
        feasible: diagnostics.is_empty(),
        diagnostics,
    })
}

/// State of the dual at one multiplier vector.
struct DualPoint {
    /// `ln Σ q·exp(λ·a)` with centred constraint functions `a = A − t`.
    objective: f64,
    posterior: Vec<f64>,
    gradient: DVector<f64>,
    hessian: DMatrix<f64>,
}

fn dual_point(q: &[f64], a: &[Vec<f64>], lambda: &DVector<f64>) -> DualPoint {
    let k = a.len();
    let s: Vec<f64> = (0..q.len())
        .map(|i| (0..k).map(|j| lambda[j] * a[j][i]).sum())
        .collect();
    let m = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unnorm: Vec<f64> = q.iter().zip(&s).map(|(qi, si)| qi * (si - m).exp()).collect();
    let z = fsum(unnorm.iter().copied());
    let posterior: Vec<f64> = unnorm.iter().map(|u| u / z).collect();
    let gradient = DVector::from_fn(k, |j, _| fsum(posterior.iter().zip(&a[j]).map(|(p, v)| p * v)));
    let hessian = DMatrix::from_fn(k, k, |r, c| {
        fsum(
            posterior
                .iter()
                .zip(&a[r])
                .zip(&a[c])
                .map(|((p, x), y)| p * (x - gradient[r]) * (y - gradient[c])),
        )
    });
    DualPoint {
        objective: m + z.ln(),
        posterior,
        gradient,
        hessian,
    }
}

fn newton_direction(h: &DMatrix<f64>, g: &DVector<f64>) -> DVector<f64> {
    let k = g.len();
    let mut reg = 0.0;
    for _ in 0..12 {
        let m = h + DMatrix::identity(k, k) * reg;
        if let Some(ch) = m.cholesky() {
            return -ch.solve(g);
        }
        reg = if reg == 0.0 { 1e-12 } else { reg * 100.0 };
    }
    -g
}

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Minimizes `ln Z(λ) − λ·t` by damped Newton steps from `λ = 0`.
fn solve_dual(
    q: &[f64],
    a: &[Vec<f64>],
    opts: &SolverOptions,
) -> Result<(DVector<f64>, DualPoint, usize, f64)> {
    let k = a.len();
    let mut lambda = DVector::zeros(k);
    let mut point = dual_point(q, a, &lambda);
    let mut min_curvature = f64::INFINITY;
    let mut best = inf_norm(&point.gradient);
    let mut iterations = 0;
    loop {
        if let Some(eig) = point.hessian.clone().try_symmetric_eigen(1e-14, 1000) {
            min_curvature = min_curvature.min(eig.eigenvalues.min());
        }
        let gnorm = inf_norm(&point.gradient);
        best = best.min(gnorm);
        if gnorm <= opts.tol {
            // one more full step costs little and usually gains several digits
            let trial = &lambda + newton_direction(&point.hessian, &point.gradient);
            let next = dual_point(q, a, &trial);
            if next.objective.is_finite() && inf_norm(&next.gradient) < gnorm {
                return Ok((trial, next, iterations, min_curvature));
            }
            return Ok((lambda, point, iterations, min_curvature));
        }
        if iterations == opts.max_iter {
            return Err(Error::Convergence {
                iterations,
                best_residual: best,
            });
        }
        let dir = newton_direction(&point.hessian, &point.gradient);
        let slope = point.gradient.dot(&dir);
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial = &lambda + &dir * step;
            let next = dual_point(q, a, &trial);
            let armijo = next.objective <= point.objective + 1e-4 * step * slope;
            let flat = next.objective <= point.objective + 1e-12 * point.objective.abs().max(1.0)
                && inf_norm(&next.gradient) < gnorm;
            if next.objective.is_finite() && (armijo || flat) {
                accepted = Some((trial, next));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((l, p)) => {
                lambda = l;
                point = p;
            }
            None => {
                return Err(Error::Convergence {
                    iterations,
                    best_residual: best,
                })
            }
        }
        iterations += 1;
    }
}

/// Maximum relative entropy update of `prior` under `constraints`.
///
/// Point data are applied first by conditioning; the remaining expectation
/// and mass constraints are solved through their dual. An empty constraint
/// set returns the prior unchanged.
pub fn update(
    prior: &BeliefWeb,
    constraints: &ConstraintSet,
    opts: &SolverOptions,
) -> Result<UpdateReport> {
    if constraints.is_empty() {
        return Ok(UpdateReport {
            posterior: prior.clone(),
            entropy: 0.0,
            dual: None,
        });
    }
    let prepared = prepare(prior, constraints)?;
    let support: Vec<usize> = (0..prepared.base.len())
        .filter(|&i| prepared.base[i] > 0.0)
        .collect();
    let q: Vec<f64> = support.iter().map(|&i| prepared.base[i]).collect();

    let mut active = Vec::new();
    for (j, (values, target)) in prepared.linear.iter().enumerate() {
        let (lo, hi) = support_range(&prepared.base, values);
        if is_constant(lo, hi) {
            if (target - lo).abs() > opts.tol {
                return Err(Error::Infeasible(format!(
                    "constraint {j} is constant {lo} on the support, target {target}"
                )));
            }
            continue;
        }
        if *target <= lo || *target >= hi {
            return Err(Error::Infeasible(format!(
                "constraint {j}: target {target} is not strictly inside [{lo}, {hi}]"
            )));
        }
        active.push(j);
    }

    let n = prepared.base.len();
    let mut weights = prepared.base.clone();
    let dual = if prepared.linear.is_empty() {
        None
    } else {
        let centred: Vec<Vec<f64>> = active
            .iter()
            .map(|&j| {
                let (values, target) = &prepared.linear[j];
                support.iter().map(|&i| values[i] - target).collect()
            })
            .collect();
        let (lambda, point, iterations, min_curvature) = solve_dual(&q, &centred, opts)?;
        weights = vec![0.0; n];
        for (&i, &p) in support.iter().zip(&point.posterior) {
            weights[i] = p;
        }
        let mut lambdas = vec![0.0; prepared.linear.len()];
        for (slot, &j) in active.iter().enumerate() {
            lambdas[j] = lambda[slot];
        }
        let shift: f64 = active
            .iter()
            .enumerate()
            .map(|(slot, &j)| lambda[slot] * prepared.linear[j].1)
            .sum();
        let residual_inf_norm = prepared
            .linear
            .iter()
            .map(|(values, target)| {
                (fsum(weights.iter().zip(values).map(|(p, v)| p * v)) - target).abs()
            })
            .fold(0.0, f64::max);
        Some(DualSolution {
            lambdas,
            iterations,
            residual_inf_norm,
            log_partition: point.objective + shift,
            min_curvature: if min_curvature.is_finite() {
                min_curvature
            } else {
                0.0
            },
        })
    };
    let posterior = if prepared.data_applied || dual.is_some() {
        BeliefWeb::normalized(prior.space().clone(), weights)?
    } else {
        prior.clone()
    };
    let entropy = relative_entropy(&posterior, prior)?;
    Ok(UpdateReport {
        posterior,
        entropy,
        dual,
    })
}

/// Bayes' rule obtained as the maximum-entropy update on point data.
pub fn bayes_via_maxent(prior: &BeliefWeb, block: &BlockIndex, observed: &[usize]) -> Result<BeliefWeb> {
    let constraints = ConstraintSet::new(vec![Constraint::PointData {
        block: block.clone(),
        observed: observed.to_vec(),
    }]);
    Ok(update(prior, &constraints, &SolverOptions::default())?.posterior)
}
