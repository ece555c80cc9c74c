//! Trials of two design properties of the updating method: constraints
//! confined to a subdomain leave conditional beliefs outside it alone, and
//! separate constraints on independent factors keep them independent.

use crate::belief::{BeliefWeb, BlockIndex};
use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::semantics::{entails, equivalent};
use crate::logic::space::Space;

use super::constraint::{Constraint, ConstraintSet};
use super::solver::{update, SolverOptions};

/// Updates with `inner`, which must live inside `domain`, while the masses
/// of `domain` and its complement stay at their prior values. Returns the
/// largest change of a complement-conditional probability.
///
/// When `inner` is itself a mass constraint on a formula equivalent to
/// `domain`, its target replaces the prior mass of the domain (a pure mass
/// shift).
pub fn dc1_property_trial(
    prior: &BeliefWeb,
    domain: &Formula,
    inner: &Constraint,
    opts: &SolverOptions,
) -> Result<f64> {
    let space = prior.space();
    let inside = domain.column(space)?;
    let complement = Formula::not(domain.clone());
    let mut mass_d = prior.probability(domain)?;
    let mut constraints = Vec::new();
    match inner {
        Constraint::Expectation { values, .. } => {
            inner.validate(space)?;
            if values.iter().enumerate().any(|(i, v)| !inside.get(i) && *v != 0.0) {
                return Err(Error::InvalidArgument(
                    "inner expectation must vanish outside the domain".into(),
                ));
            }
            constraints.push(inner.clone());
        }
        Constraint::SubdomainMass { domain: sub, target } => {
            if equivalent(space, sub, domain)? {
                mass_d = *target;
            } else if entails(space, std::slice::from_ref(sub), domain)? {
                constraints.push(inner.clone());
            } else {
                return Err(Error::InvalidArgument(
                    "inner mass constraint must lie inside the domain".into(),
                ));
            }
        }
        Constraint::PointData { .. } => {
            return Err(Error::InvalidArgument(
                "point data is not a subdomain constraint".into(),
            ))
        }
    }
    constraints.push(Constraint::SubdomainMass {
        domain: domain.clone(),
        target: mass_d,
    });
    constraints.push(Constraint::SubdomainMass {
        domain: complement.clone(),
        target: 1.0 - mass_d,
    });
    let report = update(prior, &ConstraintSet::new(constraints), opts)?;

    let out = !&inside;
    let q_out = prior.probability(&complement)?;
    let p_out = report.posterior.probability(&complement)?;
    if q_out <= 0.0 || p_out <= 0.0 {
        return Ok(0.0);
    }
    Ok(out
        .ones()
        .map(|i| (report.posterior.weight(i) / p_out - prior.weight(i) / q_out).abs())
        .fold(0.0, f64::max))
}

/// Moves a constraint on one factor of a product space into the product.
/// `offset` is the number of variables before the factor; `before` and
/// `after` count the worlds of the factors before and after it.
fn lift(c: &Constraint, offset: usize, before: usize, after: usize, joint: &Space) -> Result<Constraint> {
    Ok(match c {
        Constraint::Expectation { values, target } => {
            let mut lifted = Vec::with_capacity(before * values.len() * after);
            for _ in 0..before {
                for &v in values {
                    lifted.extend(std::iter::repeat_n(v, after));
                }
            }
            Constraint::Expectation {
                values: lifted,
                target: *target,
            }
        }
        Constraint::SubdomainMass { domain, target } => Constraint::SubdomainMass {
            domain: domain.shifted(offset),
            target: *target,
        },
        Constraint::PointData { block, observed } => Constraint::PointData {
            block: BlockIndex::new(joint, block.indices().iter().map(|v| v + offset).collect())?,
            observed: observed.clone(),
        },
    })
}

/// Updates two independent priors jointly and separately; returns the
/// largest gap between the joint posterior and the product of the separate
/// posteriors. Each constraint list refers to its own factor only.
pub fn dc3_property_trial(
    prior_1: &BeliefWeb,
    prior_2: &BeliefWeb,
    constraints_1: &[Constraint],
    constraints_2: &[Constraint],
    opts: &SolverOptions,
) -> Result<f64> {
    let joint_prior = BeliefWeb::product(&[prior_1, prior_2])?;
    let joint = joint_prior.space().clone();
    let n1 = prior_1.weights().len();
    let n2 = prior_2.weights().len();
    let vars_1 = prior_1.space().len();
    let mut lifted = Vec::new();
    for c in constraints_1 {
        c.validate(prior_1.space())?;
        lifted.push(lift(c, 0, 1, n2, &joint)?);
    }
    for c in constraints_2 {
        c.validate(prior_2.space())?;
        lifted.push(lift(c, vars_1, n1, 1, &joint)?);
    }
    let together = update(&joint_prior, &ConstraintSet::new(lifted), opts)?.posterior;
    let p1 = update(prior_1, &ConstraintSet::new(constraints_1.to_vec()), opts)?.posterior;
    let p2 = update(prior_2, &ConstraintSet::new(constraints_2.to_vec()), opts)?.posterior;
    let separate = BeliefWeb::product(&[&p1, &p2])?;
    Ok(together
        .weights()
        .iter()
        .zip(separate.weights())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
