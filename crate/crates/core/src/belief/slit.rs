//! Two-slit consistency: the sum over mutually exclusive paths versus the
//! classical substitution of single-slit conditionals.

use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::space::{Space, Variable};

use super::web::BeliefWeb;

/// Conditionals measured with only one slit open: the probability that the
/// particle takes the open slit and the detection probability given it did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleSlit {
    pub p_through: f64,
    pub p_x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleSlit {
    /// `p(α)p(x|α) + p(β)p(x|β)` with both slits open.
    pub consistent: f64,
    /// The same sum with each term replaced by its single-slit value.
    pub naive: f64,
    /// `|P(x) − consistent|` with `P(x)` summed over the worlds of the
    /// two-path web.
    pub total_probability_residual: f64,
}

impl DoubleSlit {
    pub fn disagrees(&self) -> bool {
        (self.consistent - self.naive).abs() > 1e-12
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} = {x} is not a probability")))
    }
}

/// Compares the consistent two-slit probability with the naive substitution
/// using the given single-slit conditionals.
pub fn double_slit_compare(
    p_alpha: f64,
    p_beta: f64,
    p_x_given_alpha: f64,
    p_x_given_beta: f64,
    slit_a: SingleSlit,
    slit_b: SingleSlit,
) -> Result<DoubleSlit> {
    for (name, x) in [
        ("p_alpha", p_alpha),
        ("p_beta", p_beta),
        ("p_x_given_alpha", p_x_given_alpha),
        ("p_x_given_beta", p_x_given_beta),
        ("p_through_a", slit_a.p_through),
        ("p_x_a", slit_a.p_x),
        ("p_through_b", slit_b.p_through),
        ("p_x_b", slit_b.p_x),
    ] {
        check_unit(name, x)?;
    }
    if (p_alpha + p_beta - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "p_alpha + p_beta = {} must be 1",
            p_alpha + p_beta
        )));
    }
    let consistent = p_alpha * p_x_given_alpha + p_beta * p_x_given_beta;
    let naive = slit_a.p_through * slit_a.p_x + slit_b.p_through * slit_b.p_x;

    let space = Space::new(vec![
        Variable::new("path", ["alpha", "beta"])?,
        Variable::new("x", ["hit", "miss"])?,
    ])?;
    let web = BeliefWeb::normalized(
        space,
        vec![
            p_alpha * p_x_given_alpha,
            p_alpha * (1.0 - p_x_given_alpha),
            p_beta * p_x_given_beta,
            p_beta * (1.0 - p_x_given_beta),
        ],
    )?;
    let hit = web.probability(&Formula::atom(1, 0))?;
    Ok(DoubleSlit {
        consistent,
        naive,
        total_probability_residual: (hit - consistent).abs(),
    })
}

/// The two-slit comparison with the classical single-slit picture: with one
/// slit closed the particle takes the open one, and its detection
/// probability is assumed unaffected by the other slit.
pub fn double_slit_demo(
    p_alpha: f64,
    p_beta: f64,
    p_x_given_alpha: f64,
    p_x_given_beta: f64,
) -> Result<DoubleSlit> {
    double_slit_compare(
        p_alpha,
        p_beta,
        p_x_given_alpha,
        p_x_given_beta,
        SingleSlit {
            p_through: 1.0,
            p_x: p_x_given_alpha,
        },
        SingleSlit {
            p_through: 1.0,
            p_x: p_x_given_beta,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_and_half() {
        let d = double_slit_demo(0.5, 0.5, 0.2, 0.4).unwrap();
        assert!((d.consistent - 0.3).abs() < 1e-15);
        assert!((d.naive - 0.6).abs() < 1e-15);
        assert!(d.disagrees());
        assert!(d.total_probability_residual <= 1e-12);
    }

    #[test]
    fn equal_conditionals() {
        let d = double_slit_demo(0.3, 0.7, 0.25, 0.25).unwrap();
        assert!((d.consistent - 0.25).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(double_slit_demo(0.5, 0.6, 0.2, 0.4).is_err());
        assert!(double_slit_demo(0.5, 0.5, 1.2, 0.4).is_err());
    }
}
