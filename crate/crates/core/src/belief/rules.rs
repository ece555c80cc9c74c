//! Residuals of the sum, product and negation rules on a web.

use crate::error::Result;
use crate::logic::formula::Formula;

use super::web::BeliefWeb;

impl BeliefWeb {
    /// `|P(a∨b|Γ) − P(a|Γ) − P(b|Γ) + P(a∧b|Γ)|`.
    pub fn check_sum_rule(&self, a: &Formula, b: &Formula, gamma: &Formula) -> Result<f64> {
        let or = self.conditional(&Formula::or(a.clone(), b.clone()), gamma)?;
        let and = self.conditional(&Formula::and(a.clone(), b.clone()), gamma)?;
        let pa = self.conditional(a, gamma)?;
        let pb = self.conditional(b, gamma)?;
        Ok((or - pa - pb + and).abs())
    }

    /// `|P(a∧b|Γ) − P(a|Γ)·P(b|Γ∧a)|`.
    pub fn check_product_rule(&self, a: &Formula, b: &Formula, gamma: &Formula) -> Result<f64> {
        let ga = Formula::and(gamma.clone(), a.clone());
        let pb_ga = self.conditional(b, &ga)?;
        let pa = self.conditional(a, gamma)?;
        let pab = self.conditional(&Formula::and(a.clone(), b.clone()), gamma)?;
        Ok((pab - pa * pb_ga).abs())
    }

    /// `P(¬a|Γ)`, which equals `1 − P(a|Γ)`.
    pub fn negation_rule(&self, a: &Formula, gamma: &Formula) -> Result<f64> {
        let not_a = self.conditional(&Formula::not(a.clone()), gamma)?;
        debug_assert!((not_a - (1.0 - self.conditional(a, gamma)?)).abs() <= 1e-12);
        Ok(not_a)
    }

    /// `|P(a|Γ)·P(b|Γa) − P(b|Γ)·P(a|Γb)|`.
    pub fn check_bayes_symmetry(&self, a: &Formula, b: &Formula, gamma: &Formula) -> Result<f64> {
        let ga = Formula::and(gamma.clone(), a.clone());
        let gb = Formula::and(gamma.clone(), b.clone());
        let lhs = self.conditional(a, gamma)? * self.conditional(b, &ga)?;
        let rhs = self.conditional(b, gamma)? * self.conditional(a, &gb)?;
        Ok((lhs - rhs).abs())
    }
}
