use crate::belief::BeliefWeb;
use crate::error::{Error, Result};

/// `S[p, q] = −Σ p·ln(p/q)` in nats, with `0·ln 0 = 0`. Never positive;
/// zero iff `p = q`.
pub fn relative_entropy(p: &BeliefWeb, q: &BeliefWeb) -> Result<f64> {
    if p.space() != q.space() {
        return Err(Error::InvalidArgument(
            "relative entropy needs webs over the same space".into(),
        ));
    }
    let mut terms = Vec::with_capacity(p.weights().len());
    for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Err(Error::SupportViolation);
            }
            terms.push(-pi * (pi / qi).ln());
        }
    }
    Ok(crate::numeric::fsum(terms).min(0.0))
}

/// Kullback-Leibler divergence `KL(p‖q) = −S[p, q] ≥ 0`.
pub fn kl_divergence(p: &BeliefWeb, q: &BeliefWeb) -> Result<f64> {
    Ok(-relative_entropy(p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::space::Space;

    fn web(w: [f64; 2]) -> BeliefWeb {
        BeliefWeb::new(Space::binary(&["a"]).unwrap(), w.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let q = web([0.5, 0.5]);
        assert_eq!(relative_entropy(&q, &q).unwrap(), 0.0);
        let p = web([1.0, 0.0]);
        let s = relative_entropy(&p, &q).unwrap();
        assert!((s + std::f64::consts::LN_2).abs() < 1e-15);
        assert!((kl_divergence(&p, &q).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(relative_entropy(&q, &p), Err(Error::SupportViolation));
    }
}
