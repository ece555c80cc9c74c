mod common;

use common::{formula, letters, web_over};
use entropic::belief::{BeliefWeb, BlockIndex};
use entropic::logic::Formula;
use entropic::Error;
use proptest::prelude::*;

fn satisfiable(s: &entropic::logic::Space, f: &Formula) -> bool {
    !f.column(s).unwrap().none()
}

proptest! {
    #[test]
    fn cox_rules_hold(
        w in web_over(letters(3)),
        a in formula(3),
        b in formula(3),
        g in formula(3),
    ) {
        let s = w.space().clone();
        prop_assume!(satisfiable(&s, &Formula::and(g.clone(), a.clone())));
        prop_assume!(satisfiable(&s, &Formula::and(g.clone(), b.clone())));
        prop_assert!(w.check_sum_rule(&a, &b, &g).unwrap() <= 1e-12);
        prop_assert!(w.check_product_rule(&a, &b, &g).unwrap() <= 1e-12);
        prop_assert!(w.check_bayes_symmetry(&a, &b, &g).unwrap() <= 1e-12);
        let not_a = w.negation_rule(&a, &g).unwrap();
        prop_assert!((not_a + w.conditional(&a, &g).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn marginals_are_normalized_and_consistent(w in web_over(letters(4)), keep in prop::sample::subsequence(vec![0usize, 1, 2, 3], 1..4)) {
        let block = BlockIndex::new(w.space(), keep.clone()).unwrap();
        let m = w.marginalize(&block).unwrap();
        prop_assert!((m.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        // the first variable kept, value T, has the same mass in both
        let f = Formula::letter(keep[0]);
        let g = Formula::letter(0);
        prop_assert!((w.probability(&f).unwrap() - m.probability(&g).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn bayes_conditioning_matches_the_conditional(w in web_over(letters(3)), f in formula(3), t in any::<bool>()) {
        let block = BlockIndex::new(w.space(), vec![0]).unwrap();
        let v = usize::from(!t);
        let post = w.bayes_condition(&block, &[v]).unwrap();
        let cond = w.conditional(&f, &block.formula(&[v])).unwrap();
        prop_assert!((post.probability(&f).unwrap() - cond).abs() <= 1e-12);
    }
}

#[test]
fn zero_evidence_is_an_error() {
    let w = BeliefWeb::new(letters(2), vec![0.5, 0.5, 0.0, 0.0]).unwrap();
    let block = BlockIndex::new(w.space(), vec![0]).unwrap();
    assert!(matches!(w.bayes_condition(&block, &[1]), Err(Error::ZeroEvidence)));
    let not_a = Formula::not(Formula::letter(0));
    assert!(matches!(w.conditional(&Formula::True, &not_a), Err(Error::ZeroMassContext)));
}

#[test]
fn weights_must_be_a_distribution() {
    assert!(BeliefWeb::new(letters(1), vec![0.7, 0.7]).is_err());
    assert!(BeliefWeb::new(letters(1), vec![1.5, -0.5]).is_err());
    assert!(BeliefWeb::new(letters(1), vec![1.0]).is_err());
}
