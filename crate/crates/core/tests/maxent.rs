mod common;

use common::{die, positive};
use entropic::belief::{BeliefWeb, BlockIndex};
use entropic::logic::{Space, Variable};
use entropic::maxent::{
    bayes_via_maxent, relative_entropy, update, Constraint, ConstraintSet, SolverOptions,
};
use entropic::Error;
use proptest::prelude::*;

/// A prior over `n` worlds with one constraint whose target is the mean
/// under another positive distribution.
fn problem(n: usize) -> impl Strategy<Value = (BeliefWeb, Vec<f64>, f64, Vec<f64>)> {
    (positive(n), positive(n), prop::collection::vec(-3.0f64..3.0, n)).prop_map(move |(p, s, v)| {
        let t = v.iter().zip(&s).map(|(v, s)| v * s).sum();
        (BeliefWeb::new(die("x", n), p).unwrap(), v, t, s)
    })
}

fn solve(prior: &BeliefWeb, values: &[f64], target: f64) -> BeliefWeb {
    let c = Constraint::Expectation { values: values.to_vec(), target };
    update(prior, &ConstraintSet::new(vec![c]), &SolverOptions::default())
        .unwrap()
        .posterior
}

proptest! {
    #[test]
    fn posterior_is_normalized_and_meets_the_constraint((prior, v, t, _) in problem(7)) {
        let q = solve(&prior, &v, t);
        let w = q.weights();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let mean: f64 = w.iter().zip(&v).map(|(w, v)| w * v).sum();
        prop_assert!((mean - t).abs() <= 1e-10);
    }

    #[test]
    fn posterior_is_an_exponential_tilt((prior, v, t, _) in problem(6)) {
        let q = solve(&prior, &v, t);
        // ln(q/p) is affine in v
        let l: Vec<f64> = q.weights().iter().zip(prior.weights()).map(|(q, p)| (q / p).ln()).collect();
        let slope = (l[1] - l[0]) / (v[1] - v[0]);
        for i in 2..6 {
            let predicted = l[0] + slope * (v[i] - v[0]);
            prop_assert!((l[i] - predicted).abs() <= 1e-6 * (1.0 + slope.abs()));
        }
    }

    #[test]
    fn posterior_beats_any_other_feasible_distribution((prior, v, t, s) in problem(6)) {
        // s meets the constraint too, so its relative entropy cannot be larger
        let q = solve(&prior, &v, t);
        let other = BeliefWeb::new(die("x", 6), s).unwrap();
        let sq = relative_entropy(&q, &prior).unwrap();
        let so = relative_entropy(&other, &prior).unwrap();
        prop_assert!(so <= sq + 1e-12, "{} > {}", so, sq);
    }

    #[test]
    fn point_data_reproduces_bayes(w in positive(12), x in 0usize..3) {
        let space = Space::new(vec![
            Variable::new("x", ["a", "b", "c"]).unwrap(),
            Variable::new("y", ["1", "2", "3", "4"]).unwrap(),
        ]).unwrap();
        let prior = BeliefWeb::new(space.clone(), w).unwrap();
        let block = BlockIndex::new(&space, vec![0]).unwrap();
        let me = bayes_via_maxent(&prior, &block, &[x]).unwrap();
        let direct = prior.bayes_condition(&block, &[x]).unwrap();
        for (a, b) in me.weights().iter().zip(direct.weights()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn unreachable_targets_are_infeasible() {
    let prior = BeliefWeb::uniform(die("x", 3)).unwrap();
    for target in [3.0, 3.5, 1.0] {
        let c = Constraint::Expectation { values: vec![1.0, 2.0, 3.0], target };
        let r = update(&prior, &ConstraintSet::new(vec![c]), &SolverOptions::default());
        assert!(matches!(r, Err(Error::Infeasible(_))), "{target}: {r:?}");
    }
}
