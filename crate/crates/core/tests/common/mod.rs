#![allow(dead_code)]

use entropic::belief::BeliefWeb;
use entropic::logic::{Connective, Formula, Space, Variable};
use proptest::prelude::*;

/// Formulas over `vars` binary letters.
pub fn formula(vars: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..vars).prop_map(Formula::letter),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            1 => inner.clone().prop_map(Formula::not),
            4 => (0..Connective::ALL.len(), inner.clone(), inner)
                .prop_map(|(c, f, g)| Formula::bin(Connective::ALL[c], f, g)),
        ]
    })
}

pub fn letters(n: usize) -> Space {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    Space::binary(&names).unwrap()
}

/// A normalized web with strictly positive weights over `n` worlds.
pub fn positive(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|w| {
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect()
    })
}

pub fn web_over(space: Space) -> impl Strategy<Value = BeliefWeb> {
    let n = space.world_count().unwrap();
    positive(n).prop_map(move |w| BeliefWeb::new(space.clone(), w).unwrap())
}

/// A single variable with labels `1..=n`.
pub fn die(name: &str, n: usize) -> Space {
    let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    Space::new(vec![Variable::new(name, labels).unwrap()]).unwrap()
}
