mod common;

use proptest::prelude::*;
use staged_core::ideal::{minimal_primes, minimal_primes_brute_force, IdealBasis};
use staged_core::poly::{Indeterminate, Monomial};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random non-constant square-free generators over at most 12 variables.
fn generators() -> impl Strategy<Value = Vec<Monomial>> {
    (1usize..=12).prop_flat_map(|d| {
        prop::collection::vec(1u16..(1 << d), 1..10).prop_map(move |masks| {
            masks
                .iter()
                .map(|mask| {
                    Monomial::from_vars(
                        (0..d)
                            .filter(|i| mask & (1 << i) != 0)
                            .map(|i| Indeterminate::new(&format!("v{i:02}")).unwrap()),
                    )
                    .unwrap()
                })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn agrees_with_subset_oracle(gens in generators()) {
        let basis = IdealBasis::interreduce(gens.clone());
        let primes = minimal_primes(&basis).unwrap();
        let found: Vec<Vec<Indeterminate>> = primes.iter().map(|p| p.vars().to_vec()).collect();
        prop_assert_eq!(&found, &common::brute_force_primes(&gens));
        let shipped: Vec<Vec<Indeterminate>> = minimal_primes_brute_force(&basis)
            .unwrap()
            .iter()
            .map(|p| p.vars().to_vec())
            .collect();
        prop_assert_eq!(&found, &shipped);
    }

    #[test]
    fn components_are_minimal_covers(gens in generators()) {
        let basis = IdealBasis::interreduce(gens.clone());
        let primes = minimal_primes(&basis).unwrap();
        let d = basis.variables().len();
        prop_assert!(primes.len() <= binomial(d, d.div_ceil(2)));
        for p in &primes {
            prop_assert!(gens.iter().all(|m| p.covers(m)));
            for x in p.vars() {
                let smaller = staged_core::PrimeComponent::new(p.vars().iter().filter(|y| *y != x).cloned());
                prop_assert!(!gens.iter().all(|m| smaller.covers(m)));
            }
            for q in &primes {
                prop_assert!(p == q || !q.vars().iter().all(|x| p.contains(x)));
            }
        }
    }
}
