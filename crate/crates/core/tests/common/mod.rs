//! Independent reference implementations shared by the property suites.
//!
//! Nothing here uses the bitset engine: primes are found by testing every
//! variable subset, and trees by trying every variable subset as a root
//! floret (no minimal-prime pruning) with a global stage check at the end.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use staged_core::poly::{Indeterminate, Monomial};
use staged_core::tree::random::{random_staged_tree, TreeShape};
use staged_core::{EventTree, Nesting};

/// Minimal covering variable sets of `gens`, sorted by size then names.
pub fn brute_force_primes(gens: &[Monomial]) -> Vec<Vec<Indeterminate>> {
    let vars: Vec<Indeterminate> = gens
        .iter()
        .flat_map(|m| m.vars().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(vars.len() <= 16, "oracle limited to 16 variables");
    let covers = |mask: u32| {
        gens.iter().all(|m| {
            vars.iter()
                .enumerate()
                .any(|(i, x)| mask & (1 << i) != 0 && m.contains(x))
        })
    };
    let mut out: Vec<Vec<Indeterminate>> = Vec::new();
    for mask in 0u32..(1 << vars.len()) {
        if !covers(mask) {
            continue;
        }
        let minimal = (0..vars.len())
            .filter(|i| mask & (1 << i) != 0)
            .all(|i| !covers(mask & !(1 << i)));
        if minimal {
            out.push(
                (0..vars.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| vars[i].clone())
                    .collect(),
            );
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Canonical forms of every staged tree with atoms exactly `support`,
/// searching all root florets rather than minimal primes only.
pub fn brute_force_class(support: &[Monomial]) -> BTreeSet<String> {
    let c: BTreeSet<Monomial> = support.iter().cloned().collect();
    nestings(&c)
        .into_iter()
        .filter_map(|n| EventTree::from_nested(&n).ok())
        .filter(|t| t.is_staged())
        .map(|t| t.canonical_form())
        .collect()
}

fn nestings(c: &BTreeSet<Monomial>) -> Vec<Nesting> {
    if c.len() == 1 {
        return if c.iter().next().unwrap().is_one() {
            vec![Nesting::Unit]
        } else {
            Vec::new()
        };
    }
    if c.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let vars: Vec<Indeterminate> = c
        .iter()
        .flat_map(|m| m.vars().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << vars.len()) {
        let floret: Vec<&Indeterminate> = (0..vars.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &vars[i])
            .collect();
        if floret.len() < 2 {
            continue;
        }
        let parts: Vec<Vec<&Monomial>> = floret
            .iter()
            .map(|x| c.iter().filter(|m| m.contains(x)).collect())
            .collect();
        let total: usize = parts.iter().map(Vec::len).sum();
        let covered: BTreeSet<&Monomial> = parts.iter().flatten().copied().collect();
        if total != c.len() || covered.len() != c.len() {
            continue;
        }
        let mut subs: Vec<Vec<Nesting>> = Vec::new();
        for (x, part) in floret.iter().zip(&parts) {
            let quotient: BTreeSet<Monomial> = part
                .iter()
                .map(|m| m.div_var(x).expect("multiple of x"))
                .collect();
            subs.push(nestings(&quotient));
        }
        let mut combos: Vec<Vec<(Indeterminate, Nesting)>> = vec![Vec::new()];
        for (x, options) in floret.iter().zip(&subs) {
            let mut next = Vec::new();
            for partial in &combos {
                for o in options {
                    let mut p = partial.clone();
                    p.push(((*x).clone(), o.clone()));
                    next.push(p);
                }
            }
            combos = next;
        }
        out.extend(combos.into_iter().map(Nesting::Sum));
    }
    out
}

/// A reproducible random staged tree.
pub fn tree_from_seed(seed: u64, max_leaves: usize, saturated: bool) -> EventTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = TreeShape {
        max_leaves,
        saturated,
        ..TreeShape::default()
    };
    random_staged_tree(&mut rng, &shape)
}
