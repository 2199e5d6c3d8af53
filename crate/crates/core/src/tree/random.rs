//! Random staged trees with square-free atomic monomials.
//!
//! Trees grow by attaching florets to random leaves. A new floret either
//! reuses an existing stage (same label set) whose labels do not already
//! occur on the path to that leaf, or opens a stage with fresh labels. Both
//! moves keep the tree staged and every path square-free.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::EventTree;
use crate::poly::Indeterminate;

#[derive(Debug, Clone, Copy)]
pub struct TreeShape {
    /// Upper bound on the number of leaves (at least 1).
    pub max_leaves: usize,
    /// Largest floret opened with fresh labels (at least 2).
    pub max_floret: usize,
    /// Never reuse a stage: every edge label is fresh.
    pub saturated: bool,
    /// Label name prefix; labels are `prefix0`, `prefix1`, ...
    pub prefix: &'static str,
}

impl Default for TreeShape {
    fn default() -> Self {
        TreeShape {
            max_leaves: 10,
            max_floret: 3,
            saturated: false,
            prefix: "x",
        }
    }
}

enum Draft {
    Leaf,
    Floret(usize, Vec<Draft>),
}

/// A random staged tree with at most `shape.max_leaves` leaves.
pub fn random_staged_tree<R: Rng + ?Sized>(rng: &mut R, shape: &TreeShape) -> EventTree {
    let target = rng.gen_range(1..=shape.max_leaves.max(1));
    let mut stages: Vec<Vec<Indeterminate>> = Vec::new();
    let mut next_label = 0usize;
    let mut root = Draft::Leaf;
    let mut leaves = 1;

    while leaves < target {
        let budget = target - leaves;
        // Paths to every leaf, as the stages met on the way.
        let mut paths: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        collect_leaves(&root, &mut Vec::new(), &mut Vec::new(), &mut paths);
        let (address, on_path) = paths.swap_remove(rng.gen_range(0..paths.len()));

        let reusable: Vec<usize> = (0..stages.len())
            .filter(|s| !on_path.contains(s) && stages[*s].len() - 1 <= budget)
            .collect();
        let stage = if !shape.saturated && !reusable.is_empty() && rng.gen_bool(0.6) {
            reusable[rng.gen_range(0..reusable.len())]
        } else {
            let k = rng.gen_range(2..=shape.max_floret.max(2).min(budget + 1));
            let labels = (0..k)
                .map(|_| {
                    next_label += 1;
                    Indeterminate::new(&format!("{}{}", shape.prefix, next_label - 1))
                        .expect("prefix is an identifier")
                })
                .collect();
            stages.push(labels);
            stages.len() - 1
        };
        let k = stages[stage].len();
        *leaf_at(&mut root, &address) = Draft::Floret(stage, (0..k).map(|_| Draft::Leaf).collect());
        leaves += k - 1;
    }
    build(&root, &stages)
}

fn collect_leaves(
    d: &Draft,
    address: &mut Vec<usize>,
    on_path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    match d {
        Draft::Leaf => out.push((address.clone(), on_path.clone())),
        Draft::Floret(stage, children) => {
            on_path.push(*stage);
            for (i, c) in children.iter().enumerate() {
                address.push(i);
                collect_leaves(c, address, on_path, out);
                address.pop();
            }
            on_path.pop();
        }
    }
}

fn leaf_at<'a>(d: &'a mut Draft, address: &[usize]) -> &'a mut Draft {
    match address.split_first() {
        None => d,
        Some((i, rest)) => match d {
            Draft::Floret(_, children) => leaf_at(&mut children[*i], rest),
            Draft::Leaf => unreachable!("address runs through a leaf"),
        },
    }
}

fn build(d: &Draft, stages: &[Vec<Indeterminate>]) -> EventTree {
    match d {
        Draft::Leaf => EventTree::leaf(),
        Draft::Floret(stage, children) => EventTree::from_floret(
            stages[*stage]
                .iter()
                .cloned()
                .zip(children.iter().map(|c| build(c, stages)))
                .collect::<Vec<_>>(),
        )
        .expect("stage labels are distinct"),
    }
}
