//! Binary (maximal) and single-floret (minimal) representations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Edge, EventTree, NodeId, TreeError};
use crate::poly::Indeterminate;

/// Generator of labels `prefix1`, `prefix2`, ... skipping labels already in use.
#[derive(Debug, Clone)]
pub struct FreshLabels {
    prefix: String,
    counter: usize,
    taken: BTreeSet<Indeterminate>,
}

impl FreshLabels {
    /// `prefix` must itself be a valid identifier.
    pub fn new(prefix: &str, avoid: &EventTree) -> Result<Self, crate::poly::PolyError> {
        Indeterminate::new(prefix)?;
        Ok(FreshLabels {
            prefix: prefix.into(),
            counter: 0,
            taken: avoid.labels(),
        })
    }

    pub fn avoid(&mut self, label: Indeterminate) {
        self.taken.insert(label);
    }

    pub fn next_label(&mut self) -> Indeterminate {
        loop {
            self.counter += 1;
            let candidate = Indeterminate::new(&format!("{}{}", self.prefix, self.counter))
                .expect("prefix is an identifier");
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

impl EventTree {
    /// Split every floret with `k > 2` edges into a left-to-right cascade of
    /// `k - 1` binary florets with fresh labels. Leaf order is preserved.
    pub fn binarize(&self, fresh: &mut FreshLabels) -> EventTree {
        self.binarize_at(self.root, fresh)
    }

    fn binarize_at(&self, v: NodeId, fresh: &mut FreshLabels) -> EventTree {
        let edges = self.node(v).edges();
        match edges.len() {
            0 => EventTree::leaf(),
            2 => EventTree::from_floret(
                edges
                    .iter()
                    .map(|e| (e.label.clone(), self.binarize_at(e.child, fresh)))
                    .collect::<Vec<_>>(),
            )
            .expect("binary floret"),
            _ => self.cascade(edges, fresh),
        }
    }

    /// Binary cascade over `edges` (at least two): the first `k - 1` edges
    /// hang below the left branch, the last one below the right.
    fn cascade(&self, edges: &[Edge], fresh: &mut FreshLabels) -> EventTree {
        let (last, init) = edges.split_last().expect("non-empty floret");
        let left_label = fresh.next_label();
        let right_label = fresh.next_label();
        let left = if init.len() == 1 {
            self.binarize_at(init[0].child, fresh)
        } else {
            self.cascade(init, fresh)
        };
        let right = self.binarize_at(last.child, fresh);
        EventTree::from_floret([(left_label, left), (right_label, right)]).expect("fresh labels")
    }

    /// A single floret with one fresh label per root-to-leaf path.
    pub fn minimal_representation(&self, fresh: &mut FreshLabels) -> Result<EventTree, TreeError> {
        if self.is_single_vertex() {
            return Err(TreeError::DegenerateTree);
        }
        let n = self.leaves().len();
        EventTree::from_floret((0..n).map(|_| (fresh.next_label(), EventTree::leaf())))
    }
}
