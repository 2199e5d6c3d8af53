//! Labeled event trees and staged trees.
//!
//! An [`EventTree`] is an arena of nodes; every node has either no outgoing
//! edges or at least two, and the labels within one floret are distinct.
//! Stages are never stored: they are derived from floret label sets, so a
//! tree cannot carry stale stage metadata. Sibling order is irrelevant for
//! equality, which goes through [`EventTree::canonical_form`].

mod nesting;
#[cfg(feature = "random")]
pub mod random;
mod transform;

pub use nesting::{Nesting, NestingError};
pub use transform::FreshLabels;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{Indeterminate, Monomial, Polynomial, RealPolynomial};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub enum TreeError {
    /// A floret with exactly one edge.
    SingleEdgeFloret,
    /// Two edges of one floret share a label.
    DuplicateLabel(Indeterminate),
    NotStaged,
    /// Leaf weights do not cover exactly the leaves of the tree.
    DomainMismatch {
        expected: usize,
        found: usize,
    },
    MissingValue(Indeterminate),
    InvalidNesting(NestingError),
    /// The operation needs at least one edge.
    DegenerateTree,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::SingleEdgeFloret => f.write_str("a floret must have 0 or at least 2 edges"),
            TreeError::DuplicateLabel(x) => write!(f, "label `{x}` repeats within a floret"),
            TreeError::NotStaged => f.write_str("the tree is not staged"),
            TreeError::DomainMismatch { expected, found } => write!(
                f,
                "leaf weighting has {found} entries but the tree has {expected} leaves"
            ),
            TreeError::MissingValue(x) => write!(f, "no value for label `{x}`"),
            TreeError::InvalidNesting(e) => write!(f, "invalid nested representation: {e}"),
            TreeError::DegenerateTree => f.write_str("the tree has no edges"),
        }
    }
}

impl core::error::Error for TreeError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: Indeterminate,
    pub child: NodeId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Node {
    edges: Vec<Edge>,
}

impl Node {
    pub(crate) fn with_edges(edges: Vec<Edge>) -> Self {
        Node { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_leaf(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct EventTree {
    nodes: Vec<Node>,
    root: NodeId,
}

/// Vertices sharing one floret label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub label_set: Vec<Indeterminate>,
    pub members: Vec<NodeId>,
}

/// Real weights on root-to-leaf paths, keyed by leaf node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LeafWeighting {
    weights: BTreeMap<NodeId, f64>,
}

impl LeafWeighting {
    pub fn new<I: IntoIterator<Item = (NodeId, f64)>>(weights: I) -> Self {
        LeafWeighting {
            weights: weights.into_iter().collect(),
        }
    }

    /// Weights listed in [`EventTree::leaves`] order.
    pub fn from_leaf_order(tree: &EventTree, weights: &[f64]) -> Result<Self, TreeError> {
        let leaves = tree.leaves();
        if leaves.len() != weights.len() {
            return Err(TreeError::DomainMismatch {
                expected: leaves.len(),
                found: weights.len(),
            });
        }
        Ok(LeafWeighting::new(
            leaves.into_iter().zip(weights.iter().copied()),
        ))
    }

    /// Indicator function of a set of leaves.
    pub fn indicator(tree: &EventTree, event: &BTreeSet<NodeId>) -> Self {
        LeafWeighting::new(
            tree.leaves()
                .into_iter()
                .map(|l| (l, if event.contains(&l) { 1.0 } else { 0.0 })),
        )
    }

    pub fn get(&self, leaf: NodeId) -> Option<f64> {
        self.weights.get(&leaf).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Result of evaluating labels as numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Product of label values along each root-to-leaf path, by leaf.
    pub atoms: Vec<(NodeId, f64)>,
    /// Sum of label values of each floret, by non-leaf node.
    pub floret_sums: Vec<(NodeId, f64)>,
}

impl Evaluation {
    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|(_, p)| p).sum()
    }
}

impl EventTree {
    /// The single-vertex tree.
    pub fn leaf() -> Self {
        EventTree {
            nodes: alloc::vec![Node::default()],
            root: 0,
        }
    }

    /// Caller guarantees a well-formed arena reachable from `root`.
    pub(crate) fn from_arena(nodes: Vec<Node>, root: NodeId) -> Self {
        EventTree { nodes, root }
    }

    /// A new root whose floret carries the given labels over the given subtrees.
    pub fn from_floret<I>(children: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (Indeterminate, EventTree)>,
    {
        let children: Vec<(Indeterminate, EventTree)> = children.into_iter().collect();
        if children.len() == 1 {
            return Err(TreeError::SingleEdgeFloret);
        }
        let mut labels: Vec<&Indeterminate> = children.iter().map(|(x, _)| x).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateLabel(w[0].clone()));
        }
        let total = 1 + children.iter().map(|(_, t)| t.nodes.len()).sum::<usize>();
        let mut nodes = Vec::with_capacity(total);
        nodes.push(Node::default());
        let mut root_edges = Vec::with_capacity(children.len());
        for (label, sub) in children {
            let offset = nodes.len();
            root_edges.push(Edge {
                label,
                child: offset + sub.root,
            });
            nodes.extend(sub.nodes.into_iter().map(|mut n| {
                for e in &mut n.edges {
                    e.child += offset;
                }
                n
            }));
        }
        nodes[0].edges = root_edges;
        Ok(EventTree { nodes, root: 0 })
    }

    /// The tree described by a nested representation.
    pub fn from_nested(nesting: &Nesting) -> Result<Self, TreeError> {
        nesting.validate().map_err(TreeError::InvalidNesting)?;
        Ok(Self::build_nested(nesting))
    }

    fn build_nested(nesting: &Nesting) -> Self {
        match nesting {
            Nesting::Unit => EventTree::leaf(),
            Nesting::Sum(items) => EventTree::from_floret(
                items
                    .iter()
                    .map(|(x, f)| (x.clone(), Self::build_nested(f))),
            )
            .expect("validated nesting"),
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_single_vertex(&self) -> bool {
        self.nodes[self.root].is_leaf()
    }

    /// Node ids in depth-first pre-order following stored edge order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = alloc::vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.nodes[v].edges.iter().rev().map(|e| e.child));
        }
        order
    }

    /// Leaves in depth-first order.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.preorder()
            .into_iter()
            .filter(|&v| self.nodes[v].is_leaf())
            .collect()
    }

    /// Sorted floret labels of a node; empty for leaves.
    pub fn floret_labels(&self, id: NodeId) -> Vec<Indeterminate> {
        let mut labels: Vec<Indeterminate> = self.nodes[id]
            .edges
            .iter()
            .map(|e| e.label.clone())
            .collect();
        labels.sort();
        labels
    }

    /// All distinct edge labels.
    pub fn labels(&self) -> BTreeSet<Indeterminate> {
        self.nodes
            .iter()
            .flat_map(|n| n.edges.iter().map(|e| e.label.clone()))
            .collect()
    }

    /// The subtree rooted at `id`, as a tree of its own.
    pub fn subtree(&self, id: NodeId) -> EventTree {
        let node = &self.nodes[id];
        if node.is_leaf() {
            return EventTree::leaf();
        }
        EventTree::from_floret(
            node.edges
                .iter()
                .map(|e| (e.label.clone(), self.subtree(e.child))),
        )
        .expect("subtree of a valid tree")
    }

    /// Atomic monomials by leaf, obtained by walking every root-to-leaf path.
    pub fn atomic_monomials(&self) -> Vec<(NodeId, Monomial)> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![(self.root, Monomial::one())];
        while let Some((v, m)) = stack.pop() {
            let node = &self.nodes[v];
            if node.is_leaf() {
                out.push((v, m));
            } else {
                for e in node.edges.iter().rev() {
                    stack.push((e.child, m.mul_var_general(&e.label)));
                }
            }
        }
        out
    }

    /// Interpolating polynomial, via `c(T_v) = Σ θ(v,w)·c(T_w)` with `c = 1` at leaves.
    pub fn interpolating_polynomial(&self) -> Polynomial {
        self.polynomial_at(self.root)
    }

    fn polynomial_at(&self, v: NodeId) -> Polynomial {
        let node = &self.nodes[v];
        if node.is_leaf() {
            return Polynomial::one();
        }
        node.edges.iter().fold(Polynomial::zero(), |acc, e| {
            acc.add(&self.polynomial_at(e.child).multiply_label_general(&e.label))
        })
    }

    /// `Σ g(λ)·π(λ)` over root-to-leaf paths.
    pub fn network_polynomial(&self, g: &LeafWeighting) -> Result<RealPolynomial, TreeError> {
        let atoms = self.atomic_monomials();
        if g.len() != atoms.len() || atoms.iter().any(|(l, _)| g.get(*l).is_none()) {
            return Err(TreeError::DomainMismatch {
                expected: atoms.len(),
                found: g.len(),
            });
        }
        let mut p = RealPolynomial::default();
        for (leaf, m) in atoms {
            p.add_term(m, g.get(leaf).unwrap_or_default());
        }
        Ok(p)
    }

    /// Multiply label values along paths. Floret sums are reported, not enforced.
    pub fn evaluate(&self, values: &BTreeMap<Indeterminate, f64>) -> Result<Evaluation, TreeError> {
        let mut atoms = Vec::new();
        let mut floret_sums = Vec::new();
        let mut stack = alloc::vec![(self.root, 1.0f64)];
        while let Some((v, p)) = stack.pop() {
            let node = &self.nodes[v];
            if node.is_leaf() {
                atoms.push((v, p));
                continue;
            }
            let mut sum = 0.0;
            for e in node.edges.iter().rev() {
                let value = *values
                    .get(&e.label)
                    .ok_or_else(|| TreeError::MissingValue(e.label.clone()))?;
                sum += value;
                stack.push((e.child, p * value));
            }
            floret_sums.push((v, sum));
        }
        floret_sums.sort_by_key(|(v, _)| *v);
        Ok(Evaluation { atoms, floret_sums })
    }

    /// Every two florets have equal or disjoint label sets.
    pub fn is_staged(&self) -> bool {
        let mut owner: BTreeMap<Indeterminate, Vec<Indeterminate>> = BTreeMap::new();
        for v in 0..self.nodes.len() {
            if self.nodes[v].is_leaf() {
                continue;
            }
            let set = self.floret_labels(v);
            for x in &set {
                match owner.get(x) {
                    Some(existing) if *existing != set => return false,
                    Some(_) => {}
                    None => {
                        owner.insert(x.clone(), set.clone());
                    }
                }
            }
        }
        true
    }

    /// Non-leaf vertices grouped by floret label set, sorted by label set.
    pub fn stages(&self) -> Result<Vec<Stage>, TreeError> {
        if !self.is_staged() {
            return Err(TreeError::NotStaged);
        }
        let mut by_set: BTreeMap<Vec<Indeterminate>, Vec<NodeId>> = BTreeMap::new();
        for v in self.preorder() {
            if !self.nodes[v].is_leaf() {
                by_set.entry(self.floret_labels(v)).or_default().push(v);
            }
        }
        Ok(by_set
            .into_iter()
            .map(|(label_set, members)| Stage { label_set, members })
            .collect())
    }

    /// All edge labels are pairwise distinct.
    pub fn is_saturated(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.nodes
            .iter()
            .flat_map(|n| n.edges.iter())
            .all(|e| seen.insert(&e.label))
    }

    /// The nested representation read off the tree, in stored edge order.
    pub fn nesting(&self) -> Nesting {
        self.nesting_at(self.root)
    }

    fn nesting_at(&self, v: NodeId) -> Nesting {
        let node = &self.nodes[v];
        if node.is_leaf() {
            Nesting::Unit
        } else {
            Nesting::Sum(
                node.edges
                    .iter()
                    .map(|e| (e.label.clone(), self.nesting_at(e.child)))
                    .collect(),
            )
        }
    }

    /// Serialization invariant under sibling reordering: the nesting with every
    /// floret sorted by label.
    pub fn canonical_form(&self) -> String {
        self.nesting().canonical().to_string()
    }
}

/// Trees are equal when they differ at most by sibling order.
impl PartialEq for EventTree {
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.nesting().canonical() == other.nesting().canonical()
    }
}

impl Eq for EventTree {}

impl fmt::Display for EventTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.nesting(), f)
    }
}

impl core::str::FromStr for EventTree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = Nesting::parse(s).map_err(|e| e.to_string())?;
        EventTree::from_nested(&n).map_err(|e| e.to_string())
    }
}
