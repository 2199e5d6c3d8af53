//! All staged trees with a given square-free interpolating polynomial.
//!
//! For a support set `C` (all coefficients one):
//!
//! 1. `C = {1}` gives the single-vertex tree; any other singleton gives nothing.
//! 2. `C` made of at least two bare indeterminates gives a single floret.
//! 3. Otherwise each minimal prime `F` of `⟨C⟩` is a candidate root floret.
//!    `F` is dropped unless it has at least two labels, the multiples `C_x` (`x ∈ F`) are pairwise
//!    disjoint, no `C_x` is a single monomial other than `x`, and every
//!    quotient set `C_x / x` has at least one staged tree (recursively).
//! 4. Root floret `F` is combined with every choice of subtrees; choices
//!    whose florets have overlapping but unequal label sets are rejected.
//!
//! Sub-supports recur across branches, so results are memoized per
//! `Enumerator`. The product in step 4 is expanded lazily: the stage check
//! runs as each subtree is added, and a violation prunes the partial choice.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use num_traits::One;

use crate::ideal::{minimal_transversals, PrimeComponent};
use crate::poly::{Monomial, Polynomial, RealPolynomial};
use crate::tree::{Edge, EventTree, LeafWeighting, Nesting, Node};
use crate::varset::{self, bit, VarIndex, VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    NonSquareFreeInput(Monomial),
    /// A coefficient other than one: staged trees with square-free atoms
    /// have all coefficients equal to one.
    CoefficientNotOne(Monomial),
    EmptySupport,
    TooManyVariables {
        count: usize,
        limit: usize,
    },
    /// A network-polynomial monomial has no matching root-to-leaf path, or vice versa.
    UnmatchedMonomial(Monomial),
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::NonSquareFreeInput(m) => write!(f, "monomial `{m}` is not square-free"),
            EnumerateError::CoefficientNotOne(m) => {
                write!(f, "monomial `{m}` has a coefficient other than 1")
            }
            EnumerateError::EmptySupport => f.write_str("the support set is empty"),
            EnumerateError::TooManyVariables { count, limit } => {
                write!(
                    f,
                    "{count} variables exceed the supported maximum of {limit}"
                )
            }
            EnumerateError::UnmatchedMonomial(m) => {
                write!(f, "monomial `{m}` does not match any root-to-leaf path")
            }
        }
    }
}

impl core::error::Error for EnumerateError {}

/// A non-empty set of distinct square-free monomials (the support `C`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    monomials: Vec<Monomial>,
}

impl SupportSet {
    pub fn new<I: IntoIterator<Item = Monomial>>(monomials: I) -> Result<Self, EnumerateError> {
        let mut monomials: Vec<Monomial> = monomials.into_iter().collect();
        if let Some(m) = monomials.iter().find(|m| !m.is_square_free()) {
            return Err(EnumerateError::NonSquareFreeInput(m.clone()));
        }
        if monomials.is_empty() {
            return Err(EnumerateError::EmptySupport);
        }
        monomials.sort();
        monomials.dedup();
        Ok(SupportSet { monomials })
    }

    /// Support of a polynomial whose coefficients are all one.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, EnumerateError> {
        if let Some((m, _)) = p.terms().find(|(m, _)| !m.is_square_free()) {
            return Err(EnumerateError::NonSquareFreeInput(m.clone()));
        }
        if let Some((m, _)) = p.terms().find(|(_, c)| !c.is_one()) {
            return Err(EnumerateError::CoefficientNotOne(m.clone()));
        }
        SupportSet::new(p.support())
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_monomials(self.monomials.iter().cloned())
    }
}

/// The trees found for one support set, deduplicated by canonical form and
/// sorted by it.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceClass {
    source: SupportSet,
    members: Vec<(String, EventTree)>,
}

impl EquivalenceClass {
    pub fn from_trees<I: IntoIterator<Item = EventTree>>(source: SupportSet, trees: I) -> Self {
        let unique: BTreeMap<String, EventTree> =
            trees.into_iter().map(|t| (t.canonical_form(), t)).collect();
        EquivalenceClass {
            source,
            members: unique.into_iter().collect(),
        }
    }

    pub fn source(&self) -> &SupportSet {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn trees(&self) -> impl ExactSizeIterator<Item = &EventTree> + '_ {
        self.members.iter().map(|(_, t)| t)
    }

    pub fn canonical_forms(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.members.iter().map(|(c, _)| c.as_str())
    }

    /// One nested representation per tree, siblings in canonical order.
    pub fn nestings(&self) -> Vec<Nesting> {
        self.trees().map(|t| t.nesting().canonical()).collect()
    }

    pub fn contains(&self, tree: &EventTree) -> bool {
        let key = tree.canonical_form();
        self.members
            .binary_search_by(|(c, _)| c.as_str().cmp(key.as_str()))
            .is_ok()
    }
}

/// Subtree found during enumeration. Children are sorted by variable index,
/// which is also name order, so shapes are canonical by construction.
#[derive(Debug)]
struct Shape {
    edges: Vec<(usize, Arc<Shape>)>,
    /// Distinct floret label sets in this subtree.
    stages: Vec<VarSet>,
}

type Found = Arc<Vec<Arc<Shape>>>;

/// Memoizing driver for the enumeration of one support set.
#[derive(Clone)]
pub struct Enumerator {
    source: SupportSet,
    index: VarIndex,
    support: Vec<VarSet>,
    check_stages: bool,
    memo: BTreeMap<Vec<VarSet>, Found>,
}

impl Enumerator {
    pub fn new(support: &SupportSet) -> Result<Self, EnumerateError> {
        let index = VarIndex::new(support.monomials()).ok_or_else(|| {
            let mut names: Vec<_> = support.monomials().iter().flat_map(|m| m.vars()).collect();
            names.sort();
            names.dedup();
            EnumerateError::TooManyVariables {
                count: names.len(),
                limit: MAX_VARS,
            }
        })?;
        let support_bits = sorted(
            support
                .monomials()
                .iter()
                .map(|m| index.encode(m))
                .collect(),
        );
        Ok(Enumerator {
            source: support.clone(),
            index,
            support: support_bits,
            check_stages: true,
            memo: BTreeMap::new(),
        })
    }

    /// Keep assembled trees that fail the stage check (they are labeled
    /// event trees but not staged). Applies at every recursion level.
    pub fn include_unstaged(mut self, yes: bool) -> Self {
        if self.check_stages == yes {
            self.memo.clear();
        }
        self.check_stages = !yes;
        self
    }

    /// Minimal primes of the whole support, in processing order (size, then
    /// lexicographic). Empty for supports containing `1`.
    pub fn root_candidates(&self) -> Vec<PrimeComponent> {
        if self.support.contains(&0) {
            return Vec::new();
        }
        minimal_transversals(&self.support)
            .into_iter()
            .map(|f| PrimeComponent::new(self.index.decode(f)))
            .collect()
    }

    /// Trees whose root floret carries exactly the labels of `root`.
    pub fn trees_with_root(&mut self, root: &PrimeComponent) -> Vec<EventTree> {
        let Some(f) = root
            .vars()
            .iter()
            .map(|x| self.index.index_of(x).map(bit))
            .try_fold(0, |acc, b| b.map(|b| acc | b))
        else {
            return Vec::new();
        };
        let support = self.support.clone();
        self.with_root(&support, f)
            .iter()
            .map(|s| self.to_tree(s))
            .collect()
    }

    /// Number of trees, without materializing them.
    pub fn count(&mut self) -> usize {
        let support = self.support.clone();
        self.solve(support).len()
    }

    /// Call `f` on each tree in turn without keeping them. Trees are visited
    /// in discovery order; each canonical form occurs once.
    pub fn visit<F: FnMut(&EventTree)>(&mut self, mut f: F) {
        let support = self.support.clone();
        let found = self.solve(support);
        for s in found.iter() {
            f(&self.to_tree(s));
        }
    }

    pub fn run(&mut self) -> EquivalenceClass {
        let support = self.support.clone();
        let found = self.solve(support);
        let mut members: Vec<(String, EventTree)> = found
            .iter()
            .map(|s| (self.canonical(s), self.to_tree(s)))
            .collect();
        members.sort_by(|a, b| a.0.cmp(&b.0));
        members.dedup_by(|a, b| a.0 == b.0);
        EquivalenceClass {
            source: self.source.clone(),
            members,
        }
    }

    fn solve(&mut self, c: Vec<VarSet>) -> Found {
        if let Some(hit) = self.memo.get(&c) {
            return hit.clone();
        }
        let found = Arc::new(self.solve_uncached(&c));
        self.memo.insert(c, found.clone());
        found
    }

    fn solve_uncached(&mut self, c: &[VarSet]) -> Vec<Arc<Shape>> {
        if c == [0] {
            return alloc::vec![Arc::new(Shape {
                edges: Vec::new(),
                stages: Vec::new(),
            })];
        }
        if c.len() == 1 || c.contains(&0) {
            return Vec::new();
        }
        if c.iter().all(|&t| varset::size(t) == 1) {
            let leaf = Arc::new(Shape {
                edges: Vec::new(),
                stages: Vec::new(),
            });
            let floret = c.iter().fold(0, |acc, t| acc | t);
            return alloc::vec![Arc::new(Shape {
                edges: varset::bits(floret).map(|x| (x, leaf.clone())).collect(),
                stages: alloc::vec![floret],
            })];
        }
        let mut out = Vec::new();
        for f in minimal_transversals(c) {
            out.extend(self.with_root(c, f));
        }
        out
    }

    /// Trees over support `c` whose root floret is `f`.
    fn with_root(&mut self, c: &[VarSet], f: VarSet) -> Vec<Arc<Shape>> {
        // A one-edge floret is not part of any event tree.
        if varset::size(f) < 2 {
            return Vec::new();
        }
        let roots: Vec<usize> = varset::bits(f).collect();
        let multiples: Vec<Vec<VarSet>> = roots
            .iter()
            .map(|&x| c.iter().copied().filter(|t| t & bit(x) != 0).collect())
            .collect();

        // The C_x cover C, so they are pairwise disjoint iff their sizes add up.
        if multiples.iter().map(Vec::len).sum::<usize>() != c.len()
            || multiples.iter().any(|m| m.is_empty())
        {
            return Vec::new();
        }
        let mut subtrees: Vec<Found> = Vec::with_capacity(roots.len());
        for (&x, c_x) in roots.iter().zip(&multiples) {
            if c_x.len() == 1 && c_x[0] != bit(x) {
                return Vec::new();
            }
            let quotient = sorted(c_x.iter().map(|t| t & !bit(x)).collect());
            let w_x = self.solve(quotient);
            if w_x.is_empty() {
                return Vec::new();
            }
            subtrees.push(w_x);
        }

        let mut out = Vec::new();
        let mut chosen: Vec<Arc<Shape>> = Vec::with_capacity(roots.len());
        self.assemble(&roots, &subtrees, &mut chosen, alloc::vec![f], &mut out);
        out
    }

    fn assemble(
        &self,
        roots: &[usize],
        subtrees: &[Found],
        chosen: &mut Vec<Arc<Shape>>,
        stages: Vec<VarSet>,
        out: &mut Vec<Arc<Shape>>,
    ) {
        let depth = chosen.len();
        if depth == roots.len() {
            let mut stages = stages;
            stages.sort_unstable();
            out.push(Arc::new(Shape {
                edges: roots.iter().copied().zip(chosen.iter().cloned()).collect(),
                stages,
            }));
            return;
        }
        for candidate in subtrees[depth].iter() {
            let Some(merged) = merge_stages(&stages, &candidate.stages, self.check_stages) else {
                continue;
            };
            chosen.push(candidate.clone());
            self.assemble(roots, subtrees, chosen, merged, out);
            chosen.pop();
        }
    }

    fn to_tree(&self, shape: &Shape) -> EventTree {
        let mut nodes = Vec::new();
        self.push_nodes(shape, &mut nodes);
        EventTree::from_arena(nodes, 0)
    }

    fn push_nodes(&self, shape: &Shape, nodes: &mut Vec<Node>) -> usize {
        let id = nodes.len();
        nodes.push(Node::default());
        let mut edges = Vec::with_capacity(shape.edges.len());
        for (x, child) in &shape.edges {
            let child_id = self.push_nodes(child, nodes);
            edges.push(Edge {
                label: self.index.name(*x).clone(),
                child: child_id,
            });
        }
        nodes[id] = Node::with_edges(edges);
        id
    }

    fn canonical(&self, shape: &Shape) -> String {
        let mut s = String::new();
        self.write_canonical(shape, &mut s);
        s
    }

    fn write_canonical(&self, shape: &Shape, out: &mut String) {
        if shape.edges.is_empty() {
            out.push('1');
            return;
        }
        for (i, (x, child)) in shape.edges.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}", self.index.name(*x));
            if !child.edges.is_empty() {
                out.push_str("*(");
                self.write_canonical(child, out);
                out.push(')');
            }
        }
    }
}

/// Union of two stage lists, or `None` if some pair of label sets overlaps
/// without being equal (when `check` is set).
fn merge_stages(acc: &[VarSet], add: &[VarSet], check: bool) -> Option<Vec<VarSet>> {
    let mut merged = acc.to_vec();
    for &s in add {
        let mut present = false;
        for &a in acc {
            if a == s {
                present = true;
            } else if check && a & s != 0 {
                return None;
            }
        }
        if !present {
            merged.push(s);
        }
    }
    Some(merged)
}

fn sorted(mut v: Vec<VarSet>) -> Vec<VarSet> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Every staged tree whose interpolating polynomial is `Σ_{t∈C} t`.
pub fn staged_trees(c: &SupportSet) -> Result<EquivalenceClass, EnumerateError> {
    Ok(Enumerator::new(c)?.run())
}

/// Staged trees for a polynomial; its coefficients must all be one.
pub fn staged_trees_of(p: &Polynomial) -> Result<EquivalenceClass, EnumerateError> {
    staged_trees(&SupportSet::from_polynomial(p)?)
}

/// The nested representation of every tree in [`staged_trees`].
pub fn nested_representations(c: &SupportSet) -> Result<Vec<Nesting>, EnumerateError> {
    Ok(staged_trees(c)?.nestings())
}

/// Recover `g` for a tree found from the support of a network polynomial:
/// square-free atoms are distinct, so each leaf matches one monomial.
pub fn attach_weights(
    tree: &EventTree,
    network: &RealPolynomial,
) -> Result<LeafWeighting, EnumerateError> {
    let atoms = tree.atomic_monomials();
    let mut weights = Vec::with_capacity(atoms.len());
    for (leaf, m) in &atoms {
        if !network.terms().any(|(n, _)| n == m) {
            return Err(EnumerateError::UnmatchedMonomial(m.clone()));
        }
        weights.push((*leaf, network.coefficient(m)));
    }
    if let Some((m, _)) = network
        .terms()
        .find(|(m, _)| !atoms.iter().any(|(_, a)| a == *m))
    {
        return Err(EnumerateError::UnmatchedMonomial(m.clone()));
    }
    Ok(LeafWeighting::new(weights))
}
