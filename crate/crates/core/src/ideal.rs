//! Square-free monomial ideals and their minimal primes.
//!
//! The minimal primes of a square-free monomial ideal are generated by the
//! minimal transversals (minimal hitting sets) of the hypergraph whose edges
//! are the generators' supports. They are computed with Berge's incremental
//! algorithm: keep the minimal transversals of the edges seen so far, add
//! one edge at a time (smallest first) and re-minimize.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{Indeterminate, Monomial};
use crate::varset::{self, VarIndex, VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    /// No generators: the zero ideal has no minimal primes.
    EmptyBasis,
    /// `1` is a generator.
    UnitIdeal,
    TooManyVariables {
        count: usize,
        limit: usize,
    },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::EmptyBasis => f.write_str("the ideal has no generators"),
            IdealError::UnitIdeal => f.write_str("the ideal contains 1"),
            IdealError::TooManyVariables { count, limit } => {
                write!(
                    f,
                    "{count} variables exceed the supported maximum of {limit}"
                )
            }
        }
    }
}

impl core::error::Error for IdealError {}

/// Minimal generating set of a monomial ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    generators: Vec<Monomial>,
}

impl IdealBasis {
    /// Drop duplicates and every generator that is a proper multiple of another.
    pub fn interreduce<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        // Sorted by degree, so any divisor of `m` precedes it.
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        IdealBasis { generators: kept }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn variables(&self) -> Vec<Indeterminate> {
        let mut vars: Vec<Indeterminate> = self
            .generators
            .iter()
            .flat_map(|m| m.vars().cloned())
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn encoded(&self) -> Result<(VarIndex, Vec<VarSet>), IdealError> {
        if self.generators.is_empty() {
            return Err(IdealError::EmptyBasis);
        }
        if self.is_unit() {
            return Err(IdealError::UnitIdeal);
        }
        let index =
            VarIndex::new(&self.generators).ok_or_else(|| IdealError::TooManyVariables {
                count: self.variables().len(),
                limit: MAX_VARS,
            })?;
        let edges = self.generators.iter().map(|m| index.encode(m)).collect();
        Ok((index, edges))
    }
}

/// A minimal prime, given by its generating indeterminates (ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeComponent {
    vars: Vec<Indeterminate>,
}

impl PrimeComponent {
    pub fn new<I: IntoIterator<Item = Indeterminate>>(vars: I) -> Self {
        let mut vars: Vec<Indeterminate> = vars.into_iter().collect();
        vars.sort();
        vars.dedup();
        PrimeComponent { vars }
    }

    pub fn vars(&self) -> &[Indeterminate] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains(&self, x: &Indeterminate) -> bool {
        self.vars.binary_search(x).is_ok()
    }

    /// Whether some generator of this component divides `m`.
    pub fn covers(&self, m: &Monomial) -> bool {
        m.vars().any(|v| self.contains(v))
    }
}

/// Size first, then lexicographic on the sorted variable list.
impl Ord for PrimeComponent {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.vars
            .len()
            .cmp(&other.vars.len())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for PrimeComponent {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// All minimal primes of the ideal, sorted by size then lexicographically.
///
/// Only the support of each generator matters, so non-square-free generators
/// are accepted and read through their radical.
pub fn minimal_primes(basis: &IdealBasis) -> Result<Vec<PrimeComponent>, IdealError> {
    let (index, edges) = basis.encoded()?;
    Ok(minimal_transversals(&edges)
        .into_iter()
        .map(|t| PrimeComponent {
            vars: index.decode(t),
        })
        .collect())
}

/// Reference implementation: test every subset of the variables.
///
/// Exponential in the number of variables and limited to 24 of them.
pub fn minimal_primes_brute_force(basis: &IdealBasis) -> Result<Vec<PrimeComponent>, IdealError> {
    const LIMIT: usize = 24;
    let (index, edges) = basis.encoded()?;
    let d = index.len();
    if d > LIMIT {
        return Err(IdealError::TooManyVariables {
            count: d,
            limit: LIMIT,
        });
    }
    let covers = |s: u32| edges.iter().all(|&e| (e as u32) & s != 0);
    let mut found = Vec::new();
    for s in 0u32..(1u32 << d) {
        if covers(s) && varset::bits(s as VarSet).all(|i| !covers(s & !(1 << i))) {
            found.push(PrimeComponent {
                vars: index.decode(s as VarSet),
            });
        }
    }
    found.sort();
    Ok(found)
}

/// Minimal transversals of a hypergraph, sorted by size then lexicographically.
///
/// An empty edge set has the single transversal `∅`; an empty edge has none.
pub(crate) fn minimal_transversals(edges: &[VarSet]) -> Vec<VarSet> {
    let mut edges: Vec<VarSet> = edges.to_vec();
    edges.sort_by(|a, b| varset::cmp_size_lex(*a, *b));
    edges.dedup();

    let mut transversals: Vec<VarSet> = alloc::vec![0];
    for &edge in &edges {
        let mut next: Vec<VarSet> = Vec::with_capacity(transversals.len());
        let mut extended: Vec<VarSet> = Vec::new();
        for &t in &transversals {
            if t & edge != 0 {
                next.push(t);
            } else {
                extended.extend(varset::bits(edge).map(|v| t | varset::bit(v)));
            }
        }
        // Transversals already hitting `edge` stay minimal; an extension is
        // kept only if it contains none of them and no smaller extension.
        extended.sort_by(|a, b| varset::cmp_size_lex(*a, *b));
        extended.dedup();
        let hitting = next.len();
        for t in extended {
            if !next.iter().any(|&s| varset::is_subset(s, t)) {
                next.push(t);
            }
        }
        debug_assert!(next[..hitting].iter().all(|&s| s & edge != 0));
        transversals = next;
    }
    transversals.sort_by(|a, b| varset::cmp_size_lex(*a, *b));
    transversals
}

impl fmt::Display for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, m) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&m.to_string())?;
        }
        f.write_str(">")
    }
}
