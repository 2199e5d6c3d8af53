//! Dense bitset encoding of square-free monomials over a local variable index.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::{Indeterminate, Monomial};

pub(crate) type VarSet = u128;

pub(crate) const MAX_VARS: usize = 128;

/// Sorted list of the variables in play; a variable's index is its rank, so
/// index order agrees with name order.
#[derive(Clone, Debug)]
pub(crate) struct VarIndex {
    names: Vec<Indeterminate>,
}

impl VarIndex {
    /// `None` if more than [`MAX_VARS`] distinct variables occur.
    pub(crate) fn new<'a, I>(monomials: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Monomial>,
    {
        let mut names: Vec<Indeterminate> = monomials
            .into_iter()
            .flat_map(|m| m.vars().cloned())
            .collect();
        names.sort();
        names.dedup();
        (names.len() <= MAX_VARS).then_some(VarIndex { names })
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    pub(crate) fn name(&self, i: usize) -> &Indeterminate {
        &self.names[i]
    }

    pub(crate) fn index_of(&self, x: &Indeterminate) -> Option<usize> {
        self.names.binary_search(x).ok()
    }

    /// Support of `m` as a bitset. Variables outside the index are ignored.
    pub(crate) fn encode(&self, m: &Monomial) -> VarSet {
        m.vars()
            .filter_map(|v| self.index_of(v))
            .fold(0, |acc, i| acc | bit(i))
    }

    pub(crate) fn decode(&self, s: VarSet) -> Vec<Indeterminate> {
        bits(s).map(|i| self.names[i].clone()).collect()
    }
}

#[inline]
pub(crate) fn bit(i: usize) -> VarSet {
    1u128 << i
}

#[inline]
pub(crate) fn size(s: VarSet) -> u32 {
    s.count_ones()
}

/// Indices of the set bits, ascending.
/// Whether every element of `a` is in `b`.
pub(crate) fn is_subset(a: VarSet, b: VarSet) -> bool {
    a & !b == 0
}

pub(crate) fn bits(mut s: VarSet) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

/// Lexicographic comparison of the ascending index sequences.
pub(crate) fn cmp_lex(a: VarSet, b: VarSet) -> Ordering {
    let mut ia = bits(a);
    let mut ib = bits(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// Size first, then lexicographic.
pub(crate) fn cmp_size_lex(a: VarSet, b: VarSet) -> Ordering {
    size(a).cmp(&size(b)).then_with(|| cmp_lex(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_iteration_and_order() {
        let s = bit(0) | bit(5) | bit(127);
        assert_eq!(bits(s).collect::<Vec<_>>(), [0, 5, 127]);
        assert_eq!(cmp_lex(bit(0) | bit(5), bit(1)), Ordering::Less);
        assert_eq!(cmp_size_lex(bit(0) | bit(5), bit(1)), Ordering::Greater);
        assert_eq!(cmp_lex(bit(0), bit(0) | bit(1)), Ordering::Less);
    }
}
