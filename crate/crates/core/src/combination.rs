//! Finitely supported integer combinations, kept canonical (sorted, no zero terms).

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::braided::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

/// Element of `ℤ⟨X⟩`.
pub type WordCombination = Combination<Word>;
/// Element of `ℤ⟨X⟩^{⊗2}`, e.g. a coproduct value.
pub type PairCombination = Combination<(Word, Word)>;
/// Combination of tuples of words, e.g. quantum symmetrizer values.
pub type TupleCombination = Combination<Vec<Word>>;

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: Ord> Combination<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K) -> Self {
        Self::term(key, BigInt::from(1))
    }

    pub fn term(key: K, c: BigInt) -> Self {
        let mut out = Self::new();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigInt)
    where
        K: Clone,
    {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn coefficient(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigInt) -> Self
    where
        K: Clone,
    {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    /// Applies `f` to every key, merging collisions.
    pub fn map_keys<L: Ord>(&self, mut f: impl FnMut(&K) -> L) -> Combination<L> {
        let mut out = Combination::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Linear extension of `f`, where each key maps to a combination.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Drops the keys failing `keep`.
    pub fn filter(mut self, mut keep: impl FnMut(&K) -> bool) -> Self {
        self.terms.retain(|k, _| keep(k));
        self
    }
}

impl<K: Ord> FromIterator<(K, BigInt)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for Combination<K> {
    type Item = (K, BigInt);
    type IntoIter = btree_map::IntoIter<K, BigInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> Add for &Combination<K> {
    type Output = Combination<K>;

    fn add(self, rhs: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::from(1));
        out
    }
}

impl<K: Ord + Clone> Sub for &Combination<K> {
    type Output = Combination<K>;

    fn sub(self, rhs: Self) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::from(-1));
        out
    }
}

impl<K: Ord + Clone> Neg for &Combination<K> {
    type Output = Combination<K>;

    fn neg(self) -> Combination<K> {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::braided::word;

    #[test]
    fn cancellation() {
        let mut c = WordCombination::single(word(&[0, 1]));
        c.add_term(word(&[0, 1]), BigInt::from(-1));
        assert!(c.is_zero());
        let a: WordCombination = [(word(&[1]), BigInt::from(2)), (word(&[0]), BigInt::from(3))].into_iter().collect();
        let keys: Vec<_> = a.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys, vec![word(&[0]), word(&[1])]);
        assert!((&a - &a).is_zero());
        assert_eq!(a.map_keys(|_| 0u8).coefficient(&0), BigInt::from(5));
    }
}
