//! Shuffle permutations, their braid lifts `T_s`, and the quantum shuffle
//! (co)products and symmetrizers built from them.
//!
//! A permutation `s` is stored in one-line form, 0-based: the letter in
//! position `i` is carried to position `s[i]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::braided::{BraidWord, BraidedSet, ElementId, Word};
use crate::combination::{PairCombination, TupleCombination, WordCombination};
use crate::error::{Error, Result};
use crate::monoid::permutations;

pub type Permutation = Vec<usize>;

pub fn inversions(s: &[usize]) -> usize {
    (0..s.len()).map(|i| (i + 1..s.len()).filter(|&j| s[i] > s[j]).count()).sum()
}

pub fn inverse(s: &[usize]) -> Permutation {
    let mut inv = vec![0; s.len()];
    for (i, &t) in s.iter().enumerate() {
        inv[t] = i;
    }
    inv
}

/// `(−1)^{|s|}`.
pub fn sign(s: &[usize]) -> BigInt {
    BigInt::from(if inversions(s).is_multiple_of(2) { 1 } else { -1 })
}

/// Canonical reduced braid word for `s`: fill target positions right to
/// left, bubbling each letter rightwards into place.
pub fn lift_permutation(s: &[usize]) -> BraidWord {
    let target = inverse(s);
    let mut current: Vec<usize> = (0..s.len()).collect();
    let mut applied = Vec::new();
    for pos in (0..s.len()).rev() {
        let mut j = current.iter().position(|&l| l == target[pos]).unwrap();
        while j < pos {
            current.swap(j, j + 1);
            applied.push(j + 1);
            j += 1;
        }
    }
    applied.reverse();
    BraidWord::new(applied)
}

/// A second reduced word for `s`, filling positions left to right and
/// bubbling letters leftwards; acts identically whenever YBE holds.
pub fn lift_permutation_alt(s: &[usize]) -> BraidWord {
    let target = inverse(s);
    let mut current: Vec<usize> = (0..s.len()).collect();
    let mut applied = Vec::new();
    for pos in 0..s.len() {
        let mut j = current.iter().position(|&l| l == target[pos]).unwrap();
        while j > pos {
            current.swap(j - 1, j);
            applied.push(j);
            j -= 1;
        }
    }
    applied.reverse();
    BraidWord::new(applied)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub permutation: Permutation,
    pub length: usize,
    pub lift: BraidWord,
    /// Lift of the inverse permutation, used by coproducts.
    pub inverse_lift: BraidWord,
}

impl Shuffle {
    fn new(permutation: Permutation) -> Self {
        Shuffle {
            length: inversions(&permutation),
            lift: lift_permutation(&permutation),
            inverse_lift: lift_permutation(&inverse(&permutation)),
            permutation,
        }
    }

    pub fn sign(&self) -> BigInt {
        BigInt::from(if self.length.is_multiple_of(2) { 1 } else { -1 })
    }
}

/// `Sh_{p_1,…,p_t}`: permutations increasing on each consecutive block.
pub fn multi_shuffle_set(parts: &[usize]) -> Vec<Shuffle> {
    let n: usize = parts.iter().sum();
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(n);
    let mut remaining = parts.to_vec();
    fn rec(labels: &mut Vec<usize>, remaining: &mut [usize], parts: &[usize], out: &mut Vec<Shuffle>) {
        if remaining.iter().all(|&r| r == 0) {
            // letters of block b occupy the positions labelled b, in order
            let mut starts: Vec<usize> = parts
                .iter()
                .scan(0, |acc, &p| {
                    let s = *acc;
                    *acc += p;
                    Some(s)
                })
                .collect();
            let mut s = vec![0; labels.len()];
            for (pos, &b) in labels.iter().enumerate() {
                s[starts[b]] = pos;
                starts[b] += 1;
            }
            out.push(Shuffle::new(s));
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                labels.push(b);
                rec(labels, remaining, parts, out);
                labels.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut labels, &mut remaining, parts, &mut out);
    out
}

pub fn shuffle_set(p: usize, q: usize) -> Vec<Shuffle> {
    multi_shuffle_set(&[p, q])
}

fn act(sigma: &BraidedSet, w: &[ElementId], b: &BraidWord) -> Word {
    let mut out = w.to_vec();
    for &i in b.0.iter().rev() {
        sigma.act(&mut out, i);
    }
    out
}

fn weight(signed: bool, s: &Shuffle) -> BigInt {
    if signed {
        s.sign()
    } else {
        BigInt::from(1)
    }
}

/// `v ⧢_{±σ} w = Σ_{s ∈ Sh_{p,q}} (±1)^{|s|} T_s(vw)`.
pub fn shuffle_product(sigma: &BraidedSet, signed: bool, v: &[ElementId], w: &[ElementId]) -> WordCombination {
    let vw: Word = v.iter().chain(w).copied().collect();
    shuffle_set(v.len(), w.len())
        .iter()
        .map(|s| (act(sigma, &vw, &s.lift), weight(signed, s)))
        .collect()
}

/// Bilinear extension of [`shuffle_product`].
pub fn shuffle_product_linear(sigma: &BraidedSet, signed: bool, a: &WordCombination, b: &WordCombination) -> WordCombination {
    let mut out = WordCombination::new();
    for (v, cv) in a.iter() {
        for (w, cw) in b.iter() {
            out.add_scaled(&shuffle_product(sigma, signed, v, w), &(cv * cw));
        }
    }
    out
}

/// `⧢^{p_1,…,p_t}(w) = Σ_s (±1)^{|s|} T_{s⁻¹}(w)`, cut into blocks.
pub fn multi_shuffle_coproduct(
    sigma: &BraidedSet,
    signed: bool,
    w: &[ElementId],
    parts: &[usize],
) -> Result<TupleCombination> {
    if parts.iter().sum::<usize>() != w.len() {
        return Err(Error::Dimension("block sizes must add up to the word length".into()));
    }
    Ok(multi_shuffle_set(parts)
        .iter()
        .map(|s| {
            let u = act(sigma, w, &s.inverse_lift);
            let mut blocks = Vec::with_capacity(parts.len());
            let mut start = 0;
            for &p in parts {
                blocks.push(u[start..start + p].to_vec());
                start += p;
            }
            (blocks, weight(signed, s))
        })
        .collect())
}

pub fn shuffle_coproduct(sigma: &BraidedSet, signed: bool, w: &[ElementId], p: usize, q: usize) -> Result<PairCombination> {
    Ok(multi_shuffle_coproduct(sigma, signed, w, &[p, q])?
        .map_keys(|blocks| (blocks[0].clone(), blocks[1].clone())))
}

/// `QS_k(w) = Σ_{s ∈ S_k} (−1)^{|s|} T_s(w)`; each letter of a result word
/// is one tuple component.
pub fn quantum_symmetrizer(sigma: &BraidedSet, w: &[ElementId]) -> WordCombination {
    permutations(w.len()).iter().map(|s| (act(sigma, w, &lift_permutation(s)), sign(s))).collect()
}

/// `QS̄_k`: [`quantum_symmetrizer`] with every tuple containing the
/// pseudo-unit (an empty component after reduction) dropped.
pub fn reduced_quantum_symmetrizer(sigma: &BraidedSet, e: ElementId, w: &[ElementId]) -> WordCombination {
    if w.contains(&e) {
        // every T_s(w) still contains e
        return WordCombination::new();
    }
    quantum_symmetrizer(sigma, w).filter(|u| !u.contains(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::word;
    use crate::catalog::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shuffle_counts() {
        let s11 = shuffle_set(1, 1);
        assert_eq!(s11.len(), 2);
        assert_eq!(s11.iter().map(|s| s.length).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(shuffle_set(2, 1).len(), 3);
        for p in 0..=4 {
            for q in 0..=4 {
                assert_eq!(shuffle_set(p, q).len(), binomial(p + q, p));
            }
        }
        assert_eq!(multi_shuffle_set(&[1, 1, 1]).len(), 6);
    }

    #[test]
    fn lifts() {
        assert!(lift_permutation(&[0, 1, 2]).is_empty());
        assert_eq!(lift_permutation(&[1, 0]), BraidWord::new(vec![1]));
        let longest = lift_permutation(&[2, 1, 0]);
        assert_eq!(longest.len(), 3);
        assert_eq!(longest, BraidWord::new(vec![1, 2, 1]));
        for s in permutations(4) {
            assert_eq!(lift_permutation(&s).len(), inversions(&s));
            assert_eq!(lift_permutation_alt(&s).len(), inversions(&s));
        }
    }

    #[test]
    fn lift_moves_letters() {
        // with the flip braiding T_s is the plain permutation of positions
        let flip = flip_braiding(4);
        let w = word(&[0, 1, 2, 3]);
        for s in permutations(4) {
            let u = flip.apply_braid_word(&w, &lift_permutation(&s)).unwrap();
            for i in 0..4 {
                assert_eq!(u[s[i]], w[i]);
            }
            assert_eq!(u, flip.apply_braid_word(&w, &lift_permutation_alt(&s)).unwrap());
        }
    }

    #[test]
    fn two_one_product() {
        // xy ⧢ z = xyz − x z' y' + z'' x' y'
        let s = size2_family("left-succ").unwrap();
        let (x, y, z) = (ElementId(0), ElementId(1), ElementId(1));
        let (z1, y1) = s.sigma(y, z);
        let (z2, x1) = s.sigma(x, z1);
        let mut expected = WordCombination::single(vec![x, y, z]);
        expected.add_term(vec![x, z1, y1], BigInt::from(-1));
        expected.add_term(vec![z2, x1, y1], BigInt::from(1));
        assert_eq!(shuffle_product(&s, true, &[x, y], &[z]), expected);
    }

    #[test]
    fn small_cases() {
        let id = identity_braiding(2);
        assert!(shuffle_product(&id, true, &[ElementId(0)], &[ElementId(0)]).is_zero());
        assert_eq!(shuffle_product(&id, true, &[], &word(&[1, 0])), WordCombination::single(word(&[1, 0])));
        let m = minmax_braiding(2);
        let c = shuffle_coproduct(&m, true, &word(&[1, 0]), 1, 1).unwrap();
        let mut expected = PairCombination::single((word(&[1]), word(&[0])));
        expected.add_term((word(&[0]), word(&[1])), BigInt::from(-1));
        assert_eq!(c, expected);
        let c = shuffle_coproduct(&m, true, &word(&[1, 0]), 2, 0).unwrap();
        assert_eq!(c, PairCombination::single((word(&[1, 0]), word(&[]))));
        assert!(shuffle_coproduct(&m, true, &word(&[1, 0]), 2, 1).is_err());
    }

    #[test]
    fn symmetrizer() {
        // σ = Id makes every T_s trivial, so the signs cancel
        assert!(quantum_symmetrizer(&identity_braiding(3), &word(&[0, 1, 2])).is_zero());
        let flip = flip_braiding(3);
        let qs = quantum_symmetrizer(&flip, &word(&[0, 1, 2]));
        assert_eq!(qs.len(), 6);
        for s in permutations(3) {
            let w: Word = (0..3).map(|i| ElementId(inverse(&s)[i] as u32)).collect();
            assert_eq!(qs.coefficient(&w), sign(&s));
        }
        // normal pairs are killed
        let m = minmax_braiding(2);
        assert!(quantum_symmetrizer(&m, &word(&[0, 1])).is_zero());
        assert_eq!(quantum_symmetrizer(&m, &word(&[1])), WordCombination::single(word(&[1])));
        // QS_k equals the iterated signed shuffle of letters
        let s = size2_family("max-left").unwrap();
        for w in [word(&[1, 0, 1]), word(&[0, 1, 1]), word(&[1, 1, 0])] {
            let mut it = WordCombination::single(Vec::new());
            for &x in &w {
                it = shuffle_product_linear(&s, true, &it, &WordCombination::single(vec![x]));
            }
            assert_eq!(it, quantum_symmetrizer(&s, &w));
        }
    }

    #[test]
    fn reduced_symmetrizer_on_c2() {
        let f = associativity_braiding(&crate::monoid::FiniteMonoid::cyclic(2));
        let t = f.element(1).unwrap();
        let e = f.unit();
        let r = reduced_quantum_symmetrizer(&f.set, e, &[t, t]);
        assert_eq!(r, WordCombination::single(vec![t, t]));
        assert!(reduced_quantum_symmetrizer(&f.set, e, &[t, e]).is_zero());
    }
}
