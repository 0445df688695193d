//! Hochschild side of the comparison: the reduced structure monoid of a
//! PUIBS, normalized bar complexes of finite monoids, the quantum
//! symmetrizer as a chain map into them, and the double complex of a
//! factorizable monoid.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bimodule::{Bimodule, SparseVec};
use crate::braided::{BraidedSet, ElementId, Word};
use crate::brcomplex::{critical_basis, critical_complex, index_word, word_label};
use crate::catalog::Factorization;
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{induced_map_on_homology, AbelianGroup, ChainComplex, ChainMap, IntegerMatrix, Orientation};
use crate::monoid::FiniteMonoid;
use crate::products::{Coefficients, Cochain};
use crate::shuffle::quantum_symmetrizer;

/// The reduced structure monoid `M̄(X,σ)` of a PUIBS, as a table on
/// `e`-free normal words.
#[derive(Debug, Clone)]
pub struct ReducedMonoid {
    pub monoid: FiniteMonoid,
    /// Normal word of each element; the unit `ε` has index 0.
    pub words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    /// `φ(x)`: the element represented by each letter (`e ↦ ε`).
    pub letters: Vec<usize>,
}

impl ReducedMonoid {
    pub fn index_of(&self, w: &[ElementId]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }
}

/// Breadth-first closure of the letters under `⊛` (reduced), failing once
/// more than `bound` elements appear.
pub fn enumerate_reduced_monoid(sigma: &BraidedSet, e: ElementId, bound: usize) -> Result<ReducedMonoid> {
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    index.insert(Vec::new(), 0);
    let gens: Vec<Word> = sigma.elements().filter(|&x| x != e).map(|x| vec![x]).collect();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            let w = sigma.reduced_star_product(e, &words[a], g)?;
            if !index.contains_key(&w) {
                if words.len() == bound {
                    return Err(Error::MonoidBound(bound));
                }
                index.insert(w.clone(), words.len());
                queue.push_back(words.len());
                words.push(w);
            }
        }
    }
    let n = words.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &words {
        for b in &words {
            let w = sigma.reduced_star_product(e, a, b)?;
            table.push(*index.get(&w).ok_or_else(|| Error::MonoidAxiom(format!("{} not closed", word_label(&w))))?);
        }
    }
    let monoid = FiniteMonoid::new(n, 0, table)?;
    let letters = sigma.elements().map(|x| if x == e { 0 } else { index[&vec![x]] }).collect();
    Ok(ReducedMonoid { monoid, words, index, letters })
}

/// `ℤ^r` with both actions of `G` trivial and the diagonal product.
pub fn trivial_monoid_bimodule(g: &FiniteMonoid, r: usize) -> Bimodule {
    let ids = vec![IntegerMatrix::identity(r); g.size()];
    let product = (0..r * r)
        .map(|ij| if ij / r == ij % r { vec![(ij / r, BigInt::one())] } else { Vec::new() })
        .collect();
    Bimodule::new(r, Some(ids.clone()), Some(ids)).unwrap().with_product(product).unwrap()
}

/// `ℤG` with left and right translations.
pub fn regular_monoid_bimodule(g: &FiniteMonoid) -> Bimodule {
    let n = g.size();
    let perm = |f: &dyn Fn(usize) -> usize| IntegerMatrix::from_triplets(n, n, (0..n).map(|b| (f(b), b, BigInt::one())));
    let left = (0..n).map(|a| perm(&|b| g.mul(a, b))).collect();
    let right = (0..n).map(|a| perm(&|b| g.mul(b, a))).collect();
    let product: Vec<SparseVec> = (0..n * n).map(|ij| vec![(g.mul(ij / n, ij % n), BigInt::one())]).collect();
    Bimodule::new(n, Some(left), Some(right))
        .unwrap()
        .with_labels((0..n).map(|i| format!("g{i}")).collect())
        .unwrap()
        .with_product(product)
        .unwrap()
}

/// The `X`-bimodule obtained from a `G`-bimodule through `φ: X → G`.
pub fn pullback_bimodule(m: &Bimodule, phi: &[usize]) -> Result<Bimodule> {
    let pick = |acts: Option<&[IntegerMatrix]>| -> Result<Option<Vec<IntegerMatrix>>> {
        acts.map(|a| {
            phi.iter()
                .map(|&g| a.get(g).cloned().ok_or(Error::ElementOutOfRange { index: g, size: a.len() }))
                .collect()
        })
        .transpose()
    };
    let mut out = Bimodule::new(m.rank(), pick(m.left_actions())?, pick(m.right_actions())?)?.with_labels(m.labels().to_vec())?;
    if let Some(p) = m.product() {
        out = out.with_product(p.to_vec())?;
    }
    Ok(out)
}

fn tuple_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * base + g)
}

fn index_tuple(mut i: usize, base: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = i % base;
        i /= base;
    }
    t
}

/// Non-unit elements of `G` in increasing order, and the position of each.
fn nonunits(g: &FiniteMonoid) -> (Vec<usize>, Vec<Option<usize>>) {
    let list: Vec<usize> = (0..g.size()).filter(|&a| a != g.unit()).collect();
    let mut pos = vec![None; g.size()];
    for (i, &a) in list.iter().enumerate() {
        pos[a] = Some(i);
    }
    (list, pos)
}

fn check_monoid_coefficients(g: &FiniteMonoid, m: &Bimodule) -> Result<()> {
    m.require_bimodule()?;
    if m.generators() != Some(g.size()) {
        return Err(Error::CoefficientMismatch(format!("actions indexed by {:?} elements, monoid has {}", m.generators(), g.size())));
    }
    Ok(())
}

/// `C_k = M ⊗ ℤḠ^{×k}` with
/// `d(m, g_1…g_k) = (m·g_1, g_2…) + Σ (−1)^i (…, g_i g_{i+1}, …) + (−1)^k (g_k·m, g_1…g_{k−1})`,
/// tuples containing the unit dropped. Degrees `0..=k_max`.
pub fn normalized_bar_complex(g: &FiniteMonoid, m: &Bimodule, k_max: usize) -> Result<ChainComplex> {
    check_monoid_coefficients(g, m)?;
    let r = m.rank();
    let (bar, pos) = nonunits(g);
    let nb = bar.len();
    let left = m.left_actions().unwrap();
    let right = m.right_actions().unwrap();
    let ranks: Vec<usize> = (0..=k_max).map(|k| nb.pow(k as u32) * r).collect();
    let mut maps = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut t = Vec::new();
        for j in 0..nb.pow(k as u32) {
            let tuple: Vec<usize> = index_tuple(j, nb, k).into_iter().map(|i| bar[i]).collect();
            let mut emit = |sign: i64, op: Option<&IntegerMatrix>, out: &[usize]| {
                let Some(out): Option<Vec<usize>> = out.iter().map(|&a| pos[a]).collect() else { return };
                let ti = tuple_index(&out, nb);
                for b in 0..r {
                    match op {
                        Some(op) => {
                            for (a, v) in op.column(b) {
                                t.push((ti * r + a, j * r + b, v * sign));
                            }
                        }
                        None => t.push((ti * r + b, j * r + b, BigInt::from(sign))),
                    }
                }
            };
            emit(1, Some(&right[tuple[0]]), &tuple[1..]);
            for i in 1..k {
                let mut out = tuple[..i - 1].to_vec();
                out.push(g.mul(tuple[i - 1], tuple[i]));
                out.extend_from_slice(&tuple[i + 1..]);
                emit(if i % 2 == 0 { 1 } else { -1 }, None, &out);
            }
            emit(if k % 2 == 0 { 1 } else { -1 }, Some(&left[tuple[k - 1]]), &tuple[..k - 1]);
        }
        maps.push(IntegerMatrix::from_triplets(ranks[k - 1], ranks[k], t));
    }
    let labels = (0..=k_max)
        .map(|k| {
            (0..nb.pow(k as u32))
                .flat_map(|j| {
                    let tl = index_tuple(j, nb, k).iter().map(|&i| format!("g{}", bar[i])).collect::<Vec<_>>().join(",");
                    m.labels().iter().map(move |c| format!("{c}|{tl}"))
                })
                .collect()
        })
        .collect();
    ChainComplex::new(Orientation::Chain, ranks, maps, true)?.with_labels(labels)
}

type BarKey = (usize, Vec<Word>);

/// Tuples of normal words, as produced by the symmetrizer and the bar
/// differential of the structure monoid.
struct BarArithmetic<'a> {
    sigma: &'a BraidedSet,
    pseudo_unit: Option<ElementId>,
    m: &'a Bimodule,
}

impl BarArithmetic<'_> {
    fn product(&self, u: &[ElementId], v: &[ElementId]) -> Result<Word> {
        match self.pseudo_unit {
            Some(e) => self.sigma.reduced_star_product(e, u, v),
            None => self.sigma.star_product(u, v),
        }
    }

    /// Letters of a symmetrizer term as tuple components, `None` if one of
    /// them is the pseudo-unit (an empty component after reduction).
    fn letters(&self, u: &[ElementId]) -> Option<Vec<Word>> {
        u.iter().map(|&x| (Some(x) != self.pseudo_unit).then(|| vec![x])).collect()
    }

    fn qs(&self, b: usize, w: &[ElementId], c: &BigInt, out: &mut Combination<BarKey>) {
        for (u, s) in quantum_symmetrizer(self.sigma, w).iter() {
            if let Some(t) = self.letters(u) {
                out.add_term((b, t), s * c);
            }
        }
    }

    fn act(&self, left: bool, u: &[ElementId], b: usize) -> Vec<(usize, BigInt)> {
        let mut v = vec![BigInt::zero(); self.m.rank()];
        v[b] = BigInt::one();
        if left {
            for &x in u.iter().rev() {
                v = self.m.act_left(x, &v);
            }
        } else {
            for &x in u {
                v = self.m.act_right(&v, x);
            }
        }
        v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn bar_differential(&self, key: &BarKey, c: &BigInt, out: &mut Combination<BarKey>) -> Result<()> {
        let (b, t) = key;
        let k = t.len();
        for (a, v) in self.act(false, &t[0], *b) {
            out.add_term((a, t[1..].to_vec()), &v * c);
        }
        for i in 1..k {
            let p = self.product(&t[i - 1], &t[i])?;
            if p.is_empty() {
                continue;
            }
            let mut u = t[..i - 1].to_vec();
            u.push(p);
            u.extend_from_slice(&t[i + 1..]);
            out.add_term((*b, u), if i % 2 == 0 { c.clone() } else { -c });
        }
        let s = if k % 2 == 0 { c.clone() } else { -c };
        for (a, v) in self.act(true, &t[k - 1], *b) {
            out.add_term((a, t[..k - 1].to_vec()), &v * &s);
        }
        Ok(())
    }

    fn braided_differential(&self, b: usize, w: &[ElementId], out: &mut Combination<BarKey>) {
        for i in 1..=w.len() {
            let s = BigInt::from(if i % 2 == 1 { 1 } else { -1 });
            let (x, lw) = self.sigma.left_face(w, i);
            for (a, v) in self.act(false, &[x], b) {
                self.qs(a, &lw, &(&v * &s), out);
            }
            let (rw, x) = self.sigma.right_face(w, i);
            for (a, v) in self.act(true, &[x], b) {
                self.qs(a, &rw, &(-(&v * &s)), out);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct QsChainMapReport {
    /// Basis elements `(coefficient, word)` checked for `QS∘d = d∘QS`.
    pub checked: usize,
    /// First `(coefficient index, word)` where `QS∘d ≠ d∘QS`.
    pub commute_witness: Option<(usize, Word)>,
    /// Non-critical words checked for `QS(w) = 0`.
    pub vanishing_checked: usize,
    pub vanishing_witness: Option<Word>,
}

impl QsChainMapReport {
    pub fn holds(&self) -> bool {
        self.commute_witness.is_none() && self.vanishing_witness.is_none()
    }
}

/// Checks that the (reduced, if `pseudo_unit` is given) quantum symmetrizer
/// commutes with the differentials on every word of length `≤ k_max`, into
/// the bar complex of the (reduced) structure monoid, and that it vanishes
/// on non-critical words. Needs an idempotent braiding.
pub fn qs_chain_map_check(
    sigma: &BraidedSet,
    pseudo_unit: Option<ElementId>,
    m: &Bimodule,
    k_max: usize,
) -> Result<QsChainMapReport> {
    m.require_bimodule()?;
    m.check_generators(sigma)?;
    if !sigma.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let ar = BarArithmetic { sigma, pseudo_unit, m };
    let mut report = QsChainMapReport::default();
    let n = sigma.size();
    for k in 1..=k_max {
        for wi in 0..n.pow(k as u32) {
            let w = index_word(wi, n, k);
            let critical = sigma.is_critical(&w) && pseudo_unit.is_none_or(|e| !w.contains(&e));
            if !critical {
                report.vanishing_checked += 1;
                let mut q = Combination::new();
                ar.qs(0, &w, &BigInt::one(), &mut q);
                if !q.is_zero() && report.vanishing_witness.is_none() {
                    report.vanishing_witness = Some(w.clone());
                }
            }
            for b in 0..m.rank() {
                report.checked += 1;
                let mut lhs = Combination::new();
                ar.braided_differential(b, &w, &mut lhs);
                let mut q = Combination::new();
                ar.qs(b, &w, &BigInt::one(), &mut q);
                let mut rhs = Combination::new();
                for (key, c) in q.iter() {
                    ar.bar_differential(key, c, &mut rhs)?;
                }
                if lhs != rhs && report.commute_witness.is_none() {
                    report.commute_witness = Some((b, w.clone()));
                }
            }
        }
    }
    Ok(report)
}

/// `QS̄` from the critical complex to the normalized bar complex of the
/// reduced monoid, both with `M` (pulled back along `φ` on the braided side).
pub fn qs_chain_map(
    sigma: &BraidedSet,
    e: ElementId,
    g: &ReducedMonoid,
    m: &Bimodule,
    k_max: usize,
) -> Result<ChainMap> {
    let r = m.rank();
    let (_, pos) = nonunits(&g.monoid);
    let nb = g.monoid.size() - 1;
    let components = (0..=k_max)
        .map(|k| {
            let words = critical_basis(sigma, Some(e), k);
            let mut t = Vec::new();
            for (j, w) in words.iter().enumerate() {
                for (u, s) in quantum_symmetrizer(sigma, w).iter() {
                    let Some(tuple): Option<Vec<usize>> = u.iter().map(|x| pos[g.letters[x.index()]]).collect() else {
                        continue;
                    };
                    let ti = tuple_index(&tuple, nb);
                    for b in 0..r {
                        t.push((ti * r + b, j * r + b, s.clone()));
                    }
                }
            }
            IntegerMatrix::from_triplets(nb.pow(k as u32) * r, words.len() * r, t)
        })
        .collect();
    Ok(ChainMap { components })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub critical: AbelianGroup,
    pub bar: AbelianGroup,
    /// Whether `H_k(QS̄)` is an isomorphism.
    pub induced_isomorphism: bool,
}

impl DegreeComparison {
    pub fn agrees(&self) -> bool {
        self.critical == self.bar && self.induced_isomorphism
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub monoid_size: usize,
    pub degrees: Vec<DegreeComparison>,
}

impl ComparisonReport {
    pub fn all_agree(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::agrees)
    }
}

/// Critical vs. normalized bar homology in degrees `< k_max`, with the
/// induced map of `QS̄` in each degree. `m` is a bimodule over the reduced
/// monoid `g`.
pub fn compare_homology_with(
    sigma: &BraidedSet,
    e: ElementId,
    g: &ReducedMonoid,
    m: &Bimodule,
    k_max: usize,
) -> Result<ComparisonReport> {
    check_monoid_coefficients(&g.monoid, m)?;
    let pulled = pullback_bimodule(m, &g.letters)?;
    let crit = critical_complex(sigma, Some(e), &pulled, k_max)?;
    let bar = normalized_bar_complex(&g.monoid, m, k_max)?;
    let f = qs_chain_map(sigma, e, g, m, k_max)?;
    let degrees = (0..k_max)
        .map(|k| {
            let induced = induced_map_on_homology(&f, &crit, &bar, k)?;
            Ok(DegreeComparison {
                degree: k,
                critical: induced.source,
                bar: induced.target,
                induced_isomorphism: induced.isomorphism,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonReport { monoid_size: g.monoid.size(), degrees })
}

/// [`compare_homology_with`] for trivial `ℤ^r` coefficients, enumerating the
/// reduced monoid first (at most `bound` elements).
pub fn compare_homology(
    sigma: &BraidedSet,
    e: ElementId,
    r: usize,
    k_max: usize,
    bound: usize,
) -> Result<ComparisonReport> {
    let g = enumerate_reduced_monoid(sigma, e, bound)?;
    let m = trivial_monoid_bimodule(&g.monoid, r);
    compare_homology_with(sigma, e, &g, &m, k_max)
}

/// Bigraded modules `M ⊗ ℤ(K̄^{×p} × H̄^{×q})` with vertical `d^v: (p,q) → (p−1,q)`
/// and horizontal `d^h: (p,q) → (p,q−1)` differentials.
#[derive(Debug, Clone)]
pub struct DoubleComplex {
    pub max_degree: usize,
    pub rank: usize,
    /// Basis words `k_1…k_p h_1…h_q` of each bidegree, lexicographic.
    pub bases: BTreeMap<(usize, usize), Vec<Word>>,
    pub vertical: BTreeMap<(usize, usize), IntegerMatrix>,
    pub horizontal: BTreeMap<(usize, usize), IntegerMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplexReport {
    /// Bidegrees where `d^v d^v`, `d^h d^h`, or `d^v d^h − d^h d^v` is nonzero.
    pub vertical_square: Option<(usize, usize)>,
    pub horizontal_square: Option<(usize, usize)>,
    pub commutator: Option<(usize, usize)>,
}

impl DoubleComplexReport {
    pub fn holds(&self) -> bool {
        self.vertical_square.is_none() && self.horizontal_square.is_none() && self.commutator.is_none()
    }
}

fn all_tuples(letters: &[ElementId], len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    for _ in 0..len {
        out = out.iter().flat_map(|w| letters.iter().map(move |&x| [w.as_slice(), &[x]].concat())).collect();
    }
    out
}

impl DoubleComplex {
    fn basis(&self, p: usize, q: usize) -> &[Word] {
        &self.bases[&(p, q)]
    }

    /// Checks `d^v d^v = 0`, `d^h d^h = 0` and `d^v d^h = d^h d^v`; with
    /// `d = d^v + (−1)^p d^h` the latter makes the signed maps anticommute.
    pub fn verify(&self) -> Result<DoubleComplexReport> {
        let mut report = DoubleComplexReport { vertical_square: None, horizontal_square: None, commutator: None };
        for &(p, q) in self.bases.keys() {
            if p >= 2
                && !self.vertical[&(p - 1, q)].mul(&self.vertical[&(p, q)])?.is_zero() {
                    report.vertical_square.get_or_insert((p, q));
                }
            if q >= 2
                && !self.horizontal[&(p, q - 1)].mul(&self.horizontal[&(p, q)])?.is_zero() {
                    report.horizontal_square.get_or_insert((p, q));
                }
            if p >= 1 && q >= 1 {
                let a = self.vertical[&(p, q - 1)].mul(&self.horizontal[&(p, q)])?;
                let b = self.horizontal[&(p - 1, q)].mul(&self.vertical[&(p, q)])?;
                if !a.sub(&b)?.is_zero() {
                    report.commutator.get_or_insert((p, q));
                }
            }
        }
        Ok(report)
    }

    /// `Tot_k = ⊕_{p+q=k}` with `d = d^v + (−1)^p d^h`, basis words ordered
    /// as in the critical complex (lexicographically).
    pub fn totalization(&self) -> Result<ChainComplex> {
        let r = self.rank;
        let mut order: Vec<BTreeMap<Word, usize>> = Vec::new();
        for k in 0..=self.max_degree {
            let mut words: Vec<Word> = (0..=k).flat_map(|p| self.basis(p, k - p).iter().cloned()).collect();
            words.sort();
            order.push(words.into_iter().enumerate().map(|(i, w)| (w, i)).collect());
        }
        let ranks: Vec<usize> = order.iter().map(|o| o.len() * r).collect();
        let mut maps = Vec::with_capacity(self.max_degree);
        for k in 1..=self.max_degree {
            let mut t = Vec::new();
            for p in 0..=k {
                let q = k - p;
                let src = self.basis(p, q);
                let mut place = |m: &IntegerMatrix, tgt: &[Word], sign: i64| {
                    for (i, j, v) in m.entries() {
                        let (row_w, col_w) = (&tgt[i / r], &src[j / r]);
                        t.push((order[k - 1][row_w] * r + i % r, order[k][col_w] * r + j % r, v * sign));
                    }
                };
                if p >= 1 {
                    place(&self.vertical[&(p, q)], self.basis(p - 1, q), 1);
                }
                if q >= 1 {
                    place(&self.horizontal[&(p, q)], self.basis(p, q - 1), if p % 2 == 0 { 1 } else { -1 });
                }
            }
            maps.push(IntegerMatrix::from_triplets(ranks[k - 1], ranks[k], t));
        }
        let labels = order
            .iter()
            .map(|o| {
                let mut words: Vec<(&Word, &usize)> = o.iter().collect();
                words.sort_by_key(|(_, &i)| i);
                words.iter().flat_map(|(w, _)| (0..r).map(move |b| format!("m{b}|{}", word_label(w)))).collect()
            })
            .collect();
        ChainComplex::new(Orientation::Chain, ranks, maps, true)?.with_labels(labels)
    }
}

/// The double complex of an exact factorization `G = HK` with coefficients
/// `m` over `X = H ∪ K`; bidegrees `p + q ≤ k_max`.
///
/// `d^v(m, k, h) = (m·k_1, k_2…k_p, h) + Σ (−1)^i (…, k_i k_{i+1}, …, h)
///   + (−1)^p (k'_p·m, k_1…k_{p−1}, h')`, `h'k'_p = b_q⋯b_1(k_p h)`;
/// `d^h(m, k, h) = (m·h''_1, k'', h_2…h_q) + Σ (−1)^i (k, …, h_i h_{i+1}, …)
///   + (−1)^q (h_q·m, k, h_1…h_{q−1})`, `h''_1 k'' = b_1⋯b_p(k h_1)`;
/// terms whose word contains `1` are omitted.
pub fn factorizable_double_complex(f: &Factorization, m: &Bimodule, k_max: usize) -> Result<DoubleComplex> {
    let sigma = &f.set;
    m.require_bimodule()?;
    m.check_generators(sigma)?;
    let r = m.rank();
    let unit = f.unit();
    let g = &f.monoid;
    let prod = |a: ElementId, b: ElementId| f.element(g.mul(f.group_element(a), f.group_element(b)));
    let (kbar, hbar) = (f.k_bar(), f.h_bar());
    let mut bases = BTreeMap::new();
    for k in 0..=k_max {
        for p in 0..=k {
            let words: Vec<Word> = all_tuples(&kbar, p)
                .into_iter()
                .flat_map(|kw| all_tuples(&hbar, k - p).into_iter().map(move |hw| [kw.as_slice(), &hw].concat()))
                .collect();
            bases.insert((p, k - p), words);
        }
    }
    let index = |w: &[ElementId], bases: &BTreeMap<(usize, usize), Vec<Word>>, p: usize, q: usize| -> Option<usize> {
        if w.contains(&unit) {
            return None;
        }
        bases[&(p, q)].binary_search_by(|u| u.as_slice().cmp(w)).ok()
    };
    let push = |t: &mut Vec<(usize, usize, BigInt)>, ti: usize, j: usize, op: Option<&IntegerMatrix>, sign: i64| {
        for b in 0..r {
            match op {
                Some(op) => {
                    for (a, v) in op.column(b) {
                        t.push((ti * r + a, j * r + b, v * sign));
                    }
                }
                None => t.push((ti * r + b, j * r + b, BigInt::from(sign))),
            }
        }
    };
    let parity = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    let mut vertical = BTreeMap::new();
    let mut horizontal = BTreeMap::new();
    for (&(p, q), words) in &bases {
        if p >= 1 {
            let mut t = Vec::new();
            for (j, w) in words.iter().enumerate() {
                let (kw, hw) = w.split_at(p);
                if let Some(ti) = index(&w[1..], &bases, p - 1, q) {
                    push(&mut t, ti, j, Some(m.right(kw[0])), 1);
                }
                for i in 1..p {
                    if let Some(x) = prod(kw[i - 1], kw[i]) {
                        let u = [&kw[..i - 1], &[x], &kw[i + 1..], hw].concat();
                        if let Some(ti) = index(&u, &bases, p - 1, q) {
                            push(&mut t, ti, j, None, parity(i));
                        }
                    }
                }
                // carry k_p through h to the right end
                let mut tail = [&kw[p - 1..], hw].concat();
                for i in 1..=q {
                    sigma.act(&mut tail, i);
                }
                let kp = tail.pop().unwrap();
                let u = [&kw[..p - 1], tail.as_slice()].concat();
                if let Some(ti) = index(&u, &bases, p - 1, q) {
                    push(&mut t, ti, j, Some(m.left(kp)), parity(p));
                }
            }
            vertical.insert((p, q), IntegerMatrix::from_triplets(bases[&(p - 1, q)].len() * r, words.len() * r, t));
        }
        if q >= 1 {
            let mut t = Vec::new();
            for (j, w) in words.iter().enumerate() {
                let (kw, hw) = w.split_at(p);
                // carry h_1 through k to the front
                let mut head = [kw, &hw[..1]].concat();
                for i in (1..=p).rev() {
                    sigma.act(&mut head, i);
                }
                let h1 = head.remove(0);
                let u = [head.as_slice(), &hw[1..]].concat();
                if let Some(ti) = index(&u, &bases, p, q - 1) {
                    push(&mut t, ti, j, Some(m.right(h1)), 1);
                }
                for i in 1..q {
                    if let Some(x) = prod(hw[i - 1], hw[i]) {
                        let u = [kw, &hw[..i - 1], &[x], &hw[i + 1..]].concat();
                        if let Some(ti) = index(&u, &bases, p, q - 1) {
                            push(&mut t, ti, j, None, parity(i));
                        }
                    }
                }
                let u = [kw, &hw[..q - 1]].concat();
                if let Some(ti) = index(&u, &bases, p, q - 1) {
                    push(&mut t, ti, j, Some(m.left(hw[q - 1])), parity(q));
                }
            }
            horizontal.insert((p, q), IntegerMatrix::from_triplets(bases[&(p, q - 1)].len() * r, words.len() * r, t));
        }
    }
    Ok(DoubleComplex { max_degree: k_max, rank: r, bases, vertical, horizontal })
}

/// Closed-form cup of critical cochains for a factorization braiding, on
/// words `k_1…k_p h_1…h_q`:
/// `(f⌣g)(k,h) = Σ_r (−1)^{(p−r)(s−r)} f(k_1…k_r, h'_1…h'_{s−r}) g(k'_{r+1}…k'_p, h_{s−r+1}…h_q)`,
/// `h'k' = b_{p−r,s−r}(k_{r+1}…k_p, h_1…h_{s−r})`, `s = deg f`. Zero on
/// non-critical words.
pub fn factorizable_cup(f: &Factorization, coeff: &Coefficients, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    let sigma = &f.set;
    let (s, t) = (a.degree(), b.degree());
    if a.set_size() != sigma.size() || b.set_size() != sigma.size() || a.rank() != coeff.rank() || b.rank() != coeff.rank() {
        return Err(Error::CoefficientMismatch("cochains do not match the factorization".into()));
    }
    let n = sigma.size();
    let deg = s + t;
    let unit = f.unit();
    let values = (0..n.pow(deg as u32))
        .map(|wi| {
            let w = index_word(wi, n, deg);
            let mut acc = vec![BigInt::zero(); coeff.rank()];
            let critical = !w.contains(&unit) && sigma.is_critical(&w);
            if !critical {
                return acc;
            }
            let p = w.iter().take_while(|&&x| f.in_k(x)).count();
            let q = deg - p;
            let (kw, hw) = w.split_at(p);
            for r in s.saturating_sub(q)..=p.min(s) {
                let (hp, kp) = sigma.word_braiding(&kw[r..], &hw[..s - r]);
                let fa = [&kw[..r], hp.as_slice()].concat();
                let gb = [kp.as_slice(), &hw[s - r..]].concat();
                let prod = coeff.multiply(a.value(&fa), b.value(&gb));
                let sign = if ((p - r) * (s - r)) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for (x, y) in acc.iter_mut().zip(prod) {
                    *x += &sign * y;
                }
            }
            acc
        })
        .collect();
    Ok(Cochain::from_values(n, deg, values)?.reduced(coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::trivial_bimodule;
    use crate::catalog::*;

    fn s3_factorization() -> Factorization {
        let g = FiniteMonoid::symmetric(3);
        // c = 3-cycle, t = transposition
        let c = (0..6).find(|&a| a != 0 && g.mul(a, g.mul(a, a)) == 0).unwrap();
        let t = (1..6).find(|&a| g.mul(a, a) == 0).unwrap();
        factorization_braiding(&g, &g.generated(&[c]), &g.generated(&[t])).unwrap()
    }

    #[test]
    fn reduced_monoids() {
        let c2 = associativity_braiding(&FiniteMonoid::cyclic(2));
        let g = enumerate_reduced_monoid(&c2.set, c2.unit(), 16).unwrap();
        assert_eq!(g.size(), 2);
        let s3 = s3_factorization();
        let g = enumerate_reduced_monoid(&s3.set, s3.unit(), 16).unwrap();
        assert_eq!(g.size(), 6);
        assert!(g.monoid.isomorphism(&FiniteMonoid::symmetric(3)).is_some());
        let one = identity_braiding(1).with_pseudo_unit(ElementId(0)).unwrap();
        assert_eq!(enumerate_reduced_monoid(&one, ElementId(0), 4).unwrap().size(), 1);
        let free = minmax_braiding(3).with_pseudo_unit(ElementId(0)).unwrap();
        assert_eq!(enumerate_reduced_monoid(&free, ElementId(0), 50).unwrap_err(), Error::MonoidBound(50));
    }

    #[test]
    fn bar_complex_of_c2() {
        let g = FiniteMonoid::cyclic(2);
        let c = normalized_bar_complex(&g, &trivial_monoid_bimodule(&g, 1), 4).unwrap();
        assert!(c.verify().holds());
        let h = c.homology_all();
        assert_eq!(h, vec![AbelianGroup::free(1), AbelianGroup::new(0, &[2]), AbelianGroup::free(0), AbelianGroup::new(0, &[2])]);
        let c = normalized_bar_complex(&FiniteMonoid::trivial(), &trivial_monoid_bimodule(&FiniteMonoid::trivial(), 1), 3).unwrap();
        assert_eq!(c.ranks(), &[1, 0, 0, 0]);
    }

    #[test]
    fn qs_commutes() {
        let c2 = associativity_braiding(&FiniteMonoid::cyclic(2));
        let m = trivial_bimodule(&c2.set, 1);
        let r = qs_chain_map_check(&c2.set, Some(c2.unit()), &m, 3).unwrap();
        assert!(r.holds(), "{r:?}");
        let mm = minmax_braiding(3);
        let r = qs_chain_map_check(&mm, None, &trivial_bimodule(&mm, 1), 3).unwrap();
        assert!(r.holds(), "{r:?}");
        let s3 = s3_factorization();
        let g = enumerate_reduced_monoid(&s3.set, s3.unit(), 16).unwrap();
        let m = pullback_bimodule(&regular_monoid_bimodule(&g.monoid), &g.letters).unwrap();
        let r = qs_chain_map_check(&s3.set, Some(s3.unit()), &m, 3).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn comparison_s3() {
        let s3 = s3_factorization();
        let r = compare_homology(&s3.set, s3.unit(), 1, 4, 64).unwrap();
        assert!(r.all_agree(), "{r:?}");
        assert_eq!(r.degrees[1].bar, AbelianGroup::new(0, &[2]));
        assert_eq!(r.degrees[3].bar, AbelianGroup::new(0, &[6]));
    }

    #[test]
    fn double_complex_is_critical_complex() {
        let s3 = s3_factorization();
        let m = trivial_bimodule(&s3.set, 1);
        let d = factorizable_double_complex(&s3, &m, 4).unwrap();
        assert!(d.verify().unwrap().holds());
        let tot = d.totalization().unwrap();
        let crit = critical_complex(&s3.set, Some(s3.unit()), &m, 4).unwrap();
        assert_eq!(tot.maps(), crit.maps());
    }

    #[test]
    fn closed_form_cup() {
        let s3 = s3_factorization();
        let z = Coefficients::integers(&s3.set);
        let e = s3.unit();
        let n = s3.set.size();
        let crit = |deg: usize, seed: i64| {
            Cochain::from_fn(n, deg, |w| {
                let c = !w.contains(&e) && s3.set.is_critical(w);
                let v = crate::brcomplex::word_index(w, n) as i64 * 7 + seed;
                vec![BigInt::from(if c { v % 5 - 2 } else { 0 })]
            })
        };
        for s in 0..=2 {
            for t in 0..=2 {
                let (a, b) = (crit(s, 1), crit(t, 3));
                let generic = crate::products::cup(&s3.set, &z, &a, &b).unwrap();
                assert_eq!(factorizable_cup(&s3, &z, &a, &b).unwrap(), generic, "degrees ({s},{t})");
            }
        }
    }
}
