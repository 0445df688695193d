//! Braided chain and cochain complexes with bimodule coefficients, their
//! critical quotients, and quotients by σ-invariant subgroups `R ⊂ ℤX²`.
//!
//! Bases are ordered lexicographically on (word, coefficient index): the
//! basis vector `m_b ⊗ w` sits at `index(w)·r + b`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::bimodule::Bimodule;
use crate::braided::{BraidedSet, ElementId, Word};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::linalg::{
    rank_mod_p, smith_normal_form_with_transforms, span_contains, ChainComplex, IntegerMatrix, Orientation,
};
use crate::shuffle::multi_shuffle_coproduct;

/// Position of `w` among the words of its length over an `n`-letter alphabet.
pub fn word_index(w: &[ElementId], n: usize) -> usize {
    w.iter().fold(0, |acc, x| acc * n + x.index())
}

pub fn index_word(mut i: usize, n: usize, len: usize) -> Word {
    let mut w = vec![ElementId(0); len];
    for slot in w.iter_mut().rev() {
        *slot = ElementId::from(i % n);
        i /= n;
    }
    w
}

pub fn all_words(n: usize, len: usize) -> Vec<Word> {
    (0..n.pow(len as u32)).map(|i| index_word(i, n, len)).collect()
}

pub fn word_label(w: &[ElementId]) -> String {
    if w.is_empty() {
        return String::from("ε");
    }
    w.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(".")
}

/// An ordered basis of words of one length: either all of `X^k` or a list.
#[derive(Debug, Clone)]
pub struct WordBasis {
    n: usize,
    len: usize,
    listed: Option<(Vec<Word>, BTreeMap<Word, usize>)>,
}

impl WordBasis {
    pub fn full(n: usize, len: usize) -> Self {
        WordBasis { n, len, listed: None }
    }

    pub fn from_words(n: usize, len: usize, words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordBasis { n, len, listed: Some((words, index)) }
    }

    pub fn size(&self) -> usize {
        match &self.listed {
            Some((w, _)) => w.len(),
            None => self.n.pow(self.len as u32),
        }
    }

    pub fn word(&self, i: usize) -> Word {
        match &self.listed {
            Some((w, _)) => w[i].clone(),
            None => index_word(i, self.n, self.len),
        }
    }

    pub fn index_of(&self, w: &[ElementId]) -> Option<usize> {
        match &self.listed {
            Some((_, idx)) => idx.get(w).copied(),
            None => Some(word_index(w, self.n)),
        }
    }

    pub fn words(&self) -> Vec<Word> {
        (0..self.size()).map(|i| self.word(i)).collect()
    }
}

/// How a face term acts on the coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Act {
    /// `m ↦ m · x`
    Right(ElementId),
    /// `m ↦ x · m`
    Left(ElementId),
}

struct Face {
    sign: i64,
    word: Word,
    act: Act,
}

fn parity(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Terms of `d_k = Σ (−1)^{i−1}(d^l_i − d^r_i)` on one word, chain side:
/// `d^l_i(m, w) = (m·x'_i, lw)` and `d^r_i(m, w) = (x''_i·m, rw)`.
fn chain_faces(sigma: &BraidedSet, w: &[ElementId]) -> Vec<Face> {
    let mut out = Vec::with_capacity(2 * w.len());
    for i in 1..=w.len() {
        let s = parity(i - 1);
        let (x, lw) = sigma.left_face(w, i);
        out.push(Face { sign: s, word: lw, act: Act::Right(x) });
        let (rw, x) = sigma.right_face(w, i);
        out.push(Face { sign: -s, word: rw, act: Act::Left(x) });
    }
    out
}

/// Cochain side: `(df)(w) = Σ (−1)^{i−1}(x'_i·f(lw) − f(rw)·x''_i)`.
fn cochain_faces(sigma: &BraidedSet, w: &[ElementId]) -> Vec<Face> {
    chain_faces(sigma, w)
        .into_iter()
        .map(|f| Face {
            act: match f.act {
                Act::Right(x) => Act::Left(x),
                Act::Left(x) => Act::Right(x),
            },
            ..f
        })
        .collect()
}

/// Coefficient operators, one matrix per element and side.
struct CoeffOps {
    rank: usize,
    left: Vec<IntegerMatrix>,
    right: Vec<IntegerMatrix>,
}

impl CoeffOps {
    fn of(&self, a: Act) -> &IntegerMatrix {
        match a {
            Act::Right(x) => &self.right[x.index()],
            Act::Left(x) => &self.left[x.index()],
        }
    }

    fn bimodule(sigma: &BraidedSet, m: &Bimodule) -> Result<Self> {
        m.require_bimodule()?;
        m.check_generators(sigma)?;
        Ok(CoeffOps {
            rank: m.rank(),
            left: m.left_actions().unwrap().to_vec(),
            right: m.right_actions().unwrap().to_vec(),
        })
    }

    /// `M ⊗ N` with `M` a right module and `N` a left module.
    fn two_sided(sigma: &BraidedSet, m: &Bimodule, n: &Bimodule) -> Result<Self> {
        if !m.has_right() || !n.has_left() {
            return Err(Error::Bimodule("two-sided complex needs a right module and a left module".into()));
        }
        m.check_generators(sigma)?;
        n.check_generators(sigma)?;
        let (rm, rn) = (m.rank(), n.rank());
        let idm = IntegerMatrix::identity(rm);
        let idn = IntegerMatrix::identity(rn);
        Ok(CoeffOps {
            rank: rm * rn,
            right: sigma.elements().map(|x| kron(m.right(x), &idn)).collect(),
            left: sigma.elements().map(|x| kron(&idm, n.left(x))).collect(),
        })
    }
}

/// Kronecker product, row index `i·rows(b) + k`.
pub fn kron(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    let mut t = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, j, v) in a.entries() {
        for (k, l, u) in b.entries() {
            t.push((i * b.rows() + k, j * b.cols() + l, v * u));
        }
    }
    IntegerMatrix::from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), t)
}

fn chain_matrix(
    sigma: &BraidedSet,
    src: &WordBasis,
    tgt: &WordBasis,
    ops: &CoeffOps,
    faces: impl Fn(&BraidedSet, &[ElementId]) -> Vec<Face>,
) -> IntegerMatrix {
    let r = ops.rank;
    let mut t = Vec::new();
    for j in 0..src.size() {
        for f in faces(sigma, &src.word(j)) {
            let Some(ti) = tgt.index_of(&f.word) else { continue };
            let op = ops.of(f.act);
            for b in 0..r {
                for (a, v) in op.column(b) {
                    t.push((ti * r + a, j * r + b, v * f.sign));
                }
            }
        }
    }
    IntegerMatrix::from_triplets(tgt.size() * r, src.size() * r, t)
}

fn cochain_matrix(
    sigma: &BraidedSet,
    src: &WordBasis,
    tgt: &WordBasis,
    ops: &CoeffOps,
) -> IntegerMatrix {
    // src: degree k−1 words (columns), tgt: degree k words (rows)
    let r = ops.rank;
    let mut t = Vec::new();
    for wi in 0..tgt.size() {
        for f in cochain_faces(sigma, &tgt.word(wi)) {
            let Some(ui) = src.index_of(&f.word) else { continue };
            let op = ops.of(f.act);
            for b in 0..r {
                for (a, v) in op.column(b) {
                    t.push((wi * r + a, ui * r + b, v * f.sign));
                }
            }
        }
    }
    IntegerMatrix::from_triplets(tgt.size() * r, src.size() * r, t)
}

fn labels_for(bases: &[WordBasis], coeff: &[String]) -> Vec<Vec<String>> {
    bases
        .iter()
        .map(|b| {
            b.words()
                .iter()
                .flat_map(|w| {
                    let wl = word_label(w);
                    coeff.iter().map(move |c| format!("{c}|{wl}"))
                })
                .collect()
        })
        .collect()
}

fn assemble(
    sigma: &BraidedSet,
    bases: Vec<WordBasis>,
    ops: &CoeffOps,
    coeff_labels: &[String],
    orientation: Orientation,
) -> Result<ChainComplex> {
    let ranks = bases.iter().map(|b| b.size() * ops.rank).collect();
    let maps = (1..bases.len())
        .map(|k| match orientation {
            Orientation::Chain => chain_matrix(sigma, &bases[k], &bases[k - 1], ops, chain_faces),
            Orientation::Cochain => cochain_matrix(sigma, &bases[k - 1], &bases[k], ops),
        })
        .collect();
    ChainComplex::new(orientation, ranks, maps, true)?.with_labels(labels_for(&bases, coeff_labels))
}

fn full_bases(sigma: &BraidedSet, k_max: usize) -> Vec<WordBasis> {
    (0..=k_max).map(|k| WordBasis::full(sigma.size(), k)).collect()
}

/// `C_k = M ⊗ ℤX^{×k}` with the bimodule differential, degrees `0..=k_max`.
pub fn braided_chain_complex(sigma: &BraidedSet, m: &Bimodule, k_max: usize) -> Result<ChainComplex> {
    let ops = CoeffOps::bimodule(sigma, m)?;
    assemble(sigma, full_bases(sigma, k_max), &ops, m.labels(), Orientation::Chain)
}

/// `C_k = M ⊗ ℤX^{×k} ⊗ N` with
/// `d = Σ (−1)^{i−1}((m·x'_i, lw, n) − (m, rw, x''_i·n))`.
pub fn braided_two_sided_complex(sigma: &BraidedSet, m: &Bimodule, n: &Bimodule, k_max: usize) -> Result<ChainComplex> {
    let ops = CoeffOps::two_sided(sigma, m, n)?;
    let labels: Vec<String> =
        m.labels().iter().flat_map(|a| n.labels().iter().map(move |b| format!("{a}⊗{b}"))).collect();
    let bases = full_bases(sigma, k_max);
    let ranks = bases.iter().map(|b| b.size() * ops.rank).collect();
    let maps = (1..bases.len())
        .map(|k| chain_matrix(sigma, &bases[k], &bases[k - 1], &ops, chain_faces))
        .collect();
    ChainComplex::new(Orientation::Chain, ranks, maps, true)?.with_labels(labels_for(&bases, &labels))
}

/// `C^k = Map(X^{×k}, M)`, a function `f` stored as its values `f(w) ∈ M`.
pub fn braided_cochain_complex(sigma: &BraidedSet, m: &Bimodule, k_max: usize) -> Result<ChainComplex> {
    let ops = CoeffOps::bimodule(sigma, m)?;
    assemble(sigma, full_bases(sigma, k_max), &ops, m.labels(), Orientation::Cochain)
}

/// Critical words of length `k`: no σ-fixed adjacent pair and, if a
/// pseudo-unit is given, no occurrence of it. Lexicographic order.
pub fn critical_basis(sigma: &BraidedSet, pseudo_unit: Option<ElementId>, k: usize) -> Vec<Word> {
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for y in sigma.elements() {
                if Some(y) == pseudo_unit {
                    continue;
                }
                if w.last().is_none_or(|&x| !sigma.is_fixed(x, y)) {
                    let mut u = w.clone();
                    u.push(y);
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

fn critical_bases(sigma: &BraidedSet, pseudo_unit: Option<ElementId>, k_max: usize) -> Vec<WordBasis> {
    (0..=k_max).map(|k| WordBasis::from_words(sigma.size(), k, critical_basis(sigma, pseudo_unit, k))).collect()
}

fn check_unit_action(m: &Bimodule, e: Option<ElementId>) -> Result<()> {
    if let Some(e) = e {
        let id = IntegerMatrix::identity(m.rank());
        let l = m.left_actions().is_none_or(|l| l[e.index()] == id);
        let r = m.right_actions().is_none_or(|r| r[e.index()] == id);
        if !(l && r) {
            return Err(Error::Bimodule(format!("pseudo-unit {e} must act trivially")));
        }
    }
    Ok(())
}

/// The critical quotient: the chain differential on critical words with
/// every non-critical output word dropped (its class in the quotient is 0).
pub fn critical_complex(
    sigma: &BraidedSet,
    pseudo_unit: Option<ElementId>,
    m: &Bimodule,
    k_max: usize,
) -> Result<ChainComplex> {
    check_unit_action(m, pseudo_unit)?;
    let ops = CoeffOps::bimodule(sigma, m)?;
    assemble(sigma, critical_bases(sigma, pseudo_unit, k_max), &ops, m.labels(), Orientation::Chain)
}

/// Cochains vanishing on non-critical words, stored by their values on
/// critical words.
pub fn critical_cochain_complex(
    sigma: &BraidedSet,
    pseudo_unit: Option<ElementId>,
    m: &Bimodule,
    k_max: usize,
) -> Result<ChainComplex> {
    check_unit_action(m, pseudo_unit)?;
    let ops = CoeffOps::bimodule(sigma, m)?;
    assemble(sigma, critical_bases(sigma, pseudo_unit, k_max), &ops, m.labels(), Orientation::Cochain)
}

/// The differentials assembled twice: from the face-sum formula and as
/// `d^l + (−1)^k d^r` with `d^l`, `d^r` read off the signed shuffle
/// coproducts `⧢^{1,k−1}` and `⧢^{k−1,1}`.
#[derive(Debug, Clone)]
pub struct SplitDifferentials {
    pub left: Vec<IntegerMatrix>,
    pub right: Vec<IntegerMatrix>,
    pub sum_formula: Vec<IntegerMatrix>,
    /// `agrees[k−1]` compares the two versions of `d_k`.
    pub agrees: Vec<bool>,
}

impl SplitDifferentials {
    pub fn all_agree(&self) -> bool {
        self.agrees.iter().all(|&a| a)
    }
}

pub fn split_differentials(sigma: &BraidedSet, m: &Bimodule, k_max: usize) -> Result<SplitDifferentials> {
    let ops = CoeffOps::bimodule(sigma, m)?;
    let r = ops.rank;
    let n = sigma.size();
    let (mut left, mut right, mut sum_formula, mut agrees) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for k in 1..=k_max {
        let (src, tgt) = (WordBasis::full(n, k), WordBasis::full(n, k - 1));
        let d = chain_matrix(sigma, &src, &tgt, &ops, chain_faces);
        let mut lt = Vec::new();
        let mut rt = Vec::new();
        for j in 0..src.size() {
            let w = src.word(j);
            let push = |t: &mut Vec<(usize, usize, BigInt)>, c: &BigInt, rest: &[ElementId], op: &IntegerMatrix| {
                let ti = word_index(rest, n);
                for b in 0..r {
                    for (a, v) in op.column(b) {
                        t.push((ti * r + a, j * r + b, v * c));
                    }
                }
            };
            // the first block acts on m from the right
            for (blocks, c) in multi_shuffle_coproduct(sigma, true, &w, &[1, k - 1])? {
                push(&mut lt, &c, &blocks[1], ops.of(Act::Right(blocks[0][0])));
            }
            // the last block acts on m from the left
            for (blocks, c) in multi_shuffle_coproduct(sigma, true, &w, &[k - 1, 1])? {
                push(&mut rt, &c, &blocks[0], ops.of(Act::Left(blocks[1][0])));
            }
        }
        let (rows, cols) = (tgt.size() * r, src.size() * r);
        let dl = IntegerMatrix::from_triplets(rows, cols, lt);
        let dr = IntegerMatrix::from_triplets(rows, cols, rt);
        let total = dl.combine(&dr, BigInt::from(parity(k)))?;
        agrees.push(total == d);
        left.push(dl);
        right.push(dr);
        sum_formula.push(d);
    }
    Ok(SplitDifferentials { left, right, sum_formula, agrees })
}

pub type Pair = (ElementId, ElementId);

/// A subgroup of `ℤX^{×2}` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSubgroup {
    pub size: usize,
    pub generators: Vec<Combination<Pair>>,
}

impl RSubgroup {
    pub fn zero(size: usize) -> Self {
        RSubgroup { size, generators: Vec::new() }
    }

    /// Generators as columns of an `n² × g` matrix, row `x·n + y`.
    pub fn generator_matrix(&self) -> IntegerMatrix {
        let n = self.size;
        IntegerMatrix::from_columns(
            n * n,
            self.generators
                .iter()
                .map(|g| g.iter().map(|(&(x, y), c)| (x.index() * n + y.index(), c.clone())).collect())
                .collect(),
        )
    }
}

/// Generated by the σ-fixed pairs.
pub fn r_minus(sigma: &BraidedSet) -> RSubgroup {
    let generators = sigma
        .elements()
        .flat_map(|x| sigma.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| sigma.is_fixed(x, y))
        .map(Combination::single)
        .collect();
    RSubgroup { size: sigma.size(), generators }
}

/// Generated by `(x,y) + σ(x,y)`.
pub fn r_plus(sigma: &BraidedSet) -> RSubgroup {
    let mut generators: Vec<Combination<Pair>> = Vec::new();
    for x in sigma.elements() {
        for y in sigma.elements() {
            let mut g = Combination::single((x, y));
            g.add_term(sigma.sigma(x, y), BigInt::one());
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
    }
    RSubgroup { size: sigma.size(), generators }
}

/// Right adjoint action of `z` on a pair: `z` crosses both letters leftwards.
fn pair_right(sigma: &BraidedSet, (x1, x2): Pair, z: ElementId) -> Pair {
    let (z1, x2b) = sigma.sigma(x2, z);
    let (_, x1b) = sigma.sigma(x1, z1);
    (x1b, x2b)
}

/// Left adjoint action of `z` on a pair: `z` crosses both letters rightwards.
fn pair_left(sigma: &BraidedSet, z: ElementId, (y1, y2): Pair) -> Pair {
    let (y1b, z1) = sigma.sigma(z, y1);
    let (y2b, _) = sigma.sigma(z1, y2);
    (y1b, y2b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RConditionsReport {
    /// First generator not fixed by σ.
    pub a: Option<usize>,
    /// First (generator, element, acts-from-left) whose translate leaves `R`.
    pub b: Option<(usize, ElementId, bool)>,
    /// First (generator, element) on which the adjoint actions of the
    /// support words `x_i y_i` differ.
    pub c: Option<(usize, ElementId)>,
}

impl RConditionsReport {
    pub fn passes(&self) -> bool {
        self.a.is_none() && self.b.is_none() && self.c.is_none()
    }
}

pub fn check_r_conditions(sigma: &BraidedSet, r: &RSubgroup) -> RConditionsReport {
    let a = r.generators.iter().position(|g| &g.map_keys(|&(x, y)| sigma.sigma(x, y)) != g);

    let gens = r.generator_matrix();
    let n = sigma.size();
    let mut targets = Vec::new();
    let mut tags = Vec::new();
    for (gi, g) in r.generators.iter().enumerate() {
        for z in sigma.elements() {
            for left in [false, true] {
                let moved = g.map_keys(|&p| if left { pair_left(sigma, z, p) } else { pair_right(sigma, p, z) });
                targets.push(moved.iter().map(|(&(x, y), c)| (x.index() * n + y.index(), c.clone())).collect());
                tags.push((gi, z, left));
            }
        }
    }
    let inside = span_contains(&gens, &IntegerMatrix::from_columns(n * n, targets));
    let b = inside.iter().position(|&ok| !ok).map(|i| tags[i]);

    let right_word = |z: ElementId, (x, y): Pair| sigma.sigma(sigma.sigma(z, x).1, y).1;
    let left_word = |(x, y): Pair, z: ElementId| sigma.sigma(x, sigma.sigma(y, z).0).0;
    let mut c = None;
    'c: for (gi, g) in r.generators.iter().enumerate() {
        let support: Vec<Pair> = g.iter().map(|(p, _)| *p).collect();
        for z in sigma.elements() {
            let same_right = support.windows(2).all(|w| right_word(z, w[0]) == right_word(z, w[1]));
            let same_left = support.windows(2).all(|w| left_word(w[0], z) == left_word(w[1], z));
            if !(same_right && same_left) {
                c = Some((gi, z));
                break 'c;
            }
        }
    }
    RConditionsReport { a, b, c }
}

/// Generators of `T_k(X;R)`: all `u·r·v` with `len(u) + len(v) = k − 2`.
pub fn ideal_generators(r: &RSubgroup, k: usize) -> IntegerMatrix {
    let n = r.size;
    let rows = n.pow(k as u32);
    let mut cols = Vec::new();
    if k >= 2 {
        for pos in 0..k - 1 {
            let (nu, nv) = (n.pow(pos as u32), n.pow((k - 2 - pos) as u32));
            for g in &r.generators {
                for u in 0..nu {
                    for v in 0..nv {
                        let col: Vec<(usize, BigInt)> = g
                            .iter()
                            .map(|(&(x, y), c)| (((u * n + x.index()) * n + y.index()) * nv + v, c.clone()))
                            .collect();
                        cols.push(col);
                    }
                }
            }
        }
    }
    IntegerMatrix::from_columns(rows, cols)
}

/// `A ⊗ Id_r` in the (word, coefficient) basis order.
pub fn kron_identity(a: &IntegerMatrix, r: usize) -> IntegerMatrix {
    kron(a, &IntegerMatrix::identity(r))
}

/// The quotient `C_*(X; M; R)` in coordinates `P_k: C_k → ℤ^{d_k}` with
/// sections `S_k` (`P_k S_k = Id`, `ker P_k = M ⊗ T_k`).
#[derive(Debug, Clone)]
pub struct RQuotient {
    pub complex: ChainComplex,
    pub projections: Vec<IntegerMatrix>,
    pub sections: Vec<IntegerMatrix>,
}

pub fn quotient_by_r(sigma: &BraidedSet, r: &RSubgroup, m: &Bimodule, k_max: usize) -> Result<RQuotient> {
    if r.size != sigma.size() {
        return Err(Error::Dimension("R lives over a different set".into()));
    }
    let full = braided_chain_complex(sigma, m, k_max)?;
    let rank = m.rank();
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    for k in 0..=k_max {
        let t = ideal_generators(r, k);
        let snf = smith_normal_form_with_transforms(&t);
        if !snf.torsion().is_empty() {
            return Err(Error::TorsionQuotient);
        }
        let tr = snf.transforms();
        let keep: Vec<usize> = (snf.rank()..t.rows()).collect();
        projections.push(kron_identity(&tr.u.select_rows(&keep), rank));
        sections.push(kron_identity(&tr.u_inv.select_columns(&keep), rank));
    }
    let maps = (0..k_max)
        .map(|j| projections[j].mul(&full.maps()[j])?.mul(&sections[j + 1]))
        .collect::<Result<Vec<_>>>()?;
    let ranks = projections.iter().map(IntegerMatrix::rows).collect();
    let complex = ChainComplex::new(Orientation::Chain, ranks, maps, true)?;
    Ok(RQuotient { complex, projections, sections })
}

/// Betti numbers of `C_*(X; M; R) ⊗ 𝔽_p` in degrees `< k_max`; defined even
/// when the integral quotient has torsion.
pub fn quotient_betti_mod_p(
    sigma: &BraidedSet,
    r: &RSubgroup,
    m: &Bimodule,
    k_max: usize,
    p: u64,
) -> Result<Vec<usize>> {
    let full = braided_chain_complex(sigma, m, k_max)?;
    let rank = m.rank();
    let t: Vec<IntegerMatrix> = (0..=k_max).map(|k| kron_identity(&ideal_generators(r, k), rank)).collect();
    let t_rank: Vec<usize> = t.iter().map(|m| rank_mod_p(m, p)).collect();
    // rank of d̄_k : C_k/T_k → C_{k−1}/T_{k−1}
    let image = |k: usize| -> Result<usize> {
        if k == 0 || k > k_max {
            return Ok(0);
        }
        let stacked = full.maps()[k - 1].hstack(&t[k - 1])?;
        Ok(rank_mod_p(&stacked, p) - t_rank[k - 1])
    };
    (0..k_max)
        .map(|k| Ok(full.rank(k) - t_rank[k] - image(k)? - image(k + 1)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{adjoint_bimodule, trivial_bimodule};
    use crate::braided::word;
    use crate::catalog::*;
    use crate::linalg::AbelianGroup;

    #[test]
    fn indexing_roundtrip() {
        for i in 0..27 {
            assert_eq!(word_index(&index_word(i, 3, 3), 3), i);
        }
        assert_eq!(all_words(2, 2), vec![word(&[0, 0]), word(&[0, 1]), word(&[1, 0]), word(&[1, 1])]);
    }

    #[test]
    fn degree_one_differential() {
        // d_1(m, x) = m·x − x·m
        let s = minmax_braiding(2);
        let m = crate::bimodule::structure_bimodule(&s, 2);
        let c = braided_chain_complex(&s, &m, 1).unwrap();
        let r = m.rank();
        for x in s.elements() {
            for b in 0..r {
                let col = x.index() * r + b;
                let expected = m.right(x).sub(m.left(x)).unwrap();
                for a in 0..r {
                    assert_eq!(c.maps()[0].get(a, col), expected.get(a, b));
                }
            }
        }
        let triv = trivial_bimodule(&s, 1);
        assert!(braided_chain_complex(&s, &triv, 1).unwrap().maps()[0].is_zero());
    }

    #[test]
    fn complexes_square_to_zero() {
        for s in [minmax_braiding(3), flip_braiding(2), size2_family("left-succ").unwrap(), lattice_braiding(&FiniteLattice::divisors(6))] {
            let t = trivial_bimodule(&s, 1);
            assert!(braided_chain_complex(&s, &t, 4).unwrap().verify().holds());
            assert!(braided_cochain_complex(&s, &t, 4).unwrap().verify().holds());
            let adj = adjoint_bimodule(&s);
            assert!(braided_two_sided_complex(&s, &adj.right, &adj.left, 4).unwrap().verify().holds());
        }
    }

    #[test]
    fn d2_formula() {
        // d²f(x₁,x₂) = f(x₁) + f(x₂) − f(x₂') − f(x₁')
        let s = size2_family("right-succ").unwrap();
        let c = braided_cochain_complex(&s, &trivial_bimodule(&s, 1), 2).unwrap();
        let d = &c.maps()[1];
        for w in all_words(2, 2) {
            let (y2, x1) = s.sigma(w[0], w[1]);
            let mut expect = [0i64; 2];
            expect[w[0].index()] += 1;
            expect[w[1].index()] += 1;
            expect[y2.index()] -= 1;
            expect[x1.index()] -= 1;
            for u in 0..2 {
                assert_eq!(d.get(word_index(&w, 2), u), BigInt::from(expect[u]));
            }
        }
        let id = identity_braiding(3);
        assert!(braided_cochain_complex(&id, &trivial_bimodule(&id, 1), 3).unwrap().maps()[1].is_zero());
    }

    #[test]
    fn split_agrees() {
        for s in [minmax_braiding(2), associativity_braiding(&crate::monoid::FiniteMonoid::cyclic(2)).set] {
            let rep = split_differentials(&s, &trivial_bimodule(&s, 1), 4).unwrap();
            assert!(rep.all_agree());
        }
    }

    #[test]
    fn critical_bases() {
        let m = minmax_braiding(3);
        assert_eq!(critical_basis(&m, None, 2), vec![word(&[1, 0]), word(&[2, 0]), word(&[2, 1])]);
        assert!(critical_basis(&identity_braiding(3), None, 2).is_empty());
        assert_eq!(critical_basis(&identity_braiding(3), None, 1).len(), 3);
    }

    #[test]
    fn one_element_and_symmetric() {
        let s = identity_braiding(1);
        let c = critical_complex(&s, None, &trivial_bimodule(&s, 1), 5).unwrap();
        assert_eq!(c.ranks(), &[1, 1, 0, 0, 0, 0]);
        assert_eq!(c.homology_all(), vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::free(0), AbelianGroup::free(0), AbelianGroup::free(0)]);
        let m = minmax_braiding(3);
        let c = critical_complex(&m, None, &trivial_bimodule(&m, 1), 5).unwrap();
        assert_eq!(c.ranks(), &[1, 3, 3, 1, 0, 0]);
        assert!(c.maps().iter().all(IntegerMatrix::is_zero));
    }

    #[test]
    fn r_subgroups() {
        let m = minmax_braiding(2);
        let rm = r_minus(&m);
        assert_eq!(rm.generators.len(), 3);
        assert!(check_r_conditions(&m, &rm).passes());
        let rp = check_r_conditions(&m, &r_plus(&m));
        assert!(rp.a.is_some() && rp.b.is_none() && rp.c.is_none());
        let f = flip_braiding(3);
        let rp = check_r_conditions(&f, &r_plus(&f));
        assert!(rp.passes(), "{rp:?}");
        assert_eq!(r_minus(&identity_braiding(2)).generators.len(), 4);
    }

    #[test]
    fn quotients() {
        let s = minmax_braiding(2);
        let t = trivial_bimodule(&s, 1);
        let q0 = quotient_by_r(&s, &RSubgroup::zero(2), &t, 3).unwrap();
        assert_eq!(q0.complex.homology_all(), braided_chain_complex(&s, &t, 3).unwrap().homology_all());
        let q = quotient_by_r(&s, &r_minus(&s), &t, 3).unwrap();
        assert_eq!(q.complex.ranks(), &[1, 2, 1, 0]);
        let f = flip_braiding(2);
        assert_eq!(quotient_by_r(&f, &r_plus(&f), &trivial_bimodule(&f, 1), 3).unwrap_err(), Error::TorsionQuotient);
        // over 𝔽_3 the symmetric-algebra quotient of the flip is the exterior algebra: 1, 2, 1
        let b = quotient_betti_mod_p(&f, &r_plus(&f), &trivial_bimodule(&f, 1), 3, 3).unwrap();
        assert_eq!(b, vec![1, 2, 1]);
    }
}
