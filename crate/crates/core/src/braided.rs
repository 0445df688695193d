//! Finite braided sets and the Coxeter-monoid actions they induce on words.
//!
//! A braiding `σ : X×X → X×X` is stored as a total lookup table. Generators
//! `b_i` of the positive braid monoid (or of the Coxeter monoid, when `σ` is
//! idempotent) act on words by applying `σ` at positions `(i, i+1)`.
//! Positions are 1-indexed in the public API; in a braid word the rightmost
//! generator acts first.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Index of an element of a finite braided set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over a braided set. The empty word is allowed.
pub type Word = Vec<ElementId>;

/// Builds a word from raw indices.
pub fn word(indices: &[u32]) -> Word {
    indices.iter().map(|&i| ElementId(i)).collect()
}

/// A positive braid word `b_{i_1} ⋯ b_{i_t}`, generators 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidWord(pub Vec<usize>);

impl BraidWord {
    pub fn new(generators: Vec<usize>) -> Self {
        BraidWord(generators)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Written product `self · other`.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut g = self.0.clone();
        g.extend_from_slice(&other.0);
        BraidWord(g)
    }

    /// The longest element `Δ_k = b_1 (b_2 b_1) ⋯ (b_{k−1} ⋯ b_1)` as written.
    pub fn delta(k: usize) -> BraidWord {
        let mut g = Vec::new();
        for top in 1..k {
            for i in (1..=top).rev() {
                g.push(i);
            }
        }
        BraidWord(g)
    }

    /// `b_{m,n}`: the last `n` strands cross over the first `m`.
    pub fn block_crossing(m: usize, n: usize) -> BraidWord {
        // written order: last applied first, so build the application order and reverse
        let mut applied = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in ((j + 1)..=(m + j)).rev() {
                applied.push(i);
            }
        }
        applied.reverse();
        BraidWord(applied)
    }
}

/// Outcome of the Yang–Baxter check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeReport {
    pub holds: bool,
    /// Lexicographically smallest violating triple.
    pub witness: Option<[ElementId; 3]>,
}

/// Outcome of the idempotency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotencyReport {
    pub holds: bool,
    pub witness: Option<[ElementId; 2]>,
}

/// Outcome of the (bounded) pseudo-unit check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoUnitReport {
    pub element: ElementId,
    /// First `x` with `σ(1,x)` or `σ(x,1)` outside `{(1,x),(x,1)}`.
    pub condition1_witness: Option<ElementId>,
    /// First normal word that stops being normal when one pseudo-unit letter is erased.
    pub condition2_witness: Option<Word>,
    /// Maximal normal-word length examined for condition 2.
    pub bound: usize,
}

impl PseudoUnitReport {
    pub fn passes(&self) -> bool {
        self.condition1_witness.is_none() && self.condition2_witness.is_none()
    }
}

/// Which braided-semigroup property failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupLaw {
    /// Word braiding of normal words is not normal.
    Restriction,
    /// `σ(u∗v, w) = (w'', u'∗v')`.
    ProductLeft,
    /// `σ(u, v∗w) = (v'∗w', u'')`.
    ProductRight,
    /// `w'∗v' = v∗w`.
    Commutativity,
    /// Concatenation of `σ^N(v,w)` equals `v∗w`.
    Concatenation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupViolation {
    pub law: SemigroupLaw,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub violation: Option<SemigroupViolation>,
}

impl SemigroupReport {
    pub fn passes(&self) -> bool {
        self.violation.is_none()
    }
}

/// A finite set with a total table for `σ`.
#[derive(Clone, PartialEq, Eq)]
pub struct BraidedSet {
    size: usize,
    table: Vec<(ElementId, ElementId)>,
    pseudo_unit: Option<ElementId>,
    ybe: bool,
    idempotent: bool,
}

impl fmt::Debug for BraidedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BraidedSet")
            .field("size", &self.size)
            .field("pseudo_unit", &self.pseudo_unit)
            .field("table", &self.table.iter().map(|(a, b)| (a.0, b.0)).collect::<Vec<_>>())
            .finish()
    }
}

impl BraidedSet {
    /// Row-major table: entry `x*n + y` holds `σ(x, y)`.
    pub fn new(size: usize, table: Vec<(ElementId, ElementId)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySet);
        }
        if table.len() != size * size {
            return Err(Error::TableSize { expected: size * size, found: table.len() });
        }
        for &(a, b) in &table {
            for e in [a, b] {
                if e.index() >= size {
                    return Err(Error::ElementOutOfRange { index: e.index(), size });
                }
            }
        }
        let mut s = BraidedSet { size, table, pseudo_unit: None, ybe: false, idempotent: false };
        s.ybe = s.check_ybe().holds;
        s.idempotent = s.check_idempotent().holds;
        Ok(s)
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let (a, b) = f(x, y);
                table.push((ElementId::from(a), ElementId::from(b)));
            }
        }
        Self::new(size, table)
    }

    /// Attaches a pseudo-unit after verifying it with the default bound.
    pub fn with_pseudo_unit(mut self, e: ElementId) -> Result<Self> {
        let report = self.check_pseudo_unit(e, DEFAULT_PSEUDO_UNIT_BOUND)?;
        if !report.passes() {
            return Err(Error::NotPseudoUnit(format!("{report:?}")));
        }
        self.pseudo_unit = Some(e);
        Ok(self)
    }

    pub fn without_pseudo_unit(mut self) -> Self {
        self.pseudo_unit = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[(ElementId, ElementId)] {
        &self.table
    }

    pub fn pseudo_unit(&self) -> Option<ElementId> {
        self.pseudo_unit
    }

    pub fn is_ybe(&self) -> bool {
        self.ybe
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size as u32).map(ElementId)
    }

    #[inline]
    pub fn sigma(&self, x: ElementId, y: ElementId) -> (ElementId, ElementId) {
        self.table[x.index() * self.size + y.index()]
    }

    #[inline]
    pub fn is_fixed(&self, x: ElementId, y: ElementId) -> bool {
        self.sigma(x, y) == (x, y)
    }

    pub fn check_word(&self, w: &[ElementId]) -> Result<()> {
        match w.iter().find(|e| e.index() >= self.size) {
            Some(e) => Err(Error::ElementOutOfRange { index: e.index(), size: self.size }),
            None => Ok(()),
        }
    }

    pub fn check_ybe(&self) -> YbeReport {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let mut lhs = [x, y, z];
                    self.act(&mut lhs, 1);
                    self.act(&mut lhs, 2);
                    self.act(&mut lhs, 1);
                    let mut rhs = [x, y, z];
                    self.act(&mut rhs, 2);
                    self.act(&mut rhs, 1);
                    self.act(&mut rhs, 2);
                    if lhs != rhs {
                        return YbeReport { holds: false, witness: Some([x, y, z]) };
                    }
                }
            }
        }
        YbeReport { holds: true, witness: None }
    }

    pub fn check_idempotent(&self) -> IdempotencyReport {
        for x in self.elements() {
            for y in self.elements() {
                let (a, b) = self.sigma(x, y);
                if self.sigma(a, b) != (a, b) {
                    return IdempotencyReport { holds: false, witness: Some([x, y]) };
                }
            }
        }
        IdempotencyReport { holds: true, witness: None }
    }

    /// Applies `b_i` in place, 1-indexed; the caller guarantees `1 ≤ i < w.len()`.
    #[inline]
    pub(crate) fn act(&self, w: &mut [ElementId], i: usize) {
        let (a, b) = self.sigma(w[i - 1], w[i]);
        w[i - 1] = a;
        w[i] = b;
    }

    pub fn apply_generator(&self, w: &[ElementId], i: usize) -> Result<Word> {
        self.check_word(w)?;
        if i == 0 || i >= w.len() {
            return Err(Error::GeneratorOutOfRange { index: i, strands: w.len() });
        }
        let mut out = w.to_vec();
        self.act(&mut out, i);
        Ok(out)
    }

    /// Acts by a braid word, rightmost generator first.
    pub fn apply_braid_word(&self, w: &[ElementId], b: &BraidWord) -> Result<Word> {
        self.check_word(w)?;
        if let Some(&i) = b.0.iter().find(|&&i| i == 0 || i >= w.len()) {
            return Err(Error::GeneratorOutOfRange { index: i, strands: w.len() });
        }
        let mut out = w.to_vec();
        for &i in b.0.iter().rev() {
            self.act(&mut out, i);
        }
        Ok(out)
    }

    pub(crate) fn delta_in_place(&self, w: &mut [ElementId]) {
        let k = w.len();
        for top in (1..k).rev() {
            for i in 1..=top {
                self.act(w, i);
            }
        }
    }

    /// `Δ_k(w)`, the σ-normal form of `w`.
    pub fn delta(&self, w: &[ElementId]) -> Result<Word> {
        if !self.idempotent {
            return Err(Error::NotIdempotent);
        }
        self.check_word(w)?;
        let mut out = w.to_vec();
        self.delta_in_place(&mut out);
        Ok(out)
    }

    pub fn is_normal(&self, w: &[ElementId]) -> bool {
        w.windows(2).all(|p| self.is_fixed(p[0], p[1]))
    }

    /// No adjacent pair is fixed by σ.
    pub fn is_critical(&self, w: &[ElementId]) -> bool {
        w.windows(2).all(|p| !self.is_fixed(p[0], p[1]))
    }

    pub fn star_product(&self, v: &[ElementId], w: &[ElementId]) -> Result<Word> {
        if !self.idempotent {
            return Err(Error::NotIdempotent);
        }
        self.check_word(v)?;
        self.check_word(w)?;
        if !self.is_normal(v) || !self.is_normal(w) {
            return Err(Error::NotNormal);
        }
        let mut out = Vec::with_capacity(v.len() + w.len());
        out.extend_from_slice(v);
        out.extend_from_slice(w);
        self.delta_in_place(&mut out);
        Ok(out)
    }

    /// Product of the reduced structure monoid on pseudo-unit-free normal words.
    pub fn reduced_star_product(
        &self,
        e: ElementId,
        v: &[ElementId],
        w: &[ElementId],
    ) -> Result<Word> {
        if v.contains(&e) || w.contains(&e) {
            return Err(Error::ContainsPseudoUnit);
        }
        Ok(reduce_word(&self.star_product(v, w)?, e))
    }

    /// The word-extended braiding `b_{m,n}(v, w) = (w', v')`.
    pub fn word_braiding(&self, v: &[ElementId], w: &[ElementId]) -> (Word, Word) {
        let m = v.len();
        let mut buf: Word = v.iter().chain(w.iter()).copied().collect();
        for j in 0..w.len() {
            for i in ((j + 1)..=(m + j)).rev() {
                self.act(&mut buf, i);
            }
        }
        let v2 = buf.split_off(w.len());
        (buf, v2)
    }

    /// Left face of position `i` (1-indexed): `b_1 ⋯ b_{i−1}` carries `x_i` to the
    /// front; returns `(x'_i, x'_1 … x'_{i−1} x_{i+1} … x_k)`.
    pub fn left_face(&self, w: &[ElementId], i: usize) -> (ElementId, Word) {
        let mut buf = w.to_vec();
        for j in (1..i).rev() {
            self.act(&mut buf, j);
        }
        let x = buf.remove(0);
        (x, buf)
    }

    /// Right face of position `i`: `b_{k−i} ⋯ b_1` on `x_i … x_k` carries `x_i` to
    /// the back; returns `(x_1 … x_{i−1} x''_{i+1} … x''_k, x''_i)`.
    pub fn right_face(&self, w: &[ElementId], i: usize) -> (Word, ElementId) {
        let mut buf = w.to_vec();
        for j in i..w.len() {
            self.act(&mut buf, j);
        }
        let x = buf.pop().expect("right face of empty word");
        (buf, x)
    }

    /// All σ-normal words of length exactly `len`, lexicographically.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        let mut layer: Vec<Word> = alloc::vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for y in self.elements() {
                    if w.last().is_none_or(|&x| self.is_fixed(x, y)) {
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

    /// All σ-normal words of length `≤ max_len`, by length then lexicographically.
    pub fn normal_words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| self.normal_words(l)).collect()
    }

    /// Bounded check of the two pseudo-unit conditions for `e`.
    pub fn check_pseudo_unit(&self, e: ElementId, bound: usize) -> Result<PseudoUnitReport> {
        if !self.idempotent {
            return Err(Error::NotIdempotent);
        }
        self.check_word(&[e])?;
        let allowed = |x: ElementId, p: (ElementId, ElementId)| p == (e, x) || p == (x, e);
        let condition1_witness = self
            .elements()
            .find(|&x| !allowed(x, self.sigma(e, x)) || !allowed(x, self.sigma(x, e)));
        let mut condition2_witness = None;
        'outer: for w in self.normal_words_up_to(bound) {
            for (pos, _) in w.iter().enumerate().filter(|(_, &c)| c == e) {
                let mut u = w.clone();
                u.remove(pos);
                if !self.is_normal(&u) {
                    condition2_witness = Some(w);
                    break 'outer;
                }
            }
        }
        Ok(PseudoUnitReport { element: e, condition1_witness, condition2_witness, bound })
    }

    /// Exhaustive braided-commutative-semigroup check on normal words of length `≤ max_len`.
    pub fn verify_braided_semigroup(&self, max_len: usize) -> Result<SemigroupReport> {
        if !self.idempotent {
            return Err(Error::NotIdempotent);
        }
        let words = self.normal_words_up_to(max_len);
        let star = |a: &[ElementId], b: &[ElementId]| {
            let mut out: Word = a.iter().chain(b.iter()).copied().collect();
            self.delta_in_place(&mut out);
            out
        };
        let fail = |law, ws: &[&Word]| SemigroupReport {
            max_len,
            words_checked: words.len(),
            violation: Some(SemigroupViolation { law, words: ws.iter().map(|w| (*w).clone()).collect() }),
        };
        for v in &words {
            for w in &words {
                let (w1, v1) = self.word_braiding(v, w);
                if !self.is_normal(&w1) || !self.is_normal(&v1) {
                    return Ok(fail(SemigroupLaw::Restriction, &[v, w]));
                }
                let vw = star(v, w);
                if star(&w1, &v1) != vw {
                    return Ok(fail(SemigroupLaw::Commutativity, &[v, w]));
                }
                let concat: Word = w1.iter().chain(v1.iter()).copied().collect();
                if concat != vw {
                    return Ok(fail(SemigroupLaw::Concatenation, &[v, w]));
                }
            }
        }
        for u in &words {
            for v in &words {
                for w in &words {
                    // σ(u∗v, w) = (w'', u'∗v')
                    let (w1, v1) = self.word_braiding(v, w);
                    let (w2, u1) = self.word_braiding(u, &w1);
                    if self.word_braiding(&star(u, v), w) != (w2, star(&u1, &v1)) {
                        return Ok(fail(SemigroupLaw::ProductLeft, &[u, v, w]));
                    }
                    // σ(u, v∗w) = (v'∗w', u'')
                    let (v1, u1) = self.word_braiding(u, v);
                    let (w1, u2) = self.word_braiding(&u1, w);
                    if self.word_braiding(u, &star(v, w)) != (star(&v1, &w1), u2) {
                        return Ok(fail(SemigroupLaw::ProductRight, &[u, v, w]));
                    }
                }
            }
        }
        Ok(SemigroupReport { max_len, words_checked: words.len(), violation: None })
    }
}

pub const DEFAULT_PSEUDO_UNIT_BOUND: usize = 4;

/// Erases every occurrence of `e`.
pub fn reduce_word(w: &[ElementId], e: ElementId) -> Word {
    w.iter().copied().filter(|&c| c != e).collect()
}
