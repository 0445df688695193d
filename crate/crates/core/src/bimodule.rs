//! Linear (bi)modules over a braided set, given by integer action matrices.
//!
//! Convention: coefficient vectors are columns and "act by `x`, then by `y`"
//! is the matrix product `R_y · R_x` (right actions) or `L_x · L_y` for
//! `x · (y · m)` (left actions). With `σ(x,y) = (y',x')` the laws read
//!
//! * right module: `R_y R_x = R_{x'} R_{y'}`
//! * left module: `L_x L_y = L_{y'} L_{x'}`
//! * bimodule: `R_y L_x = L_x R_y`

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::braided::{BraidedSet, ElementId, Word};
use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;
use crate::monoid::FiniteMonoid;

/// Sparse integer combination of basis vectors.
pub type SparseVec = Vec<(usize, BigInt)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    rank: usize,
    labels: Vec<String>,
    left: Option<Vec<IntegerMatrix>>,
    right: Option<Vec<IntegerMatrix>>,
    /// `product[i*rank + j] = μ(b_i, b_j)`.
    product: Option<Vec<SparseVec>>,
}

impl Bimodule {
    pub fn new(
        rank: usize,
        left: Option<Vec<IntegerMatrix>>,
        right: Option<Vec<IntegerMatrix>>,
    ) -> Result<Self> {
        for family in [&left, &right].into_iter().flatten() {
            if let Some(m) = family.iter().find(|m| m.rows() != rank || m.cols() != rank) {
                return Err(Error::Dimension(format!(
                    "action matrix is {}×{}, coefficient rank is {rank}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let (Some(l), Some(r)) = (&left, &right) {
            if l.len() != r.len() {
                return Err(Error::Dimension("left and right actions index different sets".into()));
            }
        }
        let labels = (0..rank).map(|i| format!("m{i}")).collect();
        Ok(Bimodule { rank, labels, left, right, product: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank {
            return Err(Error::Dimension("coefficient labels do not match rank".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Attaches a product table, making this a bimodule-algebra candidate.
    pub fn with_product(mut self, product: Vec<SparseVec>) -> Result<Self> {
        if product.len() != self.rank * self.rank {
            return Err(Error::Dimension("product table has the wrong size".into()));
        }
        if product.iter().flatten().any(|(i, _)| *i >= self.rank) {
            return Err(Error::Dimension("product lands outside the basis".into()));
        }
        self.product = Some(product);
        Ok(self)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of elements the actions are indexed by.
    pub fn generators(&self) -> Option<usize> {
        self.left.as_ref().or(self.right.as_ref()).map(Vec::len)
    }

    pub fn has_left(&self) -> bool {
        self.left.is_some()
    }

    pub fn has_right(&self) -> bool {
        self.right.is_some()
    }

    pub fn left(&self, x: ElementId) -> &IntegerMatrix {
        &self.left.as_ref().expect("no left action")[x.index()]
    }

    pub fn right(&self, x: ElementId) -> &IntegerMatrix {
        &self.right.as_ref().expect("no right action")[x.index()]
    }

    pub fn left_actions(&self) -> Option<&[IntegerMatrix]> {
        self.left.as_deref()
    }

    pub fn right_actions(&self) -> Option<&[IntegerMatrix]> {
        self.right.as_deref()
    }

    pub fn product(&self) -> Option<&[SparseVec]> {
        self.product.as_deref()
    }

    pub fn is_algebra(&self) -> bool {
        self.product.is_some()
    }

    /// Bilinear extension of the product table.
    pub fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let table = self.product.as_ref().expect("no product");
        let mut out = vec![BigInt::zero(); self.rank];
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in &table[i * self.rank + j] {
                    out[*k] += ai * bj * c;
                }
            }
        }
        out
    }

    /// `m ↦ x · m`.
    pub fn act_left(&self, x: ElementId, m: &[BigInt]) -> Vec<BigInt> {
        self.left(x).apply(m)
    }

    /// `m ↦ m · x`.
    pub fn act_right(&self, m: &[BigInt], x: ElementId) -> Vec<BigInt> {
        self.right(x).apply(m)
    }

    /// Both actions trivial (identity matrices).
    pub fn is_trivial(&self) -> bool {
        let id = IntegerMatrix::identity(self.rank);
        [&self.left, &self.right].into_iter().flatten().flatten().all(|m| *m == id)
    }

    pub fn require_bimodule(&self) -> Result<()> {
        if self.left.is_none() || self.right.is_none() {
            return Err(Error::Bimodule("both left and right actions are required".into()));
        }
        Ok(())
    }

    pub fn check_generators(&self, sigma: &BraidedSet) -> Result<()> {
        match self.generators() {
            Some(g) if g != sigma.size() => Err(Error::Dimension(format!(
                "coefficients act by {g} elements, braided set has {}",
                sigma.size()
            ))),
            _ => Ok(()),
        }
    }
}

/// `L_x = R_x = Id` on `ℤ^r`.
pub fn trivial_bimodule(sigma: &BraidedSet, r: usize) -> Bimodule {
    let ids = vec![IntegerMatrix::identity(r); sigma.size()];
    let product = (0..r * r)
        .map(|ij| if ij / r == ij % r { vec![(ij / r, BigInt::one())] } else { Vec::new() })
        .collect();
    Bimodule::new(r, Some(ids.clone()), Some(ids))
        .expect("identity matrices")
        .with_product(product)
        .expect("diagonal product")
}

fn permutation_matrix(n: usize, image: impl Fn(usize) -> usize) -> IntegerMatrix {
    IntegerMatrix::from_triplets(n, n, (0..n).map(|b| (image(b), b, BigInt::one())))
}

/// The adjoint modules on `ℤX`: right action `e_x · y = e_{x'}` and left
/// action `x · e_y = e_{y'}`, where `σ(x,y) = (y',x')`.
#[derive(Debug, Clone)]
pub struct AdjointModules {
    pub right: Bimodule,
    pub left: Bimodule,
    /// Whether the two actions commute, i.e. form a bimodule.
    pub compatible: bool,
}

impl AdjointModules {
    pub fn combined(&self) -> Bimodule {
        let mut b = self.right.clone();
        b.left = self.left.left.clone();
        b
    }
}

pub fn adjoint_bimodule(sigma: &BraidedSet) -> AdjointModules {
    let n = sigma.size();
    let labels: Vec<String> = sigma.elements().map(|x| format!("{x}")).collect();
    let right: Vec<IntegerMatrix> = sigma
        .elements()
        .map(|y| permutation_matrix(n, |x| sigma.sigma(ElementId::from(x), y).1.index()))
        .collect();
    let left: Vec<IntegerMatrix> = sigma
        .elements()
        .map(|x| permutation_matrix(n, |y| sigma.sigma(x, ElementId::from(y)).0.index()))
        .collect();
    let right = Bimodule::new(n, None, Some(right)).unwrap().with_labels(labels.clone()).unwrap();
    let left = Bimodule::new(n, Some(left), None).unwrap().with_labels(labels).unwrap();
    let mut out = AdjointModules { right, left, compatible: false };
    out.compatible = verify_bimodule(sigma, &out.combined()).passes();
    out
}

/// `ℤG` with translation actions through `φ: X → G` and the monoid product.
pub fn monoid_bimodule(sigma: &BraidedSet, g: &FiniteMonoid, phi: &[usize]) -> Result<Bimodule> {
    if phi.len() != sigma.size() {
        return Err(Error::Dimension("embedding must map every element of X".into()));
    }
    if let Some(&bad) = phi.iter().find(|&&v| v >= g.size()) {
        return Err(Error::ElementOutOfRange { index: bad, size: g.size() });
    }
    for x in sigma.elements() {
        for y in sigma.elements() {
            let (y2, x2) = sigma.sigma(x, y);
            if g.mul(phi[x.index()], phi[y.index()]) != g.mul(phi[y2.index()], phi[x2.index()]) {
                return Err(Error::Bimodule(format!(
                    "relation {x}·{y} = {y2}·{x2} fails in the monoid"
                )));
            }
        }
    }
    let n = g.size();
    let left = phi.iter().map(|&a| permutation_matrix(n, |b| g.mul(a, b))).collect();
    let right = phi.iter().map(|&a| permutation_matrix(n, |b| g.mul(b, a))).collect();
    let product = (0..n * n).map(|ij| vec![(g.mul(ij / n, ij % n), BigInt::one())]).collect();
    Bimodule::new(n, Some(left), Some(right))?
        .with_labels((0..n).map(|i| format!("g{i}")).collect())?
        .with_product(product)
}

/// The structure monoid truncated above length `max_len`: basis = classes of
/// words of length `≤ max_len` under `xy ~ y'x'`, longer products set to 0.
/// Works for any braiding; for idempotent ones the classes are normal words.
pub fn structure_bimodule(sigma: &BraidedSet, max_len: usize) -> Bimodule {
    let n = sigma.size();
    // union-find over words of each length
    let mut classes: Vec<Word> = Vec::new();
    let mut class_of: BTreeMap<Word, usize> = BTreeMap::new();
    for len in 0..=max_len {
        let total = n.pow(len as u32);
        let words: Vec<Word> = (0..total).map(|i| crate::brcomplex::index_word(i, n, len)).collect();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (i, w) in words.iter().enumerate() {
            for g in 1..len {
                let mut u = w.clone();
                sigma.act(&mut u, g);
                let j = crate::brcomplex::word_index(&u, n);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut rep_class: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, w) in words.into_iter().enumerate() {
            let root = find(&mut parent, i);
            let c = *rep_class.entry(root).or_insert_with(|| {
                classes.push(w.clone());
                classes.len() - 1
            });
            class_of.insert(w, c);
        }
    }
    let r = classes.len();
    let concat = |a: &Word, b: &Word| -> Option<usize> {
        if a.len() + b.len() > max_len {
            return None;
        }
        let w: Word = a.iter().chain(b.iter()).copied().collect();
        Some(class_of[&w])
    };
    let action = |left: bool| -> Vec<IntegerMatrix> {
        sigma
            .elements()
            .map(|x| {
                let xw = alloc::vec![x];
                IntegerMatrix::from_triplets(
                    r,
                    r,
                    classes.iter().enumerate().filter_map(|(b, w)| {
                        let img = if left { concat(&xw, w) } else { concat(w, &xw) };
                        img.map(|a| (a, b, BigInt::one()))
                    }),
                )
            })
            .collect()
    };
    let product = (0..r * r)
        .map(|ij| concat(&classes[ij / r], &classes[ij % r]).map(|c| (c, BigInt::one())).into_iter().collect())
        .collect();
    let labels = classes
        .iter()
        .map(|w| if w.is_empty() { String::from("ε") } else { w.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(".") })
        .collect();
    Bimodule::new(r, Some(action(true)), Some(action(false)))
        .unwrap()
        .with_labels(labels)
        .unwrap()
        .with_product(product)
        .unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BimoduleLaw {
    Right,
    Left,
    Commute,
    PseudoUnit,
    Associativity,
    /// `μ(x·a, b) = x·μ(a, b)`
    AlgebraLeft,
    /// `μ(a, b·x) = μ(a, b)·x`
    AlgebraRight,
    /// `μ(a·x, b) = μ(a, x·b)`
    AlgebraMiddle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleReport {
    /// Laws that were checked, each with its first violation if any.
    pub laws: Vec<(BimoduleLaw, Option<Vec<usize>>)>,
}

impl BimoduleReport {
    pub fn passes(&self) -> bool {
        self.laws.iter().all(|(_, w)| w.is_none())
    }

    pub fn violation(&self, law: BimoduleLaw) -> Option<&Vec<usize>> {
        self.laws.iter().find(|(l, _)| *l == law).and_then(|(_, w)| w.as_ref())
    }

    pub fn checked(&self, law: BimoduleLaw) -> bool {
        self.laws.iter().any(|(l, _)| *l == law)
    }
}

pub fn verify_bimodule(sigma: &BraidedSet, m: &Bimodule) -> BimoduleReport {
    let mut laws = Vec::new();
    let pairs = || sigma.elements().flat_map(|x| sigma.elements().map(move |y| (x, y)));
    let mul = |a: &IntegerMatrix, b: &IntegerMatrix| a.mul(b).expect("square matrices");
    if let Some(r) = &m.right {
        let w = pairs().find(|&(x, y)| {
            let (y2, x2) = sigma.sigma(x, y);
            mul(&r[y.index()], &r[x.index()]) != mul(&r[x2.index()], &r[y2.index()])
        });
        laws.push((BimoduleLaw::Right, w.map(|(x, y)| vec![x.index(), y.index()])));
    }
    if let Some(l) = &m.left {
        let w = pairs().find(|&(x, y)| {
            let (y2, x2) = sigma.sigma(x, y);
            mul(&l[x.index()], &l[y.index()]) != mul(&l[y2.index()], &l[x2.index()])
        });
        laws.push((BimoduleLaw::Left, w.map(|(x, y)| vec![x.index(), y.index()])));
    }
    if let (Some(l), Some(r)) = (&m.left, &m.right) {
        let w = pairs().find(|&(x, y)| mul(&r[y.index()], &l[x.index()]) != mul(&l[x.index()], &r[y.index()]));
        laws.push((BimoduleLaw::Commute, w.map(|(x, y)| vec![x.index(), y.index()])));
    }
    if let Some(e) = sigma.pseudo_unit() {
        let id = IntegerMatrix::identity(m.rank);
        let bad = [&m.left, &m.right].into_iter().flatten().any(|f| f[e.index()] != id);
        laws.push((BimoduleLaw::PseudoUnit, bad.then(|| vec![e.index()])));
    }
    if let Some(table) = &m.product {
        let r = m.rank;
        let basis = |i: usize| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); r];
            v[i] = BigInt::one();
            v
        };
        let dense = |s: &SparseVec| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); r];
            for (i, c) in s {
                v[*i] += c;
            }
            v
        };
        let mut assoc = None;
        'a: for i in 0..r {
            for j in 0..r {
                let ij = dense(&table[i * r + j]);
                for k in 0..r {
                    let jk = dense(&table[j * r + k]);
                    if m.multiply(&ij, &basis(k)) != m.multiply(&basis(i), &jk) {
                        assoc = Some(vec![i, j, k]);
                        break 'a;
                    }
                }
            }
        }
        laws.push((BimoduleLaw::Associativity, assoc));
        let mut compat = |law: BimoduleLaw, f: &dyn Fn(ElementId, usize, usize) -> bool| {
            let mut w = None;
            'c: for x in sigma.elements() {
                for i in 0..r {
                    for j in 0..r {
                        if !f(x, i, j) {
                            w = Some(vec![x.index(), i, j]);
                            break 'c;
                        }
                    }
                }
            }
            laws.push((law, w));
        };
        if m.left.is_some() {
            compat(BimoduleLaw::AlgebraLeft, &|x, i, j| {
                m.multiply(&m.act_left(x, &basis(i)), &basis(j)) == m.act_left(x, &dense(&table[i * r + j]))
            });
        }
        if m.right.is_some() {
            compat(BimoduleLaw::AlgebraRight, &|x, i, j| {
                m.multiply(&basis(i), &m.act_right(&basis(j), x)) == m.act_right(&dense(&table[i * r + j]), x)
            });
        }
        if m.left.is_some() && m.right.is_some() {
            compat(BimoduleLaw::AlgebraMiddle, &|x, i, j| {
                m.multiply(&m.act_right(&basis(i), x), &basis(j)) == m.multiply(&basis(i), &m.act_left(x, &basis(j)))
            });
        }
    }
    BimoduleReport { laws }
}
