//! Named idempotent braidings and brute-force classification on small sets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::braided::{BraidedSet, ElementId};
use crate::error::{Error, Result};
use crate::monoid::{permutations, FiniteMonoid};

pub fn identity_braiding(n: usize) -> BraidedSet {
    BraidedSet::from_fn(n, |x, y| (x, y)).expect("n ≥ 1")
}

/// `σ(x,y) = (min, max)`: Δ is bubble sort, normal words are weakly increasing.
pub fn minmax_braiding(n: usize) -> BraidedSet {
    BraidedSet::from_fn(n, |x, y| (x.min(y), x.max(y))).expect("n ≥ 1")
}

/// The involutive flip `σ(x,y) = (y,x)`; a braiding but not idempotent.
pub fn flip_braiding(n: usize) -> BraidedSet {
    BraidedSet::from_fn(n, |x, y| (y, x)).expect("n ≥ 1")
}

/// A finite lattice with meet and join tables, checked to be distributive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteLattice {
    pub fn new(size: usize, meet: Vec<usize>, join: Vec<usize>) -> Result<Self> {
        let labels = (0..size).map(|i| format!("{i}")).collect();
        Self::with_labels(size, meet, join, labels)
    }

    pub fn with_labels(
        size: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySet);
        }
        for t in [&meet, &join] {
            if t.len() != size * size {
                return Err(Error::TableSize { expected: size * size, found: t.len() });
            }
            if let Some(&bad) = t.iter().find(|&&v| v >= size) {
                return Err(Error::ElementOutOfRange { index: bad, size });
            }
        }
        let l = FiniteLattice { size, meet, join, labels };
        let axiom = |name: &str, a: usize, b: usize, c: usize| {
            Err(Error::LatticeAxiom(format!("{name} fails at ({a},{b},{c})")))
        };
        for a in 0..size {
            for b in 0..size {
                if l.meet(a, b) != l.meet(b, a) || l.join(a, b) != l.join(b, a) {
                    return axiom("commutativity", a, b, 0);
                }
                if l.meet(a, l.join(a, b)) != a || l.join(a, l.meet(a, b)) != a {
                    return axiom("absorption", a, b, 0);
                }
                for c in 0..size {
                    if l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c))
                        || l.join(l.join(a, b), c) != l.join(a, l.join(b, c))
                    {
                        return axiom("associativity", a, b, c);
                    }
                    if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))
                        || l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c))
                    {
                        return axiom("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(l)
    }

    /// `{0 < 1 < ⋯ < n−1}`.
    pub fn chain(n: usize) -> Self {
        let meet = (0..n * n).map(|i| (i / n).min(i % n)).collect();
        let join = (0..n * n).map(|i| (i / n).max(i % n)).collect();
        Self::new(n, meet, join).expect("chains are distributive")
    }

    /// Divisors of `m` under gcd/lcm, indexed in increasing order.
    pub fn divisors(m: u64) -> Self {
        use num_integer::Integer;
        let divs: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        let n = divs.len();
        let idx = |v: u64| divs.binary_search(&v).unwrap();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for &a in &divs {
            for &b in &divs {
                meet.push(idx(a.gcd(&b)));
                join.push(idx(a.lcm(&b)));
            }
        }
        let labels = divs.iter().map(|d| format!("{d}")).collect();
        Self::with_labels(n, meet, join, labels).expect("divisor lattices are distributive")
    }

    /// Subsets of a `k`-element set as bitmasks under ∩/∪.
    pub fn boolean(k: u32) -> Self {
        let n = 1usize << k;
        let meet = (0..n * n).map(|i| (i / n) & (i % n)).collect();
        let join = (0..n * n).map(|i| (i / n) | (i % n)).collect();
        Self::new(n, meet, join).expect("boolean lattices are distributive")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }
}

/// `σ(x,y) = (x ∧ y, x ∨ y)`.
pub fn lattice_braiding(l: &FiniteLattice) -> BraidedSet {
    BraidedSet::from_fn(l.size(), |x, y| (l.meet(x, y), l.join(x, y))).expect("lattice nonempty")
}

/// The braiding attached to an exact factorization `G = HK`, on `X = H ∪ K`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub set: BraidedSet,
    pub monoid: FiniteMonoid,
    /// `G`-index of each element of `X`, increasing.
    pub elements: Vec<usize>,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    /// `HK`-decomposition of every element of `G`.
    pub decomposition: Vec<(usize, usize)>,
}

impl Factorization {
    /// The element of `X` representing `g ∈ H ∪ K`.
    pub fn element(&self, g: usize) -> Option<ElementId> {
        self.elements.binary_search(&g).ok().map(ElementId::from)
    }

    pub fn group_element(&self, x: ElementId) -> usize {
        self.elements[x.index()]
    }

    pub fn unit(&self) -> ElementId {
        self.element(self.monoid.unit()).expect("unit lies in H")
    }

    /// `H̄` and `K̄` as elements of `X`.
    pub fn h_bar(&self) -> Vec<ElementId> {
        let u = self.monoid.unit();
        self.h.iter().filter(|&&g| g != u).map(|&g| self.element(g).unwrap()).collect()
    }

    pub fn k_bar(&self) -> Vec<ElementId> {
        let u = self.monoid.unit();
        self.k.iter().filter(|&&g| g != u).map(|&g| self.element(g).unwrap()).collect()
    }

    pub fn in_h(&self, x: ElementId) -> bool {
        self.h.binary_search(&self.group_element(x)).is_ok()
    }

    pub fn in_k(&self, x: ElementId) -> bool {
        self.k.binary_search(&self.group_element(x)).is_ok()
    }
}

/// `σ(x,y) = (y',x')` with `y' ∈ H`, `x' ∈ K`, `y'x' = xy`; pseudo-unit `1`.
pub fn factorization_braiding(g: &FiniteMonoid, h: &[usize], k: &[usize]) -> Result<Factorization> {
    let mut h = h.to_vec();
    let mut k = k.to_vec();
    h.sort_unstable();
    h.dedup();
    k.sort_unstable();
    k.dedup();
    let decomposition = g.exact_factorization(&h, &k)?;
    let mut elements: Vec<usize> = h.iter().chain(k.iter()).copied().collect();
    elements.sort_unstable();
    elements.dedup();
    let pos = |v: usize| elements.binary_search(&v).unwrap();
    let set = BraidedSet::from_fn(elements.len(), |x, y| {
        let (a, b) = decomposition[g.mul(elements[x], elements[y])];
        (pos(a), pos(b))
    })?;
    let unit = ElementId::from(pos(g.unit()));
    let set = set.with_pseudo_unit(unit)?;
    Ok(Factorization { set, monoid: g.clone(), elements, h, k, decomposition })
}

/// Trivial factorization `G = {1}·G`: `σ(g,g') = (1, gg')`.
pub fn associativity_braiding(g: &FiniteMonoid) -> Factorization {
    let all: Vec<usize> = (0..g.size()).collect();
    factorization_braiding(g, &[g.unit()], &all).expect("trivial factorization is exact")
}

pub const SIZE2_TAGS: [&str; 16] = [
    "identity",
    "constant",
    "left-id",
    "left-succ",
    "left-zero",
    "right-id",
    "right-succ",
    "right-zero",
    "plus-left",
    "max-left",
    "plus-right",
    "max-right",
    "min-left",
    "min-right",
    "maxmax",
    "minmax",
];

/// The sixteen idempotent braidings on `{0,1}`, one per isomorphism class.
pub fn size2_family(tag: &str) -> Result<BraidedSet> {
    type F = fn(usize, usize) -> (usize, usize);
    let f: F = match tag {
        "identity" => |x, y| (x, y),
        "constant" => |_, _| (0, 0),
        "left-id" => |x, _| (x, x),
        "left-succ" => |x, _| (x, (x + 1) % 2),
        "left-zero" => |x, _| (x, 0),
        "right-id" => |_, y| (y, y),
        "right-succ" => |_, y| ((y + 1) % 2, y),
        "right-zero" => |_, y| (0, y),
        "plus-left" => |x, y| ((x + y) % 2, 0),
        "max-left" => |x, y| (x.max(y), 0),
        "plus-right" => |x, y| (0, (x + y) % 2),
        "max-right" => |x, y| (0, x.max(y)),
        "min-left" => |x, y| (x.min(y), y),
        "min-right" => |x, y| (x, x.min(y)),
        "maxmax" => |x, y| (x.max(y), x.max(y)),
        "minmax" => |x, y| (x.min(y), x.max(y)),
        _ => return Err(Error::UnknownTag(tag.into())),
    };
    BraidedSet::from_fn(2, f)
}

/// A relabeling `φ` with `(φ×φ)∘σ_a = σ_b∘(φ×φ)`.
pub fn braided_set_isomorphic(a: &BraidedSet, b: &BraidedSet) -> Option<Vec<ElementId>> {
    if a.size() != b.size() {
        return None;
    }
    permutations(a.size()).into_iter().find_map(|p| {
        let phi = |x: ElementId| ElementId::from(p[x.index()]);
        let ok = a.elements().all(|x| {
            a.elements().all(|y| {
                let (u, v) = a.sigma(x, y);
                b.sigma(phi(x), phi(y)) == (phi(u), phi(v))
            })
        });
        ok.then(|| p.iter().map(|&i| ElementId::from(i)).collect())
    })
}

#[derive(Debug, Clone)]
pub struct IsoClassReport {
    pub size: usize,
    /// Canonical (lexicographically least relabeled table) representatives.
    pub classes: Vec<BraidedSet>,
    /// Number of enumerated braidings isomorphic to each representative.
    pub orbit_sizes: Vec<usize>,
    pub raw_count: usize,
}

pub const MAX_ENUMERATION_SIZE: usize = 3;

/// All idempotent braidings on an `n`-element set, up to relabeling.
///
/// An idempotent σ is determined by its fixed set `F ⊂ X×X` together with an
/// arbitrary map from the complement into `F`, so candidates are generated in
/// that form and then filtered by the Yang–Baxter equation.
pub fn enumerate_idempotent_braidings(n: usize) -> Result<IsoClassReport> {
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::EnumerationBound);
    }
    let pairs = n * n;
    let perms = permutations(n);
    let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut raw_count = 0usize;
    let mut table = vec![0u8; pairs];
    for mask in 1u32..(1 << pairs) {
        let fixed: Vec<u8> = (0..pairs as u8).filter(|&p| mask >> p & 1 == 1).collect();
        let free: Vec<usize> = (0..pairs).filter(|&p| mask >> p & 1 == 0).collect();
        for &p in &fixed {
            table[p as usize] = p;
        }
        // odometer over maps free → fixed
        let mut digits = vec![0usize; free.len()];
        loop {
            for (slot, &p) in free.iter().enumerate() {
                table[p] = fixed[digits[slot]];
            }
            if ybe_table(n, &table) {
                raw_count += 1;
                *classes.entry(canonical_table(n, &table, &perms)).or_insert(0) += 1;
            }
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < fixed.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    let mut reps = Vec::with_capacity(classes.len());
    let mut orbit_sizes = Vec::with_capacity(classes.len());
    for (t, count) in classes {
        let s = BraidedSet::from_fn(n, |x, y| {
            let p = t[x * n + y] as usize;
            (p / n, p % n)
        })?;
        reps.push(s);
        orbit_sizes.push(count);
    }
    Ok(IsoClassReport { size: n, classes: reps, orbit_sizes, raw_count })
}

// Tables encode σ(x,y) as the pair index a*n + b.
fn ybe_table(n: usize, t: &[u8]) -> bool {
    let s = |a: usize, b: usize| {
        let p = t[a * n + b] as usize;
        (p / n, p % n)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (a, b) = s(x, y);
                let (b, c) = s(b, z);
                let (a, b) = s(a, b);
                let (q, r) = s(y, z);
                let (p, q) = s(x, q);
                let (q, r) = s(q, r);
                if (a, b, c) != (p, q, r) {
                    return false;
                }
            }
        }
    }
    true
}

fn canonical_table(n: usize, t: &[u8], perms: &[Vec<usize>]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut out = vec![0u8; n * n];
    for p in perms {
        let mut inv = vec![0usize; n];
        for (i, &pi) in p.iter().enumerate() {
            inv[pi] = i;
        }
        // relabeled σ'(x,y) = φ σ(φ⁻¹x, φ⁻¹y)
        for x in 0..n {
            for y in 0..n {
                let q = t[inv[x] * n + inv[y]] as usize;
                out[x * n + y] = (p[q / n] * n + p[q % n]) as u8;
            }
        }
        if best.as_ref().is_none_or(|b| out < *b) {
            best = Some(out.clone());
        }
    }
    best.unwrap()
}
