//! Braided cochains and their products: cup (with its left/right split),
//! circle, the homotopy identity relating them, and the Hirsch and pre-Lie
//! defects. Also the pullback of Hochschild cochains along the quantum
//! symmetrizer.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bimodule::{trivial_bimodule, Bimodule};
use crate::braided::{BraidedSet, ElementId, Word};
use crate::brcomplex::{index_word, word_index};
use crate::error::{Error, Result};
use crate::shuffle::{multi_shuffle_coproduct, multi_shuffle_set, quantum_symmetrizer};

/// Coefficients for cochains: a bimodule-algebra, possibly reduced mod `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    algebra: Bimodule,
    modulus: Option<BigInt>,
    trivial_ring: bool,
}

impl Coefficients {
    /// `ℤ` with trivial actions.
    pub fn integers(sigma: &BraidedSet) -> Self {
        Coefficients { algebra: trivial_bimodule(sigma, 1), modulus: None, trivial_ring: true }
    }

    /// `ℤ/m` with trivial actions.
    pub fn modulo(sigma: &BraidedSet, m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        Coefficients { algebra: trivial_bimodule(sigma, 1), modulus: Some(BigInt::from(m)), trivial_ring: true }
    }

    pub fn algebra(sigma: &BraidedSet, algebra: Bimodule) -> Result<Self> {
        algebra.require_bimodule()?;
        algebra.check_generators(sigma)?;
        if !algebra.is_algebra() {
            return Err(Error::CoefficientMismatch("cup products need a product on the coefficients".into()));
        }
        let trivial_ring = algebra.rank() == 1 && algebra.is_trivial();
        Ok(Coefficients { algebra, modulus: None, trivial_ring })
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    /// Rank one, trivial actions: `ℤ` or `ℤ/m`.
    pub fn is_trivial_ring(&self) -> bool {
        self.trivial_ring
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.algebra
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        if let Some(m) = &self.modulus {
            for x in v.iter_mut() {
                *x = x.mod_floor(m);
            }
        }
        v
    }

    pub fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if self.trivial_ring {
            return vec![&a[0] * &b[0]];
        }
        self.algebra.multiply(a, b)
    }

    fn left(&self, x: ElementId, v: &[BigInt]) -> Vec<BigInt> {
        if self.trivial_ring {
            return v.to_vec();
        }
        self.algebra.act_left(x, v)
    }

    fn right(&self, v: &[BigInt], x: ElementId) -> Vec<BigInt> {
        if self.trivial_ring {
            return v.to_vec();
        }
        self.algebra.act_right(v, x)
    }
}

/// A map `X^{×k} → M`, stored densely by word index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    degree: usize,
    values: Vec<Vec<BigInt>>,
}

fn axpy(acc: &mut [BigInt], c: &BigInt, v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

impl Cochain {
    pub fn zero(n: usize, degree: usize, rank: usize) -> Self {
        Cochain { n, degree, values: vec![vec![BigInt::zero(); rank]; n.pow(degree as u32)] }
    }

    pub fn from_fn(n: usize, degree: usize, mut f: impl FnMut(&[ElementId]) -> Vec<BigInt>) -> Self {
        let values = (0..n.pow(degree as u32)).map(|i| f(&index_word(i, n, degree))).collect();
        Cochain { n, degree, values }
    }

    /// Scalar-valued cochain from integer values in word order.
    pub fn from_scalars(n: usize, degree: usize, values: &[i64]) -> Result<Self> {
        if values.len() != n.pow(degree as u32) {
            return Err(Error::Dimension(format!("a {degree}-cochain on {n} letters needs {} values", n.pow(degree as u32))));
        }
        Ok(Cochain { n, degree, values: values.iter().map(|&v| vec![BigInt::from(v)]).collect() })
    }

    pub fn from_values(n: usize, degree: usize, values: Vec<Vec<BigInt>>) -> Result<Self> {
        if values.len() != n.pow(degree as u32) || values.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::Dimension("cochain table has the wrong shape".into()));
        }
        Ok(Cochain { n, degree, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn value(&self, w: &[ElementId]) -> &[BigInt] {
        &self.values[word_index(w, self.n)]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    /// First word (in lexicographic order) with a nonzero value.
    pub fn support_witness(&self) -> Option<Word> {
        self.values
            .iter()
            .position(|v| v.iter().any(|x| !x.is_zero()))
            .map(|i| index_word(i, self.n, self.degree))
    }

    pub fn combine(&self, other: &Cochain, c: &BigInt, coeff: &Coefficients) -> Result<Cochain> {
        if (self.n, self.degree) != (other.n, other.degree) {
            return Err(Error::CoefficientMismatch("cochains of different degrees".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let mut v = a.clone();
                axpy(&mut v, c, b);
                coeff.reduce(v)
            })
            .collect();
        Ok(Cochain { n: self.n, degree: self.degree, values })
    }

    pub fn scaled(&self, c: &BigInt, coeff: &Coefficients) -> Cochain {
        let values = self.values.iter().map(|v| coeff.reduce(v.iter().map(|x| x * c).collect())).collect();
        Cochain { n: self.n, degree: self.degree, values }
    }

    pub fn reduced(&self, coeff: &Coefficients) -> Cochain {
        self.scaled(&BigInt::one(), coeff)
    }

    /// Vanishes on every non-critical word.
    pub fn is_critical(&self, sigma: &BraidedSet, pseudo_unit: Option<ElementId>) -> bool {
        (0..self.values.len()).all(|i| {
            let w = index_word(i, self.n, self.degree);
            let critical = w.windows(2).all(|p| !sigma.is_fixed(p[0], p[1])) && pseudo_unit.is_none_or(|e| !w.contains(&e));
            critical || self.values[i].iter().all(Zero::is_zero)
        })
    }
}

fn check(sigma: &BraidedSet, coeff: &Coefficients, fs: &[&Cochain]) -> Result<()> {
    for f in fs {
        if f.n != sigma.size() || f.rank() != coeff.rank() {
            return Err(Error::CoefficientMismatch(format!(
                "cochain over {} letters with rank-{} values, expected {} and {}",
                f.n,
                f.rank(),
                sigma.size(),
                coeff.rank()
            )));
        }
    }
    Ok(())
}

fn sign_of(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    Both,
    Left,
    Right,
}

fn differential_part(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, part: Part) -> Result<Cochain> {
    check(sigma, coeff, &[f])?;
    let k = f.degree + 1;
    let out = Cochain::from_fn(f.n, k, |w| {
        let mut acc = vec![BigInt::zero(); coeff.rank()];
        for i in 1..=k {
            if part != Part::Right {
                // shuffle sign of moving strand i to the front
                let (x, lw) = sigma.left_face(w, i);
                axpy(&mut acc, &sign_of(i - 1), &coeff.left(x, f.value(&lw)));
            }
            if part != Part::Left {
                let (rw, x) = sigma.right_face(w, i);
                let s = if part == Part::Both { -sign_of(i - 1) } else { sign_of(k - i) };
                axpy(&mut acc, &s, &coeff.right(f.value(&rw), x));
            }
        }
        acc
    });
    Ok(out.reduced(coeff))
}

/// `(df)(w) = Σ (−1)^{i−1}(x'_i·f(lw) − f(rw)·x''_i)`.
pub fn differential(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain) -> Result<Cochain> {
    differential_part(sigma, coeff, f, Part::Both)
}

/// `d_l = λ(Id × f)⧢^{1,k−1}`.
pub fn differential_left(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain) -> Result<Cochain> {
    differential_part(sigma, coeff, f, Part::Left)
}

/// `d_r = ρ(f × Id)⧢^{k−1,1}`, so that `d = d_l + (−1)^k d_r`.
pub fn differential_right(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain) -> Result<Cochain> {
    differential_part(sigma, coeff, f, Part::Right)
}

fn cup_filtered(
    sigma: &BraidedSet,
    coeff: &Coefficients,
    f: &Cochain,
    g: &Cochain,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<Cochain> {
    check(sigma, coeff, &[f, g])?;
    let (p, q) = (f.degree, g.degree);
    let shuffles: Vec<_> = multi_shuffle_set(&[p, q]).into_iter().filter(|s| keep(&s.permutation)).collect();
    let out = Cochain::from_fn(f.n, p + q, |w| {
        let mut acc = vec![BigInt::zero(); coeff.rank()];
        for s in &shuffles {
            let mut u = w.to_vec();
            for &i in s.inverse_lift.0.iter().rev() {
                sigma.act(&mut u, i);
            }
            let prod = coeff.multiply(f.value(&u[..p]), g.value(&u[p..]));
            axpy(&mut acc, &s.sign(), &prod);
        }
        acc
    });
    Ok(out.reduced(coeff))
}

/// `f ⌣ g = μ(f × g)⧢^{p,q}_{−σ}`.
pub fn cup(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    cup_filtered(sigma, coeff, f, g, |_| true)
}

/// The split `f ⌣ g = f ⌣← g + f ⌣→ g` by whether the shuffle sends the
/// first letter of `f`'s block (`⌣←`) or of `g`'s block (`⌣→`) to position 1.
pub fn cup_left_right(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain) -> Result<(Cochain, Cochain)> {
    let p = f.degree;
    let starts_right = |s: &[usize]| s.get(p) == Some(&0);
    let left = cup_filtered(sigma, coeff, f, g, |s| !starts_right(s))?;
    let right = cup_filtered(sigma, coeff, f, g, starts_right)?;
    Ok((left, right))
}

/// Removes the positions of `left` by left faces and those of `right` by
/// right faces, largest position first: the argument at which
/// `d^{k;L,R}(F)` evaluates `F`.
fn iterated_face(sigma: &BraidedSet, w: &[ElementId], left: u32, right: u32) -> Word {
    let mut u = w.to_vec();
    for i in (1..=w.len()).rev() {
        let bit = 1u32 << (i - 1);
        if left & bit != 0 {
            u = sigma.left_face(&u, i).1;
        } else if right & bit != 0 {
            u = sigma.right_face(&u, i).0;
        }
    }
    u
}

/// `⟨L,R⟩ = #{(i,j) ∈ L×R : i > j}`.
fn crossings(l: u32, r: u32) -> u32 {
    let mut count = 0;
    let mut rest = l;
    while rest != 0 {
        let i = rest.trailing_zeros();
        count += (r & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

/// `f ∘ g` of degree `p+q−1`, for trivial commutative coefficients.
pub fn circle(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if !coeff.is_trivial_ring() {
        return Err(Error::CircleCoefficients);
    }
    check(sigma, coeff, &[f, g])?;
    let (p, q) = (f.degree, g.degree);
    if p == 0 || q == 0 {
        return Ok(Cochain::zero(f.n, (p + q).saturating_sub(1), 1));
    }
    let k = p + q - 1;
    let out = Cochain::from_fn(f.n, k, |w| {
        let mut acc = BigInt::zero();
        for t in 1..=k {
            let before: u32 = (1u32 << (t - 1)) - 1;
            let after: u32 = ((1u32 << k) - 1) & !((1u32 << t) - 1);
            // I_1 ⊂ before, I_2 ⊂ after with #I_1 + #I_2 = q − 1
            let mut i1 = before;
            loop {
                let a = i1.count_ones() as usize;
                if a < q {
                    let mut i2 = after;
                    loop {
                        if i2.count_ones() as usize + a == q - 1 {
                            let (j1, j2) = (before & !i1, after & !i2);
                            let e = (q - 1) * j1.count_ones() as usize
                                + crossings(j1, i1) as usize
                                + crossings(i2, j2) as usize;
                            let fw = iterated_face(sigma, w, i2, i1);
                            let gw = iterated_face(sigma, w, j1, j2);
                            let term = &f.value(&fw)[0] * &g.value(&gw)[0];
                            acc += sign_of(e) * term;
                        }
                        if i2 == 0 {
                            break;
                        }
                        i2 = (i2 - 1) & after;
                    }
                }
                if i1 == 0 {
                    break;
                }
                i1 = (i1 - 1) & before;
            }
        }
        vec![acc]
    });
    Ok(out.reduced(coeff))
}

/// Both sides of `d(f∘g) − (−1)^{q−1}(df)∘g − f∘(dg) = (−1)^q(g⌣f − (−1)^{pq} f⌣g)`.
#[derive(Debug, Clone)]
pub struct HomotopyReport {
    pub lhs: Cochain,
    pub rhs: Cochain,
    /// First word on which the two sides differ.
    pub witness: Option<Word>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_homotopy_identity(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain) -> Result<HomotopyReport> {
    if !coeff.is_trivial_ring() {
        return Err(Error::CircleCoefficients);
    }
    let (p, q) = (f.degree, g.degree);
    let rhs = cup(sigma, coeff, g, f)?.combine(&cup(sigma, coeff, f, g)?, &-sign_of(p * q), coeff)?.scaled(&sign_of(q), coeff);
    let lhs = if p + q == 0 {
        // f∘g would have degree −1
        Cochain::zero(f.n, 0, 1)
    } else {
        let a = differential(sigma, coeff, &circle(sigma, coeff, f, g)?)?;
        let b = circle(sigma, coeff, &differential(sigma, coeff, f)?, g)?;
        let c = circle(sigma, coeff, f, &differential(sigma, coeff, g)?)?;
        a.combine(&b, &-sign_of(q + 1), coeff)?.combine(&c, &-BigInt::one(), coeff)?
    };
    let witness = lhs.combine(&rhs, &-BigInt::one(), coeff)?.support_witness();
    Ok(HomotopyReport { lhs, rhs, witness })
}

/// `(f⌣g)∘h − f⌣(g∘h) − (−1)^{|g|(|h|−1)}(f∘h)⌣g`.
pub fn hirsch_defect(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
    let lhs = circle(sigma, coeff, &cup(sigma, coeff, f, g)?, h)?;
    let a = cup(sigma, coeff, f, &circle(sigma, coeff, g, h)?)?;
    let b = cup(sigma, coeff, &circle(sigma, coeff, f, h)?, g)?;
    let e = g.degree * (h.degree + 1);
    lhs.combine(&a, &-BigInt::one(), coeff)?.combine(&b, &-sign_of(e), coeff)
}

/// `(f∘g)∘h − f∘(g∘h) − (−1)^{(|g|−1)(|h|−1)}((f∘h)∘g − f∘(h∘g))`.
pub fn pre_lie_defect(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
    let c = |a: &Cochain, b: &Cochain| circle(sigma, coeff, a, b);
    let left = c(&c(f, g)?, h)?.combine(&c(f, &c(g, h)?)?, &-BigInt::one(), coeff)?;
    let right = c(&c(f, h)?, g)?.combine(&c(f, &c(h, g)?)?, &-BigInt::one(), coeff)?;
    let e = (g.degree + 1) * (h.degree + 1);
    left.combine(&right, &-sign_of(e), coeff)
}

#[derive(Debug, Clone)]
pub struct HirschReport {
    /// A degree-1 triple `(f, g, h)` violating the Hirsch formula.
    pub violation: Option<[Cochain; 3]>,
    pub triples_tested: usize,
    /// Triples with `dh = 0`.
    pub cocycle_triples: usize,
    /// A violation with `dh = 0`; expected to be absent.
    pub cocycle_violation: Option<[Cochain; 3]>,
}

/// Exhaustive search over degree-1 cochains with values in `values`.
pub fn check_hirsch_failure(sigma: &BraidedSet, coeff: &Coefficients, values: &[i64]) -> Result<HirschReport> {
    let n = sigma.size();
    let total = values.len().pow(n as u32);
    let cochain = |mut i: usize| {
        let vals: Vec<i64> = (0..n)
            .map(|_| {
                let v = values[i % values.len()];
                i /= values.len();
                v
            })
            .collect();
        Cochain::from_scalars(n, 1, &vals).map(|c| c.reduced(coeff))
    };
    let all: Vec<Cochain> = (0..total).map(cochain).collect::<Result<_>>()?;
    let mut report = HirschReport { violation: None, triples_tested: 0, cocycle_triples: 0, cocycle_violation: None };
    for h in &all {
        let cocycle = differential(sigma, coeff, h)?.is_zero();
        for f in &all {
            for g in &all {
                report.triples_tested += 1;
                if cocycle {
                    report.cocycle_triples += 1;
                }
                let bad = !hirsch_defect(sigma, coeff, f, g, h)?.is_zero();
                if bad && report.violation.is_none() {
                    report.violation = Some([f.clone(), g.clone(), h.clone()]);
                }
                if bad && cocycle && report.cocycle_violation.is_none() {
                    report.cocycle_violation = Some([f.clone(), g.clone(), h.clone()]);
                }
            }
        }
    }
    Ok(report)
}

/// The symmetry condition `d^{k;1}_l f = d^{k;1}_r f`, under which the
/// left/right cup split passes to cohomology.
pub fn is_symmetric_cochain(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain) -> Result<bool> {
    check(sigma, coeff, &[f])?;
    let k = f.degree + 1;
    Ok((0..f.n.pow(k as u32)).all(|i| {
        let w = index_word(i, f.n, k);
        let (x, lw) = sigma.left_face(&w, 1);
        let (rw, y) = sigma.right_face(&w, 1);
        coeff.reduce(coeff.left(x, f.value(&lw))) == coeff.reduce(coeff.right(f.value(&rw), y))
    }))
}

/// `(QS^*F)(w) = F(QS_k(w))`, where a Hochschild cochain `F` is given by its
/// values on tuples of letters. With a pseudo-unit, tuples containing it are
/// dropped (normalized cochains vanish there).
pub fn qs_pullback(sigma: &BraidedSet, coeff: &Coefficients, pseudo_unit: Option<ElementId>, big_f: &Cochain) -> Result<Cochain> {
    check(sigma, coeff, &[big_f])?;
    let out = Cochain::from_fn(big_f.n, big_f.degree, |w| {
        let mut acc = vec![BigInt::zero(); coeff.rank()];
        for (u, c) in quantum_symmetrizer(sigma, w).iter() {
            if pseudo_unit.is_none_or(|e| !u.contains(&e)) {
                axpy(&mut acc, c, big_f.value(u));
            }
        }
        acc
    });
    Ok(out.reduced(coeff))
}

/// Hochschild cup on letter tuples: `(F⌣G)(w) = μ(F(w_{≤p}), G(w_{>p}))`.
pub fn hochschild_cup(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    check(sigma, coeff, &[f, g])?;
    let p = f.degree;
    let out = Cochain::from_fn(f.n, p + g.degree, |w| coeff.multiply(f.value(&w[..p]), g.value(&w[p..])));
    Ok(out.reduced(coeff))
}

/// `μ²(f × g × h)⧢^{p,q,r}`, the common value of both bracketings of a triple cup.
pub fn triple_cup(sigma: &BraidedSet, coeff: &Coefficients, f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
    check(sigma, coeff, &[f, g, h])?;
    let parts = [f.degree, g.degree, h.degree];
    let k = parts.iter().sum();
    let mut values = Vec::new();
    for i in 0..f.n.pow(k as u32) {
        let w = index_word(i, f.n, k);
        let mut acc = vec![BigInt::zero(); coeff.rank()];
        for (blocks, c) in multi_shuffle_coproduct(sigma, true, &w, &parts)? {
            let fg = coeff.multiply(f.value(&blocks[0]), g.value(&blocks[1]));
            axpy(&mut acc, &c, &coeff.multiply(&fg, h.value(&blocks[2])));
        }
        values.push(coeff.reduce(acc));
    }
    Cochain::from_values(f.n, k, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::word;
    use crate::catalog::*;

    fn scalar(c: &Cochain, w: &[ElementId]) -> i64 {
        i64::try_from(&c.value(w)[0]).unwrap()
    }

    #[test]
    fn cup_degree_one_one() {
        let s = size2_family("right-succ").unwrap();
        let z = Coefficients::integers(&s);
        let f = Cochain::from_scalars(2, 1, &[3, 5]).unwrap();
        let g = Cochain::from_scalars(2, 1, &[7, 11]).unwrap();
        let fg = cup(&s, &z, &f, &g).unwrap();
        let (l, r) = cup_left_right(&s, &z, &f, &g).unwrap();
        for w in crate::brcomplex::all_words(2, 2) {
            let (y2, x2) = s.sigma(w[0], w[1]);
            let expect = scalar(&f, &w[..1]) * scalar(&g, &w[1..]) - scalar(&f, &[y2]) * scalar(&g, &[x2]);
            assert_eq!(scalar(&fg, &w), expect);
            assert_eq!(scalar(&l, &w), scalar(&f, &w[..1]) * scalar(&g, &w[1..]));
            assert_eq!(scalar(&r, &w), -scalar(&f, &[y2]) * scalar(&g, &[x2]));
        }
        // the flip antisymmetrizes; the identity braiding cancels
        let flip = flip_braiding(2);
        let fg = cup(&flip, &z, &f, &g).unwrap();
        assert_eq!(scalar(&fg, &word(&[0, 1])), 3 * 11 - 5 * 7);
        let id = identity_braiding(2);
        assert!(cup(&id, &z, &f, &g).unwrap().is_zero());
    }

    #[test]
    fn circle_small_degrees() {
        let s = size2_family("max-left").unwrap();
        let z = Coefficients::integers(&s);
        let f = Cochain::from_scalars(2, 1, &[2, -3]).unwrap();
        let g = Cochain::from_scalars(2, 1, &[5, 7]).unwrap();
        let fg = circle(&s, &z, &f, &g).unwrap();
        for x in s.elements() {
            assert_eq!(scalar(&fg, &[x]), scalar(&f, &[x]) * scalar(&g, &[x]));
        }
        // f ∈ C², g ∈ C¹: (f∘g)(x₁,x₂) = f(x₁,x₂)(g(x₁) + g(x₂))
        let f2 = Cochain::from_scalars(2, 2, &[1, -2, 4, 3]).unwrap();
        let c = circle(&s, &z, &f2, &g).unwrap();
        for w in crate::brcomplex::all_words(2, 2) {
            assert_eq!(scalar(&c, &w), scalar(&f2, &w) * (scalar(&g, &w[..1]) + scalar(&g, &w[1..])));
        }
        // g∘f = Σ g(x''_i) f(w), with (x''_2, x''_1) = Δ₂(x₁, x₂)
        let c = circle(&s, &z, &g, &f2).unwrap();
        for w in crate::brcomplex::all_words(2, 2) {
            let (a, b) = s.sigma(w[0], w[1]);
            assert_eq!(scalar(&c, &w), (scalar(&g, &[a]) + scalar(&g, &[b])) * scalar(&f2, &w));
        }
    }

    #[test]
    fn homotopy_small() {
        let s = minmax_braiding(2);
        let z7 = Coefficients::modulo(&s, 7);
        let f = Cochain::from_scalars(2, 2, &[1, 2, 3, 4]).unwrap();
        let g = Cochain::from_scalars(2, 1, &[5, 6]).unwrap();
        assert!(check_homotopy_identity(&s, &z7, &f, &g).unwrap().holds());
        assert!(check_homotopy_identity(&s, &z7, &g, &f).unwrap().holds());
        let a = Cochain::from_scalars(2, 0, &[3]).unwrap();
        let b = Cochain::from_scalars(2, 0, &[4]).unwrap();
        let r = check_homotopy_identity(&s, &z7, &a, &b).unwrap();
        assert!(r.holds() && r.rhs.is_zero());
    }

    #[test]
    fn hirsch_needs_non_cocycles() {
        // every 1-cochain is a cocycle for minmax(2)
        let m = minmax_braiding(2);
        let r = check_hirsch_failure(&m, &Coefficients::integers(&m), &[0, 1]).unwrap();
        assert_eq!(r.cocycle_triples, r.triples_tested);
        assert!(r.violation.is_none());
        let c = size2_family("constant").unwrap();
        let r = check_hirsch_failure(&c, &Coefficients::integers(&c), &[0, 1]).unwrap();
        assert!(r.violation.is_some());
        assert!(r.cocycle_triples > 0 && r.cocycle_violation.is_none());
    }

    #[test]
    fn circle_rejects_algebra_coefficients() {
        let s = minmax_braiding(2);
        let m = crate::bimodule::structure_bimodule(&s, 1);
        let coeff = Coefficients::algebra(&s, m).unwrap();
        let f = Cochain::zero(2, 1, coeff.rank());
        assert_eq!(circle(&s, &coeff, &f, &f).unwrap_err(), Error::CircleCoefficients);
    }
}
