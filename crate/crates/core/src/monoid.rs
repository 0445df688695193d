//! Finite monoids given by multiplication tables, with the submonoid and
//! exact-factorization checks needed by the factorization braiding.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    unit: usize,
    table: Vec<usize>,
}

impl FiniteMonoid {
    /// Row-major table, `table[a*n + b] = a·b`. Associativity and the unit
    /// laws are checked exhaustively.
    pub fn new(size: usize, unit: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySet);
        }
        if table.len() != size * size {
            return Err(Error::TableSize { expected: size * size, found: table.len() });
        }
        if unit >= size {
            return Err(Error::ElementOutOfRange { index: unit, size });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(Error::ElementOutOfRange { index: bad, size });
        }
        let m = FiniteMonoid { size, unit, table };
        for a in 0..size {
            if m.mul(unit, a) != a || m.mul(a, unit) != a {
                return Err(Error::MonoidAxiom(format!("unit law fails at {a}")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = m.mul(a, b);
                for c in 0..size {
                    if m.mul(ab, c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::MonoidAxiom(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        FiniteMonoid { size: 1, unit: 0, table: vec![0] }
    }

    /// ℤ/n written multiplicatively; element `i` is the generator to the power `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|ab| (ab / n + ab % n) % n).collect();
        FiniteMonoid { size: n, unit: 0, table }
    }

    /// Direct product; `(a, b)` has index `a * other.size + b`.
    pub fn product(&self, other: &FiniteMonoid) -> Self {
        let n = self.size * other.size;
        let split = |i: usize| (i / other.size, i % other.size);
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = split(x);
                let (c, d) = split(y);
                table.push(self.mul(a, c) * other.size + other.mul(b, d));
            }
        }
        FiniteMonoid { size: n, unit: self.unit * other.size + other.unit, table }
    }

    /// The symmetric group on `{0,…,n−1}`, permutations in lexicographic
    /// order of their one-line notation, product `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut table = Vec::with_capacity(perms.len() * perms.len());
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                table.push(index(&st));
            }
        }
        FiniteMonoid { size: perms.len(), unit: 0, table }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn product_of(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.unit, |acc, g| self.mul(acc, g))
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|b| self.mul(a, b) == self.unit))
    }

    /// Smallest submonoid containing `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[self.unit] = true;
        let mut stack = vec![self.unit];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.size).filter(|&i| seen[i]).collect()
    }

    pub fn check_submonoid(&self, subset: &[usize]) -> Result<()> {
        let mut member = vec![false; self.size];
        for &a in subset {
            if a >= self.size {
                return Err(Error::ElementOutOfRange { index: a, size: self.size });
            }
            member[a] = true;
        }
        if !member[self.unit] {
            return Err(Error::Factorization(format!("subset {subset:?} misses the unit")));
        }
        for &a in subset {
            for &b in subset {
                if !member[self.mul(a, b)] {
                    return Err(Error::Factorization(format!(
                        "subset {subset:?} not closed: {a}·{b} = {}",
                        self.mul(a, b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Verifies `G = HK` is an exact factorization and returns, for each
    /// `g`, its decomposition `(h, k)`.
    pub fn exact_factorization(&self, h: &[usize], k: &[usize]) -> Result<Vec<(usize, usize)>> {
        self.check_submonoid(h)?;
        self.check_submonoid(k)?;
        let mut decomp: Vec<Option<(usize, usize)>> = vec![None; self.size];
        for &a in h {
            for &b in k {
                let g = self.mul(a, b);
                if let Some((a0, b0)) = decomp[g] {
                    if (a0, b0) != (a, b) {
                        return Err(Error::Factorization(format!(
                            "element {g} decomposes twice: {a0}·{b0} and {a}·{b}"
                        )));
                    }
                }
                decomp[g] = Some((a, b));
            }
        }
        decomp
            .into_iter()
            .enumerate()
            .map(|(g, d)| d.ok_or_else(|| Error::Factorization(format!("element {g} is not a product hk"))))
            .collect()
    }

    /// A bijection `φ` with `φ(ab) = φ(a)φ(b)`, if one exists (brute force).
    pub fn isomorphism(&self, other: &FiniteMonoid) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[self.unit] = other.unit;
        used[other.unit] = true;
        let order: Vec<usize> = (0..n).filter(|&i| i != self.unit).collect();
        fn consistent(a: &FiniteMonoid, b: &FiniteMonoid, phi: &[usize]) -> bool {
            for x in 0..a.size {
                if phi[x] == usize::MAX {
                    continue;
                }
                for y in 0..a.size {
                    if phi[y] == usize::MAX {
                        continue;
                    }
                    let z = phi[a.mul(x, y)];
                    if z != usize::MAX && z != b.mul(phi[x], phi[y]) {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            a: &FiniteMonoid,
            b: &FiniteMonoid,
            order: &[usize],
            phi: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let Some((&x, rest)) = order.split_first() else {
                return true;
            };
            for t in 0..b.size {
                if used[t] {
                    continue;
                }
                phi[x] = t;
                used[t] = true;
                if consistent(a, b, phi) && go(a, b, rest, phi, used) {
                    return true;
                }
                used[t] = false;
                phi[x] = usize::MAX;
            }
            false
        }
        go(self, other, &order, &mut phi, &mut used).then_some(phi)
    }
}

/// All permutations of `{0,…,n−1}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_are_monoids() {
        for m in [
            FiniteMonoid::trivial(),
            FiniteMonoid::cyclic(4),
            FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(3)),
            FiniteMonoid::symmetric(3),
        ] {
            let again = FiniteMonoid::new(m.size(), m.unit(), m.table().to_vec()).unwrap();
            assert_eq!(again, m);
            assert!(m.is_group());
        }
    }

    #[test]
    fn rejects_bad_tables() {
        // left-zero band without unit
        assert!(matches!(FiniteMonoid::new(2, 0, vec![0, 0, 1, 1]), Err(Error::MonoidAxiom(_))));
        assert!(FiniteMonoid::new(2, 0, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn s3_factorization() {
        let s3 = FiniteMonoid::symmetric(3);
        // one-line [1,2,0] is a 3-cycle; [1,0,2] a transposition
        let perms = permutations(3);
        let c = perms.iter().position(|p| p == &[1, 2, 0]).unwrap();
        let t = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        let h = s3.generated(&[c]);
        let k = s3.generated(&[t]);
        assert_eq!(h.len(), 3);
        assert_eq!(k.len(), 2);
        let d = s3.exact_factorization(&h, &k).unwrap();
        for (g, (a, b)) in d.into_iter().enumerate() {
            assert_eq!(s3.mul(a, b), g);
        }
        // H·H is not exact
        assert!(s3.exact_factorization(&h, &h).is_err());
    }

    #[test]
    fn isomorphisms() {
        let c6 = FiniteMonoid::cyclic(6);
        let c23 = FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(3));
        let phi = c6.isomorphism(&c23).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(phi[c6.mul(a, b)], c23.mul(phi[a], phi[b]));
            }
        }
        assert!(c6.isomorphism(&FiniteMonoid::symmetric(3)).is_none());
        let v4 = FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(2));
        assert!(FiniteMonoid::cyclic(4).isomorphism(&v4).is_none());
    }
}
