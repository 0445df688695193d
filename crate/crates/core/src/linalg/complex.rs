use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use super::modular::rank_mod_p;
use super::snf::{smith_normal_form, smith_normal_form_with_transforms, SmithForm};
use crate::error::{Error, Result};

/// A finitely generated abelian group `ℤ^betti ⊕ ⊕ ℤ/t_i`, `t_1 | t_2 | ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(betti: usize) -> Self {
        AbelianGroup { betti, torsion: Vec::new() }
    }

    pub fn new(betti: usize, torsion: &[u64]) -> Self {
        AbelianGroup { betti, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Differentials lower the degree.
    Chain,
    /// Differentials raise the degree.
    Cochain,
}

/// Free ℤ-modules `C_0, …, C_K` with one map between each pair of
/// consecutive degrees. `maps[j]` connects degrees `j` and `j+1`: it is
/// `d_{j+1}` for chain complexes and `d^j` for cochain complexes.
///
/// A complex built only up to `K` (`truncated`) reports (co)homology in
/// degrees `< K`; otherwise the missing outer maps are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    orientation: Orientation,
    ranks: Vec<usize>,
    maps: Vec<IntegerMatrix>,
    labels: Vec<Vec<String>>,
    truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    /// Degree of the first composite `d∘d` that is nonzero, with an entry.
    pub violation: Option<(usize, usize, usize, BigInt)>,
}

impl ComplexReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl ChainComplex {
    pub fn new(
        orientation: Orientation,
        ranks: Vec<usize>,
        maps: Vec<IntegerMatrix>,
        truncated: bool,
    ) -> Result<Self> {
        if ranks.is_empty() || maps.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!("{} ranks but {} maps", ranks.len(), maps.len())));
        }
        for (j, m) in maps.iter().enumerate() {
            let expected = match orientation {
                Orientation::Chain => (ranks[j], ranks[j + 1]),
                Orientation::Cochain => (ranks[j + 1], ranks[j]),
            };
            if (m.rows(), m.cols()) != expected {
                return Err(Error::Dimension(format!(
                    "map between degrees {j} and {} is {}×{}, expected {}×{}",
                    j + 1,
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        let labels = ranks.iter().map(|&r| (0..r).map(|i| format!("e{i}")).collect()).collect();
        Ok(ChainComplex { orientation, ranks, maps, labels, truncated })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, &r)| l.len() != r) {
            return Err(Error::Dimension("basis labels do not match ranks".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn maps(&self) -> &[IntegerMatrix] {
        &self.maps
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Degrees in which (co)homology is determined by the stored data.
    pub fn valid_degrees(&self) -> Range<usize> {
        if self.truncated {
            0..self.max_degree()
        } else {
            0..self.max_degree() + 1
        }
    }

    /// The differential leaving degree `k`.
    pub fn outgoing(&self, k: usize) -> IntegerMatrix {
        let n = self.ranks[k];
        match self.orientation {
            Orientation::Chain if k == 0 => IntegerMatrix::zeros(0, n),
            Orientation::Chain => self.maps[k - 1].clone(),
            Orientation::Cochain if k < self.maps.len() => self.maps[k].clone(),
            Orientation::Cochain => IntegerMatrix::zeros(0, n),
        }
    }

    /// The differential arriving in degree `k`.
    pub fn incoming(&self, k: usize) -> IntegerMatrix {
        let n = self.ranks[k];
        match self.orientation {
            Orientation::Chain if k < self.maps.len() => self.maps[k].clone(),
            Orientation::Chain => IntegerMatrix::zeros(n, 0),
            Orientation::Cochain if k == 0 => IntegerMatrix::zeros(n, 0),
            Orientation::Cochain => self.maps[k - 1].clone(),
        }
    }

    pub fn verify(&self) -> ComplexReport {
        for j in 0..self.maps.len().saturating_sub(1) {
            let (first, second, degree) = match self.orientation {
                Orientation::Chain => (&self.maps[j + 1], &self.maps[j], j + 2),
                Orientation::Cochain => (&self.maps[j], &self.maps[j + 1], j),
            };
            let dd = second.mul(first).expect("shapes checked at construction");
            if let Some((r, c, v)) = dd.first_nonzero() {
                return ComplexReport { violation: Some((degree, r, c, v)) };
            }
        }
        ComplexReport { violation: None }
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        let valid = self.valid_degrees();
        if valid.contains(&k) {
            Ok(())
        } else {
            Err(Error::DegreeOutOfRange { degree: k, max: valid.end.saturating_sub(1) })
        }
    }

    pub fn homology(&self, k: usize) -> Result<AbelianGroup> {
        self.check_degree(k)?;
        let out = smith_normal_form(&self.outgoing(k));
        let inc = smith_normal_form(&self.incoming(k));
        Ok(group_from(self.ranks[k], &out, &inc))
    }

    /// (Co)homology in every valid degree, one Smith form per map.
    pub fn homology_all(&self) -> Vec<AbelianGroup> {
        let snfs: Vec<SmithForm> = self.maps.iter().map(smith_normal_form).collect();
        let empty = SmithForm { rows: 0, cols: 0, invariants: Vec::new(), transforms: None };
        self.valid_degrees()
            .map(|k| {
                let (out, inc) = match self.orientation {
                    Orientation::Chain => (k.checked_sub(1).map(|j| &snfs[j]), snfs.get(k)),
                    Orientation::Cochain => (snfs.get(k), k.checked_sub(1).map(|j| &snfs[j])),
                };
                group_from(self.ranks[k], out.unwrap_or(&empty), inc.unwrap_or(&empty))
            })
            .collect()
    }

    /// Betti number with coefficients in 𝔽_p.
    pub fn betti_mod_p(&self, k: usize, p: u64) -> Result<usize> {
        self.check_degree(k)?;
        Ok(self.ranks[k] - rank_mod_p(&self.outgoing(k), p) - rank_mod_p(&self.incoming(k), p))
    }

    /// `Hom(C, ℤ)`: same modules, transposed maps, opposite orientation.
    pub fn dual(&self) -> ChainComplex {
        ChainComplex {
            orientation: match self.orientation {
                Orientation::Chain => Orientation::Cochain,
                Orientation::Cochain => Orientation::Chain,
            },
            ranks: self.ranks.clone(),
            maps: self.maps.iter().map(IntegerMatrix::transpose).collect(),
            labels: self.labels.clone(),
            truncated: self.truncated,
        }
    }

    /// Prepends `s` zero modules, moving every degree up by `s`.
    pub fn shift(&self, s: usize) -> ChainComplex {
        let mut ranks = vec![0; s];
        ranks.extend_from_slice(&self.ranks);
        let mut maps: Vec<IntegerMatrix> = Vec::new();
        for j in 0..s {
            let next = ranks[j + 1];
            maps.push(match self.orientation {
                Orientation::Chain => IntegerMatrix::zeros(0, next),
                Orientation::Cochain => IntegerMatrix::zeros(next, 0),
            });
        }
        maps.extend(self.maps.iter().cloned());
        let mut labels = vec![Vec::new(); s];
        labels.extend(self.labels.iter().cloned());
        ChainComplex { orientation: self.orientation, ranks, maps, labels, truncated: self.truncated }
    }

    /// Explicit generators and a coordinate map for the (co)homology in degree `k`.
    pub fn presentation(&self, k: usize) -> Result<HomologyPresentation> {
        self.check_degree(k)?;
        let n = self.ranks[k];
        let out = smith_normal_form_with_transforms(&self.outgoing(k));
        let r = out.rank();
        let t = out.transforms();
        let kernel_rows: Vec<usize> = (r..n).collect();
        // coordinates of a cycle z in the kernel basis V[:, r..] are (V⁻¹ z)[r..]
        let v_low = t.v_inv.select_rows(&kernel_rows);
        let kernel = t.v.select_columns(&kernel_rows);
        let b = v_low.mul(&self.incoming(k))?;
        let snf_b = smith_normal_form_with_transforms(&b);
        let tb = snf_b.transforms();
        let coords_all = tb.u.mul(&v_low)?;
        let gens_all = kernel.mul(&tb.u_inv)?;
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..n - r {
            match snf_b.invariants.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) => {
                    keep.push(i);
                    orders.push(d.clone());
                }
                None => {
                    keep.push(i);
                    orders.push(BigInt::zero());
                }
            }
        }
        let coordinates = coords_all.select_rows(&keep);
        let generators = gens_all.select_columns(&keep);
        let group = AbelianGroup {
            betti: orders.iter().filter(|o| o.is_zero()).count(),
            torsion: orders.iter().filter(|o| !o.is_zero()).cloned().collect(),
        };
        Ok(HomologyPresentation { degree: k, group, orders, generators, coordinates })
    }
}

fn group_from(n: usize, out: &SmithForm, inc: &SmithForm) -> AbelianGroup {
    AbelianGroup { betti: n - out.rank() - inc.rank(), torsion: inc.torsion() }
}

/// `H_k ≅ ⊕ ℤ/orders[i]` (order 0 meaning ℤ) with chosen cycle representatives.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    pub degree: usize,
    pub group: AbelianGroup,
    pub orders: Vec<BigInt>,
    /// Columns are cycles representing the generators.
    pub generators: IntegerMatrix,
    /// Sends a cycle to its coordinates (before reduction modulo `orders`).
    pub coordinates: IntegerMatrix,
}

impl HomologyPresentation {
    pub fn coordinates_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.coordinates.apply(cycle);
        for (ci, o) in c.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *ci = ci.mod_floor(o);
            }
        }
        c
    }
}

/// Degreewise components of a chain map between complexes of the same orientation.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub components: Vec<IntegerMatrix>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap { components: c.ranks.iter().map(|&r| IntegerMatrix::identity(r)).collect() }
    }

    pub fn verify(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        if source.orientation != target.orientation
            || source.ranks.len() != target.ranks.len()
            || self.components.len() != source.ranks.len()
        {
            return Err(Error::Dimension("chain map between incompatible complexes".into()));
        }
        for (k, f) in self.components.iter().enumerate() {
            if (f.rows(), f.cols()) != (target.ranks[k], source.ranks[k]) {
                return Err(Error::Dimension(format!("component {k} has the wrong shape")));
            }
        }
        for j in 0..source.maps.len() {
            let (lhs, rhs, degree) = match source.orientation {
                Orientation::Chain => (
                    target.maps[j].mul(&self.components[j + 1])?,
                    self.components[j].mul(&source.maps[j])?,
                    j + 1,
                ),
                Orientation::Cochain => (
                    target.maps[j].mul(&self.components[j])?,
                    self.components[j + 1].mul(&source.maps[j])?,
                    j,
                ),
            };
            if let Some((row, col, _)) = lhs.sub(&rhs)?.first_nonzero() {
                return Err(Error::NotChainMap { degree, row, col });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct InducedMap {
    pub degree: usize,
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    /// Columns: images of the source generators in target coordinates.
    pub matrix: IntegerMatrix,
    pub isomorphism: bool,
}

/// `H_k(f)` in the presentation coordinates, with an isomorphism verdict.
///
/// The verdict is "same invariants and surjective": a surjective
/// endomorphism of a finitely generated abelian group is injective.
pub fn induced_map_on_homology(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
    k: usize,
) -> Result<InducedMap> {
    f.verify(source, target)?;
    let ps = source.presentation(k)?;
    let pt = target.presentation(k)?;
    let images = f.components[k].mul(&ps.generators)?;
    let columns: Vec<Vec<(usize, BigInt)>> = (0..images.cols())
        .map(|c| {
            let mut z = vec![BigInt::zero(); images.rows()];
            for (r, v) in images.column(c) {
                z[*r] = v.clone();
            }
            pt.coordinates_of(&z).into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    let matrix = IntegerMatrix::from_columns(pt.orders.len(), columns);
    let relations = IntegerMatrix::diagonal(&pt.orders);
    let snf = smith_normal_form(&matrix.hstack(&relations)?);
    let surjective = snf.rank() == pt.orders.len() && snf.invariants.iter().all(|d| d.is_one());
    Ok(InducedMap {
        degree: k,
        isomorphism: surjective && ps.group == pt.group,
        source: ps.group,
        target: pt.group,
        matrix,
    })
}
