//! JSON shapes read and written by the command line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use ybhom_core::bimodule::Bimodule;
use ybhom_core::catalog::FiniteLattice;
use ybhom_core::products::Cochain;
use ybhom_core::{AbelianGroup, BraidedSet, ChainComplex, ElementId, FiniteMonoid, IntegerMatrix};

use crate::error::{CliError, CliResult};

/// `{"size": n, "sigma": [[[a,b],…],…], "pseudo_unit": e?}`; row = first argument.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidedSetFile {
    pub size: usize,
    pub sigma: Vec<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudo_unit: Option<usize>,
}

impl BraidedSetFile {
    pub fn from_set(s: &BraidedSet) -> Self {
        let n = s.size();
        let sigma = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (a, b) = s.sigma(ElementId::from(x), ElementId::from(y));
                        [a.index(), b.index()]
                    })
                    .collect()
            })
            .collect();
        BraidedSetFile { size: n, sigma, pseudo_unit: s.pseudo_unit().map(ElementId::index) }
    }

    pub fn build(&self) -> CliResult<BraidedSet> {
        if self.sigma.len() != self.size || self.sigma.iter().any(|row| row.len() != self.size) {
            return Err(CliError::Input(format!("sigma must be a {0}×{0} table of pairs", self.size)));
        }
        let table = self
            .sigma
            .iter()
            .flatten()
            .map(|&[a, b]| (ElementId::from(a), ElementId::from(b)))
            .collect();
        let s = BraidedSet::new(self.size, table)?;
        match self.pseudo_unit {
            Some(e) => Ok(s.with_pseudo_unit(ElementId::from(e))?),
            None => Ok(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub size: usize,
    pub unit: usize,
    pub table: Vec<usize>,
}

impl MonoidFile {
    pub fn from_monoid(g: &FiniteMonoid) -> Self {
        MonoidFile { size: g.size(), unit: g.unit(), table: g.table().to_vec() }
    }

    pub fn build(&self) -> CliResult<FiniteMonoid> {
        Ok(FiniteMonoid::new(self.size, self.unit, self.table.clone())?)
    }
}

/// Row-major meet and join tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub size: usize,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LatticeFile {
    pub fn build(&self) -> CliResult<FiniteLattice> {
        let l = match &self.labels {
            Some(labels) => FiniteLattice::with_labels(self.size, self.meet.clone(), self.join.clone(), labels.clone())?,
            None => FiniteLattice::new(self.size, self.meet.clone(), self.join.clone())?,
        };
        Ok(l)
    }
}

/// A monoid with an exact factorization `G = HK`, both given as index lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub monoid: MonoidFile,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
}

/// Action matrices are keyed by element index; `product[i][j]` lists `[basis, coefficient]` pairs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<BTreeMap<String, Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<BTreeMap<String, Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Vec<Vec<(usize, i64)>>>>,
}

impl BimoduleFile {
    /// `generators` is the size of the set (or monoid) the actions are indexed by.
    pub fn build(&self, generators: usize) -> CliResult<Bimodule> {
        let actions = |family: &Option<BTreeMap<String, Vec<Vec<i64>>>>, side: &str| -> CliResult<Option<Vec<IntegerMatrix>>> {
            let Some(map) = family else { return Ok(None) };
            let mut out = Vec::with_capacity(generators);
            for x in 0..generators {
                let rows = map
                    .get(&x.to_string())
                    .ok_or_else(|| CliError::Input(format!("{side} action of element {x} missing")))?;
                if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                    return Err(CliError::Input(format!("{side} action of element {x} is not {0}×{0}", self.rank)));
                }
                let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
                out.push(IntegerMatrix::from_dense(self.rank, self.rank, &dense));
            }
            if let Some(extra) = map.keys().find(|k| k.parse::<usize>().map_or(true, |i| i >= generators)) {
                return Err(CliError::Input(format!("{side} action key `{extra}` is not an element index")));
            }
            Ok(Some(out))
        };
        let mut m = Bimodule::new(self.rank, actions(&self.left, "left")?, actions(&self.right, "right")?)?;
        if let Some(labels) = &self.basis {
            m = m.with_labels(labels.clone())?;
        }
        if let Some(product) = &self.product {
            if product.len() != self.rank || product.iter().any(|r| r.len() != self.rank) {
                return Err(CliError::Input("product must be a rank×rank table".into()));
            }
            let flat = product
                .iter()
                .flatten()
                .map(|terms| terms.iter().map(|&(i, c)| (i, BigInt::from(c))).collect())
                .collect();
            m = m.with_product(flat)?;
        }
        Ok(m)
    }
}

/// Word key of a cochain table: comma-separated element indices, `""` for the empty word.
pub fn word_key(w: &[ElementId]) -> String {
    w.iter().map(|x| x.index().to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_word_key(key: &str) -> CliResult<Vec<ElementId>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map(ElementId::from)
                .map_err(|_| CliError::Input(format!("bad word key `{key}`")))
        })
        .collect()
}

/// `{"degree": p, "values": {"0,1": 3, …}}`; absent words are zero, vector values for rank > 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainFile {
    pub degree: usize,
    pub values: BTreeMap<String, Value>,
}

impl CochainFile {
    pub fn from_cochain(f: &Cochain) -> Self {
        let n = f.set_size();
        let mut values = BTreeMap::new();
        for (i, v) in f.values().iter().enumerate() {
            if v.iter().all(|c| c == &BigInt::from(0)) {
                continue;
            }
            let w = ybhom_core::brcomplex::index_word(i, n, f.degree());
            let value = if v.len() == 1 { int_json(&v[0]) } else { Value::Array(v.iter().map(int_json).collect()) };
            values.insert(word_key(&w), value);
        }
        CochainFile { degree: f.degree(), values }
    }

    pub fn build(&self, n: usize, rank: usize) -> CliResult<Cochain> {
        let mut table: Vec<Vec<BigInt>> = Cochain::zero(n, self.degree, rank).values().to_vec();
        for (key, value) in &self.values {
            let w = parse_word_key(key)?;
            if w.len() != self.degree || w.iter().any(|x| x.index() >= n) {
                return Err(CliError::Input(format!("word `{key}` is not a degree-{} word over {n} letters", self.degree)));
            }
            let entries: Vec<BigInt> = match value {
                Value::Array(items) => items.iter().map(json_int).collect::<CliResult<_>>()?,
                v => vec![json_int(v)?],
            };
            if entries.len() != rank {
                return Err(CliError::Input(format!("value at `{key}` has {} entries, coefficients have rank {rank}", entries.len())));
            }
            table[ybhom_core::brcomplex::word_index(&w, n)] = entries;
        }
        Ok(Cochain::from_values(n, self.degree, table)?)
    }
}

/// Integers stay JSON numbers while they fit in `i64`, otherwise decimal strings.
pub fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn json_int(v: &Value) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::Input(format!("cochain value {n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| CliError::Input(format!("cochain value `{s}` is not an integer"))),
        other => Err(CliError::Input(format!("cochain value {other} is not an integer"))),
    }
}

pub fn group_json(degree: usize, g: &AbelianGroup) -> Value {
    json!({
        "degree": degree,
        "betti": g.betti,
        "torsion": g.torsion.iter().map(int_json).collect::<Vec<_>>(),
    })
}

pub fn homology_json(groups: &[AbelianGroup]) -> Value {
    Value::Array(groups.iter().enumerate().map(|(k, g)| group_json(k, g)).collect())
}

/// Per-degree rank and basis labels plus every differential as a dense row-major matrix.
pub fn complex_json(c: &ChainComplex) -> Value {
    let cochain = matches!(c.orientation(), ybhom_core::linalg::Orientation::Cochain);
    let degrees: Vec<Value> = c
        .ranks()
        .iter()
        .enumerate()
        .map(|(k, &r)| json!({"degree": k, "rank": r, "basis": c.labels().get(k).cloned().unwrap_or_default()}))
        .collect();
    let maps: Vec<Value> = c
        .maps()
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let (from, to) = if cochain { (j, j + 1) } else { (j + 1, j) };
            let dense: Vec<Vec<Value>> = m.to_dense().iter().map(|row| row.iter().map(int_json).collect()).collect();
            json!({"from": from, "to": to, "rows": m.rows(), "cols": m.cols(), "matrix": dense})
        })
        .collect();
    json!({
        "orientation": if cochain { "cochain" } else { "chain" },
        "degrees": degrees,
        "maps": maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ybhom_core::catalog::{size2_family, FiniteLattice};

    proptest! {
        #[test]
        fn cochain_tables_round_trip(n in 1usize..4, degree in 0usize..4, rank in 1usize..3, seed in any::<u64>()) {
            let mut state = seed;
            let f = Cochain::from_fn(n, degree, |_| {
                (0..rank)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        BigInt::from((state >> 60) as i64 - 8)
                    })
                    .collect()
            });
            let file = CochainFile::from_cochain(&f);
            let text = serde_json::to_string(&file).unwrap();
            let back: CochainFile = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.build(n, rank).unwrap(), f);
        }
    }

    #[test]
    fn word_keys() {
        assert_eq!(parse_word_key("").unwrap(), Vec::<ElementId>::new());
        assert_eq!(word_key(&parse_word_key("2, 0,1").unwrap()), "2,0,1");
        assert!(parse_word_key("1,x").is_err());
    }

    #[test]
    fn braided_sets_round_trip() {
        let s = size2_family("minmax").unwrap().with_pseudo_unit(ElementId(0)).unwrap();
        let back = BraidedSetFile::from_set(&s).build().unwrap();
        assert_eq!(back, s);
        let bad = BraidedSetFile { size: 2, sigma: vec![vec![[0, 0]]], pseudo_unit: None };
        assert!(bad.build().is_err());
    }

    #[test]
    fn lattice_files() {
        let l = FiniteLattice::chain(3);
        let file = LatticeFile {
            size: 3,
            meet: (0..9).map(|i| l.meet(i / 3, i % 3)).collect(),
            join: (0..9).map(|i| l.join(i / 3, i % 3)).collect(),
            labels: None,
        };
        assert!(file.build().is_ok());
        let broken = LatticeFile { join: vec![0; 9], ..file };
        assert!(broken.build().is_err());
    }

    #[test]
    fn bimodule_files_need_every_action() {
        let file = BimoduleFile {
            rank: 1,
            left: Some([("0".to_string(), vec![vec![1]])].into_iter().collect()),
            ..Default::default()
        };
        assert!(file.build(1).is_ok());
        assert!(file.build(2).is_err());
        let extra = BimoduleFile {
            rank: 1,
            right: Some([("0".to_string(), vec![vec![1]]), ("7".to_string(), vec![vec![1]])].into_iter().collect()),
            ..Default::default()
        };
        assert!(extra.build(1).is_err());
    }
}
