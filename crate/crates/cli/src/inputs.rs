//! Braiding and coefficient descriptors: catalog names or JSON files.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use ybhom_core::bimodule::{adjoint_bimodule, structure_bimodule, trivial_bimodule, verify_bimodule, Bimodule};
use ybhom_core::catalog::{
    associativity_braiding, factorization_braiding, flip_braiding, identity_braiding, lattice_braiding,
    minmax_braiding, size2_family, Factorization,
};
use ybhom_core::hochschild::{regular_monoid_bimodule, trivial_monoid_bimodule};
use ybhom_core::products::Coefficients;
use ybhom_core::{BraidedSet, ElementId, FiniteMonoid};

use crate::error::{CliError, CliResult};
use crate::formats::{BimoduleFile, BraidedSetFile, CochainFile, FactorizationFile, LatticeFile, MonoidFile};

/// Guard against `|X|^K` blowup.
pub const MAX_DEGREE_BOUND: usize = 8;
/// Largest set accepted from a catalog shorthand.
const MAX_CATALOG_SIZE: usize = 64;

pub fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

#[derive(Debug, Clone)]
pub struct Braiding {
    pub name: String,
    pub set: BraidedSet,
    /// Present for `factorization:` and `assoc:` inputs.
    pub factorization: Option<Factorization>,
}

fn catalog_size(arg: &str) -> CliResult<usize> {
    let n: usize = arg.parse().map_err(|_| CliError::Input(format!("`{arg}` is not a set size")))?;
    if n == 0 || n > MAX_CATALOG_SIZE {
        return Err(CliError::Input(format!("set size must lie in 1..={MAX_CATALOG_SIZE}")));
    }
    Ok(n)
}

/// Expands `identity:n`, `minmax:n`, `flip:n`, `size2:<tag>`, `lattice:<file>`,
/// `factorization:<file>`, `assoc:<monoid-file>`; anything else is a braided-set file.
pub fn load_braiding(desc: &str, pseudo_unit: Option<usize>) -> CliResult<Braiding> {
    let (kind, arg) = desc.split_once(':').unwrap_or(("", desc));
    let mut factorization = None;
    let set = match kind {
        "identity" => identity_braiding(catalog_size(arg)?),
        "minmax" => minmax_braiding(catalog_size(arg)?),
        "flip" => flip_braiding(catalog_size(arg)?),
        "size2" => size2_family(arg)?,
        "lattice" => lattice_braiding(&read_json::<LatticeFile>(arg)?.build()?),
        "factorization" => {
            let file: FactorizationFile = read_json(arg)?;
            let f = factorization_braiding(&file.monoid.build()?, &file.h, &file.k)?;
            factorization = Some(f.clone());
            f.set
        }
        "assoc" => {
            let f = associativity_braiding(&read_json::<MonoidFile>(arg)?.build()?);
            factorization = Some(f.clone());
            f.set
        }
        _ if Path::new(desc).exists() => read_json::<BraidedSetFile>(desc)?.build()?,
        _ => return Err(CliError::Input(format!("unknown braiding `{desc}` (not a catalog name or readable file)"))),
    };
    let set = match pseudo_unit {
        Some(e) => {
            if factorization.is_some() {
                return Err(CliError::Input("factorization braidings carry their own pseudo-unit".into()));
            }
            set.with_pseudo_unit(ElementId::from(e))?
        }
        None => set,
    };
    Ok(Braiding { name: desc.to_string(), set, factorization })
}

pub fn load_monoid(path: &str) -> CliResult<FiniteMonoid> {
    read_json::<MonoidFile>(path)?.build()
}

fn trivial_rank(arg: Option<&str>) -> CliResult<usize> {
    match arg {
        None => Ok(1),
        Some(r) => match r.parse::<usize>() {
            Ok(r) if r >= 1 => Ok(r),
            _ => Err(CliError::Input(format!("`trivial:{r}` needs a positive rank"))),
        },
    }
}

/// Coefficients over `X`: `trivial[:r]`, `adjoint`, `structure:L`, or a bimodule file.
/// No law is checked here; see [`load_set_coefficients`].
pub fn build_set_coefficients(desc: &str, sigma: &BraidedSet) -> CliResult<Bimodule> {
    let (kind, arg) = match desc.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (desc, None),
    };
    let m = match kind {
        "trivial" => trivial_bimodule(sigma, trivial_rank(arg)?),
        "adjoint" => adjoint_bimodule(sigma).combined(),
        "structure" => {
            let len = arg
                .and_then(|a| a.parse::<usize>().ok())
                .ok_or_else(|| CliError::Input("`structure:L` needs a truncation length".into()))?;
            structure_bimodule(sigma, len)
        }
        _ => read_json::<BimoduleFile>(desc)?.build(sigma.size())?,
    };
    Ok(m)
}

/// [`build_set_coefficients`], rejecting anything that is not a bimodule over `X`.
pub fn load_set_coefficients(desc: &str, sigma: &BraidedSet) -> CliResult<Bimodule> {
    let m = build_set_coefficients(desc, sigma)?;
    let report = verify_bimodule(sigma, &m);
    if !report.passes() {
        return Err(CliError::Input(format!("{desc}: coefficients violate the bimodule laws ({report:?})")));
    }
    Ok(m)
}

/// Coefficient rings for cochain products: `trivial` (ℤ), `mod:m`, `structure:L`, or an algebra file.
pub fn load_product_coefficients(desc: &str, sigma: &BraidedSet) -> CliResult<Coefficients> {
    let (kind, arg) = match desc.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (desc, None),
    };
    match kind {
        "trivial" if trivial_rank(arg)? == 1 => Ok(Coefficients::integers(sigma)),
        "trivial" => Err(CliError::Input("cochain products need rank-one trivial coefficients or an algebra".into())),
        "mod" => match arg.and_then(|a| a.parse::<u64>().ok()) {
            Some(m) if m >= 2 => Ok(Coefficients::modulo(sigma, m)),
            _ => Err(CliError::Input("`mod:m` needs a modulus m ≥ 2".into())),
        },
        _ => Ok(Coefficients::algebra(sigma, load_set_coefficients(desc, sigma)?)?),
    }
}

/// Coefficients over a finite monoid: `trivial[:r]`, `regular`, or a bimodule file indexed by monoid elements.
pub fn load_monoid_coefficients(desc: &str, g: &FiniteMonoid) -> CliResult<Bimodule> {
    let (kind, arg) = match desc.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (desc, None),
    };
    match kind {
        "trivial" => Ok(trivial_monoid_bimodule(g, trivial_rank(arg)?)),
        "regular" => Ok(regular_monoid_bimodule(g)),
        _ => read_json::<BimoduleFile>(desc)?.build(g.size()),
    }
}

pub fn load_cochain(path: &str, sigma: &BraidedSet, coeff: &Coefficients) -> CliResult<ybhom_core::products::Cochain> {
    read_json::<CochainFile>(path)?.build(sigma.size(), coeff.rank())
}

pub fn check_maxdeg(k: usize) -> CliResult<usize> {
    if k > MAX_DEGREE_BOUND {
        return Err(CliError::Input(format!("--maxdeg {k} exceeds the limit {MAX_DEGREE_BOUND}")));
    }
    Ok(k)
}
