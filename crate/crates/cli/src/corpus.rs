//! Named braidings shared by the property suites and the acceptance run.

use ybhom_core::catalog::{
    associativity_braiding, factorization_braiding, flip_braiding, identity_braiding, lattice_braiding,
    minmax_braiding, size2_family, Factorization, FiniteLattice, SIZE2_TAGS,
};
use ybhom_core::{BraidedSet, FiniteMonoid};

/// `S_3 = C_3 · C_2`, rotations times a reflection.
pub fn s3_factorization() -> Factorization {
    let g = FiniteMonoid::symmetric(3);
    let u = g.unit();
    let rot = (0..6).find(|&a| a != u && g.mul(a, g.mul(a, a)) == u).expect("S3 has a 3-cycle");
    let refl = (0..6).find(|&a| a != u && g.mul(a, a) == u).expect("S3 has a transposition");
    factorization_braiding(&g, &g.generated(&[rot]), &g.generated(&[refl])).expect("exact factorization")
}

/// `C_a × C_b = (C_a × 1)(1 × C_b)`.
pub fn direct_factorization(a: usize, b: usize) -> Factorization {
    let g = FiniteMonoid::cyclic(a).product(&FiniteMonoid::cyclic(b));
    let h: Vec<usize> = (0..a).map(|i| i * b).collect();
    let k: Vec<usize> = (0..b).collect();
    factorization_braiding(&g, &h, &k).expect("exact factorization")
}

pub fn factorizations() -> Vec<(String, Factorization)> {
    vec![
        ("assoc:C2".into(), associativity_braiding(&FiniteMonoid::cyclic(2))),
        ("assoc:C3".into(), associativity_braiding(&FiniteMonoid::cyclic(3))),
        ("C2xC2".into(), direct_factorization(2, 2)),
        ("C2xC3".into(), direct_factorization(2, 3)),
        ("S3".into(), s3_factorization()),
    ]
}

/// Idempotent braidings on at most `max_n` elements.
pub fn idempotent_catalog(max_n: usize) -> Vec<(String, BraidedSet)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push((format!("identity:{n}"), identity_braiding(n)));
        if n >= 2 {
            out.push((format!("minmax:{n}"), minmax_braiding(n)));
        }
    }
    if max_n >= 2 {
        for tag in SIZE2_TAGS {
            out.push((format!("size2:{tag}"), size2_family(tag).expect("catalog tag")));
        }
    }
    if max_n >= 4 {
        out.push(("lattice:divisors(6)".into(), lattice_braiding(&FiniteLattice::divisors(6))));
        out.push(("lattice:boolean(2)".into(), lattice_braiding(&FiniteLattice::boolean(2))));
    }
    for (name, f) in factorizations() {
        if f.set.size() <= max_n {
            out.push((name, f.set));
        }
    }
    out
}

/// The idempotent catalog plus flips, which braid but are not idempotent.
pub fn catalog(max_n: usize) -> Vec<(String, BraidedSet)> {
    let mut out = idempotent_catalog(max_n);
    for n in 2..=max_n {
        out.push((format!("flip:{n}"), flip_braiding(n)));
    }
    out
}
