#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ybhom_core::catalog::*;
use ybhom_core::products::Cochain;
use ybhom_core::{BraidedSet, ElementId, FiniteMonoid};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Idempotent catalog braidings on at most `max_n` elements.
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
            out.push((format!("size2:{tag}"), size2_family(tag).unwrap()));
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

/// Idempotent catalog plus non-idempotent braidings (flips).
pub fn catalog(max_n: usize) -> Vec<(String, BraidedSet)> {
    let mut out = idempotent_catalog(max_n);
    for n in 2..=max_n {
        out.push((format!("flip:{n}"), flip_braiding(n)));
    }
    out
}

pub fn s3() -> Factorization {
    let g = FiniteMonoid::symmetric(3);
    let c = (1..6).find(|&a| g.mul(a, g.mul(a, a)) == 0).unwrap();
    let t = (1..6).find(|&a| g.mul(a, a) == 0).unwrap();
    factorization_braiding(&g, &g.generated(&[c]), &g.generated(&[t])).unwrap()
}

/// `C_a × C_b = (C_a × 1)(1 × C_b)`.
pub fn direct(a: usize, b: usize) -> Factorization {
    let g = FiniteMonoid::cyclic(a).product(&FiniteMonoid::cyclic(b));
    let h: Vec<usize> = (0..a).map(|i| i * b).collect();
    let k: Vec<usize> = (0..b).collect();
    factorization_braiding(&g, &h, &k).unwrap()
}

pub fn factorizations() -> Vec<(String, Factorization)> {
    vec![
        ("assoc:C2".into(), associativity_braiding(&FiniteMonoid::cyclic(2))),
        ("assoc:C3".into(), associativity_braiding(&FiniteMonoid::cyclic(3))),
        ("C2xC2".into(), direct(2, 2)),
        ("C2xC3".into(), direct(2, 3)),
        ("S3".into(), s3()),
    ]
}

pub fn random_cochain(rng: &mut ChaCha8Rng, n: usize, degree: usize, rank: usize) -> Cochain {
    Cochain::from_fn(n, degree, |_| (0..rank).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect())
}

/// Random cochain vanishing on non-critical words (and on words containing `e`).
pub fn random_critical_cochain(rng: &mut ChaCha8Rng, sigma: &BraidedSet, e: Option<ElementId>, degree: usize) -> Cochain {
    Cochain::from_fn(sigma.size(), degree, |w| {
        let v = rng.gen_range(-3i64..=3);
        let critical = sigma.is_critical(w) && e.is_none_or(|e| !w.contains(&e));
        vec![BigInt::from(if critical { v } else { 0 })]
    })
}
