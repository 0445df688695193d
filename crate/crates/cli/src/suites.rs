//! Seeded property suites over the catalog. Each suite counts its checks and
//! collects a description of every violation instead of stopping at the first.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybhom_core::bimodule::{adjoint_bimodule, structure_bimodule, trivial_bimodule, Bimodule};
use ybhom_core::brcomplex::{
    all_words, braided_chain_complex, braided_cochain_complex, braided_two_sided_complex, critical_complex,
    split_differentials,
};
use ybhom_core::hochschild::qs_chain_map_check;
use ybhom_core::products::{
    check_homotopy_identity, cup, differential, differential_left, differential_right, hochschild_cup, qs_pullback,
    triple_cup, Coefficients, Cochain,
};
use ybhom_core::{BraidWord, BraidedSet, ChainComplex, ElementId};

use crate::corpus::{catalog, factorizations, idempotent_catalog};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub id: char,
    pub title: &'static str,
    pub checks: usize,
    pub violations: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passes(&self) -> bool {
        self.violations.is_empty() && self.checks > 0
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    /// An error from the library counts as a violation, not a crash.
    fn ok<T, E: std::fmt::Display>(&mut self, r: Result<T, E>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.violations.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub const SUITES: [(char, &str); 7] = [
    ('a', "d∘d = 0 on catalog braidings n ≤ 4, K ≤ 5, three coefficient families"),
    ('b', "Δ absorption and block decomposition, words of length ≤ 6"),
    ('c', "face-sum and shuffle-split differentials agree, K ≤ 4"),
    ('d', "cup associativity and graded Leibniz on random cochains"),
    ('e', "circle homotopy identity over ℤ and ℤ/7, p, q ≤ 3"),
    ('f', "QS chain map and vanishing on non-critical words, K ≤ 4"),
    ('g', "QS pullback preserves cup, degrees ≤ (2,2)"),
];

pub fn run_suite(id: char, seed: u64) -> Option<SuiteOutcome> {
    let &(_, title) = SUITES.iter().find(|(c, _)| *c == id)?;
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64) << 32);
    match id {
        'a' => suite_square_zero(&mut t),
        'b' => suite_delta(&mut t),
        'c' => suite_split(&mut t),
        'd' => suite_cup(&mut t, &mut rng),
        'e' => suite_homotopy(&mut t, &mut rng),
        'f' => suite_qs_chain_map(&mut t),
        'g' => suite_qs_cup(&mut t, &mut rng),
        _ => unreachable!(),
    }
    Some(SuiteOutcome { id, title, checks: t.checks, violations: t.violations, elapsed: start.elapsed() })
}

pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    SUITES.iter().filter_map(|&(id, _)| run_suite(id, seed)).collect()
}

fn square_zero(t: &mut Tally, c: Result<ChainComplex, ybhom_core::Error>, what: &str) {
    if let Some(c) = t.ok(c, || what.to_string()) {
        let report = c.verify();
        t.check(report.holds(), || format!("{what}: {report:?}"));
    }
}

fn suite_square_zero(t: &mut Tally) {
    const K: usize = 5;
    for (name, s) in catalog(4) {
        // trivial ℤ, the adjoint pair (right ⊗ left, always admissible), and the truncated structure monoid
        let triv = trivial_bimodule(&s, 1);
        let adj = adjoint_bimodule(&s);
        let st = structure_bimodule(&s, 2);
        for (coeff, m) in [("trivial", &triv), ("structure", &st)] {
            square_zero(t, braided_chain_complex(&s, m, K), &format!("{name} chain {coeff}"));
            square_zero(t, braided_cochain_complex(&s, m, K), &format!("{name} cochain {coeff}"));
            square_zero(t, critical_complex(&s, None, m, K), &format!("{name} critical {coeff}"));
        }
        square_zero(t, braided_two_sided_complex(&s, &adj.right, &adj.left, K), &format!("{name} adjoint pair"));
        if adj.compatible {
            square_zero(t, braided_chain_complex(&s, &adj.combined(), K), &format!("{name} chain adjoint"));
        }
    }
    for (name, f) in factorizations() {
        let m = trivial_bimodule(&f.set, 1);
        square_zero(t, critical_complex(&f.set, Some(f.unit()), &m, K), &format!("{name} reduced critical"));
    }
}

fn shifted(d: &BraidWord, by: usize) -> BraidWord {
    BraidWord::new(d.0.iter().map(|i| i + by).collect())
}

fn suite_delta(t: &mut Tally) {
    for (name, s) in idempotent_catalog(4) {
        for len in 0..=6 {
            let delta = BraidWord::delta(len);
            for w in all_words(s.size(), len) {
                let Some(dw) = t.ok(s.delta(&w), || format!("{name} Δ{w:?}")) else { continue };
                let applied = s.apply_braid_word(&w, &delta).ok();
                t.check(applied.as_ref() == Some(&dw), || format!("{name}: Δ as braid word differs on {w:?}"));
                t.check(s.is_normal(&dw) && s.delta(&dw).ok() == Some(dw.clone()), || {
                    format!("{name}: Δ{w:?} is not a fixed normal word")
                });
                for i in 1..len {
                    let b = BraidWord::new(vec![i]);
                    let left = s.apply_braid_word(&w, &delta.concat(&b)).ok();
                    let right = s.apply_braid_word(&w, &b.concat(&delta)).ok();
                    t.check(left.as_ref() == Some(&dw) && right.as_ref() == Some(&dw), || {
                        format!("{name}: b_{i} not absorbed by Δ on {w:?}")
                    });
                }
                // Δ_{m+n} = (Δ_n × Δ_m) b_{m,n} = b_{m,n} (Δ_m × Δ_n)
                for m in 0..=len {
                    let n = len - m;
                    let a = BraidWord::delta(n).concat(&shifted(&BraidWord::delta(m), n)).concat(&BraidWord::block_crossing(m, n));
                    let b = BraidWord::block_crossing(m, n).concat(&BraidWord::delta(m)).concat(&shifted(&BraidWord::delta(n), m));
                    let ok = s.apply_braid_word(&w, &a).ok().as_ref() == Some(&dw)
                        && s.apply_braid_word(&w, &b).ok().as_ref() == Some(&dw);
                    t.check(ok, || format!("{name}: Δ decomposition at ({m},{n}) fails on {w:?}"));
                }
            }
        }
    }
}

fn suite_split(t: &mut Tally) {
    for (name, s) in catalog(4) {
        let mut families: Vec<(&str, Bimodule)> =
            vec![("trivial", trivial_bimodule(&s, 1)), ("structure", structure_bimodule(&s, 2))];
        let adj = adjoint_bimodule(&s);
        if adj.compatible {
            families.push(("adjoint", adj.combined()));
        }
        for (coeff, m) in families {
            if let Some(rep) = t.ok(split_differentials(&s, &m, 4), || format!("{name} {coeff}")) {
                t.check(rep.all_agree(), || format!("{name} {coeff}: {rep:?}"));
            }
        }
    }
}

fn random_cochain(rng: &mut ChaCha8Rng, n: usize, degree: usize, rank: usize) -> Cochain {
    Cochain::from_fn(n, degree, |_| (0..rank).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect())
}

fn sign(e: usize) -> BigInt {
    BigInt::from(if e.is_multiple_of(2) { 1 } else { -1 })
}

fn product_cases() -> Vec<(String, BraidedSet)> {
    catalog(3)
}

fn suite_cup(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for (name, s) in product_cases() {
        let coefficients = [
            ("ℤ", Coefficients::integers(&s)),
            ("ℤ/7", Coefficients::modulo(&s, 7)),
            ("structure", Coefficients::algebra(&s, structure_bimodule(&s, 2)).expect("structure algebra")),
        ];
        for (cname, coeff) in &coefficients {
            let rank = coeff.rank();
            for p in 0..=2 {
                for q in 0..=2 {
                    let f = random_cochain(rng, s.size(), p, rank).reduced(coeff);
                    let g = random_cochain(rng, s.size(), q, rank).reduced(coeff);
                    let what = || format!("{name} {cname} ({p},{q})");
                    let checked = (|| -> ybhom_core::Result<(bool, bool)> {
                        let d = |c: &Cochain| differential(&s, coeff, c);
                        let fg = cup(&s, coeff, &f, &g)?;
                        let rhs = cup(&s, coeff, &d(&f)?, &g)?.combine(&cup(&s, coeff, &f, &d(&g)?)?, &sign(p), coeff)?;
                        let split = d(&f)? == differential_left(&s, coeff, &f)?.combine(&differential_right(&s, coeff, &f)?, &sign(p + 1), coeff)?;
                        Ok((d(&fg)? == rhs, split))
                    })();
                    if let Some((leibniz, split)) = t.ok(checked, what) {
                        t.check(leibniz, || format!("{name} {cname} ({p},{q}): graded Leibniz fails"));
                        t.check(split, || format!("{name} {cname} degree {p}: d ≠ d_l ± d_r"));
                    }
                    for r in 0..=(4 - p - q).min(2) {
                        let h = random_cochain(rng, s.size(), r, rank).reduced(coeff);
                        let assoc = (|| -> ybhom_core::Result<bool> {
                            let a = cup(&s, coeff, &cup(&s, coeff, &f, &g)?, &h)?;
                            let b = cup(&s, coeff, &f, &cup(&s, coeff, &g, &h)?)?;
                            Ok(a == b && a == triple_cup(&s, coeff, &f, &g, &h)?)
                        })();
                        if let Some(ok) = t.ok(assoc, || format!("{name} {cname} ({p},{q},{r})")) {
                            t.check(ok, || format!("{name} {cname} ({p},{q},{r}): cup not associative"));
                        }
                    }
                }
            }
        }
    }
}

fn suite_homotopy(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for (name, s) in product_cases() {
        for (cname, coeff) in [("ℤ", Coefficients::integers(&s)), ("ℤ/7", Coefficients::modulo(&s, 7))] {
            for p in 0..=3 {
                for q in 0..=3 {
                    let f = random_cochain(rng, s.size(), p, 1).reduced(&coeff);
                    let g = random_cochain(rng, s.size(), q, 1).reduced(&coeff);
                    if let Some(rep) = t.ok(check_homotopy_identity(&s, &coeff, &f, &g), || format!("{name} {cname} ({p},{q})")) {
                        t.check(rep.holds(), || format!("{name} {cname} ({p},{q}): homotopy identity fails at {:?}", rep.witness));
                    }
                }
            }
        }
    }
}

fn suite_qs_chain_map(t: &mut Tally) {
    let mut cases: Vec<(String, BraidedSet, Option<ElementId>)> =
        idempotent_catalog(3).into_iter().map(|(n, s)| (n, s, None)).collect();
    for (n, f) in factorizations() {
        let e = f.unit();
        cases.push((format!("{n} reduced"), f.set.clone(), Some(e)));
        cases.push((n, f.set, None));
    }
    for (name, s, e) in cases {
        let mut families = vec![("trivial", trivial_bimodule(&s, 1))];
        if e.is_none() {
            families.push(("structure", structure_bimodule(&s, 2)));
        }
        for (coeff, m) in families {
            if let Some(rep) = t.ok(qs_chain_map_check(&s, e, &m, 4), || format!("{name} {coeff}")) {
                t.checks += (rep.checked + rep.vanishing_checked).saturating_sub(1);
                t.check(rep.holds(), || format!("{name} {coeff}: {rep:?}"));
            }
        }
    }
}

fn suite_qs_cup(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let mut cases: Vec<(String, BraidedSet, Option<ElementId>)> =
        catalog(3).into_iter().map(|(n, s)| (n, s, None)).collect();
    for (n, f) in factorizations() {
        let e = f.unit();
        cases.push((n, f.set, Some(e)));
    }
    for (name, s, e) in cases {
        let z = Coefficients::integers(&s);
        for p in 0..=2 {
            for q in 0..=2 {
                // normalized Hochschild cochains vanish on tuples containing the pseudo-unit
                let mut hoch = |k: usize| {
                    let c = random_cochain(rng, s.size(), k, 1);
                    Cochain::from_fn(s.size(), k, |w| {
                        if e.is_some_and(|e| w.contains(&e)) {
                            vec![BigInt::from(0)]
                        } else {
                            c.value(w).to_vec()
                        }
                    })
                };
                let (big_f, big_g) = (hoch(p), hoch(q));
                let checked = (|| -> ybhom_core::Result<bool> {
                    let lhs = qs_pullback(&s, &z, e, &hochschild_cup(&s, &z, &big_f, &big_g)?)?;
                    let rhs = cup(&s, &z, &qs_pullback(&s, &z, e, &big_f)?, &qs_pullback(&s, &z, e, &big_g)?)?;
                    Ok(lhs == rhs)
                })();
                if let Some(ok) = t.ok(checked, || format!("{name} ({p},{q})")) {
                    t.check(ok, || format!("{name} ({p},{q}): QS pullback does not preserve cup"));
                }
            }
        }
    }
}
