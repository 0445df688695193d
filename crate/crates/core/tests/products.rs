mod common;

use common::*;
use num_bigint::BigInt;
use ybhom_core::bimodule::structure_bimodule;
use ybhom_core::brcomplex::all_words;
use ybhom_core::catalog::identity_braiding;
use ybhom_core::combination::{TupleCombination, WordCombination};
use ybhom_core::products::*;
use ybhom_core::shuffle::*;
use ybhom_core::{word, BraidedSet, ElementId};

fn coefficient_choices(s: &BraidedSet) -> Vec<Coefficients> {
    vec![
        Coefficients::integers(s),
        Coefficients::modulo(s, 7),
        Coefficients::algebra(s, structure_bimodule(s, 2)).unwrap(),
    ]
}

fn add(a: &Cochain, b: &Cochain, coeff: &Coefficients) -> Cochain {
    a.combine(b, &BigInt::from(1), coeff).unwrap()
}

fn sign(e: usize) -> BigInt {
    BigInt::from(if e.is_multiple_of(2) { 1 } else { -1 })
}

#[test]
fn shuffles_associate_and_coassociate() {
    for (name, s) in catalog(3) {
        for signed in [false, true] {
            for total in 0..=5 {
                for w in all_words(s.size(), total) {
                    for p in 0..=total {
                        for q in 0..=total - p {
                            let r = total - p - q;
                            let (u, v, x) = (&w[..p], &w[p..p + q], &w[p + q..]);
                            let one = |a: &[ElementId]| WordCombination::single(a.to_vec());
                            let left = shuffle_product_linear(&s, signed, &shuffle_product(&s, signed, u, v), &one(x));
                            let right = shuffle_product_linear(&s, signed, &one(u), &shuffle_product(&s, signed, v, x));
                            assert_eq!(left, right, "{name} product");
                            // (⧢^{p,q} ⊗ Id)⧢^{p+q,r} = (Id ⊗ ⧢^{q,r})⧢^{p,q+r} = ⧢^{p,q,r}
                            let mut a = TupleCombination::new();
                            for ((ab, c), k) in shuffle_coproduct(&s, signed, &w, p + q, r).unwrap() {
                                for ((a1, b1), k2) in shuffle_coproduct(&s, signed, &ab, p, q).unwrap() {
                                    a.add_term(vec![a1, b1, c.clone()], &k * k2);
                                }
                            }
                            let mut b = TupleCombination::new();
                            for ((a1, bc), k) in shuffle_coproduct(&s, signed, &w, p, q + r).unwrap() {
                                for ((b1, c1), k2) in shuffle_coproduct(&s, signed, &bc, q, r).unwrap() {
                                    b.add_term(vec![a1.clone(), b1, c1], &k * k2);
                                }
                            }
                            assert_eq!(a, b, "{name} coproduct");
                            assert_eq!(a, multi_shuffle_coproduct(&s, signed, &w, &[p, q, r]).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn symmetrizer_factors_through_coproduct() {
    for (name, s) in catalog(3) {
        for total in 0..=5 {
            for w in all_words(s.size(), total) {
                let whole = quantum_symmetrizer(&s, &w);
                for p in 0..=total {
                    let mut split = WordCombination::new();
                    for ((u, v), c) in shuffle_coproduct(&s, true, &w, p, total - p).unwrap() {
                        for (a, ca) in quantum_symmetrizer(&s, &u) {
                            for (b, cb) in quantum_symmetrizer(&s, &v).iter() {
                                split.add_term([a.as_slice(), b].concat(), &c * &ca * cb);
                            }
                        }
                    }
                    assert_eq!(split, whole, "{name} {w:?} at {p}");
                }
            }
        }
    }
}

#[test]
fn lifts_agree() {
    // two reduced words per permutation give the same action
    for (name, s) in catalog(3) {
        for k in 0..=4 {
            for perm in ybhom_core::monoid::permutations(k) {
                let (a, b) = (lift_permutation(&perm), lift_permutation_alt(&perm));
                for w in all_words(s.size(), k) {
                    assert_eq!(s.apply_braid_word(&w, &a).unwrap(), s.apply_braid_word(&w, &b).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn cup_is_associative() {
    let mut r = rng(11);
    for (name, s) in idempotent_catalog(3).into_iter().chain(catalog(2).into_iter().filter(|(n, _)| n.starts_with("flip"))) {
        for coeff in coefficient_choices(&s) {
            let rank = coeff.rank();
            for p in 0..=2 {
                for q in 0..=2 {
                    for t in 0..=(4 - p - q).min(2) {
                        let f = random_cochain(&mut r, s.size(), p, rank).reduced(&coeff);
                        let g = random_cochain(&mut r, s.size(), q, rank).reduced(&coeff);
                        let h = random_cochain(&mut r, s.size(), t, rank).reduced(&coeff);
                        let fg_h = cup(&s, &coeff, &cup(&s, &coeff, &f, &g).unwrap(), &h).unwrap();
                        let f_gh = cup(&s, &coeff, &f, &cup(&s, &coeff, &g, &h).unwrap()).unwrap();
                        assert_eq!(fg_h, f_gh, "{name} ({p},{q},{t})");
                        assert_eq!(fg_h, triple_cup(&s, &coeff, &f, &g, &h).unwrap(), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn leibniz_rules() {
    let mut r = rng(12);
    for (name, s) in catalog(3) {
        for coeff in coefficient_choices(&s) {
            let rank = coeff.rank();
            for p in 0..=2 {
                for q in 0..=2 {
                    let f = random_cochain(&mut r, s.size(), p, rank).reduced(&coeff);
                    let g = random_cochain(&mut r, s.size(), q, rank).reduced(&coeff);
                    let fg = cup(&s, &coeff, &f, &g).unwrap();
                    let d = |c: &Cochain| differential(&s, &coeff, c).unwrap();
                    let dl = |c: &Cochain| differential_left(&s, &coeff, c).unwrap();
                    let dr = |c: &Cochain| differential_right(&s, &coeff, c).unwrap();
                    let u = |a: &Cochain, b: &Cochain| cup(&s, &coeff, a, b).unwrap();
                    // d = d_l + (−1)^{deg+1} d_r
                    assert_eq!(d(&f), dl(&f).combine(&dr(&f), &sign(p + 1), &coeff).unwrap(), "{name}");
                    let rhs = u(&d(&f), &g).combine(&u(&f, &d(&g)), &sign(p), &coeff).unwrap();
                    assert_eq!(d(&fg), rhs, "{name} ({p},{q}) graded Leibniz");
                    assert_eq!(dl(&fg), u(&dl(&f), &g), "{name} left Leibniz");
                    assert_eq!(dr(&fg), u(&f, &dr(&g)), "{name} right Leibniz");
                    assert_eq!(u(&dr(&f), &g), u(&f, &dl(&g)), "{name} middle Leibniz");
                    assert!(d(&d(&f)).is_zero(), "{name}");
                    let (cl, cr) = cup_left_right(&s, &coeff, &f, &g).unwrap();
                    assert_eq!(add(&cl, &cr, &coeff), fg);
                    if q == 0 {
                        assert!(cr.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn homotopy_identity() {
    let mut r = rng(13);
    for (name, s) in catalog(3) {
        for coeff in [Coefficients::integers(&s), Coefficients::modulo(&s, 7)] {
            for p in 0..=3 {
                for q in 0..=3 {
                    if s.size() == 3 && p + q > 5 {
                        continue;
                    }
                    let f = random_cochain(&mut r, s.size(), p, 1).reduced(&coeff);
                    let g = random_cochain(&mut r, s.size(), q, 1).reduced(&coeff);
                    let rep = check_homotopy_identity(&s, &coeff, &f, &g).unwrap();
                    assert!(rep.holds(), "{name} ({p},{q}): witness {:?}", rep.witness);
                }
            }
            let f = random_cochain(&mut r, s.size(), 1, 1);
            assert!(check_homotopy_identity(&s, &coeff, &f, &f).unwrap().holds());
        }
    }
}

#[test]
fn circle_degree_one_formulas() {
    let mut r = rng(14);
    for (name, s) in idempotent_catalog(3) {
        let z = Coefficients::integers(&s);
        for p in 1..=3 {
            let f = random_cochain(&mut r, s.size(), p, 1);
            let g = random_cochain(&mut r, s.size(), 1, 1);
            let fg = circle(&s, &z, &f, &g).unwrap();
            let gf = circle(&s, &z, &g, &f).unwrap();
            for w in all_words(s.size(), p) {
                let sum: BigInt = w.iter().map(|&x| g.value(&[x])[0].clone()).sum();
                assert_eq!(fg.value(&w)[0], &f.value(&w)[0] * sum, "{name}");
                let dw = s.delta(&w).unwrap();
                let sum: BigInt = dw.iter().map(|&x| g.value(&[x])[0].clone()).sum();
                assert_eq!(gf.value(&w)[0], &f.value(&w)[0] * sum, "{name}");
            }
            if differential(&s, &z, &g).unwrap().is_zero() {
                assert_eq!(fg, gf, "{name}");
            }
        }
    }
}

#[test]
fn critical_cochains_closed_under_products() {
    let mut r = rng(15);
    let mut cases: Vec<(String, BraidedSet, Option<ElementId>)> =
        idempotent_catalog(3).into_iter().map(|(n, s)| (n, s, None)).collect();
    for (n, f) in factorizations() {
        let e = f.unit();
        cases.push((n, f.set, Some(e)));
    }
    for (name, s, e) in cases {
        let z = Coefficients::integers(&s);
        for p in 0..=2 {
            for q in 0..=2 {
                let f = random_critical_cochain(&mut r, &s, e, p);
                let g = random_critical_cochain(&mut r, &s, e, q);
                assert!(cup(&s, &z, &f, &g).unwrap().is_critical(&s, e), "{name} cup ({p},{q})");
                assert!(circle(&s, &z, &f, &g).unwrap().is_critical(&s, e), "{name} circle ({p},{q})");
            }
        }
    }
}

#[test]
fn symmetrizer_pullback_preserves_cup() {
    let mut r = rng(16);
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
                // normalized Hochschild cochains vanish on tuples containing e
                let hoch = |r: &mut _, k| {
                    let c = random_cochain(r, s.size(), k, 1);
                    Cochain::from_fn(s.size(), k, |w| if e.is_some_and(|e| w.contains(&e)) { vec![0.into()] } else { c.value(w).to_vec() })
                };
                let (big_f, big_g) = (hoch(&mut r, p), hoch(&mut r, q));
                let lhs = qs_pullback(&s, &z, e, &hochschild_cup(&s, &z, &big_f, &big_g).unwrap()).unwrap();
                let rhs = cup(&s, &z, &qs_pullback(&s, &z, e, &big_f).unwrap(), &qs_pullback(&s, &z, e, &big_g).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{name} ({p},{q})");
            }
        }
    }
}

#[test]
fn trivial_factorization_cup_is_hochschild_cup() {
    let mut r = rng(17);
    for (name, f) in factorizations().into_iter().filter(|(n, _)| n.starts_with("assoc")) {
        let (s, e) = (&f.set, f.unit());
        let z = Coefficients::integers(s);
        for p in 0..=2 {
            for q in 0..=2 {
                let a = random_critical_cochain(&mut r, s, Some(e), p);
                let b = random_critical_cochain(&mut r, s, Some(e), q);
                let c = cup(s, &z, &a, &b).unwrap();
                for w in all_words(s.size(), p + q) {
                    if s.is_critical(&w) && !w.contains(&e) {
                        assert_eq!(c.value(&w)[0], &a.value(&w[..p])[0] * &b.value(&w[p..])[0], "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn pre_lie_fails_already_for_the_free_monoid() {
    // identity braiding, f ∈ C¹, g ∈ C², h ∈ C¹: the defect is
    // (f(x₁)h(x₂) + f(x₂)h(x₁)) g(x₁,x₂)
    let s = identity_braiding(2);
    let z = Coefficients::integers(&s);
    let f = Cochain::from_scalars(2, 1, &[1, 2]).unwrap();
    let g = Cochain::from_scalars(2, 2, &[1, -1, 3, 5]).unwrap();
    let h = Cochain::from_scalars(2, 1, &[1, 1]).unwrap();
    assert!(differential(&s, &z, &h).unwrap().is_zero());
    let defect = pre_lie_defect(&s, &z, &f, &g, &h).unwrap();
    for w in all_words(2, 2) {
        let (f1, f2) = (&f.value(&w[..1])[0], &f.value(&w[1..])[0]);
        let (h1, h2) = (&h.value(&w[..1])[0], &h.value(&w[1..])[0]);
        assert_eq!(defect.value(&w)[0], (f1 * h2 + f2 * h1) * &g.value(&w)[0]);
    }
    assert!(!defect.is_zero());
    assert_eq!(defect.support_witness(), Some(word(&[0, 0])));
}

#[test]
fn hirsch_formula_needs_a_cocycle() {
    let s = ybhom_core::catalog::size2_family("constant").unwrap();
    let rep = check_hirsch_failure(&s, &Coefficients::integers(&s), &[-1, 0, 1]).unwrap();
    assert!(rep.violation.is_some());
    assert!(rep.cocycle_triples > 0);
    assert!(rep.cocycle_violation.is_none());
    for (name, s) in idempotent_catalog(3) {
        let rep = check_hirsch_failure(&s, &Coefficients::integers(&s), &[0, 1]).unwrap();
        assert!(rep.cocycle_violation.is_none(), "{name}");
    }
}

#[test]
fn symmetric_cochains() {
    let s = ybhom_core::catalog::minmax_braiding(3);
    let z = Coefficients::integers(&s);
    // constants are symmetric for trivial coefficients
    let c = Cochain::from_scalars(3, 0, &[4]).unwrap();
    assert!(is_symmetric_cochain(&s, &z, &c).unwrap());
    // (d_l f)(x,y) = f(y) against (d_r f)(x,y) = f(y'), σ(x,y) = (y',x')
    for vals in [[1, 0, 0], [0, 0, 1], [2, 2, 2]] {
        let f = Cochain::from_scalars(3, 1, &vals).unwrap();
        let expect = all_words(3, 2).iter().all(|w| f.value(&w[1..]) == f.value(&[s.sigma(w[0], w[1]).0]));
        assert_eq!(is_symmetric_cochain(&s, &z, &f).unwrap(), expect);
    }
    assert!(!is_symmetric_cochain(&s, &z, &Cochain::from_scalars(3, 1, &[0, 0, 1]).unwrap()).unwrap());
}
