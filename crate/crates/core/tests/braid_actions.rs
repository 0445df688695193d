mod common;

use common::*;
use proptest::prelude::*;
use ybhom_core::brcomplex::all_words;
use ybhom_core::{word, BraidWord, BraidedSet, ElementId, Word};

fn arb_case(max_len: usize) -> impl Strategy<Value = (BraidedSet, Word)> {
    let sets = idempotent_catalog(4);
    (0..sets.len(), 0..=max_len, any::<u64>()).prop_map(move |(i, len, seed)| {
        let s = sets[i].1.clone();
        let n = s.size() as u64;
        let w = (0..len).map(|j| ElementId((seed.rotate_left(7 * j as u32) % n) as u32)).collect();
        (s, w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn delta_absorbs_generators((s, w) in arb_case(6)) {
        let k = w.len();
        let delta = BraidWord::delta(k);
        let dw = s.apply_braid_word(&w, &delta).unwrap();
        prop_assert_eq!(&dw, &s.delta(&w).unwrap());
        for i in 1..k {
            let b = BraidWord::new(vec![i]);
            prop_assert_eq!(&s.apply_braid_word(&w, &delta.concat(&b)).unwrap(), &dw);
            prop_assert_eq!(&s.apply_braid_word(&w, &b.concat(&delta)).unwrap(), &dw);
            // the normal form does not see a single crossing
            prop_assert_eq!(&s.delta(&s.apply_generator(&w, i).unwrap()).unwrap(), &dw);
        }
        prop_assert_eq!(&s.delta(&dw).unwrap(), &dw);
        prop_assert!(s.is_normal(&dw));
    }

    #[test]
    fn delta_splits_through_block_crossing((s, w) in arb_case(6), cut in 0usize..=6) {
        let (m, n) = (cut.min(w.len()), w.len() - cut.min(w.len()));
        let full = s.delta(&w).unwrap();
        let shifted = |d: &BraidWord, by: usize| BraidWord::new(d.0.iter().map(|i| i + by).collect());
        // Δ_{m+n} = (Δ_n × Δ_m) b_{m,n} = b_{m,n} (Δ_m × Δ_n)
        let a = BraidWord::delta(n).concat(&shifted(&BraidWord::delta(m), n)).concat(&BraidWord::block_crossing(m, n));
        let b = BraidWord::block_crossing(m, n).concat(&BraidWord::delta(m)).concat(&shifted(&BraidWord::delta(n), m));
        prop_assert_eq!(&s.apply_braid_word(&w, &a).unwrap(), &full);
        prop_assert_eq!(&s.apply_braid_word(&w, &b).unwrap(), &full);
    }
}

#[test]
fn normal_words_are_fixed_by_delta() {
    for (name, s) in idempotent_catalog(3) {
        for w in s.normal_words_up_to(4) {
            assert_eq!(s.delta(&w).unwrap(), w, "{name}");
        }
    }
}

#[test]
fn braid_relations_act() {
    for (name, s) in catalog(3) {
        assert!(s.is_ybe(), "{name}");
        for len in 0..=5 {
            for w in all_words(s.size(), len) {
                for i in 1..len {
                    for j in 1..len {
                        let rel = |l: &[usize], r: &[usize]| {
                            s.apply_braid_word(&w, &BraidWord::new(l.to_vec())).unwrap()
                                == s.apply_braid_word(&w, &BraidWord::new(r.to_vec())).unwrap()
                        };
                        if i.abs_diff(j) > 1 {
                            assert!(rel(&[i, j], &[j, i]), "{name}");
                        } else if j == i + 1 {
                            assert!(rel(&[i, j, i], &[j, i, j]), "{name}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn star_products_associate() {
    for (name, s) in idempotent_catalog(3) {
        let words = s.normal_words_up_to(3);
        for u in &words {
            for v in &words {
                let uv = s.star_product(u, v).unwrap();
                for w in &words {
                    let vw = s.star_product(v, w).unwrap();
                    assert_eq!(s.star_product(&uv, w).unwrap(), s.star_product(u, &vw).unwrap(), "{name}");
                }
            }
        }
    }
    for (name, f) in factorizations() {
        let (s, e) = (&f.set, f.unit());
        let words: Vec<Word> = s.normal_words_up_to(3).into_iter().filter(|w| !w.contains(&e)).collect();
        for u in &words {
            assert_eq!(&s.reduced_star_product(e, u, &[]).unwrap(), u);
            assert_eq!(&s.reduced_star_product(e, &[], u).unwrap(), u);
            for v in &words {
                let uv = s.reduced_star_product(e, u, v).unwrap();
                for w in &words {
                    let vw = s.reduced_star_product(e, v, w).unwrap();
                    assert_eq!(
                        s.reduced_star_product(e, &uv, w).unwrap(),
                        s.reduced_star_product(e, u, &vw).unwrap(),
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn factorization_normal_forms() {
    for (name, f) in factorizations() {
        let g = &f.monoid;
        for len in 2..=4 {
            for w in all_words(f.set.size(), len) {
                let nf = f.set.delta(&w).unwrap();
                let total = g.product_of(w.iter().map(|&x| f.group_element(x)));
                let (h, k) = f.decomposition[total];
                assert_eq!(f.group_element(nf[0]), h, "{name}");
                assert_eq!(f.group_element(nf[len - 1]), k, "{name}");
                assert!(nf[1..len - 1].iter().all(|&x| x == f.unit()), "{name}: {nf:?}");
            }
        }
    }
}

#[test]
fn chain_lattice_is_minmax() {
    use ybhom_core::catalog::*;
    for n in 1..=4 {
        assert_eq!(lattice_braiding(&FiniteLattice::chain(n)).table(), minmax_braiding(n).table());
    }
    let s = minmax_braiding(3);
    assert_eq!(s.delta(&word(&[2, 0, 1])).unwrap(), word(&[0, 1, 2]));
}
