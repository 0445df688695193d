use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use ybhom_core::linalg::*;

fn matrix(rows: usize, cols: usize, vals: &[i64]) -> IntegerMatrix {
    let dense: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(vals[i * cols + j])).collect()).collect();
    IntegerMatrix::from_dense(rows, cols, &dense)
}

fn arb_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], r * c).prop_map(move |v| matrix(r, c, &v))
    })
}

/// Rank over ℚ by fraction-free elimination.
fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            let f = a[r][c].clone();
            let piv = a[rank][c].clone();
            for j in 0..cols {
                let v = &a[r][j] * &piv - &a[rank][j] * &f;
                a[r][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn smith_postconditions(m in arb_matrix()) {
        let snf = smith_normal_form_with_transforms(&m);
        let t = snf.transforms();
        prop_assert_eq!(t.u.mul(&m).unwrap().mul(&t.v).unwrap(), snf.diagonal_matrix());
        prop_assert_eq!(t.u.mul(&t.u_inv).unwrap(), IntegerMatrix::identity(m.rows()));
        prop_assert_eq!(t.v.mul(&t.v_inv).unwrap(), IntegerMatrix::identity(m.cols()));
        for w in snf.invariants.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(snf.invariants.iter().all(|d| d > &BigInt::zero()));
        prop_assert_eq!(snf.rank(), rational_rank(&m));
        prop_assert_eq!(smith_normal_form(&m).invariants, snf.invariants);
    }

    #[test]
    fn homology_of_random_complexes(a in arb_matrix(), b in arb_matrix()) {
        // d_2 = kernel-compatible composite: take d_1 = a and d_2 = (a's kernel)·b-shaped
        let d1 = a.clone();
        let snf = smith_normal_form_with_transforms(&d1);
        let kernel: Vec<usize> = (snf.rank()..d1.cols()).collect();
        let kv = snf.transforms().v.select_columns(&kernel);
        let b = if b.rows() == kv.cols() { b } else { IntegerMatrix::zeros(kv.cols(), b.cols()) };
        let d2 = kv.mul(&b).unwrap();
        let c = ChainComplex::new(Orientation::Chain, vec![d1.rows(), d1.cols(), d2.cols()], vec![d1.clone(), d2.clone()], false).unwrap();
        prop_assert!(c.verify().holds());
        let h = c.homology_all();
        // betti numbers by rank–nullity over ℚ
        let (r1, r2) = (rational_rank(&d1), rational_rank(&d2));
        prop_assert_eq!(h[0].betti, d1.rows() - r1);
        prop_assert_eq!(h[1].betti, d1.cols() - r1 - r2);
        prop_assert_eq!(h[2].betti, d2.cols() - r2);
        // shifting only reindexes
        let s = c.shift(2).homology_all();
        prop_assert_eq!(&s[2..], &h[..]);
        prop_assert!(s[0].is_trivial() && s[1].is_trivial());
        // the identity chain map induces isomorphisms
        for k in 0..3 {
            prop_assert!(induced_map_on_homology(&ChainMap::identity(&c), &c, &c, k).unwrap().isomorphism);
        }
        // universal coefficients mod 2: dim H_k(C⊗F_2) = betti + #even torsion in H_k and H_{k−1}
        for k in 0..3 {
            let even = |g: &AbelianGroup| g.torsion.iter().filter(|t| t.is_even()).count();
            let expect = h[k].betti + even(&h[k]) + if k > 0 { even(&h[k - 1]) } else { 0 };
            prop_assert_eq!(c.betti_mod_p(k, 2).unwrap(), expect);
        }
    }
}

#[test]
fn cyclic_torsion() {
    let c = ChainComplex::new(Orientation::Chain, vec![1, 1], vec![matrix(1, 1, &[6])], false).unwrap();
    assert_eq!(c.homology(0).unwrap(), AbelianGroup::new(0, &[6]));
    let m = matrix(2, 2, &[2, 0, 0, 3]);
    assert_eq!(smith_normal_form(&m).invariants, vec![BigInt::one(), BigInt::from(6)]);
}
