//! Ranks over prime fields 𝔽_p, for coefficients ℤ/p.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::IntegerMatrix;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of `m` reduced modulo the prime `p < 2³²`.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    assert!((2..(1 << 32)).contains(&p), "modulus out of range");
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        rows[r][c] = v.mod_floor(&pb).to_u64().unwrap();
    }
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (a, &b) in row.iter_mut().zip(&pivot_row) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
