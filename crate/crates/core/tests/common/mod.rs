//! Independent dense oracles: rational rank by fraction-free elimination,
//! rank over Z2 on bit rows, and a textbook Smith normal form.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use poincare::{IntegerMatrix, SimplicialComplex};

pub fn dense(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense()
}

/// Rank over the rationals (Bareiss elimination, exact).
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over Z2 with rows packed into machine words.
pub fn mod2_rank(m: &[Vec<BigInt>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let words = cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (j, x) in r.iter().enumerate() {
                if x.is_odd() {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Diagonal of the Smith normal form (nonzero entries, in divisibility order).
pub fn snf_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[i][j] - &q * &a[i][t];
                    a[i][j] = v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold a row with a non-multiple into the pivot row
        let p = a[t][t].clone();
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero())) {
            for j in t..cols {
                let v = &a[t][j] + &a[i][j];
                a[t][j] = v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Betti numbers and torsion over Z, and Betti numbers over Z2, from the
/// boundary matrices alone.
pub struct OracleHomology {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub betti_mod2: Vec<usize>,
}

pub fn boundary_dense(k: &SimplicialComplex, degree: usize) -> Vec<Vec<BigInt>> {
    let rows = k.count(degree - 1);
    let cols = k.count(degree);
    let mut m = vec![vec![BigInt::zero(); cols]; rows];
    for (j, s) in k.simplices(degree).iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            let r = k.index_of(&f).unwrap();
            m[r][j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

pub fn oracle_homology(k: &SimplicialComplex) -> OracleHomology {
    let n = k.dim();
    let mats: Vec<Vec<Vec<BigInt>>> = (1..=n).map(|d| boundary_dense(k, d)).collect();
    let rank_q = |d: usize| if d == 0 || d > n { 0 } else { rational_rank(&mats[d - 1]) };
    let rank_2 = |d: usize| if d == 0 || d > n { 0 } else { mod2_rank(&mats[d - 1]) };
    let betti = (0..=n).map(|d| k.count(d) - rank_q(d) - rank_q(d + 1)).collect();
    let betti_mod2 = (0..=n).map(|d| k.count(d) - rank_2(d) - rank_2(d + 1)).collect();
    let torsion = (0..=n)
        .map(|d| {
            if d == n {
                Vec::new()
            } else {
                snf_diagonal(&mats[d]).into_iter().filter(|x| x > &BigInt::from(1)).collect()
            }
        })
        .collect();
    OracleHomology { betti, torsion, betti_mod2 }
}
