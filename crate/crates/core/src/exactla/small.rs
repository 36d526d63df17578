//! Allocation-light `F_p` kernels on raw residue buffers.
//!
//! The brute-force census solves millions of tiny intertwiner systems; these
//! routines skip the [`Mat`](super::Mat) wrapper and, for `p = 2`, pack rows
//! into machine words.

use super::mat::rref_in_place;
use super::FpRing;

/// Null-space basis of a row-major `rows × cols` residue matrix. `buf` is clobbered.
pub fn null_basis_mod_p(p: u32, buf: &mut [u32], rows: usize, cols: usize) -> Vec<Vec<u32>> {
    if p == 2 && cols <= 64 {
        let mut packed: Vec<u64> = (0..rows)
            .map(|i| {
                (0..cols).fold(0u64, |w, j| w | (((buf[i * cols + j] & 1) as u64) << j))
            })
            .collect();
        return gf2_null_basis(&mut packed, cols)
            .into_iter()
            .map(|w| (0..cols).map(|j| ((w >> j) & 1) as u32).collect())
            .collect();
    }
    let pivots = rref_in_place(&FpRing(p), buf, rows, cols);
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for fc in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[fc] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            let e = buf[row * cols + fc];
            if e != 0 {
                v[pc] = p - e;
            }
        }
        basis.push(v);
    }
    basis
}

/// Null space of a GF(2) matrix whose rows are bitmasks over `cols ≤ 64` columns.
pub fn gf2_null_basis(rows: &mut [u64], cols: usize) -> Vec<u64> {
    assert!(cols <= 64);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let bit = 1u64 << c;
        let Some(pr) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    let mut is_pivot = 0u64;
    for &c in &pivots {
        is_pivot |= 1 << c;
    }
    for fc in (0..cols).filter(|c| is_pivot & (1 << c) == 0) {
        let mut v = 1u64 << fc;
        for (row, &pc) in pivots.iter().enumerate() {
            if rows[row] & (1 << fc) != 0 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    basis
}

/// Dimension of the null space of a row-major residue matrix; `buf` is clobbered.
pub fn nullity_mod_p(p: u32, buf: &mut [u32], rows: usize, cols: usize) -> usize {
    if p == 2 && cols <= 64 {
        let mut packed: Vec<u64> = (0..rows)
            .map(|i| {
                (0..cols).fold(0u64, |w, j| w | (((buf[i * cols + j] & 1) as u64) << j))
            })
            .collect();
        return cols - gf2_rank(&mut packed, cols);
    }
    cols - rref_in_place(&FpRing(p), buf, rows, cols).len()
}

/// Rank of a GF(2) matrix given as row bitmasks; `rows` is clobbered.
pub fn gf2_rank(rows: &mut [u64], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let bit = 1u64 << c;
        let Some(pr) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot_row = rows[r];
        for row in rows[r + 1..].iter_mut() {
            if *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// `C = A·B` on row-major residue buffers (`A` is `m × k`, `B` is `k × n`).
pub fn mul_mod_p(p: u32, a: &[u32], b: &[u32], m: usize, k: usize, n: usize, out: &mut [u32]) {
    for i in 0..m {
        for j in 0..n {
            let mut acc = 0u64;
            for l in 0..k {
                acc = (acc + a[i * k + l] as u64 * b[l * n + j] as u64) % p as u64;
            }
            out[i * n + j] = acc as u32;
        }
    }
}

/// Rank of a square residue matrix; `buf` is clobbered.
pub fn rank_mod_p(p: u32, buf: &mut [u32], rows: usize, cols: usize) -> usize {
    rref_in_place(&FpRing(p), buf, rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Mat;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn nullity_agrees_with_generic(entries in proptest::collection::vec(0u32..3, 42), p in prop_oneof![Just(2u32), Just(3u32)]) {
            let (m, n) = (6, 7);
            let entries: Vec<u32> = entries.into_iter().map(|x| x % p).collect();
            let mut buf = entries.clone();
            let fast = nullity_mod_p(p, &mut buf, m, n);
            prop_assert_eq!(fast, Mat::from_residues(p, m, n, entries).null_space().cols());
        }

        #[test]
        fn gf2_path_agrees_with_generic(entries in proptest::collection::vec(0u32..2, 30)) {
            let (m, n) = (5, 6);
            let mut buf = entries.clone();
            let fast = null_basis_mod_p(2, &mut buf, m, n);
            let generic = Mat::from_residues(2, m, n, entries).null_space();
            prop_assert_eq!(fast.len(), generic.cols());
            for (k, v) in fast.iter().enumerate() {
                let col = Mat::from_residues(2, n, 1, v.clone());
                prop_assert_eq!(&col, &generic.column(k));
            }
        }

        #[test]
        fn mod_p_null_vectors_are_annihilated(entries in proptest::collection::vec(0u32..5, 20)) {
            let (m, n) = (4, 5);
            let a = Mat::from_residues(5, m, n, entries.clone());
            let mut buf = entries;
            for v in null_basis_mod_p(5, &mut buf, m, n) {
                let x = Mat::from_residues(5, n, 1, v);
                prop_assert!(a.mul(&x).is_zero());
            }
        }
    }
}
