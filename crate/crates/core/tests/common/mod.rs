//! Brute-force oracles shared by the integration tests. They use only the
//! order relation of a poset or explicit face lists, never the library's
//! Möbius tables or chain complexes.

#![allow(dead_code)]

use std::collections::BTreeSet;

use posetlab::FinitePoset;

/// Signed chain count `Σ_k (-1)^k c_k(x, y)`, where `c_k` counts chains
/// `x = z_0 < ... < z_k = y` (Hall's formula for `μ(x, y)`).
pub fn chain_count_mobius(p: &FinitePoset, x: usize, y: usize) -> i64 {
    let mut by_len: Vec<i64> = vec![0; p.len()];
    let mut total = if x == y { 1 } else { 0 };
    by_len[x] = 1;
    for k in 1..=p.len() {
        let mut next = vec![0i64; p.len()];
        for z in p.elements().filter(|&z| by_len[z] != 0) {
            for w in p.elements() {
                if p.lt(z, w) && p.le(w, y) {
                    next[w] += by_len[z];
                }
            }
        }
        if next.iter().all(|&c| c == 0) {
            break;
        }
        total += if k % 2 == 0 { next[y] } else { -next[y] };
        by_len = next;
    }
    total
}

/// `χ̃(P)` for a poset with a minimum: chains from the minimum to an
/// adjoined top.
pub fn chain_count_chi(p: &FinitePoset) -> Option<i64> {
    let bottom = p.label(p.minimum()?);
    let hat = p.attach_max();
    Some(chain_count_mobius(&hat, hat.index_of(bottom)?, hat.maximum()?))
}

/// All faces (including the empty face) generated by `gens`.
pub fn closure(gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut faces = BTreeSet::new();
    for g in gens {
        let mut g = g.clone();
        g.sort_unstable();
        g.dedup();
        for mask in 0u32..(1 << g.len()) {
            let f: Vec<u32> = (0..g.len()).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
            faces.insert(f);
        }
    }
    faces
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c] * inv % p;
                for k in c..cols {
                    let sub = factor * rows[rank][k] % p;
                    rows[r][k] = (rows[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduced Betti numbers `b̃_{-1}, b̃_0, ...` of a face set that contains
/// the empty face, from dense boundary matrices.
pub fn dense_reduced_betti(faces: &BTreeSet<Vec<u32>>, p: u64) -> Vec<usize> {
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    let by_size: Vec<Vec<&Vec<u32>>> = (0..=top).map(|k| faces.iter().filter(|f| f.len() == k).collect()).collect();
    // rank of the boundary from faces of size k to faces of size k - 1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > top || by_size[k].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<u64>> = by_size[k]
            .iter()
            .map(|f| {
                let mut row = vec![0u64; by_size[k - 1].len()];
                for i in 0..f.len() {
                    let mut g = (*f).clone();
                    g.remove(i);
                    let j = by_size[k - 1].iter().position(|h| **h == g).expect("closed under subsets");
                    row[j] = if i % 2 == 0 { 1 } else { p - 1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows, p)
    };
    (0..=top).map(|k| by_size[k].len() - boundary_rank(k) - boundary_rank(k + 1)).collect()
}

/// Faces of the link of `sigma`, in the original vertex numbering.
pub fn link(faces: &BTreeSet<Vec<u32>>, sigma: &[u32]) -> BTreeSet<Vec<u32>> {
    faces
        .iter()
        .filter(|f| sigma.iter().all(|v| f.contains(v)))
        .map(|f| f.iter().copied().filter(|v| !sigma.contains(v)).collect())
        .collect()
}

/// Cohen-Macaulay over `F_p`: every link has vanishing reduced homology
/// below its dimension.
pub fn dense_is_cm(faces: &BTreeSet<Vec<u32>>, p: u64) -> bool {
    faces.iter().all(|sigma| {
        let lk = link(faces, sigma);
        let betti = dense_reduced_betti(&lk, p);
        // betti[k] is b̃_{k-1}; the link has dimension len - 2
        betti.iter().take(betti.len().saturating_sub(1)).all(|&b| b == 0)
    })
}

/// `h_k = Σ_i (-1)^{k-i} C(d-i, k-i) f_{i-1}` from face counts.
pub fn h_from_f(f: &[i64], d: usize) -> Vec<i64> {
    let binom = |n: usize, k: usize| -> i64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
    };
    (0..=d).map(|k| (0..=k).map(|i| if (k - i) % 2 == 0 { 1 } else { -1 } * binom(d - i, k - i) * f[i]).sum()).collect()
}
