//! Oracles shared by the integration tests. Nothing here calls the
//! library's linear algebra, Gröbner or Koszul code: ranks are plain dense
//! elimination modulo a prime, and Betti numbers of monomial ideals come
//! from simplicial homology.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 32003;

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % P, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

/// Rank of a dense matrix over `Z/P` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(P)) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_multiple_of(P) {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * y) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Reduced homology ranks `dim H~_q` for `q = -1, 0, ...` of the simplicial
/// complex given by its faces as bitmasks (closed under subsets).
fn reduced_homology(faces: &[u32], nverts: usize) -> Vec<usize> {
    let dim_of = |f: u32| f.count_ones() as isize - 1;
    let top = faces.iter().map(|&f| dim_of(f)).max().unwrap_or(-2);
    if top < -1 {
        return Vec::new();
    }
    let by_dim: Vec<Vec<u32>> = (-1..=top)
        .map(|d| faces.iter().copied().filter(|&f| dim_of(f) == d).collect())
        .collect();
    // boundary from dimension d to d - 1, as a matrix with rows = d-faces
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d >= by_dim.len() {
            return 0;
        }
        let (hi, lo) = (&by_dim[d], &by_dim[d - 1]);
        let rows: Vec<Vec<u64>> = hi
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; lo.len()];
                let mut sign = 0;
                for v in 0..nverts {
                    if f & (1 << v) != 0 {
                        let g = f & !(1 << v);
                        let k = lo.iter().position(|&x| x == g).expect("complex is closed");
                        row[k] = if sign % 2 == 0 { 1 } else { P - 1 };
                        sign += 1;
                    }
                }
                row
            })
            .collect();
        rank_mod_p(rows)
    };
    (0..by_dim.len())
        .map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

/// Graded Betti numbers of `S/I` for a monomial ideal `I` in `nvars`
/// variables, keyed by `(i, j)` with internal degree `i + j`, computed from
/// the upper Koszul simplicial complexes
/// `K^b(I) = {F squarefree : x^(b - F) in I}` and
/// `β_{i,b}(I) = dim H~_{i-1}(K^b(I))`.
pub fn simplicial_betti(nvars: usize, gens: &[Vec<u32>]) -> BTreeMap<(usize, u32), u64> {
    let mut out = BTreeMap::new();
    out.insert((0, 0), 1);
    if gens.is_empty() {
        return out;
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return BTreeMap::new();
    }
    let lcm: Vec<u32> = (0..nvars).map(|k| gens.iter().map(|g| g[k]).max().unwrap()).collect();
    let mut b = vec![0u32; nvars];
    loop {
        if in_ideal(gens, &b) {
            let support: Vec<usize> = (0..nvars).filter(|&k| b[k] > 0).collect();
            let mut faces = Vec::new();
            for mask in 0u32..(1 << support.len()) {
                let mut m = b.clone();
                for (bit, &k) in support.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        m[k] -= 1;
                    }
                }
                if in_ideal(gens, &m) {
                    faces.push(mask);
                }
            }
            let deg: u32 = b.iter().sum();
            for (q, h) in reduced_homology(&faces, support.len()).into_iter().enumerate() {
                // H~_{q-1} gives β_{q, b}(I), i.e. β_{q+1} of S/I
                if h > 0 {
                    let i = q + 1;
                    *out.entry((i, deg - i as u32)).or_insert(0) += h as u64;
                }
            }
        }
        // next b below lcm
        let mut k = 0;
        while k < nvars && b[k] == lcm[k] {
            b[k] = 0;
            k += 1;
        }
        if k == nvars {
            break;
        }
        b[k] += 1;
    }
    out
}

/// `(i, j, value)` list sorted like `BettiTable::entries`.
pub fn as_entries(m: &BTreeMap<(usize, u32), u64>) -> Vec<(usize, u32, u64)> {
    m.iter().filter(|(_, &v)| v > 0).map(|(&(i, j), &v)| (i, j, v)).collect()
}

/// Betti table of `S/(f_1, ..., f_c)` for a regular sequence of the given
/// degrees: the Koszul complex on the `f_k` is the minimal resolution.
pub fn complete_intersection_table(degrees: &[u32]) -> BTreeMap<(usize, u32), u64> {
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << degrees.len()) {
        let i = mask.count_ones() as usize;
        let d: u32 = (0..degrees.len()).filter(|&k| mask & (1 << k) != 0).map(|k| degrees[k]).sum();
        *out.entry((i, d - i as u32)).or_insert(0) += 1;
    }
    out
}

/// All exponent vectors of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// A polynomial with integer coefficients as `(coefficient, exponents)`.
pub type IntPoly = Vec<(i64, Vec<u32>)>;

/// `dim_k (S/I)_d` over `Z/P` with `I_d` spanned by all `m * f`, `m` a
/// monomial; needs homogeneous generators.
pub fn hilbert_function_by_rank(nvars: usize, gens: &[IntPoly], d: u32) -> usize {
    let basis = monomials(nvars, d);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let gd: u32 = g[0].1.iter().sum();
        if gd > d {
            continue;
        }
        for m in monomials(nvars, d - gd) {
            let mut row = vec![0u64; basis.len()];
            for (c, e) in g {
                let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                let v = c.rem_euclid(P as i64) as u64;
                row[index[&prod]] = (row[index[&prod]] + v) % P;
            }
            rows.push(row);
        }
    }
    basis.len() - rank_mod_p(rows)
}

/// Random monomial ideal: `count` generators with exponents summing to at
/// most `max_deg` in `nvars` variables.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, nvars: usize, count: usize, max_deg: u32) -> Vec<Vec<u32>> {
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let mut e = vec![0u32; nvars];
            for _ in 0..d {
                e[rng.gen_range(0..nvars)] += 1;
            }
            e
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `C(n, k)` for small arguments, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}
