//! Hilbert series of monomial quotients and the initial-ideal shapes that
//! characterize the extremal-degree cases.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::groebner::{GroebnerBasis, MonomialIdeal};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::scalar::Scalar;

/// Univariate integer polynomial, coefficient of `t^k` at index `k`.
type TPoly = Vec<i64>;

fn trim(mut p: TPoly) -> TPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn shift(a: &TPoly, k: usize) -> TPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; k];
    out.extend_from_slice(a);
    out
}

/// Exact binomial coefficient `C(n, k)` for `n, k >= 0` in `i64`.
fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Hilbert series `h(t) / (1-t)^dim` of `S/M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// `K(t)` with `HS = K(t) / (1-t)^nvars`.
    pub kpoly: Vec<i64>,
    /// `h(t)` after dividing out all factors `1-t`; empty for the zero ring.
    pub numerator: Vec<i64>,
    pub krull_dim: usize,
    /// `h(1)`; zero only for the zero ring.
    pub degree: u64,
}

impl HilbertData {
    /// `dim_k (S/M)_d`, the coefficient of `t^d` in the series.
    pub fn hilbert_function(&self, d: u32) -> u64 {
        let d = d as i64;
        let dim = self.krull_dim as i64;
        let v: i64 = self
            .numerator
            .iter()
            .enumerate()
            .map(|(k, h)| {
                let m = d - k as i64;
                if m < 0 {
                    0
                } else if dim == 0 {
                    if m == 0 {
                        *h
                    } else {
                        0
                    }
                } else {
                    h * binom(m + dim - 1, dim - 1)
                }
            })
            .sum();
        debug_assert!(v >= 0);
        v as u64
    }

    /// Degree from which the Hilbert function agrees with the polynomial.
    pub fn polynomial_from(&self) -> u32 {
        (self.numerator.len() as i64 - self.krull_dim as i64).max(0) as u32
    }
}

/// Hilbert series of `S/M` by pivot recursion
/// `K(M) = K(M + (x)) + t K(M : x)`, pivoting on the variable occurring in
/// the most generators.
pub fn hilbert_series(m: &MonomialIdeal) -> HilbertData {
    let mut memo = HashMap::new();
    let kpoly = kpoly(m, &mut memo);
    let mut numerator = kpoly.clone();
    let mut factors = 0;
    // divide by (1 - t) while t = 1 is a root
    while !numerator.is_empty() && numerator.iter().sum::<i64>() == 0 {
        let mut q = vec![0; numerator.len() - 1];
        let mut acc = 0;
        for (i, c) in numerator.iter().enumerate().take(numerator.len() - 1) {
            acc += c;
            q[i] = acc;
        }
        numerator = trim(q);
        factors += 1;
    }
    let degree = numerator.iter().sum::<i64>();
    debug_assert!(degree >= 0);
    let krull_dim = if numerator.is_empty() {
        0
    } else {
        m.nvars() - factors
    };
    HilbertData {
        nvars: m.nvars(),
        kpoly,
        numerator,
        krull_dim,
        degree: degree as u64,
    }
}

fn kpoly(m: &MonomialIdeal, memo: &mut HashMap<MonomialIdeal, TPoly>) -> TPoly {
    if m.is_zero() {
        return vec![1];
    }
    if m.is_unit() {
        return Vec::new();
    }
    let gens = m.gens();
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            mul(&acc, &f)
        });
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let n = m.nvars();
    let pivot = (0..n)
        .max_by_key(|&i| (gens.iter().filter(|g| g.exp(i) > 0).count(), std::cmp::Reverse(i)))
        .unwrap();
    let plus = m.with_gen(Monomial::var(n, pivot));
    let colon = m.colon_var(pivot);
    let v = add(&kpoly(&plus, memo), &shift(&kpoly(&colon, memo), 1));
    memo.insert(m.clone(), v.clone());
    v
}

/// Krull dimension from supports: the largest set of variables containing
/// the support of no generator. Exponential in the number of variables;
/// meant as a cross-check.
pub fn krull_dim_by_support(m: &MonomialIdeal) -> Option<usize> {
    if m.is_unit() {
        return None;
    }
    let n = m.nvars();
    assert!(n <= 20, "support heuristic is exponential");
    let masks: Vec<u32> = m
        .gens()
        .iter()
        .map(|g| g.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    (0u32..(1 << n))
        .filter(|u| masks.iter().all(|g| g & !u != 0))
        .map(|u| u.count_ones() as usize)
        .max()
}

/// Degree of `S/I` read off the initial ideal.
pub fn degree_of_quotient<F: Scalar>(gb: &GroebnerBasis<F>) -> u64 {
    hilbert_series(gb.initial_ideal()).degree
}

/// Per-degree counts of standard monomials supported in `vars`, degrees
/// `0..=up_to`.
pub fn count_standard(m: &MonomialIdeal, vars: std::ops::Range<usize>, up_to: u32) -> Vec<usize> {
    m.count_standard(vars, up_to)
}

/// Initial-ideal shapes in the front variables `x_0..x_{e-1}`, writing `T_d`
/// for all monomials of degree `d` in them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum StructurePattern {
    /// Exactly `T_{r+1}`.
    PurePower { e: usize, r: u32 },
    /// `T_{r+1}` plus one monomial `u` of degree `r` in the front variables.
    PurePowerPlusU { e: usize, r: u32, u: Vec<u32> },
    /// `T_{r+1}` plus `u v_1, ..., u v_s` with `u` of degree `r` in the front
    /// variables and each `v_i` of positive degree in the remaining ones.
    PurePowerPlusUV {
        e: usize,
        r: u32,
        u: Vec<u32>,
        v: Vec<Vec<u32>>,
    },
}

impl StructurePattern {
    pub fn r(&self) -> u32 {
        match self {
            StructurePattern::PurePower { r, .. }
            | StructurePattern::PurePowerPlusU { r, .. }
            | StructurePattern::PurePowerPlusUV { r, .. } => *r,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StructurePattern::PurePower { .. } => "PurePower",
            StructurePattern::PurePowerPlusU { .. } => "PurePowerPlusU",
            StructurePattern::PurePowerPlusUV { .. } => "PurePowerPlusUV",
        }
    }
}

/// Recognizes the three shapes from the minimal generators of `m`.
pub fn match_structure(m: &MonomialIdeal, e: usize) -> Option<StructurePattern> {
    let n = m.nvars();
    if e == 0 || e > n || m.is_zero() || m.is_unit() {
        return None;
    }
    let (front, mixed): (Vec<&Monomial>, Vec<&Monomial>) = m.gens().iter().partition(|g| g.supported_in(0..e));
    let top = front.iter().map(|g| g.degree()).max()?;
    let t_top = monomials_of_degree(n, 0..e, top);
    let is_t = |gens: &[&Monomial]| {
        gens.len() == t_top.len() && gens.iter().all(|g| g.degree() == top)
    };

    if mixed.is_empty() {
        if is_t(&front) {
            return Some(StructurePattern::PurePower { e, r: top - 1 });
        }
        // T_{r+1} plus u: u is the unique generator of degree r = top - 1
        let lower: Vec<&&Monomial> = front.iter().filter(|g| g.degree() != top).collect();
        if lower.len() != 1 || lower[0].degree() + 1 != top {
            return None;
        }
        let u = *lower[0];
        let expected = MonomialIdeal::new(n, t_top.into_iter().chain(std::iter::once(u.clone())));
        if &expected == m {
            return Some(StructurePattern::PurePowerPlusU {
                e,
                r: top - 1,
                u: u.exps()[..e].to_vec(),
            });
        }
        return None;
    }

    if !is_t(&front) {
        return None;
    }
    let r = top - 1;
    let u = mixed[0].restrict(0..e);
    if u.degree() != r {
        return None;
    }
    let mut v = Vec::new();
    for g in &mixed {
        if g.restrict(0..e) != u {
            return None;
        }
        let back = g.restrict(e..n);
        debug_assert!(back.degree() > 0);
        v.push(back.exps()[e..].to_vec());
    }
    Some(StructurePattern::PurePowerPlusUV {
        e,
        r,
        u: u.exps()[..e].to_vec(),
        v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    fn brute_force(mi: &MonomialIdeal, d: u32) -> u64 {
        monomials_of_degree(mi.nvars(), 0..mi.nvars(), d)
            .iter()
            .filter(|x| !mi.contains(x))
            .count() as u64
    }

    #[test]
    fn zero_ideal() {
        let h = hilbert_series(&MonomialIdeal::zero(4));
        assert_eq!((h.numerator.clone(), h.krull_dim, h.degree), (vec![1], 4, 1));
        assert_eq!(h.hilbert_function(2), 10);
    }

    #[test]
    fn power_ideals() {
        for (e, r, n) in [(2usize, 2u32, 2usize), (3, 1, 1), (3, 3, 2), (1, 4, 1)] {
            let mi = MonomialIdeal::power_of_variables(n + e + 1, 0..e, r + 1);
            let h = hilbert_series(&mi);
            assert_eq!(h.krull_dim, n + 1);
            assert_eq!(h.degree, binom((e as u32 + r) as i64, r as i64) as u64);
            // plus a degree-r monomial u
            let u = monomials_of_degree(n + e + 1, 0..e, r)[0].clone();
            let h2 = hilbert_series(&mi.with_gen(u));
            assert_eq!(h2.degree, h.degree - 1);
        }
    }

    #[test]
    fn structure_examples() {
        let cube = MonomialIdeal::power_of_variables(5, 0..2, 3);
        assert_eq!(match_structure(&cube, 2), Some(StructurePattern::PurePower { e: 2, r: 2 }));
        let with_u = cube.with_gen(m(&[2, 0, 0, 0, 0]));
        assert_eq!(
            match_structure(&with_u, 2),
            Some(StructurePattern::PurePowerPlusU { e: 2, r: 2, u: vec![2, 0] })
        );
        let uv = MonomialIdeal::power_of_variables(4, 0..2, 2)
            .with_gen(m(&[1, 0, 1, 0]))
            .with_gen(m(&[1, 0, 0, 1]));
        assert_eq!(
            match_structure(&uv, 2),
            Some(StructurePattern::PurePowerPlusUV {
                e: 2,
                r: 1,
                u: vec![1, 0],
                v: vec![vec![0, 1], vec![1, 0]],
            })
        );
        // mixed generators with different u
        let bad = uv.with_gen(m(&[0, 1, 3, 0]));
        assert_eq!(match_structure(&bad, 2), None);
        assert_eq!(match_structure(&MonomialIdeal::new(3, vec![m(&[1, 1, 0])]), 2), None);
    }

    #[test]
    fn standard_counts_match_degrees() {
        for (e, r) in [(2usize, 2u32), (3, 2), (2, 3)] {
            let n = e + 2;
            let t = MonomialIdeal::power_of_variables(n, 0..e, r + 1);
            let total: usize = count_standard(&t, 0..e, r + 1).iter().sum();
            assert_eq!(total as i64, binom((e as u32 + r) as i64, r as i64));
            let u = monomials_of_degree(n, 0..e, r)[1].clone();
            let total: usize = count_standard(&t.with_gen(u), 0..e, r + 1).iter().sum();
            assert_eq!(total as i64, binom((e as u32 + r) as i64, r as i64) - 1);
        }
    }

    fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (2usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u32..4, n), 0..6)
                .prop_map(move |gs| MonomialIdeal::new(n, gs.iter().map(|e| m(e))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn series_matches_brute_force(mi in arb_ideal()) {
            let h = hilbert_series(&mi);
            for d in 0..=8 {
                prop_assert_eq!(h.hilbert_function(d), brute_force(&mi, d));
            }
            if !mi.is_unit() {
                prop_assert_eq!(Some(h.krull_dim), krull_dim_by_support(&mi));
                prop_assert!(h.degree > 0);
            }
        }

        #[test]
        fn degree_stable_under_redundant_generator(mi in arb_ideal(), k in 0usize..6) {
            if let Some(g) = mi.gens().get(k % mi.gens().len().max(1)) {
                let bigger = mi.with_gen(g.mul_var(0));
                prop_assert_eq!(hilbert_series(&bigger), hilbert_series(&mi));
            }
        }
    }
}
