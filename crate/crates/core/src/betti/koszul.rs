//! Betti numbers as Koszul homology: `β_{i,m-i} = dim H_i(x_t..x_N; R)_m`,
//! computed degree by degree from ranks of the Koszul differentials with
//! multiplication in `R` realized on standard monomials.

use std::collections::HashMap;

use rayon::prelude::*;

use super::BettiTable;
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, MonomialIdeal};
use crate::hilbert::hilbert_series;
use crate::invariants::NoetherPosition;
use crate::linalg::SparseVec;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulOptions {
    /// Largest row to compute; `None` picks a default and may extend it once.
    pub cap: Option<u32>,
    /// Drop trailing variables that divide no leading monomial before
    /// building the complex. They are regular on `R`, so the Betti numbers
    /// do not change.
    pub reduce_regular: bool,
    /// Verify `∂ ∘ ∂ = 0` on every graded piece.
    pub check_complex: bool,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions {
            cap: None,
            reduce_regular: true,
            check_complex: cfg!(debug_assertions),
        }
    }
}

impl KoszulOptions {
    pub fn with_cap(cap: u32) -> Self {
        KoszulOptions {
            cap: Some(cap),
            ..Self::default()
        }
    }
}

/// A homogeneous component of `R = S/I` with its standard-monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Monomial>,
}

pub fn graded_piece<F: Scalar>(gb: &GroebnerBasis<F>, degree: u32) -> GradedPiece {
    GradedPiece {
        degree,
        basis: gb.initial_ideal().standard_monomials(degree),
    }
}

/// Bound on the internal degree `i + j` of any nonzero `β^{S_t}_{i,j}(S/I)`.
///
/// Over `S_t`, `S/in(I)` splits as `⊕_a S_t/M_a(-|a|)` over front monomials
/// `x^a` in `x_0..x_{t-1}` outside `in(I)`, where `M_a = (in(I) : x^a) ∩ S_t`.
/// The Taylor resolution bounds each summand by the degree of the lcm of
/// its generators, and Betti numbers of `S/I` are dominated by those of
/// `S/in(I)`. Requires pure powers of the front variables in `in(I)`.
pub fn internal_degree_bound(init: &MonomialIdeal, t: usize) -> u32 {
    let n = init.nvars();
    let mut bound = 0;
    let mut d = 0;
    loop {
        let fronts = init.standard_monomials_in(0..t, d);
        if fronts.is_empty() {
            break;
        }
        for a in fronts {
            let lcm = init
                .gens()
                .iter()
                .filter(|g| g.restrict(0..t).divides(&a))
                .map(|g| g.restrict(t..n))
                .fold(Monomial::one(n), |acc, g| acc.lcm(&g));
            bound = bound.max(d + lcm.degree());
        }
        d += 1;
    }
    bound
}

/// The largest `t` such that `R` is finite over `S_t`: every `x_i` with
/// `i < t` has a pure power in `in(I)`.
fn max_ring_index(init: &MonomialIdeal) -> usize {
    (0..init.nvars())
        .take_while(|&i| init.pure_power_of(i).is_some())
        .count()
}

/// Multiplication data for one degree `d` of `R'`.
struct Degree<F> {
    basis: Vec<Monomial>,
    /// `mult[k][s]`: `x_{V[k]} * basis[s]` in the basis of degree `d + 1`.
    mult: Vec<Vec<SparseVec<F>>>,
}

/// Normal forms of monomials in a fixed degree, memoized. Reduction
/// replaces `m = q * lm(g)` by `-q * tail(g)`, whose monomials are smaller.
struct NormalForms<'a, F: Scalar> {
    gens: &'a [Polynomial<F>],
    init: &'a MonomialIdeal,
    index: HashMap<Monomial, usize>,
    memo: HashMap<Monomial, SparseVec<F>>,
}

impl<'a, F: Scalar> NormalForms<'a, F> {
    fn new(gens: &'a [Polynomial<F>], init: &'a MonomialIdeal, basis: &[Monomial]) -> Self {
        NormalForms {
            gens,
            init,
            index: basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect(),
            memo: HashMap::new(),
        }
    }

    fn reducer(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        self.gens
            .iter()
            .enumerate()
            .find_map(|(k, g)| g.leading_monomial().unwrap().quotient_of(m).map(|q| (k, q)))
    }

    fn nf(&mut self, m: &Monomial) -> SparseVec<F> {
        if let Some(&i) = self.index.get(m) {
            return vec![(i, F::one())];
        }
        let mut stack = vec![m.clone()];
        while let Some(top) = stack.last().cloned() {
            if self.memo.contains_key(&top) || self.index.contains_key(&top) {
                stack.pop();
                continue;
            }
            debug_assert!(self.init.contains(&top));
            let (k, q) = self.reducer(&top).expect("non-standard monomial has a reducer");
            let g = &self.gens[k];
            let tail: Vec<(Monomial, F)> = g.terms()[1..].iter().map(|(t, c)| (q.mul(t), c.clone())).collect();
            let missing: Vec<Monomial> = tail
                .iter()
                .filter(|(t, _)| !self.memo.contains_key(t) && !self.index.contains_key(t))
                .map(|(t, _)| t.clone())
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let mut acc: HashMap<usize, F> = HashMap::new();
            for (t, c) in tail {
                let part = match self.index.get(&t) {
                    Some(&i) => vec![(i, F::one())],
                    None => self.memo[&t].clone(),
                };
                for (i, v) in part {
                    let e = acc.entry(i).or_insert_with(F::zero);
                    *e = e.clone() - c.clone() * v;
                }
            }
            let mut v: SparseVec<F> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            v.sort_by_key(|p| p.0);
            self.memo.insert(top, v);
            stack.pop();
        }
        self.memo[m].clone()
    }
}

/// Subsets of `0..k` of each size as bitmasks, with their positions.
struct Subsets {
    by_size: Vec<Vec<u32>>,
    position: HashMap<u32, usize>,
}

impl Subsets {
    fn new(k: usize) -> Self {
        assert!(k < 32);
        let mut by_size = vec![Vec::new(); k + 1];
        for mask in 0u32..(1 << k) {
            by_size[mask.count_ones() as usize].push(mask);
        }
        let mut position = HashMap::new();
        for list in &by_size {
            for (p, &m) in list.iter().enumerate() {
                position.insert(m, p);
            }
        }
        Subsets { by_size, position }
    }

    fn count(&self, i: usize) -> usize {
        self.by_size.get(i).map_or(0, |l| l.len())
    }
}

struct Complex<F> {
    nv: usize,
    subsets: Subsets,
    degrees: Vec<Degree<F>>,
}

impl<F: Scalar> Complex<F> {
    fn dim_r(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        self.degrees.get(d as usize).map_or(0, |g| g.basis.len())
    }

    fn dim_k(&self, i: usize, m: u32) -> usize {
        self.subsets.count(i) * self.dim_r(m as i64 - i as i64)
    }

    /// Images of the basis of `K_i(m)` under `∂_i`, as vectors in `K_{i-1}(m)`.
    fn differential(&self, i: usize, m: u32) -> Vec<SparseVec<F>> {
        let d = m as i64 - i as i64;
        if i == 0 || i > self.nv || d < 0 || self.dim_r(d) == 0 {
            return Vec::new();
        }
        let d = d as usize;
        let target_dim = self.dim_r(d as i64 + 1);
        let mut out = Vec::with_capacity(self.subsets.count(i) * self.dim_r(d as i64));
        for &mask in &self.subsets.by_size[i] {
            for s in 0..self.degrees[d].basis.len() {
                let mut v: Vec<(usize, F)> = Vec::new();
                let mut k = 0;
                for pos in 0..self.nv {
                    if mask & (1 << pos) == 0 {
                        continue;
                    }
                    let smaller = mask & !(1 << pos);
                    let block = self.subsets.position[&smaller] * target_dim;
                    let sign = if k % 2 == 0 { F::one() } else { -F::one() };
                    for (c, x) in &self.degrees[d].mult[pos][s] {
                        v.push((block + c, sign.clone() * x.clone()));
                    }
                    k += 1;
                }
                v.sort_by_key(|p| p.0);
                out.push(v);
            }
        }
        out
    }

    fn rank(&self, i: usize, m: u32) -> usize {
        let rows = self.differential(i, m);
        let ncols = self.dim_k(i - 1, m);
        F::rank(rows, ncols)
    }

    /// `∂_i ∘ ∂_{i+1} = 0` on `K_{i+1}(m)`.
    fn check(&self, i: usize, m: u32) -> bool {
        if i == 0 || i >= self.nv {
            return true;
        }
        let upper = self.differential(i + 1, m);
        let lower = self.differential(i, m);
        let mut acc: HashMap<usize, F> = HashMap::new();
        for v in upper {
            acc.clear();
            for (c, x) in v {
                for (c2, y) in &lower[c] {
                    let e = acc.entry(*c2).or_insert_with(F::zero);
                    *e = e.clone() + x.clone() * y.clone();
                }
            }
            if acc.values().any(|x| !x.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Betti table of `R = S/I` over `S_t`.
///
/// Rows up to the cap are exact. The table is complete (not truncated)
/// when the certified bound on internal degrees is within reach; see
/// [`internal_degree_bound`].
pub fn koszul_betti<F: Scalar>(gb: &GroebnerBasis<F>, t: usize, opts: KoszulOptions) -> Result<BettiTable> {
    if !gb.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let nvars = gb.ring().nvars();
    let init = gb.initial_ideal();
    let tmax = max_ring_index(init);
    if t > tmax {
        return Err(Error::RingIndex { t, max: tmax });
    }
    if gb.is_unit_ideal() {
        return Ok(BettiTable::new(t, opts.cap.unwrap_or(0)));
    }

    // trailing variables regular on R
    let mut gb = gb.clone();
    let mut last = nvars;
    if opts.reduce_regular {
        while last > t && init.gens().iter().all(|g| g.exp(last - 1) == 0) {
            gb = gb.set_var_zero(last - 1)?;
            last -= 1;
        }
    }
    let nv = last - t;
    let init = gb.initial_ideal().clone();

    // certified range of internal degrees
    let mut bound = internal_degree_bound(&init, t);
    let active_artinian = (0..last).all(|i| init.pure_power_of(i).is_some());
    let top = if active_artinian {
        let mut d = 0;
        while !init.standard_monomials_in(0..last, d + 1).is_empty() {
            d += 1;
        }
        bound = bound.min(d + nv as u32);
        Some(d)
    } else {
        None
    };
    // minimal generators of R' over S_t sit in degrees of front standard monomials
    let mut gen_top = 0;
    while !init.standard_monomials_in(0..t, gen_top + 1).is_empty() {
        gen_top += 1;
    }
    let needed_cap = gen_top.max(bound.saturating_sub(1));

    let default_cap = init.max_degree().unwrap_or(0) + nvars as u32 + 1;
    let mut cap = opts.cap.unwrap_or(default_cap);
    if opts.cap.is_none() && needed_cap > cap {
        // one automatic extension, straight to the certified bound
        cap = needed_cap;
    }
    let truncated = needed_cap > cap;
    let m_max = bound.min(cap + nv as u32);

    // bases and multiplication tables, built before the parallel phase
    let rmax = match top {
        Some(d) => d.min(m_max),
        None => m_max,
    };
    let mut bases: Vec<Vec<Monomial>> = (0..=rmax + 1)
        .map(|d| init.standard_monomials_in(0..last, d))
        .collect();
    let gens = gb.gens().to_vec();
    let mut degrees = Vec::with_capacity(rmax as usize + 1);
    for d in 0..=rmax as usize {
        let mut nf = NormalForms::new(&gens, &init, &bases[d + 1]);
        let mult = (t..last)
            .map(|v| bases[d].iter().map(|s| nf.nf(&s.mul_var(v))).collect())
            .collect();
        degrees.push(Degree {
            basis: std::mem::take(&mut bases[d]),
            mult,
        });
    }
    let complex = Complex {
        nv,
        subsets: Subsets::new(nv),
        degrees,
    };

    // rank of ∂_i in internal degree m, for 1 <= i <= nv
    let jobs: Vec<(usize, u32)> = (0..=m_max)
        .flat_map(|m| (1..=nv).map(move |i| (i, m)))
        .filter(|&(i, m)| complex.dim_k(i, m) > 0 && complex.dim_k(i - 1, m) > 0)
        .collect();
    let ranks: HashMap<(usize, u32), usize> = jobs
        .par_iter()
        .map(|&(i, m)| ((i, m), complex.rank(i, m)))
        .collect();
    if opts.check_complex {
        let bad = jobs
            .par_iter()
            .filter(|&&(i, m)| complex.dim_k(i, m) * complex.dim_k(i + 1, m) <= 4_000_000)
            .find_any(|&&(i, m)| !complex.check(i, m));
        if let Some((i, m)) = bad {
            return Err(Error::Internal(format!("Koszul differentials do not compose to zero at ({i}, {m})")));
        }
    }

    let mut table = BettiTable::new(t, cap);
    table.truncated = truncated;
    for m in 0..=m_max {
        for i in 0..=nv.min(m as usize) {
            let j = m - i as u32;
            if j > cap {
                continue;
            }
            let dim = complex.dim_k(i, m);
            let r_out = ranks.get(&(i, m)).copied().unwrap_or(0);
            let r_in = ranks.get(&(i + 1, m)).copied().unwrap_or(0);
            let beta = dim as i64 - r_out as i64 - r_in as i64;
            if beta < 0 {
                return Err(Error::Internal(format!("negative homology at ({i}, {j})")));
            }
            table.set(i, j, beta as u64);
        }
    }
    if !truncated {
        check_against_hilbert(&table, &init, t, last)?;
    }
    Ok(table)
}

/// Σ (-1)^i β_{i,j} s^{i+j} must equal the Hilbert series of `R'` times
/// `(1-s)^{#active variables}` for a complete table.
fn check_against_hilbert(table: &BettiTable, init: &MonomialIdeal, t: usize, last: usize) -> Result<()> {
    let n = init.nvars();
    // restrict to the active variables: the cut ones divide no generator
    let cut = MonomialIdeal::new(
        n,
        init.gens().iter().cloned().chain((last..n).map(|i| Monomial::var(n, i))),
    );
    let hs = hilbert_series(&cut);
    // hs.kpoly is over (1-s)^n; the cut variables contribute (1-s)^(n-last)
    // and the front ones (1-s)^t
    let mut k = hs.kpoly.clone();
    for _ in 0..(n - last) {
        k = divide_one_minus_s(&k).ok_or_else(|| Error::Internal("Hilbert numerator not divisible".into()))?;
    }
    for _ in 0..t {
        k = divide_one_minus_s(&k).ok_or_else(|| Error::Internal("module not finite over S_t".into()))?;
    }
    if k != table.k_polynomial() {
        return Err(Error::Internal(format!(
            "Betti table inconsistent with Hilbert series: {:?} vs {:?}",
            table.k_polynomial(),
            k
        )));
    }
    Ok(())
}

fn divide_one_minus_s(p: &[i64]) -> Option<Vec<i64>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = vec![0; p.len() - 1];
    let mut acc = 0;
    for (i, c) in p.iter().enumerate().take(p.len() - 1) {
        acc += c;
        q[i] = acc;
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    Some(q)
}

/// Betti numbers of `R` as a module over the Noether normalization
/// `S = S_e`.
pub fn betti_over_noether<F: Scalar>(np: &NoetherPosition<F>, opts: KoszulOptions) -> Result<BettiTable> {
    koszul_betti(&np.gb, np.e, opts)
}
