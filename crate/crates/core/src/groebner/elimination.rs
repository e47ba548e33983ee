use std::collections::HashMap;
use std::sync::Arc;

use super::buchberger;
use super::points::{ideal_from_conditions, Selection};
use crate::monomial::Monomial;
use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Generators of `I ∩ k[x_k, ..., x_{N-1}]`: the members of the reduced
/// basis under `Elimination(k)` free of the first `k` variables. They stay
/// in the input ring.
pub fn eliminate<F: Scalar>(ring: &Arc<Ring>, gens: &[Polynomial<F>], first_k: usize) -> Result<Vec<Polynomial<F>>> {
    if ring.order() != MonomialOrder::Elimination(first_k) {
        return Err(Error::OrderMismatch(format!(
            "elimination of {first_k} variables needs the order Elimination({first_k}), ring has {:?}",
            ring.order()
        )));
    }
    let gb = buchberger(ring, gens)?;
    Ok(gb
        .gens()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.supported_in(first_k..ring.nvars())))
        .cloned()
        .collect())
}

/// Ideal of the closure of the image of `params`, a list of polynomials in
/// the parameter ring, in the ring `target` with one variable per entry.
pub fn implicitize<F: Scalar>(params: &[Polynomial<F>], target: &Arc<Ring>) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = params.first() else {
        return Ok(Vec::new());
    };
    let pring = first.ring().clone();
    if params.len() != target.nvars() {
        return Err(Error::RingMismatch);
    }
    let k = pring.nvars();
    let mut names: Vec<String> = pring.names().to_vec();
    names.extend(target.names().iter().cloned());
    let big = Ring::new(names, MonomialOrder::Elimination(k))?;
    let lift: Vec<Option<usize>> = (0..k).map(Some).collect();
    let mut graph = Vec::with_capacity(params.len());
    for (i, p) in params.iter().enumerate() {
        let p = p.map_to_ring(&big, &lift)?;
        graph.push(Polynomial::var(&big, k + i).sub(&p)?);
    }
    let down: Vec<Option<usize>> = (0..big.nvars()).map(|i| i.checked_sub(k)).collect();
    eliminate(&big, &graph, k)?
        .iter()
        .map(|g| g.map_to_ring(target, &down))
        .collect()
}

/// Castelnuovo-Mumford regularity bound `deg - codim + 2` for the ideal of
/// a reduced, irreducible, nondegenerate curve (Gruson-Lazarsfeld-Peskine);
/// such an ideal is generated in degrees at most this bound.
pub fn curve_regularity_bound(degree: u32, codim: u32) -> u32 {
    (degree + 2).saturating_sub(codim).max(2)
}

/// Ideal of a parametrized curve `P^1 -> P^N` given by binary forms of a
/// common degree `D`, up to degree `dmax`. A form of degree `d` vanishes on
/// the curve iff its pullback, a binary form of degree `D*d`, is zero, so
/// each `I_d` is the kernel of the composition map on coefficients. Exact,
/// and much cheaper than elimination for curves of high degree.
///
/// Returns a Gröbner basis of the ideal truncated at `dmax`, which is the
/// whole ideal once `dmax` reaches the generator degree;
/// [`curve_regularity_bound`] gives a safe choice for integral curves.
pub fn implicitize_curve<F: Scalar>(
    params: &[Polynomial<F>],
    target: &Arc<Ring>,
    dmax: u32,
) -> Result<Vec<Polynomial<F>>> {
    if params.len() != target.nvars() || params.is_empty() {
        return Err(Error::RingMismatch);
    }
    let pring = params[0].ring().clone();
    if pring.nvars() != 2 {
        return Err(Error::RingMismatch);
    }
    let degree = params[0].total_degree().unwrap_or(0);
    if params.iter().any(|p| !p.is_homogeneous() || p.total_degree() != Some(degree)) {
        return Err(Error::NotHomogeneous);
    }
    // pullbacks of monomials, built from the previous degree
    let mut pulled: HashMap<Monomial, Polynomial<F>> = HashMap::new();
    pulled.insert(Monomial::one(target.nvars()), Polynomial::constant(&pring, F::one()));
    ideal_from_conditions(target, dmax, Selection::TruncatedBasis, |mons| {
        let d = mons[0].degree();
        let mut next = HashMap::with_capacity(mons.len());
        for m in mons {
            let i = m.exps().iter().position(|&e| e > 0).unwrap();
            let lower = Monomial::var(m.nvars(), i).quotient_of(m).unwrap();
            let p = pulled[&lower].mul_unchecked(&params[i]);
            next.insert(m.clone(), p);
        }
        pulled = next;
        // row k: coefficient of s^(Dd-k) t^k
        let width = (degree * d) as usize + 1;
        let mut rows = vec![vec![F::zero(); mons.len()]; width];
        for (col, m) in mons.iter().enumerate() {
            for (mono, c) in pulled[m].terms() {
                rows[mono.exp(1) as usize][col] = c.clone();
            }
        }
        rows
    })
}
