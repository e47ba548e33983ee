use std::cmp::Ordering;
use std::sync::Arc;

use super::{normal_form, s_polynomial, GroebnerBasis};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<F: Scalar> {
    order: MonomialOrder,
    basis: Vec<Polynomial<F>>,
    leads: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Scalar> State<F> {
    fn reducers(&self) -> Vec<Polynomial<F>> {
        self.basis
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g.clone())
            .collect()
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: Polynomial<F>) {
        let k = self.basis.len();
        let lh = h.leading_monomial().unwrap().clone();

        // candidate pairs (i, k); coprime pairs are kept for now so that
        // they can suppress others with the same lcm
        let mut cand: Vec<(Pair, bool)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let lcm = self.leads[i].lcm(&lh);
                let coprime = self.leads[i].is_coprime(&lh);
                (Pair { i, j: k, lcm }, coprime)
            })
            .collect();

        // chain criterion among the new pairs: drop (i,k) if some other
        // lcm properly divides lcm(i,k)
        let snapshot: Vec<Monomial> = cand.iter().map(|(p, _)| p.lcm.clone()).collect();
        cand.retain(|(p, _)| !snapshot.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));

        // among equal lcms keep one, preferring a coprime representative;
        // then drop the group entirely if that one is coprime
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in cand {
            match kept.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
                Some(slot) => {
                    if coprime && !slot.1 {
                        *slot = (p, coprime);
                    }
                }
                None => kept.push((p, coprime)),
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p).collect();

        // old pairs whose lcm is a proper multiple of both new lcms
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && leads[p.i].lcm(&lh) != p.lcm
                && leads[p.j].lcm(&lh) != p.lcm)
        });

        // elements whose leading monomial is a multiple of lh stop being
        // reducers; their pending pairs remain
        for i in 0..k {
            if self.active[i] && lh.divides(&self.leads[i]) {
                self.active[i] = false;
            }
        }

        self.pairs.extend(new_pairs);
        self.basis.push(h);
        self.leads.push(lh);
        self.active.push(true);
    }

    /// Normal strategy: smallest lcm, ties broken by the indices.
    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                match order.compare(&a.lcm, &b.lcm) {
                    Ordering::Equal => (a.j, a.i).cmp(&(b.j, b.i)),
                    o => o,
                }
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring's
/// order. The output is independent of the input presentation.
pub fn buchberger<F: Scalar>(ring: &Arc<Ring>, gens: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    if gens.iter().any(|g| !Ring::same(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let mut state = State {
        order: ring.order(),
        basis: Vec::new(),
        leads: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let r = normal_form(g, &state.reducers());
        if !r.is_zero() {
            state.insert(r.monic());
        }
    }
    while let Some(pair) = state.pop_pair() {
        let s = s_polynomial(&state.basis[pair.i], &state.basis[pair.j]);
        let r = normal_form(&s, &state.reducers());
        if !r.is_zero() {
            state.insert(r.monic());
        }
    }
    Ok(GroebnerBasis::from_reduced(ring, interreduce(state.reducers())))
}

/// Turns a Gröbner basis into the reduced one.
fn interreduce<F: Scalar>(mut g: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    // minimal basis: drop elements whose leading monomial is divisible by
    // another's; among equal leading monomials keep the first
    let mut keep = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        let li = gi.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(j, gj)| {
            let lj = gj.leading_monomial().unwrap();
            j != i && lj.divides(li) && (lj != li || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    g = keep.into_iter().map(|i| g[i].clone()).collect();
    for i in 0..g.len() {
        let others: Vec<Polynomial<F>> = g
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let lead = Polynomial::monomial(
            g[i].ring(),
            g[i].leading_monomial().unwrap().clone(),
            g[i].leading_coeff().unwrap().clone(),
        );
        let tail = g[i].sub(&lead).unwrap();
        g[i] = lead.add(&normal_form(&tail, &others)).unwrap().monic();
    }
    g
}
