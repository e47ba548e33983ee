//! Gröbner bases: division, Buchberger's algorithm, elimination and
//! vanishing ideals of point sets.

mod buchberger;
mod elimination;
mod monomial_ideal;
mod points;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

pub use buchberger::buchberger;
pub use elimination::{curve_regularity_bound, eliminate, implicitize, implicitize_curve};
pub use monomial_ideal::MonomialIdeal;
pub use points::vanishing_ideal_of_points;

/// A reduced Gröbner basis with its initial ideal.
///
/// Generators are monic and sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Scalar> {
    ring: Arc<Ring>,
    gens: Vec<Polynomial<F>>,
    initial: MonomialIdeal,
}

impl<F: Scalar> GroebnerBasis<F> {
    /// Wraps a list that is already a reduced basis, sorting it into
    /// canonical order.
    pub(crate) fn from_reduced(ring: &Arc<Ring>, mut gens: Vec<Polynomial<F>>) -> Self {
        let order = ring.order();
        gens.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let initial = MonomialIdeal::new(
            ring.nvars(),
            gens.iter().map(|g| g.leading_monomial().unwrap().clone()),
        );
        debug_assert_eq!(initial.gens().len(), gens.len());
        GroebnerBasis {
            ring: ring.clone(),
            gens,
            initial,
        }
    }

    /// A monomial ideal is its own reduced basis.
    pub fn from_monomial_ideal(ring: &Arc<Ring>, ideal: &MonomialIdeal) -> Self {
        let gens = ideal
            .gens()
            .iter()
            .map(|m| Polynomial::monomial(ring, m.clone(), F::one()))
            .collect();
        Self::from_reduced(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn initial_ideal(&self) -> &MonomialIdeal {
        &self.initial
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.initial.is_unit()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.gens)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        satisfies_buchberger_criterion(&self.gens)
    }

    /// Reducedness: monic, and no term of a generator is divisible by the
    /// leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && self.gens.iter().enumerate().all(|(j, h)| {
                    i == j
                        || g.terms()
                            .iter()
                            .all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
                })
        })
    }

    /// The basis of the ideal with `x_i` set to zero, provided `x_i` divides
    /// no leading monomial; then the substituted generators still form a
    /// reduced basis.
    pub fn set_var_zero(&self, i: usize) -> Result<Self> {
        if self.initial.gens().iter().any(|m| m.exp(i) > 0) {
            return Err(Error::Internal(format!(
                "x{i} divides a leading monomial; substitution would break the basis"
            )));
        }
        let gens = self.gens.iter().map(|g| g.set_var_zero(i)).collect();
        Ok(GroebnerBasis {
            ring: self.ring.clone(),
            gens,
            initial: self.initial.clone(),
        })
    }
}

/// Full reduction of `f` by `g`, always using the first generator whose
/// leading monomial divides the current term.
pub fn normal_form<F: Scalar>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> Polynomial<F> {
    divide_impl(f, g, false).1
}

/// Division with quotients: `f = sum q_i g_i + r` with `r` reduced.
pub fn divide<F: Scalar>(f: &Polynomial<F>, g: &[Polynomial<F>]) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    divide_impl(f, g, true)
}

fn divide_impl<F: Scalar>(
    f: &Polynomial<F>,
    g: &[Polynomial<F>],
    track: bool,
) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    let ring = f.ring().clone();
    let leads: Vec<(&Monomial, F)> = g
        .iter()
        .filter_map(|h| Some((h.leading_monomial()?, h.leading_coeff()?.inverse()?)))
        .collect();
    let mut quotients: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); if track { g.len() } else { 0 }];
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.terms().first().cloned() {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let q = leads[k].0.quotient_of(&m).unwrap();
                let coeff = c * leads[k].1.clone();
                p = p.sub_mul_term(&coeff, &q, &g[k]);
                if track {
                    quotients[k].push((q, coeff));
                }
            }
            None => {
                rem.push((m, c));
                let rest = p.into_terms().split_off(1);
                p = Polynomial::from_sorted_terms(&ring, rest);
            }
        }
    }
    let quotients = quotients
        .into_iter()
        .map(|t| Polynomial::from_terms(&ring, t))
        .collect();
    (quotients, Polynomial::from_sorted_terms(&ring, rem))
}

pub fn s_polynomial<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (Some(lf), Some(lg)) = (f.leading_monomial(), g.leading_monomial()) else {
        return Polynomial::zero(f.ring());
    };
    let l = lf.lcm(lg);
    let a = f.mul_term(&f.leading_coeff().unwrap().inverse().unwrap(), &lf.quotient_of(&l).unwrap());
    let b = g.mul_term(&g.leading_coeff().unwrap().inverse().unwrap(), &lg.quotient_of(&l).unwrap());
    a.combine(&b, -F::one())
}

pub fn satisfies_buchberger_criterion<F: Scalar>(g: &[Polynomial<F>]) -> bool {
    (0..g.len()).all(|i| (i + 1..g.len()).all(|j| normal_form(&s_polynomial(&g[i], &g[j]), g).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type F = Fp<32003>;

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial<F> {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = Ring::standard(3).unwrap();
        assert!(normal_form(&p(&r, "x0^2"), &[p(&r, "x0")]).is_zero());
        assert_eq!(normal_form(&p(&r, "x0*x2 + x1^2"), &[p(&r, "x0")]), p(&r, "x1^2"));
    }

    #[test]
    fn division_identity() {
        let r = Ring::standard(3).unwrap();
        let g = vec![p(&r, "x0*x1 - x2^2"), p(&r, "x1^2 - x0*x2")];
        let f = p(&r, "x0^3*x1 + 5*x1^3 - x0*x1*x2 + x2^3");
        let (q, rem) = divide(&f, &g);
        let mut back = rem.clone();
        for (qi, gi) in q.iter().zip(&g) {
            back = back.add(&qi.mul(gi).unwrap()).unwrap();
        }
        assert_eq!(back, f);
        assert_eq!(rem, normal_form(&f, &g));
    }
}
