//! Sparse multivariate polynomials in canonical form: terms strictly
//! descending under the ring's order, no zero coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct Polynomial<F: Scalar> {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Scalar> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Scalar> Eq for Polynomial<F> {}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already strictly descending with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, F)>) -> Self {
        let p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn is_canonical(&self) -> bool {
        let order = self.ring.order();
        self.terms.iter().all(|(_, c)| !c.is_zero())
            && self
                .terms
                .windows(2)
                .all(|w| order.compare(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, F::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, -F::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// `self + c * other` by merging sorted term lists.
    pub(crate) fn combine(&self, other: &Self, c: F) -> Self {
        self.sub_mul_term(&(-c), &Monomial::one(self.ring.nvars()), other)
    }

    /// `self - c * m * g`, the reduction step of the division algorithm.
    pub(crate) fn sub_mul_term(&self, c: &F, m: &Monomial, g: &Self) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (m.mul(gm), gc.clone() * c.clone())).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                (Some((am, _)), Some((bm, _))) => match order.compare(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (bm, bc) = b.next().unwrap();
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = ac.clone() - bc;
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.sub_mul_term(&(-c.clone()), m, self);
        }
        acc
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, ac)| (a.mul(m), ac.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ring, F::one());
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            total = total + v;
        }
        total
    }

    /// Sets variable `i` to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.exp(i) == 0).cloned().collect(),
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`. Fails if a variable mapped to `None` occurs.
    pub fn map_to_ring(&self, target: &Arc<Ring>, var_map: &[Option<usize>]) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map.get(i).copied().flatten() {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::RingMismatch);
                    }
                }
            }
            terms.push((Monomial::new(exps)?, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Re-sorts the terms for a ring with the same variables but another order.
    pub fn reorder(&self, target: &Arc<Ring>) -> Result<Self> {
        if target.names() != self.ring.names() {
            return Err(Error::RingMismatch);
        }
        Ok(Self::from_terms(target, self.terms.clone()))
    }

    /// Substitutes `x_j -> sum_i m[i][j] * x_i`. Applying `a` and then `b`
    /// equals applying `b * a`.
    pub fn apply_linear_change(&self, m: &Matrix<F>) -> Result<Self> {
        let n = self.ring.nvars();
        if m.rows() != n || m.cols() != n {
            return Err(Error::MatrixShape {
                expected: n,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rank() < n {
            return Err(Error::SingularMatrix);
        }
        Ok(self.substitute_linear(m))
    }

    /// As [`apply_linear_change`](Self::apply_linear_change) without the
    /// shape and invertibility checks.
    pub(crate) fn substitute_linear(&self, m: &Matrix<F>) -> Self {
        let n = self.ring.nvars();
        let images: Vec<Self> = (0..n)
            .map(|j| {
                let terms = (0..n)
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (Monomial::var(n, i), m.get(i, j).clone()))
                    .collect();
                Self::from_terms(&self.ring, terms)
            })
            .collect();
        // powers[j][k] = images[j]^k, grown on demand
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|_| vec![Self::constant(&self.ring, F::one())])
            .collect();
        let mut acc = Self::zero(&self.ring);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(&self.ring, c.clone());
            for (j, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul_unchecked(&images[j]);
                    powers[j].push(next);
                }
                t = t.mul_unchecked(&powers[j][e as usize]);
            }
            acc = acc.combine(&t, F::one());
        }
        acc
    }

    pub fn to_string_with_names(&self) -> String {
        format_poly(&self.terms, self.ring.names())
    }
}

pub(crate) fn format_poly<F: Scalar>(terms: &[(Monomial, F)], names: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative_repr();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&m.fmt_with(names));
        } else {
            s.push_str(&format!("{}*{}", abs, m.fmt_with(names)));
        }
    }
    s
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with_names())
    }
}

impl<F: Scalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with_names())
    }
}
