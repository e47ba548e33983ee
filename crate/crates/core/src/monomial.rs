//! Exponent-vector monomials and the two monomial orders used throughout.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x_0^a_0 * ... * x_{N-1}^a_{N-1}` with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn new(exps: Vec<u32>) -> Result<Self> {
        let mut degree = 0u32;
        for &e in &exps {
            degree = degree.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { degree, exps })
    }

    /// Panicking constructor for literals in code and tests.
    pub fn from_exps(exps: &[u32]) -> Self {
        Self::new(exps.to_vec()).expect("exponent overflow")
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u32> = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Monomial {
            degree: other.degree - self.degree,
            exps,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// True when every variable in the support has index in `range`.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.support().all(|i| range.contains(&i))
    }

    /// The single variable this monomial is a power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut sup = self.support();
        let first = sup.next()?;
        if sup.next().is_none() {
            Some(first)
        } else {
            None
        }
    }

    /// Copy with the exponents outside `range` set to zero.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .enumerate()
            .map(|(i, e)| if range.contains(&i) { *e } else { 0 })
            .collect();
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    /// Index of the largest-index variable present.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|e| *e > 0)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All monomials of total degree `d` in the variables `vars`, as full-length
/// exponent vectors over `nvars` variables.
pub fn monomials_of_degree(nvars: usize, vars: std::ops::Range<usize>, d: u32) -> Vec<Monomial> {
    let k = vars.len();
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Monomial::one(nvars));
        }
        return out;
    }
    let mut cur = vec![0u32; k];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[pos] = a;
            rec(pos + 1, left - a, cur, out);
        }
    }
    let mut raw = Vec::new();
    rec(0, d, &mut cur, &mut raw);
    for r in raw {
        let mut exps = vec![0; nvars];
        exps[vars.clone()].copy_from_slice(&r);
        out.push(Monomial { degree: d, exps });
    }
    out
}

/// A monomial order on a fixed number of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic with `x0 > x1 > ... `.
    DegRevLex,
    /// Product order: the first `k` variables by degrevlex, ties broken by
    /// degrevlex on the remaining ones. Eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.exps, a.degree, &b.exps, b.degree),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exps.len());
                let da: u32 = a.exps[..k].iter().sum();
                let db: u32 = b.exps[..k].iter().sum();
                degrevlex(&a.exps[..k], da, &b.exps[..k], db).then_with(|| {
                    degrevlex(&a.exps[k..], a.degree - da, &b.exps[k..], b.degree - db)
                })
            }
        }
    }

    /// Order-checked comparison; errors when the monomials live in rings of
    /// different sizes.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(self.compare(a, b))
    }
}

fn degrevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[1, 1, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 0]), &m(&[1, 0, 0])), Ordering::Less);
        assert!(o.try_compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn degrevlex_degree_two_sorting() {
        // enumerate all six degree-2 monomials in 3 vars and sort descending
        let mut all = monomials_of_degree(3, 0..3, 2);
        assert_eq!(all.len(), 6);
        let o = MonomialOrder::DegRevLex;
        all.sort_by(|a, b| o.compare(b, a));
        let expected = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        let got: Vec<Vec<u32>> = all.iter().map(|x| x.exps().to_vec()).collect();
        assert_eq!(got, expected.iter().map(|e| e.to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn elimination_order_prefers_first_block() {
        let o = MonomialOrder::Elimination(1);
        // s > any power of x
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 3])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn monomial_helpers() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]).divides(&a));
        assert_eq!(m(&[1, 1, 0]).quotient_of(&a), Some(m(&[1, 0, 0])));
        assert_eq!(m(&[0, 0, 4]).pure_power_var(), Some(2));
        assert_eq!(a.pure_power_var(), None);
        assert!(Monomial::new(vec![u32::MAX, 1]).is_err());
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 4).prop_map(|e| Monomial::from_exps(&e))
    }

    proptest! {
        #[test]
        fn order_properties(a in mono3(), b in mono3(), c in mono3(), k in 0usize..4) {
            for o in [MonomialOrder::DegRevLex, MonomialOrder::Elimination(k)] {
                let ab = o.compare(&a, &b);
                prop_assert_eq!(ab.reverse(), o.compare(&b, &a));
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
                }
                if ab == Ordering::Less {
                    prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), Ordering::Less);
                }
                let one = Monomial::one(4);
                prop_assert_ne!(o.compare(&a, &one), Ordering::Less);
            }
        }
    }
}
