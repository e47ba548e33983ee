use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Forms of degree at most `dmax` vanishing on the given projective points,
/// computed degree by degree as kernels of evaluation matrices. In each
/// degree only forms outside the ideal generated by lower degrees are kept,
/// so the output is a minimal generating set of the ideal truncated at `dmax`.
///
/// The result generates the full ideal only when `dmax` reaches its
/// generator degree; callers check this through the Hilbert function.
pub fn vanishing_ideal_of_points<F: Scalar>(
    ring: &Arc<Ring>,
    points: &[Vec<F>],
    dmax: u32,
) -> Result<Vec<Polynomial<F>>> {
    let n = ring.nvars();
    for (index, p) in points.iter().enumerate() {
        if p.len() != n {
            return Err(Error::PointDimension {
                index,
                got: p.len(),
                expected: n,
            });
        }
        if p.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPoint(index));
        }
        if points[..index].iter().any(|q| proportional(p, q)) {
            return Err(Error::DuplicatePoint(index));
        }
    }
    ideal_from_conditions(ring, dmax, Selection::Minimal, |mons| {
        points
            .iter()
            .map(|p| mons.iter().map(|m| evaluate_monomial(m, p)).collect())
            .collect()
    })
}

/// How [`ideal_from_conditions`] picks generators in each degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Selection {
    /// Forms outside the span of `S_1 * I_{d-1}`: a minimal generating set.
    Minimal,
    /// Basis forms whose leading monomial is not a multiple of a leading
    /// monomial of `I_{d-1}`: a Gröbner basis of the ideal truncated at
    /// `dmax`. Avoids one elimination per degree, which matters over QQ.
    TruncatedBasis,
}

/// Generators up to degree `dmax` of the ideal whose degree `d` part is the
/// kernel of the linear conditions `conditions(monomials of degree d)`, one
/// row per condition.
pub(super) fn ideal_from_conditions<F: Scalar>(
    ring: &Arc<Ring>,
    dmax: u32,
    selection: Selection,
    mut conditions: impl FnMut(&[Monomial]) -> Vec<Vec<F>>,
) -> Result<Vec<Polynomial<F>>> {
    if selection == Selection::TruncatedBasis {
        return truncated_basis(ring, dmax, conditions);
    }
    let n = ring.nvars();
    let mut out = Vec::new();
    // basis of I_{d-1} as polynomials
    let mut prev: Vec<Polynomial<F>> = Vec::new();
    for d in 1..=dmax {
        let mons = monomials_of_degree(n, 0..n, d);
        let index: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |p: &Polynomial<F>| -> SparseVec<F> {
            let mut v: SparseVec<F> = p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
            v.sort_by_key(|t| t.0);
            v
        };
        let rows = conditions(&mons);
        let kernel = if rows.is_empty() {
            // no conditions: every form qualifies
            (0..mons.len())
                .map(|j| (0..mons.len()).map(|i| if i == j { F::one() } else { F::zero() }).collect())
                .collect()
        } else {
            Matrix::from_rows(rows)?.kernel()
        };
        let basis: Vec<Polynomial<F>> = kernel
            .into_iter()
            .map(|v| Polynomial::from_terms(ring, mons.iter().cloned().zip(v).collect()))
            .collect();
        // keep only forms outside the span of S_1 * I_{d-1}
        let mut ech = Echelon::new();
        for g in &prev {
            for i in 0..n {
                ech.insert(to_vec(&g.mul_term(&F::one(), &Monomial::var(n, i))));
            }
        }
        for g in &basis {
            if ech.insert(to_vec(g)) {
                out.push(g.clone());
            }
        }
        prev = basis;
    }
    Ok(out)
}

fn truncated_basis<F: Scalar>(
    ring: &Arc<Ring>,
    dmax: u32,
    mut conditions: impl FnMut(&[Monomial]) -> Vec<Vec<F>>,
) -> Result<Vec<Polynomial<F>>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for d in 1..=dmax {
        let mut mons = monomials_of_degree(n, 0..n, d);
        let order = ring.order();
        mons.sort_by(|a, b| order.compare(b, a));
        let rows = conditions(&mons);
        // columns ascending, so each kernel vector has its free column as
        // leading monomial and vanishes on the other free columns
        let k = mons.len();
        let kernel: Vec<Vec<F>> = if rows.is_empty() {
            (0..k)
                .map(|j| (0..k).map(|i| if i == j { F::one() } else { F::zero() }).collect())
                .collect()
        } else {
            let flipped = rows.into_iter().map(|mut r| {
                r.reverse();
                r
            });
            Matrix::from_rows(flipped.collect())?
                .kernel()
                .into_iter()
                .map(|mut v| {
                    v.reverse();
                    v
                })
                .collect()
        };
        let mut next = Vec::with_capacity(kernel.len());
        for v in kernel {
            let g = Polynomial::from_terms(ring, mons.iter().cloned().zip(v).collect());
            let lm = g.leading_monomial().unwrap().clone();
            debug_assert!(!next.contains(&lm));
            if !leads.iter().any(|l| l.divides(&lm)) {
                out.push(g.monic());
            }
            next.push(lm);
        }
        // every multiple of an older leading monomial is among these
        leads = next;
    }
    Ok(out)
}

fn evaluate_monomial<F: Scalar>(m: &Monomial, p: &[F]) -> F {
    let mut v = F::one();
    for (i, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            v = v * p[i].clone();
        }
    }
    v
}

pub(super) fn proportional<F: Scalar>(a: &[F], b: &[F]) -> bool {
    let k = a.iter().position(|c| !c.is_zero()).unwrap();
    if b[k].is_zero() {
        return false;
    }
    let s = b[k].clone() / a[k].clone();
    a.iter().zip(b).all(|(x, y)| x.clone() * s.clone() == *y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::scalar::Fp;

    type F = Fp<32003>;

    fn pt(v: &[i64]) -> Vec<F> {
        v.iter().map(|&x| F::from_i64(x)).collect()
    }

    #[test]
    fn single_point() {
        let r = Ring::standard(3).unwrap();
        let gens = vanishing_ideal_of_points(&r, &[pt(&[1, 0, 0])], 1).unwrap();
        let gb = buchberger(&r, &gens).unwrap();
        assert_eq!(gb.gens(), &[Polynomial::parse(&r, "x2").unwrap(), Polynomial::parse(&r, "x1").unwrap()]);
    }

    #[test]
    fn three_points_give_three_conics() {
        let r = Ring::standard(3).unwrap();
        let pts = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        let gens = vanishing_ideal_of_points(&r, &pts, 2).unwrap();
        let conics = gens.iter().filter(|g| g.total_degree() == Some(2)).count();
        assert_eq!(conics, 3);
        assert_eq!(gens.iter().filter(|g| g.total_degree() == Some(1)).count(), 0);
    }

    #[test]
    fn lower_degree_multiples_are_skipped() {
        // two points on the line x2 = 0: one linear form, one new conic
        let r = Ring::standard(3).unwrap();
        let gens = vanishing_ideal_of_points(&r, &[pt(&[1, 0, 0]), pt(&[0, 1, 0])], 3).unwrap();
        let degs: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        let r = Ring::standard(3).unwrap();
        assert_eq!(
            vanishing_ideal_of_points(&r, &[pt(&[1, 2, 3]), pt(&[2, 4, 6])], 1),
            Err(Error::DuplicatePoint(1))
        );
        assert!(vanishing_ideal_of_points(&r, &[pt(&[1, 2])], 1).is_err());
        assert!(vanishing_ideal_of_points(&r, &[pt(&[0, 0, 0])], 1).is_err());
    }
}
