//! Noether position and the invariants read off it: reduction number,
//! `μ_S(R)`, and the Cohen–Macaulay test.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, MonomialIdeal};
use crate::hilbert::hilbert_series;
use crate::linalg::{random_upper_triangular, Matrix};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::{FieldKind, Scalar};

/// Default number of random coordinate changes tried.
pub const DEFAULT_TRIALS: usize = 8;

/// An ideal in coordinates where `S = k[x_e, ..., x_N]` is a Noether
/// normalization of `R = S_0/I`.
#[derive(Debug, Clone)]
pub struct NoetherPosition<F: Scalar> {
    /// Reduced basis of the transformed ideal.
    pub gb: GroebnerBasis<F>,
    /// Substitution applied to the input (see
    /// [`Polynomial::apply_linear_change`]).
    pub change: Matrix<F>,
    /// Codimension.
    pub e: usize,
    /// Projective dimension of the scheme, `dim R - 1`.
    pub n: usize,
    /// Seed of the successful random change; `None` for the identity.
    pub seed: Option<u64>,
}

/// True when every front variable `x_i`, `i < e`, has a pure power among
/// the generators of `in(I)`. In degrevlex, `in(I + (x_e..x_N)) =
/// in(I) + (x_e..x_N)`, so this says `I + (x_e..x_N)` is primary to the
/// maximal ideal.
pub fn in_noether_position(init: &MonomialIdeal, e: usize) -> bool {
    (0..e).all(|i| init.pure_power_of(i).is_some())
}

fn dimension_data(init: &MonomialIdeal) -> Result<(usize, usize)> {
    let h = hilbert_series(init);
    if h.degree == 0 || h.krull_dim == 0 {
        return Err(Error::EmptyScheme);
    }
    let nvars = init.nvars();
    Ok((nvars - h.krull_dim, h.krull_dim - 1))
}

fn check_input<F: Scalar>(ring: &Arc<Ring>, gens: &[Polynomial<F>]) -> Result<()> {
    if ring.order() != crate::monomial::MonomialOrder::DegRevLex {
        return Err(Error::OrderMismatch("Noether position needs degrevlex".into()));
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Tries the identity and then `trials` seeded random unit upper-triangular
/// changes (seeds `seed, seed + 1, ...`), returning the first coordinates in
/// Noether position.
pub fn noether_position<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    trials: usize,
    seed: u64,
) -> Result<NoetherPosition<F>> {
    check_input(ring, gens)?;
    let gb = buchberger(ring, gens)?;
    let (e, n) = dimension_data(gb.initial_ideal())?;
    let nvars = ring.nvars();
    if in_noether_position(gb.initial_ideal(), e) {
        return Ok(NoetherPosition {
            gb,
            change: Matrix::identity(nvars),
            e,
            n,
            seed: None,
        });
    }
    let mut last = gb.initial_ideal().clone();
    for k in 0..trials {
        let s = seed.wrapping_add(k as u64);
        let np = try_change(ring, gens, e, n, s)?;
        match np {
            Ok(np) => return Ok(np),
            Err(init) => last = init,
        }
    }
    Err(Error::NoetherPosition {
        trials,
        last_initial: last.fmt_with(ring.names()),
    })
}

/// One random change; `Ok(Err(in))` when the criterion fails.
#[allow(clippy::type_complexity)]
fn try_change<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    e: usize,
    n: usize,
    seed: u64,
) -> Result<std::result::Result<NoetherPosition<F>, MonomialIdeal>> {
    let m = random_upper_triangular::<F>(ring.nvars(), seed);
    let changed: Vec<Polynomial<F>> = gens.iter().map(|g| g.substitute_linear(&m)).collect();
    let gb = buchberger(ring, &changed)?;
    if in_noether_position(gb.initial_ideal(), e) {
        Ok(Ok(NoetherPosition {
            gb,
            change: m,
            e,
            n,
            seed: Some(seed),
        }))
    } else {
        Ok(Err(gb.initial_ideal().clone()))
    }
}

impl<F: Scalar> NoetherPosition<F> {
    /// Standard monomials in `x_0..x_{e-1}`, grouped by degree. These are
    /// minimal generators of `R` as an `S`-module.
    pub fn front_standard(&self) -> Vec<usize> {
        let init = self.gb.initial_ideal();
        let mut out = Vec::new();
        let mut d = 0;
        loop {
            let c = init.standard_monomials_in(0..self.e, d).len();
            if c == 0 {
                break;
            }
            out.push(c);
            d += 1;
        }
        out
    }

    /// Reduction number of `R` with respect to `(x_e, ..., x_N)`: the top
    /// degree of a front standard monomial.
    pub fn reduction_number(&self) -> u32 {
        self.front_standard().len() as u32 - 1
    }

    /// `μ_S(R)`, the number of front standard monomials.
    pub fn mu(&self) -> u64 {
        self.front_standard().iter().sum::<usize>() as u64
    }

    pub fn degree(&self) -> u64 {
        hilbert_series(self.gb.initial_ideal()).degree
    }

    /// Cohen–Macaulayness by two independent criteria that must agree:
    /// all minimal generators of `in(I)` involve only front variables, and
    /// `deg R = μ_S(R)`.
    pub fn is_cohen_macaulay(&self) -> Result<CmWitness> {
        let init = self.gb.initial_ideal();
        let offending: Vec<String> = init
            .gens()
            .iter()
            .filter(|g| !g.supported_in(0..self.e))
            .map(|g| g.fmt_with(self.gb.ring().names()))
            .collect();
        let by_generators = offending.is_empty();
        let degree = self.degree();
        let mu = self.mu();
        let by_degree = degree == mu;
        if by_generators != by_degree {
            return Err(Error::Internal(format!(
                "Cohen-Macaulay tests disagree: generators say {by_generators}, deg {degree} vs mu {mu}"
            )));
        }
        Ok(CmWitness {
            cohen_macaulay: by_generators,
            degree,
            mu,
            mixed_generators: offending,
        })
    }
}

/// Evidence for the Cohen–Macaulay decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmWitness {
    pub cohen_macaulay: bool,
    pub degree: u64,
    pub mu: u64,
    /// Minimal generators of `in(I)` involving a variable of `S`.
    pub mixed_generators: Vec<String>,
}

/// Reduction numbers over several coordinate systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinReduction {
    /// Smallest reduction number seen.
    pub r: u32,
    /// Seed attaining it; `None` for the input coordinates.
    pub seed: Option<u64>,
    /// `(seed, r)` for every coordinate system in Noether position.
    pub per_trial: Vec<(Option<u64>, u32)>,
    /// True when the trials did not all agree.
    pub disagreement: bool,
}

/// Minimum of the reduction number over the input coordinates (when in
/// Noether position) and `trials` random changes. An upper bound for the
/// reduction number of `R`.
pub fn min_reduction_number<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    trials: usize,
    seed: u64,
) -> Result<MinReduction> {
    Ok(min_reduction_positions(ring, gens, trials, seed)?.0)
}

/// As [`min_reduction_number`], also returning the winning position.
pub fn min_reduction_positions<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    trials: usize,
    seed: u64,
) -> Result<(MinReduction, NoetherPosition<F>)> {
    check_input(ring, gens)?;
    let gb = buchberger(ring, gens)?;
    let (e, n) = dimension_data(gb.initial_ideal())?;
    let mut positions: Vec<NoetherPosition<F>> = Vec::new();
    let mut last = gb.initial_ideal().clone();
    if in_noether_position(gb.initial_ideal(), e) {
        positions.push(NoetherPosition {
            gb,
            change: Matrix::identity(ring.nvars()),
            e,
            n,
            seed: None,
        });
    }
    let tried: Vec<_> = (0..trials as u64)
        .into_par_iter()
        .map(|k| try_change(ring, gens, e, n, seed.wrapping_add(k)))
        .collect::<Result<_>>()?;
    for t in tried {
        match t {
            Ok(np) => positions.push(np),
            Err(init) => last = init,
        }
    }
    if positions.is_empty() {
        return Err(Error::NoetherPosition {
            trials,
            last_initial: last.fmt_with(ring.names()),
        });
    }
    let per_trial: Vec<(Option<u64>, u32)> = positions.iter().map(|p| (p.seed, p.reduction_number())).collect();
    // first minimum wins, so the input coordinates are preferred on ties
    let best = (0..positions.len()).min_by_key(|&k| per_trial[k].1).unwrap();
    let r = per_trial[best].1;
    let disagreement = per_trial.iter().any(|&(_, x)| x != r);
    let np = positions.swap_remove(best);
    Ok((
        MinReduction {
            r,
            seed: np.seed,
            per_trial,
            disagreement,
        },
        np,
    ))
}

/// Numerical invariants of `R = S_0/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub e: usize,
    pub deg: u64,
    pub r: u32,
    pub mu: u64,
    pub cm: bool,
    pub depth: usize,
    pub pd: usize,
    pub reg: u32,
    pub field: FieldKind,
    pub seed: u64,
    /// Seed of the coordinate change realizing `r`; absent for the input
    /// coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub change_seed: Option<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type F = Fp<32003>;

    fn gens(r: &Arc<Ring>, g: &[&str]) -> Vec<Polynomial<F>> {
        g.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect()
    }

    #[test]
    fn monomial_ideal_already_in_position() {
        let r = Ring::standard(4).unwrap();
        let np = noether_position(&r, &gens(&r, &["x0^2", "x0*x1", "x1^2"]), 4, 1).unwrap();
        assert_eq!(np.seed, None);
        assert_eq!((np.e, np.n), (2, 1));
        assert_eq!(np.reduction_number(), 1);
        assert_eq!(np.mu(), 3);
        assert!(np.is_cohen_macaulay().unwrap().cohen_macaulay);
    }

    #[test]
    fn wrong_coordinates_get_changed() {
        let r = Ring::standard(3).unwrap();
        let np = noether_position(&r, &gens(&r, &["x2^2"]), 8, 5).unwrap();
        assert!(np.seed.is_some());
        assert_eq!(np.e, 1);
        assert!(in_noether_position(np.gb.initial_ideal(), 1));
        assert!(np.change.is_unit_upper_triangular());
    }

    #[test]
    fn ulrich_invariants() {
        let r = Ring::standard(4).unwrap();
        let np = noether_position(&r, &gens(&r, &["x0^2", "x0*x1", "x1^2", "x0*x2^2 + x1*x3^2"]), 4, 1).unwrap();
        assert_eq!(np.seed, None);
        assert_eq!((np.e, np.n), (2, 1));
        assert_eq!(np.reduction_number(), 1);
        assert_eq!(np.mu(), 3);
        assert_eq!(np.degree(), 2);
        let cm = np.is_cohen_macaulay().unwrap();
        assert!(!cm.cohen_macaulay);
    }

    #[test]
    fn failures() {
        let r = Ring::standard(3).unwrap();
        assert_eq!(noether_position(&r, &gens(&r, &["x0^2 + x1"]), 1, 0).unwrap_err(), Error::NotHomogeneous);
        assert_eq!(noether_position(&r, &gens(&r, &["x0", "x1", "x2"]), 1, 0).unwrap_err(), Error::EmptyScheme);
        // zero trials and wrong coordinates
        assert!(matches!(
            noether_position(&r, &gens(&r, &["x2^2"]), 0, 0),
            Err(Error::NoetherPosition { trials: 0, .. })
        ));
    }

    #[test]
    fn min_reduction_of_twisted_cubic() {
        let r = Ring::standard(4).unwrap();
        let g = gens(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let m = min_reduction_number(&r, &g, 4, 3).unwrap();
        assert_eq!(m.r, 1);
        assert!(!m.disagreement);
    }
}
