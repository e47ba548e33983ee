use serde::Serialize;

use super::{koszul_betti, BettiTable, KoszulOptions};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::scalar::Scalar;

/// Entrywise comparison of the Betti tables of `S/I` and `S/in(I)`.
#[derive(Debug, Clone, Serialize)]
pub struct CancellationReport {
    pub ideal: BettiTable,
    pub initial: BettiTable,
    /// `(i, j, β_{ij}(in I) - β_{ij}(I))` wherever positive.
    pub drops: Vec<(usize, u32, u64)>,
    pub equal: bool,
}

/// Checks `β_{ij}(I) <= β_{ij}(in I)` and that the differences cancel in
/// each internal degree, as the Hilbert functions agree.
pub fn compare_with_initial<F: Scalar>(gb: &GroebnerBasis<F>, opts: KoszulOptions) -> Result<CancellationReport> {
    let ideal = koszul_betti(gb, 0, opts)?;
    let mono = GroebnerBasis::<F>::from_monomial_ideal(gb.ring(), gb.initial_ideal());
    let initial = koszul_betti(&mono, 0, opts)?;
    let cap = ideal.cap.min(initial.cap);
    let mut drops = Vec::new();
    let mut keys: Vec<(usize, u32)> = ideal.entries().chain(initial.entries()).map(|(i, j, _)| (i, j)).collect();
    keys.sort();
    keys.dedup();
    for (i, j) in keys {
        if j > cap {
            continue;
        }
        let (a, b) = (ideal.get(i, j), initial.get(i, j));
        if a > b {
            return Err(Error::CancellationViolated { i, j: j as usize, ideal: a, initial: b });
        }
        if b > a {
            drops.push((i, j, b - a));
        }
    }
    if !ideal.truncated && !initial.truncated {
        let top = drops.iter().map(|&(i, j, _)| i as u32 + j).max().unwrap_or(0);
        for m in 0..=top {
            let alt: i64 = drops
                .iter()
                .filter(|&&(i, j, _)| i as u32 + j == m)
                .map(|&(i, _, d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            if alt != 0 {
                return Err(Error::Internal(format!(
                    "Betti differences in internal degree {m} do not cancel"
                )));
            }
        }
    }
    let equal = drops.is_empty();
    Ok(CancellationReport { ideal, initial, drops, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::poly::Polynomial;
    use crate::ring::Ring;
    use crate::scalar::Fp;

    type F = Fp<32003>;

    #[test]
    fn complete_intersection_drops() {
        let r = Ring::standard(3).unwrap();
        let gens: Vec<Polynomial<F>> = ["x0*x1", "x0^2 - x1^2"]
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        let gb = buchberger(&r, &gens).unwrap();
        let rep = compare_with_initial(&gb, KoszulOptions::default()).unwrap();
        assert!(!rep.equal);
        assert_eq!(rep.drops, vec![(1, 2, 1), (2, 1, 1)]);
    }

    #[test]
    fn ulrich_matches_its_initial_ideal() {
        let r = Ring::standard(4).unwrap();
        let gens: Vec<Polynomial<F>> = ["x0^2", "x0*x1", "x1^2", "x0*x2^2 + x1*x3^2"]
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        let gb = buchberger(&r, &gens).unwrap();
        let rep = compare_with_initial(&gb, KoszulOptions::default()).unwrap();
        assert!(rep.equal);
    }
}
