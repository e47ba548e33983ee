use serde::Serialize;

use super::{koszul_betti, BettiTable, KoszulOptions};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::scalar::Scalar;

/// Tables over `S_0, ..., S_e` and the numerical relations between
/// consecutive rings forced by the mapping cone of multiplication by `x_t`.
#[derive(Debug, Clone, Serialize)]
pub struct MappingConeReport {
    pub tables: Vec<BettiTable>,
    /// `χ^{S_t}_m = χ^{S_{t+1}}_m + χ^{S_{t+1}}_{m-1}` for all `t` and `m`.
    pub chi_additive: bool,
    /// `pd_{S_0} = pd_{S_t} + t` for all `t`.
    pub pd_shift: bool,
    /// Row-vanishing in column `i` over `S_t` carries to column `i - 1` over
    /// `S_{t+1}`.
    pub vanishing_transfer: bool,
    /// Regularity is the same over every `S_t`.
    pub reg_constant: bool,
    pub failures: Vec<String>,
}

impl MappingConeReport {
    pub fn passed(&self) -> bool {
        self.chi_additive && self.pd_shift && self.vanishing_transfer && self.reg_constant
    }
}

/// Computes Betti tables over every `S_t`, `0 <= t <= e`, and checks the
/// mapping-cone relations. Needs complete tables.
pub fn mapping_cone_check<F: Scalar>(gb: &GroebnerBasis<F>, e: usize, opts: KoszulOptions) -> Result<MappingConeReport> {
    let tables = (0..=e)
        .map(|t| koszul_betti(gb, t, opts))
        .collect::<Result<Vec<_>>>()?;
    if let Some(t) = tables.iter().find(|t| t.truncated) {
        return Err(Error::Truncated { cap: t.cap as usize });
    }
    let mut failures = Vec::new();
    let top = tables
        .iter()
        .flat_map(|t| t.entries().map(|(i, j, _)| i as u32 + j))
        .max()
        .unwrap_or(0)
        + 2;

    let mut chi_additive = true;
    for t in 0..e {
        for m in 0..=top {
            let lhs = tables[t].chi(m)?;
            let rhs = tables[t + 1].chi(m)? + if m > 0 { tables[t + 1].chi(m - 1)? } else { 0 };
            if lhs != rhs {
                chi_additive = false;
                failures.push(format!("chi over S_{t} at {m}: {lhs} != {rhs}"));
            }
        }
    }

    let pd0 = tables[0].proj_dim();
    let mut pd_shift = true;
    for (t, table) in tables.iter().enumerate() {
        if pd0 != table.proj_dim().map(|p| p + t) {
            pd_shift = false;
            failures.push(format!("pd over S_{t} is {:?}, over S_0 {:?}", table.proj_dim(), pd0));
        }
    }

    let mut vanishing_transfer = true;
    for t in 0..e {
        let (a, b) = (&tables[t], &tables[t + 1]);
        let width = a.proj_dim().map_or(0, |p| p + 1);
        for i in 1..width {
            // smallest d with column i of a vanishing in rows >= d
            let d = a.entries().filter(|&(k, _, _)| k == i).map(|(_, j, _)| j + 1).max().unwrap_or(0);
            if let Some((_, j, _)) = b.entries().find(|&(k, j, _)| k == i - 1 && j >= d) {
                vanishing_transfer = false;
                failures.push(format!("column {i} over S_{t} vanishes from row {d} but S_{} has row {j}", t + 1));
            }
        }
    }

    let reg_constant = tables.iter().all(|t| t.regularity() == tables[0].regularity());
    if !reg_constant {
        failures.push(format!(
            "regularity differs: {:?}",
            tables.iter().map(|t| t.regularity()).collect::<Vec<_>>()
        ));
    }

    Ok(MappingConeReport {
        tables,
        chi_additive,
        pd_shift,
        vanishing_transfer,
        reg_constant,
        failures,
    })
}
