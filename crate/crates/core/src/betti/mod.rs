//! Graded Betti tables over the intermediate rings `S_t = k[x_t, ..., x_N]`.

mod compare;
mod koszul;
mod mapping_cone;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use compare::{compare_with_initial, CancellationReport};
pub use koszul::{betti_over_noether, graded_piece, internal_degree_bound, koszul_betti, GradedPiece, KoszulOptions};
pub use mapping_cone::{mapping_cone_check, MappingConeReport};

/// `β_{i,j}` = dimension of `Tor_i(R, k)` in internal degree `i + j`, for
/// `R` viewed as a module over `S_t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub t: usize,
    /// Largest row index `j` guaranteed to be computed.
    pub cap: u32,
    entries: BTreeMap<(usize, u32), u64>,
    /// Rows beyond `cap` may be nonzero.
    pub truncated: bool,
}

impl BettiTable {
    pub fn new(t: usize, cap: u32) -> Self {
        BettiTable {
            t,
            cap,
            entries: BTreeMap::new(),
            truncated: false,
        }
    }

    /// Builds a table from `(i, j, value)` triples; zeros are dropped.
    pub fn from_entries(t: usize, cap: u32, entries: impl IntoIterator<Item = (usize, u32, u64)>) -> Self {
        let mut table = Self::new(t, cap);
        for (i, j, v) in entries {
            table.set(i, j, v);
        }
        table
    }

    pub fn set(&mut self, i: usize, j: u32, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, value)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Castelnuovo–Mumford regularity: the largest row with a nonzero entry.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(_, j)| j).max()
    }

    /// Projective dimension: the largest column with a nonzero entry.
    pub fn proj_dim(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Entries of row `j` for columns `0..=proj_dim`.
    pub fn row(&self, j: u32) -> Vec<u64> {
        let width = self.proj_dim().map_or(0, |p| p + 1);
        (0..width).map(|i| self.get(i, j)).collect()
    }

    /// Nonzero rows as `j -> entries` with trailing zeros removed.
    pub fn rows(&self) -> BTreeMap<u32, Vec<u64>> {
        let mut out = BTreeMap::new();
        for j in self.entries.keys().map(|&(_, j)| j) {
            out.entry(j).or_insert_with(|| {
                let mut r = self.row(j);
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            });
        }
        out
    }

    fn require_complete_through(&self, m: u32) -> Result<()> {
        if self.truncated && m > self.cap {
            Err(Error::Truncated { cap: self.cap as usize })
        } else {
            Ok(())
        }
    }

    /// `χ_m = Σ_j (-1)^j β_{m-j, j}`.
    pub fn chi(&self, m: u32) -> Result<i64> {
        self.require_complete_through(m)?;
        Ok((0..=m)
            .map(|j| {
                let v = self.get((m - j) as usize, j) as i64;
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum())
    }

    /// `β_{i,j} = 0` for all `i <= p` and `j >= d`.
    pub fn ndp_property(&self, d: u32, p: usize) -> Result<bool> {
        if self.truncated {
            return Err(Error::Truncated { cap: self.cap as usize });
        }
        Ok(self.entries().all(|(i, j, _)| i > p || j < d))
    }

    /// `Σ (-1)^i β_{i,j} s^{i+j}` as coefficients indexed by `i + j`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for (i, j, v) in self.entries() {
            let d = i + j as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += if i % 2 == 0 { v as i64 } else { -(v as i64) };
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Shifts homological degree by `delta` (e.g. from `S/I` to `I`).
    pub fn shifted(&self, delta: isize) -> BettiTable {
        let mut out = BettiTable::new(self.t, self.cap);
        out.truncated = self.truncated;
        for (i, j, v) in self.entries() {
            let k = i as isize + delta;
            if k >= 0 {
                out.set(k as usize, (j as isize - delta) as u32, v);
            }
        }
        out
    }
}

/// Depth and projective dimension over `S_0` by Auslander–Buchsbaum,
/// `depth + pd = nvars`, from a complete table.
pub fn depth_and_pd(table: &BettiTable, nvars: usize) -> Result<(usize, usize)> {
    if table.t != 0 {
        return Err(Error::RingIndex { t: table.t, max: 0 });
    }
    if table.truncated {
        return Err(Error::Truncated { cap: table.cap as usize });
    }
    let pd = table.proj_dim().ok_or(Error::EmptyTable)?;
    if pd > nvars {
        return Err(Error::Internal(format!("projective dimension {pd} exceeds {nvars}")));
    }
    Ok((nvars - pd, pd))
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    t: usize,
    cap: u32,
    entries: Vec<(usize, u32, u64)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    truncated: bool,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson {
            t: self.t,
            cap: self.cap,
            entries: self.entries().collect(),
            truncated: self.truncated,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BettiJson::deserialize(d)?;
        let mut table = BettiTable::from_entries(raw.t, raw.cap, raw.entries);
        table.truncated = raw.truncated;
        Ok(table)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.proj_dim().map_or(0, |p| p + 1);
        let cells: Vec<Vec<String>> = self
            .rows()
            .keys()
            .map(|&j| {
                (0..width)
                    .map(|i| match self.get(i, j) {
                        0 => ".".to_string(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let w = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .chain((0..width).map(|i| i.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{:>6}", "")?;
        for i in 0..width {
            write!(f, " {:>w$}", i)?;
        }
        writeln!(f)?;
        for (row, j) in cells.iter().zip(self.rows().keys()) {
            write!(f, "{:>5}:", j)?;
            for c in row {
                write!(f, " {:>w$}", c)?;
            }
            writeln!(f)?;
        }
        if self.truncated {
            writeln!(f, "(truncated above row {})", self.cap)?;
        }
        Ok(())
    }
}
