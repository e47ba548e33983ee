//! End-to-end analysis: Noether position, invariants, Betti tables over
//! `S_0` and `S_e`, the case of the degree bound that applies, and a
//! comparison with the closed-form tables for that case.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::betti::{depth_and_pd, koszul_betti, BettiTable, KoszulOptions};
use crate::error::{Error, Result};
use crate::formulas::{
    betti_acm_almost_max, betti_maximal, betti_nonacm_cases, s_module_table, DifferenceTable, NonAcmPrediction,
    SModuleKind,
};
use crate::hilbert::{match_structure, StructurePattern};
use crate::invariants::{min_reduction_positions, InvariantReport, MinReduction, NoetherPosition, DEFAULT_TRIALS};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Version of the JSON layout of [`ClassificationReport`].
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    Maximal,
    AlmostMaxAcm,
    AlmostMaxNonacmA,
    AlmostMaxNonacmB,
    AlmostMaxNonacmC,
    Other,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 6] = [
        CaseLabel::Maximal,
        CaseLabel::AlmostMaxAcm,
        CaseLabel::AlmostMaxNonacmA,
        CaseLabel::AlmostMaxNonacmB,
        CaseLabel::AlmostMaxNonacmC,
        CaseLabel::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Maximal => "MAXIMAL",
            CaseLabel::AlmostMaxAcm => "ALMOST_MAX_ACM",
            CaseLabel::AlmostMaxNonacmA => "ALMOST_MAX_NONACM_A",
            CaseLabel::AlmostMaxNonacmB => "ALMOST_MAX_NONACM_B",
            CaseLabel::AlmostMaxNonacmC => "ALMOST_MAX_NONACM_C",
            CaseLabel::Other => "OTHER",
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        10 + CaseLabel::ALL.iter().position(|&l| l == self).unwrap() as i32
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Properties of the input the caller vouches for; they are not checked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFlags {
    pub prime: bool,
    pub reduced: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub koszul: KoszulOptions,
    pub flags: InputFlags,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            trials: DEFAULT_TRIALS,
            seed: 0,
            koszul: KoszulOptions::default(),
            flags: InputFlags::default(),
        }
    }
}

/// One expected-versus-computed Betti number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub i: usize,
    pub j: u32,
    pub expected: i64,
    pub actual: i64,
}

/// Result of checking computed tables against the formulas for a case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaComparison {
    pub source: String,
    /// `β_{i,j}` over `S_0`, or `β_{i,r} - β_{i-1,r+1}` (stored at
    /// `(i, r)`) when only differences are predicted.
    pub checked: Vec<EntryCheck>,
    pub mismatches: Vec<EntryCheck>,
    /// Same for the table over `S = S_e`.
    pub s_module_mismatches: Vec<EntryCheck>,
    pub all_match: bool,
}

/// A named consistency check run on every classified ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub version: u32,
    pub invariants: InvariantReport,
    pub betti: BettiTable,
    pub s_module: BettiTable,
    pub pattern: Option<StructurePattern>,
    pub label: CaseLabel,
    pub comparison: Option<FormulaComparison>,
    pub min_reduction: MinReduction,
    pub audits: Vec<Audit>,
    pub notes: Vec<String>,
    pub flags: InputFlags,
    pub initial_ideal: String,
}

impl ClassificationReport {
    pub fn audits_passed(&self) -> bool {
        self.audits.iter().all(|a| a.passed)
    }
}

fn audit(name: &str, passed: bool, detail: impl Into<String>) -> Audit {
    Audit {
        name: name.into(),
        passed,
        detail: if passed { String::new() } else { detail.into() },
    }
}

/// Classifies `S_0/I` for a homogeneous ideal `I` with respect to the bound
/// `deg <= C(e+r, r)`.
pub fn classify<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    Ok(classify_with_position(ring, gens, opts)?.0)
}

/// As [`classify`], also returning the Noether position the report was
/// computed in.
pub fn classify_with_position<F: Scalar>(
    ring: &Arc<Ring>,
    gens: &[Polynomial<F>],
    opts: &ClassifyOptions,
) -> Result<(ClassificationReport, NoetherPosition<F>)> {
    let (min_reduction, np) = min_reduction_positions(ring, gens, opts.trials, opts.seed)?;
    let nvars = ring.nvars();
    let (e, n) = (np.e, np.n);
    let r = np.reduction_number();
    let cm = np.is_cohen_macaulay()?;
    let (deg, mu) = (cm.degree, cm.mu);

    let betti = koszul_betti(&np.gb, 0, opts.koszul)?;
    if betti.truncated {
        return Err(Error::Truncated { cap: betti.cap as usize });
    }
    let s_module = koszul_betti(&np.gb, e, opts.koszul)?;
    if s_module.truncated {
        return Err(Error::Truncated { cap: s_module.cap as usize });
    }
    let (depth, pd) = depth_and_pd(&betti, nvars)?;
    let reg = betti.regularity().unwrap_or(0);
    let init = np.gb.initial_ideal();
    let pattern = match_structure(init, e);

    let invariants = InvariantReport {
        n,
        e,
        deg,
        r,
        mu,
        cm: cm.cohen_macaulay,
        depth,
        pd,
        reg,
        field: F::field(),
        seed: opts.seed,
        change_seed: np.seed,
    };

    let mut notes = Vec::new();
    if min_reduction.disagreement {
        notes.push(format!(
            "coordinate trials gave different reduction numbers {:?}; kept the smallest",
            min_reduction.per_trial.iter().map(|p| p.1).collect::<Vec<_>>()
        ));
    }
    let degenerate = init.gens().iter().any(|g| g.degree() == 1);
    let bound = crate::formulas::max_degree_bound(e, r as usize);
    let bound: u64 = bound.try_into().unwrap_or(u64::MAX);

    let label = if e == 0 {
        notes.push("zero ideal: the scheme is the whole projective space".into());
        CaseLabel::Other
    } else if degenerate {
        notes.push("ideal contains a linear form: the scheme is degenerate".into());
        CaseLabel::Other
    } else if deg == bound {
        CaseLabel::Maximal
    } else if deg + 1 == bound {
        if cm.cohen_macaulay {
            CaseLabel::AlmostMaxAcm
        } else {
            match reg - r {
                0 => CaseLabel::AlmostMaxNonacmA,
                1 => CaseLabel::AlmostMaxNonacmB,
                _ => CaseLabel::AlmostMaxNonacmC,
            }
        }
    } else {
        CaseLabel::Other
    };

    let mut audits = Vec::new();
    audits.push(audit(
        "deg <= mu <= C(e+r, r)",
        deg <= mu && mu <= bound,
        format!("deg {deg}, mu {mu}, bound {bound}"),
    ));
    audits.push(audit(
        "r <= reg, with equality when Cohen-Macaulay",
        r <= reg && (!cm.cohen_macaulay || r == reg),
        format!("r {r}, reg {reg}"),
    ));
    audits.push(audit(
        "depth + pd = number of variables",
        depth + pd == nvars,
        format!("depth {depth}, pd {pd}"),
    ));
    if e > 0 && !degenerate {
        let pname = pattern.as_ref().map(|p| p.name());
        let pr = pattern.as_ref().map(|p| p.r());
        audits.push(audit(
            "maximal degree iff in(I) is T_(r+1)",
            (deg == bound) == (pname == Some("PurePower") && pr == Some(r)),
            format!("deg {deg}, pattern {pname:?}"),
        ));
        audits.push(audit(
            "ACM almost maximal iff in(I) is T_(r+1) + (u)",
            (deg + 1 == bound && cm.cohen_macaulay) == (pname == Some("PurePowerPlusU") && pr == Some(r)),
            format!("deg {deg}, cm {}, pattern {pname:?}", cm.cohen_macaulay),
        ));
        audits.push(audit(
            "non-ACM almost maximal iff in(I) is T_(r+1) + u(v_1..v_s)",
            (deg + 1 == bound && !cm.cohen_macaulay) == (pname == Some("PurePowerPlusUV") && pr == Some(r)),
            format!("deg {deg}, cm {}, pattern {pname:?}", cm.cohen_macaulay),
        ));
    }
    // N_{d,e} forces r < d
    let ndp_bad: Vec<u32> = (2..=reg + 1)
        .filter(|&d| betti.ndp_property(d, e).unwrap_or(false) && r >= d)
        .collect();
    audits.push(audit(
        "N_(d,e) implies r < d",
        ndp_bad.is_empty(),
        format!("violated for d in {ndp_bad:?}"),
    ));
    let pd_s = s_module.proj_dim().unwrap_or(0);
    audits.push(audit(
        "pd over S_0 = pd over S_e + e",
        pd == pd_s + e,
        format!("pd_S0 {pd}, pd_S {pd_s}"),
    ));
    if label == CaseLabel::Maximal {
        let expected = betti_maximal(e, r as usize)?.table;
        audits.push(audit(
            "maximal degree table equals the pure linear formula",
            same_entries(&expected, &betti),
            format!("expected {expected:?}"),
        ));
    }
    if matches!(
        label,
        CaseLabel::AlmostMaxNonacmA | CaseLabel::AlmostMaxNonacmB | CaseLabel::AlmostMaxNonacmC
    ) {
        if opts.flags.prime {
            audits.push(audit(
                "variety of almost maximal degree has depth >= n",
                depth >= n,
                format!("depth {depth}, n {n}"),
            ));
        } else if depth < n {
            notes.push(format!(
                "non-reduced input: depth {depth} < n = {n} does not contradict the depth bound for varieties of almost maximal degree, which needs a prime ideal"
            ));
        } else {
            notes.push("input not marked prime: depth bound for varieties not asserted".into());
        }
    }

    let mut report = ClassificationReport {
        version: REPORT_VERSION,
        invariants,
        betti,
        s_module,
        pattern,
        label,
        comparison: None,
        min_reduction,
        audits,
        notes,
        flags: opts.flags,
        initial_ideal: init.fmt_with(ring.names()),
    };
    if label != CaseLabel::Other {
        report.comparison = Some(verify_against_formulas(&report)?);
    }
    Ok((report, np))
}

fn same_entries(a: &BettiTable, b: &BettiTable) -> bool {
    a.entries().eq(b.entries())
}

fn compare_tables(expected: &BettiTable, actual: &BettiTable) -> (Vec<EntryCheck>, Vec<EntryCheck>) {
    let mut keys: Vec<(usize, u32)> = expected.entries().chain(actual.entries()).map(|(i, j, _)| (i, j)).collect();
    keys.sort();
    keys.dedup();
    let checked: Vec<EntryCheck> = keys
        .into_iter()
        .map(|(i, j)| EntryCheck {
            i,
            j,
            expected: expected.get(i, j) as i64,
            actual: actual.get(i, j) as i64,
        })
        .collect();
    let mismatches = checked.iter().filter(|c| c.expected != c.actual).cloned().collect();
    (checked, mismatches)
}

fn compare_differences(d: &DifferenceTable, actual: &BettiTable) -> (Vec<EntryCheck>, Vec<EntryCheck>) {
    let r = d.params.r as u32;
    let checked: Vec<EntryCheck> = d
        .differences
        .iter()
        .map(|&(i, v)| EntryCheck {
            i,
            j: r,
            expected: v,
            actual: actual.get(i, r) as i64 - actual.get(i - 1, r + 1) as i64,
        })
        .collect();
    let mismatches = checked.iter().filter(|c| c.expected != c.actual).cloned().collect();
    (checked, mismatches)
}

/// Checks the computed tables against the closed forms for the report's
/// case. Mismatches are returned, not raised.
pub fn verify_against_formulas(report: &ClassificationReport) -> Result<FormulaComparison> {
    let inv = &report.invariants;
    let (e, r, reg) = (inv.e, inv.r as usize, inv.reg as usize);
    let (source, (checked, mismatches), s_kind) = match report.label {
        CaseLabel::Other => {
            return Err(Error::FormulaParameter("no formula applies to case OTHER".into()));
        }
        CaseLabel::Maximal => {
            let f = betti_maximal(e, r)?;
            (f.source.clone(), compare_tables(&f.table, &report.betti), SModuleKind::Maximal)
        }
        CaseLabel::AlmostMaxAcm => {
            let f = betti_acm_almost_max(e, r)?;
            (f.source.clone(), compare_tables(&f.table, &report.betti), SModuleKind::AcmAlmostMax)
        }
        _ => match betti_nonacm_cases(e, r, reg)? {
            NonAcmPrediction::Table(f) => (
                f.source.clone(),
                compare_tables(&f.table, &report.betti),
                SModuleKind::NonAcm { reg },
            ),
            NonAcmPrediction::Differences(d) => (
                d.source.clone(),
                compare_differences(&d, &report.betti),
                SModuleKind::NonAcm { reg },
            ),
        },
    };
    let s_expected = s_module_table(e, r, s_kind)?.table;
    let (_, s_module_mismatches) = compare_tables(&s_expected, &report.s_module);
    let all_match = mismatches.is_empty() && s_module_mismatches.is_empty();
    Ok(FormulaComparison {
        source,
        checked,
        mismatches,
        s_module_mismatches,
        all_match,
    })
}
