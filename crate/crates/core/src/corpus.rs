//! Bundled examples with expected invariants and Betti tables.
//!
//! Each entry is a JSON file under `corpus/` naming how to build the ideal
//! (an ideal file, a parametrized curve, a seeded point sample, a random
//! complete intersection) or, for examples given only through their Betti
//! table, the closed form that predicts it. Every expected value carries a
//! provenance tag.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::betti::{compare_with_initial, mapping_cone_check, BettiTable};
use crate::classify::{classify_with_position, ClassificationReport, ClassifyOptions, InputFlags};
use crate::error::{Error, Result};
use crate::formulas::{betti_nonacm_cases, max_degree_bound, NonAcmPrediction};
use crate::groebner::{curve_regularity_bound, implicitize_curve, vanishing_ideal_of_points};
use crate::ideal_file::{Flag, IdealFile};
use crate::linalg::Matrix;
use crate::monomial::{monomials_of_degree, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::scalar::{FieldKind, Scalar};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tag {
    /// Stated in the source text.
    Paper,
    /// Computed by an independent route (hand computation or an oracle).
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub value: Value,
    pub tag: Tag,
    /// Where in the source the value is stated, or how it was derived.
    pub cite: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLayout {
    /// No three collinear, imposing independent conditions on conics.
    General,
    /// On the conic `x0*x2 = x1^2`, no three collinear.
    Conic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    /// A bundled ideal file.
    IdealFile { file: String },
    /// Image of `P^1` under binary forms in `s, t` of a common degree.
    Curve { params: Vec<String> },
    /// Seeded random points in `P^2`.
    Points { layout: PointLayout, count: usize, seed: u64 },
    /// Dense random forms of the given degrees in `nvars` variables.
    RandomCi { nvars: usize, degrees: Vec<u32>, seed: u64 },
    /// No equations available: the table is the closed form for the
    /// non-ACM almost maximal case with these parameters.
    Formula { e: usize, r: usize, reg: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub citation: String,
    pub source: Source,
    /// Properties vouched for by the source; merged with ideal-file flags.
    #[serde(default)]
    pub flags: InputFlags,
    pub expected: Vec<Expectation>,
}

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

const ENTRIES: &[(&str, &str)] = bundle![
    "ulrich-t2",
    "ulrich-t3",
    "ulrich-t4",
    "maximal-e2-r2",
    "castelnuovo-model",
    "model-acm-e3-r2",
    "model-nonacm-a",
    "model-nonacm-b",
    "model-nonacm-c",
    "nonreduced-depth0",
    "twisted-cubic",
    "p3-quintic-param",
    "p4-nonic-param",
    "points-general-6",
    "points-conic-6",
    "random-ci-quadrics",
    "elliptic-quintic-p3",
    "genus4-nonic-p4",
];

const IDEAL_FILES: &[(&str, &str)] = &[
    ("ulrich-t2.ideal", include_str!("../corpus/ulrich-t2.ideal")),
    ("ulrich-t3.ideal", include_str!("../corpus/ulrich-t3.ideal")),
    ("ulrich-t4.ideal", include_str!("../corpus/ulrich-t4.ideal")),
    ("maximal-e2-r2.ideal", include_str!("../corpus/maximal-e2-r2.ideal")),
    ("castelnuovo-model.ideal", include_str!("../corpus/castelnuovo-model.ideal")),
    ("model-acm-e3-r2.ideal", include_str!("../corpus/model-acm-e3-r2.ideal")),
    ("model-nonacm-a.ideal", include_str!("../corpus/model-nonacm-a.ideal")),
    ("model-nonacm-b.ideal", include_str!("../corpus/model-nonacm-b.ideal")),
    ("model-nonacm-c.ideal", include_str!("../corpus/model-nonacm-c.ideal")),
    ("nonreduced-depth0.ideal", include_str!("../corpus/nonreduced-depth0.ideal")),
];

/// All bundled entries, in a fixed order.
pub fn entries() -> Result<Vec<CorpusEntry>> {
    ENTRIES
        .iter()
        .map(|(name, text)| {
            serde_json::from_str(text).map_err(|e| Error::Internal(format!("corpus entry {name}: {e}")))
        })
        .collect()
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    entries()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

/// Text of a bundled ideal file.
pub fn ideal_file_text(file: &str) -> Result<&'static str> {
    IDEAL_FILES
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownCorpusEntry(file.to_string()))
}

/// The ideal an entry describes, in a degrevlex ring, with input flags.
/// `None` for formula-only entries.
pub type BuiltIdeal<F> = (Arc<Ring>, Vec<Polynomial<F>>, InputFlags);

pub fn build_ideal<F: Scalar>(entry: &CorpusEntry) -> Result<Option<BuiltIdeal<F>>> {
    let mut flags = entry.flags;
    let (ring, gens) = match &entry.source {
        Source::IdealFile { file } => {
            let parsed = IdealFile::parse(ideal_file_text(file)?)?;
            flags.prime |= parsed.has_flag(&Flag::Prime);
            flags.reduced |= parsed.has_flag(&Flag::Reduced) || flags.prime;
            parsed.polys_over::<F>()?
        }
        Source::Curve { params } => {
            let pring = Ring::new(vec!["s".into(), "t".into()], MonomialOrder::DegRevLex)?;
            let params = params
                .iter()
                .map(|p| Polynomial::parse(&pring, p))
                .collect::<Result<Vec<_>>>()?;
            let target = Ring::standard(params.len())?;
            let degree = params.first().and_then(|p| p.total_degree()).unwrap_or(1);
            let codim = params.len().saturating_sub(2) as u32;
            let gens = implicitize_curve(&params, &target, curve_regularity_bound(degree, codim))?;
            (target, gens)
        }
        Source::Points { layout, count, seed } => {
            let ring = Ring::standard(3)?;
            let points = sample_points::<F>(*layout, *count, *seed)?;
            let gens = vanishing_ideal_of_points(&ring, &points, (*count as u32).max(1))?;
            (ring, gens)
        }
        Source::RandomCi { nvars, degrees, seed } => {
            let ring = Ring::standard(*nvars)?;
            let gens = random_forms(&ring, degrees, *seed);
            (ring, gens)
        }
        Source::Formula { .. } => return Ok(None),
    };
    let ring_dr = ring.with_order(MonomialOrder::DegRevLex)?;
    let gens = gens.iter().map(|g| g.reorder(&ring_dr)).collect::<Result<Vec<_>>>()?;
    Ok(Some((ring_dr, gens, flags)))
}

/// Seeded points in `P^2` in the requested layout. Samples are redrawn
/// until they pass the general-position check.
pub fn sample_points<F: Scalar>(layout: PointLayout, count: usize, seed: u64) -> Result<Vec<Vec<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let points: Vec<Vec<F>> = (0..count)
            .map(|_| match layout {
                PointLayout::General => (0..3).map(|_| F::sample(&mut rng)).collect(),
                PointLayout::Conic => {
                    let (s, t) = (F::sample(&mut rng), F::sample(&mut rng));
                    vec![s.clone() * s.clone(), s * t.clone(), t.clone() * t]
                }
            })
            .collect();
        if in_general_position(&points, layout) {
            return Ok(points);
        }
    }
    Err(Error::Internal(format!(
        "no {count} points in general position found over {}",
        F::field()
    )))
}

fn det3<F: Scalar>(a: &[F], b: &[F], c: &[F]) -> F {
    a[0].clone() * (b[1].clone() * c[2].clone() - b[2].clone() * c[1].clone())
        - a[1].clone() * (b[0].clone() * c[2].clone() - b[2].clone() * c[0].clone())
        + a[2].clone() * (b[0].clone() * c[1].clone() - b[1].clone() * c[0].clone())
}

fn in_general_position<F: Scalar>(points: &[Vec<F>], layout: PointLayout) -> bool {
    if points.iter().any(|p| p.iter().all(|c| c.is_zero())) {
        return false;
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            // distinct projective points
            let (p, q) = (&points[i], &points[j]);
            let proportional = (0..3).all(|a| (0..3).all(|b| p[a].clone() * q[b].clone() == p[b].clone() * q[a].clone()));
            if proportional {
                return false;
            }
            if points[j + 1..].iter().any(|w| det3(p, q, w).is_zero()) {
                return false;
            }
        }
    }
    // conditions imposed on conics
    let quadrics = monomials_of_degree(3, 0..3, 2);
    let rows: Vec<Vec<F>> = points
        .iter()
        .map(|p| {
            quadrics
                .iter()
                .map(|m| {
                    m.exps()
                        .iter()
                        .zip(p)
                        .fold(F::one(), |acc, (&e, c)| (0..e).fold(acc, |a, _| a * c.clone()))
                })
                .collect()
        })
        .collect();
    let rank = match Matrix::from_rows(rows) {
        Ok(m) => m.rank(),
        Err(_) => return n == 0,
    };
    let expected = match layout {
        PointLayout::General => n.min(6),
        PointLayout::Conic => n.min(5),
    };
    rank == expected
}

/// Dense forms with seeded random coefficients.
pub fn random_forms<F: Scalar>(ring: &Arc<Ring>, degrees: &[u32], seed: u64) -> Vec<Polynomial<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.nvars();
    degrees
        .iter()
        .map(|&d| {
            let terms = monomials_of_degree(n, 0..n, d)
                .into_iter()
                .map(|m| (m, F::sample(&mut rng)))
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// One expected value against what was computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub key: String,
    pub tag: Tag,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub field: FieldKind,
    pub checks: Vec<Check>,
    /// Failed audits, mapping-cone relations, cancellation problems and
    /// errors.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ClassificationReport>,
    /// Tables over `S_0, ..., S_e`, or the predicted table for formula
    /// entries.
    pub tables: Vec<BettiTable>,
    /// Whether the mapping-cone relations held across `S_0, ..., S_e`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapping_cone: Option<bool>,
    /// `(i, j, β_{ij}(in I) - β_{ij}(I))` where positive; present once the
    /// inequality `β(I) <= β(in I)` was verified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cancellation_drops: Option<Vec<(usize, u32, u64)>>,
    pub passed: bool,
}

fn entries_json(t: &BettiTable) -> Value {
    json!(t.entries().collect::<Vec<_>>())
}

/// Degrees of the free generators of `R` over `S`, with multiplicity.
pub fn s_module_degrees(t: &BettiTable) -> Vec<u32> {
    t.entries()
        .filter(|&(i, _, _)| i == 0)
        .flat_map(|(_, j, v)| std::iter::repeat_n(j, v as usize))
        .collect()
}

fn observe(report: &ClassificationReport, extra: &BTreeMap<String, Value>, key: &str) -> Value {
    let inv = &report.invariants;
    match key {
        "n" => json!(inv.n),
        "e" => json!(inv.e),
        "deg" => json!(inv.deg),
        "r" => json!(inv.r),
        "mu" => json!(inv.mu),
        "cm" => json!(inv.cm),
        "depth" => json!(inv.depth),
        "pd" => json!(inv.pd),
        "reg" => json!(inv.reg),
        "label" => json!(report.label.as_str()),
        "pattern" => json!(report.pattern.as_ref().map(|p| p.name())),
        "betti" => entries_json(&report.betti),
        "s_module" => entries_json(&report.s_module),
        "s_module_degrees" => json!(s_module_degrees(&report.s_module)),
        "formula_match" => json!(report.comparison.as_ref().map(|c| c.all_match)),
        "notes" => json!(report.notes),
        _ => {
            if let Some(v) = extra.get(key) {
                return v.clone();
            }
            // N_{d,p}, written "ndp:d:p"
            if let Some(rest) = key.strip_prefix("ndp:") {
                let parsed: Option<(u32, usize)> = rest
                    .split_once(':')
                    .and_then(|(d, p)| Some((d.parse().ok()?, p.parse().ok()?)));
                if let Some((d, p)) = parsed {
                    return report.betti.ndp_property(d, p).map(Value::from).unwrap_or(Value::Null);
                }
            }
            Value::Null
        }
    }
}

/// Expected `notes` values are substrings that some note must contain.
fn matches(key: &str, expected: &Value, actual: &Value) -> bool {
    match (key, expected, actual) {
        ("notes", Value::String(s), Value::Array(notes)) => {
            notes.iter().any(|n| n.as_str().is_some_and(|n| n.contains(s.as_str())))
        }
        _ => expected == actual,
    }
}

fn run_checks(entry: &CorpusEntry, actual: impl Fn(&str) -> Value) -> Vec<Check> {
    entry
        .expected
        .iter()
        .map(|x| {
            let actual = actual(&x.key);
            Check {
                key: x.key.clone(),
                tag: x.tag,
                passed: matches(&x.key, &x.value, &actual),
                expected: x.value.clone(),
                actual,
            }
        })
        .collect()
}

/// Runs one entry end to end over `F`: builds the ideal, classifies it,
/// checks the mapping-cone relations and the cancellation inequality, and
/// compares with the expected values.
pub fn run_entry<F: Scalar>(entry: &CorpusEntry, opts: &ClassifyOptions) -> EntryResult {
    let mut result = EntryResult {
        name: entry.name.clone(),
        field: F::field(),
        checks: Vec::new(),
        failures: Vec::new(),
        report: None,
        tables: Vec::new(),
        mapping_cone: None,
        cancellation_drops: None,
        passed: false,
    };
    if let Err(e) = run_entry_inner::<F>(entry, opts, &mut result) {
        result.failures.push(format!("error: {e}"));
    }
    result.passed = result.failures.is_empty() && result.checks.iter().all(|c| c.passed);
    result
}

fn run_entry_inner<F: Scalar>(entry: &CorpusEntry, opts: &ClassifyOptions, out: &mut EntryResult) -> Result<()> {
    if let Source::Formula { e, r, reg } = entry.source {
        let table = match betti_nonacm_cases(e, r, reg)? {
            NonAcmPrediction::Table(t) => t.ring_table(),
            NonAcmPrediction::Differences(_) => {
                return Err(Error::FormulaParameter(
                    "formula entries need a case with a full table".into(),
                ))
            }
        };
        let deg: u64 = (max_degree_bound(e, r) - 1u32)
            .try_into()
            .map_err(|_| Error::FormulaParameter("degree overflows".into()))?;
        out.checks = run_checks(entry, |key| match key {
            "e" => json!(e),
            "r" => json!(r),
            "reg" => json!(table.regularity()),
            "deg" => json!(deg),
            "betti" => entries_json(&table),
            "pd" => json!(table.proj_dim()),
            _ => Value::Null,
        });
        out.tables.push(table);
        return Ok(());
    }
    let (ring, gens, flags) = build_ideal::<F>(entry)?.expect("ideal source");
    let opts = ClassifyOptions { flags, ..*opts };
    let (report, np) = classify_with_position(&ring, &gens, &opts)?;
    for a in report.audits.iter().filter(|a| !a.passed) {
        out.failures.push(format!("audit `{}` failed: {}", a.name, a.detail));
    }

    let mut extra = BTreeMap::new();
    extra.insert("generators".to_string(), json!(gens.len()));
    if report.invariants.e > 0 {
        let cone = mapping_cone_check(&np.gb, report.invariants.e, opts.koszul)?;
        out.failures.extend(cone.failures.iter().map(|f| format!("mapping cone: {f}")));
        extra.insert("mapping_cone".into(), json!(cone.passed()));
        out.mapping_cone = Some(cone.passed());
        out.tables = cone.tables;
    } else {
        out.tables.push(report.betti.clone());
    }
    let cancel = compare_with_initial(&np.gb, opts.koszul)?;
    extra.insert("cancellation_equal".into(), json!(cancel.equal));
    out.cancellation_drops = Some(cancel.drops.clone());
    extra.insert("initial_ideal_betti".into(), entries_json(&cancel.initial));

    out.checks = run_checks(entry, |key| observe(&report, &extra, key));
    out.report = Some(report);
    Ok(())
}

/// Runs an entry over a field chosen at run time.
pub fn run_entry_over(entry: &CorpusEntry, field: FieldKind, opts: &ClassifyOptions) -> Result<EntryResult> {
    crate::with_field!(field, F => Ok(run_entry::<F>(entry, opts)))
}

/// Results over several fields plus the cross-field comparison of tables.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusRun {
    pub results: Vec<EntryResult>,
    /// Entries whose tables differ between fields.
    pub field_dependent: Vec<String>,
    pub passed: bool,
}

impl CorpusRun {
    pub fn failed(&self) -> Vec<&EntryResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }
}

/// Runs the given entries over every field concurrently. The tables over
/// `S_0` and `S_e` computed over different fields must coincide; a
/// difference fails the run.
pub fn run_corpus(entries: &[CorpusEntry], fields: &[FieldKind], opts: &ClassifyOptions) -> Result<CorpusRun> {
    let jobs: Vec<(&CorpusEntry, FieldKind)> = entries
        .iter()
        .flat_map(|e| fields.iter().map(move |&f| (e, f)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(e, f)| run_entry_over(e, f, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut field_dependent = Vec::new();
    for e in entries {
        let tables: Vec<Vec<Vec<(usize, u32, u64)>>> = results
            .iter()
            .filter(|r| r.name == e.name && r.failures.iter().all(|f| !f.starts_with("error")))
            .map(|r| {
                // tables over S_t with 0 < t < e depend on the coordinates
                let ends = [r.tables.first(), r.tables.last()];
                ends.iter().flatten().map(|t| t.entries().collect()).collect()
            })
            .collect();
        if tables.windows(2).any(|w| w[0] != w[1]) {
            field_dependent.push(e.name.clone());
        }
    }
    let passed = field_dependent.is_empty() && results.iter().all(|r| r.passed);
    Ok(CorpusRun {
        results,
        field_dependent,
        passed,
    })
}
