//! Critical values of the interpolating parameter `beta`, the towers of flip
//! centres on the period side (`Z^k`, codimension `k`) and on the GIT side
//! (`W_k`, dimension `k`), the boundary stratum catalog of the GIT quotient,
//! and the table matching the two.
//!
//! Stratum descriptions are data; the checks here are structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::git::{OnePS, LAMBDA};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("{0} is not a critical value")]
    NotCritical(String),
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("tower violation: {0}")]
    Tower(String),
    #[error("catalog violation: {0}")]
    Catalog(String),
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A critical value of `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CriticalBeta(#[serde(serialize_with = "ser_ratio")] Rational64);

const CRITICAL_DENOMINATORS: [i64; 7] = [9, 7, 6, 5, 4, 3, 2];

impl CriticalBeta {
    pub fn new(value: Rational64) -> Result<Self, ScheduleError> {
        let ok = value == Rational64::from_integer(0)
            || value == Rational64::from_integer(1)
            || CRITICAL_DENOMINATORS
                .iter()
                .any(|&d| value == Rational64::new(1, d));
        if ok {
            Ok(CriticalBeta(value))
        } else {
            Err(ScheduleError::NotCritical(value.to_string()))
        }
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }
}

impl fmt::Display for CriticalBeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The critical values in increasing order. `1/8` is not among them.
pub fn critical_betas() -> Vec<CriticalBeta> {
    let mut out = vec![CriticalBeta(Rational64::from_integer(0))];
    out.extend(
        CRITICAL_DENOMINATORS
            .iter()
            .map(|&d| CriticalBeta(Rational64::new(1, d))),
    );
    out.push(CriticalBeta(Rational64::from_integer(1)));
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TowerSide {
    Z,
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerEntry {
    pub side: TowerSide,
    pub index: u32,
    /// Codimension in the period space for `Z`, dimension for `W`.
    pub codim_or_dim: u32,
    pub description: &'static str,
}

pub fn z_tower() -> Vec<TowerEntry> {
    [
        (1, "H_u ∪ H_h = supp Δ"),
        (2, "Δ^(2)"),
        (3, "Δ^(3)"),
        (4, "Δ^(4)"),
        (5, "Δ^(5)"),
        (7, "image of F(II_{2,10} ⊕ A_2)"),
        (8, "image of F(II_{2,10} ⊕ A_1)"),
        (9, "image of F(II_{2,10}), a component of Δ^(9)"),
    ]
    .into_iter()
    .map(|(k, d)| TowerEntry {
        side: TowerSide::Z,
        index: k,
        codim_or_dim: k,
        description: d,
    })
    .collect()
}

pub fn w_tower() -> Vec<TowerEntry> {
    [
        (0, "{ω} = closure of IV(0a)"),
        (1, "closure of IV(1)"),
        (2, "closure of IV(2)"),
        (3, "closure of IV(3)"),
        (4, "closure of IV(4)"),
        (6, "closure of IV(6)"),
        (7, "closure of IV(7)"),
        (8, "closure of IV(8)"),
    ]
    .into_iter()
    .map(|(k, d)| TowerEntry {
        side: TowerSide::W,
        index: k,
        codim_or_dim: k,
        description: d,
    })
    .collect()
}

/// Id of the stratum whose closure is `W_k`.
pub fn w_stratum_id(k: u32) -> Option<String> {
    match k {
        0 => Some("IV(0a)".into()),
        5 => None,
        1..=8 => Some(format!("IV({k})")),
        _ => None,
    }
}

/// Codimension `k` of the `Z`-centre flipped at `beta = 1/m` (and `k = 1` at
/// `beta = 1`): `k = m` except `k = m + 1` for `m = 6, 7`.
pub fn flip_codimension(beta: CriticalBeta) -> Option<u32> {
    let v = beta.value();
    if v == Rational64::from_integer(1) {
        return Some(1);
    }
    if *v.numer() != 1 || *v.denom() <= 1 {
        return None;
    }
    let m = *v.denom() as u32;
    Some(if m == 6 || m == 7 { m + 1 } else { m })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StratumType {
    I,
    II,
    III,
    IV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stabilizer {
    /// One of the four one-parameter subgroups, 1-based.
    Lambda(u8),
    Torus2,
    MaxTorus,
    SO3,
    SL2Sym3,
    SO4,
}

impl Stabilizer {
    pub fn one_ps(&self) -> Option<OnePS> {
        match self {
            Stabilizer::Lambda(i) => LAMBDA.get(*i as usize - 1).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::Lambda(i) => write!(f, "λ_{i}"),
            Stabilizer::Torus2 => f.write_str("2-dimensional torus"),
            Stabilizer::MaxTorus => f.write_str("maximal torus"),
            Stabilizer::SO3 => f.write_str("SO(3)"),
            Stabilizer::SL2Sym3 => f.write_str("SL(2) via Sym^3"),
            Stabilizer::SO4 => f.write_str("SO(4)"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumRecord {
    pub id: &'static str,
    #[serde(rename = "type")]
    pub kind: StratumType,
    pub description: &'static str,
    pub stabilizer: Option<Stabilizer>,
    /// Stabilizer as printed next to the stratum, when it names a 1-PS by
    /// weight vector; the index in `stabilizer` is resolved from the weights.
    pub stabilizer_as_printed: Option<&'static str>,
    /// Strata in whose closure this one lies.
    pub closure_relations: Vec<&'static str>,
    /// `i` when the closure of this stratum is the GIT boundary component
    /// fixed by `λ_i`.
    pub sigma: Option<u8>,
}

fn rec(
    id: &'static str,
    kind: StratumType,
    description: &'static str,
    stabilizer: Option<Stabilizer>,
    closure_relations: &[&'static str],
) -> StratumRecord {
    StratumRecord {
        id,
        kind,
        description,
        stabilizer,
        stabilizer_as_printed: None,
        closure_relations: closure_relations.to_vec(),
        sigma: None,
    }
}

fn printed(mut r: StratumRecord, text: &'static str) -> StratumRecord {
    r.stabilizer_as_printed = Some(text);
    r
}

fn sigma(mut r: StratumRecord, i: u8) -> StratumRecord {
    r.sigma = Some(i);
    r
}

/// Dimensions of the GIT boundary components `σ_1..σ_4`.
pub const SIGMA_DIMENSIONS: [u32; 4] = [2, 4, 2, 1];

fn all_records() -> Vec<StratumRecord> {
    use Stabilizer::*;
    use StratumType::*;
    vec![
        sigma(rec("II(1)", II, "two double points of type Ẽ8", Some(Lambda(1)), &[]), 1),
        sigma(rec("II(2)", II, "two double points of type Ẽ7 and some rational double points", Some(Lambda(2)), &[]), 2),
        sigma(rec("II(3)", II, "singular along two skew lines, each an ordinary nodal curve with four simple pinch points", Some(Lambda(3)), &[]), 3),
        sigma(rec("II(4)", II, "plane and a cone over a nonsingular cubic (triple point of type Ẽ6)", Some(Lambda(4)), &[]), 4),
        rec("II(5)", II, "double point of type Ẽ8 with no line through it, plus rational double points", None, &[]),
        rec("II(6)", II, "singular along a smooth conic, an ordinary nodal curve with 4 pinch points", None, &[]),
        rec("II(7)", II, "singular along a twisted cubic, an ordinary nodal curve with 4 pinch points", None, &[]),
        rec("II(8)", II, "singular along an elliptic normal quartic curve: two quadrics meeting transversally", None, &[]),
        rec("III(1)", III, "tetrahedron: four planes with normal crossings, the point ζ = σ_1 ∩ σ_2 ∩ σ_3 ∩ σ_4", Some(MaxTorus), &[]),
        rec("III(2)", III, "two nonsingular quadrics meeting in four lines: the curve τ minus {ω, ζ}", Some(Torus2), &[]),
        printed(rec("III(3)", III, "two nonsingular quadrics meeting in two conics forming a cycle", Some(Lambda(2)), &["II(8)"]), "λ_4=(1,0,0,-1)"),
        printed(rec("III(4)", III, "singular along a twisted cubic with two double pinch points, each on a line", Some(Lambda(1)), &["II(7)"]), "λ_3=(3,1,-1,-3)"),
        printed(rec("III(5)", III, "singular along a conic with two double pinch points, each on a line", Some(Lambda(2)), &["II(6)"]), "λ_4=(1,0,0,-1)"),
        rec("III(6)", III, "singular along a conic, strictly quasi-ordinary, no line through a double pinch point", None, &["II(6)"]),
        rec("III(7)", III, "double point of type T_{2,3,r} with no line through it", None, &["II(5)"]),
        rec("IV(0a)", IV, "double smooth quadric, the point ω", Some(SO4), &["IV(1)"]),
        rec("IV(0b)", IV, "tangent developable of a twisted cubic, the point υ", Some(SL2Sym3), &["III(4)", "II(7)"]),
        rec("IV(1)", IV, "two quadrics tangent along a nonsingular conic", Some(SO3), &["IV(2)"]),
        printed(rec("IV(2)", IV, "singular along a conic of cuspidal type; normalization has two rational double points", Some(Lambda(2)), &["IV(3)"]), "λ_4=(1,0,0,-1)"),
        rec("IV(3)", IV, "singular along a nodal conic with a pinch point of type E_{4,∞}", None, &["IV(4)"]),
        rec("IV(4)", IV, "singular along a nodal conic with pinch points E_{3,∞} plus simple, or E_{4,∞}", None, &["IV(6)"]),
        rec("IV(5)", IV, "double point of type E_{3,r} with no line through it", None, &["III(7)", "IV(6)"]),
        rec("IV(6)", IV, "double point of type E14", None, &["IV(7)"]),
        rec("IV(7)", IV, "double point of type E13", None, &["IV(8)"]),
        rec("IV(8)", IV, "double point of type E12", None, &[]),
    ]
}

/// Weight vectors printed next to strata, keyed by the name printed with them.
const PRINTED_WEIGHTS: [(&str, [i64; 4]); 2] = [
    ("λ_4=(1,0,0,-1)", [1, 0, 0, -1]),
    ("λ_3=(3,1,-1,-3)", [3, 1, -1, -3]),
];

/// Records of one type, or all records; validated.
pub fn stratum_catalog(filter: Option<StratumType>) -> Result<Vec<StratumRecord>, ScheduleError> {
    let records = all_records();
    validate_catalog(&records)?;
    Ok(records
        .into_iter()
        .filter(|r| filter.is_none_or(|t| r.kind == t))
        .collect())
}

fn validate_catalog(records: &[StratumRecord]) -> Result<(), ScheduleError> {
    let ids: BTreeSet<&str> = records.iter().map(|r| r.id).collect();
    if ids.len() != records.len() {
        return Err(ScheduleError::Catalog("duplicate ids".into()));
    }
    let count = |t: StratumType| records.iter().filter(|r| r.kind == t).count();
    for (t, n) in [(StratumType::II, 8), (StratumType::III, 7), (StratumType::IV, 10)] {
        if count(t) != n {
            return Err(ScheduleError::Catalog(format!("{t:?} has {} records, expected {n}", count(t))));
        }
    }
    for r in records {
        for c in &r.closure_relations {
            if !ids.contains(c) {
                return Err(ScheduleError::Catalog(format!("{} refers to unknown {c}", r.id)));
            }
        }
        if let Some(text) = r.stabilizer_as_printed {
            let weights = PRINTED_WEIGHTS
                .iter()
                .find(|(t, _)| *t == text)
                .map(|(_, w)| *w)
                .ok_or_else(|| ScheduleError::Catalog(format!("unparsed stabilizer {text}")))?;
            if r.stabilizer.and_then(|s| s.one_ps()).map(|p| p.0) != Some(weights) {
                return Err(ScheduleError::Catalog(format!(
                    "{}: stabilizer {text} does not resolve to {:?}",
                    r.id, r.stabilizer
                )));
            }
        }
    }
    for i in 1..=4u8 {
        let holders: Vec<&str> = records.iter().filter(|r| r.sigma == Some(i)).map(|r| r.id).collect();
        let expected = format!("II({i})");
        if holders != [expected.as_str()] {
            return Err(ScheduleError::Catalog(format!("σ_{i} is the closure of {holders:?}")));
        }
        let r = records.iter().find(|r| r.id == expected).unwrap();
        if r.stabilizer != Some(Stabilizer::Lambda(i)) {
            return Err(ScheduleError::Catalog(format!("{expected} not fixed by λ_{i}")));
        }
    }
    let stab = |id: &str| records.iter().find(|r| r.id == id).and_then(|r| r.stabilizer);
    for (id, s) in [
        ("IV(0a)", Stabilizer::SO4),
        ("IV(0b)", Stabilizer::SL2Sym3),
        ("IV(1)", Stabilizer::SO3),
        ("III(1)", Stabilizer::MaxTorus),
    ] {
        if stab(id) != Some(s) {
            return Err(ScheduleError::Catalog(format!("{id} should have stabilizer {s}")));
        }
    }
    Ok(())
}

/// `(lower, upper)` with `lower` contained in the closure of `upper`, for the
/// Type IV strata `IV(1)..IV(8)`: `IV(k) ⊂ closure IV(k+1)` except
/// `IV(4) ⊂ closure IV(6)`.
pub fn iv_adjacencies() -> Vec<(String, String)> {
    (1..=7u32)
        .map(|k| {
            let up = if k == 4 { 6 } else { k + 1 };
            (format!("IV({k})"), format!("IV({up})"))
        })
        .collect()
}

/// One row of the table matching flip centres on both sides, verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct FlipRow {
    pub codim: u32,
    pub beta: CriticalBeta,
    pub z_component: &'static str,
    pub w_component: &'static str,
    /// Stratum id as printed in the W column.
    pub w_id: &'static str,
    pub note: Option<&'static str>,
}

const FLIP_TABLE: [(u32, i64, i64, &str, &str, &str); 10] = [
    (1, 1, 1, "H_h", "IV(0a): double quadric", "IV(0a)"),
    (1, 1, 1, "H_u", "IV(0b): tangent developable", "IV(0b)"),
    (2, 1, 2, "Δ^(2)", "IV(1): 2 quadrics tangent along a conic", "IV(1)"),
    (3, 1, 3, "Δ^(3)", "IV(2): double conic, cuspidal type", "IV(2)"),
    (4, 1, 4, "Δ^(4)", "IV(3): E_{4,∞}-locus", "IV(3)"),
    (5, 1, 5, "Δ^(5)", "IV(4): E_{3,0}", "IV(4)"),
    (6, 1, 5, "Δ^(6)", "IV(5): E_{3,∞} and E_{3,r}", "IV(5)"),
    (7, 1, 6, "unigonal in Δ^(6) (T_{3,3,4}-polarized K3)", "IV(6): E_14-locus", "IV(6)"),
    (8, 1, 7, "unigonal in Δ^(7) (T_{2,4,5}-polarized K3)", "IV(6): E_13-locus", "IV(6)"),
    (9, 1, 9, "unigonal in Δ^(8) (T_{2,3,7}-polarized K3)", "IV(8): E_12-locus", "IV(8)"),
];

pub const NOTE_BETA_FIFTH: &str =
    "beta = 1/5 carries both codim 5 and codim 6, while the flip rule pairs 1/5 with codim 5 only and the Z-tower has no codim 6 member";
pub const NOTE_E13_ID: &str =
    "W column prints IV(6) for the E13 locus; the stratum of E13 points is IV(7)";

pub fn flip_table() -> Vec<FlipRow> {
    FLIP_TABLE
        .iter()
        .map(|&(codim, n, d, z, w, id)| FlipRow {
            codim,
            beta: CriticalBeta(Rational64::new(n, d)),
            z_component: z,
            w_component: w,
            w_id: id,
            note: match codim {
                6 => Some(NOTE_BETA_FIFTH),
                8 => Some(NOTE_E13_ID),
                _ => None,
            },
        })
        .collect()
}

/// Table rows for a critical `beta` in `(0, 1]`.
pub fn flip_center(beta: Rational64) -> Result<Vec<FlipRow>, ScheduleError> {
    let b = CriticalBeta::new(beta)?;
    if b.value() == Rational64::from_integer(0) {
        return Err(ScheduleError::NotCritical("0 has no flip centre".into()));
    }
    Ok(flip_table().into_iter().filter(|r| r.beta == b).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub z_indices: Vec<u32>,
    pub w_indices: Vec<u32>,
    /// `(beta, k, W id)` for every critical `beta` in `(0, 1]`.
    pub pairings: Vec<(String, u32, String)>,
    pub adjacencies: Vec<(String, String)>,
    /// Table rows that deviate from the pairing rule, with their notes.
    pub flagged_rows: Vec<(u32, String)>,
}

/// Structural checks on the towers, the flip pairing `Z^k <-> W_{k-1}` and
/// the table.
pub fn validate_towers() -> Result<TowerReport, ScheduleError> {
    let z = z_tower();
    let w = w_tower();
    let z_idx: Vec<u32> = z.iter().map(|e| e.index).collect();
    let w_idx: Vec<u32> = w.iter().map(|e| e.index).collect();
    if z_idx.contains(&6) || !z_idx.contains(&5) || !z_idx.contains(&7) {
        return Err(ScheduleError::Tower("Z-tower must skip exactly codimension 6".into()));
    }
    if w_idx.contains(&5) || !w_idx.contains(&4) || !w_idx.contains(&6) {
        return Err(ScheduleError::Tower("W-tower must skip exactly dimension 5".into()));
    }
    let monotone = |t: &[TowerEntry]| t.windows(2).all(|p| p[0].codim_or_dim < p[1].codim_or_dim);
    if !monotone(&z) || !monotone(&w) {
        return Err(ScheduleError::Tower("tower not strictly monotone".into()));
    }
    let catalog = stratum_catalog(Some(StratumType::IV))?;
    let iv_ids: BTreeSet<&str> = catalog.iter().map(|r| r.id).collect();
    let mut pairings = Vec::new();
    for b in critical_betas().into_iter().skip(1) {
        let k = flip_codimension(b).ok_or_else(|| ScheduleError::Tower(format!("no centre for {b}")))?;
        if !z_idx.contains(&k) {
            return Err(ScheduleError::Tower(format!("beta = {b} pairs with missing Z^{k}")));
        }
        if !w_idx.contains(&(k - 1)) {
            return Err(ScheduleError::Tower(format!("beta = {b} pairs with missing W_{}", k - 1)));
        }
        let id = w_stratum_id(k - 1).expect("W index present");
        if !iv_ids.contains(id.as_str()) {
            return Err(ScheduleError::Tower(format!("{id} missing from the catalog")));
        }
        pairings.push((b.to_string(), k, id));
    }
    let adjacencies = iv_adjacencies();
    let by_id: BTreeMap<&str, &StratumRecord> = catalog.iter().map(|r| (r.id, r)).collect();
    for (lo, up) in &adjacencies {
        let r = by_id
            .get(lo.as_str())
            .ok_or_else(|| ScheduleError::UnknownStratum(lo.clone()))?;
        if !r.closure_relations.contains(&up.as_str()) {
            return Err(ScheduleError::Tower(format!("{lo} should lie in the closure of {up}")));
        }
    }
    let mut flagged = Vec::new();
    for row in flip_table() {
        if !iv_ids.contains(row.w_id) {
            return Err(ScheduleError::Tower(format!("table refers to unknown {}", row.w_id)));
        }
        if row.codim == 1 {
            continue;
        }
        let rule = pairings
            .iter()
            .find(|(b, k, _)| *b == row.beta.to_string() && *k == row.codim);
        let consistent = rule.is_some_and(|(_, _, id)| id == row.w_id) && z_idx.contains(&row.codim);
        match (consistent, row.note) {
            (true, _) => {}
            (false, Some(note)) => flagged.push((row.codim, note.to_string())),
            (false, None) => {
                return Err(ScheduleError::Tower(format!(
                    "table row codim {} ({}, {}) breaks the pairing rule",
                    row.codim, row.beta, row.w_id
                )))
            }
        }
    }
    Ok(TowerReport {
        z_indices: z_idx,
        w_indices: w_idx,
        pairings,
        adjacencies,
        flagged_rows: flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn betas() {
        let b = critical_betas();
        assert_eq!(b.len(), 9);
        assert!(!b.iter().any(|x| x.value() == r(1, 8)));
        assert_eq!(b.last().unwrap().value(), r(1, 1));
        assert_eq!(b[0].value(), r(0, 1));
        assert!(CriticalBeta::new(r(1, 8)).is_err());
    }

    #[test]
    fn flip_centres() {
        let half = flip_center(r(1, 2)).unwrap();
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].z_component, "Δ^(2)");
        assert_eq!(half[0].w_id, "IV(1)");
        assert!(half[0].w_component.contains("2 quadrics tangent along a conic"));
        let ninth = flip_center(r(1, 9)).unwrap();
        assert_eq!(ninth[0].w_id, "IV(8)");
        assert!(ninth[0].z_component.contains("T_{2,3,7}"));
        let sixth = flip_center(r(1, 6)).unwrap();
        assert_eq!(sixth[0].codim, 7);
        assert!(sixth[0].w_component.contains("E_14"));
        assert_eq!(flip_center(r(1, 1)).unwrap().len(), 2);
        let fifth: Vec<u32> = flip_center(r(1, 5)).unwrap().iter().map(|x| x.codim).collect();
        assert_eq!(fifth, vec![5, 6]);
        assert!(flip_center(r(1, 8)).is_err());
        assert!(flip_center(r(0, 1)).is_err());
    }

    #[test]
    fn towers() {
        let rep = validate_towers().unwrap();
        assert_eq!(rep.z_indices, vec![1, 2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(rep.w_indices, vec![0, 1, 2, 3, 4, 6, 7, 8]);
        assert!(rep.adjacencies.contains(&("IV(4)".into(), "IV(6)".into())));
        assert!(!rep.adjacencies.contains(&("IV(4)".into(), "IV(5)".into())));
        let ks: Vec<u32> = rep.pairings.iter().map(|p| p.1).collect();
        assert_eq!(ks, vec![9, 8, 7, 5, 4, 3, 2, 1]);
        let flagged: Vec<u32> = rep.flagged_rows.iter().map(|f| f.0).collect();
        assert_eq!(flagged, vec![6, 8]);
    }

    #[test]
    fn catalog() {
        assert_eq!(stratum_catalog(Some(StratumType::II)).unwrap().len(), 8);
        assert_eq!(stratum_catalog(Some(StratumType::III)).unwrap().len(), 7);
        assert_eq!(stratum_catalog(Some(StratumType::IV)).unwrap().len(), 10);
        let all = stratum_catalog(None).unwrap();
        let get = |id: &str| all.iter().find(|r| r.id == id).unwrap();
        assert!(get("II(4)").description.contains("cone over a nonsingular cubic"));
        assert_eq!(get("II(4)").stabilizer, Some(Stabilizer::Lambda(4)));
        assert_eq!(get("II(4)").sigma, Some(4));
        assert!(get("IV(1)").description.contains("tangent along a nonsingular conic"));
        assert!(get("III(1)").description.contains("σ_1 ∩ σ_2 ∩ σ_3 ∩ σ_4"));
        assert_eq!(get("IV(2)").stabilizer.unwrap().one_ps().unwrap().0, [1, 0, 0, -1]);
    }

    #[test]
    fn bad_catalog_is_rejected() {
        let mut recs = all_records();
        recs.retain(|r| r.id != "II(8)");
        assert!(validate_catalog(&recs).is_err());
        let mut recs = all_records();
        recs[10].stabilizer = Some(Stabilizer::Lambda(4));
        assert!(validate_catalog(&recs).is_err());
    }

    #[test]
    fn sigma_dimensions_match_git() {
        for (i, lambda) in LAMBDA.iter().enumerate() {
            let s = crate::git::sigma_dimension(lambda, crate::git::DEFAULT_SEED).unwrap();
            assert_eq!(s.dimension as u32, SIGMA_DIMENSIONS[i]);
        }
    }
}
