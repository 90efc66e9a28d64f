//! Type II boundary labels from D7 embeddings into Niemeier root systems, the
//! boundary dimension table, and the matching with GIT Type II strata.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    classify_root_sublattice, intmat, invariants_match, make_lattice, Component, Family,
    IntegralLattice, LatticeError, LatticeSpec, RootLabel,
};

/// Catalog shipped with the crate; identical to `data/niemeier.json`.
pub const BUILTIN_CATALOG: &str = include_str!("../../../data/niemeier.json");

#[derive(Debug, Error)]
pub enum NiemeierError {
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed catalog: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog has {0} entries, expected 24")]
    Count(usize),
    #[error("catalog entry {name}: {reason}")]
    Validation { name: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unknown boundary label {0}")]
    UnknownLabel(String),
    #[error("assembled label {label} has rank {rank}, expected 17")]
    Rank { label: String, rank: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiemeierEntry {
    pub name: String,
    #[serde(rename = "components")]
    pub root_system: RootLabel,
    #[serde(rename = "h")]
    pub coxeter_number: u32,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    components: Vec<String>,
    h: u32,
}

impl NiemeierEntry {
    pub fn is_leech(&self) -> bool {
        self.root_system.is_empty()
    }

    fn validate(&self) -> Result<(), NiemeierError> {
        let fail = |reason: String| NiemeierError::Validation {
            name: self.name.clone(),
            reason,
        };
        if self.is_leech() {
            return if self.coxeter_number == 0 {
                Ok(())
            } else {
                Err(fail("empty root system needs h = 0".into()))
            };
        }
        if self.root_system.rank() != 24 {
            return Err(fail(format!("rank {} != 24", self.root_system.rank())));
        }
        let h = self.coxeter_number as u64;
        if self.root_system.root_count() != 24 * h {
            return Err(fail(format!(
                "root count {} != 24h = {}",
                self.root_system.root_count(),
                24 * h
            )));
        }
        for c in self.root_system.components() {
            if c.coxeter_number() != Some(h) {
                return Err(fail(format!("component {c} has Coxeter number other than {h}")));
            }
        }
        Ok(())
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<NiemeierEntry>, NiemeierError> {
    let raw: Vec<RawEntry> = serde_json::from_str(text)?;
    if raw.len() != 24 {
        return Err(NiemeierError::Count(raw.len()));
    }
    let mut out = Vec::with_capacity(24);
    for r in raw {
        let comps = r
            .components
            .iter()
            .map(|c| c.parse::<RootLabel>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| NiemeierError::Validation {
                name: r.name.clone(),
                reason: e.to_string(),
            })?;
        let entry = NiemeierEntry {
            name: r.name,
            root_system: comps.iter().fold(RootLabel::empty(), |a, b| a.direct_sum(b)),
            coxeter_number: r.h,
        };
        entry.validate()?;
        out.push(entry);
    }
    Ok(out)
}

pub fn load_niemeier_catalog(path: &Path) -> Result<Vec<NiemeierEntry>, NiemeierError> {
    let text = std::fs::read_to_string(path).map_err(|source| NiemeierError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

pub fn builtin_catalog() -> Vec<NiemeierEntry> {
    parse_catalog(BUILTIN_CATALOG).expect("shipped catalog validates")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D7Embedding {
    pub niemeier: NiemeierEntry,
    #[serde(serialize_with = "display_component")]
    pub host: Component,
}

fn display_component<S: serde::Serializer>(c: &Component, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn is_d7_host(c: &Component) -> bool {
    matches!((c.family, c.index), (Family::D, n) if n >= 7) || *c == Component::e(8)
}

/// One embedding per (entry, host component type).
pub fn d7_embeddings(catalog: &[NiemeierEntry]) -> Vec<D7Embedding> {
    catalog
        .iter()
        .flat_map(|e| {
            e.root_system
                .grouped()
                .into_iter()
                .filter(|(c, _)| is_d7_host(c))
                .map(|(c, _)| D7Embedding {
                    niemeier: e.clone(),
                    host: c,
                })
        })
        .collect()
}

/// Dynkin nodes of a D7 subdiagram in the standard model of `host`.
fn d7_nodes(host: Component) -> Vec<usize> {
    match host.family {
        Family::D => {
            let n = host.index as usize;
            (n - 7..n).collect()
        }
        // E8 = T(2,3,5); dropping the end of the length-2 leg leaves T(2,2,5) = D7
        _ => vec![0, 1, 2, 4, 5, 6, 7],
    }
}

/// Orthogonal complement of the standard D7 inside `host`, as a lattice.
pub fn complement_in_host(host: Component) -> Result<IntegralLattice, NiemeierError> {
    let h = make_lattice(&LatticeSpec::from_label(&RootLabel::new([host])))?;
    let nodes = d7_nodes(host);
    let sub: Vec<Vec<i64>> = nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| h.gram()[i][j]).collect())
        .collect();
    let sub_label = classify_root_sublattice(&IntegralLattice::new(sub)?, false)?;
    debug_assert_eq!(sub_label, RootLabel::new([Component::d(7)]));
    let rows: Vec<Vec<i64>> = nodes.iter().map(|&i| h.gram()[i].clone()).collect();
    let basis = intmat::integer_kernel(&rows, h.rank());
    Ok(IntegralLattice::new(intmat::restrict_gram(h.gram(), &basis))?)
}

/// Label of the complement of D7 in the Niemeier root system: the other
/// components plus the root label (with `D1` convention) of the complement
/// inside the host. The host part is cross-checked against a standard Gram
/// realization of the resulting label.
pub fn complement_label(e: &D7Embedding) -> Result<RootLabel, NiemeierError> {
    let comp = complement_in_host(e.host)?;
    let local = if comp.rank() == 0 {
        RootLabel::empty()
    } else {
        classify_root_sublattice(&comp, true)?
    };
    let model = make_lattice(&LatticeSpec::from_label(&local))?;
    if local.rank() as usize != comp.rank() || !invariants_match(&model, &comp) {
        return Err(NiemeierError::Validation {
            name: e.niemeier.name.clone(),
            reason: format!("complement of D7 in {} is not {local}", e.host),
        });
    }
    let others = e
        .niemeier
        .root_system
        .remove_one(e.host)
        .expect("host is a component");
    Ok(others.direct_sum(&local))
}

/// Boundary dimension table, keyed by label.
pub const DIMENSION_TABLE: [(&str, u32); 9] = [
    ("D17", 1),
    ("D9+E8", 10),
    ("D12+D5", 6),
    ("D3+E7^2", 4),
    ("A15+D2", 3),
    ("A11+E6", 1),
    ("D8^2+D1", 2),
    ("D16+D1", 6),
    ("E8^2+D1", 2),
];

pub fn dimension_table() -> Vec<(RootLabel, u32)> {
    DIMENSION_TABLE
        .iter()
        .map(|(s, d)| (s.parse().expect("table label"), *d))
        .collect()
}

pub fn stratum_dimension(label: &RootLabel) -> Result<u32, NiemeierError> {
    dimension_table()
        .into_iter()
        .find(|(l, _)| l == label)
        .map(|(_, d)| d)
        .ok_or_else(|| NiemeierError::UnknownLabel(label.to_string()))
}

/// Dimension predicted by the maximal D_l chain through the host: (l-7)+1
/// for D_l hosts with l < 24, and 1 for D24, where the null space is zero.
/// `None` for E8 hosts, which the chain rule does not cover.
pub fn chain_rule_dimension(e: &D7Embedding) -> Option<u32> {
    match (e.host.family, e.host.index) {
        (Family::D, 24) => Some(1),
        (Family::D, l) => Some(l - 7 + 1),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type2Descriptor {
    pub name: String,
    /// r for each simple elliptic singularity of type E~_r.
    pub simple_elliptic: Vec<u32>,
    /// Degrees of rational double curves.
    pub rational_curves: Vec<u32>,
    /// Degrees of elliptic double curves.
    pub elliptic_curves: Vec<u32>,
    pub residual: RootLabel,
}

fn descriptor(name: &str, se: &[u32], rat: &[u32], ell: &[u32], residual: &str) -> Type2Descriptor {
    Type2Descriptor {
        name: name.into(),
        simple_elliptic: se.to_vec(),
        rational_curves: rat.to_vec(),
        elliptic_curves: ell.to_vec(),
        residual: residual.parse().expect("descriptor residual"),
    }
}

/// Descriptors of the eight GIT Type II strata.
pub fn type2_descriptors() -> Vec<Type2Descriptor> {
    vec![
        descriptor("II(1)", &[8, 8], &[], &[], "D1"),
        descriptor("II(2)", &[7, 7], &[], &[], "A3"),
        descriptor("II(3)", &[], &[1, 1], &[], "D1"),
        descriptor("II(4)", &[6], &[], &[], "A11"),
        descriptor("II(5)", &[8], &[], &[], "D9"),
        descriptor("II(6)", &[], &[2], &[], "D5"),
        descriptor("II(7)", &[], &[3], &[], "D1"),
        descriptor("II(8)", &[], &[], &[4], "A1^2"),
    ]
}

/// E_r per E~_r, D_{4d+4} per rational curve of degree d, A_{4d-1} per
/// elliptic curve of degree d, plus the residual.
pub fn assemble_type2_label(d: &Type2Descriptor) -> Result<RootLabel, NiemeierError> {
    let mut comps = Vec::new();
    for &r in &d.simple_elliptic {
        comps.push(Component::new(Family::E, r)?);
    }
    for &deg in &d.rational_curves {
        comps.push(Component::new(Family::D, 4 * deg + 4)?);
    }
    for &deg in &d.elliptic_curves {
        comps.push(Component::new(Family::A, (4 * deg).saturating_sub(1))?);
    }
    let label = RootLabel::new(comps).direct_sum(&d.residual);
    if label.rank() != 17 {
        return Err(NiemeierError::Rank {
            label: label.to_string(),
            rank: label.rank(),
        });
    }
    Ok(label)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchRow {
    pub git: String,
    pub label: RootLabel,
    pub dimension: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unmatched {
    pub label: RootLabel,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchTable {
    pub rows: Vec<MatchRow>,
    pub unmatched: Vec<Unmatched>,
}

pub const D17_TAG: &str = "absorbed in IV(8)/E_12 stratum";

/// Distinct complement labels over all D7 embeddings.
pub fn boundary_labels(catalog: &[NiemeierEntry]) -> Result<BTreeSet<RootLabel>, NiemeierError> {
    d7_embeddings(catalog).iter().map(complement_label).collect()
}

pub fn match_git_bb(catalog: &[NiemeierEntry]) -> Result<MatchTable, NiemeierError> {
    let image = boundary_labels(catalog)?;
    let mut rows = Vec::new();
    let mut matched = BTreeSet::new();
    for d in type2_descriptors() {
        let label = assemble_type2_label(&d)?;
        if !image.contains(&label) {
            return Err(NiemeierError::UnknownLabel(label.to_string()));
        }
        let dimension = stratum_dimension(&label)?;
        matched.insert(label.clone());
        rows.push(MatchRow {
            git: d.name,
            label,
            dimension,
        });
    }
    let unmatched = image
        .difference(&matched)
        .map(|l| Unmatched {
            label: l.clone(),
            tag: if l.to_string() == "D17" {
                D17_TAG.into()
            } else {
                "no GIT Type II stratum".into()
            },
        })
        .collect();
    Ok(MatchTable { rows, unmatched })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryStratum {
    pub label: RootLabel,
    pub dimension: u32,
    pub git_match: Option<String>,
}

pub fn boundary_strata(catalog: &[NiemeierEntry]) -> Result<Vec<BoundaryStratum>, NiemeierError> {
    let table = match_git_bb(catalog)?;
    dimension_table()
        .into_iter()
        .map(|(label, dimension)| {
            Ok(BoundaryStratum {
                git_match: table
                    .rows
                    .iter()
                    .find(|r| r.label == label)
                    .map(|r| r.git.clone()),
                label,
                dimension,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LabelStyle;

    fn label(s: &str) -> RootLabel {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_catalog_validates() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 24);
        assert!(cat.iter().any(|e| e.root_system == label("D16+E8")));
        assert!(cat.iter().any(|e| e.root_system == label("A11+D7+E6")));
        let leech = cat.iter().find(|e| e.is_leech()).unwrap();
        assert_eq!(leech.coxeter_number, 0);
    }

    #[test]
    fn corrupted_catalog_names_entry() {
        let bad = BUILTIN_CATALOG.replace("\"h\": 25", "\"h\": 24");
        match parse_catalog(&bad) {
            Err(NiemeierError::Validation { name, .. }) => assert_eq!(name, "A24"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_catalog("[]"), Err(NiemeierError::Count(0))));
    }

    #[test]
    fn embedding_counts() {
        let cat = builtin_catalog();
        let emb = d7_embeddings(&cat);
        assert_eq!(emb.len(), 9);
        let in_entry = |n: &str| emb.iter().filter(|e| e.niemeier.name == n).count();
        assert_eq!(in_entry("A17+E7"), 0);
        assert_eq!(in_entry("D16+E8"), 2);
        assert_eq!(in_entry("E8^3"), 1);
    }

    #[test]
    fn host_complements() {
        let cases = [(Component::d(24), "D17"), (Component::d(8), "D1"), (Component::e(8), "D1")];
        for (host, expect) in cases {
            let c = complement_in_host(host).unwrap();
            assert_eq!(classify_root_sublattice(&c, true).unwrap(), label(expect));
        }
        assert_eq!(complement_in_host(Component::d(7)).unwrap().rank(), 0);
    }

    #[test]
    fn complement_labels_and_rendering() {
        let cat = builtin_catalog();
        let labels = boundary_labels(&cat).unwrap();
        let expected: BTreeSet<RootLabel> =
            DIMENSION_TABLE.iter().map(|(s, _)| label(s)).collect();
        assert_eq!(labels, expected);
        let shown: BTreeSet<String> = labels.iter().map(|l| l.render(LabelStyle::DNaming)).collect();
        assert!(shown.contains("A15+D2"));
        assert!(shown.contains("E7^2+D3"));
    }

    #[test]
    fn chain_rule_agrees_with_table() {
        let cat = builtin_catalog();
        let mut covered = 0;
        for e in d7_embeddings(&cat) {
            if let Some(d) = chain_rule_dimension(&e) {
                let l = complement_label(&e).unwrap();
                assert_eq!(stratum_dimension(&l).unwrap(), d, "{l}");
                covered += 1;
            }
        }
        assert_eq!(covered, 7);
    }

    #[test]
    fn assembly_and_matching() {
        let d = &type2_descriptors()[5];
        assert_eq!(assemble_type2_label(d).unwrap(), label("D12+D5"));
        let mut broken = d.clone();
        broken.residual = label("D4");
        assert!(matches!(assemble_type2_label(&broken), Err(NiemeierError::Rank { .. })));
        let table = match_git_bb(&builtin_catalog()).unwrap();
        assert_eq!(table.rows.len(), 8);
        assert_eq!(table.rows[4].label, label("E8+D9"));
        assert_eq!(table.rows[4].dimension, 10);
        assert_eq!(table.unmatched.len(), 1);
        assert_eq!(table.unmatched[0].label, label("D17"));
        assert_eq!(table.unmatched[0].tag, D17_TAG);
    }
}
