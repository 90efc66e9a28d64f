//! Acceptance suite and report tables.
//!
//! Each check recomputes its values from the library and compares them with
//! fixed expectations; nothing is read back from a previous run. Checks never
//! panic: a library error becomes a failed check with the error as detail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::dolgachev::{self, TriangleName, DOLGACHEV_TRIPLES};
use crate::exactpoly::frac;
use crate::git::{self, LAMBDA};
use crate::lattice::{invariants_match, lattice, make_lattice, LabelStyle, LatticeSpec, RootLabel, TpqrSpec};
use crate::niemeier::{self, NiemeierEntry};
use crate::schedule;
use crate::sl2;

/// Rows of a rendered table, all cells as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, T>(&mut self, row: I)
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line then one line per row, tab separated.
    pub fn to_tsv(&self) -> String {
        std::iter::once(&self.columns)
            .chain(&self.rows)
            .map(|r| r.join("\t") + "\n")
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub tables: BTreeMap<String, Table>,
    pub checks: Vec<Check>,
}

/// Check names, in run order.
pub const CHECK_NAMES: [&str; 12] = [
    "01-niemeier-classification",
    "02-boundary-dimensions",
    "03-type2-matching",
    "04-git-boundary",
    "05-representation-theory",
    "06-slice-transversality",
    "07-limit-identities",
    "08-dolgachev-suite",
    "09-e12-example",
    "10-root-enumeration",
    "11-schedule-integrity",
    "12-lattice-cross-identities",
];

const FAST: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn timed(limit: Duration, what: &str, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))?;
    Ok(out)
}

fn label(s: &str) -> RootLabel {
    s.parse().expect("fixed label")
}

/// The nine Type II boundary labels.
pub const BOUNDARY_LABELS: [&str; 9] = [
    "D17", "D9+E8", "D12+D5", "D3+E7^2", "A15+D2", "A11+E6", "D8^2+D1", "D16+D1", "E8^2+D1",
];

/// GIT stratum, boundary label and dimension for each Type II stratum.
pub const TYPE2_MATCHING: [(&str, &str, u32); 8] = [
    ("II(1)", "E8^2+D1", 2),
    ("II(2)", "E7^2+A3", 4),
    ("II(3)", "D8^2+D1", 2),
    ("II(4)", "E6+A11", 1),
    ("II(5)", "E8+D9", 10),
    ("II(6)", "D12+D5", 6),
    ("II(7)", "D16+D1", 6),
    ("II(8)", "A15+A1^2", 3),
];

fn check_niemeier(catalog: &[NiemeierEntry]) -> Outcome {
    timed(FAST, "classification", || {
        let emb = niemeier::d7_embeddings(catalog);
        ensure(emb.len() == 9, || format!("{} embedding classes, expected 9", emb.len()))?;
        let got = niemeier::boundary_labels(catalog).map_err(err)?;
        let want: BTreeSet<RootLabel> = BOUNDARY_LABELS.iter().map(|s| label(s)).collect();
        ensure(got == want, || {
            let g: Vec<String> = got.iter().map(|l| l.render(LabelStyle::DNaming)).collect();
            format!("labels {g:?}")
        })?;
        Ok(format!("9 embeddings, 9 labels: {}", BOUNDARY_LABELS.join(", ")))
    })
}

fn check_dimensions(catalog: &[NiemeierEntry]) -> Outcome {
    let expected: [u32; 9] = [1, 10, 6, 4, 3, 1, 2, 6, 2];
    for (s, d) in BOUNDARY_LABELS.iter().zip(expected) {
        let got = niemeier::stratum_dimension(&label(s)).map_err(err)?;
        ensure(got == d, || format!("dim {s} = {got}, expected {d}"))?;
    }
    let mut by_label: BTreeMap<RootLabel, BTreeSet<u32>> = BTreeMap::new();
    for e in niemeier::d7_embeddings(catalog) {
        if let Some(d) = niemeier::chain_rule_dimension(&e) {
            let l = niemeier::complement_label(&e).map_err(err)?;
            by_label.entry(l).or_default().insert(d);
        }
    }
    let mut agree = 0;
    for (l, preds) in &by_label {
        let stored = niemeier::stratum_dimension(l).map_err(err)?;
        ensure(preds.len() == 1, || format!("{l}: several chain predictions {preds:?}"))?;
        ensure(preds.contains(&stored), || format!("{l}: chain rule {preds:?} vs table {stored}"))?;
        agree += 1;
    }
    ensure(agree == 7, || format!("chain rule covers {agree} labels, expected 7"))?;
    Ok("9 table entries; chain rule reproduces 7".into())
}

fn check_type2(catalog: &[NiemeierEntry]) -> Outcome {
    let table = niemeier::match_git_bb(catalog).map_err(err)?;
    ensure(table.rows.len() == 8, || format!("{} rows", table.rows.len()))?;
    for (row, (git, l, d)) in table.rows.iter().zip(TYPE2_MATCHING) {
        ensure(row.git == git && row.label == label(l) && row.dimension == d, || {
            format!("row {} {} {} vs {git} {l} {d}", row.git, row.label, row.dimension)
        })?;
    }
    for d in niemeier::type2_descriptors() {
        let l = niemeier::assemble_type2_label(&d).map_err(err)?;
        ensure(l.rank() == 17, || format!("{} has rank {}", d.name, l.rank()))?;
    }
    let unmatched: Vec<String> = table.unmatched.iter().map(|u| u.label.to_string()).collect();
    ensure(unmatched == ["D17"], || format!("unmatched {unmatched:?}"))?;
    ensure(table.unmatched[0].tag == niemeier::D17_TAG, || "D17 tag".into())?;
    Ok("8 rows match; D17 unmatched".into())
}

fn check_git(seed: u64) -> Outcome {
    timed(FAST, "GIT boundary", || {
        let counts: Vec<usize> = LAMBDA.iter().map(|l| git::zero_weight_monomials(l).len()).collect();
        ensure(counts == [5, 9, 9, 10], || format!("zero-weight counts {counts:?}"))?;
        for s in [seed, seed.wrapping_add(1), seed.wrapping_add(2)] {
            let dims: Vec<usize> = LAMBDA
                .iter()
                .map(|l| git::sigma_dimension(l, s).map(|c| c.dimension))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            ensure(dims == [2, 4, 2, 1], || format!("seed {s:#x}: dims {dims:?}"))?;
        }
        Ok("counts (5,9,9,10); dims (2,4,2,1) for 3 seeds".into())
    })
}

/// Ten parameter pairs: six with `a != b`, four with `a = b`.
pub fn tangent_sample_pairs() -> Vec<(Rational64, Rational64)> {
    let r = Rational64::new;
    vec![
        (r(1, 1), r(2, 1)),
        (r(-3, 1), r(1, 2)),
        (r(2, 1), r(0, 1)),
        (r(5, 3), r(-7, 4)),
        (r(0, 1), r(1, 1)),
        (r(-1, 1), r(4, 1)),
        (r(1, 1), r(1, 1)),
        (r(-2, 1), r(-2, 1)),
        (r(3, 5), r(3, 5)),
        (r(7, 1), r(7, 1)),
    ]
}

fn check_rep() -> Outcome {
    let d = sl2::quartic_decomposition().map_err(err)?;
    ensure(d.dimension() == 35, || format!("total {}", d.dimension()))?;
    let rows = sl2::rep_table_longrepr().map_err(err)?;
    ensure(rows.len() == 5, || format!("{} rows", rows.len()))?;
    let big = |q: Rational64| frac(*q.numer(), *q.denom());
    for (a, b) in tangent_sample_pairs() {
        let t = sl2::orbit_tangent_space(&big(a), &big(b)).map_err(err)?;
        let (dim, dec) = if a != b { (13, "V(4)+V(2)^2+V(0)^2") } else { (10, "V(4)+V(2)+V(0)^2") };
        ensure(t.dimension == dim && t.decomposition.to_string() == dec, || {
            format!("({a}, {b}): {} {}", t.dimension, t.decomposition)
        })?;
    }
    Ok(format!("quartics = {d}; 5 graded rows; 10 tangent samples"))
}

fn check_slices() -> Outcome {
    let r = sl2::slice_transversality().map_err(err)?;
    ensure(r.normal.iter().all(|s| s.intersection_dimension == 0), || "U ∩ N nonzero".into())?;
    ensure(r.m_dimension == 21, || format!("dim M = {}", r.m_dimension))?;
    Ok(format!(
        "dim N = 22 and U+N = 35 at {} pairs; S ∩ U_aa = 0 at {} values; dim M = 21",
        r.normal.len(),
        r.diagonal.len()
    ))
}

fn check_limits() -> Outcome {
    let t = git::tail_identities().map_err(err)?;
    ensure(t.limit_matches, || "1-PS limit of the two-quadric family".into())?;
    ensure(t.cone_limit_matches, || "1-PS limit of the cone family".into())?;
    ensure(t.discriminant_matches, || format!("discriminant {}", t.discriminant))?;
    Ok("limit and branch discriminant identities hold".into())
}

fn check_dolgachev() -> Outcome {
    for (s, mu) in dolgachev::all_singularities().map_err(err)?.iter().zip([12, 13, 14]) {
        ensure(
            dolgachev::check_quasi_homogeneous(&s.equation, &s.space_weights(), s.base_change_order),
            || format!("{} not quasi-homogeneous", s.name),
        )?;
        ensure(dolgachev::k3_tail_condition(s), || format!("{} tail condition", s.name))?;
        let m = dolgachev::milnor_number(s).map_err(err)?;
        let g = s.gabrielov;
        ensure(m == mu && m == g.p + g.q + g.r, || format!("{} μ = {m}", s.name))?;
        let rank = dolgachev::vanishing_lattice(s).map_err(err)?.rank();
        ensure(rank == mu as usize, || format!("{} vanishing rank {rank}", s.name))?;
    }
    let z = dolgachev::z_locus_identifications().map_err(err)?;
    let discs: Vec<u64> = z.iter().map(|e| e.discriminant).collect();
    ensure(discs == [1, 2, 3], || format!("|disc| {discs:?}"))?;
    for (t, model) in [((2, 3, 7), "E8+U"), ((2, 4, 5), "E7+U"), ((3, 3, 4), "E6+U")] {
        let spec = TpqrSpec::new(t.0, t.1, t.2).map_err(err)?;
        let l = make_lattice(&LatticeSpec::Tpqr(spec)).map_err(err)?;
        ensure(invariants_match(&l, &lattice(model).map_err(err)?), || format!("{spec} vs {model}"))?;
    }
    let names: Vec<TriangleName> = z.iter().map(|e| e.singularity).collect();
    ensure(names == TriangleName::ALL, || format!("{names:?}"))?;
    Ok("E12/E13/E14: μ = 12, 13, 14; T(p,q,r) ≅ E_n+U; |disc| = 1, 2, 3".into())
}

fn check_e12() -> Outcome {
    let r = git::verify_e12_example().map_err(err)?;
    ensure(r.singular_at_origin, || "not singular at [1,0,0,0]".into())?;
    ensure(r.normal_form_matches, || format!("normal form {}", r.normal_form))?;
    ensure(r.weight_filtration_ok, || format!("weights {:?}", r.weights))?;
    Ok("singular point, normal form and weight filtration".into())
}

fn check_roots(catalog: &[NiemeierEntry]) -> Outcome {
    for (name, want) in [("A2", 6), ("D4", 24), ("E6", 72), ("E7", 126)] {
        let n = lattice(name).and_then(|l| l.roots(-2)).map_err(err)?.len();
        ensure(n == want, || format!("{name}: {n} roots"))?;
    }
    let e8 = timed(FAST, "E8 enumeration", || {
        let n = lattice("E8").and_then(|l| l.roots(-2)).map_err(err)?.len();
        ensure(n == 240, || format!("E8: {n} roots"))?;
        Ok(String::new())
    });
    e8?;
    let full: Vec<&NiemeierEntry> = catalog.iter().filter(|e| !e.is_leech()).collect();
    ensure(full.len() == 23, || format!("{} root-full entries", full.len()))?;
    for e in full {
        let (rk, rc, h) = (e.root_system.rank(), e.root_system.root_count(), e.coxeter_number as u64);
        ensure(rk == 24 && rc == 24 * h, || format!("{}: rank {rk}, roots {rc}, h {h}", e.name))?;
    }
    Ok("A2 6, D4 24, E6 72, E7 126, E8 240; 23 Niemeier entries valid".into())
}

fn check_schedule() -> Outcome {
    let betas = schedule::critical_betas();
    ensure(betas.len() == 9, || format!("{} critical values", betas.len()))?;
    ensure(!betas.iter().any(|b| b.value() == Rational64::new(1, 8)), || "1/8 present".into())?;
    let rep = schedule::validate_towers().map_err(err)?;
    ensure(!rep.z_indices.contains(&6) && !rep.w_indices.contains(&5), || "tower gaps".into())?;
    ensure(rep.adjacencies.contains(&("IV(4)".into(), "IV(6)".into())), || "IV(4) adjacency".into())?;
    let got = flip_table_rendered();
    ensure(got.rows.len() == 10, || format!("{} table rows", got.rows.len()))?;
    let first = &got.rows[0];
    ensure(first[..4] == ["1", "1", "H_h", "IV(0a): double quadric"], || format!("first row {first:?}"))?;
    let last = &got.rows[9];
    ensure(last[..4] == ["9", "1/9", "unigonal in Δ^(8) (T_{2,3,7}-polarized K3)", "IV(8): E_12-locus"], || {
        format!("last row {last:?}")
    })?;
    for kind in [schedule::StratumType::II, schedule::StratumType::III, schedule::StratumType::IV] {
        schedule::stratum_catalog(Some(kind)).map_err(err)?;
    }
    Ok(format!("9 critical values; Z skips 6, W skips 5; 10 table rows; {} flagged", rep.flagged_rows.len()))
}

fn check_cross() -> Outcome {
    let l1 = lattice("U^2+D17").map_err(err)?;
    let l2 = lattice("U^2+E8^2+D1").map_err(err)?;
    ensure(invariants_match(&l1, &l2), || "U^2+D17 vs U^2+E8^2+D1".into())?;
    for (name, [p, q, r]) in DOLGACHEV_TRIPLES {
        let spec = TpqrSpec::new(p, q, r).map_err(err)?;
        let det = make_lattice(&LatticeSpec::Tpqr(spec)).map_err(err)?.invariants().determinant.clone();
        let formula = BigInt::from(spec.discriminant_formula());
        ensure(det.magnitude() == formula.magnitude(), || format!("{name} {spec}: |det| {det} vs {formula}"))?;
    }
    Ok("U^2+D17 ~ U^2+E8^2+D1; discriminant formula for 14 triples".into())
}

/// Runs every acceptance check in `CHECK_NAMES` order.
pub fn run_checks(catalog: &[NiemeierEntry], seed: u64) -> Vec<Check> {
    let outcomes: [Outcome; 12] = [
        check_niemeier(catalog),
        check_dimensions(catalog),
        check_type2(catalog),
        check_git(seed),
        check_rep(),
        check_slices(),
        check_limits(),
        check_dolgachev(),
        check_e12(),
        check_roots(catalog),
        check_schedule(),
        check_cross(),
    ];
    CHECK_NAMES
        .iter()
        .zip(outcomes)
        .map(|(name, o)| Check {
            name: name.to_string(),
            passed: o.is_ok(),
            detail: o.unwrap_or_else(|e| e),
        })
        .collect()
}

pub fn flip_table_rendered() -> Table {
    let mut t = Table::new(&["codim", "beta", "Z", "W", "note"]);
    for r in schedule::flip_table() {
        t.push([
            r.codim.to_string(),
            r.beta.to_string(),
            r.z_component.to_string(),
            r.w_component.to_string(),
            r.note.unwrap_or("").to_string(),
        ]);
    }
    t
}

pub fn type2_matching_table(catalog: &[NiemeierEntry]) -> Result<Table, niemeier::NiemeierError> {
    let m = niemeier::match_git_bb(catalog)?;
    let mut t = Table::new(&["git", "bb", "dimension"]);
    for r in &m.rows {
        t.push([r.git.clone(), r.label.to_string(), r.dimension.to_string()]);
    }
    for u in &m.unmatched {
        let d = niemeier::stratum_dimension(&u.label)?;
        t.push([format!("({})", u.tag), u.label.to_string(), d.to_string()]);
    }
    Ok(t)
}

pub fn dimension_table_table() -> Table {
    let mut t = Table::new(&["label", "dimension"]);
    for (l, d) in niemeier::dimension_table() {
        t.push([l.render(LabelStyle::DNaming), d.to_string()]);
    }
    t
}

pub fn report_tables(catalog: &[NiemeierEntry]) -> Result<BTreeMap<String, Table>, niemeier::NiemeierError> {
    Ok(BTreeMap::from([
        ("flips".to_string(), flip_table_rendered()),
        ("type2_matching".to_string(), type2_matching_table(catalog)?),
        ("boundary_dimensions".to_string(), dimension_table_table()),
    ]))
}

pub fn report(catalog: &[NiemeierEntry], seed: u64) -> Result<ReportBundle, niemeier::NiemeierError> {
    Ok(ReportBundle {
        tables: report_tables(catalog)?,
        checks: run_checks(catalog, seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push([1, 2]);
        assert_eq!(t.to_tsv(), "a\tb\n1\t2\n");
    }

    #[test]
    fn tables_have_expected_shape() {
        let cat = niemeier::builtin_catalog();
        let tables = report_tables(&cat).unwrap();
        assert_eq!(tables["flips"].rows.len(), 10);
        assert_eq!(tables["type2_matching"].rows.len(), 9);
        assert_eq!(tables["type2_matching"].rows[8][1], "D17");
        assert_eq!(tables["boundary_dimensions"].rows[4], ["A15+D2", "3"]);
    }

    #[test]
    fn fast_checks_pass() {
        let cat = niemeier::builtin_catalog();
        for o in [check_niemeier(&cat), check_dimensions(&cat), check_type2(&cat), check_cross(), check_schedule()] {
            o.unwrap();
        }
    }

    #[test]
    fn corrupted_catalog_fails_checks() {
        let mut cat = niemeier::builtin_catalog();
        cat.retain(|e| e.name != "D24");
        assert!(check_niemeier(&cat).is_err());
        assert!(check_roots(&cat).is_err());
    }

    #[test]
    fn tangent_pairs_cover_both_cases() {
        let pairs = tangent_sample_pairs();
        assert_eq!(pairs.len(), 10);
        assert!(pairs.iter().any(|(a, b)| a == b) && pairs.iter().any(|(a, b)| a != b));
    }
}
