use std::collections::BTreeSet;

use hkl_core::git::{sigma_dimension, DEFAULT_SEED, LAMBDA};
use hkl_core::niemeier::{boundary_labels, builtin_catalog, match_git_bb, type2_descriptors};
use hkl_core::schedule::{self, StratumType, SIGMA_DIMENSIONS};
use hkl_core::verify::flip_table_rendered;

#[test]
fn type2_catalog_against_boundary_labels() {
    let cat = builtin_catalog();
    let strata = schedule::stratum_catalog(Some(StratumType::II)).unwrap();
    let labels = boundary_labels(&cat).unwrap();
    assert_eq!(strata.len(), 8);
    assert_eq!(labels.len(), 9);
    let ids: BTreeSet<&str> = strata.iter().map(|r| r.id).collect();
    let descriptor_ids: BTreeSet<String> = type2_descriptors().into_iter().map(|d| d.name).collect();
    assert_eq!(ids, descriptor_ids.iter().map(String::as_str).collect());
    let matched: BTreeSet<_> = match_git_bb(&cat).unwrap().rows.into_iter().map(|r| r.label).collect();
    let missing: Vec<String> = labels.difference(&matched).map(|l| l.to_string()).collect();
    assert_eq!(missing, ["D17"]);
}

#[test]
fn sigma_dimensions_agree_with_catalog() {
    for (i, l) in LAMBDA.iter().enumerate() {
        let d = sigma_dimension(l, DEFAULT_SEED).unwrap().dimension as u32;
        assert_eq!(d, SIGMA_DIMENSIONS[i]);
    }
}

#[test]
fn flip_table_verbatim() {
    let expected = "\
codim\tbeta\tZ\tW
1\t1\tH_h\tIV(0a): double quadric
1\t1\tH_u\tIV(0b): tangent developable
2\t1/2\tΔ^(2)\tIV(1): 2 quadrics tangent along a conic
3\t1/3\tΔ^(3)\tIV(2): double conic, cuspidal type
4\t1/4\tΔ^(4)\tIV(3): E_{4,∞}-locus
5\t1/5\tΔ^(5)\tIV(4): E_{3,0}
6\t1/5\tΔ^(6)\tIV(5): E_{3,∞} and E_{3,r}
7\t1/6\tunigonal in Δ^(6) (T_{3,3,4}-polarized K3)\tIV(6): E_14-locus
8\t1/7\tunigonal in Δ^(7) (T_{2,4,5}-polarized K3)\tIV(6): E_13-locus
9\t1/9\tunigonal in Δ^(8) (T_{2,3,7}-polarized K3)\tIV(8): E_12-locus
";
    let t = flip_table_rendered();
    let got: String = std::iter::once(&t.columns)
        .chain(&t.rows)
        .map(|r| r[..4].join("\t") + "\n")
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn flip_table_ids_exist() {
    let iv: BTreeSet<&str> = schedule::stratum_catalog(Some(StratumType::IV))
        .unwrap()
        .iter()
        .map(|r| r.id)
        .collect();
    let z: BTreeSet<u32> = schedule::z_tower().iter().map(|e| e.index).collect();
    for row in schedule::flip_table() {
        assert!(iv.contains(row.w_id), "{}", row.w_id);
        // codim 6 is the one row whose Z entry is outside the tower
        assert!(z.contains(&row.codim) || row.codim == 6);
    }
}
