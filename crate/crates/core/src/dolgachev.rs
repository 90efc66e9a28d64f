//! Invariants of the triangle singularities E12, E13, E14: quasi-homogeneous
//! equations, base change orders, K3-tail weights, Milnor numbers, vanishing
//! lattices and the polarized K3 moduli attached to them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{Monomial, MultiPoly, PolyError, PolyRing};
use crate::lattice::{
    invariants_match, lattice, make_lattice, IntegralLattice, LatticeError, LatticeSpec, TpqrSpec,
};

pub const LOCAL_COORDS: [&str; 3] = ["x", "y", "z"];

/// Weights of the weighted projective space parametrizing negative-weight
/// smoothings of E12, as published. Not re-derived.
pub const E12_SMOOTHING_WP_WEIGHTS: [u32; 11] = [3, 4, 6, 8, 9, 11, 12, 14, 15, 18, 21];

/// The Jacobian ideal of E12 as printed, with `x^6` where the partials give `z^6`.
pub const E12_JACOBIAN_AS_PRINTED: &str = "(x, y^2, x^6)";

/// Dolgachev numbers of the 14 exceptional unimodal singularities, in the
/// order E12, E13, E14, Z11, Z12, Z13, Q10, Q11, Q12, W12, W13, S11, S12, U12.
pub const DOLGACHEV_TRIPLES: [(&str, [u32; 3]); 14] = [
    ("E12", [2, 3, 7]),
    ("E13", [2, 4, 5]),
    ("E14", [3, 3, 4]),
    ("Z11", [2, 3, 8]),
    ("Z12", [2, 4, 6]),
    ("Z13", [3, 3, 5]),
    ("Q10", [2, 3, 9]),
    ("Q11", [2, 4, 7]),
    ("Q12", [3, 3, 6]),
    ("W12", [2, 5, 5]),
    ("W13", [3, 4, 4]),
    ("S11", [2, 5, 6]),
    ("S12", [3, 4, 5]),
    ("U12", [4, 4, 4]),
];

#[derive(Debug, Error)]
pub enum DolgachevError {
    #[error("unknown singularity `{0}`")]
    UnknownName(String),
    #[error("{name}: {reason}")]
    Validation { name: String, reason: String },
    #[error("{name}: Milnor product {value} is not an integer")]
    NonIntegral { name: String, value: String },
    #[error("{what}: expected {expected}, got {got}")]
    Mismatch {
        what: String,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleName {
    E12,
    E13,
    E14,
}

impl TriangleName {
    pub const ALL: [TriangleName; 3] = [TriangleName::E12, TriangleName::E13, TriangleName::E14];
}

impl fmt::Display for TriangleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TriangleName {
    type Err = DolgachevError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TriangleName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| DolgachevError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct TriangleSingularity {
    pub name: TriangleName,
    pub equation: MultiPoly,
    pub dolgachev: TpqrSpec,
    pub gabrielov: TpqrSpec,
    pub base_change_order: u32,
    /// `(w_t, w_x, w_y, w_z)`.
    pub weights: [u32; 4],
}

impl TriangleSingularity {
    /// `(w_x, w_y, w_z)`.
    pub fn space_weights(&self) -> [u32; 3] {
        [self.weights[1], self.weights[2], self.weights[3]]
    }

    pub fn is_self_dual(&self) -> bool {
        self.dolgachev == self.gabrielov
    }
}

fn tpqr(p: u32, q: u32, r: u32) -> TpqrSpec {
    TpqrSpec::new(p, q, r).expect("positive triple")
}

/// Validated table entry.
pub fn table_data(name: TriangleName) -> Result<TriangleSingularity, DolgachevError> {
    let (eq, dolg, gab, n, weights) = match name {
        TriangleName::E12 => ("x^2 + y^3 + z^7", tpqr(2, 3, 7), tpqr(2, 3, 7), 42, [1, 21, 14, 6]),
        TriangleName::E13 => ("x^2 + y^3 + y*z^5", tpqr(2, 4, 5), tpqr(2, 3, 8), 30, [1, 15, 10, 4]),
        TriangleName::E14 => ("x^3 + y^2 + y*z^4", tpqr(3, 3, 4), tpqr(2, 3, 9), 24, [1, 8, 12, 3]),
    };
    let s = TriangleSingularity {
        name,
        equation: PolyRing::new(&LOCAL_COORDS).parse(eq)?,
        dolgachev: dolg,
        gabrielov: gab,
        base_change_order: n,
        weights,
    };
    validate(&s)?;
    Ok(s)
}

pub fn all_singularities() -> Result<Vec<TriangleSingularity>, DolgachevError> {
    TriangleName::ALL.into_iter().map(table_data).collect()
}

fn validate(s: &TriangleSingularity) -> Result<(), DolgachevError> {
    let fail = |reason: String| DolgachevError::Validation {
        name: s.name.to_string(),
        reason,
    };
    if !check_quasi_homogeneous(&s.equation, &s.space_weights(), s.base_change_order) {
        return Err(fail(format!(
            "equation is not weighted homogeneous of degree {}",
            s.base_change_order
        )));
    }
    if !k3_tail_condition(s) {
        return Err(fail(format!(
            "weights {:?} do not sum to {}",
            s.weights, s.base_change_order
        )));
    }
    Ok(())
}

/// Every monomial of `f` has weighted degree `n`. `weights` follows the ring's
/// variable order.
pub fn check_quasi_homogeneous(f: &MultiPoly, weights: &[u32], n: u32) -> bool {
    weights.len() == f.nvars()
        && !f.is_zero()
        && f.support().all(|m| weighted_degree(m, weights) == n as u64)
}

fn weighted_degree(m: &Monomial, weights: &[u32]) -> u64 {
    m.exponents()
        .iter()
        .zip(weights)
        .map(|(&e, &w)| e as u64 * w as u64)
        .sum()
}

/// `1 + w_x + w_y + w_z = N` with `w_t = 1`.
pub fn k3_tail_condition(s: &TriangleSingularity) -> bool {
    let [wt, wx, wy, wz] = s.weights;
    wt == 1 && wt + wx + wy + wz == s.base_change_order
}

/// `prod (N / w_v - 1)` over `v = x, y, z`, checked integral and equal to
/// `p' + q' + r'`.
pub fn milnor_number(s: &TriangleSingularity) -> Result<u32, DolgachevError> {
    let n = BigRational::from_integer(BigInt::from(s.base_change_order));
    let one = BigRational::from_integer(BigInt::from(1));
    let product = s
        .space_weights()
        .iter()
        .map(|&w| &n / BigRational::from_integer(BigInt::from(w)) - &one)
        .fold(one.clone(), |acc, x| acc * x);
    if !product.is_integer() || !product.is_positive() {
        return Err(DolgachevError::NonIntegral {
            name: s.name.to_string(),
            value: product.to_string(),
        });
    }
    let mu: u32 = product
        .to_integer()
        .try_into()
        .map_err(|_| DolgachevError::NonIntegral {
            name: s.name.to_string(),
            value: product.to_string(),
        })?;
    let g = s.gabrielov;
    let sum = g.p + g.q + g.r;
    if mu != sum {
        return Err(DolgachevError::Mismatch {
            what: format!("{} Milnor number vs Gabrielov sum", s.name),
            expected: sum.to_string(),
            got: mu.to_string(),
        });
    }
    Ok(mu)
}

/// Partial derivatives of `f`.
pub fn jacobian_ideal(f: &MultiPoly) -> Vec<MultiPoly> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

/// Standard monomials of the Jacobian ideal, when every partial derivative is
/// a single term and a pure power of each variable occurs. `None` otherwise.
pub fn jacobian_monomial_basis(f: &MultiPoly) -> Option<Vec<Monomial>> {
    let n = f.nvars();
    let mut gens = Vec::with_capacity(n);
    for p in jacobian_ideal(f) {
        let mut terms = p.terms();
        let (m, _) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        gens.push(m.clone());
    }
    let bounds: Vec<u32> = (0..n)
        .map(|i| {
            gens.iter()
                .filter(|g| g.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g.exponents()[i])
                .min()
        })
        .collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial(exps.clone());
        if !gens.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// `N - wt(m)` for each standard monomial `m`, the naive deformation weights.
pub fn naive_deformation_weights(s: &TriangleSingularity) -> Option<Vec<i64>> {
    let basis = jacobian_monomial_basis(&s.equation)?;
    let w = s.space_weights();
    let mut out: Vec<i64> = basis
        .iter()
        .map(|m| s.base_change_order as i64 - weighted_degree(m, &w) as i64)
        .collect();
    out.sort_unstable();
    Some(out)
}

/// `T(p', q', r') + U`, of rank equal to the Milnor number.
pub fn vanishing_lattice(s: &TriangleSingularity) -> Result<IntegralLattice, DolgachevError> {
    let l = make_lattice(&LatticeSpec::Sum(vec![
        LatticeSpec::Tpqr(s.gabrielov),
        LatticeSpec::U,
    ]))?;
    let mu = milnor_number(s)?;
    if l.rank() != mu as usize {
        return Err(DolgachevError::Mismatch {
            what: format!("{} vanishing lattice rank", s.name),
            expected: mu.to_string(),
            got: l.rank().to_string(),
        });
    }
    Ok(l)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZLocusEntry {
    pub k: u32,
    pub singularity: TriangleName,
    pub tpqr: TpqrSpec,
    pub ns_model: String,
    pub transcendental_model: String,
    pub discriminant: u64,
    pub ns_rank: usize,
    pub transcendental_rank: usize,
}

const Z_LOCI: [(u32, TriangleName, &str, &str); 3] = [
    (9, TriangleName::E12, "E8+U", "E8+U^2"),
    (8, TriangleName::E13, "E7+U", "E8+U^2+A1"),
    (7, TriangleName::E14, "E6+U", "E8+U^2+A2"),
];

/// The loci `Z^9, Z^8, Z^7` as moduli of `T(p,q,r)`-polarized K3 surfaces,
/// with `T(p,q,r)` checked against its model and the complement ranks summing
/// to 22.
pub fn z_locus_identifications() -> Result<Vec<ZLocusEntry>, DolgachevError> {
    let mut out = Vec::with_capacity(3);
    for (k, name, ns, trans) in Z_LOCI {
        let s = table_data(name)?;
        let t = make_lattice(&LatticeSpec::Tpqr(s.dolgachev))?;
        let model = lattice(ns)?;
        if !invariants_match(&t, &model) {
            return Err(DolgachevError::Mismatch {
                what: format!("invariants of {}", s.dolgachev),
                expected: ns.to_string(),
                got: format!("{:?}", t.invariants()),
            });
        }
        let tl = lattice(trans)?;
        let disc = t.invariants().determinant.abs();
        let formula = BigInt::from(s.dolgachev.discriminant_formula());
        if disc != formula || tl.invariants().determinant.abs() != disc {
            return Err(DolgachevError::Mismatch {
                what: format!("|disc| of {} and {trans}", s.dolgachev),
                expected: formula.to_string(),
                got: format!("{disc}, {}", tl.invariants().determinant.abs()),
            });
        }
        let (tp, tn) = t.invariants().signature;
        let (sp, sn) = tl.invariants().signature;
        if (tp + sp, tn + sn) != (3, 19) {
            return Err(DolgachevError::Mismatch {
                what: format!("signature of {} plus {trans}", s.dolgachev),
                expected: "(3, 19)".into(),
                got: format!("({}, {})", tp + sp, tn + sn),
            });
        }
        out.push(ZLocusEntry {
            k,
            singularity: name,
            tpqr: s.dolgachev,
            ns_model: ns.to_string(),
            transcendental_model: trans.to_string(),
            discriminant: disc.try_into().unwrap_or(u64::MAX),
            ns_rank: t.rank(),
            transcendental_rank: tl.rank(),
        });
    }
    Ok(out)
}

/// One row of the combined singularity table.
#[derive(Clone, Debug, Serialize)]
pub struct DolgachevRow {
    pub name: TriangleName,
    pub equation: String,
    pub dolgachev: TpqrSpec,
    pub gabrielov: TpqrSpec,
    pub base_change_order: u32,
    pub weights: [u32; 4],
    pub milnor_number: u32,
    pub vanishing_lattice: String,
    pub vanishing_rank: usize,
    pub self_dual: bool,
}

pub fn dolgachev_table() -> Result<Vec<DolgachevRow>, DolgachevError> {
    all_singularities()?
        .into_iter()
        .map(|s| {
            let l = vanishing_lattice(&s)?;
            Ok(DolgachevRow {
                name: s.name,
                equation: s.equation.to_string(),
                dolgachev: s.dolgachev,
                gabrielov: s.gabrielov,
                base_change_order: s.base_change_order,
                weights: s.weights,
                milnor_number: milnor_number(&s)?,
                vanishing_lattice: format!("{}+U", s.gabrielov),
                vanishing_rank: l.rank(),
                self_dual: s.is_self_dual(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let e12 = table_data(TriangleName::E12).unwrap();
        assert_eq!(e12.base_change_order, 42);
        assert_eq!(e12.weights, [1, 21, 14, 6]);
        assert_eq!(e12.dolgachev, tpqr(2, 3, 7));
        assert!(e12.is_self_dual());
        let e13 = table_data(TriangleName::E13).unwrap();
        assert_eq!(e13.gabrielov, tpqr(2, 3, 8));
        assert!(!e13.is_self_dual());
        let e14 = table_data(TriangleName::E14).unwrap();
        assert_eq!((e14.weights, e14.base_change_order), ([1, 8, 12, 3], 24));
        assert_eq!("e13".parse::<TriangleName>().unwrap(), TriangleName::E13);
        assert!("E15".parse::<TriangleName>().is_err());
    }

    #[test]
    fn quasi_homogeneity() {
        let ring = PolyRing::new(&LOCAL_COORDS);
        let f = ring.parse("x^2 + y^3 + z^7").unwrap();
        assert!(check_quasi_homogeneous(&f, &[21, 14, 6], 42));
        assert!(!check_quasi_homogeneous(&f, &[21, 14, 5], 42));
        let g = ring.parse("x^3 + y^2 + y*z^4").unwrap();
        assert!(check_quasi_homogeneous(&g, &[8, 12, 3], 24));
    }

    #[test]
    fn k3_condition() {
        for s in all_singularities().unwrap() {
            assert!(k3_tail_condition(&s));
        }
        let mut s = table_data(TriangleName::E13).unwrap();
        s.weights = [1, 15, 10, 5];
        assert!(!k3_tail_condition(&s));
        assert!(matches!(validate(&s), Err(DolgachevError::Validation { .. })));
    }

    #[test]
    fn milnor_numbers() {
        let mus: Vec<u32> = all_singularities()
            .unwrap()
            .iter()
            .map(|s| milnor_number(s).unwrap())
            .collect();
        assert_eq!(mus, vec![12, 13, 14]);
    }

    #[test]
    fn jacobian_oracle_for_e12() {
        let e12 = table_data(TriangleName::E12).unwrap();
        let basis = jacobian_monomial_basis(&e12.equation).unwrap();
        // y^b z^c with b < 2, c < 6
        let mut expected = Vec::new();
        for c in 0..6 {
            for b in 0..2 {
                expected.push(Monomial(vec![0, b, c]));
            }
        }
        let mut got = basis.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(basis.len() as u32, milnor_number(&e12).unwrap());
        let gens: Vec<String> = jacobian_ideal(&e12.equation).iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, vec!["2*x", "3*y^2", "7*z^6"]);
        let e13 = table_data(TriangleName::E13).unwrap();
        assert!(jacobian_monomial_basis(&e13.equation).is_none());
    }

    #[test]
    fn naive_weights_do_not_reproduce_published_list() {
        let e12 = table_data(TriangleName::E12).unwrap();
        let naive = naive_deformation_weights(&e12).unwrap();
        assert_eq!(naive.len(), 12);
        assert_eq!(naive.iter().filter(|&&w| w < 0).count(), 1);
        let halved: Vec<u32> = naive.iter().filter(|&&w| w > 0).map(|&w| (w / 2) as u32).collect();
        let mut published = E12_SMOOTHING_WP_WEIGHTS.to_vec();
        published.sort_unstable();
        assert_ne!(halved, published);
    }

    #[test]
    fn vanishing_lattices() {
        let ranks: Vec<usize> = all_singularities()
            .unwrap()
            .iter()
            .map(|s| vanishing_lattice(s).unwrap().rank())
            .collect();
        assert_eq!(ranks, vec![12, 13, 14]);
        let e12 = table_data(TriangleName::E12).unwrap();
        let l = vanishing_lattice(&e12).unwrap();
        assert!(invariants_match(&l, &lattice("E8+U^2").unwrap()));
    }

    #[test]
    fn z_loci() {
        let z = z_locus_identifications().unwrap();
        let discs: Vec<u64> = z.iter().map(|e| e.discriminant).collect();
        assert_eq!(discs, vec![1, 2, 3]);
        assert!(z.iter().all(|e| e.ns_rank + e.transcendental_rank == 22));
        assert_eq!(z[2].transcendental_model, "E8+U^2+A2");
        assert_eq!(z[0].tpqr, tpqr(2, 3, 7));
    }

    #[test]
    fn combined_table() {
        let rows = dolgachev_table().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].vanishing_lattice, "T(2,3,8)+U");
        assert!(rows.iter().all(|r| r.milnor_number as usize == r.vanishing_rank));
    }

    #[test]
    fn dolgachev_triples_are_hyperbolic() {
        for (name, [p, q, r]) in DOLGACHEV_TRIPLES {
            let t = tpqr(p, q, r);
            assert!(t.is_hyperbolic(), "{name}");
            let det = make_lattice(&LatticeSpec::Tpqr(t)).unwrap().invariants().determinant.abs();
            assert_eq!(det, BigInt::from(t.discriminant_formula()), "{name}");
        }
    }
}
