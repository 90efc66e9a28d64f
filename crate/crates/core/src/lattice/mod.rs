//! Integral lattices with the negative definite root convention: roots have
//! norm -2 and adjacent Dynkin nodes pair to +1.

mod classify;
mod enumerate;
pub mod intmat;
mod label;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{classify_root_sublattice, dynkin_type, simple_roots};
pub use enumerate::vectors_of_norm;
pub use label::{Component, Family, LabelStyle, RootLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid family index {0}")]
    InvalidIndex(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("lattice is not negative definite")]
    NotDefinite,
    #[error("norm {0} is not negative")]
    InvalidNorm(i64),
    #[error("root system is not of ADE type: {0}")]
    NotAde(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    /// (positive, negative) inertia indices.
    pub signature: (usize, usize),
    #[serde(serialize_with = "display_big")]
    pub determinant: BigInt,
    pub even: bool,
    /// Nontrivial elementary divisors of the discriminant group; `None` when
    /// the form is degenerate.
    #[serde(serialize_with = "display_big_opt")]
    pub discriminant_group: Option<Vec<BigInt>>,
}

fn display_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn display_big_opt<S: serde::Serializer>(
    v: &Option<Vec<BigInt>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(list) => s.collect_seq(list.iter().map(|x| x.to_string())),
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawLattice")]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    cache: OnceLock<Invariants>,
}

#[derive(Deserialize)]
struct RawLattice {
    gram: Vec<Vec<i64>>,
}

impl TryFrom<RawLattice> for IntegralLattice {
    type Error = LatticeError;
    fn try_from(raw: RawLattice) -> Result<Self, Self::Error> {
        IntegralLattice::new(raw.gram)
    }
}

impl PartialEq for IntegralLattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for IntegralLattice {}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralLattice").field("gram", &self.gram).finish()
    }
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(IntegralLattice {
            gram,
            cache: OnceLock::new(),
        })
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn invariants(&self) -> &Invariants {
        self.cache.get_or_init(|| {
            let determinant = intmat::determinant(&self.gram);
            let discriminant_group = (!determinant.is_zero()).then(|| {
                intmat::smith_diagonal(&self.gram)
                    .into_iter()
                    .filter(|d| *d > BigInt::from(1))
                    .collect()
            });
            Invariants {
                rank: self.rank(),
                signature: signature(&self.gram),
                determinant,
                even: self.is_even(),
                discriminant_group,
            }
        })
    }

    pub fn is_negative_definite(&self) -> bool {
        self.invariants().signature == (0, self.rank())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            g[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            g[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        IntegralLattice::new(g).expect("block sum of symmetric matrices")
    }

    pub fn roots(&self, norm: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
        vectors_of_norm(&self.gram, norm)
    }
}

/// Inertia indices by congruence diagonalization over the rationals.
fn signature(gram: &[Vec<i64>]) -> (usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j gives a_kk = 2 a_kj
                for i in 0..n {
                    let v = &a[k][i] + &a[j][i];
                    a[k][i] = v;
                }
                for i in 0..n {
                    let v = &a[i][k] + &a[i][j];
                    a[i][k] = v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
            for j in k..n {
                let v = &a[j][i] - &f * &a[j][k];
                a[j][i] = v;
            }
        }
        k += 1;
    }
    (pos, neg)
}

/// Necessary condition for isometry: rank, signature, determinant, parity
/// and discriminant-group elementary divisors agree. An invariant-level
/// match, not an isometry proof.
pub fn invariants_match(l1: &IntegralLattice, l2: &IntegralLattice) -> bool {
    l1.invariants() == l2.invariants()
}

/// Star-shaped graph with legs of p-1, q-1, r-1 nodes around a centre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TpqrSpec {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl TpqrSpec {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self, LatticeError> {
        let mut v = [p, q, r];
        v.sort_unstable();
        if v[0] == 0 {
            return Err(LatticeError::InvalidIndex(format!("T({p},{q},{r})")));
        }
        Ok(TpqrSpec {
            p: v[0],
            q: v[1],
            r: v[2],
        })
    }

    pub fn rank(&self) -> u32 {
        self.p + self.q + self.r - 2
    }

    /// pqr - pq - pr - qr, the absolute discriminant in the hyperbolic case.
    pub fn discriminant_formula(&self) -> i64 {
        let (p, q, r) = (self.p as i64, self.q as i64, self.r as i64);
        p * q * r - p * q - p * r - q * r
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.discriminant_formula() > 0
    }
}

impl fmt::Display for TpqrSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.p, self.q, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    A(u32),
    D(u32),
    E(u32),
    U,
    /// Rank one lattice <k>.
    Scaled(i64),
    Tpqr(TpqrSpec),
    Sum(Vec<LatticeSpec>),
}

impl LatticeSpec {
    pub fn from_label(label: &RootLabel) -> LatticeSpec {
        LatticeSpec::Sum(
            label
                .components()
                .iter()
                .map(|c| match c.family {
                    Family::A => LatticeSpec::A(c.index),
                    Family::D => LatticeSpec::D(c.index),
                    Family::E => LatticeSpec::E(c.index),
                })
                .collect(),
        )
    }
}

/// Parses sums such as `U^2+E8^2+D1`, `T(2,3,7)+U`, `<-4>+A2`.
impl FromStr for LatticeSpec {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |t: &str| LatticeError::Parse(format!("lattice term {t:?}"));
        let mut terms = Vec::new();
        // split on '+' outside brackets
        let mut depth = 0;
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                b'(' | b'<' => depth += 1,
                b')' | b'>' => depth -= 1,
                b'+' if depth == 0 => {
                    pieces.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let (body, mult) = match piece.rfind('^') {
                Some(i) if !piece[i + 1..].contains(')') => (
                    &piece[..i],
                    piece[i + 1..].parse::<usize>().map_err(|_| bad(piece))?,
                ),
                _ => (piece, 1),
            };
            let body = if body.starts_with('(') && body.ends_with(')') {
                &body[1..body.len() - 1]
            } else {
                body
            };
            let term = if body == "U" {
                LatticeSpec::U
            } else if let Some(inner) = body.strip_prefix('<').and_then(|b| b.strip_suffix('>')) {
                LatticeSpec::Scaled(inner.parse().map_err(|_| bad(piece))?)
            } else if let Some(inner) = body.strip_prefix("T(").and_then(|b| b.strip_suffix(')')) {
                let v: Vec<u32> = inner
                    .split(',')
                    .map(|x| x.parse().map_err(|_| bad(piece)))
                    .collect::<Result<_, _>>()?;
                let [p, q, r] = v[..] else { return Err(bad(piece)) };
                LatticeSpec::Tpqr(TpqrSpec::new(p, q, r)?)
            } else {
                let idx = |rest: &str| rest.parse::<u32>().map_err(|_| bad(piece));
                match body.split_at_checked(1) {
                    Some(("A", rest)) => LatticeSpec::A(idx(rest)?),
                    Some(("D", rest)) => LatticeSpec::D(idx(rest)?),
                    Some(("E", rest)) => LatticeSpec::E(idx(rest)?),
                    _ => return Err(bad(piece)),
                }
            };
            terms.extend(std::iter::repeat_n(term, mult));
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LatticeSpec::Sum(terms)
        })
    }
}

fn dynkin_gram(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

fn tpqr_gram(t: TpqrSpec) -> Vec<Vec<i64>> {
    let n = t.rank() as usize;
    let mut edges = Vec::new();
    let mut next = 1;
    for leg in [t.p, t.q, t.r] {
        let mut prev = 0;
        for _ in 1..leg {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    dynkin_gram(n, &edges)
}

pub fn make_lattice(spec: &LatticeSpec) -> Result<IntegralLattice, LatticeError> {
    let gram = match spec {
        LatticeSpec::A(n) => {
            Component::new(Family::A, *n)?;
            let n = *n as usize;
            dynkin_gram(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
        }
        LatticeSpec::D(n) => {
            Component::new(Family::D, *n)?;
            match *n as usize {
                1 => vec![vec![-4]],
                2 => dynkin_gram(2, &[]),
                n => {
                    let mut edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                    edges.push((n - 3, n - 1));
                    dynkin_gram(n, &edges)
                }
            }
        }
        LatticeSpec::E(n) => {
            Component::new(Family::E, *n)?;
            tpqr_gram(TpqrSpec::new(2, 3, n - 3)?)
        }
        LatticeSpec::U => vec![vec![0, 1], vec![1, 0]],
        LatticeSpec::Scaled(k) => vec![vec![*k]],
        LatticeSpec::Tpqr(t) => tpqr_gram(*t),
        LatticeSpec::Sum(parts) => {
            let mut acc = IntegralLattice::new(Vec::new())?;
            for p in parts {
                acc = acc.direct_sum(&make_lattice(p)?);
            }
            return Ok(acc);
        }
    };
    IntegralLattice::new(gram)
}

/// Convenience: parse and build.
pub fn lattice(spec: &str) -> Result<IntegralLattice, LatticeError> {
    make_lattice(&spec.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(l: &IntegralLattice) -> i64 {
        l.invariants().determinant.to_string().parse().unwrap()
    }

    #[test]
    fn small_constructors() {
        assert_eq!(lattice("A1").unwrap().gram(), &[vec![-2]]);
        assert_eq!(lattice("D1").unwrap(), lattice("<-4>").unwrap());
        assert!(lattice("E9").is_err());
        assert!(lattice("A0").is_err());
        let u = lattice("U").unwrap();
        let inv = u.invariants();
        assert_eq!(inv.signature, (1, 1));
        assert_eq!(det(&u), -1);
        assert_eq!(inv.discriminant_group, Some(vec![]));
    }

    #[test]
    fn t237_is_unimodular_hyperbolic() {
        let t = lattice("T(2,3,7)").unwrap();
        assert_eq!(t.rank(), 10);
        assert_eq!(t.invariants().signature, (1, 9));
        assert_eq!(det(&t).abs(), 1);
        assert!(invariants_match(&t, &lattice("E8+U").unwrap()));
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A5", 30),
            ("D3", 12),
            ("D4", 24),
            ("D5", 40),
            ("D8", 112),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ];
        for (name, count) in cases {
            let l = lattice(name).unwrap();
            assert_eq!(l.roots(-2).unwrap().len(), count, "{name}");
        }
    }

    #[test]
    fn recognizes_ade_labels() {
        for name in ["A1", "A7", "D4", "D5", "D9", "E6", "E7", "E8", "A2+E6", "D4^2+A1"] {
            let l = lattice(name).unwrap();
            let label = classify_root_sublattice(&l, false).unwrap();
            assert_eq!(label, name.parse::<RootLabel>().unwrap(), "{name}");
        }
        let d3 = classify_root_sublattice(&lattice("D3").unwrap(), false).unwrap();
        assert_eq!(d3.to_string(), "A3");
        let t233 = lattice("T(2,3,3)").unwrap();
        assert!(invariants_match(&t233, &lattice("E6").unwrap()));
        assert_eq!(classify_root_sublattice(&t233, false).unwrap().to_string(), "E6");
        let t145 = lattice("T(1,4,5)").unwrap();
        assert_eq!(classify_root_sublattice(&t145, false).unwrap().to_string(), "A8");
    }

    #[test]
    fn extended_convention_counts_d1() {
        let l = lattice("D8+D1").unwrap();
        assert_eq!(classify_root_sublattice(&l, true).unwrap().to_string(), "D8+D1");
        assert_eq!(classify_root_sublattice(&l, false).unwrap().to_string(), "D8");
    }

    #[test]
    fn rank_21_cross_identity() {
        let a = lattice("U^2+D17").unwrap();
        let b = lattice("U^2+E8^2+D1").unwrap();
        assert!(invariants_match(&a, &b));
        assert_eq!(a.rank(), 21);
        assert_eq!(det(&a).abs(), 4);
        assert_eq!(
            a.invariants().discriminant_group,
            Some(vec![BigInt::from(4)])
        );
        assert!(!invariants_match(&lattice("A1").unwrap(), &lattice("D1").unwrap()));
    }

    #[test]
    fn serde_round_trip() {
        let l = lattice("A2").unwrap();
        let js = serde_json::to_string(&l).unwrap();
        assert_eq!(js, r#"{"gram":[[-2,1],[1,-2]]}"#);
        let back: IntegralLattice = serde_json::from_str(&js).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<IntegralLattice>(r#"{"gram":[[1,2],[3,4]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn tpqr_determinant_formula(p in 1u32..6, q in 1u32..7, r in 1u32..9) {
            let t = TpqrSpec::new(p, q, r).unwrap();
            let l = make_lattice(&LatticeSpec::Tpqr(t)).unwrap();
            prop_assert_eq!(det(&l).abs(), t.discriminant_formula().abs());
            if t.is_hyperbolic() {
                prop_assert_eq!(l.invariants().signature, (1, t.rank() as usize - 1));
            }
        }

        #[test]
        fn invariants_match_is_reflexive_and_symmetric(
            a in prop::sample::select(vec!["A2", "E6", "T(2,3,3)", "A1+A1", "D2", "U+E8", "T(2,3,7)"]),
            b in prop::sample::select(vec!["A2", "E6", "T(2,3,3)", "A1+A1", "D2", "U+E8", "T(2,3,7)"]),
        ) {
            let (la, lb) = (lattice(a).unwrap(), lattice(b).unwrap());
            prop_assert!(invariants_match(&la, &la));
            prop_assert_eq!(invariants_match(&la, &lb), invariants_match(&lb, &la));
        }
    }
}
