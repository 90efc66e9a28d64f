//! SL2 weight bookkeeping for quartic surfaces.
//!
//! Two tori are used. For the twisted-cubic quartic the coordinates x0..x3
//! carry the weights of `Sym^3` of the standard representation. For the
//! quartics `f_ab = (q + a x3^2)(q + b x3^2)` the orthogonal group of
//! `q = x0^2 + x1^2 + x2^2` is diagonalized in the coordinates
//! `u = x0 + i x1`, `v = x0 - i x1`, `w = x2`, where `q` becomes `uv + w^2`
//! up to a constant. All computations happen in `(u, w, v, x3)` directly, so
//! everything stays over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{
    monomials_of_degree, rat, span_rank, Monomial, MultiPoly, PolyError, PolyRing, RationalMatrix,
};
use crate::git::{self, QuarticId};

/// Torus weights on x0..x3 for the twisted-cubic quartic.
pub const SYM3_WEIGHTS: [i64; 4] = [3, 1, -1, -3];
/// Torus weights on `ORTHO_COORDS`.
pub const ORTHO_WEIGHTS: [i64; 4] = [2, 0, -2, 0];
pub const ORTHO_COORDS: [&str; 4] = ["u", "w", "v", "x3"];

#[derive(Debug, Error)]
pub enum Sl2Error {
    #[error("weight {weight} occurs {count} times but {} occurs {mirror} times", -weight)]
    Asymmetric {
        weight: i64,
        count: usize,
        mirror: usize,
    },
    #[error("negative multiplicity {value} for V({d})")]
    Inconsistent { d: u32, value: i64 },
    #[error("(a, b) = (0, 0) is excluded")]
    ZeroParameters,
    #[error("span is not torus stable: weight pieces have total rank {pieces}, span rank {rank}")]
    NotTorusStable { pieces: usize, rank: usize },
    #[error("{what}: expected {expected}, got {got}")]
    Mismatch {
        what: String,
        expected: String,
        got: String,
    },
    #[error("{name}: basis of {len} elements has rank {rank}")]
    Dependent { name: String, len: usize, rank: usize },
    #[error("{what}: expected rank {expected}, got {got}")]
    Rank {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("identity check failed: {0}")]
    Identity(String),
    #[error("cannot parse decomposition `{0}`")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite multiset of torus weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeightMultiset(BTreeMap<i64, usize>);

impl WeightMultiset {
    pub fn from_weights<I: IntoIterator<Item = i64>>(weights: I) -> Self {
        let mut map = BTreeMap::new();
        for w in weights {
            *map.entry(w).or_insert(0) += 1;
        }
        WeightMultiset(map)
    }

    pub fn count(&self, weight: i64) -> usize {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(weight, count)` pairs in increasing weight order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&w, &c)| (w, c))
    }

    pub fn check_symmetric(&self) -> Result<(), Sl2Error> {
        for (&w, &c) in &self.0 {
            let mirror = self.count(-w);
            if c != mirror {
                return Err(Sl2Error::Asymmetric {
                    weight: w,
                    count: c,
                    mirror,
                });
            }
        }
        Ok(())
    }
}

/// Multiplicities of the irreducibles `V(d)` in a representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sl2Decomposition {
    multiplicities: BTreeMap<u32, u32>,
}

impl Sl2Decomposition {
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (d, m) in pairs {
            if m > 0 {
                *multiplicities.entry(d).or_insert(0) += m;
            }
        }
        Sl2Decomposition { multiplicities }
    }

    pub fn multiplicity(&self, d: u32) -> u32 {
        self.multiplicities.get(&d).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.multiplicities
    }

    pub fn dimension(&self) -> usize {
        self.multiplicities
            .iter()
            .map(|(&d, &m)| (d as usize + 1) * m as usize)
            .sum()
    }

    /// Weight multiset of the represented module.
    pub fn weights(&self) -> WeightMultiset {
        WeightMultiset::from_weights(self.multiplicities.iter().flat_map(|(&d, &m)| {
            let d = d as i64;
            (0..m).flat_map(move |_| (0..=d).map(move |k| d - 2 * k))
        }))
    }

    /// `self - other`, if `other` is a summand.
    pub fn checked_sub(&self, other: &Sl2Decomposition) -> Option<Sl2Decomposition> {
        let mut out = self.multiplicities.clone();
        for (&d, &m) in &other.multiplicities {
            let e = out.get_mut(&d)?;
            *e = e.checked_sub(m)?;
        }
        Some(Sl2Decomposition::new(out))
    }
}

/// Highest summand first, e.g. `V(4)+V(2)^2+V(0)^2`; the zero module is `0`.
impl fmt::Display for Sl2Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .rev()
            .map(|(d, m)| match m {
                1 => format!("V({d})"),
                m => format!("V({d})^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Sl2Decomposition {
    type Err = Sl2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Sl2Decomposition::default());
        }
        let bad = || Sl2Error::Parse(s.to_string());
        let mut pairs = Vec::new();
        for part in s.split(['+', '⊕']) {
            let part = part.trim();
            let rest = part.strip_prefix("V(").ok_or_else(bad)?;
            let (d, tail) = rest.split_once(')').ok_or_else(bad)?;
            let d: u32 = d.trim().parse().map_err(|_| bad())?;
            let m: u32 = match tail.trim() {
                "" => 1,
                t => t.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            pairs.push((d, m));
        }
        Ok(Sl2Decomposition::new(pairs))
    }
}

/// Peel irreducibles off a negation-symmetric multiset:
/// `mult V(d) = count(d) - count(d + 2)`.
pub fn decompose(w: &WeightMultiset) -> Result<Sl2Decomposition, Sl2Error> {
    w.check_symmetric()?;
    let mut pairs = Vec::new();
    let top = w.iter().map(|(weight, _)| weight).max().unwrap_or(0);
    for weight in 0..=top {
        let value = w.count(weight) as i64 - w.count(weight + 2) as i64;
        if value < 0 {
            return Err(Sl2Error::Inconsistent {
                d: weight as u32,
                value,
            });
        }
        pairs.push((weight as u32, value as u32));
    }
    Ok(Sl2Decomposition::new(pairs))
}

pub fn monomial_weight(m: &Monomial, weights: &[i64]) -> i64 {
    m.exponents()
        .iter()
        .zip(weights)
        .map(|(&e, &w)| e as i64 * w)
        .sum()
}

/// Weights of all monomials of `degree` in `weights.len()` variables.
pub fn monomial_weights(weights: &[i64], degree: u32) -> WeightMultiset {
    WeightMultiset::from_weights(
        monomials_of_degree(weights.len(), degree)
            .iter()
            .map(|m| monomial_weight(m, weights)),
    )
}

/// Weight multiset of the span of `polys`, which must be torus stable.
pub fn span_weights(polys: &[MultiPoly], weights: &[i64]) -> Result<WeightMultiset, Sl2Error> {
    let Some(first) = polys.first() else {
        return Ok(WeightMultiset::default());
    };
    let ring = first.ring();
    let mut levels: Vec<i64> = polys
        .iter()
        .flat_map(|p| p.support().map(|m| monomial_weight(m, weights)).collect::<Vec<_>>())
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let mut map = BTreeMap::new();
    for k in levels {
        let pieces: Vec<MultiPoly> = polys
            .iter()
            .map(|p| {
                p.map_terms(&ring, |m, c| {
                    (monomial_weight(m, weights) == k).then(|| (m.clone(), c.clone()))
                })
            })
            .collect();
        let r = span_rank(&pieces);
        if r > 0 {
            map.insert(k, r);
        }
    }
    let out = WeightMultiset(map);
    let rank = span_rank(polys);
    if out.len() != rank {
        return Err(Sl2Error::NotTorusStable {
            pieces: out.len(),
            rank,
        });
    }
    Ok(out)
}

fn expect_decomposition(
    what: &str,
    got: &Sl2Decomposition,
    expected: &str,
) -> Result<(), Sl2Error> {
    let want: Sl2Decomposition = expected.parse()?;
    if &want != got {
        return Err(Sl2Error::Mismatch {
            what: what.to_string(),
            expected: want.to_string(),
            got: got.to_string(),
        });
    }
    Ok(())
}

pub const QUARTIC_DECOMPOSITION: &str = "V(12)+V(8)+V(6)+V(4)+V(0)";

/// Quartics in x0..x3 under `SYM3_WEIGHTS`.
pub fn quartic_decomposition() -> Result<Sl2Decomposition, Sl2Error> {
    let d = decompose(&monomial_weights(&SYM3_WEIGHTS, 4))?;
    expect_decomposition("quartics under Sym^3 torus", &d, QUARTIC_DECOMPOSITION)?;
    Ok(d)
}

/// Orbit tangent space at the twisted-cubic quartic and its complement.
#[derive(Clone, Debug, Serialize)]
pub struct UpsilonSplitting {
    pub tangent_dimension: usize,
    pub tangent: Sl2Decomposition,
    pub slice: Sl2Decomposition,
}

pub fn upsilon_splitting() -> Result<UpsilonSplitting, Sl2Error> {
    let f = git::quartic(QuarticId::Upsilon).form;
    let images = tangent_images(&f, 4);
    let tangent = decompose(&span_weights(&images, &SYM3_WEIGHTS)?)?;
    expect_decomposition("upsilon orbit tangent space", &tangent, "V(6)+V(4)+V(0)")?;
    let slice = quartic_decomposition()?
        .checked_sub(&tangent)
        .ok_or_else(|| Sl2Error::Identity("tangent space is not a summand".into()))?;
    expect_decomposition("upsilon normal slice", &slice, "V(12)+V(8)")?;
    Ok(UpsilonSplitting {
        tangent_dimension: span_rank(&images),
        tangent,
        slice,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LongreprRow {
    pub piece: String,
    pub x3_power: u32,
    pub dimension: usize,
    pub decomposition: Sl2Decomposition,
}

const LONGREPR_EXPECTED: [&str; 5] = ["V(8)+V(4)+V(0)", "V(6)+V(2)", "V(4)+V(0)", "V(2)", "V(0)"];

/// The graded pieces `C[x0,x1,x2]_{4-k} * x3^k` of the quartics and their
/// decompositions under `ORTHO_WEIGHTS`.
pub fn rep_table_longrepr() -> Result<Vec<LongreprRow>, Sl2Error> {
    let mut rows = Vec::with_capacity(5);
    for (k, expected) in (0u32..=4).zip(LONGREPR_EXPECTED) {
        let ws = WeightMultiset::from_weights(
            monomials_of_degree(4, 4)
                .iter()
                .filter(|m| m.exponents()[3] == k)
                .map(|m| monomial_weight(m, &ORTHO_WEIGHTS)),
        );
        let decomposition = decompose(&ws)?;
        let piece = match k {
            0 => "C[x0,x1,x2]_4".to_string(),
            1 => "C[x0,x1,x2]_3*x3".to_string(),
            k => format!("C[x0,x1,x2]_{}*x3^{k}", 4 - k),
        };
        expect_decomposition(&piece, &decomposition, expected)?;
        rows.push(LongreprRow {
            piece,
            x3_power: k,
            dimension: ws.len(),
            decomposition,
        });
    }
    Ok(rows)
}

pub fn ortho_ring() -> PolyRing {
    PolyRing::new(&ORTHO_COORDS)
}

/// `q = uv + w^2`.
pub fn q_form(ring: &PolyRing) -> MultiPoly {
    &(&ring.gen(0) * &ring.gen(2)) + &ring.gen(1).pow(2)
}

fn x3_squared(ring: &PolyRing) -> MultiPoly {
    ring.gen(3).pow(2)
}

/// `f_ab = (q + a x3^2)(q + b x3^2)` in `ORTHO_COORDS`.
pub fn f_ab(a: &BigRational, b: &BigRational) -> MultiPoly {
    let ring = ortho_ring();
    let q = q_form(&ring);
    let t = x3_squared(&ring);
    (&q + &t.scale(a)) * (&q + &t.scale(b))
}

/// The lowering operator `-2w d/du + v d/dw`, which annihilates `q`.
pub fn lower(p: &MultiPoly) -> MultiPoly {
    let ring = p.ring();
    let w = ring.gen(1);
    let v = ring.gen(2);
    &(&w * &p.derivative(0)).scale_int(-2) + &(&v * &p.derivative(1))
}

/// `p, F p, F^2 p, ...` up to the last nonzero term.
pub fn lowering_string(p: &MultiPoly) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let next = lower(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// Harmonic quartics in `(u, w, v)`, the `V(8)` summand.
pub fn summand_v8() -> Vec<MultiPoly> {
    lowering_string(&ortho_ring().gen(0).pow(4))
}

/// The `V(6)` summand of `C[u,w,v]_3 * x3`.
pub fn summand_v6() -> Vec<MultiPoly> {
    let ring = ortho_ring();
    lowering_string(&(&ring.gen(0).pow(3) * &ring.gen(3)))
}

/// `R`, the `V(4)` summand of `C[u,w,v]_2`.
pub fn summand_r() -> Vec<MultiPoly> {
    lowering_string(&ortho_ring().gen(0).pow(2))
}

/// `x_j * d f / d x_i` for all `i, j < nvars`, followed by `f`.
pub fn tangent_images(f: &MultiPoly, nvars: usize) -> Vec<MultiPoly> {
    let ring = f.ring();
    let mut out = Vec::with_capacity(nvars * nvars + 1);
    for i in 0..nvars {
        let d = f.derivative(i);
        for j in 0..nvars {
            out.push(&ring.gen(j) * &d);
        }
    }
    out.push(f.clone());
    out
}

fn check_params(a: &BigRational, b: &BigRational) -> Result<(), Sl2Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Sl2Error::ZeroParameters);
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct TangentSpace {
    pub a: String,
    pub b: String,
    pub dimension: usize,
    pub decomposition: Sl2Decomposition,
}

/// `U_ab`: span of `f_ab` and its images under the 16 fields `x_j d/dx_i`.
pub fn orbit_tangent_space(a: &BigRational, b: &BigRational) -> Result<TangentSpace, Sl2Error> {
    check_params(a, b)?;
    let images = tangent_images(&f_ab(a, b), 4);
    let decomposition = decompose(&span_weights(&images, &ORTHO_WEIGHTS)?)?;
    Ok(TangentSpace {
        a: a.to_string(),
        b: b.to_string(),
        dimension: span_rank(&images),
        decomposition,
    })
}

/// Whether the highest weight vectors `x3 df/dv` and `u df/dx3` of the two
/// `V(2)` summands of `U_ab` span a line.
pub fn v2_summands_coincide(a: &BigRational, b: &BigRational) -> Result<bool, Sl2Error> {
    check_params(a, b)?;
    let f = f_ab(a, b);
    let ring = f.ring();
    let d1 = &ring.gen(3) * &f.derivative(2);
    let d2 = &ring.gen(0) * &f.derivative(3);
    Ok(span_rank(&[d1, d2]) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SliceName {
    #[serde(rename = "U_ab")]
    UAb,
    #[serde(rename = "N_ab")]
    NAb,
    S,
    #[serde(rename = "M_ab")]
    MAb,
}

impl fmt::Display for SliceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SliceName::UAb => "U_ab",
            SliceName::NAb => "N_ab",
            SliceName::S => "S",
            SliceName::MAb => "M_ab",
        })
    }
}

/// A linear subspace of quartics in `ORTHO_COORDS` with an independent basis.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub name: SliceName,
    pub basis: Vec<MultiPoly>,
    pub params: Option<(BigRational, BigRational)>,
}

impl SliceSpec {
    pub fn new(
        name: SliceName,
        basis: Vec<MultiPoly>,
        params: Option<(BigRational, BigRational)>,
    ) -> Result<Self, Sl2Error> {
        let rank = span_rank(&basis);
        if rank != basis.len() {
            return Err(Sl2Error::Dependent {
                name: name.to_string(),
                len: basis.len(),
                rank,
            });
        }
        Ok(SliceSpec {
            name,
            basis,
            params,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of `self ∩ other`.
    pub fn intersection_dimension(&self, other: &SliceSpec) -> usize {
        let union: Vec<MultiPoly> = self.basis.iter().chain(&other.basis).cloned().collect();
        self.dimension() + other.dimension() - span_rank(&union)
    }

    pub fn decomposition(&self) -> Result<Sl2Decomposition, Sl2Error> {
        decompose(&span_weights(&self.basis, &ORTHO_WEIGHTS)?)
    }
}

/// Reduced row echelon basis of the span of `polys`.
fn echelon_basis(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let ring = polys.first().map(MultiPoly::ring).unwrap_or_else(ortho_ring);
    let (mat, cols) = RationalMatrix::from_polys(polys);
    let (rref, pivots) = mat.rref();
    (0..pivots.len())
        .map(|r| {
            MultiPoly::from_terms(
                &ring,
                cols.iter()
                    .zip(rref.row(r))
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect()
}

fn core_slice() -> Vec<MultiPoly> {
    let t = x3_squared(&ortho_ring());
    let mut basis = summand_v8();
    basis.extend(summand_v6());
    basis.extend(summand_r().iter().map(|r| r * &t));
    basis
}

pub fn slice_u(a: &BigRational, b: &BigRational) -> Result<SliceSpec, Sl2Error> {
    check_params(a, b)?;
    let basis = echelon_basis(&tangent_images(&f_ab(a, b), 4));
    SliceSpec::new(SliceName::UAb, basis, Some((a.clone(), b.clone())))
}

/// `V(8) + V(6) + R x3^2 + <2 q x3^2 + (a + b) x3^4>`.
pub fn slice_n(a: &BigRational, b: &BigRational) -> Result<SliceSpec, Sl2Error> {
    check_params(a, b)?;
    let ring = ortho_ring();
    let t = x3_squared(&ring);
    let ray = &(&q_form(&ring) * &t).scale_int(2) + &t.pow(2).scale(&(a + b));
    let mut basis = core_slice();
    basis.push(ray);
    SliceSpec::new(SliceName::NAb, basis, Some((a.clone(), b.clone())))
}

/// `V(8) + V(6) + R x3^2 + <x3^4>`.
pub fn slice_s() -> Result<SliceSpec, Sl2Error> {
    let mut basis = core_slice();
    basis.push(x3_squared(&ortho_ring()).pow(2));
    SliceSpec::new(SliceName::S, basis, None)
}

/// `V(8) + V(6) + R x3^2`.
pub fn slice_m() -> Result<SliceSpec, Sl2Error> {
    SliceSpec::new(SliceName::MAb, core_slice(), None)
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalSliceSample {
    pub a: String,
    pub b: String,
    pub tangent_dimension: usize,
    pub slice_dimension: usize,
    pub sum_dimension: usize,
    pub intersection_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub normal: Vec<NormalSliceSample>,
    pub diagonal: Vec<NormalSliceSample>,
    pub m_dimension: usize,
}

/// Sample pairs with `a != b`.
pub fn off_diagonal_samples() -> Vec<(BigRational, BigRational)> {
    [(1, 1, 2, 1), (-3, 1, 1, 2), (2, 1, 0, 1), (5, 3, -7, 4)]
        .into_iter()
        .map(|(an, ad, bn, bd)| (crate::exactpoly::frac(an, ad), crate::exactpoly::frac(bn, bd)))
        .collect()
}

/// Sample values for `a = b`.
pub fn diagonal_samples() -> Vec<BigRational> {
    vec![rat(1), rat(-2), crate::exactpoly::frac(3, 5)]
}

fn expect_rank(what: String, expected: usize, got: usize) -> Result<(), Sl2Error> {
    if expected != got {
        return Err(Sl2Error::Rank {
            what,
            expected,
            got,
        });
    }
    Ok(())
}

fn sample(u: &SliceSpec, n: &SliceSpec, a: &BigRational, b: &BigRational) -> NormalSliceSample {
    let meet = u.intersection_dimension(n);
    NormalSliceSample {
        a: a.to_string(),
        b: b.to_string(),
        tangent_dimension: u.dimension(),
        slice_dimension: n.dimension(),
        sum_dimension: u.dimension() + n.dimension() - meet,
        intersection_dimension: meet,
    }
}

/// Exact rank checks: `N_ab` is complementary to `U_ab` for `a != b`, `S`
/// meets `U_aa` trivially, and `dim M_ab = 21`.
pub fn slice_transversality() -> Result<TransversalityReport, Sl2Error> {
    let mut normal = Vec::new();
    for (a, b) in off_diagonal_samples() {
        let u = slice_u(&a, &b)?;
        let n = slice_n(&a, &b)?;
        let s = sample(&u, &n, &a, &b);
        expect_rank(format!("dim U_ab at ({a}, {b})"), 13, s.tangent_dimension)?;
        expect_rank(format!("dim N_ab at ({a}, {b})"), 22, s.slice_dimension)?;
        expect_rank(format!("U_ab + N_ab at ({a}, {b})"), 35, s.sum_dimension)?;
        normal.push(s);
    }
    let s_slice = slice_s()?;
    expect_rank("dim S".into(), 22, s_slice.dimension())?;
    let mut diagonal = Vec::new();
    for a in diagonal_samples() {
        let u = slice_u(&a, &a)?;
        let s = sample(&u, &s_slice, &a, &a);
        expect_rank(format!("dim U_aa at a = {a}"), 10, s.tangent_dimension)?;
        expect_rank(format!("S ∩ U_aa at a = {a}"), 0, s.intersection_dimension)?;
        diagonal.push(s);
    }
    let m = slice_m()?;
    expect_rank("dim M_ab".into(), 21, m.dimension())?;
    Ok(TransversalityReport {
        normal,
        diagonal,
        m_dimension: m.dimension(),
    })
}

/// `(q + (a + s) x3^2)(q + (a - s) x3^2) = f_aa - s^2 x3^4` with `a`, `s`
/// symbolic.
pub fn check_diagonal_deformation() -> Result<(), Sl2Error> {
    let ring = PolyRing::new(&["u", "w", "v", "x3", "a", "s"]);
    let q = q_form(&ring);
    let t = ring.gen(3).pow(2);
    let (a, s) = (ring.gen(4), ring.gen(5));
    let lhs = (&q + &(&(&a + &s) * &t)) * (&q + &(&(&a - &s) * &t));
    let faa = (&q + &(&a * &t)).pow(2);
    let rhs = &faa - &(&s.pow(2) * &t.pow(2));
    if lhs != rhs {
        return Err(Sl2Error::Identity(format!("{lhs} != {rhs}")));
    }
    Ok(())
}

/// Whether the distinguished ray of `N_ab` is the derivative of
/// `f_{a+e, b+e}` at `e = 0`.
pub fn ray_is_pencil_direction(a: &BigRational, b: &BigRational) -> Result<bool, Sl2Error> {
    check_params(a, b)?;
    let ring = ortho_ring();
    let q = q_form(&ring);
    let t = x3_squared(&ring);
    let ray = &(&q * &t).scale_int(2) + &t.pow(2).scale(&(a + b));
    // d/de f_{a+e, b+e} at e = 0
    let along = &(&t * &(&q + &t.scale(b))) + &(&t * &(&q + &t.scale(a)));
    Ok(ray == along)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;
    use proptest::prelude::*;

    fn dec(s: &str) -> Sl2Decomposition {
        s.parse().unwrap()
    }

    #[test]
    fn quartic_decomposition_total_is_35() {
        let d = quartic_decomposition().unwrap();
        assert_eq!(d, dec("V(0)+V(4)+V(6)+V(8)+V(12)"));
        assert_eq!(d.dimension(), 35);
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(decompose(&WeightMultiset::from_weights([0])).unwrap(), dec("V(0)"));
        let quadrics = monomial_weights(&[2, 0, -2], 2);
        assert_eq!(decompose(&quadrics).unwrap(), dec("V(4)+V(0)"));
        assert!(matches!(
            decompose(&WeightMultiset::from_weights([2, 0])),
            Err(Sl2Error::Asymmetric { .. })
        ));
        assert!(matches!(
            decompose(&WeightMultiset::from_weights([2, -2])),
            Err(Sl2Error::Inconsistent { d: 0, value: -1 })
        ));
    }

    #[test]
    fn longrepr_rows() {
        let rows = rep_table_longrepr().unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.dimension).collect();
        assert_eq!(dims, vec![15, 10, 6, 3, 1]);
        assert_eq!(dims.iter().sum::<usize>(), 35);
        assert_eq!(rows[3].decomposition, dec("V(2)"));
        assert_eq!(rows[0].piece, "C[x0,x1,x2]_4");
    }

    #[test]
    fn display_and_parse() {
        let d = dec("V(2)^2 + V(4) + V(0)^2");
        assert_eq!(d.to_string(), "V(4)+V(2)^2+V(0)^2");
        assert_eq!(d.dimension(), 13);
        assert_eq!(Sl2Decomposition::default().to_string(), "0");
        assert!("W(2)".parse::<Sl2Decomposition>().is_err());
    }

    #[test]
    fn summands_have_expected_sizes() {
        assert_eq!(span_rank(&summand_v8()), 9);
        assert_eq!(span_rank(&summand_v6()), 7);
        assert_eq!(span_rank(&summand_r()), 5);
        let q = q_form(&ortho_ring());
        assert!(lower(&q).is_zero());
    }

    #[test]
    fn v8_is_harmonic() {
        // 4 d2/du dv + d2/dw2 is the Laplacian for q = uv + w^2
        for p in summand_v8() {
            let lap = &p.derivative(0).derivative(2).scale_int(4) + &p.derivative(1).derivative(1);
            assert!(lap.is_zero(), "{p}");
        }
    }

    #[test]
    fn tangent_space_off_and_on_diagonal() {
        let t = orbit_tangent_space(&rat(1), &rat(2)).unwrap();
        assert_eq!(t.dimension, 13);
        assert_eq!(t.decomposition, dec("V(4)+V(2)^2+V(0)^2"));
        let t = orbit_tangent_space(&rat(1), &rat(1)).unwrap();
        assert_eq!(t.dimension, 10);
        assert_eq!(t.decomposition, dec("V(4)+V(2)+V(0)^2"));
        assert!(matches!(
            orbit_tangent_space(&rat(0), &rat(0)),
            Err(Sl2Error::ZeroParameters)
        ));
    }

    #[test]
    fn tangent_dimension_over_ten_pairs() {
        let pairs = [
            (1, 2),
            (0, 1),
            (-1, 1),
            (3, -5),
            (2, 7),
            (-4, -1),
            (6, 1),
            (1, 9),
            (-2, 3),
            (5, 4),
        ];
        for (a, b) in pairs {
            let t = orbit_tangent_space(&rat(a), &rat(b)).unwrap();
            assert_eq!(t.dimension, 13, "({a}, {b})");
            let c = if a == 0 { b } else { a };
            let t = orbit_tangent_space(&rat(c), &rat(c)).unwrap();
            assert_eq!(t.dimension, 10, "({c}, {c})");
        }
        let t = orbit_tangent_space(&frac(1, 3), &frac(-2, 7)).unwrap();
        assert_eq!(t.dimension, 13);
    }

    #[test]
    fn v2_summands() {
        assert!(!v2_summands_coincide(&rat(1), &rat(2)).unwrap());
        assert!(!v2_summands_coincide(&rat(1), &rat(-1)).unwrap());
        assert!(v2_summands_coincide(&rat(3), &rat(3)).unwrap());
    }

    #[test]
    fn transversality() {
        let r = slice_transversality().unwrap();
        assert!(r.normal.iter().all(|s| s.intersection_dimension == 0));
        assert_eq!(r.normal[0].sum_dimension, 35);
        assert!(r.diagonal.iter().all(|s| s.intersection_dimension == 0));
        assert_eq!(r.diagonal[0].sum_dimension, 32);
        assert_eq!(r.m_dimension, 21);
    }

    #[test]
    fn slice_decompositions() {
        let n = slice_n(&rat(1), &rat(2)).unwrap();
        assert_eq!(n.decomposition().unwrap(), dec("V(8)+V(6)+V(4)+V(0)"));
        let u = slice_u(&rat(1), &rat(2)).unwrap();
        assert_eq!(u.decomposition().unwrap(), dec("V(4)+V(2)^2+V(0)^2"));
        assert_eq!(
            u.decomposition().unwrap().dimension() + n.decomposition().unwrap().dimension(),
            35
        );
    }

    #[test]
    fn deformation_identities() {
        check_diagonal_deformation().unwrap();
        assert!(ray_is_pencil_direction(&rat(1), &rat(2)).unwrap());
        assert!(ray_is_pencil_direction(&frac(-3, 2), &rat(5)).unwrap());
    }

    #[test]
    fn upsilon_tangent_and_slice() {
        let s = upsilon_splitting().unwrap();
        assert_eq!(s.tangent_dimension, 13);
        assert_eq!(s.tangent.dimension(), 13);
        assert_eq!(s.slice, dec("V(8)+V(12)"));
    }

    #[test]
    fn span_weights_rejects_unstable_span() {
        let ring = ortho_ring();
        let p = &ring.gen(0) + &ring.gen(1);
        assert!(matches!(
            span_weights(&[p], &ORTHO_WEIGHTS),
            Err(Sl2Error::NotTorusStable { .. })
        ));
    }

    proptest! {
        #[test]
        fn decompose_inverts_synthesis(mults in proptest::collection::vec(0u32..4, 0..10)) {
            let d = Sl2Decomposition::new(mults.iter().enumerate().map(|(i, &m)| (i as u32, m)));
            let w = d.weights();
            prop_assert_eq!(w.len(), d.dimension());
            prop_assert_eq!(decompose(&w).unwrap(), d);
        }
    }
}
