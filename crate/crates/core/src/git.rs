//! Hilbert–Mumford bookkeeping for quartic surfaces in x0..x3: weights of
//! diagonal one-parameter subgroups, zero-weight families and the dimensions
//! of the GIT boundary components, symbolic limits of families, and the
//! distinguished quartics.
//!
//! Stability convention: `lambda` destabilizes `f` iff `mu(f, lambda) > 0`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{
    frac, monomials_of_degree, span_rank, Monomial, MultiPoly, PolyError, PolyRing,
    RationalMatrix,
};

pub const COORDS: [&str; 4] = ["x0", "x1", "x2", "x3"];
pub const DEFAULT_SEED: u64 = 0x5eed_2016;

#[derive(Debug, Error)]
pub enum GitError {
    #[error("weights {0:?} do not sum to zero")]
    NotTraceless(Vec<i64>),
    #[error("expected a degree {expected} monomial, got degree {got}")]
    Degree { expected: u32, got: u32 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial lacks coordinate {0}")]
    MissingCoordinate(String),
    #[error("tangent rank differs across sample points: {0:?}")]
    RankUnstable(Vec<usize>),
    #[error("identity check failed: {0}")]
    Identity(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Diagonal one-parameter subgroup of SL4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OnePS(pub [i64; 4]);

impl OnePS {
    pub fn new(weights: [i64; 4]) -> Result<Self, GitError> {
        if weights.iter().sum::<i64>() != 0 {
            return Err(GitError::NotTraceless(weights.to_vec()));
        }
        Ok(OnePS(weights))
    }

    pub fn weights(&self) -> &[i64; 4] {
        &self.0
    }
}

impl fmt::Display for OnePS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

pub const LAMBDA: [OnePS; 4] = [
    OnePS([3, 1, -1, -3]),
    OnePS([1, 0, 0, -1]),
    OnePS([1, 1, -1, -1]),
    OnePS([3, -1, -1, -1]),
];

pub fn ps_weight(m: &Monomial, lambda: &OnePS) -> Result<i64, GitError> {
    if m.degree() != 4 || m.exponents().len() != 4 {
        return Err(GitError::Degree {
            expected: 4,
            got: m.degree(),
        });
    }
    Ok(weight_of(m.exponents(), &lambda.0))
}

fn weight_of(exps: &[u32], w: &[i64]) -> i64 {
    exps.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
}

fn coordinate_indices(f: &MultiPoly) -> Result<[usize; 4], GitError> {
    let ring = f.ring();
    let mut out = [0; 4];
    for (k, name) in COORDS.iter().enumerate() {
        out[k] = ring
            .index_of(name)
            .ok_or_else(|| GitError::MissingCoordinate(name.to_string()))?;
    }
    Ok(out)
}

/// Distinct coordinate exponent vectors of the support; other variables are
/// treated as parameters.
fn coordinate_support(f: &MultiPoly) -> Result<Vec<Vec<u32>>, GitError> {
    let idx = coordinate_indices(f)?;
    let mut out: Vec<Vec<u32>> = f
        .support()
        .map(|m| idx.iter().map(|&i| m.exponents()[i]).collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimum weight over the support of `f`.
pub fn mu(f: &MultiPoly, lambda: &OnePS) -> Result<i64, GitError> {
    if f.is_zero() {
        return Err(GitError::ZeroPolynomial);
    }
    let supp = coordinate_support(f)?;
    for e in &supp {
        let d: u32 = e.iter().sum();
        if d != 4 {
            return Err(GitError::Degree { expected: 4, got: d });
        }
    }
    Ok(supp.iter().map(|e| weight_of(e, &lambda.0)).min().unwrap())
}

/// Degree-4 monomials in x0..x3 of weight 0, in descending graded-lex order.
pub fn zero_weight_monomials(lambda: &OnePS) -> Vec<Monomial> {
    monomials_of_degree(4, 4)
        .into_iter()
        .filter(|m| weight_of(m.exponents(), &lambda.0) == 0)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaComponent {
    pub ps: OnePS,
    pub zero_monomials: Vec<Vec<u32>>,
    pub centralizer_dim: usize,
    pub tangent_rank: usize,
    pub dimension: usize,
}

/// Dimension of the locus of quartics fixed by `lambda`, modulo its
/// centralizer: (#zero-weight monomials - 1) - rank of the centralizer's
/// tangent map at a generic point, projectively. The rank is computed at three
/// seeded random integral points and must agree across them.
pub fn sigma_dimension(lambda: &OnePS, seed: u64) -> Result<SigmaComponent, GitError> {
    let zero = zero_weight_monomials(lambda);
    let ring = PolyRing::new(&COORDS);
    let w = lambda.0;
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] == w[j])
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::new();
    for _ in 0..3 {
        let f = MultiPoly::from_terms(
            &ring,
            zero.iter()
                .map(|m| (m.clone(), BigRational::from_integer(rng.gen_range(1..=997).into()))),
        );
        // x_i d/dx_j for each centralizer element E_ij; the identity yields f itself
        let mut images: Vec<MultiPoly> = pairs
            .iter()
            .map(|&(i, j)| &ring.gen(i) * &f.derivative(j))
            .collect();
        images.push(f.clone());
        ranks.push(span_rank(&images));
    }
    if ranks.iter().any(|&r| r != ranks[0]) {
        return Err(GitError::RankUnstable(ranks));
    }
    // span includes f, so projective tangent rank = rank - 1
    let tangent_rank = ranks[0] - 1;
    Ok(SigmaComponent {
        ps: *lambda,
        zero_monomials: zero.iter().map(|m| m.exponents().to_vec()).collect(),
        centralizer_dim: pairs.len(),
        tangent_rank,
        dimension: zero.len() - 1 - tangent_rank,
    })
}

/// Transform of a family under x_i -> t^{w_i} x_i, normalized by the largest
/// power of `t` dividing it. `weights` need not sum to zero (e.g. diag(1,1,1,t)).
pub fn one_ps_limit(family: &MultiPoly, weights: &[i64; 4]) -> Result<MultiPoly, GitError> {
    if family.is_zero() {
        return Err(GitError::ZeroPolynomial);
    }
    let idx = coordinate_indices(family)?;
    let ring = family.ring();
    let t = ring
        .index_of("t")
        .ok_or_else(|| GitError::MissingCoordinate("t".into()))?;
    let shifted: Vec<(Monomial, i64, BigRational)> = family
        .terms()
        .map(|(m, c)| {
            let e = m.exponents();
            let shift: i64 = idx.iter().zip(weights).map(|(&i, &w)| e[i] as i64 * w).sum();
            (m.clone(), e[t] as i64 + shift, c.clone())
        })
        .collect();
    let min = shifted.iter().map(|(_, s, _)| *s).min().unwrap();
    Ok(MultiPoly::from_terms(
        &ring,
        shifted.into_iter().map(|(mut m, s, c)| {
            m.0[t] = (s - min) as u32;
            (m, c)
        }),
    ))
}

/// The t = 0 fiber of a normalized family.
pub fn limit_fiber(family: &MultiPoly) -> Result<MultiPoly, GitError> {
    Ok(family.specialize("t", &BigRational::zero())?)
}

/// B^2 - 4C.
pub fn quadratic_branch_discriminant(b: &MultiPoly, c: &MultiPoly) -> MultiPoly {
    &(b * b) - &c.scale_int(4)
}

/// Basis of harmonic forms of degree `d` in x0, x1, x2 (kernel of the
/// Laplacian d0^2 + d1^2 + d2^2), embedded in `ring`.
pub fn harmonic_forms(ring: &PolyRing, d: u32) -> Result<Vec<MultiPoly>, GitError> {
    let small = PolyRing::new(&["x0", "x1", "x2"]);
    let mons = monomials_of_degree(3, d);
    let polys: Vec<MultiPoly> = mons.iter().map(|m| small.monomial(BigRational::one(), m.clone())).collect();
    let laplace = |p: &MultiPoly| {
        (0..3).fold(small.zero(), |acc, i| &acc + &p.derivative(i).derivative(i))
    };
    let images: Vec<MultiPoly> = polys.iter().map(laplace).collect();
    let target = if d >= 2 { monomials_of_degree(3, d - 2) } else { Vec::new() };
    // columns: monomials of degree d; rows: target monomials
    let mut mat = RationalMatrix::zeros(target.len(), mons.len());
    for (j, img) in images.iter().enumerate() {
        for (i, m) in target.iter().enumerate() {
            mat.set(i, j, img.coeff(m));
        }
    }
    let kernel = if target.is_empty() {
        (0..mons.len())
            .map(|j| (0..mons.len()).map(|k| if k == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    } else {
        mat.kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            let p = v
                .iter()
                .zip(&polys)
                .fold(small.zero(), |acc, (c, m)| &acc + &m.scale(c));
            Ok(p.embed(ring)?)
        })
        .collect()
}

/// Generic combination sum_k name_k * basis_k.
fn generic_combination(ring: &PolyRing, name: &str, basis: &[MultiPoly]) -> Result<MultiPoly, GitError> {
    let mut acc = ring.zero();
    for (k, b) in basis.iter().enumerate() {
        acc = &acc + &(&ring.var(&format!("{name}{k}"))? * b);
    }
    Ok(acc)
}

/// Ring and symbolic data for the tail computations: coordinates, `t`, `a`,
/// `b`, and coefficients f0..f4, g0..g6, h0..h8 of generic harmonic forms of
/// degrees 2, 3, 4.
pub struct TailSetup {
    pub ring: PolyRing,
    pub q: MultiPoly,
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub h: MultiPoly,
}

pub fn tail_setup() -> Result<TailSetup, GitError> {
    let mut names: Vec<String> = ["x0", "x1", "x2", "x3", "t", "a", "b"].iter().map(|s| s.to_string()).collect();
    for (p, n) in [("f", 5), ("g", 7), ("h", 9)] {
        names.extend((0..n).map(|k| format!("{p}{k}")));
    }
    let ring = PolyRing::new(&names);
    let q = ring.parse("x0^2 + x1^2 + x2^2")?;
    let f = generic_combination(&ring, "f", &harmonic_forms(&ring, 2)?)?;
    let g = generic_combination(&ring, "g", &harmonic_forms(&ring, 3)?)?;
    let h = generic_combination(&ring, "h", &harmonic_forms(&ring, 4)?)?;
    Ok(TailSetup { ring, q, f, g, h })
}

#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    pub limit_matches: bool,
    pub discriminant_matches: bool,
    pub cone_limit_matches: bool,
    pub discriminant: String,
}

/// Limits of the two-quadric family
/// `(q+ax3^2)(q+bx3^2) + t^2 x3^2 f + t^3 x3 g + t^4 h` and of the cone family x3^4 + t^2 x3^2 f + t^3 x3 g + t^4 h under
/// diag(1,1,1,t), and the branch discriminant of the first.
pub fn tail_identities() -> Result<TailReport, GitError> {
    let TailSetup { ring, q, f, g, h } = tail_setup()?;
    let p = |s: &str| ring.parse(s);
    let (t, x3, a, b) = (p("t")?, p("x3")?, p("a")?, p("b")?);
    let x3sq = &x3 * &x3;
    let lam = [0, 0, 0, 1];
    let family = &(&(&q + &(&a * &x3sq)) * &(&q + &(&b * &x3sq)))
        + &(&(&(&t.pow(2) * &x3sq) * &f) + &(&(&(&t.pow(3) * &x3) * &g) + &(&t.pow(4) * &h)));
    let lim = one_ps_limit(&family, &lam)?;
    let c = &(&(&(&a * &b) * &x3sq.pow(2)) + &(&x3sq * &f)) + &(&(&x3 * &g) + &h);
    let bcoef = &(&a + &b) * &x3sq;
    let expected = &(&(&q * &q) + &(&(&t.pow(2) * &bcoef) * &q)) + &(&t.pow(4) * &c);
    let disc = quadratic_branch_discriminant(&bcoef, &c);
    let expected_disc = &(&(&(&a - &b).pow(2) * &x3sq.pow(2)) - &(&x3sq * &f).scale_int(4))
        - &(&(&x3 * &g).scale_int(4) + &h.scale_int(4));
    let cone = &(&x3sq.pow(2) + &(&(&t.pow(2) * &x3sq) * &f)) + &(&(&(&t.pow(3) * &x3) * &g) + &(&t.pow(4) * &h));
    let cone_lim = limit_fiber(&one_ps_limit(&cone, &lam)?)?;
    let cone_expected = &(&x3sq.pow(2) + &(&x3sq * &f)) + &(&(&x3 * &g) + &h);
    Ok(TailReport {
        limit_matches: lim == expected,
        discriminant_matches: disc == expected_disc,
        cone_limit_matches: cone_lim == cone_expected,
        discriminant: disc.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticId {
    Upsilon,
    Omega,
    FAb,
    Tetrahedron,
    TwoQuadricsSkew,
    E12Example,
}

impl QuarticId {
    pub const ALL: [QuarticId; 6] = [
        QuarticId::Upsilon,
        QuarticId::Omega,
        QuarticId::FAb,
        QuarticId::Tetrahedron,
        QuarticId::TwoQuadricsSkew,
        QuarticId::E12Example,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuarticId::Upsilon => "upsilon",
            QuarticId::Omega => "omega",
            QuarticId::FAb => "f_ab",
            QuarticId::Tetrahedron => "tetrahedron",
            QuarticId::TwoQuadricsSkew => "two_quadrics_skew",
            QuarticId::E12Example => "e12_example",
        }
    }

    pub fn from_name(s: &str) -> Option<QuarticId> {
        QuarticId::ALL.into_iter().find(|q| q.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct QuarticCatalogEntry {
    pub id: QuarticId,
    pub form: MultiPoly,
}

/// The distinguished quartics, each in x0..x3 plus any parameters.
pub fn quartic(id: QuarticId) -> QuarticCatalogEntry {
    let (vars, text): (&[&str], &str) = match id {
        QuarticId::Upsilon => (
            &COORDS,
            "4*(x1*x3 - x2^2)*(x0*x2 - x1^2) - (x1*x2 - x0*x3)^2",
        ),
        QuarticId::Omega => (&COORDS, "(x0^2 + x1^2 + x2^2 + x3^2)^2"),
        QuarticId::FAb => (
            &["x0", "x1", "x2", "x3", "a", "b"],
            "(x0^2 + x1^2 + x2^2 + a*x3^2)*(x0^2 + x1^2 + x2^2 + b*x3^2)",
        ),
        QuarticId::Tetrahedron => (&COORDS, "x0*x1*x2*x3"),
        QuarticId::TwoQuadricsSkew => (
            &["x0", "x1", "x2", "x3", "a1", "b1", "a2", "b2"],
            "(a1*x0*x3 + b1*x1*x2)*(a2*x0*x3 + b2*x1*x2)",
        ),
        // (w, x, y, z) = (x0, x1, x2, x3); see E12_QUARTIC
        QuarticId::E12Example => (
            &COORDS,
            "x1^2*x0^2 - 2*x1*x3^2*x0 + x2^3*x0 + x1^3*x3 + x3^4",
        ),
    };
    let form = PolyRing::new(vars).parse(text).expect("catalog quartic parses");
    QuarticCatalogEntry { id, form }
}

#[derive(Clone, Debug, Serialize)]
pub struct E12Report {
    pub singular_at_origin: bool,
    pub normal_form: String,
    pub normal_form_matches: bool,
    /// (monomial, weighted degree) in the (s, y, z) chart with weights (1/2, 1/3, 1/7).
    pub weights: Vec<(String, String)>,
    pub weight_filtration_ok: bool,
}

/// Homogeneous quartic with an E12 point at [1,0,0,0]; its w = 1 chart is
/// (x - z^2)^2 + y^3 + x^3z.
pub const E12_QUARTIC: &str = "x^2*w^2 - 2*x*z^2*w + y^3*w + x^3*z + z^4";

/// The same quartic with the middle term written as x z^2 w^2, which is not
/// homogeneous but has the same w = 1 chart.
pub const E12_QUARTIC_AS_PRINTED: &str = "x^2*w^2 - 2*x*z^2*w^2 + y^3*w + x^3*z + z^4";

/// Checks on `E12_QUARTIC`: singular at [1,0,0,0]; at w = 1 the substitution
/// x -> s + z^2 gives s^2+y^3+z^7+s^3z+3s^2z^3+3sz^5; s^2, y^3, z^7 have
/// weight 1 under (s, y, z) = (1/2, 1/3, 1/7) and every other monomial weight > 1.
pub fn verify_e12_example() -> Result<E12Report, GitError> {
    let ring = PolyRing::new(&["w", "x", "y", "z", "s"]);
    let f = ring.parse(E12_QUARTIC)?;
    let printed = ring.parse(E12_QUARTIC_AS_PRINTED)?;
    if !f.is_homogeneous_in(&[0, 1, 2, 3], 4)
        || f.specialize("w", &BigRational::one())? != printed.specialize("w", &BigRational::one())?
    {
        return Err(GitError::Identity("E12 quartic charts disagree".into()));
    }
    let origin = [1, 0, 0, 0, 0].map(|v| BigRational::from_integer(v.into()));
    let singular_at_origin = f.evaluate(&origin)?.is_zero()
        && (0..4).all(|i| f.derivative(i).evaluate(&origin).map(|v| v.is_zero()).unwrap_or(false));
    let affine = f.specialize("w", &BigRational::one())?;
    let nf = affine.substitute("x", &ring.parse("s + z^2")?)?;
    let expected = ring.parse("s^2 + y^3 + z^7 + s^3*z + 3*s^2*z^3 + 3*s*z^5")?;
    let wt = [BigRational::zero(), BigRational::zero(), frac(1, 3), frac(1, 7), frac(1, 2)];
    let mut weights = Vec::new();
    let mut ok = true;
    for (m, _) in nf.terms() {
        let d: BigRational = m
            .exponents()
            .iter()
            .zip(&wt)
            .map(|(&e, w)| w * BigRational::from_integer(e.into()))
            .sum();
        let mono = ring.monomial(BigRational::one(), m.clone()).to_string();
        let is_leading = ["s^2", "y^3", "z^7"].contains(&mono.as_str());
        ok &= if is_leading { d == BigRational::one() } else { d > BigRational::one() };
        weights.push((mono, d.to_string()));
    }
    let report = E12Report {
        singular_at_origin,
        normal_form: nf.to_string(),
        normal_form_matches: nf == expected,
        weights,
        weight_filtration_ok: ok,
    };
    if !(report.singular_at_origin && report.normal_form_matches && report.weight_filtration_ok) {
        return Err(GitError::Identity(format!("E12 example: {report:?}")));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorstCase {
    pub ps: OnePS,
    pub mu: i64,
    pub bound: i64,
}

/// Exhaustive maximization of `mu(f, lambda)` over traceless integer weight
/// vectors with entries in [-bound, bound], in the fixed coordinate frame.
/// Ties go to the lexicographically largest weight vector.
pub fn worst_diagonal_ps(f: &MultiPoly, bound: i64) -> Result<WorstCase, GitError> {
    let mut best: Option<WorstCase> = None;
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let d = -(a + b + c);
                if d.abs() > bound || [a, b, c, d] == [0; 4] {
                    continue;
                }
                let ps = OnePS([a, b, c, d]);
                let m = mu(f, &ps)?;
                let better = match &best {
                    None => true,
                    Some(w) => m > w.mu || (m == w.mu && ps.0 > w.ps.0),
                };
                if better {
                    best = Some(WorstCase { ps, mu: m, bound });
                }
            }
        }
    }
    best.ok_or(GitError::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: [u32; 4]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn weights_of_sample_monomials() {
        assert_eq!(ps_weight(&mono([1, 0, 3, 0]), &LAMBDA[0]).unwrap(), 0);
        assert_eq!(ps_weight(&mono([4, 0, 0, 0]), &LAMBDA[0]).unwrap(), 12);
        assert_eq!(ps_weight(&mono([0, 0, 0, 4]), &LAMBDA[3]).unwrap(), -4);
        assert!(ps_weight(&mono([1, 0, 0, 0]), &LAMBDA[0]).is_err());
        assert!(OnePS::new([1, 1, 1, 1]).is_err());
    }

    #[test]
    fn zero_weight_counts() {
        let counts: Vec<usize> = LAMBDA.iter().map(|l| zero_weight_monomials(l).len()).collect();
        assert_eq!(counts, vec![5, 9, 9, 10]);
        let l1: Vec<Vec<u32>> = zero_weight_monomials(&LAMBDA[0])
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        for e in [[1, 0, 3, 0], [0, 3, 0, 1], [2, 0, 0, 2], [1, 1, 1, 1], [0, 2, 2, 0]] {
            assert!(l1.contains(&e.to_vec()));
        }
        assert!(zero_weight_monomials(&LAMBDA[3]).iter().all(|m| m.exponents()[0] == 1));
    }

    #[test]
    fn sigma_dimensions() {
        let dims: Vec<usize> = LAMBDA
            .iter()
            .map(|l| sigma_dimension(l, DEFAULT_SEED).unwrap().dimension)
            .collect();
        assert_eq!(dims, vec![2, 4, 2, 1]);
        for seed in [1, 2, 3] {
            assert_eq!(sigma_dimension(&LAMBDA[1], seed).unwrap().dimension, 4);
        }
    }

    #[test]
    fn upsilon_is_lambda1_fixed() {
        let u = quartic(QuarticId::Upsilon).form;
        assert_eq!(u.len(), 5);
        assert!(u.support().all(|m| weight_of(m.exponents(), &LAMBDA[0].0) == 0));
        for l in &LAMBDA {
            assert!(mu(&u, l).unwrap() <= 0);
        }
        assert_eq!(mu(&u, &LAMBDA[0]).unwrap(), 0);
    }

    #[test]
    fn catalog_is_homogeneous_quartic() {
        for id in QuarticId::ALL {
            let e = quartic(id);
            let idx = coordinate_indices(&e.form).unwrap();
            assert!(e.form.is_homogeneous_in(&idx, 4), "{}", id.name());
        }
        let fab = quartic(QuarticId::FAb).form;
        let zero = BigRational::zero();
        let q2 = fab.specialize("a", &zero).unwrap().specialize("b", &zero).unwrap();
        assert_eq!(q2, PolyRing::new(&["x0", "x1", "x2", "x3", "a", "b"]).parse("(x0^2+x1^2+x2^2)^2").unwrap());
    }

    #[test]
    fn mu_examples() {
        let r = PolyRing::new(&COORDS);
        let cone = r.parse("x0*(x1^3 + 2*x2^3 - x3^3 + 5*x1*x2*x3)").unwrap();
        assert_eq!(mu(&cone, &LAMBDA[3]).unwrap(), 0);
        assert_eq!(mu(&r.parse("x3^4").unwrap(), &LAMBDA[3]).unwrap(), -4);
        assert!(mu(&r.zero(), &LAMBDA[0]).is_err());
    }

    #[test]
    fn tail_identities_hold() {
        let rep = tail_identities().unwrap();
        assert!(rep.limit_matches);
        assert!(rep.discriminant_matches);
        assert!(rep.cone_limit_matches);
    }

    #[test]
    fn discriminant_small_cases() {
        let r = PolyRing::new(&["h", "q", "x3"]);
        let h = r.parse("h").unwrap();
        assert_eq!(quadratic_branch_discriminant(&r.zero(), &-&h), h.scale_int(4));
        let b = r.parse("2*q*x3^2").unwrap();
        let c = r.parse("q^2*x3^4").unwrap();
        assert!(quadratic_branch_discriminant(&b, &c).is_zero());
    }

    #[test]
    fn harmonic_dimensions() {
        let ring = PolyRing::new(&["x0", "x1", "x2"]);
        for d in 0..5 {
            assert_eq!(harmonic_forms(&ring, d).unwrap().len(), 2 * d as usize + 1);
        }
    }

    #[test]
    fn e12_example_checks() {
        let rep = verify_e12_example().unwrap();
        assert!(rep.normal_form_matches);
        let s3z = rep.weights.iter().find(|(m, _)| m == "z*s^3").unwrap();
        assert_eq!(s3z.1, "23/14");
    }

    #[test]
    fn fixed_form_is_its_own_limit() {
        let r = PolyRing::new(&["x0", "x1", "x2", "x3", "t"]);
        let u = quartic(QuarticId::Upsilon).form.embed(&r).unwrap();
        assert_eq!(one_ps_limit(&u, &LAMBDA[0].0).unwrap(), u);
    }

    #[test]
    fn worst_case_search() {
        let r = PolyRing::new(&COORDS);
        // x0^4 is destabilized
        let w = worst_diagonal_ps(&r.parse("x0^4").unwrap(), 2).unwrap();
        assert!(w.mu > 0);
        // the tetrahedron is fixed by the whole torus: mu is 0 for every lambda
        let t = worst_diagonal_ps(&quartic(QuarticId::Tetrahedron).form, 2).unwrap();
        assert_eq!(t.mu, 0);
    }

    fn small_family() -> impl Strategy<Value = MultiPoly> {
        let ring = PolyRing::new(&["x0", "x1", "x2", "x3", "t"]);
        prop::collection::vec((prop::array::uniform5(0u32..3), -4i64..5), 1..5).prop_filter_map(
            "nonzero",
            move |terms| {
                let p = MultiPoly::from_terms(
                    &ring,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial(e.to_vec()), BigRational::from_integer(c.into()))),
                );
                (!p.is_zero()).then_some(p)
            },
        )
    }

    proptest! {
        #[test]
        fn limit_is_multiplicative(f in small_family(), g in small_family(), w in prop::array::uniform4(-3i64..4)) {
            let lhs = one_ps_limit(&(&f * &g), &w).unwrap();
            let rhs = &one_ps_limit(&f, &w).unwrap() * &one_ps_limit(&g, &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
