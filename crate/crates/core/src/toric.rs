//! Toric model of the weighted blow-up of affine space at the origin.
//!
//! For weights `a = (a_1, .., a_n)` the fan has one cone `C_i` per coordinate,
//! spanned by the standard basis with `e_i` replaced by `v = a`. A lattice
//! point `x` of the positive orthant lies in `C_i` iff `i` minimizes
//! `x_i / a_i`. The exceptional divisor is the weighted projective space
//! `WP(a)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::intmat;
use crate::sl2::Sl2Decomposition;

pub const FAN_SEED: u64 = 0x07a1_10ed;
pub const FAN_SAMPLES: usize = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("weight vector needs at least 2 entries, got {0}")]
    TooShort(usize),
    #[error("weights must be positive: {0:?}")]
    NonPositive(Vec<i64>),
    #[error("weight vectors differ: {0} vs {1}")]
    WeightMismatch(String, String),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("fan validation failed: {0}")]
    Fan(String),
}

/// Positive weights `(a_1, .., a_n)`, `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(a: Vec<i64>) -> Result<Self, ToricError> {
        if a.len() < 2 {
            return Err(ToricError::TooShort(a.len()));
        }
        if a.iter().any(|&x| x <= 0 || x > u32::MAX as i64) {
            return Err(ToricError::NonPositive(a));
        }
        Ok(WeightVector(a.into_iter().map(|x| x as u32).collect()))
    }

    /// `[(weight, count)]` expanded, e.g. `[(4, 9), (6, 13)]`.
    pub fn from_blocks(blocks: &[(u32, usize)]) -> Result<Self, ToricError> {
        Self::new(
            blocks
                .iter()
                .flat_map(|&(w, k)| std::iter::repeat_n(w as i64, k))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Runs of equal consecutive weights.
    pub fn blocks(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &w in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == w => *k += 1,
                _ => out.push((w, 1)),
            }
        }
        out
    }
}

/// `WP(4^9,6^13)` style.
impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|(w, k)| match k {
                1 => w.to_string(),
                k => format!("{w}^{k}"),
            })
            .collect();
        write!(f, "WP({})", parts.join(","))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedFan {
    pub weights: WeightVector,
    /// Generators of `C_i`, one per row; the row for `e_i` is replaced by `a`.
    pub cones: Vec<Vec<Vec<i64>>>,
    pub multiplicities: Vec<u64>,
    pub exceptional: String,
}

fn cone_generators(a: &[u32], i: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|j| {
            if j == i {
                a.iter().map(|&x| x as i64).collect()
            } else {
                (0..n).map(|k| (k == j) as i64).collect()
            }
        })
        .collect()
}

/// Coefficients of `x` in the generators of `C_i`, scaled by `a_i`:
/// `a_i x_j - a_j x_i` for `j != i`, and `x_i` on the `v` slot.
fn scaled_coordinates(a: &[u32], i: usize, x: &[i64]) -> Vec<i128> {
    let ai = a[i] as i128;
    (0..a.len())
        .map(|j| {
            if j == i {
                x[i] as i128
            } else {
                ai * x[j] as i128 - a[j] as i128 * x[i] as i128
            }
        })
        .collect()
}

fn in_cone(a: &[u32], i: usize, x: &[i64]) -> bool {
    scaled_coordinates(a, i, x).iter().all(|&c| c >= 0)
}

/// Cones, multiplicities, and a sampled check of the fan property.
pub fn build_fan(a: &WeightVector) -> Result<WeightedFan, ToricError> {
    build_fan_seeded(a, FAN_SEED)
}

pub fn build_fan_seeded(a: &WeightVector, seed: u64) -> Result<WeightedFan, ToricError> {
    let w = a.as_slice();
    let n = w.len();
    let cones: Vec<Vec<Vec<i64>>> = (0..n).map(|i| cone_generators(w, i)).collect();
    let mut multiplicities = Vec::with_capacity(n);
    for (i, c) in cones.iter().enumerate() {
        let det = intmat::determinant(c).abs();
        if det != BigInt::from(w[i]) {
            return Err(ToricError::Fan(format!("|det C_{}| = {det}, expected {}", i + 1, w[i])));
        }
        multiplicities.push(w[i] as u64);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 4 * *w.iter().max().unwrap() as i64;
    for _ in 0..FAN_SAMPLES {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=bound)).collect();
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        check_point(w, &x)?;
        // a point on the common face of two random cones
        let i = rng.gen_range(0..n);
        let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
        let c = rng.gen_range(1..=4i64);
        let y: Vec<i64> = (0..n)
            .map(|k| {
                let base = c * w[k] as i64;
                if k == i || k == j {
                    base
                } else {
                    base + rng.gen_range(0..=bound)
                }
            })
            .collect();
        if !(in_cone(w, i, &y) && in_cone(w, j, &y)) {
            return Err(ToricError::Fan(format!("face point {y:?} not in C_{} and C_{}", i + 1, j + 1)));
        }
        check_point(w, &y)?;
    }
    Ok(WeightedFan {
        exceptional: a.to_string(),
        weights: a.clone(),
        cones,
        multiplicities,
    })
}

/// `x` lies in some cone, and whenever it lies in two cones `C_i, C_j` it lies
/// on their common face: the coefficient of `e_j` in `C_i` and of `e_i` in
/// `C_j` both vanish.
fn check_point(a: &[u32], x: &[i64]) -> Result<(), ToricError> {
    let containing: Vec<usize> = (0..a.len()).filter(|&i| in_cone(a, i, x)).collect();
    if containing.is_empty() {
        return Err(ToricError::Fan(format!("{x:?} lies in no cone")));
    }
    for (k, &i) in containing.iter().enumerate() {
        for &j in &containing[k + 1..] {
            if scaled_coordinates(a, i, x)[j] != 0 || scaled_coordinates(a, j, x)[i] != 0 {
                return Err(ToricError::Fan(format!(
                    "{x:?} in C_{} and C_{} off their common face",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// A point of `WP(a)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPPoint {
    pub coords: Vec<BigRational>,
    pub weights: WeightVector,
}

impl WPPoint {
    pub fn new(coords: Vec<BigRational>, weights: WeightVector) -> Result<Self, ToricError> {
        if coords.len() != weights.len() {
            return Err(ToricError::Arity {
                expected: weights.len(),
                got: coords.len(),
            });
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(ToricError::ZeroPoint);
        }
        Ok(WPPoint { coords, weights })
    }

    /// Coordinates multiplied by `s^{k a_i}`.
    pub fn rescaled(&self, s: &BigRational, k: u32) -> WPPoint {
        let coords = self
            .coords
            .iter()
            .zip(self.weights.as_slice())
            .map(|(c, &a)| c * num_traits::pow(s.clone(), (k * a) as usize))
            .collect();
        WPPoint {
            coords,
            weights: self.weights.clone(),
        }
    }
}

impl fmt::Display for WPPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

/// Limit on the exceptional divisor of the arc
/// `t -> (t^{k a_1} phi_1(t), .., t^{k a_n} phi_n(t))`, given `phi(0)`.
pub fn arc_limit(a: &WeightVector, k: u32, phi0: &[BigRational]) -> Result<WPPoint, ToricError> {
    if k == 0 {
        return Err(ToricError::Fan("arc order must be positive".into()));
    }
    WPPoint::new(phi0.to_vec(), a.clone())
}

/// Equality in `WP(a)` up to the identity component of the stabilizer: equal
/// zero patterns and `r_i^{a_j} = r_j^{a_i}` for the ratios `r_i = x_i / y_i`.
pub fn wp_equiv(x: &WPPoint, y: &WPPoint) -> Result<bool, ToricError> {
    if x.weights != y.weights {
        return Err(ToricError::WeightMismatch(x.weights.to_string(), y.weights.to_string()));
    }
    let a = x.weights.as_slice();
    let mut ratios: Vec<(BigRational, u32)> = Vec::new();
    for ((xi, yi), &ai) in x.coords.iter().zip(&y.coords).zip(a) {
        match (xi.is_zero(), yi.is_zero()) {
            (true, true) => {}
            (false, false) => ratios.push((xi / yi, ai)),
            _ => return Ok(false),
        }
    }
    for (i, (ri, ai)) in ratios.iter().enumerate() {
        for (rj, aj) in &ratios[i + 1..] {
            let lhs = num_traits::pow(ri.clone(), *aj as usize);
            let rhs = num_traits::pow(rj.clone(), *ai as usize);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Weighted blow-up centres of the slices: each summand `V(d)` gets weight
/// `d / 2`.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupCenter {
    pub name: &'static str,
    pub slice: String,
    pub weights: WeightVector,
    pub exceptional: String,
}

pub const UPSILON_SLICE_WEIGHTS: [(u32, usize); 2] = [(4, 9), (6, 13)];
pub const M_SLICE_WEIGHTS: [(u32, usize); 3] = [(2, 5), (3, 7), (4, 9)];

/// Weight vector assigning `d / 2` to every coordinate of each `V(d)`, in
/// increasing `d`.
pub fn half_highest_weights(d: &Sl2Decomposition) -> Result<WeightVector, ToricError> {
    let blocks: Vec<(u32, usize)> = d
        .multiplicities()
        .iter()
        .map(|(&deg, &m)| (deg / 2, (deg as usize + 1) * m as usize))
        .collect();
    WeightVector::from_blocks(&blocks)
}

pub fn blowup_centers() -> Result<Vec<BlowupCenter>, ToricError> {
    let mut out = Vec::new();
    for (name, slice, blocks) in [
        ("upsilon", "V(8)+V(12)", &UPSILON_SLICE_WEIGHTS[..]),
        ("M_ab", "V(8)+V(6)+R*x3^2", &M_SLICE_WEIGHTS[..]),
    ] {
        let weights = WeightVector::from_blocks(blocks)?;
        let fan = build_fan(&weights)?;
        out.push(BlowupCenter {
            name,
            slice: slice.to_string(),
            weights,
            exceptional: fan.exceptional,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use proptest::prelude::*;

    fn wv(a: &[i64]) -> WeightVector {
        WeightVector::new(a.to_vec()).unwrap()
    }

    fn pt(c: &[i64], a: &WeightVector) -> WPPoint {
        WPPoint::new(c.iter().map(|&x| rat(x)).collect(), a.clone()).unwrap()
    }

    #[test]
    fn small_fans() {
        let f = build_fan(&wv(&[1, 1])).unwrap();
        assert_eq!(f.multiplicities, vec![1, 1]);
        assert_eq!(f.cones[0], vec![vec![1, 1], vec![0, 1]]);
        let f = build_fan(&wv(&[2, 3])).unwrap();
        assert_eq!(f.multiplicities, vec![2, 3]);
        assert_eq!(f.exceptional, "WP(2,3)");
    }

    #[test]
    fn slice_fans() {
        let a = WeightVector::from_blocks(&UPSILON_SLICE_WEIGHTS).unwrap();
        let f = build_fan(&a).unwrap();
        assert_eq!(f.exceptional, "WP(4^9,6^13)");
        assert_eq!(f.multiplicities.len(), 22);
        assert!(f.multiplicities.iter().zip(a.as_slice()).all(|(&m, &w)| m == w as u64));
        let b = WeightVector::from_blocks(&M_SLICE_WEIGHTS).unwrap();
        let f = build_fan(&b).unwrap();
        assert_eq!(f.exceptional, "WP(2^5,3^7,4^9)");
        assert_eq!(f.multiplicities.iter().sum::<u64>(), 10 + 21 + 36);
    }

    #[test]
    fn weights_follow_summands() {
        let up = crate::sl2::upsilon_splitting().unwrap();
        assert_eq!(
            half_highest_weights(&up.slice).unwrap(),
            WeightVector::from_blocks(&UPSILON_SLICE_WEIGHTS).unwrap()
        );
        let m = crate::sl2::slice_m().unwrap().decomposition().unwrap();
        assert_eq!(
            half_highest_weights(&m).unwrap(),
            WeightVector::from_blocks(&M_SLICE_WEIGHTS).unwrap()
        );
        assert_eq!(blowup_centers().unwrap().len(), 2);
    }

    #[test]
    fn invalid_weights() {
        assert_eq!(WeightVector::new(vec![3]), Err(ToricError::TooShort(1)));
        assert!(matches!(WeightVector::new(vec![1, 0]), Err(ToricError::NonPositive(_))));
    }

    #[test]
    fn equivalence_examples() {
        let a = wv(&[2, 3]);
        assert!(wp_equiv(&pt(&[1, 1], &a), &pt(&[4, 8], &a)).unwrap());
        assert!(!wp_equiv(&pt(&[1, 1], &a), &pt(&[4, 9], &a)).unwrap());
        let b = wv(&[1, 2, 3]);
        assert!(wp_equiv(&pt(&[0, 1, 5], &b), &pt(&[0, 1, 5], &b)).unwrap());
        assert!(!wp_equiv(&pt(&[0, 1, 5], &b), &pt(&[1, 1, 5], &b)).unwrap());
        assert!(wp_equiv(&pt(&[1, 1], &a), &pt(&[1, 1], &wv(&[1, 1]))).is_err());
    }

    #[test]
    fn arc_limits() {
        let a = wv(&[2, 3, 3]);
        let phi = vec![rat(1), rat(-2), rat(0)];
        let p = arc_limit(&a, 2, &phi).unwrap();
        assert_eq!(p.coords, phi);
        let scaled = p.rescaled(&rat(5), 2);
        assert!(wp_equiv(&p, &scaled).unwrap());
        assert_eq!(arc_limit(&a, 1, &[rat(0), rat(0), rat(0)]), Err(ToricError::ZeroPoint));
    }

    proptest! {
        #[test]
        fn all_ones_is_projective_equivalence(
            x in proptest::collection::vec(-3i64..4, 3),
            y in proptest::collection::vec(-3i64..4, 3),
        ) {
            prop_assume!(x.iter().any(|&c| c != 0) && y.iter().any(|&c| c != 0));
            let a = wv(&[1, 1, 1]);
            let proj = (0..3).all(|i| (0..3).all(|j| x[i] * y[j] == x[j] * y[i]));
            prop_assert_eq!(wp_equiv(&pt(&x, &a), &pt(&y, &a)).unwrap(), proj);
        }

        #[test]
        fn arc_limit_invariant_under_rescaling(
            phi in proptest::collection::vec(-5i64..6, 4),
            s in 1i64..5,
            k in 1u32..3,
        ) {
            prop_assume!(phi.iter().any(|&c| c != 0));
            let a = wv(&[1, 2, 2, 3]);
            let p = arc_limit(&a, k, &phi.iter().map(|&c| rat(c)).collect::<Vec<_>>()).unwrap();
            prop_assert!(wp_equiv(&p, &p.rescaled(&rat(-s), k)).unwrap());
        }
    }
}
