//! Fincke–Pohst enumeration of fixed-norm vectors in a negative definite
//! lattice.
//!
//! The quadratic completion of `-G` is computed exactly. Its coefficients are
//! then used in floating point only to bound the search tree, with an outward
//! margin, so the tree always covers the exact solution set. Every leaf is
//! accepted or rejected by an exact integer evaluation of the form.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::LatticeError;

/// Exact quadratic completion `q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2`
/// of the positive definite form `-G`.
pub struct Completion {
    pub d: Vec<BigRational>,
    pub m: Vec<Vec<BigRational>>,
}

pub fn complete_square(gram: &[Vec<i64>]) -> Result<Completion, LatticeError> {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer((-x).into())).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = a[i][i].clone();
        if !di.is_positive() {
            return Err(LatticeError::NotDefinite);
        }
        for j in i + 1..n {
            m[i][j] = &a[i][j] / &di;
        }
        for k in i + 1..n {
            for l in i + 1..n {
                let v = &a[k][l] - &m[i][k] * &m[i][l] * &di;
                a[k][l] = v;
            }
        }
        d.push(di);
    }
    Ok(Completion { d, m })
}

fn neg_norm(gram: &[Vec<i64>], x: &[i64]) -> i64 {
    -super::intmat::bilinear(gram, x, x)
}

/// All `v` with `v.G.v = norm`, sorted lexicographically.
pub fn vectors_of_norm(gram: &[Vec<i64>], norm: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
    if norm >= 0 {
        return Err(LatticeError::InvalidNorm(norm));
    }
    let n = gram.len();
    let comp = complete_square(gram)?;
    let target = -norm;
    let d: Vec<f64> = comp.d.iter().map(|x| x.to_f64().unwrap()).collect();
    let m: Vec<Vec<f64>> = comp
        .m
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        search(gram, &d, &m, target, n - 1, target as f64, &mut x, &mut out);
    }
    out.sort();
    Ok(out)
}

const MARGIN: f64 = 1e-6;

#[allow(clippy::too_many_arguments)]
fn search(
    gram: &[Vec<i64>],
    d: &[f64],
    m: &[Vec<f64>],
    target: i64,
    i: usize,
    budget: f64,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    let n = x.len();
    let center: f64 = -(i + 1..n).map(|j| m[i][j] * x[j] as f64).sum::<f64>();
    let radius = (budget.max(0.0) / d[i]).sqrt() + MARGIN;
    let lo = (center - radius).floor() as i64;
    let hi = (center + radius).ceil() as i64;
    for xi in lo..=hi {
        let diff = xi as f64 - center;
        let used = d[i] * diff * diff;
        if used > budget + MARGIN * (1.0 + target as f64) {
            continue;
        }
        x[i] = xi;
        if i == 0 {
            if neg_norm(gram, x) == target {
                out.push(x.to_vec());
            }
        } else {
            search(gram, d, m, target, i - 1, budget - used, x, out);
        }
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_search(gram: &[Vec<i64>], norm: i64, bound: i64) -> Vec<Vec<i64>> {
        let n = gram.len();
        let mut out = Vec::new();
        let side = (2 * bound + 1) as usize;
        for code in 0..side.pow(n as u32) {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let digit = (c % side) as i64 - bound;
                    c /= side;
                    digit
                })
                .collect();
            if super::super::intmat::bilinear(gram, &v, &v) == norm {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_box_search_in_small_rank() {
        let a2 = vec![vec![-2, 1], vec![1, -2]];
        assert_eq!(vectors_of_norm(&a2, -2).unwrap(), box_search(&a2, -2, 3));
        assert_eq!(vectors_of_norm(&a2, -2).unwrap().len(), 6);
        let a3 = vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]];
        assert_eq!(vectors_of_norm(&a3, -4).unwrap(), box_search(&a3, -4, 4));
        let d4 = vec![
            vec![-2, 1, 0, 0],
            vec![1, -2, 1, 1],
            vec![0, 1, -2, 0],
            vec![0, 1, 0, -2],
        ];
        assert_eq!(vectors_of_norm(&d4, -2).unwrap(), box_search(&d4, -2, 3));
        assert_eq!(vectors_of_norm(&d4, -2).unwrap().len(), 24);
    }

    #[test]
    fn rejects_indefinite_and_bad_norm() {
        let u = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(vectors_of_norm(&u, -2), Err(LatticeError::NotDefinite)));
        assert!(vectors_of_norm(&[vec![-2]], 2).is_err());
    }

    #[test]
    fn rank_one_d1() {
        assert!(vectors_of_norm(&[vec![-4]], -2).unwrap().is_empty());
        assert_eq!(vectors_of_norm(&[vec![-4]], -4).unwrap(), vec![vec![-1], vec![1]]);
    }
}
