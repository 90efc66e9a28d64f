//! Integer matrix routines: Bareiss determinant, Smith normal form, integer
//! kernels via unimodular column reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_i64(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Diagonal of the Smith normal form (non-negative, each dividing the next).
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = to_big(m);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility condition on the remaining block
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Basis (as columns, returned as a list of vectors) of the saturated integer
/// kernel {x in Z^n : A x = 0}.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let rows = a.len();
    let mut m = to_big(a);
    // unimodular transform, tracked as columns of u
    let mut u: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == n {
            break;
        }
        // gcd-reduce row r over columns pivot_col..n into column pivot_col
        loop {
            let nonzero: Vec<usize> = (pivot_col..n).filter(|&j| !m[r][j].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let jmin = *nonzero
                .iter()
                .min_by(|&&x, &&y| m[r][x].abs().cmp(&m[r][y].abs()))
                .unwrap();
            swap_cols(&mut m, pivot_col, jmin);
            swap_cols(&mut u, pivot_col, jmin);
            let mut done = true;
            for j in pivot_col + 1..n {
                if m[r][j].is_zero() {
                    continue;
                }
                let q = m[r][j].div_floor(&m[r][pivot_col]);
                col_axpy(&mut m, j, pivot_col, &q);
                col_axpy(&mut u, j, pivot_col, &q);
                if !m[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                if !m[r][pivot_col].is_zero() {
                    pivot_col += 1;
                }
                break;
            }
        }
    }
    (pivot_col..n)
        .map(|j| {
            (0..n)
                .map(|i| u[i][j].to_i64().expect("kernel entry overflows i64"))
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// column j -= q * column k
fn col_axpy(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[j] - q * &row[k];
        row[j] = v;
    }
}

/// B^T G B for a basis given as a list of coordinate vectors.
pub fn restrict_gram(gram: &[Vec<i64>], basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    basis
        .iter()
        .map(|x| basis.iter().map(|y| bilinear(gram, x, y)).collect())
        .collect()
}

pub fn bilinear(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0i64;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            s += xi * gram[i][j] * yj;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![-2, 1], vec![1, -2]]), BigInt::from(3));
        assert_eq!(determinant(&[]), BigInt::from(1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn smith_form_of_d4_gram() {
        // D4: discriminant group (Z/2)^2
        let d4 = vec![
            vec![-2, 1, 0, 0],
            vec![1, -2, 1, 1],
            vec![0, 1, -2, 0],
            vec![0, 1, 0, -2],
        ];
        let d = smith_diagonal(&d4);
        let ints: Vec<i64> = d.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(ints, vec![1, 1, 2, 2]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y + 6z = 0 has kernel of rank 2 and index 1
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        let gram_id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let g = restrict_gram(&gram_id, &k);
        // the kernel of (1,2,3) in Z^3 has discriminant 1^2+2^2+3^2 = 14
        assert_eq!(determinant(&g), BigInt::from(14));
    }
}
