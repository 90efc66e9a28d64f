use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly};
use super::PolyError;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, PolyError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(PolyError::Shape("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, PolyError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Coefficient matrix of `polys` (one row each) against the union of their
    /// supports; columns in descending graded-lex order.
    pub fn from_polys(polys: &[MultiPoly]) -> (Self, Vec<Monomial>) {
        let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in polys {
            for m in p.support() {
                cols.entry(m.clone()).or_insert(0);
            }
        }
        let basis: Vec<Monomial> = cols.keys().rev().cloned().collect();
        for (j, m) in basis.iter().enumerate() {
            cols.insert(m.clone(), j);
        }
        let mut mat = Self::zeros(polys.len(), basis.len());
        for (i, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                mat.set(i, cols[m], c.clone());
            }
        }
        (mat, basis)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Restrict to a subset of columns.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn stack(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(PolyError::Shape("column count mismatch".into()));
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols,
            entries,
        })
    }

    /// Integer rows after clearing each row's denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }

    /// Exact rank via fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer rows.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel {x : M x = 0}.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solve `M x = b` for one solution, if any.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Result<BigRational, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                for j in 0..n {
                    m.entries.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dimension of the rational span of `polys`.
pub fn span_rank(polys: &[MultiPoly]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    RationalMatrix::from_polys(polys).0.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::PolyRing;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn identity_and_zero_rank() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_with_fractions_matches_rref() {
        let m = RationalMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), r(1), r(3)],
            vec![r(1), r(2), r(6)],
            vec![r(0), BigRational::new(1.into(), 3.into()), r(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1.len(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for i in 0..3 {
            let dot: BigRational = m.row(i).iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinant_and_solve() {
        let m = RationalMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), r(5));
        let x = m.solve(&[r(3), r(4)]).unwrap();
        assert_eq!(x, vec![r(1), r(1)]);
        let singular = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(singular.solve(&[r(1), r(2)]).is_none());
    }

    #[test]
    fn polynomial_span_rank() {
        let ring = PolyRing::new(&["x", "y"]);
        let ps = vec![
            ring.parse("x^2 + y^2").unwrap(),
            ring.parse("x^2 - y^2").unwrap(),
            ring.parse("3*x^2").unwrap(),
        ];
        assert_eq!(span_rank(&ps), 2);
    }
}
