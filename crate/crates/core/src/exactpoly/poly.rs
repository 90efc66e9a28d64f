use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exponent vector of a monomial, ordered graded-lexicographically
/// (total degree first, then lexicographic with the first variable largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Multivariate polynomial with exact rational coefficients over an ordered
/// list of named variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, BigRational>,
}

/// Shared variable list used to build polynomials over the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        PolyRing {
            vars: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(BigRational::one())
    }

    pub fn constant(&self, c: BigRational) -> MultiPoly {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn int(&self, c: i64) -> MultiPoly {
        self.constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(&self, c: BigRational, m: Monomial) -> MultiPoly {
        assert_eq!(m.0.len(), self.nvars(), "exponent length mismatch");
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The `i`-th generator.
    pub fn gen(&self, i: usize) -> MultiPoly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(BigRational::one(), Monomial(e))
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly, PolyError> {
        self.index_of(name)
            .map(|i| self.gen(i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly, PolyError> {
        MultiPoly::parse(&self.vars, text)
    }
}

impl MultiPoly {
    pub fn ring(&self) -> PolyRing {
        PolyRing {
            vars: self.vars.clone(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the variables at `indices` only (others treated as coefficients).
    pub fn is_homogeneous_in(&self, indices: &[usize], degree: u32) -> bool {
        self.terms
            .keys()
            .all(|m| indices.iter().map(|&i| m.0[i]).sum::<u32>() == degree)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    fn same_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.ring().zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return self.ring().zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = self.ring().one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replace the variable `var` by `expr` (which lives in the same ring and
    /// may itself contain `var`), fully expanded.
    pub fn substitute(&self, var: &str, expr: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(expr)?;
        let idx = self
            .ring()
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let max_e = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        let mut powers = vec![self.ring().one()];
        for k in 1..=max_e as usize {
            let next = &powers[k - 1] * expr;
            powers.push(next);
        }
        let mut out = self.ring().zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[idx] as usize;
            rest.0[idx] = 0;
            for (m2, c2) in &powers[e].terms {
                out.add_term(rest.mul(m2), c * c2);
            }
        }
        Ok(out)
    }

    /// Substitute a rational value for one variable; the variable stays in the
    /// ring with exponent zero everywhere.
    pub fn specialize(&self, var: &str, value: &BigRational) -> Result<MultiPoly, PolyError> {
        let c = self.ring().constant(value.clone());
        self.substitute(var, &c)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn derivative(&self, idx: usize) -> MultiPoly {
        let mut out = self.ring().zero();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn derivative_by(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let idx = self
            .ring()
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(idx))
    }

    /// Re-express over another variable list containing every variable that
    /// occurs in `self`.
    pub fn embed(&self, ring: &PolyRing) -> Result<MultiPoly, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match ring.index_of(v) {
                Some(j) => map.push(Some(j)),
                None if !used => map.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Split into coefficients of powers of `var`: entry `k` is the coefficient
    /// polynomial of `var^k` (still in the same ring, without `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let max_e = self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0) as usize;
        let mut out = vec![self.ring().zero(); max_e + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var] as usize;
            m2.0[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    /// Build directly from (monomial, coefficient) pairs.
    pub fn from_terms<I>(ring: &PolyRing, terms: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = ring.zero();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "exponent length mismatch");
            out.add_term(m, c);
        }
        out
    }

    /// Apply `f` to every term's exponent vector and coefficient.
    pub fn map_terms<F>(&self, ring: &PolyRing, mut f: F) -> MultiPoly
    where
        F: FnMut(&Monomial, &BigRational) -> Option<(Monomial, BigRational)>,
    {
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                out.add_term(m2, c2);
            }
        }
        out
    }

    pub fn parse(vars: &[String], text: &str) -> Result<MultiPoly, PolyError> {
        super::parse::parse_poly(&PolyRing::new(vars), text)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms joined by ` + ` / ` - ` in descending graded-lex order, each as
    /// `coef*x^e*...` with unit coefficients and exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.0.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                factors.push(fmt_rational(&abs));
            }
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics on variable-list mismatch; use `checked_add` for a `Result`.
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn grlex_order_puts_degree_first() {
        let a = Monomial(vec![0, 0, 3]);
        let b = Monomial(vec![2, 0, 0]);
        assert!(a > b);
        let c = Monomial(vec![1, 0, 2]);
        assert!(c > a);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 3), vec![Monomial(vec![3])]);
        let ms = monomials_of_degree(3, 2);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn multiply_by_zero_annihilates() {
        let r = PolyRing::new(&["x", "y"]);
        let p = r.parse("x^2 - 3*x*y + 1/2").unwrap();
        assert!((&p * &r.zero()).is_zero());
    }

    #[test]
    fn binomial_expansion_example() {
        let r = PolyRing::new(&["x", "y", "z"]);
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let z = r.var("z").unwrap();
        let p = &(&(&x - &z.pow(2)).pow(2) + &y.pow(3)) + &(&x.pow(3) * &z);
        let expected = r.parse("x^2 - 2*x*z^2 + z^4 + y^3 + x^3*z").unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn substitution_example() {
        let r = PolyRing::new(&["s", "x", "y", "z"]);
        let p = r.parse("x^2 - 2*x*z^2 + z^4 + y^3 + x^3*z").unwrap();
        let expr = r.parse("s + z^2").unwrap();
        let out = p.substitute("x", &expr).unwrap();
        let expected = r
            .parse("s^2 + y^3 + s^3*z + 3*s^2*z^3 + 3*s*z^5 + z^7")
            .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn substitute_identity_and_self_reference() {
        let r = PolyRing::new(&["x", "y"]);
        let p = r.parse("x^3*y - 2/3*x + y^2").unwrap();
        let x = r.var("x").unwrap();
        assert_eq!(p.substitute("x", &x).unwrap(), p);
        let shifted = p.substitute("x", &r.parse("x + 1").unwrap()).unwrap();
        let back = shifted.substitute("x", &r.parse("x - 1").unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn unknown_variable_and_mismatch_errors() {
        let r = PolyRing::new(&["x"]);
        let s = PolyRing::new(&["y"]);
        let p = r.var("x").unwrap();
        assert!(matches!(
            p.substitute("w", &p),
            Err(PolyError::UnknownVariable(_))
        ));
        assert!(matches!(
            p.checked_add(&s.var("y").unwrap()),
            Err(PolyError::VariableMismatch { .. })
        ));
        assert!(r.var("nope").is_err());
    }

    #[test]
    fn derivative_and_evaluation() {
        let r = PolyRing::new(&["x", "y"]);
        let p = r.parse("x^3*y + 1/2*y^2").unwrap();
        assert_eq!(p.derivative(0), r.parse("3*x^2*y").unwrap());
        assert_eq!(p.evaluate(&[q(2, 1), q(1, 3)]).unwrap(), q(8, 3) + q(1, 18));
    }

    #[test]
    fn display_round_trip() {
        let r = PolyRing::new(&["x0", "x1", "t"]);
        let p = r.parse("-3/4*x0^2*t + x1 - 7 + x0*x1^3").unwrap();
        let text = p.to_string();
        assert_eq!(text, "x0*x1^3 - 3/4*x0^2*t + x1 - 7");
        assert_eq!(r.parse(&text).unwrap(), p);
    }

    #[test]
    fn embed_into_larger_ring() {
        let r = PolyRing::new(&["x", "y"]);
        let big = PolyRing::new(&["a", "y", "x"]);
        let p = r.parse("x^2*y + 1").unwrap();
        let e = p.embed(&big).unwrap();
        assert_eq!(e, big.parse("x^2*y + 1").unwrap());
        assert!(e.embed(&PolyRing::new(&["x"])).is_err());
    }
}
