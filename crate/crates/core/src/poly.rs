//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables over the rationals.
///
/// Terms are kept in a map keyed by graded-lex monomial order, so two equal
/// polynomials always have identical representations. No stored
/// coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate function `x_index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VarCountMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in a single variable, `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[index]).max()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Exact product.
    pub fn multiply(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂P/∂x_index` (0-based index).
    pub fn partial_derivative(&self, index: usize) -> Result<MultiPoly> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.terms.insert(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::PointLength {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Re-embeds into `nvars + extra` variables; the new variables are
    /// appended after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.0.clone();
                    exps.resize(self.nvars + extra, 0);
                    (Monomial(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Canonical text with the given variable names: terms in descending
    /// graded-lex order, coefficients as `a` or `a/b`.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[k].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[k].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Default variable names `x1, …, xn`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.nvars)))
    }
}

// Operator forms panic on a variable-count mismatch; use the `try_*`
// methods where the shapes are not already known to agree.

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.multiply(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::rational::{int, ratio};

    fn p(text: &str, vars: &[&str]) -> MultiPoly {
        parse_polynomial(text, vars).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let xy = ["x", "y"];
        assert_eq!(p("x", &xy).multiply(&p("x", &xy)).unwrap(), p("x^2", &xy));
        assert_eq!(p("x+y", &xy).multiply(&p("x-y", &xy)).unwrap(), p("x^2-y^2", &xy));
        assert!(p("2*y-x^2+x^4", &xy).multiply(&MultiPoly::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn multiply_rejects_mismatched_vars() {
        let err = MultiPoly::one(2).multiply(&MultiPoly::one(3)).unwrap_err();
        assert_eq!(err, Error::VarCountMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn degree_is_additive_and_zero_has_none() {
        let xy = ["x", "y"];
        let a = p("x*y + 3", &xy);
        let b = p("y^3 - x", &xy);
        assert_eq!(a.multiply(&b).unwrap().total_degree(), Some(5));
        assert_eq!(MultiPoly::zero(2).total_degree(), None);
        assert_eq!(MultiPoly::one(2).total_degree(), Some(0));
    }

    #[test]
    fn partial_derivative_examples() {
        let xy = ["x", "y"];
        assert_eq!(p("x^4", &xy).partial_derivative(0).unwrap(), p("4*x^3", &xy));
        assert_eq!(p("2*y - x^2 + x^4", &xy).partial_derivative(1).unwrap(), p("2", &xy));
        assert!(p("7/3", &xy).partial_derivative(0).unwrap().is_zero());
        assert_eq!(
            p("x", &xy).partial_derivative(2).unwrap_err(),
            Error::IndexOutOfRange { index: 2, nvars: 2 }
        );
    }

    #[test]
    fn evaluate_examples() {
        let xy = ["x", "y"];
        let zero = [int(0), int(0)];
        assert_eq!(p("2*y - x^2 + x^4", &xy).evaluate(&zero).unwrap(), int(0));
        assert_eq!(
            p("x^2 + y^2", &xy).evaluate(&[ratio(1, 2), ratio(1, 2)]).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(p("24", &xy).evaluate(&zero).unwrap(), int(24));
        assert_eq!(
            p("x", &xy).evaluate(&[int(1)]).unwrap_err(),
            Error::PointLength { expected: 2, found: 1 }
        );
    }

    #[test]
    fn printer_is_graded_lex_descending() {
        let xy = ["x", "y"];
        let q = p("2*y - x^2 + x^4", &xy);
        assert_eq!(q.to_string_with(&xy), "x^4 - x^2 + 2*y");
        assert_eq!(p("-1/2*x*y + 1 - y", &xy).to_string_with(&xy), "-1/2*x*y - y + 1");
        assert_eq!(MultiPoly::zero(2).to_string_with(&xy), "0");
        assert_eq!(p("-3", &xy).to_string_with(&xy), "-3");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let xy = ["x", "y"];
        let a = p("x - 2*y + 1/3", &xy);
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert_eq!(a.pow(0), MultiPoly::one(2));
    }

    #[test]
    fn extend_vars_appends_new_variables() {
        let q = p("x^2 + 3", &["x"]).extend_vars(2);
        assert_eq!(q.nvars(), 3);
        assert_eq!(q, p("x^2 + 3", &["x", "a", "b"]));
    }
}
