//! Univariate truncated power series in `t` with a tracked exactness order.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// `c_0 + c_1 t + … + c_T t^T + O(t^{T+1})`, every stored coefficient exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Coefficients `c_0..=c_T`; the series is exact to order `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        TruncSeries { coeffs }
    }

    pub fn zero(exact_to: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); exact_to + 1],
        }
    }

    pub fn constant(c: Rational, exact_to: usize) -> Self {
        let mut s = Self::zero(exact_to);
        s.coeffs[0] = c;
        s
    }

    /// The series of `t` itself.
    pub fn t(exact_to: usize) -> Self {
        let mut s = Self::zero(exact_to);
        if exact_to >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn exact_to(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        let order = order.min(self.exact_to());
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.exact_to().min(other.exact_to());
        TruncSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.exact_to().min(other.exact_to());
        TruncSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller exactness order. Zero
    /// coefficients are skipped, which matters for the sparse trajectories
    /// that show up in practice.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.exact_to().min(other.exact_to());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Term-wise derivative; exact one order lower.
    ///
    /// # Panics
    /// If the series is exact only to order 0.
    pub fn derivative(&self) -> TruncSeries {
        assert!(self.exact_to() >= 1, "derivative needs exactness order >= 1");
        TruncSeries {
            coeffs: (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * Rational::from_integer(k.into()))
                .collect(),
        }
    }
}

/// Coefficients `0..=order` of `P(s_1(t), …, s_n(t))`.
///
/// Evaluated by nested Horner schemes over the series ring, one variable per
/// nesting level, with every product truncated at `order`.
pub fn compose_with_series(poly: &MultiPoly, series: &[TruncSeries], order: usize) -> Result<TruncSeries> {
    if series.len() != poly.nvars() {
        return Err(Error::VarCountMismatch {
            expected: poly.nvars(),
            found: series.len(),
        });
    }
    for (index, s) in series.iter().enumerate() {
        if s.exact_to() < order {
            return Err(Error::SeriesTooShort {
                index,
                have: s.exact_to(),
                needed: order,
            });
        }
    }
    let series: Vec<TruncSeries> = series.iter().map(|s| s.truncate(order)).collect();
    let terms: Vec<(&[u32], &Rational)> = poly.terms().map(|(m, c)| (m.exponents(), c)).collect();
    Ok(horner(&terms, 0, &series, order))
}

fn horner(terms: &[(&[u32], &Rational)], var: usize, series: &[TruncSeries], order: usize) -> TruncSeries {
    if var == series.len() {
        let sum = terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + *c);
        return TruncSeries::constant(sum, order);
    }
    let Some(top) = terms.iter().map(|(e, _)| e[var]).max() else {
        return TruncSeries::zero(order);
    };
    let mut acc: Option<TruncSeries> = None;
    for e in (0..=top).rev() {
        if let Some(a) = acc.as_mut() {
            *a = a.mul(&series[var]);
        }
        let slice: Vec<(&[u32], &Rational)> = terms.iter().filter(|(x, _)| x[var] == e).copied().collect();
        if slice.is_empty() {
            continue;
        }
        let inner = horner(&slice, var + 1, series, order);
        acc = Some(match acc {
            Some(a) => a.add(&inner),
            None => inner,
        });
    }
    acc.unwrap_or_else(|| TruncSeries::zero(order))
}
