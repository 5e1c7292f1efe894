//! Lie derivatives along polynomial vector fields and Lie brackets.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// `ξ = ξ_1 ∂/∂x_1 + … + ξ_n ∂/∂x_n` with polynomial components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    components: Vec<MultiPoly>,
}

impl PolyVectorField {
    /// Builds a field from one component per variable; every component must
    /// live in exactly `components.len()` variables.
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.nvars() != n {
                return Err(Error::VarCountMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(nvars: usize) -> Self {
        PolyVectorField {
            components: vec![MultiPoly::zero(nvars); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Maximum total degree over the components, 0 for the zero field.
    pub fn coeff_degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool> {
        Ok(self.evaluate(point)?.iter().all(Zero::is_zero))
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.check_same(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(PolyVectorField { components })
    }

    fn check_same(&self, other: &PolyVectorField) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarCountMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    /// `ξP = Σ ξ_i ∂P/∂x_i`.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        lie_derivative(self, p)
    }
}

pub fn lie_derivative(xi: &PolyVectorField, p: &MultiPoly) -> Result<MultiPoly> {
    if p.nvars() != xi.nvars() {
        return Err(Error::VarCountMismatch {
            expected: xi.nvars(),
            found: p.nvars(),
        });
    }
    let mut acc = MultiPoly::zero(p.nvars());
    for (i, comp) in xi.components.iter().enumerate() {
        if comp.is_zero() {
            continue;
        }
        let d = p.partial_derivative(i)?;
        if d.is_zero() {
            continue;
        }
        acc = &acc + &(comp * &d);
    }
    Ok(acc)
}

/// Lazily extended chain `P, ξP, ξ²P, …`; entries are computed once and
/// cached, so increasing prefixes cost only the new derivatives.
#[derive(Debug, Clone)]
pub struct LieChain {
    field: PolyVectorField,
    chain: Vec<MultiPoly>,
}

impl LieChain {
    pub fn new(field: PolyVectorField, p: MultiPoly) -> Result<Self> {
        if p.nvars() != field.nvars() {
            return Err(Error::VarCountMismatch {
                expected: field.nvars(),
                found: p.nvars(),
            });
        }
        Ok(LieChain { field, chain: vec![p] })
    }

    /// `ξ^k P`.
    pub fn get(&mut self, k: usize) -> &MultiPoly {
        while self.chain.len() <= k {
            let last = self.chain.last().expect("chain starts with P");
            // shapes were checked in `new`
            let next = lie_derivative(&self.field, last).expect("matching nvars");
            self.chain.push(next);
        }
        &self.chain[k]
    }

    pub fn computed(&self) -> &[MultiPoly] {
        &self.chain
    }
}

/// `[P, ξP, …, ξ^{kmax}P]`.
pub fn iterated_lie_chain(xi: &PolyVectorField, p: &MultiPoly, kmax: usize) -> Result<Vec<MultiPoly>> {
    let mut chain = LieChain::new(xi.clone(), p.clone())?;
    chain.get(kmax);
    Ok(chain.chain)
}

/// `[a, b]` with components `a(b_i) − b(a_i)`.
pub fn lie_bracket(a: &PolyVectorField, b: &PolyVectorField) -> Result<PolyVectorField> {
    a.check_same(b)?;
    let components = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(ai, bi)| Ok(&lie_derivative(a, bi)? - &lie_derivative(b, ai)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyVectorField { components })
}
