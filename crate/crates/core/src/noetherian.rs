//! Noetherian chains and vector fields with Noetherian coefficients.
//!
//! A chain `f = (f_1, …, f_m)` with `∂f_i/∂x_j = g_ij(x, f)` is handled by
//! adjoining `f` as `m` extra variables: along any curve, `f_i' = Σ_j
//! g_ij · x_j'`, so a field with coefficients `Q_j(x, f)` lifts to the
//! polynomial field `(Q_1, …, Q_n, Σ_j g_1j Q_j, …, Σ_j g_mj Q_j)` on
//! `n + m` variables. Multiplicity and nonholonomy questions then go to the
//! polynomial machinery.
//!
//! Integrability of the chain (symmetry of mixed partials) is not checked.

use num_bigint::BigUint;

use crate::bounds::{bound_thm5, bound_thm6, bound_thm7, Eq8Grouping};
use crate::error::{Error, Result};
use crate::lie::PolyVectorField;
use crate::nonholonomy::{degree_of_nonholonomy_with_threshold, NonholonomyResult, VectorFieldSystem};
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::trajectory::{multiplicity_with_bound, MultiplicityOptions, MultiplicityResult, OdeSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherianChain {
    n: usize,
    /// `g[i][j] = ∂f_i/∂x_j` as a polynomial in `(x, f)`.
    g: Vec<Vec<MultiPoly>>,
    /// Germ values `f(x0)` at the basepoint.
    f0: Vec<Rational>,
}

impl NoetherianChain {
    pub fn new(n: usize, g: Vec<Vec<MultiPoly>>, f0: Vec<Rational>) -> Result<Self> {
        let m = g.len();
        if f0.len() != m {
            return Err(Error::Shape(format!(
                "chain has {m} functions but {} germ values",
                f0.len()
            )));
        }
        for row in &g {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "each chain row needs {n} partials, got {}",
                    row.len()
                )));
            }
            for gij in row {
                if gij.nvars() != n + m {
                    return Err(Error::VarCountMismatch {
                        expected: n + m,
                        found: gij.nvars(),
                    });
                }
            }
        }
        Ok(NoetherianChain { n, g, f0 })
    }

    /// The empty chain on `n` variables.
    pub fn empty(n: usize) -> Self {
        NoetherianChain {
            n,
            g: Vec::new(),
            f0: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[Vec<MultiPoly>] {
        &self.g
    }

    pub fn f0(&self) -> &[Rational] {
        &self.f0
    }

    /// Chain degree `α`: the largest degree of a `g_ij`, at least 1.
    pub fn alpha(&self) -> u32 {
        self.g
            .iter()
            .flatten()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0)
            .max(1)
    }

    /// `(x0, f0)` in the augmented space.
    pub fn augmented_basepoint(&self, x0: &[Rational]) -> Result<Vec<Rational>> {
        if x0.len() != self.n {
            return Err(Error::PointLength {
                expected: self.n,
                found: x0.len(),
            });
        }
        Ok(x0.iter().chain(&self.f0).cloned().collect())
    }

    fn lift(&self, q: &[MultiPoly]) -> Result<PolyVectorField> {
        if q.len() != self.n {
            return Err(Error::Shape(format!(
                "field needs {} coefficients, got {}",
                self.n,
                q.len()
            )));
        }
        let nv = self.n + self.m();
        for qj in q {
            if qj.nvars() != nv {
                return Err(Error::VarCountMismatch {
                    expected: nv,
                    found: qj.nvars(),
                });
            }
        }
        let mut comps = q.to_vec();
        for row in &self.g {
            let fi = row
                .iter()
                .zip(q)
                .fold(MultiPoly::zero(nv), |acc, (gij, qj)| &acc + &(gij * qj));
            comps.push(fi);
        }
        PolyVectorField::new(comps)
    }
}

/// `ξ = Σ_j Q_j(x, f) ∂/∂x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherianField {
    pub chain: NoetherianChain,
    pub q: Vec<MultiPoly>,
}

impl NoetherianField {
    pub fn new(chain: NoetherianChain, q: Vec<MultiPoly>) -> Result<Self> {
        chain.lift(&q)?;
        Ok(NoetherianField { chain, q })
    }

    /// Largest degree of the coefficients `Q_j`, 0 when all vanish.
    pub fn degree(&self) -> u32 {
        self.q.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }
}

pub fn lift_field(nf: &NoetherianField) -> Result<PolyVectorField> {
    nf.chain.lift(&nf.q)
}

/// Lifts each coefficient row `Q_i = (Q_i1, …, Q_in)` to a polynomial field
/// on `n + m` variables.
pub fn lift_system(chain: &NoetherianChain, qs: &[Vec<MultiPoly>]) -> Result<VectorFieldSystem> {
    let fields = qs.iter().map(|q| chain.lift(q)).collect::<Result<Vec<_>>>()?;
    VectorFieldSystem::new(fields)
}

/// Multiplicity bound for a Noetherian function of degree `deg ψ` on a
/// trajectory of `nf`. Degrees are raised to the hypotheses' minima
/// (`p ≥ n + m − 1`, `q ≥ 1`).
pub fn noetherian_bound(psi: &MultiPoly, nf: &NoetherianField) -> Result<BigUint> {
    let n = nf.chain.n() as u64;
    let m = nf.chain.m() as u64;
    let p = u64::from(psi.total_degree().unwrap_or(0)).max((n + m).saturating_sub(1));
    let q = u64::from(nf.degree()).max(1);
    bound_thm6(n, m, p, q, u64::from(nf.chain.alpha()))
}

/// Multiplicity at `x0` of `ψ(x, f(x))` restricted to the trajectory of
/// `nf`, computed on the lifted system from `(x0, f0)`.
pub fn noetherian_multiplicity(
    psi: &MultiPoly,
    nf: &NoetherianField,
    x0: &[Rational],
    opts: &MultiplicityOptions,
) -> Result<MultiplicityResult> {
    let field = lift_field(nf)?;
    let base = nf.chain.augmented_basepoint(x0)?;
    let sys = OdeSystem::autonomous(field, base)?;
    let bound = noetherian_bound(psi, nf)?;
    multiplicity_with_bound(psi, &sys, opts, bound)
}

/// Certification threshold for the lifted system. The Noetherian bound
/// covers integrable chains (span dimension at most `n`); the polynomial
/// bound on `n + m` variables with degree `q + α` covers the lifted system
/// unconditionally.
pub fn noetherian_threshold(chain: &NoetherianChain, q_degree: u32) -> Option<BigUint> {
    let n = chain.n() as u64;
    let m = chain.m() as u64;
    let alpha = u64::from(chain.alpha());
    let q = u64::from(q_degree).max(1);
    let a = bound_thm7(n, m, q, alpha, n.max(2)).ok()?;
    let b = bound_thm5(n + m, q + alpha, (n + m).max(2), Eq8Grouping::default()).ok()?;
    Some(a.max(b))
}

pub fn noetherian_nonholonomy(
    chain: &NoetherianChain,
    qs: &[Vec<MultiPoly>],
    x0: &[Rational],
    max_order: usize,
) -> Result<NonholonomyResult> {
    let lifted = lift_system(chain, qs)?;
    let base = chain.augmented_basepoint(x0)?;
    let q_degree = qs
        .iter()
        .flatten()
        .filter_map(MultiPoly::total_degree)
        .max()
        .unwrap_or(0);
    let threshold = noetherian_threshold(chain, q_degree);
    degree_of_nonholonomy_with_threshold(&lifted, &base, max_order, threshold)
}
