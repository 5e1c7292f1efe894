//! Power-series trajectories of polynomial ODEs and the multiplicity of a
//! polynomial restricted to them.
//!
//! Two independent routes compute the multiplicity `μ`:
//!
//! * **series**: expand the trajectory `x(t)` exactly, compose `P(x(t))`
//!   and read off the first nonzero coefficient;
//! * **Lie chain**: `μ = min{k : (ξ^k P)(x0) ≠ 0}`, since
//!   `d^k/dt^k P(x(t))|_{t=0} = (ξ^k P)(x0)`.
//!
//! If neither finds a nonzero coefficient up to the explicit multiplicity
//! bound `B`, the restriction vanishes identically.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::bound_thm3;
use crate::error::{Error, Result};
use crate::lie::{LieChain, PolyVectorField};
use crate::poly::MultiPoly;
use crate::rational::{factorial, Rational};
use crate::series::{compose_with_series, TruncSeries};
use crate::taylor::TaylorTape;

/// Number of leading coefficients of `P(x(t))` kept in results.
pub const PREFIX_LEN: usize = 16;

/// Default highest coefficient index examined without `certify`.
pub const DEFAULT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OdeKind {
    /// `dx/dt = ξ(x)`.
    Autonomous(PolyVectorField),
    /// `S_i(x, t) dx_i/dt = Q_i(x, t)`; polynomials live in `n + 1`
    /// variables with `t` last.
    NonAutonomousRational { s: Vec<MultiPoly>, q: Vec<MultiPoly> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeSystem {
    kind: OdeKind,
    basepoint: Vec<Rational>,
}

impl OdeSystem {
    pub fn autonomous(field: PolyVectorField, basepoint: Vec<Rational>) -> Result<Self> {
        if basepoint.len() != field.nvars() {
            return Err(Error::PointLength {
                expected: field.nvars(),
                found: basepoint.len(),
            });
        }
        if field.vanishes_at(&basepoint)? {
            return Err(Error::FieldVanishesAtBasepoint);
        }
        Ok(OdeSystem {
            kind: OdeKind::Autonomous(field),
            basepoint,
        })
    }

    /// Autonomous system based at the origin.
    pub fn at_origin(field: PolyVectorField) -> Result<Self> {
        let n = field.nvars();
        Self::autonomous(field, vec![Rational::zero(); n])
    }

    pub fn rational(s: Vec<MultiPoly>, q: Vec<MultiPoly>, basepoint: Vec<Rational>) -> Result<Self> {
        let n = basepoint.len();
        if s.len() != n || q.len() != n {
            return Err(Error::Shape(format!(
                "rational system needs {n} S and Q entries, got {} and {}",
                s.len(),
                q.len()
            )));
        }
        for p in s.iter().chain(&q) {
            if p.nvars() != n + 1 {
                return Err(Error::VarCountMismatch {
                    expected: n + 1,
                    found: p.nvars(),
                });
            }
        }
        let mut at = basepoint.clone();
        at.push(Rational::zero());
        for (index, si) in s.iter().enumerate() {
            if si.evaluate(&at)?.is_zero() {
                return Err(Error::LeadingCoefficientVanishes { index: index + 1 });
            }
        }
        Ok(OdeSystem {
            kind: OdeKind::NonAutonomousRational { s, q },
            basepoint,
        })
    }

    pub fn kind(&self) -> &OdeKind {
        &self.kind
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    /// Dimension `n` of the state `x`.
    pub fn dim(&self) -> usize {
        self.basepoint.len()
    }

    fn has_time(&self) -> bool {
        matches!(self.kind, OdeKind::NonAutonomousRational { .. })
    }

    /// Number of variables a restricted polynomial lives in: `n`, or `n + 1`
    /// when `t` is adjoined.
    pub fn poly_nvars(&self) -> usize {
        self.dim() + usize::from(self.has_time())
    }

    /// A polynomial vector field on the `poly_nvars()` variables whose
    /// trajectory through [`Self::polynomial_basepoint`] traces the same curve.
    ///
    /// For a rational system this is `η = (Q_i Π_{j≠i} S_j, Π_j S_j)`, a
    /// reparametrization with nonzero speed at the basepoint, so
    /// multiplicities agree.
    pub fn polynomial_field(&self) -> PolyVectorField {
        match &self.kind {
            OdeKind::Autonomous(f) => f.clone(),
            OdeKind::NonAutonomousRational { s, q } => {
                let nv = self.dim() + 1;
                let prod_except = |skip: Option<usize>| {
                    s.iter()
                        .enumerate()
                        .filter(|(j, _)| Some(*j) != skip)
                        .fold(MultiPoly::one(nv), |acc, (_, sj)| &acc * sj)
                };
                let mut comps: Vec<MultiPoly> =
                    q.iter().enumerate().map(|(i, qi)| qi * &prod_except(Some(i))).collect();
                comps.push(prod_except(None));
                PolyVectorField::new(comps).expect("shapes checked at construction")
            }
        }
    }

    pub fn polynomial_basepoint(&self) -> Vec<Rational> {
        let mut at = self.basepoint.clone();
        if self.has_time() {
            at.push(Rational::zero());
        }
        at
    }
}

/// Exact Taylor coefficients `0..=order` of the trajectory through the
/// basepoint, one series per state variable.
///
/// Coefficient `k + 1` is obtained from coefficients `0..=k` through the
/// ODE itself, so every returned coefficient is exact.
pub fn expand_trajectory(sys: &OdeSystem, order: usize) -> Result<Vec<TruncSeries>> {
    let n = sys.dim();
    let mut xs: Vec<Vec<Rational>> = sys.basepoint.iter().map(|c| vec![c.clone()]).collect();
    match &sys.kind {
        OdeKind::Autonomous(field) => {
            let comps: Vec<&MultiPoly> = field.components().iter().collect();
            let mut tape = TaylorTape::new(n, &comps);
            for k in 0..order {
                let current: Vec<Rational> = xs.iter().map(|x| x[k].clone()).collect();
                let rhs = tape.advance(&current);
                let denom = Rational::from_integer((k + 1).into());
                for (x, r) in xs.iter_mut().zip(rhs) {
                    x.push(r / &denom);
                }
            }
        }
        OdeKind::NonAutonomousRational { s, q } => {
            let polys: Vec<&MultiPoly> = s.iter().chain(q).collect();
            let mut tape = TaylorTape::new(n + 1, &polys);
            let mut s_hist: Vec<Vec<Rational>> = vec![Vec::new(); n];
            let mut du: Vec<Vec<Rational>> = vec![Vec::new(); n];
            for k in 0..order {
                let mut current: Vec<Rational> = xs.iter().map(|x| x[k].clone()).collect();
                current.push(time_coeff(k));
                let vals = tape.advance(&current);
                let denom = Rational::from_integer((k + 1).into());
                for i in 0..n {
                    s_hist[i].push(vals[i].clone());
                    // S_i · x_i' = Q_i, solved for coefficient k of x_i'
                    let mut rhs = vals[n + i].clone();
                    for j in 1..=k {
                        let sj = &s_hist[i][j];
                        if !sj.is_zero() {
                            rhs -= sj * &du[i][k - j];
                        }
                    }
                    let uk = rhs / &s_hist[i][0];
                    xs[i].push(&uk / &denom);
                    du[i].push(uk);
                }
            }
        }
    }
    Ok(xs.into_iter().map(TruncSeries::new).collect())
}

fn time_coeff(k: usize) -> Rational {
    if k == 1 {
        Rational::from_integer(1.into())
    } else {
        Rational::zero()
    }
}

/// Trajectory series in the variables a restricted polynomial lives in
/// (with `t` appended for rational systems).
pub fn trajectory_in_poly_vars(sys: &OdeSystem, order: usize) -> Result<Vec<TruncSeries>> {
    let mut series = expand_trajectory(sys, order)?;
    if sys.has_time() {
        series.push(TruncSeries::t(order));
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplicityStatus {
    Finite(usize),
    /// Certified by vanishing through the given bound, or by an identically
    /// zero Lie derivative.
    IdenticallyZero(BigUint),
    /// No nonzero coefficient through this index, which is below the bound.
    Inconclusive(usize),
}

impl MultiplicityStatus {
    pub fn mu(&self) -> Option<usize> {
        match self {
            MultiplicityStatus::Finite(mu) => Some(*mu),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicityMethod {
    SeriesComposition,
    LieChain,
    CrossChecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    Series,
    Lie,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityOptions {
    /// Highest coefficient index examined when the bound exceeds it.
    pub cap: usize,
    pub method: MethodChoice,
    /// Explore all the way to the bound regardless of `cap`.
    pub certify: bool,
}

impl Default for MultiplicityOptions {
    fn default() -> Self {
        MultiplicityOptions {
            cap: DEFAULT_CAP,
            method: MethodChoice::Both,
            certify: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub status: MultiplicityStatus,
    pub method: MultiplicityMethod,
    pub bound_used: Option<BigUint>,
    /// Leading Taylor coefficients of `P(x(t))` that were computed (at most
    /// [`PREFIX_LEN`]).
    pub prefix: Vec<Rational>,
}

/// Multiplicity bound for `P` on the system's trajectory, from the
/// polynomial field of [`OdeSystem::polynomial_field`].
///
/// The bound holds for degrees "not exceeding" `p ≥ N − 1` and `q ≥ 1`, so
/// smaller actual degrees are raised to those minima.
pub fn certification_bound(p: &MultiPoly, sys: &OdeSystem) -> Result<BigUint> {
    let field = sys.polynomial_field();
    let dim = field.nvars() as u64;
    let pdeg = u64::from(p.total_degree().unwrap_or(0)).max(dim.saturating_sub(1));
    let qdeg = u64::from(field.coeff_degree()).max(1);
    bound_thm3(dim, pdeg, qdeg)
}

struct Limit {
    /// Highest index examined.
    last: usize,
    /// Whether `last` reaches the certification bound.
    certifies: bool,
}

fn search_limit(bound: &BigUint, cap: usize, certify: bool) -> Result<Limit> {
    let b = bound.to_usize();
    match (b, certify) {
        (Some(b), true) => Ok(Limit {
            last: b,
            certifies: true,
        }),
        (None, true) => Err(Error::BoundTooLarge(bound.to_string())),
        (Some(b), false) if b <= cap => Ok(Limit {
            last: b,
            certifies: true,
        }),
        _ => Ok(Limit {
            last: cap,
            certifies: false,
        }),
    }
}

fn check_poly(p: &MultiPoly, nvars: usize) -> Result<()> {
    if p.nvars() != nvars {
        return Err(Error::VarCountMismatch {
            expected: nvars,
            found: p.nvars(),
        });
    }
    Ok(())
}

fn series_route(p: &MultiPoly, sys: &OdeSystem, bound: &BigUint, limit: &Limit) -> Result<MultiplicityResult> {
    check_poly(p, sys.poly_nvars())?;
    let done = |status, prefix| MultiplicityResult {
        status,
        method: MultiplicityMethod::SeriesComposition,
        bound_used: Some(bound.clone()),
        prefix,
    };
    if p.is_zero() {
        return Ok(done(MultiplicityStatus::IdenticallyZero(bound.clone()), Vec::new()));
    }
    let mut order = limit.last.min(PREFIX_LEN);
    loop {
        let traj = trajectory_in_poly_vars(sys, order)?;
        let restricted = compose_with_series(p, &traj, order)?;
        let prefix: Vec<Rational> = restricted.coeffs().iter().take(PREFIX_LEN).cloned().collect();
        if let Some(mu) = restricted.valuation() {
            return Ok(done(MultiplicityStatus::Finite(mu), prefix));
        }
        if order >= limit.last {
            let status = if limit.certifies || annihilated(p, sys, limit.last) {
                MultiplicityStatus::IdenticallyZero(bound.clone())
            } else {
                MultiplicityStatus::Inconclusive(limit.last)
            };
            return Ok(done(status, prefix));
        }
        order = (order * 2).min(limit.last);
    }
}

/// Coefficients `0..=last` are known to vanish. If some `ξ^k P` with
/// `k ≤ last` is the zero polynomial, every later coefficient is
/// `(ξ^k P)(x0) / k! = 0` as well.
fn annihilated(p: &MultiPoly, sys: &OdeSystem, last: usize) -> bool {
    let Ok(mut chain) = LieChain::new(sys.polynomial_field(), p.clone()) else {
        return false;
    };
    (0..=last).any(|k| chain.get(k).is_zero())
}

fn lie_route(
    p: &MultiPoly,
    xi: &PolyVectorField,
    x0: &[Rational],
    bound: &BigUint,
    limit: &Limit,
) -> Result<MultiplicityResult> {
    check_poly(p, xi.nvars())?;
    if xi.vanishes_at(x0)? {
        return Err(Error::FieldVanishesAtBasepoint);
    }
    let done = |status, prefix| MultiplicityResult {
        status,
        method: MultiplicityMethod::LieChain,
        bound_used: Some(bound.clone()),
        prefix,
    };
    let mut chain = LieChain::new(xi.clone(), p.clone())?;
    let mut prefix = Vec::new();
    for k in 0..=limit.last {
        let term = chain.get(k);
        if term.is_zero() {
            // every later derivative vanishes too
            return Ok(done(MultiplicityStatus::IdenticallyZero(bound.clone()), prefix));
        }
        let value = term.evaluate(x0)?;
        if k < PREFIX_LEN {
            prefix.push(&value / Rational::from_integer(factorial(k).into()));
        }
        if !value.is_zero() {
            return Ok(done(MultiplicityStatus::Finite(k), prefix));
        }
    }
    let status = if limit.certifies {
        MultiplicityStatus::IdenticallyZero(bound.clone())
    } else {
        MultiplicityStatus::Inconclusive(limit.last)
    };
    Ok(done(status, prefix))
}

/// Multiplicity by trajectory expansion and composition, examining
/// coefficients up to `min(cap, B)`.
pub fn multiplicity_series(p: &MultiPoly, sys: &OdeSystem, cap: usize) -> Result<MultiplicityResult> {
    let bound = certification_bound(p, sys)?;
    series_route(p, sys, &bound, &search_limit(&bound, cap, false)?)
}

/// Multiplicity from the values `(ξ^k P)(x0)`, examining `k ≤ min(cap, B)`.
pub fn multiplicity_lie(
    p: &MultiPoly,
    xi: &PolyVectorField,
    x0: &[Rational],
    cap: usize,
) -> Result<MultiplicityResult> {
    let sys = OdeSystem::autonomous(xi.clone(), x0.to_vec())?;
    let bound = certification_bound(p, &sys)?;
    lie_route(p, xi, x0, &bound, &search_limit(&bound, cap, false)?)
}

/// Dispatches to the requested method(s). With [`MethodChoice::Both`] the
/// two routes must agree, otherwise [`Error::MethodMismatch`] is returned.
pub fn multiplicity(p: &MultiPoly, sys: &OdeSystem, opts: &MultiplicityOptions) -> Result<MultiplicityResult> {
    let bound = certification_bound(p, sys)?;
    multiplicity_with_bound(p, sys, opts, bound)
}

/// As [`multiplicity`], with an externally supplied certification bound.
pub fn multiplicity_with_bound(
    p: &MultiPoly,
    sys: &OdeSystem,
    opts: &MultiplicityOptions,
    bound: BigUint,
) -> Result<MultiplicityResult> {
    check_poly(p, sys.poly_nvars())?;
    let limit = search_limit(&bound, opts.cap, opts.certify)?;
    let lie = || {
        let field = sys.polynomial_field();
        let mut r = lie_route(p, &field, &sys.polynomial_basepoint(), &bound, &limit)?;
        if sys.has_time() {
            // coefficients along η are in a different time parametrization
            r.prefix.clear();
        }
        Ok::<_, Error>(r)
    };
    match opts.method {
        MethodChoice::Series => series_route(p, sys, &bound, &limit),
        MethodChoice::Lie => lie(),
        MethodChoice::Both => {
            let s = series_route(p, sys, &bound, &limit)?;
            let l = lie()?;
            cross_check(s, l)
        }
    }
}

fn cross_check(series: MultiplicityResult, lie: MultiplicityResult) -> Result<MultiplicityResult> {
    use MultiplicityStatus::*;
    let status = match (&series.status, &lie.status) {
        (a, b) if a == b => a.clone(),
        (Inconclusive(_), IdenticallyZero(b)) => IdenticallyZero(b.clone()),
        _ => {
            return Err(Error::MethodMismatch {
                series: format!("{:?}", series.status),
                lie: format!("{:?}", lie.status),
            })
        }
    };
    let common = series.prefix.len().min(lie.prefix.len());
    if series.prefix[..common] != lie.prefix[..common] {
        return Err(Error::MethodMismatch {
            series: format!("prefix {:?}", &series.prefix[..common]),
            lie: format!("prefix {:?}", &lie.prefix[..common]),
        });
    }
    Ok(MultiplicityResult {
        status,
        method: MultiplicityMethod::CrossChecked,
        bound_used: series.bound_used,
        prefix: series.prefix,
    })
}
