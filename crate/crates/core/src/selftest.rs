//! Runtime self-verification: golden examples plus randomized invariant
//! checks, reported as pass/fail counts per check.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_thm3, bound_thm5, bound_thm6, bound_thm7, Eq8Grouping};
use crate::lie::{iterated_lie_chain, lie_bracket, lie_derivative, PolyVectorField};
use crate::noetherian::{noetherian_multiplicity, NoetherianChain, NoetherianField};
use crate::nonholonomy::{degree_of_nonholonomy, VectorFieldSystem};
use crate::parse::parse_with_names;
use crate::poly::MultiPoly;
use crate::random::{random_field, random_instance, random_poly, small_rational};
use crate::rational::{factorial, Rational};
use crate::series::compose_with_series;
use crate::trajectory::{
    expand_trajectory, multiplicity, multiplicity_lie, multiplicity_series, MethodChoice, MultiplicityOptions,
    MultiplicityStatus, OdeSystem,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// First failure message, if any.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTestReport {
    pub checks: Vec<CheckOutcome>,
}

impl SelfTestReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

struct Tally {
    outcome: CheckOutcome,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            outcome: CheckOutcome {
                name,
                passed: 0,
                failed: 0,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, r: Result<(), String>) {
        match r {
            Ok(()) => self.outcome.passed += 1,
            Err(msg) => {
                self.outcome.failed += 1;
                self.outcome.first_failure.get_or_insert(msg);
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(text: &str, vars: &[&str]) -> Result<MultiPoly, String> {
    parse_with_names(text, vars).map_err(|e| e.to_string())
}

fn f(exprs: &[&str], vars: &[&str]) -> Result<PolyVectorField, String> {
    let comps = exprs.iter().map(|e| p(e, vars)).collect::<Result<Vec<_>, _>>()?;
    PolyVectorField::new(comps).map_err(|e| e.to_string())
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Runs every check. `instances` random instances are drawn for each
/// randomized property from a generator seeded with `seed`.
pub fn run(seed: u64, instances: usize) -> SelfTestReport {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut golden = Tally::new("golden examples");
    for r in golden_examples() {
        golden.record(r);
    }
    checks.push(golden.outcome);

    let mut ring = Tally::new("ring axioms");
    let mut deriv = Tally::new("mixed partials commute");
    let mut eval = Tally::new("evaluation is multiplicative");
    for _ in 0..instances {
        let n = 3;
        let a = random_poly(&mut rng, n, 3, 4);
        let b = random_poly(&mut rng, n, 3, 4);
        let c = random_poly(&mut rng, n, 3, 4);
        ring.record(ensure(
            &a * &b == &b * &a
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &(&a + &b) + &c == &a + &(&b + &c),
            || format!("ring axiom failed for {a}, {b}, {c}"),
        ));
        let ij = a.partial_derivative(0).and_then(|d| d.partial_derivative(2));
        let ji = a.partial_derivative(2).and_then(|d| d.partial_derivative(0));
        deriv.record(ensure(ij == ji, || format!("mixed partials differ for {a}")));
        let point: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng)).collect();
        eval.record((|| {
            let lhs = (&a * &b).evaluate(&point).map_err(|e| e.to_string())?;
            let rhs = a.evaluate(&point).map_err(|e| e.to_string())? * b.evaluate(&point).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("evaluate not multiplicative for {a}, {b}"))
        })());
    }
    checks.extend([ring.outcome, deriv.outcome, eval.outcome]);

    let mut leibniz = Tally::new("Leibniz rule");
    let mut jacobi = Tally::new("Jacobi identity and antisymmetry");
    for _ in 0..instances {
        let n = 3;
        let xi = random_field(&mut rng, n, 2, 3);
        let a = random_poly(&mut rng, n, 3, 3);
        let b = random_poly(&mut rng, n, 3, 3);
        leibniz.record((|| {
            let lhs = lie_derivative(&xi, &(&a * &b)).map_err(|e| e.to_string())?;
            let rhs = &(&a * &lie_derivative(&xi, &b).map_err(|e| e.to_string())?)
                + &(&b * &lie_derivative(&xi, &a).map_err(|e| e.to_string())?);
            ensure(lhs == rhs, || format!("Leibniz failed for {a}, {b}"))
        })());
        let u = random_field(&mut rng, n, 2, 2);
        let v = random_field(&mut rng, n, 2, 2);
        let w = random_field(&mut rng, n, 2, 2);
        jacobi.record((|| {
            let br = |x: &PolyVectorField, y: &PolyVectorField| lie_bracket(x, y).map_err(|e| e.to_string());
            let add = |x: PolyVectorField, y: PolyVectorField| x.add(&y).map_err(|e| e.to_string());
            let sum = add(
                add(br(&u, &br(&v, &w)?)?, br(&v, &br(&w, &u)?)?)?,
                br(&w, &br(&u, &v)?)?,
            )?;
            let anti = add(br(&u, &v)?, br(&v, &u)?)?;
            ensure(sum.is_zero() && anti.is_zero(), || "Jacobi/antisymmetry failed".into())
        })());
    }
    checks.extend([leibniz.outcome, jacobi.outcome]);

    let mut chain_rule = Tally::new("chain-rule coefficient identity");
    let mut equivalence = Tally::new("series and Lie methods agree");
    let mut thm3 = Tally::new("multiplicity within bound");
    let mut growth = Tally::new("Lie chain degree growth");
    for _ in 0..instances {
        let inst = random_instance(&mut rng);
        chain_rule.record(check_chain_rule(&inst.p, &inst.field, 12));
        equivalence.record(check_equivalence(&inst.p, &inst.field, &mut thm3));
        growth.record(check_growth(&inst.p, &inst.field, 6));
    }
    checks.extend([chain_rule.outcome, equivalence.outcome, thm3.outcome, growth.outcome]);

    // With m = 0 and α = 1 the Noetherian bounds are the polynomial ones
    // with q replaced by q + 1; for n = 1 the multiplicity bound has a
    // single term and the two coincide outright.
    let mut consistency = Tally::new("bound degeneration at m = 0");
    for n in 1..=3u64 {
        for pd in (n - 1)..=5 {
            for q in 1..=3 {
                let b6 = bound_thm6(n, 0, pd, q, 1).ok();
                consistency.record(ensure(b6 == bound_thm3(n, pd, q + 1).ok(), || {
                    format!("thm6(n={n}, m=0) differs from thm3 at p={pd}, q={}", q + 1)
                }));
                if n == 1 {
                    consistency.record(ensure(b6 == bound_thm3(n, pd, q).ok(), || {
                        format!("thm6(1, 0) differs from thm3 at p={pd}, q={q}")
                    }));
                }
            }
        }
        for q in 1..=3 {
            for d in 2..=4 {
                let g = Eq8Grouping::ClosedAfterSum;
                consistency.record(ensure(
                    bound_thm7(n, 0, q, 1, d).ok() == bound_thm5(n, q + 1, d, g).ok(),
                    || format!("thm7(n={n}, m=0) differs from thm5 at q={}, d={d}", q + 1),
                ));
            }
        }
    }
    checks.push(consistency.outcome);

    SelfTestReport { checks }
}

/// `k! · [t^k] P(x(t)) = (ξ^k P)(0)` for `k ≤ order`.
pub fn check_chain_rule(p: &MultiPoly, field: &PolyVectorField, order: usize) -> Result<(), String> {
    let sys = OdeSystem::at_origin(field.clone()).map_err(|e| e.to_string())?;
    let traj = expand_trajectory(&sys, order).map_err(|e| e.to_string())?;
    let restricted = compose_with_series(p, &traj, order).map_err(|e| e.to_string())?;
    let chain = iterated_lie_chain(field, p, order).map_err(|e| e.to_string())?;
    let origin = vec![Rational::zero(); field.nvars()];
    for (k, term) in chain.iter().enumerate() {
        let lhs = restricted.coeff(k) * Rational::from_integer(factorial(k).into());
        let rhs = term.evaluate(&origin).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("order {k}: {lhs} != {rhs} for P = {p}"));
        }
    }
    Ok(())
}

fn check_equivalence(p: &MultiPoly, field: &PolyVectorField, thm3: &mut Tally) -> Result<(), String> {
    let sys = OdeSystem::at_origin(field.clone()).map_err(|e| e.to_string())?;
    let cap = 64;
    let s = multiplicity_series(p, &sys, cap).map_err(|e| e.to_string())?;
    let origin = vec![Rational::zero(); field.nvars()];
    let l = multiplicity_lie(p, field, &origin, cap).map_err(|e| e.to_string())?;
    let n = field.nvars() as u64;
    if let (MultiplicityStatus::Finite(mu), Some(deg)) = (&s.status, p.total_degree()) {
        let q = u64::from(field.coeff_degree());
        if u64::from(deg) + 1 >= n && q >= 1 {
            let bound = bound_thm3(n, deg.into(), q).map_err(|e| e.to_string())?;
            thm3.record(ensure(BigUint::from(*mu) <= bound, || {
                format!("μ = {mu} exceeds {bound}")
            }));
        }
    }
    ensure(s.status == l.status, || {
        format!("series {:?} vs Lie {:?} for P = {p}", s.status, l.status)
    })
}

fn check_growth(p: &MultiPoly, field: &PolyVectorField, kmax: usize) -> Result<(), String> {
    let q = field.coeff_degree();
    let Some(pd) = p.total_degree() else {
        return Ok(());
    };
    if q == 0 {
        return Ok(());
    }
    let chain = iterated_lie_chain(field, p, kmax).map_err(|e| e.to_string())?;
    for (k, term) in chain.iter().enumerate() {
        if let Some(d) = term.total_degree() {
            let limit = pd as usize + k * (q as usize - 1);
            if d as usize > limit {
                return Err(format!("deg ξ^{k}P = {d} > {limit}"));
            }
        }
    }
    Ok(())
}

fn golden_examples() -> Vec<Result<(), String>> {
    let xy = ["x", "y"];
    let xyz = ["x", "y", "z"];
    let mut out = Vec::new();

    out.push((|| {
        let field = f(&["1", "x"], &xy)?;
        let poly = p("2*y - x^2 + x^4", &xy)?;
        let sys = OdeSystem::at_origin(field.clone()).map_err(|e| e.to_string())?;
        let r = multiplicity(&poly, &sys, &MultiplicityOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.status == MultiplicityStatus::Finite(4), || {
            format!("example A: {:?}", r.status)
        })?;
        let chain = iterated_lie_chain(&field, &poly, 4).map_err(|e| e.to_string())?;
        let origin = [Rational::zero(), Rational::zero()];
        let values: Vec<Rational> = chain.iter().map(|c| c.evaluate(&origin).unwrap()).collect();
        let expected: Vec<Rational> = [0, 0, 0, 0, 24]
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        ensure(values == expected, || format!("example A chain values {values:?}"))
    })());

    out.push((|| {
        let sys = OdeSystem::at_origin(f(&["1", "x"], &xy)?).map_err(|e| e.to_string())?;
        let r =
            multiplicity(&p("y - 1/2*x^2", &xy)?, &sys, &MultiplicityOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.status == MultiplicityStatus::IdenticallyZero(big(256)), || {
            format!("{:?}", r.status)
        })
    })());

    out.push((|| {
        let xt = ["x", "t"];
        let sys = OdeSystem::rational(vec![p("1 + t", &xt)?], vec![p("1", &xt)?], vec![Rational::zero()])
            .map_err(|e| e.to_string())?;
        let r = multiplicity(&p("x - t + 1/2*t^2", &xt)?, &sys, &MultiplicityOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(r.status == MultiplicityStatus::Finite(3), || {
            format!("log system: {:?}", r.status)
        })
    })());

    out.push((|| {
        let xf = ["x", "f"];
        let chain = NoetherianChain::new(1, vec![vec![p("f", &xf)?]], vec![Rational::from_integer(1.into())])
            .map_err(|e| e.to_string())?;
        let nf = NoetherianField::new(chain, vec![p("1", &xf)?]).map_err(|e| e.to_string())?;
        let opts = MultiplicityOptions {
            method: MethodChoice::Both,
            ..Default::default()
        };
        let x0 = [Rational::zero()];
        let a = noetherian_multiplicity(&p("f - 1 - x", &xf)?, &nf, &x0, &opts).map_err(|e| e.to_string())?;
        let b = noetherian_multiplicity(&p("f - 1 - x - 1/2*x^2 - 1/6*x^3", &xf)?, &nf, &x0, &opts)
            .map_err(|e| e.to_string())?;
        ensure(
            a.status == MultiplicityStatus::Finite(2) && b.status == MultiplicityStatus::Finite(4),
            || format!("exp chain: {:?}, {:?}", a.status, b.status),
        )
    })());

    out.push((|| {
        let g = Eq8Grouping::default();
        let got = [
            bound_thm3(2, 2, 2),
            bound_thm3(2, 4, 1),
            bound_thm3(1, 3, 1),
            bound_thm5(1, 1, 2, g),
            bound_thm5(2, 1, 2, g),
            bound_thm5(3, 1, 3, g),
            bound_thm6(1, 1, 1, 1, 1),
            bound_thm6(1, 1, 2, 1, 1),
            bound_thm7(1, 1, 1, 1, 2),
            bound_thm7(1, 0, 1, 1, 2),
            bound_thm7(1, 1, 1, 1, 3),
        ];
        let want = [776u64, 4096, 18, 9, 777, 2_124_066, 136, 776, 12_417, 33, 112_770];
        for (g, w) in got.iter().zip(want) {
            ensure(g.as_ref().ok() == Some(&big(w)), || format!("bound {g:?} != {w}"))?;
        }
        Ok(())
    })());

    let nonholonomy = |fields: &[&[&str]], vars: &[&str], max: usize| -> Result<(usize, usize, bool), String> {
        let fs = fields.iter().map(|c| f(c, vars)).collect::<Result<Vec<_>, _>>()?;
        let sys = VectorFieldSystem::new(fs).map_err(|e| e.to_string())?;
        let origin = vec![Rational::zero(); vars.len()];
        let r = degree_of_nonholonomy(&sys, &origin, max).map_err(|e| e.to_string())?;
        Ok((r.d, r.degree, r.certified))
    };
    out.push(
        nonholonomy(&[&["1", "0", "0"], &["0", "1", "x"]], &xyz, 3)
            .and_then(|r| ensure(r == (3, 2, true), || format!("Heisenberg: {r:?}"))),
    );
    out.push(
        nonholonomy(&[&["1", "0"], &["0", "x"]], &xy, 3)
            .and_then(|r| ensure(r == (2, 2, true), || format!("Grushin: {r:?}"))),
    );
    out.push(
        nonholonomy(&[&["1", "0"], &["0", "1"]], &xy, 3)
            .and_then(|r| ensure(r == (2, 1, true), || format!("commuting: {r:?}"))),
    );
    out
}
