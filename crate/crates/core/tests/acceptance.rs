//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero when any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use vanish_core::{
    bound_thm3, bound_thm5, bound_thm6, bound_thm7, compose_with_series, degree_of_nonholonomy, expand_trajectory,
    iterated_lie_chain, lift_field, multiplicity, multiplicity_lie, multiplicity_series, noetherian_multiplicity,
    parse_with_names, Eq8Grouping, MethodChoice, MultiPoly, MultiplicityMethod, MultiplicityOptions,
    MultiplicityStatus, NoetherianChain, NoetherianField, OdeSystem, PolyVectorField, Rational, VectorFieldSystem,
};

const INSTANCES: usize = 240;
const SEED: u64 = 0x5eed_acce;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn poly(text: &str, vars: &[&str]) -> MultiPoly {
    parse_with_names(text, vars).unwrap()
}

fn field(comps: &[&str], vars: &[&str]) -> PolyVectorField {
    PolyVectorField::new(comps.iter().map(|c| poly(c, vars)).collect()).unwrap()
}

fn origin(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Instance generator, independent of the library's own.

struct Instance {
    n: usize,
    p: MultiPoly,
    xi: PolyVectorField,
}

fn coefficient(rng: &mut ChaCha20Rng) -> Rational {
    q(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn monomial(rng: &mut ChaCha20Rng, n: usize, deg: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.random_range(0..n)] += 1;
    }
    e
}

fn dense_ish(rng: &mut ChaCha20Rng, n: usize, max_deg: u32, terms: usize, skip_constant: bool) -> MultiPoly {
    let lo = u32::from(skip_constant);
    let t = (0..terms)
        .map(|_| {
            let d = rng.random_range(lo.min(max_deg)..=max_deg);
            (monomial(rng, n, d), coefficient(rng))
        })
        .collect::<Vec<_>>();
    MultiPoly::from_terms(n, t).unwrap()
}

fn instance(rng: &mut ChaCha20Rng) -> Instance {
    let n = rng.random_range(1..=3);
    let qd = rng.random_range(0..=2);
    let mut comps: Vec<MultiPoly> = (0..n)
        .map(|_| {
            let terms = rng.random_range(0..=3);
            dense_ish(rng, n, qd, terms, false)
        })
        .collect();
    let lead = rng.random_range(0..n);
    let mut c = coefficient(rng);
    while c.is_zero() || c == -comps[lead].constant_term() {
        c = coefficient(rng);
    }
    comps[lead] = &comps[lead] + &MultiPoly::constant(n, c);
    let xi = PolyVectorField::new(comps).unwrap();
    // mostly vanishing at the origin, so positive multiplicities show up
    let vanish = rng.random_bool(0.7);
    let terms = rng.random_range(usize::from(vanish)..=5);
    let p = dense_ish(rng, n, 4, terms, vanish);
    Instance { n, p, xi }
}

fn instances() -> Vec<Instance> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    (0..INSTANCES).map(|_| instance(&mut rng)).collect()
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

// Independent bound evaluations.

fn pow(b: u64, e: u64) -> BigUint {
    BigUint::from(b).pow(e as u32)
}

fn oracle_mult(dim: u64, p: u64, step: u64) -> BigUint {
    let s: BigUint = (0..dim).map(|j| pow(p + j * step, 2 * dim)).sum();
    pow(2, 2 * dim - 1) * s
}

fn oracle_thm5_d2(n: u64, q: u64) -> BigUint {
    let s: BigUint = (2..=n + 1).map(|k| pow(k, 2 * n)).sum();
    BigUint::one() + pow(2, 2 * n - 1) * pow(q, 2 * n) * s
}

// Criteria.

fn example_a() -> Outcome {
    let start = Instant::now();
    let xy = ["x", "y"];
    let xi = field(&["1", "x"], &xy);
    let p = poly("2*y - x^2 + x^4", &xy);
    let sys = OdeSystem::at_origin(xi.clone()).unwrap();
    let s = multiplicity_series(&p, &sys, 512).map_err(|e| e.to_string())?;
    let l = multiplicity_lie(&p, &xi, &origin(2), 512).map_err(|e| e.to_string())?;
    let both = multiplicity(&p, &sys, &MultiplicityOptions::default()).map_err(|e| e.to_string())?;
    let values: Vec<Rational> = iterated_lie_chain(&xi, &p, 4)
        .unwrap()
        .iter()
        .map(|c| c.evaluate(&origin(2)).unwrap())
        .collect();
    let elapsed = start.elapsed();
    check(s.status == MultiplicityStatus::Finite(4), || {
        format!("series gave {:?}", s.status)
    })?;
    check(l.status == MultiplicityStatus::Finite(4), || {
        format!("Lie gave {:?}", l.status)
    })?;
    check(
        both.status == MultiplicityStatus::Finite(4) && both.method == MultiplicityMethod::CrossChecked,
        || format!("cross-check gave {:?}/{:?}", both.status, both.method),
    )?;
    check(values == [int(0), int(0), int(0), int(0), int(24)], || {
        format!("chain values {values:?}")
    })?;
    // P(t, t²/2) = t⁴
    check(
        s.prefix[4] == int(1) && s.prefix.iter().enumerate().all(|(k, c)| k == 4 || c.is_zero()),
        || format!("series prefix {:?}", s.prefix),
    )?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "Finite(4) by series, Lie and cross-check; chain (0,0,0,0,24); {elapsed:.2?}"
    ))
}

fn chain_rule(set: &[Instance]) -> Outcome {
    let start = Instant::now();
    let order = 12;
    let mut failures = Vec::new();
    for (i, inst) in set.iter().enumerate() {
        let sys = OdeSystem::at_origin(inst.xi.clone()).unwrap();
        let traj = expand_trajectory(&sys, order).map_err(|e| e.to_string())?;
        let restricted = compose_with_series(&inst.p, &traj, order).map_err(|e| e.to_string())?;
        let chain = iterated_lie_chain(&inst.xi, &inst.p, order).map_err(|e| e.to_string())?;
        for (k, term) in chain.iter().enumerate() {
            if factorial(k) * restricted.coeff(k) != term.evaluate(&origin(inst.n)).unwrap() {
                failures.push(format!("instance {i}, k = {k}"));
            }
        }
    }
    let elapsed = start.elapsed();
    check(failures.is_empty(), || {
        format!("{} failures, first {}", failures.len(), failures[0])
    })?;
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances, k ≤ {order}, 0 failures, {elapsed:.2?}",
        set.len()
    ))
}

fn method_equivalence(set: &[Instance]) -> Outcome {
    let mut counts = [0usize; 3];
    for (i, inst) in set.iter().enumerate() {
        let sys = OdeSystem::at_origin(inst.xi.clone()).unwrap();
        let s = multiplicity_series(&inst.p, &sys, 64).map_err(|e| format!("instance {i}: {e}"))?;
        let l = multiplicity_lie(&inst.p, &inst.xi, &origin(inst.n), 64).map_err(|e| format!("instance {i}: {e}"))?;
        check(s.status == l.status, || {
            format!("instance {i}: series {:?} vs Lie {:?}", s.status, l.status)
        })?;
        counts[match s.status {
            MultiplicityStatus::Finite(_) => 0,
            MultiplicityStatus::IdenticallyZero(_) => 1,
            MultiplicityStatus::Inconclusive(_) => 2,
        }] += 1;
    }
    Ok(format!(
        "{} instances agree (Finite {}, IdenticallyZero {}, Inconclusive {})",
        set.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}

fn theorem3(set: &[Instance]) -> Outcome {
    let mut checked = 0;
    let mut max_mu = 0;
    for (i, inst) in set.iter().enumerate() {
        let (Some(p), qd) = (inst.p.total_degree(), inst.xi.coeff_degree()) else {
            continue;
        };
        let (n, p, qd) = (inst.n as u64, u64::from(p), u64::from(qd));
        if p + 1 < n || qd < 1 {
            continue;
        }
        let sys = OdeSystem::at_origin(inst.xi.clone()).unwrap();
        let r = multiplicity_series(&inst.p, &sys, 64).map_err(|e| e.to_string())?;
        if let MultiplicityStatus::Finite(mu) = r.status {
            let b = bound_thm3(n, p, qd).map_err(|e| e.to_string())?;
            check(b == oracle_mult(n, p, qd - 1), || {
                format!("instance {i}: bound {b} disagrees with oracle")
            })?;
            check(BigUint::from(mu) <= b, || format!("instance {i}: μ = {mu} > {b}"))?;
            checked += 1;
            max_mu = max_mu.max(mu);
        }
    }
    check(checked > 0, || "no eligible instances".into())?;
    Ok(format!("{checked} Finite results within bound, largest μ = {max_mu}"))
}

fn degree_growth(set: &[Instance]) -> Outcome {
    let mut checked = 0;
    for (i, inst) in set.iter().enumerate() {
        let qd = i64::from(inst.xi.coeff_degree());
        let Some(p) = inst.p.total_degree() else { continue };
        if qd < 1 {
            continue;
        }
        let chain = iterated_lie_chain(&inst.xi, &inst.p, 6).map_err(|e| e.to_string())?;
        for (k, term) in chain.iter().enumerate() {
            if let Some(d) = term.total_degree() {
                let limit = i64::from(p) + k as i64 * (qd - 1);
                check(i64::from(d) <= limit, || {
                    format!("instance {i}: deg ξ^{k}P = {d} > {limit}")
                })?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, k ≤ 6"))
}

fn bound_values() -> Outcome {
    let g = Eq8Grouping::default();
    let v = |x: u64| BigUint::from(x);
    let golden = [
        ("thm3(2,2,2)", bound_thm3(2, 2, 2), v(776)),
        ("thm3(2,4,1)", bound_thm3(2, 4, 1), v(4096)),
        ("thm5(1,1,2)", bound_thm5(1, 1, 2, g), v(9)),
        ("thm6(1,1,1,1,1)", bound_thm6(1, 1, 1, 1, 1), v(136)),
        ("thm7(1,1,1,1,2)", bound_thm7(1, 1, 1, 1, 2), v(12_417)),
    ];
    for (name, got, want) in golden {
        let got = got.map_err(|e| format!("{name}: {e}"))?;
        check(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    check(oracle_mult(2, 2, 1) == v(776) && oracle_thm5_d2(1, 1) == v(9), || {
        "oracle self-check".into()
    })?;

    let mut mismatches = Vec::new();
    let mut points = 0;
    for n in 1..=3u64 {
        for p in (n - 1)..=5 {
            for qd in 1..=3 {
                points += 1;
                let b6 = bound_thm6(n, 0, p, qd, 1).map_err(|e| e.to_string())?;
                let b3 = bound_thm3(n, p, qd).map_err(|e| e.to_string())?;
                check(b3 == oracle_mult(n, p, qd - 1), || {
                    format!("thm3({n},{p},{qd}) disagrees with oracle")
                })?;
                check(b6 == oracle_mult(n, p, qd), || {
                    format!("thm6({n},0,{p},{qd},1) disagrees with oracle")
                })?;
                if b6 != b3 {
                    mismatches.push(format!("({n},{p},{qd}): thm6 = {b6}, thm3 = {b3}"));
                }
            }
        }
    }
    check(mismatches.is_empty(), || {
        format!(
            "golden values ok; thm6(n,0,p,q,1) = thm3(n,p,q) fails at {}/{points} grid points, e.g. {}",
            mismatches.len(),
            mismatches[0]
        )
    })?;
    Ok(format!("golden values ok; consistency holds on {points} grid points"))
}

/// Generators, dimension and expected `(d, N, certified)`.
type GoldenSystem = (Vec<PolyVectorField>, usize, (usize, usize, bool));

fn nonholonomy_key(fields: Vec<PolyVectorField>, n: usize) -> Result<(usize, usize, bool), String> {
    let sys = VectorFieldSystem::new(fields).map_err(|e| e.to_string())?;
    let r = degree_of_nonholonomy(&sys, &origin(n), 4).map_err(|e| e.to_string())?;
    Ok((r.d, r.degree, r.certified))
}

fn nonholonomy() -> Outcome {
    let xyz = ["x", "y", "z"];
    let xy = ["x", "y"];
    let cases: [GoldenSystem; 3] = [
        (
            vec![field(&["1", "0", "0"], &xyz), field(&["0", "1", "x"], &xyz)],
            3,
            (3, 2, true),
        ),
        (vec![field(&["1", "0"], &xy), field(&["0", "x"], &xy)], 2, (2, 2, true)),
        (vec![field(&["1", "0"], &xy), field(&["0", "1"], &xy)], 2, (2, 1, true)),
    ];
    let scales = [q(-3, 2), q(5, 7), int(4)];
    for (fields, n, want) in cases {
        let got = nonholonomy_key(fields.clone(), n)?;
        check(got == want, || format!("{fields:?}: got {got:?}, expected {want:?}"))?;
        let mut rev: Vec<_> = fields.iter().rev().cloned().collect();
        check(nonholonomy_key(rev.clone(), n)? == want, || {
            "changed under reordering".into()
        })?;
        for (f, c) in rev.iter_mut().zip(scales.iter()) {
            *f = f.scale(c);
        }
        check(nonholonomy_key(rev, n)? == want, || "changed under rescaling".into())?;
    }
    Ok("Heisenberg (3,2), Grushin (2,2), commuting N = 1, all certified; invariant".into())
}

fn noetherian() -> Outcome {
    let xf = ["x", "f"];
    let chain = NoetherianChain::new(1, vec![vec![poly("f", &xf)]], vec![int(1)]).unwrap();
    let nf = NoetherianField::new(chain.clone(), vec![poly("1", &xf)]).unwrap();
    let opts = MultiplicityOptions::default();
    let x0 = origin(1);
    let a = noetherian_multiplicity(&poly("f - 1 - x", &xf), &nf, &x0, &opts).map_err(|e| e.to_string())?;
    let b = noetherian_multiplicity(&poly("f - 1 - x - 1/2*x^2 - 1/6*x^3", &xf), &nf, &x0, &opts)
        .map_err(|e| e.to_string())?;
    let b136 = bound_thm6(1, 1, 1, 1, 1).unwrap();
    let b3 = bound_thm6(1, 1, 3, 1, 1).unwrap();
    check(b3 == oracle_mult(2, 3, 1), || format!("thm6(1,1,3,1,1) = {b3}"))?;
    check(a.status == MultiplicityStatus::Finite(2), || {
        format!("f − 1 − x: {:?}", a.status)
    })?;
    check(b.status == MultiplicityStatus::Finite(4), || {
        format!("remainder: {:?}", b.status)
    })?;
    check(BigUint::from(2u32) <= b136 && BigUint::from(4u32) <= b3, || {
        "bound exceeded".into()
    })?;
    check(a.bound_used.as_ref() == Some(&b136), || {
        format!("bound used {:?}", a.bound_used)
    })?;

    // e^t: x = t, f = e^t, and f' = f·x' through order 11
    let order = 12;
    let sys = OdeSystem::autonomous(lift_field(&nf).unwrap(), chain.augmented_basepoint(&x0).unwrap()).unwrap();
    let traj = expand_trajectory(&sys, order).map_err(|e| e.to_string())?;
    for k in 0..=order {
        check(traj[1].coeff(k) * factorial(k) == int(1), || {
            format!("f coefficient {k}")
        })?;
    }
    let lhs = traj[1].derivative();
    let rhs = compose_with_series(&poly("f", &xf), &traj, order - 1)
        .unwrap()
        .mul(&traj[0].derivative());
    for k in 0..order {
        check(lhs.coeff(k) == rhs.coeff(k), || {
            format!("chain rule fails at order {k}")
        })?;
    }
    Ok(format!(
        "Finite(2) ≤ {b136}, Finite(4) ≤ {b3}; chain rule through order {}",
        order - 1
    ))
}

fn log_system() -> Outcome {
    let xt = ["x", "t"];
    let sys = OdeSystem::rational(vec![poly("1 + t", &xt)], vec![poly("1", &xt)], vec![int(0)]).unwrap();
    let p = poly("x - t + 1/2*t^2", &xt);
    let r = multiplicity(&p, &sys, &MultiplicityOptions::default()).map_err(|e| e.to_string())?;
    check(r.status == MultiplicityStatus::Finite(3), || format!("{:?}", r.status))?;
    // ln(1+t) − t + t²/2 = t³/3 − t⁴/4 + …
    check(
        r.prefix.get(3) == Some(&q(1, 3)) && r.prefix.get(4) == Some(&q(-1, 4)),
        || format!("prefix {:?}", r.prefix),
    )?;
    Ok("Finite(3), leading coefficient 1/3".into())
}

fn identically_zero() -> Outcome {
    let xy = ["x", "y"];
    let xi = field(&["1", "x"], &xy);
    let p = poly("y - 1/2*x^2", &xy);
    let sys = OdeSystem::at_origin(xi.clone()).unwrap();
    let b = bound_thm3(2, 2, 1).unwrap();
    check(b == oracle_mult(2, 2, 0), || format!("bound {b}"))?;

    let chain = iterated_lie_chain(&xi, &p, 1).unwrap();
    check(chain[1].is_zero(), || format!("ξP = {}", chain[1]))?;
    let lie = multiplicity(
        &p,
        &sys,
        &MultiplicityOptions {
            method: MethodChoice::Lie,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let series = multiplicity(
        &p,
        &sys,
        &MultiplicityOptions {
            method: MethodChoice::Series,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let want = MultiplicityStatus::IdenticallyZero(b.clone());
    check(lie.status == want, || format!("Lie: {:?}", lie.status))?;
    check(series.status == want, || format!("series: {:?}", series.status))?;

    let deep = 512;
    let traj = expand_trajectory(&sys, deep).map_err(|e| e.to_string())?;
    let restricted = compose_with_series(&p, &traj, deep).map_err(|e| e.to_string())?;
    check(restricted.valuation().is_none(), || {
        "nonzero coefficient below 512".into()
    })?;
    Ok(format!(
        "early exit (ξP ≡ 0) and coefficient vanishing agree on IdenticallyZero({b}); vanishing verified through order {deep}"
    ))
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let set = instances();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 worked example A", Box::new(example_a)),
        ("2 chain-rule identity", Box::new(|| chain_rule(&set))),
        ("3 method equivalence", Box::new(|| method_equivalence(&set))),
        ("4 multiplicity bound", Box::new(|| theorem3(&set))),
        ("5 Lie chain degree growth", Box::new(|| degree_growth(&set))),
        ("6 bound calculators", Box::new(bound_values)),
        ("7 nonholonomy golden cases", Box::new(nonholonomy)),
        ("8 Noetherian exp chain", Box::new(noetherian)),
        ("9 non-autonomous log system", Box::new(log_system)),
        ("10 identically zero soundness", Box::new(identically_zero)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
