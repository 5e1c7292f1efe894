//! Random small instances for property checks and benchmarks.

use rand::Rng;

use crate::lie::PolyVectorField;
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Rational with numerator in `-9..=9` and denominator in `1..=9`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=9).into())
}

pub fn nonzero_small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = small_rational(rng);
        if c != Rational::from_integer(0.into()) {
            return c;
        }
    }
}

/// Random polynomial of total degree at most `max_degree` with up to
/// `max_terms` terms.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
    let count = rng.random_range(0..=max_terms);
    let terms = (0..count)
        .map(|_| {
            let total = rng.random_range(0..=max_degree);
            let mut exps = vec![0u32; nvars];
            for _ in 0..total {
                exps[rng.random_range(0..nvars)] += 1;
            }
            (exps, small_rational(rng))
        })
        .collect::<Vec<_>>();
    MultiPoly::from_terms(nvars, terms).expect("exponent vectors have nvars entries")
}

pub fn random_field<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, max_terms: usize) -> PolyVectorField {
    let comps = (0..nvars)
        .map(|_| random_poly(rng, nvars, max_degree, max_terms))
        .collect();
    PolyVectorField::new(comps).expect("components share nvars")
}

/// A random multiplicity instance at the origin.
#[derive(Debug, Clone)]
pub struct Instance {
    pub p: MultiPoly,
    pub field: PolyVectorField,
}

impl Instance {
    pub fn nvars(&self) -> usize {
        self.field.nvars()
    }
}

/// `n ≤ 3`, `deg P ≤ 4`, `deg ξ ≤ 2`, `ξ(0) ≠ 0`. Polynomials are biased
/// toward vanishing at the origin so that multiplicities above zero occur.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.random_range(1..=3);
    let q = rng.random_range(0..=2);
    let mut comps: Vec<MultiPoly> = (0..n).map(|_| random_poly(rng, n, q, 3)).collect();
    let moving = rng.random_range(0..n);
    let c = nonzero_small_rational(rng);
    comps[moving] = &comps[moving] + &MultiPoly::constant(n, c);
    if comps[moving].constant_term() == Rational::from_integer(0.into()) {
        comps[moving] = &comps[moving] + &MultiPoly::one(n);
    }
    let field = PolyVectorField::new(comps).expect("components share nvars");

    let p = match rng.random_range(0..3) {
        0 => random_poly(rng, n, 4, 5),
        1 => {
            let p = random_poly(rng, n, 4, 5);
            &p - &MultiPoly::constant(n, p.constant_term())
        }
        _ => {
            let a = random_poly(rng, n, 2, 3);
            let b = random_poly(rng, n, 2, 3);
            let a = &a - &MultiPoly::constant(n, a.constant_term());
            let b = &b - &MultiPoly::constant(n, b.constant_term());
            &a * &b
        }
    };
    Instance { p, field }
}
