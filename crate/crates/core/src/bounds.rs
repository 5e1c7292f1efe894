//! Explicit upper bounds on multiplicities and degrees of nonholonomy.
//!
//! All values are computed exactly in arbitrary precision; they grow like
//! `p^{2n}` and overflow machine integers for modest inputs.
//!
//! Notation: `n` ambient dimension, `p` degree of the polynomial, `q` degree
//! of the field coefficients, `d` dimension of the span of brackets, `m` and
//! `alpha` the order and degree of a Noetherian chain.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

/// Reading of the parenthesization in the `d > 2` nonholonomy bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Eq8Grouping {
    /// `2^{d−2} (1 + 2^{2n(d−2)−2} q^{2n} Σ_{k=4}^{n+3} k^{2n})`, the same
    /// shape as the Noetherian version.
    #[default]
    ClosedAfterSum,
    /// `2^{d−2} (1 + 2^{2n(d−2)−2}) q^{2n} Σ_{k=4}^{n+3} k^{2n}`.
    Literal,
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn power_sum(range: std::ops::RangeInclusive<u64>, exp: u64) -> BigUint {
    range.map(|k| big(k).pow(exp)).sum()
}

/// `2^{2n−1} Σ_{k=1}^{n} [p + (k−1)(q−1)]^{2n}`.
///
/// Requires `n ≥ 1`, `q ≥ 1` and `p ≥ n − 1`.
pub fn bound_thm3(n: u64, p: u64, q: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::BoundPrecondition("requires n ≥ 1"));
    }
    if q == 0 {
        return Err(Error::BoundPrecondition("requires q ≥ 1"));
    }
    if p + 1 < n {
        return Err(Error::BoundPrecondition("requires p ≥ n − 1"));
    }
    Ok(multiplicity_sum(n, p, q - 1))
}

fn multiplicity_sum(dim: u64, p: u64, step: u64) -> BigUint {
    let sum: BigUint = (1..=dim).map(|k| big(p + (k - 1) * step).pow(2 * dim)).sum();
    pow2(2 * dim - 1) * sum
}

/// Degree-of-nonholonomy bound for polynomial systems.
///
/// `d = 2`: `1 + 2^{2n−1} q^{2n} Σ_{k=2}^{n+1} k^{2n}`; `d > 2` depends on
/// `grouping`. Requires `n ≥ 1`, `q ≥ 1`, `d ≥ 2`.
pub fn bound_thm5(n: u64, q: u64, d: u64, grouping: Eq8Grouping) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::BoundPrecondition("requires n ≥ 1"));
    }
    if q == 0 {
        return Err(Error::BoundPrecondition("requires q ≥ 1"));
    }
    if d < 2 {
        return Err(Error::BoundPrecondition("requires d ≥ 2"));
    }
    Ok(nonholonomy_formula(n, q, d, grouping))
}

fn nonholonomy_formula(dim: u64, degree: u64, d: u64, grouping: Eq8Grouping) -> BigUint {
    let qpow = big(degree).pow(2 * dim);
    if d == 2 {
        return BigUint::one() + pow2(2 * dim - 1) * qpow * power_sum(2..=dim + 1, 2 * dim);
    }
    let sum = power_sum(4..=dim + 3, 2 * dim);
    let inner = pow2(2 * dim * (d - 2) - 2);
    match grouping {
        Eq8Grouping::ClosedAfterSum => pow2(d - 2) * (BigUint::one() + inner * qpow * sum),
        Eq8Grouping::Literal => pow2(d - 2) * (BigUint::one() + inner) * qpow * sum,
    }
}

/// `2^{2(n+m)−1} Σ_{k=1}^{n+m} [p + (k−1)(q + α − 1)]^{2(n+m)}`.
///
/// Requires `n ≥ 1`, `q ≥ 1`, `alpha ≥ 1`.
pub fn bound_thm6(n: u64, m: u64, p: u64, q: u64, alpha: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::BoundPrecondition("requires n ≥ 1"));
    }
    if q == 0 {
        return Err(Error::BoundPrecondition("requires q ≥ 1"));
    }
    if alpha == 0 {
        return Err(Error::BoundPrecondition("requires α ≥ 1"));
    }
    Ok(multiplicity_sum(n + m, p, q + alpha - 1))
}

/// Degree-of-nonholonomy bound for systems with Noetherian coefficients:
/// the polynomial formula in dimension `n + m` with coefficient degree
/// `q + α`. Requires `n ≥ 1`, `q ≥ 1`, `alpha ≥ 1`, `d ≥ 2`.
pub fn bound_thm7(n: u64, m: u64, q: u64, alpha: u64, d: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::BoundPrecondition("requires n ≥ 1"));
    }
    if q == 0 {
        return Err(Error::BoundPrecondition("requires q ≥ 1"));
    }
    if alpha == 0 {
        return Err(Error::BoundPrecondition("requires α ≥ 1"));
    }
    if d < 2 {
        return Err(Error::BoundPrecondition("requires d ≥ 2"));
    }
    Ok(nonholonomy_formula(n + m, q + alpha, d, Eq8Grouping::ClosedAfterSum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn thm3_values() {
        assert_eq!(bound_thm3(2, 2, 2).unwrap(), v(776));
        assert_eq!(bound_thm3(2, 4, 1).unwrap(), v(4096));
        assert_eq!(bound_thm3(1, 3, 1).unwrap(), v(18));
        assert_eq!(bound_thm3(2, 2, 1).unwrap(), v(256));
    }

    #[test]
    fn thm3_preconditions() {
        assert_eq!(
            bound_thm3(3, 1, 1).unwrap_err(),
            Error::BoundPrecondition("requires p ≥ n − 1")
        );
        assert_eq!(
            bound_thm3(2, 2, 0).unwrap_err(),
            Error::BoundPrecondition("requires q ≥ 1")
        );
        assert!(bound_thm3(0, 2, 1).is_err());
    }

    #[test]
    fn thm5_values() {
        let g = Eq8Grouping::default();
        assert_eq!(bound_thm5(1, 1, 2, g).unwrap(), v(9));
        assert_eq!(bound_thm5(2, 1, 2, g).unwrap(), v(777));
        assert_eq!(bound_thm5(3, 1, 3, g).unwrap(), v(2_124_066));
        // 2 * (1 + 16) * (4^6 + 5^6 + 6^6)
        assert_eq!(bound_thm5(3, 1, 3, Eq8Grouping::Literal).unwrap(), v(2 * 17 * 66_377));
        assert_eq!(
            bound_thm5(2, 1, 1, g).unwrap_err(),
            Error::BoundPrecondition("requires d ≥ 2")
        );
    }

    #[test]
    fn thm6_values() {
        assert_eq!(bound_thm6(1, 1, 1, 1, 1).unwrap(), v(136));
        assert_eq!(bound_thm6(1, 1, 2, 1, 1).unwrap(), v(776));
        assert_eq!(bound_thm6(1, 0, 3, 1, 1).unwrap(), v(18));
        assert!(bound_thm6(1, 1, 1, 1, 0).is_err());
    }

    #[test]
    fn thm7_values() {
        assert_eq!(bound_thm7(1, 1, 1, 1, 2).unwrap(), v(12_417));
        assert_eq!(bound_thm7(1, 0, 1, 1, 2).unwrap(), v(33));
        assert_eq!(bound_thm7(1, 1, 1, 1, 3).unwrap(), v(112_770));
        assert!(bound_thm7(1, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn no_overflow_for_large_inputs() {
        let b = bound_thm3(12, 40, 9).unwrap();
        assert!(b.bits() > 128);
    }

    #[test]
    fn m_zero_with_unit_alpha_steps_by_q() {
        // per-step growth q + α − 1 = q, one more than the polynomial q − 1
        for n in 1..=3 {
            for p in (n - 1)..=5 {
                for q in 1..=3 {
                    assert_eq!(bound_thm6(n, 0, p, q, 1).unwrap(), bound_thm3(n, p, q + 1).unwrap());
                    assert!(bound_thm6(n, 0, p, q, 1).unwrap() >= bound_thm3(n, p, q).unwrap());
                }
            }
        }
        for p in 0..=5 {
            for q in 1..=3 {
                assert_eq!(bound_thm6(1, 0, p, q, 1).unwrap(), bound_thm3(1, p, q).unwrap());
            }
        }
    }

    #[test]
    fn monotone_on_small_grid() {
        let g = Eq8Grouping::default();
        for n in 1..=3u64 {
            for p in (n - 1)..=4 {
                for q in 1..=3 {
                    let b = bound_thm3(n, p, q).unwrap();
                    assert!(bound_thm3(n, p + 1, q).unwrap() >= b);
                    assert!(bound_thm3(n, p, q + 1).unwrap() >= b);
                    assert!(bound_thm3(n + 1, p + 1, q).unwrap() >= b);
                    for m in 0..=2 {
                        for a in 1..=2 {
                            let b6 = bound_thm6(n, m, p, q, a).unwrap();
                            assert!(bound_thm6(n, m + 1, p, q, a).unwrap() >= b6);
                            assert!(bound_thm6(n, m, p, q, a + 1).unwrap() >= b6);
                            assert!(bound_thm6(n, m, p, q + 1, a).unwrap() >= b6);
                        }
                    }
                }
            }
            for q in 1..=3 {
                for d in 2..=4 {
                    let b = bound_thm5(n, q, d, g).unwrap();
                    assert!(bound_thm5(n, q, d + 1, g).unwrap() >= b);
                    assert!(bound_thm5(n, q + 1, d, g).unwrap() >= b);
                    assert!(bound_thm5(n + 1, q, d, g).unwrap() >= b);
                    for m in 0..=1 {
                        let b7 = bound_thm7(n, m, q, 1, d).unwrap();
                        assert!(bound_thm7(n, m + 1, q, 1, d).unwrap() >= b7);
                        assert!(bound_thm7(n, m, q, 2, d).unwrap() >= b7);
                        assert!(bound_thm7(n, m, q, 1, d + 1).unwrap() >= b7);
                    }
                }
            }
        }
    }
}
