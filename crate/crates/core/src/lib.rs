//! Exact computation of the multiplicity of a zero of a polynomial on a
//! trajectory of a polynomial (or Noetherian) vector field, explicit bounds
//! that certify identically vanishing restrictions, and degrees of
//! nonholonomy of systems of vector fields.
//!
//! All arithmetic is over arbitrary-precision rationals.
//!
//! ```
//! use vanish_core::{parse_with_names, multiplicity, MultiplicityOptions, MultiplicityStatus,
//!                   OdeSystem, PolyVectorField};
//!
//! let vars = ["x", "y"];
//! let field = PolyVectorField::new(vec![
//!     parse_with_names("1", &vars).unwrap(),
//!     parse_with_names("x", &vars).unwrap(),
//! ]).unwrap();
//! let p = parse_with_names("2*y - x^2 + x^4", &vars).unwrap();
//! let sys = OdeSystem::at_origin(field).unwrap();
//! let r = multiplicity(&p, &sys, &MultiplicityOptions::default()).unwrap();
//! assert_eq!(r.status, MultiplicityStatus::Finite(4));
//! ```

pub mod bounds;
pub mod error;
pub mod lie;
pub mod noetherian;
pub mod nonholonomy;
pub mod parse;
pub mod poly;
pub mod random;
pub mod rational;
pub mod selftest;
pub mod series;
mod taylor;
pub mod trajectory;

pub use bounds::{bound_thm3, bound_thm5, bound_thm6, bound_thm7, Eq8Grouping};
pub use error::{Error, Result};
pub use lie::{iterated_lie_chain, lie_bracket, lie_derivative, LieChain, PolyVectorField};
pub use noetherian::{
    lift_field, lift_system, noetherian_multiplicity, noetherian_nonholonomy, NoetherianChain, NoetherianField,
};
pub use nonholonomy::{degree_of_nonholonomy, hall_brackets, NonholonomyResult, RankTracker, VectorFieldSystem};
pub use parse::{parse_polynomial, parse_with_names};
pub use poly::{Monomial, MultiPoly};
pub use rational::{parse_rational, Rational};
pub use series::{compose_with_series, TruncSeries};
pub use trajectory::{
    certification_bound, expand_trajectory, multiplicity, multiplicity_lie, multiplicity_series, MethodChoice,
    MultiplicityMethod, MultiplicityOptions, MultiplicityResult, MultiplicityStatus, OdeKind, OdeSystem,
};
