//! Exact computations with polynomial monoid structures on affine space.
//!
//! The crate provides sparse Laurent polynomials over the rationals, an
//! associativity and unit checker for polynomial multiplications, the
//! catalog of monoids on A^1, A^2 and A^3, commutative reductions of the
//! semicommutative entries, and idempotent and center computations.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod monoid;
pub mod poly;
pub mod reduction;
pub mod text;

pub use analysis::{
    center_components, idempotent_components, verify_component, CoordinateSpec, CyclotomicConstraint,
    Predicate, VarietyComponent,
};
pub use catalog::{
    are_isomorphic, build_monoid, canonical_form, is_compatible, q_bc, q_poly, unit_group, GroupDescriptor,
    Isomorphism, MonoidDescriptor, Quadruple, Side,
};
pub use error::{Error, Result};
pub use monoid::{Associativity, CheckReport, Point, PolynomialMonoid, SampleOutcome, Witness};
pub use poly::{LaurentPolynomial, Monomial, PolyError, Rational};
pub use reduction::{reduce, ReductionResult};
pub use text::{parse_monoid, parse_source, to_source, MonoidSource, ParseError, ParseErrorKind};
