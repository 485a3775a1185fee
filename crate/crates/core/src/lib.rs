//! Exact computations on complete simplicial fans and the torus-invariant
//! divisors of the associated toric varieties: validation, smoothness,
//! completeness, wall relations, star subdivision, Picard data, nef tests,
//! nef cones, projectivity and fan morphisms, plus a catalog of smooth
//! complete toric threefolds of Picard number at most five.

pub mod catalog;
pub mod divisor;
pub mod fan;
pub mod fanmap;
pub mod lattice;
pub mod oracle;
pub mod polyhedra;
pub mod report;
