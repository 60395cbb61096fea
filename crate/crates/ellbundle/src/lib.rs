//! Exact calculus for semistable bundles on Weierstrass cubics and elliptic
//! fibrations: curve arithmetic, Atiyah normal forms and the ζ-map, spectral
//! cover combinatorics, a truncated graded-commutative cohomology engine,
//! the characteristic-class formula library, section-level calculators, and
//! an elliptic-surface stability lattice.

pub mod field;
pub mod curve;
pub mod bundles;
pub mod spectral;
pub mod cohomology;
pub mod chern;
pub mod fibration;
pub mod stability;
pub mod cli;
