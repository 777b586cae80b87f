//! Numerical monodromy certification for elliptic K3 discriminant fibers.
//!
//! The library tracks the 24 roots of the discriminant `4A^3 + 27B^2` of a
//! Weierstrass fibration along loops in the parameter space, extracts the
//! induced permutations, and identifies the generated group exactly. A
//! companion module reproduces the associated enumerative counts with exact
//! integer arithmetic.

pub mod cli;
pub mod cpoly;
pub mod numerology;
pub mod permgroup;
pub mod roots;
pub mod tracker;
pub mod weierstrass;
