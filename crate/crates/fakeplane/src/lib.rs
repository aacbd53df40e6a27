//! Exact-arithmetic toolkit for rational surfaces with real structure.
//!
//! The crate models a projective surface by its divisor class lattice: an
//! integer Gram matrix for the intersection form, a canonical class, and the
//! permutation induced on a chosen basis by the anti-holomorphic involution.
//! On top of that sit a blow-up engine, the homology verdict machine deciding
//! Q-/Z-acyclicity and the real-plane criterion for complements of boundary
//! curves, Kodaira-dimension evidence checks, a dual-graph rewriting engine
//! for birational move scripts, and a catalogue of named constructions with
//! their expected invariants.
//!
//! All arithmetic is exact: big integers for lattice computations, big
//! rationals where fractional coefficients occur. No floating point anywhere.

pub mod exactalg;
pub mod families;
pub mod homology;
pub mod kodaira;
pub mod lattice;
pub mod moves;
pub mod report;
pub mod surface;
