//! Exact computational kernel for finite root systems over finite symplectic
//! abelian groups.
//!
//! The crate builds the graded Lie algebras attached to a pair (G, β) — a
//! finite abelian group with an alternating bicharacter — entirely in exact
//! arithmetic over cyclotomic fields, verifies the root-system axioms, splits
//! bicharacters into bimultiplicative cocycles, enumerates transvection-generated
//! Weyl groups by breadth-first closure, and checks the constructions against
//! concrete matrix models built from generalized Pauli matrices.

pub mod abelian;
pub mod catalog;
pub mod cyclotomic;
pub mod io;
pub mod liealg;
pub mod matrixmodel;
pub mod rootsystem;
pub mod symplectic;
