//! Exact-arithmetic computations in weight-graded Lie algebras attached to
//! surfaces, punctured surfaces, and configuration spaces.
//!
//! The crate builds free Lie algebras on weighted generator alphabets over a
//! Hall basis, imposes homogeneous relation ideals weight by weight, and
//! computes quotient bases, structure constants, and symplectic group actions
//! with rational arithmetic throughout. On top of that sits a section
//! calculus: graded surjections between configuration-space algebras, the
//! Schur-form section candidates `u^(j) -> u^(j) + a_j u^(0)`, and the
//! residues their induced maps leave on defining relations. A nonzero residue
//! certifies that no graded equivariant section with the candidate's
//! weight(-1) behavior exists.
//!
//! Everything is rational: there is no floating point anywhere in this crate,
//! and identical inputs produce bit-identical outputs (bases, coordinates,
//! certificates).
//!
//! Module map:
//!
//! * [`rat`] / [`mat`] — arbitrary-precision rationals and dense rational
//!   linear algebra (reduced row echelon form, kernels, solving).
//! * [`freelie`] — weighted alphabets, Hall bases, normal forms, Witt counts.
//! * [`symplectic`] — the genus-g symplectic module, integer generators of
//!   the symplectic group, diagonal actions, an intertwiner solver, and the
//!   hyperelliptic component count.
//! * [`presentation`] — finitely presented weight-graded Lie algebras with
//!   built-in surface / punctured-surface / configuration presentations.
//! * [`poly`] — small multivariate rational polynomials for the symbolic
//!   section solver.
//! * [`obstruction`] — graded sequences, section candidates, residue
//!   computations, and obstruction certificates.

pub mod error;
pub mod freelie;
pub mod mat;
pub mod obstruction;
pub mod poly;
pub mod presentation;
pub mod rat;
pub mod symplectic;

pub use error::Error;
pub use mat::Mat;
pub use rat::Rat;
