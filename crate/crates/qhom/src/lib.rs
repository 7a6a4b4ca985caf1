//! Exact-arithmetic toolkit for q-deformed Witt and W(2,2) Hom-algebras.
//!
//! The crate provides:
//!
//! * [`scalars`]: exact scalar fields in three modes (rational with a fixed
//!   deformation parameter q, cyclotomic quotients realizing q as a root of
//!   unity, and the rational-function field with q as a free variable),
//!   together with the two q-integer conventions `{n}` and `[n]`.
//! * [`graded`]: sparse integer-graded elements, the two built-in Hom-algebras
//!   with their degree-shifting twist maps, and the trait they implement.
//! * [`operators`]: homogeneous operators given by per-degree coefficient
//!   matrices, their combinators (scaling, sums, compositions, polynomials,
//!   inverses), and the induced bracket construction.
//! * [`laws`]: window-quantified verifiers for skew-symmetry, Hom-Jacobi,
//!   Hom-Leibniz, twist multiplicativity, the averaging-operator axiom, and
//!   the related subalgebra, ideal, sum and projection criteria. Every check
//!   returns an exact, serializable [`laws::Report`].
//! * [`families`]: constructors for the classified averaging-operator
//!   families on both algebras, closed-form cross-checks of the induced
//!   brackets, and multiplicativity verdicts.
//! * [`classify`]: an exhaustive finite-window search for averaging
//!   coefficient profiles with values drawn from a finite scalar set, plus a
//!   coverage report matching the search output against family
//!   instantiations.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod classify;
pub mod families;
pub mod graded;
pub mod laws;
pub mod operators;
pub mod scalars;

mod error;

pub use error::{Error, Result};
