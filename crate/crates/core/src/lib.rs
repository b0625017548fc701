//! Exact computer algebra for the phase space of the reduced quantum plane
//! at a primitive cube root of unity `q`.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: the coefficient field `Q(q)`;
//! * [`ncpoly`]: presented noncommutative algebras, tensors, linear algebra;
//! * [`spaces`]: the concrete algebras (plane, phase space, their
//!   differential algebras, the finite quantum group and the smash product);
//! * [`hopf`]: Hopf structure, r-form, actions, coactions, Galois and
//!   cotensor certificates;
//! * [`calculus`]: exterior derivative, partial derivatives, vector fields;
//! * [`symplectic`]: R-matrices, projectors, the symplectic form and Poisson
//!   brackets;
//! * [`cli`]: expression parsing, printing and the `qps` command set.

pub mod calculus;
pub mod cli;
pub mod field;
pub mod hopf;
pub mod ncpoly;
pub mod report;
pub mod spaces;
pub mod symplectic;

pub use field::Scalar;
pub use ncpoly::{Element, Monomial, Presentation, TensorElement};
