//! Exact symbolic kernel for matrix bispectral problems.
//!
//! Scalars are bivariate rational functions in `x` and `z` over the
//! rationals. On top of them sit matrix differential operators acting on
//! wave functions `e^{xz} M(x, z)`, the nilpotent family with its P-maps and
//! eigenvalue algebra, Pierce idempotents and generator sets, degree-capped
//! span closure, and the spin Calogero example.

pub mod calogero;
pub mod closure;
pub mod error;
pub mod fraction;
pub mod linalg;
pub mod matpoly;
pub mod matrix;
pub mod nilpotent;
pub mod operator;
pub mod pierce;
pub mod poly;
pub mod qmatrix;
pub mod properties;
pub mod rational;
pub mod sampling;

pub use error::{Error, Result};
pub use fraction::{frac_eq, BiFraction};
pub use matpoly::{MatPoly, ThetaPoly, Var};
pub use matrix::MatF;
pub use poly::{BiPoly, Monomial};
pub use qmatrix::QMatrix;
pub use rational::Rational;
pub use operator::{OperatorX, OperatorZ, WaveFunction};
pub use nilpotent::NilpotentData;
