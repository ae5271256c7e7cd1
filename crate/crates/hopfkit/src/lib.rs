//! Exact-arithmetic constructions and checks for finite-dimensional Hopf
//! algebras, Yetter-Drinfel'd modules, Nichols algebras of diagonal type,
//! Radford biproducts, and two-cocycle twist bialgebras.
//!
//! Everything is represented by structure constants over `Q` or `F_p`, and
//! every axiom is checkable by exhaustive enumeration over finite bases. The
//! checks are the point: constructions verify their own output and return
//! counterexample reports on failure.

pub mod bialgebra;
pub mod biproduct;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod nichols;
pub mod report;
pub mod scenario;
pub mod twist;
pub mod yd;

pub use error::Error;
pub use field::{primitive_root_of_unity, Field, Scalar};
pub use matrix::{tensor_of_maps, Matrix, TensorIndex};
pub use report::{Failure, Report};
