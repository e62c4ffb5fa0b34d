//! Symbolic verification for finite-rank Hom-Leibniz conformal algebras.

pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod io;
pub mod ns;
pub mod operators;
pub mod poly;
pub mod report;
pub mod representation;
pub mod samples;
pub mod structure;

pub use error::{Error, Result};
pub use poly::{parse_poly, print_poly, LinearForm, Monomial, MultiPoly, Rational, Var};
pub use report::{Report, Status, Violation};
pub use structure::{ConformalAlgebra, Element, PdMap, ProductTable};
