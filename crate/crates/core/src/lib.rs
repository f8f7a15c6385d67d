//! Persistence diagrams as free commutative monoids on pointed metric spaces.
//!
//! A diagram on a pointed extended-pseudometric space `(X, d, x₀)` is a finite
//! multiset of points with the basepoint identified with the empty diagram
//! ([`diagram`]). Diagrams carry the p-Wasserstein distances `W_p[d, x₀]`,
//! computed exactly by assignment ([`wasserstein`]). The crate also provides
//! quotient and strengthened metrics ([`metric`]), the universal Lipschitz
//! extension and the checkers built on it ([`universality`]),
//! Kantorovich–Rubinstein certificates for `W₁` ([`duality`]) and the
//! concrete spaces used in topological data analysis ([`spaces`]).

pub mod assignment;
pub mod cli;
pub mod diagram;
pub mod duality;
pub mod error;
pub mod io;
pub mod metric;
pub mod sampling;
pub mod spaces;
pub mod universality;
pub mod verify;
pub mod wasserstein;

pub use diagram::Diagram;
pub use error::{Error, Result};
pub use metric::{ExtReal, PExponent};
