//! Exact plus high-precision toolkit for the secant Dirichlet series
//! psi_s(tau) = sum sec(pi n tau)/n^s, the period polynomials of Eisenstein
//! series attached to pairs of Dirichlet characters, and root-location scans
//! of generalized Ramanujan polynomials.
//!
//! The exact layer (big rationals, quadratic field elements, cocycles of the
//! group generated by [[1,2],[0,1]] and [[1,0],[2,1]]) evaluates
//! psi_{2m}(sqrt(r)) in closed form as a rational multiple of pi^{2m}.
//! The numeric layer provides arbitrary-precision series evaluation and a
//! catalog of identity checks tying every exact result to an independent
//! numerical route.

pub mod dirichlet;
pub mod error;
pub mod exact;
pub mod modgroup;
pub mod numerics;
pub mod period;
pub mod secant;

pub use error::{Error, Result};
