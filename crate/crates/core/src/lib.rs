//! Characteristic varieties of finitely presented groups via Fox calculus,
//! exact twisted homology, and a certifier for kernels of maps onto `Z^m`
//! that fail to be of type `FP_r`.
//!
//! Coefficients are exact rationals throughout. Every matrix produced here
//! has integer entries, so ranks over `Q` agree with ranks over `C`.

pub mod certify;
pub mod constructions;
mod error;
pub mod fox;
pub mod homology;
pub mod jump_loci;
pub mod laurent;
pub mod presentation;
pub mod sampling;

pub use error::Error;
