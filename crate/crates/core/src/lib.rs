//! Values, bounds and certificates for linear nonlocal games over finite
//! Abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: cyclic-product groups, characters, Fourier transforms, GF(p^r).
//! - [`numerics`]: dense complex matrices, Jacobi eigensolver, simplex LP.
//! - [`games`]: the linear game model, builders, boxes, game matrices, game files.
//! - [`values`]: classical, no-signaling and quantum values, norm bounds, certificates.
//! - [`graphs`]: XOR-game exclusivity graphs, independence number, Lovász witnesses.
//! - [`quantum`]: explicit states and measurements, Born-rule boxes, tripartite witnesses.
//!
//! Index conventions are mixed-radix little-endian throughout: the first
//! coordinate (or player) is the least significant digit.

pub mod algebra;
pub mod error;
pub mod games;
pub mod graphs;
pub mod numerics;
pub mod quantum;
pub mod values;

pub use error::{Error, Result};
pub use num_complex::Complex64;
