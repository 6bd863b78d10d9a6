//! Hypergraph-product quantum LDPC codes and their decoding.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`]: sparse binary matrices and vectors with Gaussian elimination.
//! * [`codes`]: repetition and ring codes, MacKay–Neal random LDPC codes,
//!   edge-augmented codes and a distance oracle.
//! * [`css`]: the symmetric hypergraph product, logical operators and
//!   quantum code parameters.
//! * [`bp`]: syndrome-based min-sum belief propagation.
//! * [`osd`]: ordered-statistics post-processing (OSD-0, combination sweep,
//!   exhaustive search).
//! * [`sim`]: Monte Carlo decoding cycles, sweeps and threshold estimation.

pub mod bp;
pub mod codes;
pub mod css;
mod error;
pub mod gf2;
pub mod osd;
pub mod sim;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
