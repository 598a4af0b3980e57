//! Rook theory on Ferrers diagrams and its use for rank-metric codes with a
//! prescribed support: exact rook and rank-census polynomials, the
//! dimension bound `kappa`, density classes, and explicit MDS constructions
//! from Reed-Solomon codes.

pub mod arith;
pub mod bounds;
pub mod census;
pub mod construct;
pub mod counting;
pub mod density;
pub mod error;
pub mod ferrers;
pub mod gf;
pub mod golden;
pub mod matrix;
pub mod rook;

pub use error::{Error, Result};
