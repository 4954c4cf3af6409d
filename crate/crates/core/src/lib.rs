//! Minimal surfaces from Weierstrass data and the energetics of conformal
//! deformations between them.

pub mod error;
pub mod holomorphic;

pub use error::{Error, Result};
pub mod quadrature;
pub mod weierstrass;
pub mod deformation;
pub mod connectors;
pub mod energetics;
pub mod neutrality;
pub mod corpus;
pub mod meshgen;
pub mod cli;
