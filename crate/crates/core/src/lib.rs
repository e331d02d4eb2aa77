//! Conjugacy classes of involutions in Coxeter groups.
//!
//! The count comes from connected components of the higher-rank odd graphs
//! of a Coxeter diagram ([`oddgraph`]). Closed forms for several families
//! live in [`formulas`], and [`oracle`] checks everything against brute-force
//! enumeration of small finite groups.

pub mod classify;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod formulas;
pub mod oddgraph;
pub mod oracle;

pub use classify::{decompose, IrreducibleType, TypeDecomposition};
pub use diagram::{parse_name, Bond, CoxeterMatrix, Diagram, VertexSet};
pub use error::{Error, Result};
pub use oddgraph::{bounds, cc2, gamma_k, omega_k, Bounds, InvolutionClassReport, OddGraph};
