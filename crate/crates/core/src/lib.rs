//! Exact computations with finite-dimensional bound quiver algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactla`]: prime fields, rationals, row reduction.
//! * [`quiver`]: quivers, monomial relations, path bases, graph classification.
//! * [`rep`]: representations, Hom spaces, endomorphism analysis, Dynkin roots.
//! * [`homo`]: projective covers, resolutions, global dimension, Ext¹.
//! * [`nodesplit`]: node detection and splitting, brick censuses.
//! * [`kron`]: simple regular Kronecker modules and the relative Ext table.
//! * [`io`] and [`cli`]: text formats, reports, command dispatch.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod homo;
pub mod io;
pub mod kron;
pub mod nodesplit;
pub mod par;
pub mod quiver;
pub mod rep;
pub mod report;

pub use error::{Error, Result};
pub use exactla::{Field, Mat, Scalar};
pub use quiver::{BoundQuiverAlgebra, GraphClass, Path, Quiver};
pub use rep::Representation;
