//! Simplicial sets, mapping spaces, comma objects, weighted limits and
//! limits of diagrams in categories computed by skeletal induction.

pub mod cert;
pub mod comma;
pub mod degeneracy;
pub mod error;
pub mod gen;
pub mod hom;
pub mod limit;
pub mod schema;
pub mod simplicial;
pub mod weights;

pub use error::{Error, Result};
