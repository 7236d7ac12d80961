//! Exact computation of equal-radius circle and sphere configurations through
//! the vertices of triangles and tetrahedra.

pub mod cayley_menger;
pub mod error;
pub mod exact;
pub mod general_tetra;
pub mod oracle;
pub mod par;
pub mod plane;
pub mod pyramid;
pub mod rbody;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
