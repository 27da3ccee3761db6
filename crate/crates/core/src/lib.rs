//! Order isomorphisms between domains of Hermitian matrices.

pub mod classify;
pub mod error;
pub mod halfplane;
pub mod linalg;
pub mod monotone;
pub mod order;
pub mod phimap;
pub mod par;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
