//! Indecomposable non-semisimple symmetric spaces of signature (2,2):
//! symmetric triples, transvection and isometry groups, coordinate and
//! extrinsic models, and checks of the identities relating them.

pub mod error;
pub mod numeric;

pub use error::{Error, Result};
pub mod lie;
pub mod quadext;
pub mod report;
pub mod catalog;
pub mod groups;
pub mod geometry;
pub mod sampling;
pub mod registry;
pub mod verify;
