pub mod correspondences;
pub mod error;
pub mod exterior;
pub mod fano_pair;
pub mod linalg;
pub mod pencils;
pub mod pipeline;
pub mod projection;
pub mod random;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
