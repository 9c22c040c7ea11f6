pub mod cone;
pub mod error;
pub mod linalg;
pub mod report;
pub mod semigroup;
pub mod spectrum;
pub mod verifier;

pub use error::{Error, Result};
