pub mod bench;
pub mod canon;
pub mod error;
pub mod group;
pub mod io;
pub mod perm;
pub mod tensor;

pub use error::{Error, Result};
pub use perm::{ExtendedImages, Sign, SignedPerm};
