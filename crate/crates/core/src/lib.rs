pub mod center;
pub mod checks;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod monoid;
pub mod notation;
pub mod pipeline;
pub mod radical;
pub mod semisimple;
pub mod splitting;
pub mod wedderburn;

pub use error::{Error, Result};
