pub mod cli;
pub mod dilation;
pub mod error;
pub mod fock;
pub mod gradedspace;
pub mod io;
pub mod linalg;
pub mod representation;

pub use error::{Error, Result};
