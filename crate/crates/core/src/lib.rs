pub mod clasp;
pub mod error;
pub mod growth;
pub mod hpg;
pub mod rep;
pub mod sixvertex;
pub mod swap;
pub mod tableaux;
pub mod words;

pub use error::{Error, Result};
