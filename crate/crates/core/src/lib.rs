//! Words, normal forms and evaluation for the n-adic Lodha–Moore groups.

pub mod cantor;
pub mod error;
pub mod homomorphisms;
pub mod lodha_moore;
pub mod thompson;
pub mod transducer;

pub use error::{Error, ErrorKind, Result};
