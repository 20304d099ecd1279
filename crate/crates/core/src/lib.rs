pub mod algebra;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod equivalence;
pub mod family;
pub mod form;
pub mod json;
pub mod quartic;
pub mod reproduce;
pub mod tables;

pub use error::{Error, Result};
