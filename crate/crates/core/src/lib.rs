pub mod arith;
pub mod checker;
pub mod domain;
pub mod error;
pub mod harness;
pub mod localize;
pub mod maps;
pub mod mcs;
pub mod module;
pub mod report;
pub mod ring;
pub mod scenario;

pub use error::{Error, Result};
