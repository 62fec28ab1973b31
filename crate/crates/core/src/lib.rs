//! Tropical matrix representations of plactic monoids and tooling for
//! building and checking the semigroup identities they satisfy.

pub mod abword;
pub mod bench;
pub mod checker;
pub mod error;
pub mod forge;
pub mod oracle;
pub mod paths;
pub mod rep;
pub mod subset;
pub mod tropical;
pub mod word;

pub use error::{Error, Result};
