//! Front end for `hxh-einstein`: space selectors, the `analyze`, `catalog`
//! and `grid` commands, and the verification suite behind `verify`.

pub mod commands;
pub mod error;
pub mod selector;
pub mod verify;

pub use error::CliError;
