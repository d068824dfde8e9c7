//! Library side of the `hexforge` command-line tool.
pub mod commands;
pub mod fixtures;
pub mod verify;
