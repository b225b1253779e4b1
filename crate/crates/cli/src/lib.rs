//! File formats and subcommands behind the `netcache` binary.

pub mod bench;
pub mod commands;
pub mod error;
pub mod format;
pub mod source;
pub mod verify;
