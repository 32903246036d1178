//! Front end for the `nlie` command: the `.nlie` format and command drivers.

pub mod commands;
pub mod format;
