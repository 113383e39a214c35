//! The `wallkit` command-line tool: JSON file formats, SVG output, parallel
//! search drivers and the subcommands built on them.

pub mod commands;
pub mod driver;
pub mod format;
pub mod svg;
