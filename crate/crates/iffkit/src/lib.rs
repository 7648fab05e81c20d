//! File formats, the bundled corpus, verification suites and the command-line
//! front end for `iffkit-core`.

pub mod cli;
pub mod corpus;
pub mod formats;
pub mod verify;
