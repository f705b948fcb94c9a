//! Problem files, command dispatch and reports on top of `prodesc-core`.

pub mod problem;
pub mod report;
pub mod run;
pub mod verify;
