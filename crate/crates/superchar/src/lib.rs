//! IO companion to `superchar-core`: JSON/JSONL formats and DOT export.

pub mod format;
pub mod lattice;

pub use superchar_core as core;
