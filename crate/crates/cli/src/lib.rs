//! Report types and text rendering for the `hpm-taylor` binary.

pub mod output;
