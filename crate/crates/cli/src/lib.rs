//! Support library for the `twistbound` binary: flattened survey rows and
//! their tabular encodings.

pub mod survey;
