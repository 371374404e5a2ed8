//! The book in `book/src` is written for mdBook, which cannot build listings
//! that depend on workspace crates. Each chapter is included here as the docs
//! of an empty module instead, so `cargo test --doc` compiles and runs every
//! listing against the current library. The README is checked the same way.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/vector-statistics.md")]
pub mod vector_statistics {}

#[doc = include_str!("../../../book/src/losses.md")]
pub mod losses {}

#[doc = include_str!("../../../book/src/constant-fits.md")]
pub mod constant_fits {}

#[doc = include_str!("../../../book/src/linear-fits.md")]
pub mod linear_fits {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}

#[doc = include_str!("../../../book/src/hydrology.md")]
pub mod hydrology {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
