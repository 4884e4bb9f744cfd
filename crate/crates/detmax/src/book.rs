//! Compiles every Rust snippet in the mdbook guide as a doc-test, so the
//! book cannot drift from the library. `cargo test --doc` runs them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct BookIntroduction;

#[doc = include_str!("../../../book/src/volumes.md")]
pub struct BookVolumes;

#[doc = include_str!("../../../book/src/algorithms.md")]
pub struct BookAlgorithms;

#[doc = include_str!("../../../book/src/kernels.md")]
pub struct BookKernels;

#[doc = include_str!("../../../book/src/coresets.md")]
pub struct BookCoresets;

#[doc = include_str!("../../../book/src/heights.md")]
pub struct BookHeights;

#[doc = include_str!("../../../book/src/datasets.md")]
pub struct BookDatasets;

#[doc = include_str!("../../../book/src/cli.md")]
pub struct BookCli;
