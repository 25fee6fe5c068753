//! The guide under `book/`, compiled so its code blocks run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/designs.md")]
pub mod designs {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/block-graph.md")]
pub mod block_graph {}

#[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
pub mod exact_linear_algebra {}

#[doc = include_str!("../../../book/src/tightness.md")]
pub mod tightness {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
