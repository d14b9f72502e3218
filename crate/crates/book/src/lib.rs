//! The guide's chapters compiled as rustdoc so that `cargo test` runs every
//! snippet.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/crosstalk.md")]
pub mod crosstalk {}
#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}
#[doc = include_str!("../../../book/src/qot.md")]
pub mod qot {}
#[doc = include_str!("../../../book/src/modulation.md")]
pub mod modulation {}
#[doc = include_str!("../../../book/src/network.md")]
pub mod network {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
