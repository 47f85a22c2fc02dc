//! Runs every Rust snippet in the book as a doctest, so the guide cannot
//! drift from the library. Compiled only under `cargo test --doc` (rustdoc
//! sets `--cfg doctest`).

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/special-form.md")]
pub mod special_form {}

#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic_rings {}

#[doc = include_str!("../../../book/src/seeds.md")]
pub mod fixed_seeds {}

#[doc = include_str!("../../../book/src/recurrences.md")]
pub mod recurrences {}

#[doc = include_str!("../../../book/src/decision.md")]
pub mod decision_procedure {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles_and_self_checks {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod command_line {}
