//! Constructive names of countable ordinals.
//!
//! [`names`] builds names, [`compare`] decides `≤` and `<` where a bounded search
//! can, [`kernel`] checks derivations, [`arith`] provides ordinal arithmetic up to
//! ε₀, [`trees`] encodes names as well-founded trees of naturals and [`mlseq`] is a
//! small two-rule sequent calculus used for comparison experiments.

// Names hash and compare by identity token; their interior caches never change it.
#![allow(clippy::mutable_key_type)]

pub mod arith;
pub mod bits;
pub mod compare;
pub mod kernel;
pub mod laws;
pub mod mlseq;
pub mod names;
pub mod oracle;
pub mod trees;

pub use compare::{Fuel, TriBool, Verdict};
pub use names::{omega, suc, suc_list, sup_family, sup_finite, und, Family, Index, OrdName};
