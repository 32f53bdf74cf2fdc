//! Exact computations with δ-sequences of plane valuations at infinity:
//! validation, invariants, value semigroups, proximity clusters and the
//! curves with one place at infinity attached to them.

pub mod values;
pub mod delta;
pub mod semigroup;
pub mod proximity;
pub mod curves;
pub mod cli;
