//! Homogeneous weights, modular two-weight codes, strongly regular graphs and
//! partial difference sets over finite Frobenius rings.
//!
//! Rings are explicit operation tables ([`ring`]); homogeneous weights are
//! exact rationals ([`weight`]); codes are enumerated eagerly ([`code`]) and
//! the graph and duality constructions ([`graph`], [`dual`]) are checked by
//! brute force against their closed forms.

pub mod code;
pub mod codefile;
pub mod dual;
pub mod error;
pub mod exec;
pub mod graph;
pub mod module;
pub mod rational;
pub mod search;
pub mod report;
pub mod ring;
pub mod spec;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use module::{RingModuleSpan, Side, Word};
pub use rational::Rational;
pub use ring::{build_ring, build_ring_with_cap, Elem, FiniteRing, GeneratingCharacter};
pub use spec::RingSpec;
pub use weight::WeightTable;
