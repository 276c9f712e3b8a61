// SPDX-License-Identifier: Apache-2.0

//! Symbolic dynamics for the Collatz map.
//!
//! Odd integers are sorted into 0-, 1- and 2-nodes (by residue mod 6) and into
//! hubs and pumps (by residue mod 8). Chains of hubs from a 0-node up to the
//! first pump are primitive itineraries; their symbol strings are solved as
//! affine congruences in [`prefix`]. [`oracle`] checks all of it against the
//! raw map.

pub mod arith;
pub mod error;
pub mod exec;
pub mod itinerary;
pub(crate) mod json;
pub mod ladder;
pub mod node;
pub mod oracle;
pub mod prefix;
pub mod reports;
pub mod stability;

pub use arith::{nat, Nat};
pub use error::{Error, Result};
pub use itinerary::{primitive_backward, primitive_forward, PrimitiveItinerary, SequenceRendering};
pub use node::{classify, NodeInfo, NodeKind, NodeRole};
