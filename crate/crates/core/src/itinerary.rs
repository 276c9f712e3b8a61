// SPDX-License-Identifier: Apache-2.0

//! Primitive itineraries: odd-node chains from a 0-node through hubs to the
//! first pump, and their symbol strings over `{0, 1, 2}`.
//!
//! Symbols are kept in chronological order (0 first). The tables print them
//! reversed with the 0-node rightmost; that is a rendering concern only.

use std::fmt;

use serde::Serialize;

use crate::arith::{odd_to_odd, Nat};
use crate::error::{Error, Result};
use crate::node::{classify, first_odd_preimage, Character, NodeInfo, NodeKind};

/// Step budget used when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A chain of odd nodes starting at a 0-node.
///
/// Forward extraction always closes the chain at a pump. Backward traces
/// from a hub end at that hub instead, which makes the chain a prefix of the
/// primitive itinerary through it; see [`PrimitiveItinerary::ends_at_pump`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveItinerary {
    nodes: Vec<NodeInfo>,
    divisors: Vec<u8>,
    symbols: Vec<u8>,
}

impl PrimitiveItinerary {
    fn from_nodes(nodes: Vec<NodeInfo>) -> Self {
        let symbols = nodes.iter().map(|n| n.kind.code()).collect();
        let divisors = nodes[1..]
            .iter()
            .map(|n| if n.kind == NodeKind::One { 2 } else { 4 })
            .collect();
        PrimitiveItinerary {
            nodes,
            divisors,
            symbols,
        }
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    /// Per-step divisor: 2 into a 1-node, 4 into a 2-node.
    pub fn divisors(&self) -> &[u8] {
        &self.divisors
    }

    /// Chronological symbol list; the first entry is always 0.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn start(&self) -> &NodeInfo {
        &self.nodes[0]
    }

    pub fn end(&self) -> &NodeInfo {
        self.nodes.last().expect("itineraries are never empty")
    }

    /// Node count, both endpoints included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ends_at_pump(&self) -> bool {
        self.end().is_pump()
    }

    pub fn start_character(&self) -> Character {
        self.start()
            .kind
            .character()
            .expect("itineraries start at a 0-node")
    }

    pub fn render(&self) -> SequenceRendering {
        render(self)
    }

    /// Chain notation, e.g. `9:0 ->4 7:2 ->2 11:1`.
    pub fn chain_text(&self) -> String {
        let mut out = format!("{}:{}", self.nodes[0].value, self.nodes[0].kind.code());
        for (node, d) in self.nodes[1..].iter().zip(&self.divisors) {
            out.push_str(&format!(" ->{d} {}:{}", node.value, node.kind.code()));
        }
        out
    }
}

/// Table form of a symbol string: reversed, with the start annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRendering {
    pub text: String,
    #[serde(serialize_with = "crate::json::nat")]
    pub start_value: Nat,
    pub start_character: Character,
}

impl fmt::Display for SequenceRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{{{}({})}}",
            self.text, self.start_value, self.start_character
        )
    }
}

pub fn render(it: &PrimitiveItinerary) -> SequenceRendering {
    let text = it
        .symbols
        .iter()
        .rev()
        .map(|s| char::from(b'0' + s))
        .collect();
    SequenceRendering {
        text,
        start_value: it.start().value.clone(),
        start_character: it.start_character(),
    }
}

/// Follows `odd_to_odd` from a 0-node to the first pump.
pub fn primitive_forward(zero: &NodeInfo, budget: u64) -> Result<PrimitiveItinerary> {
    if !zero.kind.is_zero() {
        return Err(Error::domain(&zero.value, "primitive itineraries start at a 0-node"));
    }
    let mut nodes = vec![zero.clone()];
    let mut steps = 0u64;
    while !nodes.last().unwrap().is_pump() {
        if steps == budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let (next, d) = odd_to_odd(&nodes.last().unwrap().value)?;
        debug_assert!(d == 1 || d == 2, "hubs divide by 2 or 4");
        let next = classify(&next)?;
        if next.value == Nat::from(1u32) {
            return Err(Error::TrivialCycle);
        }
        nodes.push(next);
        steps += 1;
    }
    Ok(PrimitiveItinerary::from_nodes(nodes))
}

/// Follows first odd preimages from `end` back to a 0-node.
///
/// The trace from 1 never leaves 1 (`(4·1 - 1)/3 = 1`) and is reported as
/// [`Error::TrivialCycle`].
pub fn primitive_backward(end: &NodeInfo, max_depth: u64) -> Result<PrimitiveItinerary> {
    if end.value == Nat::from(1u32) {
        return Err(Error::TrivialCycle);
    }
    let mut chain = vec![end.clone()];
    let mut depth = 0u64;
    while !chain.last().unwrap().kind.is_zero() {
        if depth == max_depth {
            return Err(Error::BudgetExceeded(max_depth));
        }
        let pre = first_odd_preimage(chain.last().unwrap())?;
        chain.push(pre);
        depth += 1;
    }
    chain.reverse();
    Ok(PrimitiveItinerary::from_nodes(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    fn node(v: u64) -> NodeInfo {
        classify(&nat(v)).unwrap()
    }

    fn values(it: &PrimitiveItinerary) -> Vec<u64> {
        it.nodes()
            .iter()
            .map(|n| u64::try_from(&n.value).unwrap())
            .collect()
    }

    #[test]
    fn forward_examples() {
        let it = primitive_forward(&node(15), DEFAULT_BUDGET).unwrap();
        assert_eq!(values(&it), vec![15, 23, 35, 53]);
        assert_eq!(it.symbols(), &[0, 1, 1, 1]);
        assert_eq!(it.divisors(), &[2, 2, 2]);

        let it = primitive_forward(&node(9), DEFAULT_BUDGET).unwrap();
        assert_eq!(values(&it), vec![9, 7, 11, 17, 13]);
        assert_eq!(it.symbols(), &[0, 2, 1, 1, 2]);
        assert_eq!(it.chain_text(), "9:0 ->4 7:2 ->2 11:1 ->2 17:1 ->4 13:2");

        let it = primitive_forward(&node(21), DEFAULT_BUDGET).unwrap();
        assert_eq!(values(&it), vec![21]);
        assert_eq!(it.symbols(), &[0]);
        assert!(it.ends_at_pump());

        let it = primitive_forward(&node(33), DEFAULT_BUDGET).unwrap();
        assert_eq!(values(&it), vec![33, 25, 19, 29]);
        assert_eq!(it.symbols(), &[0, 2, 2, 1]);

        let it = primitive_forward(&node(81), DEFAULT_BUDGET).unwrap();
        assert_eq!(values(&it), vec![81, 61]);
    }

    #[test]
    fn forward_rejects_non_zero_and_respects_budget() {
        assert!(matches!(
            primitive_forward(&node(7), DEFAULT_BUDGET),
            Err(Error::Domain { .. })
        ));
        assert_eq!(
            primitive_forward(&node(9), 2),
            Err(Error::BudgetExceeded(2))
        );
    }

    #[test]
    fn backward_examples() {
        let r = primitive_backward(&node(13), DEFAULT_BUDGET).unwrap().render();
        assert_eq!(r.to_string(), "21120^{9(3)}");
        let r = primitive_backward(&node(53), DEFAULT_BUDGET).unwrap().render();
        assert_eq!(r.to_string(), "1110^{15(5)}");
        let r = primitive_backward(&node(85), DEFAULT_BUDGET).unwrap().render();
        assert_eq!(r.to_string(), "210^{75(1)}");
        assert_eq!(r.start_value, nat(75));
        assert_eq!(
            primitive_backward(&node(1), DEFAULT_BUDGET),
            Err(Error::TrivialCycle)
        );
        assert_eq!(
            primitive_backward(&node(13), 2),
            Err(Error::BudgetExceeded(2))
        );
    }

    #[test]
    fn backward_from_zero_and_hub() {
        let it = primitive_backward(&node(21), 10).unwrap();
        assert_eq!(values(&it), vec![21]);
        let it = primitive_backward(&node(3), 10).unwrap();
        assert_eq!(values(&it), vec![3]);
        assert!(!it.ends_at_pump());
        // 7 is a hub: the trace is a prefix of 9 -> 7 -> 11 -> 17 -> 13.
        let it = primitive_backward(&node(7), 10).unwrap();
        assert_eq!(values(&it), vec![9, 7]);
        assert_eq!(it.render().text, "20");
    }

    #[test]
    fn render_single_node() {
        let r = primitive_forward(&node(21), 10).unwrap().render();
        assert_eq!(r.to_string(), "0^{21(1)}");
    }

    #[test]
    fn divisor_law_and_structure_for_zero_nodes_below_1e5() {
        for z in (3u64..100_000).step_by(6) {
            let it = primitive_forward(&node(z), DEFAULT_BUDGET).unwrap();
            assert!(it.ends_at_pump());
            let n = it.len();
            for (i, w) in it.nodes().windows(2).enumerate() {
                let cur = u64::try_from(&w[0].value).unwrap();
                let d = it.divisors()[i];
                match cur % 8 {
                    3 | 7 => assert_eq!(d, 2),
                    1 => assert_eq!(d, 4),
                    _ => panic!("pump {cur} inside itinerary from {z}"),
                }
                assert_eq!(&w[1].value * u32::from(d), &w[0].value * 3u32 + 1u32);
                assert!(w[0].is_hub());
                if i + 1 < n - 1 {
                    assert!(!w[1].kind.is_zero());
                }
            }
        }
    }

    #[test]
    fn round_trip_for_pumps_below_1e5() {
        let mut max_depth = 0;
        for v in (5u64..100_000).step_by(8) {
            let back = primitive_backward(&node(v), 1000).unwrap();
            max_depth = max_depth.max(back.len() - 1);
            let fwd = primitive_forward(back.start(), DEFAULT_BUDGET).unwrap();
            assert_eq!(fwd, back, "v = {v}");
        }
        assert!(max_depth < 1000);
    }
}
