// SPDX-License-Identifier: Apache-2.0

//! C-ladders and the even threads hanging above 0-nodes.
//!
//! A ladder starts at a hub `h` and pumps it repeatedly with `k -> 4k + 1`.
//! Each rung records the raw image `3x + 1`; adjacent images differ by a
//! factor of exactly 4, so every pumped node falls down the even side to the
//! same odd value as the hub.

use serde::Serialize;

use crate::arith::Nat;
use crate::error::{Error, Result};
use crate::node::{classify, pump_up, NodeInfo, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rung {
    pub node: Nat,
    /// `3 * node + 1`, the even top of the rung.
    pub image: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CLadder {
    pub hub: NodeInfo,
    pub rungs: Vec<Rung>,
    /// Number of pumps applied; `rungs.len() == length + 1`.
    pub length: usize,
}

impl CLadder {
    pub fn nodes(&self) -> impl Iterator<Item = &Nat> {
        self.rungs.iter().map(|r| &r.node)
    }
}

pub fn generate_ladder(hub: &NodeInfo, pumps: usize) -> Result<CLadder> {
    if !hub.is_hub() {
        return Err(Error::domain(&hub.value, "not a hub (value ≡ 5 mod 8)"));
    }
    let mut rungs = Vec::with_capacity(pumps + 1);
    let mut node = hub.value.clone();
    for i in 0..=pumps {
        let image = &node * 3u32 + 1u32;
        let next = if i < pumps { Some(pump_up(&node)?) } else { None };
        rungs.push(Rung { node, image });
        match next {
            Some(n) => node = n,
            None => break,
        }
    }
    Ok(CLadder {
        hub: hub.clone(),
        rungs,
        length: pumps,
    })
}

/// Kinds (with 0-node characters) of every node on the ladder, in pump order.
pub fn pump_kind_sequence(ladder: &CLadder) -> Vec<NodeKind> {
    ladder
        .nodes()
        .map(|n| classify(n).expect("ladder nodes are odd").kind)
        .collect()
}

/// Even preimages `2z, 4z, ..., 2^depth z` of a 0-node `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenThread {
    #[serde(serialize_with = "crate::json::nat")]
    pub zero_node: Nat,
    #[serde(serialize_with = "crate::json::nats")]
    pub preimages: Vec<Nat>,
}

pub fn even_thread(zero: &NodeInfo, depth: usize) -> Result<EvenThread> {
    if !zero.kind.is_zero() {
        return Err(Error::domain(&zero.value, "even threads end at 0-nodes only"));
    }
    let preimages = (1..=depth as u64).map(|j| &zero.value << j).collect();
    Ok(EvenThread {
        zero_node: zero.value.clone(),
        preimages,
    })
}
