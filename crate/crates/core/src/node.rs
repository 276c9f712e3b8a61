// SPDX-License-Identifier: Apache-2.0

//! The ternary node taxonomy on odd integers.
//!
//! Every odd `x` is a 0-node (`x ≡ 3 mod 6`), a 1-node (`x ≡ 5 mod 6`) or a
//! 2-node (`x ≡ 1 mod 6`). Independently it is either a pump (`x = 4k+1`
//! with `k` odd, i.e. `x ≡ 5 mod 8`) or a hub (`x mod 8 ∈ {1, 3, 7}`).

use std::fmt;

use serde::Serialize;

use crate::arith::{is_odd, residue, Nat};
use crate::error::{Error, Result};

/// The character `t ∈ {1, 3, 5}` of a 0-node `3(6n + t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Character(u8);

impl Character {
    pub fn new(t: u8) -> Option<Self> {
        matches!(t, 1 | 3 | 5).then_some(Character(t))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Character of the next 0-node reached three pumps further up a ladder.
    /// Cycles 1 -> 5 -> 3 -> 1.
    pub fn after_three_pumps(self) -> Self {
        Character((4 * self.0 + 1) % 6)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Zero(Character),
    One,
    Two,
}

impl NodeKind {
    /// Numeric symbol: 0, 1 or 2.
    pub fn code(self) -> u8 {
        match self {
            NodeKind::Zero(_) => 0,
            NodeKind::One => 1,
            NodeKind::Two => 2,
        }
    }

    pub fn character(self) -> Option<Character> {
        match self {
            NodeKind::Zero(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, NodeKind::Zero(_))
    }

    /// Kind code of `4x + 1` given the kind code of `x`: 0 -> 2 -> 1 -> 0.
    pub fn pumped_code(code: u8) -> u8 {
        match code {
            0 => 2,
            2 => 1,
            1 => 0,
            _ => unreachable!("kind codes are 0, 1, 2"),
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Zero(c) => write!(f, "0^({c})"),
            other => write!(f, "{}", other.code()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRole {
    Hub,
    Pump,
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeRole::Hub => "hub",
            NodeRole::Pump => "pump",
        })
    }
}

/// A classified odd integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeInfo {
    pub value: Nat,
    pub kind: NodeKind,
    pub role: NodeRole,
}

impl NodeInfo {
    pub fn is_hub(&self) -> bool {
        self.role == NodeRole::Hub
    }

    pub fn is_pump(&self) -> bool {
        self.role == NodeRole::Pump
    }

    /// Table notation `value:kind`, e.g. `3:0^(1)` or `17:1`.
    pub fn annotation(&self) -> String {
        format!("{}:{}", self.value, self.kind)
    }
}

impl fmt::Display for NodeInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            NodeKind::Zero(c) => format!("0-node (character {c})"),
            NodeKind::One => "1-node".to_owned(),
            NodeKind::Two => "2-node".to_owned(),
        };
        write!(f, "{} : {}, {}", self.value, kind, self.role)
    }
}

/// Role from `x mod 8` alone.
pub fn role_of(x: &Nat) -> NodeRole {
    if residue(x, 8) == 5 {
        NodeRole::Pump
    } else {
        NodeRole::Hub
    }
}

pub fn classify(x: &Nat) -> Result<NodeInfo> {
    if !is_odd(x) {
        return Err(Error::domain(x, "only odd integers are nodes"));
    }
    let kind = match residue(x, 6) {
        3 => {
            let t = residue(&(x / 3u32), 6) as u8;
            NodeKind::Zero(Character::new(t).expect("x/3 is odd"))
        }
        5 => NodeKind::One,
        1 => NodeKind::Two,
        _ => unreachable!("odd residues mod 6 are 1, 3, 5"),
    };
    Ok(NodeInfo {
        value: x.clone(),
        kind,
        role: role_of(x),
    })
}

/// `(2y-1)/3` for a 1-node, `(4y-1)/3` for a 2-node. Always a hub.
pub fn first_odd_preimage(y: &NodeInfo) -> Result<NodeInfo> {
    let scaled = match y.kind {
        NodeKind::One => &y.value * 2u32,
        NodeKind::Two => &y.value * 4u32,
        NodeKind::Zero(_) => {
            return Err(Error::domain(
                &y.value,
                "a 0-node has no odd preimage (all preimages are 2^n x)",
            ))
        }
    };
    let pre = (scaled - 1u32) / 3u32;
    let info = classify(&pre)?;
    debug_assert!(info.is_hub());
    Ok(info)
}

/// Kind code of the first odd preimage, read off `y` directly:
/// `((y+4)/3) mod 3` for 1-nodes and `((2y+4)/3) mod 3` for 2-nodes.
pub fn preimage_kind(y: &NodeInfo) -> Result<u8> {
    let numer = match y.kind {
        NodeKind::One => &y.value + 4u32,
        NodeKind::Two => &y.value * 2u32 + 4u32,
        NodeKind::Zero(_) => {
            return Err(Error::domain(&y.value, "a 0-node has no odd preimage"))
        }
    };
    let code = residue(&(numer / 3u32), 3) as u8;
    debug_assert_eq!(
        Some(code),
        first_odd_preimage(y).ok().map(|p| p.kind.code()),
        "preimage kind formula disagrees with direct preimage of {}",
        y.value
    );
    Ok(code)
}

/// `4k + 1`.
pub fn pump_up(k: &Nat) -> Result<Nat> {
    if !is_odd(k) {
        return Err(Error::domain(k, "pumping applies to odd values"));
    }
    Ok(k * 4u32 + 1u32)
}

/// `(x - 1)/4`, the inverse of [`pump_up`].
pub fn pump_down(x: &Nat) -> Result<Nat> {
    if residue(x, 4) != 1 {
        return Err(Error::domain(x, "only values ≡ 1 (mod 4) have a pump preimage"));
    }
    Ok((x - 1u32) >> 2)
}
