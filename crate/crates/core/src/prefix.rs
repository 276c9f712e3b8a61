// SPDX-License-Identifier: Apache-2.0

//! Prefix equations: affine congruence maps from a 0-node index `m` to the
//! index `p` of the node reached after a fixed string of 1/2 steps.
//!
//! A prefix is written in table orientation: the endpoint symbol is leftmost
//! and the terminal `0` (the starting 0-node) is rightmost, so `"1220"`
//! means: start at `6m + 3`, take a 2-step, a 2-step, then a 1-step, landing
//! on the 1-node `6p + 5`. The compiled form is
//!
//! ```text
//! p = (3^L m + C) / 2^K,   valid iff m ≡ m0 (mod 2^K),   p = p0 + 3^L k
//! ```
//!
//! with `L` the number of binary symbols and `K` the total number of
//! halvings (1 per `1`, 2 per `2`). `C` is kept as an exact signed integer
//! over `2^K`, never reduced.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{pow2, pow3, residue, Nat};
use crate::error::{Error, Result};
use crate::exec;
use crate::itinerary::{primitive_backward, primitive_forward, DEFAULT_BUDGET};
use crate::node::classify;

/// Node type reached at the end of a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TerminalKind {
    /// Bare `"0"`: the identity family, endpoint `6m + 3`.
    Zero,
    /// Endpoint `6p + 5`.
    One,
    /// Endpoint `6p + 1`.
    Two,
}

impl TerminalKind {
    fn from_symbol(sym: u8) -> Self {
        match sym {
            0 => TerminalKind::Zero,
            1 => TerminalKind::One,
            _ => TerminalKind::Two,
        }
    }

    /// `r` in `endpoint = 6p + r`.
    pub fn offset(self) -> u32 {
        match self {
            TerminalKind::Zero => 3,
            TerminalKind::One => 5,
            TerminalKind::Two => 1,
        }
    }
}

/// Parses a prefix into its binary symbols (table order, `0` stripped).
pub fn parse_prefix(text: &str) -> Result<Vec<u8>> {
    let err = |reason: &str| Error::Parse {
        prefix: text.to_owned(),
        reason: reason.to_owned(),
    };
    let body = text
        .strip_suffix('0')
        .ok_or_else(|| err("a prefix must end with the terminal 0"))?;
    body.bytes()
        .map(|b| match b {
            b'1' => Ok(1),
            b'2' => Ok(2),
            b'0' => Err(err("0 may only appear once, as the last symbol")),
            _ => Err(err("symbols must be 0, 1 or 2")),
        })
        .collect()
}

fn render_prefix(symbols: &[u8]) -> String {
    symbols
        .iter()
        .map(|s| char::from(b'0' + s))
        .chain(std::iter::once('0'))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixEquation {
    pub prefix: String,
    #[serde(rename = "L")]
    pub length: u32,
    #[serde(rename = "K")]
    pub halvings: u64,
    #[serde(rename = "C", serialize_with = "crate::json::nat")]
    pub intercept: BigInt,
    #[serde(serialize_with = "crate::json::nat")]
    pub m0: Nat,
    #[serde(serialize_with = "crate::json::nat")]
    pub p0: Nat,
    pub terminal_kind: TerminalKind,
}

impl PrefixEquation {
    fn solve(
        symbols: &[u8],
        halvings: u64,
        intercept: BigInt,
    ) -> Result<PrefixEquation> {
        let length = symbols.len() as u32;
        let prefix = render_prefix(symbols);
        let modulus = pow2(halvings);
        let slope = pow3(length);
        let m0 = if halvings == 0 {
            Nat::zero()
        } else {
            let inv = (&slope % &modulus)
                .modinv(&modulus)
                .expect("3^L is a unit modulo 2^K");
            let target = (-&intercept).mod_floor(&BigInt::from(modulus.clone()));
            let target = target.to_biguint().expect("mod_floor is nonnegative");
            (target * inv) % &modulus
        };
        let numer = BigInt::from(&slope * &m0) + &intercept;
        let (p0, rem) = numer.div_rem(&BigInt::from(modulus));
        if !rem.is_zero() || p0.is_negative() {
            return Err(Error::Consistency(format!(
                "prefix {prefix}: m0 = {m0} does not give a nonnegative integer p"
            )));
        }
        Ok(PrefixEquation {
            terminal_kind: TerminalKind::from_symbol(symbols.first().copied().unwrap_or(0)),
            prefix,
            length,
            halvings,
            intercept,
            m0,
            p0: p0.to_biguint().expect("checked nonnegative"),
        })
    }

    /// Binary symbols in table order (endpoint symbol first).
    pub fn symbols(&self) -> Vec<u8> {
        parse_prefix(&self.prefix).expect("stored prefixes are well formed")
    }

    /// Symbol nearest the endpoint, or 0 for the bare prefix.
    pub fn leading_symbol(&self) -> u8 {
        self.prefix.as_bytes()[0] - b'0'
    }

    /// `3^L`.
    pub fn slope(&self) -> Nat {
        pow3(self.length)
    }

    /// `2^K`.
    pub fn modulus(&self) -> Nat {
        pow2(self.halvings)
    }

    pub fn m_at(&self, k: u64) -> Nat {
        &self.m0 + self.modulus() * k
    }

    pub fn p_at(&self, k: u64) -> Nat {
        &self.p0 + self.slope() * k
    }

    /// Evaluates `(3^L m + C) / 2^K`; `None` when `m` is outside the class.
    pub fn p_of(&self, m: &Nat) -> Option<Nat> {
        let numer = BigInt::from(self.slope() * m) + &self.intercept;
        let (q, r) = numer.div_rem(&BigInt::from(self.modulus()));
        (r.is_zero() && !q.is_negative()).then(|| q.to_biguint().unwrap())
    }

    pub fn row(&self, k: u64) -> ProgressionRow {
        let m = self.m_at(k);
        let p = self.p_at(k);
        let endpoint = &p * 6u32 + self.terminal_kind.offset();
        ProgressionRow {
            k,
            zero_node: &m * 6u32 + 3u32,
            is_pump: residue(&endpoint, 8) == 5,
            m,
            p,
            endpoint,
        }
    }
}

impl fmt::Display for PrefixEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.intercept.sign() == Sign::Minus { '-' } else { '+' };
        write!(
            f,
            "p = ({} m {} {}) / {} ; m ≡ {} (mod {}) ; p = {} + {} k",
            self.slope(),
            sign,
            self.intercept.magnitude(),
            self.modulus(),
            self.m0,
            self.modulus(),
            self.p0,
            self.slope(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressionRow {
    pub k: u64,
    #[serde(serialize_with = "crate::json::nat")]
    pub m: Nat,
    #[serde(serialize_with = "crate::json::nat")]
    pub zero_node: Nat,
    #[serde(serialize_with = "crate::json::nat")]
    pub p: Nat,
    #[serde(serialize_with = "crate::json::nat")]
    pub endpoint: Nat,
    pub is_pump: bool,
}

/// Composes the step maps symbolically over `x = 6m + 3` and solves the
/// resulting congruence.
pub fn compile_prefix(text: &str) -> Result<PrefixEquation> {
    let symbols = parse_prefix(text)?;
    // x = (coef·m + offset) / 2^halvings, coef = 6·3^i after i steps.
    let mut offset = BigInt::from(3);
    let mut halvings = 0u64;
    for &sym in symbols.iter().rev() {
        offset = offset * 3 + BigInt::from(pow2(halvings));
        halvings += u64::from(sym);
    }
    let terminal = TerminalKind::from_symbol(symbols.first().copied().unwrap_or(0));
    let numer = offset - BigInt::from(pow2(halvings)) * terminal.offset();
    let (intercept, rem) = numer.div_rem(&BigInt::from(6));
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "prefix {text}: endpoint offset is not a multiple of 6"
        )));
    }
    PrefixEquation::solve(&symbols, halvings, intercept)
}

/// Shift added after scaling when moving from a node ending in `from` to
/// one ending in `to`, in units of 1/4. `from = 0` is the root: those two
/// entries reproduce the initial conditions `p = 3m/2` and `p = 3m/4 + 1/4`.
fn shift_quarters(from: u8, to: u8) -> i64 {
    match (from, to) {
        (1, 1) | (1, 2) => 2,
        (2, 1) => -2,
        (2, 2) => 0,
        (0, 1) => 0,
        (0, 2) => 1,
        _ => unreachable!("symbols are 0, 1, 2"),
    }
}

/// Grows an equation by one symbol using the scale/shift rules
/// (scale 3/2 for a 1-step, 3/4 for a 2-step, then the transition shift),
/// and checks the result against compilation from scratch.
pub fn extend(parent: &PrefixEquation, symbol: u8) -> Result<PrefixEquation> {
    if symbol != 1 && symbol != 2 {
        return Err(Error::Parse {
            prefix: format!("{symbol}{}", parent.prefix),
            reason: "only 1 or 2 can extend a prefix".to_owned(),
        });
    }
    let halvings = parent.halvings + u64::from(symbol);
    let shift = BigInt::from(shift_quarters(parent.leading_symbol(), symbol)) * BigInt::from(pow2(halvings));
    let (shift, rem) = shift.div_rem(&BigInt::from(4));
    debug_assert!(rem.is_zero());
    let intercept = &parent.intercept * 3 + shift;

    let mut symbols = vec![symbol];
    symbols.extend(parent.symbols());
    let child = PrefixEquation::solve(&symbols, halvings, intercept)?;
    let compiled = compile_prefix(&child.prefix)?;
    if child != compiled {
        return Err(Error::Consistency(format!(
            "scale/shift rule gives {child} for {} but compilation gives {compiled}",
            child.prefix
        )));
    }
    Ok(child)
}

/// Applies the step maps of `eq` to `x`, checking that every intermediate
/// value is a node of the expected kind.
pub fn apply_steps(eq: &PrefixEquation, x: &Nat) -> Result<Nat> {
    let mut x = x.clone();
    for sym in eq.symbols().into_iter().rev() {
        let lifted = &x * 3u32 + 1u32;
        let divisor = if sym == 1 { 2u32 } else { 4 };
        let want = if sym == 1 { 5 } else { 1 };
        if residue(&lifted, divisor) != 0 {
            return Err(Error::Consistency(format!(
                "{} step of prefix {} is not exact at {x}",
                sym, eq.prefix
            )));
        }
        x = lifted / divisor;
        if residue(&x, 6) != want {
            return Err(Error::Consistency(format!(
                "prefix {}: step produced {x}, not a {sym}-node",
                eq.prefix
            )));
        }
    }
    Ok(x)
}

/// First `rows` members of the progression, each re-verified by applying the
/// step maps to its 0-node.
pub fn enumerate(eq: &PrefixEquation, rows: u64) -> Result<Vec<ProgressionRow>> {
    (0..rows)
        .map(|k| {
            let row = eq.row(k);
            let reached = apply_steps(eq, &row.zero_node)?;
            if reached != row.endpoint {
                return Err(Error::Consistency(format!(
                    "prefix {}: 0-node {} reaches {reached}, equation says {}",
                    eq.prefix, row.zero_node, row.endpoint
                )));
            }
            Ok(row)
        })
        .collect()
}

/// The residue of `k` mod 4 whose endpoint is a pump.
pub fn pump_phase(eq: &PrefixEquation) -> u32 {
    let hits: Vec<u32> = (0..4u32).filter(|&k| eq.row(u64::from(k)).is_pump).collect();
    assert_eq!(hits.len(), 1, "endpoints step by 2 (mod 8) * odd, one pump per 4 rows");
    hits[0]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixNode {
    pub equation: PrefixEquation,
    /// Children for symbols 1 and 2, in that order; empty at the leaves.
    pub children: Vec<PrefixNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTree {
    pub depth: u32,
    pub root: PrefixNode,
}

impl PrefixTree {
    /// Preorder walk.
    pub fn nodes(&self) -> Vec<&PrefixNode> {
        let mut out = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nodes().len() - 1
    }

    /// Equations with exactly `length` binary symbols, ordered by prefix.
    pub fn level(&self, length: u32) -> Vec<&PrefixEquation> {
        let mut out: Vec<_> = self
            .nodes()
            .into_iter()
            .map(|n| &n.equation)
            .filter(|e| e.length == length)
            .collect();
        out.sort_by(|a, b| a.prefix.cmp(&b.prefix));
        out
    }

    pub fn find(&self, prefix: &str) -> Option<&PrefixEquation> {
        self.nodes()
            .into_iter()
            .map(|n| &n.equation)
            .find(|e| e.prefix == prefix)
    }
}

fn build_subtree(equation: PrefixEquation, remaining: u32) -> Result<PrefixNode> {
    if remaining == 0 {
        return Ok(PrefixNode {
            equation,
            children: Vec::new(),
        });
    }
    let (one, two) = exec::join(
        || extend(&equation, 1).and_then(|c| build_subtree(c, remaining - 1)),
        || extend(&equation, 2).and_then(|c| build_subtree(c, remaining - 1)),
    );
    Ok(PrefixNode {
        equation,
        children: vec![one?, two?],
    })
}

/// Complete binary tree of prefix equations to `depth` binary symbols,
/// grown from the bare `"0"` root by [`extend`].
pub fn build_tree(depth: u32) -> Result<PrefixTree> {
    let root = compile_prefix("0")?;
    Ok(PrefixTree {
        depth,
        root: build_subtree(root, depth)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageFailure {
    pub value: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub bound: u64,
    /// 1- and 2-nodes examined (value 1 excluded).
    pub checked: u64,
    pub covered: u64,
    /// Values left out as the trivial cycle.
    pub excluded: Vec<u64>,
    pub failures: Vec<CoverageFailure>,
    /// Longest backward trace, in steps.
    pub max_depth: u64,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.covered == self.checked
    }
}

fn cover_one(v: u64, max_depth: u64) -> std::result::Result<u64, String> {
    let node = classify(&Nat::from(v)).map_err(|e| e.to_string())?;
    let back = primitive_backward(&node, max_depth).map_err(|e| e.to_string())?;
    let fwd = primitive_forward(back.start(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let n = back.len();
    if fwd.len() < n || fwd.nodes()[..n] != *back.nodes() {
        return Err(format!(
            "forward itinerary from {} does not pass through {v}",
            back.start().value
        ));
    }
    if node.is_pump() && fwd.len() != n {
        return Err(format!("forward itinerary from {} overshoots pump {v}", back.start().value));
    }
    Ok(n as u64 - 1)
}

/// Checks that every 1-node and 2-node below `bound` (other than 1) lies on
/// a primitive itinerary: the backward trace reaches a 0-node and the
/// forward itinerary from that 0-node passes through the value.
pub fn coverage_check(bound: u64) -> CoverageReport {
    coverage_check_with(bound, exec::available_parallelism(), DEFAULT_BUDGET)
}

pub fn coverage_check_with(bound: u64, partitions: usize, max_depth: u64) -> CoverageReport {
    let chunks = exec::split_range(1, bound, partitions);
    let parts = exec::map_ordered(&chunks, |&(lo, hi)| {
        let mut checked = 0u64;
        let mut depth = 0u64;
        let mut excluded = Vec::new();
        let mut failures = Vec::new();
        for v in ((lo | 1)..hi).step_by(2) {
            if v % 6 == 3 {
                continue;
            }
            if v == 1 {
                excluded.push(v);
                continue;
            }
            checked += 1;
            match cover_one(v, max_depth) {
                Ok(d) => depth = depth.max(d),
                Err(reason) => failures.push(CoverageFailure { value: v, reason }),
            }
        }
        (checked, depth, excluded, failures)
    });
    let mut report = CoverageReport {
        bound,
        checked: 0,
        covered: 0,
        excluded: Vec::new(),
        failures: Vec::new(),
        max_depth: 0,
    };
    for (checked, depth, excluded, failures) in parts {
        report.checked += checked;
        report.covered += checked - failures.len() as u64;
        report.max_depth = report.max_depth.max(depth);
        report.excluded.extend(excluded);
        report.failures.extend(failures);
    }
    report
}

/// Plain-integer view of an intercept, for display and tests.
pub fn intercept_i64(eq: &PrefixEquation) -> Option<i64> {
    eq.intercept.to_i64()
}
