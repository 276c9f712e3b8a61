// SPDX-License-Identifier: Apache-2.0

//! Expansive/dissipative classification and the 1-node run constructor.
//!
//! A binary tail with `m` ones and `n` twos scales a value by roughly
//! `(3/2)^m (3/4)^n`. Every comparison here uses the exact integer form
//! `3^(m+n) > 2^(m+2n)`; [`gamma`] exists only for display.

use num_traits::One;
use serde::Serialize;

use crate::arith::{is_odd, pow2, pow3, Nat};
use crate::error::{Error, Result};
use crate::itinerary::PrimitiveItinerary;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub ones: u32,
    pub twos: u32,
    #[serde(serialize_with = "crate::json::nat")]
    pub start: Nat,
    #[serde(serialize_with = "crate::json::nat")]
    pub end: Nat,
    pub expansive_by_value: bool,
    pub expansive_asymptotic: bool,
}

/// Strict test `(3/2)^ones (3/4)^twos > 1`, in integers.
pub fn is_expansive(ones: u32, twos: u32) -> bool {
    pow3(ones + twos) > pow2(u64::from(ones) + 2 * u64::from(twos))
}

pub fn analyze(it: &PrimitiveItinerary) -> StabilityReport {
    let tail = &it.symbols()[1..];
    let ones = tail.iter().filter(|&&s| s == 1).count() as u32;
    let twos = tail.iter().filter(|&&s| s == 2).count() as u32;
    let start = it.start().value.clone();
    let end = it.end().value.clone();
    StabilityReport {
        ones,
        twos,
        expansive_by_value: end > start,
        expansive_asymptotic: is_expansive(ones, twos),
        start,
        end,
    }
}

/// `log(4/3) / log(3/2)`, about 0.7095.
pub fn gamma() -> f64 {
    (4.0f64 / 3.0).ln() / 1.5f64.ln()
}

/// Largest admissible number of twos in an expansive tail of a given length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBound {
    pub max_twos: u32,
    /// False when not even the all-ones tail is expansive (length 0).
    pub any_expansive: bool,
}

/// `length` counts the binary symbols after the leading 0.
pub fn max_twos(length: u32) -> TwoBound {
    let three_n = pow3(length);
    let best = (0..=length)
        .take_while(|&n| three_n > pow2(u64::from(length) + u64::from(n)))
        .last();
    TwoBound {
        max_twos: best.unwrap_or(0),
        any_expansive: best.is_some(),
    }
}

fn binomial(n: u32, k: u32) -> Nat {
    (0..k).fold(Nat::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{k=0}^{max_twos(length)} C(length, k)`.
///
/// At length 0 the sum is taken literally and yields 1 (the empty tail).
pub fn count_expansive(length: u32) -> Nat {
    let bound = max_twos(length).max_twos;
    (0..=bound).map(|k| binomial(length, k)).sum()
}

/// A run of `M + 1` consecutive 1-nodes under `y -> (3y + 1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansiveRun {
    #[serde(serialize_with = "crate::json::nat")]
    pub s: Nat,
    #[serde(rename = "M")]
    pub exponent: u32,
    /// `s * 2^M - 1`.
    #[serde(serialize_with = "crate::json::nat")]
    pub p0: Nat,
    #[serde(serialize_with = "crate::json::nats")]
    pub nodes: Vec<Nat>,
    /// `y_{M+1} = s * 3^(M+2) - 1`.
    #[serde(serialize_with = "crate::json::nat")]
    pub terminal_even: Nat,
}

/// Starts from `y_0 + 1 = 3 s 2^(M+1)` and multiplies `y + 1` by 3/2 until
/// the powers of two run out.
pub fn construct_expansive(s: &Nat, exponent: u32) -> Result<ExpansiveRun> {
    if !is_odd(s) {
        return Err(Error::domain(s, "s must be odd"));
    }
    if exponent == 0 {
        return Err(Error::domain(exponent, "M must be at least 1"));
    }
    let p0 = s * pow2(u64::from(exponent)) - 1u32;
    let mut y = s * 3u32 * pow2(u64::from(exponent) + 1) - 1u32;
    let mut nodes = Vec::with_capacity(exponent as usize + 1);
    for _ in 0..=exponent {
        let next = (&y * 3u32 + 1u32) >> 1;
        nodes.push(y);
        y = next;
    }
    Ok(ExpansiveRun {
        s: s.clone(),
        exponent,
        p0,
        nodes,
        terminal_even: y,
    })
}
