// SPDX-License-Identifier: Apache-2.0

//! Exact integer primitives shared by every other module.
//!
//! Values are arbitrary precision throughout; expansive constructions with a
//! large exponent leave the 64-bit range after a few dozen steps. A `u64`
//! fast path is provided for the brute-force sweeps and falls back to the
//! big-integer path on overflow, so results are identical on overlap.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Nat = BigUint;

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

/// `x mod m` for a small modulus.
pub fn residue(x: &Nat, m: u32) -> u32 {
    (x % m).to_u32().expect("remainder fits the modulus")
}

pub fn is_odd(x: &Nat) -> bool {
    x.bit(0)
}

/// 2-adic valuation: the largest `e` with `2^e | n`.
pub fn v2(n: &Nat) -> Result<u64> {
    n.trailing_zeros()
        .ok_or_else(|| Error::domain(0, "2-adic valuation of zero is undefined"))
}

/// One application of the Collatz map: `x/2` for even `x`, `3x+1` for odd `x`.
pub fn collatz_step(x: &Nat) -> Result<Nat> {
    if x.is_zero() {
        return Err(Error::domain(0, "the Collatz map is defined on positive integers"));
    }
    Ok(if is_odd(x) { x * 3u32 + 1u32 } else { x >> 1 })
}

/// Accelerated odd-to-odd step: returns `(3x+1) / 2^d` and `d = v2(3x+1)`.
///
/// `x = 1` is accepted and returns `(1, 2)`.
pub fn odd_to_odd(x: &Nat) -> Result<(Nat, u64)> {
    if !is_odd(x) {
        return Err(Error::domain(x, "odd_to_odd requires an odd input"));
    }
    let lifted = x * 3u32 + 1u32;
    let d = lifted.trailing_zeros().expect("3x+1 is nonzero");
    Ok((lifted >> d, d))
}

/// `2^e` as a big integer.
pub fn pow2(e: u64) -> Nat {
    Nat::one() << e
}

/// `3^e` as a big integer.
pub fn pow3(e: u32) -> Nat {
    num_traits::pow(nat(3), e as usize)
}

/// `u64` version of [`collatz_step`]; `None` on overflow or zero input.
#[inline]
pub fn collatz_step_u64(x: u64) -> Option<u64> {
    match x {
        0 => None,
        x if x & 1 == 1 => x.checked_mul(3)?.checked_add(1),
        x => Some(x >> 1),
    }
}

/// `u64` version of [`odd_to_odd`]; `None` on overflow or even input.
#[inline]
pub fn odd_to_odd_u64(x: u64) -> Option<(u64, u32)> {
    if x & 1 == 0 {
        return None;
    }
    let lifted = x.checked_mul(3)?.checked_add(1)?;
    let d = lifted.trailing_zeros();
    Some((lifted >> d, d))
}
