// SPDX-License-Identifier: Apache-2.0

//! Cross-module properties on arbitrary-size inputs.

use collatz_symbolic::arith::{collatz_step, odd_to_odd};
use collatz_symbolic::itinerary::DEFAULT_BUDGET;
use collatz_symbolic::node::{first_odd_preimage, pump_up};
use collatz_symbolic::prefix::{compile_prefix, extend};
use collatz_symbolic::stability::{analyze, construct_expansive};
use collatz_symbolic::{classify, nat, primitive_backward, primitive_forward, Nat, NodeKind};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Odd values of up to 256 bits.
fn odd_big() -> impl Strategy<Value = Nat> {
    prop::collection::vec(any::<u8>(), 1..32).prop_map(|bytes| BigUint::from_bytes_le(&bytes) * 2u32 + 1u32)
}

fn zero_node() -> impl Strategy<Value = Nat> {
    prop::collection::vec(any::<u8>(), 1..24).prop_map(|bytes| BigUint::from_bytes_le(&bytes) * 6u32 + 3u32)
}

fn prefix() -> impl Strategy<Value = String> {
    prop::collection::vec(1u8..=2, 0..12)
        .prop_map(|s| s.iter().map(|d| char::from(b'0' + d)).chain(std::iter::once('0')).collect())
}

proptest! {
    #[test]
    fn classification_matches_residues(x in odd_big()) {
        let info = classify(&x).unwrap();
        let r6 = &x % 6u32;
        let expected = if r6 == nat(3) { 0 } else if r6 == nat(5) { 1 } else { 2 };
        prop_assert_eq!(info.kind.code(), expected);
        prop_assert_eq!(info.is_pump(), &x % 8u32 == nat(5));
        if let NodeKind::Zero(c) = info.kind {
            prop_assert_eq!(nat(u64::from(c.value())), (&x / 3u32) % 6u32);
        }
    }

    #[test]
    fn canonical_relation(x in odd_big()) {
        let lhs = collatz_step(&x).unwrap() * 4u32;
        let rhs = collatz_step(&(&x * 4u32 + 1u32)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hubs_map_by_two_or_four(x in odd_big()) {
        let info = classify(&x).unwrap();
        prop_assume!(info.is_hub());
        let (img, d) = odd_to_odd(&x).unwrap();
        let kind = classify(&img).unwrap().kind.code();
        if &x % 8u32 == nat(1) {
            prop_assert_eq!((d, kind), (2, 2));
        } else {
            prop_assert_eq!((d, kind), (1, 1));
        }
    }

    #[test]
    fn first_preimage_is_a_hub_that_maps_back(x in odd_big()) {
        let info = classify(&x).unwrap();
        prop_assume!(!info.kind.is_zero() && x != nat(1));
        let pre = first_odd_preimage(&info).unwrap();
        prop_assert!(pre.is_hub());
        prop_assert_eq!(odd_to_odd(&pre.value).unwrap().0, x);
    }

    #[test]
    fn three_pumps_return_to_the_same_kind(x in odd_big()) {
        let k0 = classify(&x).unwrap().kind;
        let mut v = x.clone();
        for _ in 0..3 {
            v = pump_up(&v).unwrap();
        }
        let k3 = classify(&v).unwrap().kind;
        prop_assert_eq!(k0.code(), k3.code());
        if let (Some(a), Some(b)) = (k0.character(), k3.character()) {
            prop_assert_eq!(a.after_three_pumps(), b);
        }
    }

    #[test]
    fn forward_then_backward_round_trips(z in zero_node()) {
        let fwd = primitive_forward(&classify(&z).unwrap(), DEFAULT_BUDGET).unwrap();
        let back = primitive_backward(fwd.end(), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(back.nodes(), fwd.nodes());
        let report = analyze(&fwd);
        prop_assert_eq!(report.expansive_by_value, fwd.end().value > z);
    }

    #[test]
    fn prefix_rows_follow_the_map(p in prefix(), k in 0u64..1000) {
        let eq = compile_prefix(&p).unwrap();
        let row = eq.row(k);
        // Raw iteration from 6m+3, one odd step per binary symbol.
        let mut x = row.zero_node.clone();
        for sym in p.bytes().rev().skip(1) {
            let mut y = &x * 3u32 + 1u32;
            let mut d = 0;
            while !y.bit(0) {
                y >>= 1;
                d += 1;
            }
            prop_assert_eq!(d, sym - b'0');
            x = y;
        }
        prop_assert_eq!(x, row.endpoint);
    }

    #[test]
    fn extend_agrees_with_compile(p in prefix(), sym in 1u8..=2) {
        let child = extend(&compile_prefix(&p).unwrap(), sym).unwrap();
        let text = format!("{}{p}", char::from(b'0' + sym));
        prop_assert_eq!(child, compile_prefix(&text).unwrap());
    }

    #[test]
    fn expansive_power_ladder(s in (0u64..10_000).prop_map(|s| 2 * s + 1), m in 1u32..60) {
        let run = construct_expansive(&nat(s), m).unwrap();
        let three = Nat::from(3u32);
        let two = Nat::from(2u32);
        for (i, y) in run.nodes.iter().enumerate() {
            let i = i as u32;
            prop_assert_eq!(y + 1u32, nat(s) * three.pow(i + 1) * two.pow(m + 1 - i));
            prop_assert_eq!(classify(y).unwrap().kind, NodeKind::One);
        }
        prop_assert_eq!(&run.terminal_even + 1u32, nat(s) * three.pow(m + 2));
        // Every node but the last is a hub; the last is 1 mod 4.
        for y in &run.nodes[..m as usize] {
            prop_assert!(classify(y).unwrap().is_hub());
        }
        prop_assert_eq!(&run.nodes[m as usize] % 4u32, nat(1));
    }
}
